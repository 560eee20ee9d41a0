use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use cak_cli::commands::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            let text = if cli.json {
                serde_json::to_string_pretty(&out.value).expect("json output") + "\n"
            } else {
                out.text
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("cak: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
