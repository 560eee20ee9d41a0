//! Library side of the `cak` binary: file loading, subcommands and the
//! verification suite.

pub mod commands;
pub mod io;
pub mod suite;
