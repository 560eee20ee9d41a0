//! Loading ring, module and ideal files.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;

use cak_core::field::{FieldSpec, PrimeField, Rationals};
use cak_core::groebner::IdealHandle;
use cak_core::polyring::{parse_poly_list, RingFile, RingPresentation};
use cak_core::resolve::{ModuleFile, PresentedModule};
use cak_core::{CakError, Field};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    /// JSON that does not match the expected schema, with a JSON pointer
    Schema { file: String, pointer: String, msg: String },
    Core(CakError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Schema { file, pointer, msg } => write!(f, "{file}: schema error at `{pointer}`: {msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CakError> for CliError {
    fn from(e: CakError) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    /// 2 for usage and precondition errors, 3 for resource limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_resource_limit() => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// A ring presentation over whichever field its file declares.
#[derive(Clone, Debug)]
pub enum AnyRing {
    Fp(RingPresentation<PrimeField>),
    Q(RingPresentation<Rationals>),
}

/// Runs a generic body against the concrete ring.
#[macro_export]
macro_rules! with_ring {
    ($any:expr, $r:ident => $body:expr) => {
        match $any {
            $crate::io::AnyRing::Fp($r) => $body,
            $crate::io::AnyRing::Q($r) => $body,
        }
    };
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

/// Parses JSON text into `T`, reporting schema errors by JSON pointer.
pub fn parse_json<T: DeserializeOwned>(file: &str, text: &str) -> CliResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| CliError::Schema {
        file: file.to_string(),
        pointer: pointer(e.path()),
        msg: e.inner().to_string(),
    })
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn ring_from_file(file: &RingFile) -> CliResult<AnyRing> {
    Ok(match file.field {
        FieldSpec::Fp { p } => AnyRing::Fp(file.build(PrimeField::new(p)?)?),
        FieldSpec::Q => AnyRing::Q(file.build(Rationals)?),
    })
}

/// Reads and validates a ring file.
pub fn load_ring(path: &Path) -> CliResult<AnyRing> {
    let text = read(path)?;
    let file: RingFile = parse_json(&path.display().to_string(), &text)?;
    ring_from_file(&file)
}

pub fn load_module<F: Field>(ring: &RingPresentation<F>, path: &Path) -> CliResult<PresentedModule<F>> {
    let text = read(path)?;
    let file: ModuleFile = parse_json(&path.display().to_string(), &text)?;
    Ok(file.build(ring)?)
}

/// An ideal file is a JSON list of polynomial strings.
pub fn load_ideal<F: Field>(ring: &RingPresentation<F>, path: &Path) -> CliResult<IdealHandle<F>> {
    let text = read(path)?;
    let gens: Vec<String> = parse_json(&path.display().to_string(), &text)?;
    let polys = gens.iter().map(|g| ring.ambient().parse(g)).collect::<Result<Vec<_>, _>>()?;
    Ok(IdealHandle::new(ring, polys)?)
}

/// `"p1; p2; …"` as an ideal of `ring`.
pub fn ideal_arg<F: Field>(ring: &RingPresentation<F>, text: &str) -> CliResult<IdealHandle<F>> {
    let gens = parse_poly_list(text, ring.ambient())?;
    Ok(IdealHandle::new(ring, gens)?)
}
