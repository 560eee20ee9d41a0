use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CakError {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("negative exponent at position {0}")]
    NegativeExponent(usize),

    #[error("zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("resource limit exceeded: more than {budget} pair reductions")]
    ResourceLimit { budget: u64 },

    #[error("quotient is not finite-dimensional: variable `{0}` has no pure power in the lead-term ideal")]
    NotFiniteDimensional(String),

    #[error("not Artinian at origin: {0}")]
    NotArtinian(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("{0} is not homogeneous")]
    NotHomogeneous(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("not a regular sequence: {0}")]
    NotRegularSequence(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("exact division failed: {0}")]
    Division(String),
}

impl CakError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, CakError::ResourceLimit { .. })
    }
}

pub type Result<T, E = CakError> = std::result::Result<T, E>;
