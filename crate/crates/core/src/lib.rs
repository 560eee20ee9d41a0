//! Exact commutative algebra over F_p and Q: polynomial rings, Gröbner
//! bases, free resolutions, Ext/Tor over Artinian rings, Ulrich ideals,
//! numerical semigroup rings and determinantal ideals.

pub mod error;
pub mod complexes;
pub mod detring;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod polyring;
pub mod quotient;
pub mod resolve;
pub mod semigroup;
pub mod ulrich;

pub use error::{CakError, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use groebner::IdealHandle;
pub use polyring::{PolyRing, Polynomial, RingPresentation};
pub use quotient::QuotientRing;
pub use resolve::{BettiTable, ChainComplex, PolyMatrix, PresentedModule};
pub use semigroup::NumericalSemigroup;
