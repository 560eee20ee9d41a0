//! Weighted polynomial rings, monomial orders, sparse polynomials and the
//! expression parser.

mod monomial;
mod parse;
mod poly;
mod ring;

pub use monomial::{Monomial, TermOrder};
pub use parse::{parse_poly, parse_poly_list};
pub use poly::{poly_arith, ArithOp, Polynomial, WeightedDegree};
pub use ring::{PolyRing, RingFile, RingPresentation};

#[allow(unused_imports)]
pub(crate) use ring::is_identifier;
