//! Inputs shared by the benchmarks.

use cak_core::quotient::QuotientRing;
use cak_core::{PolyRing, PrimeField, RingPresentation};

/// `k[x1..xn]` in the standard grading.
pub fn standard_ring(n: usize) -> PolyRing<PrimeField> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    PolyRing::standard(PrimeField::default(), &names).expect("valid ring")
}

/// `k[x, y]/(x, y)^n`.
pub fn artinian_power(n: u32) -> QuotientRing<PrimeField> {
    let s = standard_ring(2);
    let rels: Vec<_> = (0..=n).map(|i| s.var(0).pow(i).mul(&s.var(1).pow(n - i)).expect("same ring")).collect();
    let r = RingPresentation::polynomial(s).with_relations(&rels).expect("homogeneous");
    QuotientRing::new(r).expect("artinian")
}
