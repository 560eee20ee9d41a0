//! Gröbner bases and ideal arithmetic.

pub mod engine;
mod ideal;
mod map;

use std::sync::atomic::{AtomicU64, Ordering};

pub use engine::{ModuleOrder, DEFAULT_BUDGET};
pub use ideal::{standard_monomials_of, IdealHandle, IdealOp, IdealOpResult};
pub use map::{ring_map_kernel, RingMap};

use crate::error::Result;
use crate::field::Field;
use crate::polyring::{Monomial, PolyRing, Polynomial, TermOrder};
use engine::{Term, Vector};

static BUDGET: AtomicU64 = AtomicU64::new(DEFAULT_BUDGET);

/// Budget used by handles that were not given one explicitly.
pub fn default_budget() -> u64 {
    BUDGET.load(Ordering::Relaxed)
}

pub fn set_default_budget(b: u64) {
    BUDGET.store(b, Ordering::Relaxed);
}

pub(crate) fn to_vector<F: Field>(p: &Polynomial<F>, comp: u32, order: &ModuleOrder) -> Vector<F::Elem> {
    let w = p.ring().weights();
    let mut v: Vector<F::Elem> = p
        .terms()
        .iter()
        .map(|(m, c)| Term { comp, mono: m.clone(), deg: m.weighted_degree(w), coef: c.clone() })
        .collect();
    order.sort(&mut v);
    v
}

pub(crate) fn from_vector<F: Field>(ring: &PolyRing<F>, v: &[Term<F::Elem>]) -> Polynomial<F> {
    ring.from_terms(v.iter().map(|t| (t.mono.clone(), t.coef.clone())))
}

/// Reduced Gröbner basis of `gens` under an arbitrary term order on their ring.
/// Output is sorted by increasing leading monomial.
pub fn groebner_basis_with_order<F: Field>(
    ring: &PolyRing<F>,
    order: &TermOrder,
    gens: &[Polynomial<F>],
    budget: u64,
) -> Result<Vec<Polynomial<F>>> {
    let mo = ModuleOrder::ideal(ring.weights(), order.clone());
    let vecs = gens.iter().map(|g| to_vector(g, 0, &mo)).collect();
    let gb = engine::groebner(ring.field(), &mo, vecs, budget)?;
    Ok(gb.iter().map(|v| from_vector(ring, v)).collect())
}

/// Leading monomial of `p` under `order`.
pub fn leading_monomial_in<F: Field>(p: &Polynomial<F>, order: &TermOrder) -> Option<Monomial> {
    let w = p.ring().weights();
    p.terms().iter().map(|(m, _)| m).max_by(|a, b| order.cmp(w, a, b)).cloned()
}

#[cfg(test)]
mod tests;
