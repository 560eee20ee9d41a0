//! Graded free modules, syzygies, minimal free resolutions, Betti tables,
//! lengths and Hilbert series.

mod complex;
pub mod hilbert;
mod matrix;
mod module;

pub use complex::{minimalize, BettiTable, ChainComplex};
pub use hilbert::Laurent;
pub use matrix::PolyMatrix;
pub use module::{
    kernel, lead_monomials_by_component, minimal_generators, submodule_equal, submodule_gb, syzygies,
    GradedFreeModule, ModuleFile, PresentedModule,
};

use serde::{Deserialize, Serialize};

use crate::error::{CakError, Result};
use crate::field::Field;
use crate::groebner::{default_budget, IdealHandle};
use crate::polyring::{Polynomial, RingPresentation};

/// Minimal graded free resolution of `coker(M)`, computed to homological
/// degree `max_length` (default: number of variables).
///
/// The presentation is minimalized first; each later step takes minimal
/// generators of the kernel of the previous map, which keeps it minimal.
pub fn minimal_free_resolution<F: Field>(m: &PresentedModule<F>, max_length: Option<usize>) -> Result<ChainComplex<F>> {
    resolve_with_budget(m, max_length, default_budget())
}

/// Presentation `F_1 → F_0` of `coker(M)` with minimal generators and
/// minimal relations, as a two-term complex.
pub fn minimal_presentation<F: Field>(m: &PresentedModule<F>, budget: u64) -> Result<ChainComplex<F>> {
    let ring = m.ring();
    let f0 = m.ambient().twists().to_vec();
    let (cols, degs) = minimal_generators(ring, &f0, &m.relations().columns(), budget)?;
    let d1 = PolyMatrix::from_columns(ring.ambient(), f0.len(), cols)?;
    minimalize(&ChainComplex::new(ring, vec![f0, degs], vec![d1])?)
}

pub fn resolve_with_budget<F: Field>(m: &PresentedModule<F>, max_length: Option<usize>, budget: u64) -> Result<ChainComplex<F>> {
    let ring = m.ring();
    let s = ring.ambient();
    let max_length = max_length.unwrap_or(s.nvars()).max(1);
    let c = minimal_presentation(m, budget)?;
    let mut modules = c.modules().to_vec();
    let mut maps = c.differentials().to_vec();
    let mut complete = false;
    loop {
        let i = maps.len();
        let (ker, kdeg) = kernel(ring, &maps[i - 1], &modules[i - 1], &modules[i], budget)?;
        if ker.is_empty() {
            complete = true;
            break;
        }
        if i >= max_length {
            break;
        }
        let rank = modules[i].len();
        maps.push(PolyMatrix::from_columns(s, rank, ker)?);
        modules.push(kdeg);
    }
    let mut out = ChainComplex::new(ring, modules, maps)?.trimmed();
    out.set_complete(complete);
    Ok(out)
}

/// Resolution of `R/I`.
pub fn resolve_quotient<F: Field>(i: &IdealHandle<F>, max_length: Option<usize>) -> Result<ChainComplex<F>> {
    let m = PresentedModule::cyclic(i.ring(), i.generators())?;
    resolve_with_budget(&m, max_length, i.budget())
}

/// Vector-space dimension of `S/(I + J)`; the quotient must be Artinian.
pub fn module_length<F: Field>(i: &IdealHandle<F>) -> Result<usize> {
    match i.standard_monomials() {
        Ok(v) => Ok(v.len()),
        Err(CakError::NotFiniteDimensional(v)) => Err(CakError::NotArtinian(format!("`{v}` is not nilpotent"))),
        Err(e) => Err(e),
    }
}

/// Hilbert series numerator of `R/I` over `∏(1 − t^{w_i})`.
pub fn hilbert_numerator<F: Field>(i: &IdealHandle<F>) -> Result<Laurent> {
    Ok(hilbert::monomial_ideal_numerator(i.ambient().weights(), &i.lead_monomials()?))
}

/// Hilbert series numerator of a presented module.
pub fn module_hilbert_numerator<F: Field>(m: &PresentedModule<F>, budget: u64) -> Result<Laurent> {
    let tw = m.ambient().twists();
    let gb = submodule_gb(m.ring(), tw, &m.relations().columns(), budget)?;
    let leads = lead_monomials_by_component(&gb, tw.len());
    Ok(hilbert::module_numerator(m.ring().ambient().weights(), tw, &leads))
}

/// Checks that `elems` form a regular sequence on `R = S/J`: for every
/// prefix, `HS(R/(f_1..f_k)) = (1 − t^{d_k})·HS(R/(f_1..f_{k−1}))`, which
/// holds exactly when `f_k` is a nonzerodivisor modulo the previous ones.
pub fn is_regular_sequence<F: Field>(ring: &RingPresentation<F>, elems: &[Polynomial<F>]) -> Result<bool> {
    let mut prev = hilbert_numerator(&IdealHandle::new(ring, Vec::new())?)?;
    for k in 0..elems.len() {
        let f = &elems[k];
        let d = match f.homogeneous_degree() {
            Some(d) if d > 0 => d as i64,
            _ => return Ok(false),
        };
        let cur = hilbert_numerator(&IdealHandle::new(ring, elems[..=k].to_vec())?)?;
        if cur != &prev * &Laurent::one_minus(d) {
            return Ok(false);
        }
        prev = cur;
    }
    Ok(true)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedRankReport {
    pub i: u32,
    pub n: usize,
    pub computed: usize,
    pub expected: u64,
    /// `ℓ(Q^i/Q^{i+1}) = computed·ℓ(S/Q)`, when `S/Q` is Artinian
    pub free_by_length: Option<bool>,
    pub matches: bool,
}

/// Minimal number of generators of `Q^i/Q^{i+1}` over `R/Q`, compared with
/// `binom(i+n−1, n−1)` for a regular sequence of `n` generators.
pub fn graded_rank_check<F: Field>(ring: &RingPresentation<F>, q: &IdealHandle<F>, i: u32) -> Result<GradedRankReport> {
    let n = q.generators().len();
    if !is_regular_sequence(ring, q.generators())? {
        return Err(CakError::NotRegularSequence(format!("{q:?}")));
    }
    let qi = if i == 0 { IdealHandle::new(ring, vec![ring.ambient().one()])? } else { q.power(i)? };
    let computed = qi.minimal_generators()?.len();
    let expected = binomial(i as u64 + n as u64 - 1, n as u64 - 1);
    let free_by_length = match q.colength() {
        Ok(lq) => {
            let qi1 = q.power(i + 1)?;
            let a = module_length(&qi1)?;
            let b = if i == 0 { 0 } else { module_length(&qi)? };
            Some(a - b == computed * lq)
        }
        Err(CakError::NotFiniteDimensional(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(GradedRankReport {
        i,
        n,
        computed,
        expected,
        free_by_length,
        matches: computed as u64 == expected && free_by_length != Some(false),
    })
}

/// Euler characteristic identity `Σ(−1)^i HS(F_i) = HS(M)`, compared as
/// power series up to the degree where a truncated resolution is still exact.
pub fn euler_characteristic_check<F: Field>(c: &ChainComplex<F>, m: &PresentedModule<F>, budget: u64) -> Result<bool> {
    let ring = c.ring();
    let weights = ring.ambient().weights();
    let rnum = hilbert_numerator(&IdealHandle::new(ring, Vec::new())?)?;
    let mut alt = Laurent::default();
    for i in 0..=c.top() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for &a in c.twists(i) {
            alt = &alt + &Laurent::monomial(a, sign);
        }
    }
    let lhs = &alt * &rnum;
    let rhs = module_hilbert_numerator(m, budget)?;
    if c.is_complete() {
        return Ok(lhs == rhs);
    }
    let lo = m.ambient().twists().iter().copied().min().unwrap_or(0);
    let minw = *weights.iter().min().unwrap_or(&1) as i64;
    let hi = c.twists(c.top()).iter().copied().min().unwrap_or(lo) + minw - 1;
    Ok(lhs.series(weights, lo, hi) == rhs.series(weights, lo, hi))
}
