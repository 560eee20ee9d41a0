//! Ulrich ideals: certification by lengths and ideal equalities, the
//! structure conditions, the type relation, model rings, and a bounded
//! Auslander–Reiten instance checker.

use serde::{Deserialize, Serialize};

use crate::error::{CakError, Result};
use crate::field::Field;
use crate::groebner::IdealHandle;
use crate::polyring::{PolyRing, Polynomial, RingPresentation};
use crate::quotient::{is_free_module, ArtinianResolution, FiniteAlgebra, FiniteModule, QuotientRing};
use crate::resolve::{is_regular_sequence, PresentedModule};

/// True iff `q` has `d` homogeneous generators and `R/q` has finite length.
pub fn is_parameter_ideal<F: Field>(q: &IdealHandle<F>, d: usize) -> Result<bool> {
    let gens: Vec<&Polynomial<F>> = q.generators().iter().filter(|p| !p.is_zero()).collect();
    if gens.len() != d || gens.iter().any(|p| !p.is_homogeneous()) {
        return Ok(false);
    }
    match q.colength() {
        Ok(n) => Ok(n > 0),
        Err(CakError::NotFiniteDimensional(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn maximal_ideal<F: Field>(ring: &RingPresentation<F>) -> Result<IdealHandle<F>> {
    IdealHandle::new(ring, ring.ambient().vars())
}

/// `S/(J + I)` as a ring presentation.
fn residue_ring<F: Field>(i: &IdealHandle<F>) -> Result<RingPresentation<F>> {
    i.ring().with_relations(i.generators())
}

fn residue_is_ci<F: Field>(i: &IdealHandle<F>) -> Result<bool> {
    let ring = i.ring();
    let mut gens = ring.relations().to_vec();
    gens.extend(i.generators().iter().cloned());
    let lift = IdealHandle::in_poly_ring(ring.ambient(), gens)?.with_budget(i.budget());
    Ok(lift.minimal_generators()?.len() == ring.ambient().nvars())
}

fn socle_of<F: Field>(ring: &RingPresentation<F>) -> Result<usize> {
    Ok(FiniteAlgebra::new(ring)?.socle_dim())
}

/// `ℓ(I/J)` for `J ⊆ I`, both of finite colength.
fn relative_length<F: Field>(i: &IdealHandle<F>, j: &IdealHandle<F>) -> Result<usize> {
    Ok(j.colength()? - i.colength()?)
}

/// `μ(I/q) = ℓ(R/(𝔪I + q)) − ℓ(R/I)`.
fn mu_relative<F: Field>(i: &IdealHandle<F>, q: &IdealHandle<F>) -> Result<usize> {
    let mi = maximal_ideal(i.ring())?.product(i)?.sum(q)?;
    Ok(mi.colength()? - i.colength()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UlrichReport {
    pub q_is_parameter_reduction: bool,
    pub i_not_q: bool,
    pub i2_eq_qi: bool,
    pub i_mod_i2_free: bool,
    pub i_mod_i2_rank: usize,
    pub residue_complete_intersection: bool,
    pub residue_gorenstein: bool,
    pub length_r_mod_i: usize,
    pub length_i_mod_q: usize,
    pub mu_i: usize,
    pub is_ulrich: bool,
}

fn check_pair<F: Field>(i: &IdealHandle<F>, q: &IdealHandle<F>) -> Result<()> {
    if i.ring() != q.ring() {
        return Err(CakError::RingMismatch);
    }
    if !i.contains_ideal(q)? {
        return Err(CakError::Precondition("the reduction is not contained in the ideal".into()));
    }
    if matches!(q.colength(), Err(CakError::NotFiniteDimensional(_))) {
        return Err(CakError::Precondition("R/q is not of finite length".into()));
    }
    Ok(())
}

/// Certifies `I` as an Ulrich ideal with respect to the reduction `q`.
///
/// `I/I²` is free over `R/I` iff `ℓ(I/I²) = μ(I)·ℓ(R/I)`.
pub fn is_ulrich<F: Field>(i: &IdealHandle<F>, q: &IdealHandle<F>, d: usize) -> Result<UlrichReport> {
    check_pair(i, q)?;
    if !is_parameter_ideal(q, d)? {
        return Err(CakError::Precondition(format!("q is not a parameter ideal with {d} generators")));
    }
    let i_not_q = !i.equals(q)?;
    let i2 = i.power(2)?;
    let i2_eq_qi = i2.equals(&q.product(i)?)?;
    let length_r_mod_i = i.colength()?;
    let length_i_mod_q = relative_length(i, q)?;
    let mu_i = i.minimal_generators()?.len();
    let i_mod_i2_free = relative_length(i, &i2)? == mu_i * length_r_mod_i;
    let residue = residue_ring(i)?;
    let residue_gorenstein = socle_of(&residue)? == 1;
    Ok(UlrichReport {
        q_is_parameter_reduction: i2_eq_qi,
        i_not_q,
        i2_eq_qi,
        i_mod_i2_free,
        i_mod_i2_rank: mu_i,
        residue_complete_intersection: residue_is_ci(i)?,
        residue_gorenstein,
        length_r_mod_i,
        length_i_mod_q,
        mu_i,
        is_ulrich: i_not_q && i2_eq_qi && i_mod_i2_free,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub i2_in_q: bool,
    pub q_proper_in_i: bool,
    pub i_mod_q_free: bool,
    pub i_mod_q_rank: usize,
    pub residue_complete_intersection: bool,
    /// `I² ⊆ q ⊊ I` and `I/q` free over `R/I`
    pub condition_i: bool,
    pub condition_ii: bool,
    pub passed: bool,
}

/// Checks `I² ⊆ q ⊊ I`, freeness of `I/q` over `R/I` (length criterion)
/// and whether `R/I` is a complete intersection.
pub fn check_structure_conditions<F: Field>(i: &IdealHandle<F>, q: &IdealHandle<F>) -> Result<StructureReport> {
    check_pair(i, q)?;
    let i2_in_q = q.contains_ideal(&i.power(2)?)?;
    let q_proper_in_i = !i.equals(q)?;
    let rank = mu_relative(i, q)?;
    let i_mod_q_free = relative_length(i, q)? == rank * i.colength()?;
    let residue_complete_intersection = residue_is_ci(i)?;
    let condition_i = i2_in_q && q_proper_in_i && i_mod_q_free;
    Ok(StructureReport {
        i2_in_q,
        q_proper_in_i,
        i_mod_q_free,
        i_mod_q_rank: rank,
        residue_complete_intersection,
        condition_i,
        condition_ii: residue_complete_intersection,
        passed: condition_i && residue_complete_intersection,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeRelation {
    /// `r(R)`
    pub lhs: usize,
    /// `(μ(I) − d)·r(R/I)`
    pub rhs: usize,
    pub mu_i: usize,
    pub type_r: usize,
    pub type_residue: usize,
    pub equal: bool,
}

/// Compares `r(R)` with `(μ(I) − d)·r(R/I)`. The type of `R` is the socle
/// dimension of `R/q`, `q` being generated by a regular sequence.
pub fn type_relation_check<F: Field>(i: &IdealHandle<F>, q: &IdealHandle<F>, d: usize) -> Result<TypeRelation> {
    check_pair(i, q)?;
    if !is_parameter_ideal(q, d)? {
        return Err(CakError::Precondition(format!("q is not a parameter ideal with {d} generators")));
    }
    let ring = i.ring();
    let qgens: Vec<Polynomial<F>> = q.generators().iter().filter(|p| !p.is_zero()).cloned().collect();
    if !is_regular_sequence(ring, &qgens)? {
        return Err(CakError::NotRegularSequence("the reduction is not generated by a regular sequence".into()));
    }
    let mu_i = i.minimal_generators()?.len();
    // q is part of a minimal generating set of I
    if mu_relative(i, q)? + d != mu_i {
        return Err(CakError::Precondition("q is not generated by part of a minimal basis of I".into()));
    }
    let s = check_structure_conditions(i, q)?;
    if !s.condition_i {
        return Err(CakError::Precondition("I² ⊆ q ⊊ I with I/q free fails".into()));
    }
    let type_r = socle_of(&ring.with_relations(&qgens)?)?;
    let type_residue = socle_of(&residue_ring(i)?)?;
    let rhs = (mu_i - d) * type_residue;
    Ok(TypeRelation { lhs: type_r, rhs, mu_i, type_r, type_residue, equal: type_r == rhs })
}

/// `k[X_1..X_v]/[(X_1..X_r)² + (X_{r+1}..X_v)]` and `I = (X_1..X_r)`.
pub fn model_ring_a26<F: Field>(field: F, r: usize, v: usize) -> Result<(QuotientRing<F>, IdealHandle<F>)> {
    if r == 0 || r > v {
        return Err(CakError::Precondition(format!("need 1 ≤ r ≤ v, got r = {r}, v = {v}")));
    }
    let names: Vec<String> = (1..=v).map(|i| format!("X{i}")).collect();
    let s = PolyRing::standard(field, &names)?;
    let x = s.vars();
    let mut rels = Vec::new();
    for a in 0..r {
        for b in a..r {
            rels.push(&x[a] * &x[b]);
        }
    }
    rels.extend(x[r..].iter().cloned());
    let ring = QuotientRing::new(RingPresentation::new(s, rels)?)?;
    let i = IdealHandle::new(ring.presentation(), x[..r].to_vec())?;
    Ok((ring, i))
}

#[derive(Clone, Debug)]
pub struct FghFamily<F: Field> {
    pub ring: QuotientRing<F>,
    pub ideal: IdealHandle<F>,
    pub report: UlrichReport,
    pub factor_ideal: Option<IdealHandle<F>>,
    pub factor_report: Option<UlrichReport>,
}

/// `R = S/(f² − gh, g² − hf, h² − fg)` with `I = (f, g, h)` and reduction
/// `(f)`; with a factor `f_1` of `f` also `I_1 = (f_1, g, h)` with reduction `(f_1)`.
pub fn family_b210<F: Field>(
    s: &PolyRing<F>,
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    h: &Polynomial<F>,
    f1: Option<&Polynomial<F>>,
) -> Result<FghFamily<F>> {
    if s.nvars() != 3 {
        return Err(CakError::NotRegularSequence(format!("the ambient ring has {} variables, not 3", s.nvars())));
    }
    let poly = RingPresentation::polynomial(s.clone());
    let fgh = [f.clone(), g.clone(), h.clone()];
    if !is_regular_sequence(&poly, &fgh)? {
        return Err(CakError::NotRegularSequence("f, g, h".into()));
    }
    let rels = vec![&(f * f) - &(g * h), &(g * g) - &(h * f), &(h * h) - &(f * g)];
    let ring = QuotientRing::new(RingPresentation::new(s.clone(), rels)?)?;
    let r = ring.presentation();
    let ideal = IdealHandle::new(r, fgh.to_vec())?;
    let report = is_ulrich(&ideal, &IdealHandle::new(r, vec![f.clone()])?, 1)?;
    let (factor_ideal, factor_report) = match f1 {
        None => (None, None),
        Some(f1) => {
            f.exact_div(f1).map_err(|_| CakError::Precondition(format!("`{f1}` does not divide `{f}`")))?;
            let i1 = IdealHandle::new(r, vec![f1.clone(), g.clone(), h.clone()])?;
            let rep = is_ulrich(&i1, &IdealHandle::new(r, vec![f1.clone()])?, 1)?;
            (Some(i1), Some(rep))
        }
    };
    Ok(FghFamily { ring, ideal, report, factor_ideal, factor_report })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtTarget {
    /// `Ext(M, M)`
    Module,
    /// `Ext(M, R)`
    Ring,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nonvanishing {
    pub i: usize,
    pub which: ExtTarget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArClassification {
    ConsistentFree,
    HypothesisFails,
    CounterexampleCandidate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArVerdict {
    pub bound: usize,
    pub first_nonvanishing: Option<Nonvanishing>,
    pub module_free: bool,
    pub classification: ArClassification,
    /// `dim Ext^i(M, M)` for the indices examined
    pub ext_module: Vec<usize>,
    /// `dim Ext^i(M, R)` for the indices examined
    pub ext_ring: Vec<usize>,
}

/// Computes `Ext^i(M, M)` and `Ext^i(M, R)` for `i = 1..=bound`, stopping
/// at the first nonzero one.
pub fn ar_instance_check<F: Field>(r: &QuotientRing<F>, m: &PresentedModule<F>, bound: usize) -> Result<ArVerdict> {
    if m.ring() != r.presentation() {
        return Err(CakError::RingMismatch);
    }
    let module_free = is_free_module(m)?.free;
    let alg = r.algebra()?;
    let as_module = FiniteModule::new(&alg, m)?;
    let ring_module = FiniteModule::new(&alg, &PresentedModule::free(r.presentation(), vec![0]))?;
    let mut res = ArtinianResolution::new(&alg, m)?;
    let mut ext_module = Vec::new();
    let mut ext_ring = Vec::new();
    let mut first = None;
    for i in 1..=bound {
        let a = res.ext_dim(i, &as_module);
        ext_module.push(a);
        if a > 0 {
            first = Some(Nonvanishing { i, which: ExtTarget::Module });
            break;
        }
        let b = res.ext_dim(i, &ring_module);
        ext_ring.push(b);
        if b > 0 {
            first = Some(Nonvanishing { i, which: ExtTarget::Ring });
            break;
        }
    }
    let classification = match (first, module_free) {
        (Some(_), _) => ArClassification::HypothesisFails,
        (None, true) => ArClassification::ConsistentFree,
        (None, false) => ArClassification::CounterexampleCandidate,
    };
    Ok(ArVerdict { bound, first_nonvanishing: first, module_free, classification, ext_module, ext_ring })
}

#[cfg(test)]
mod tests;
