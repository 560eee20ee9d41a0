use std::fmt;
use std::sync::{Arc, OnceLock};

use super::engine::{self, reduce_by, Engine, ModuleOrder, Vector};
use super::{default_budget, from_vector, to_vector};
use crate::error::{CakError, Result};
use crate::field::Field;
use crate::polyring::{Monomial, PolyRing, Polynomial, RingPresentation, TermOrder};

struct Gb<F: Field> {
    polys: Vec<Polynomial<F>>,
    vecs: Vec<Vector<F::Elem>>,
}

/// Ideal of a ring `S/J`, stored through its lift `(generators) + J` in `S`.
///
/// The reduced Gröbner basis is computed on first use and cached.
pub struct IdealHandle<F: Field> {
    ring: RingPresentation<F>,
    gens: Vec<Polynomial<F>>,
    budget: Option<u64>,
    gb: OnceLock<Arc<Gb<F>>>,
}

impl<F: Field> Clone for IdealHandle<F> {
    fn clone(&self) -> Self {
        IdealHandle { ring: self.ring.clone(), gens: self.gens.clone(), budget: self.budget, gb: self.gb.clone() }
    }
}

impl<F: Field> fmt::Debug for IdealHandle<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

pub enum IdealOp<'a, F: Field> {
    Sum(&'a IdealHandle<F>),
    Product(&'a IdealHandle<F>),
    Power(u32),
    Intersection(&'a IdealHandle<F>),
    Colon(&'a IdealHandle<F>),
    Equal(&'a IdealHandle<F>),
    /// does `self` contain the argument
    Contains(&'a IdealHandle<F>),
}

#[derive(Clone, Debug)]
pub enum IdealOpResult<F: Field> {
    Ideal(IdealHandle<F>),
    Bool(bool),
}

impl<F: Field> IdealHandle<F> {
    pub fn new(ring: &RingPresentation<F>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        if gens.iter().any(|g| g.ring() != ring.ambient()) {
            return Err(CakError::RingMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealHandle { ring: ring.clone(), gens, budget: None, gb: OnceLock::new() })
    }

    /// Ideal of a polynomial ring.
    pub fn in_poly_ring(ring: &PolyRing<F>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        IdealHandle::new(&RingPresentation::polynomial(ring.clone()), gens)
    }

    /// Parses `;`-separated generators.
    pub fn parse(ring: &RingPresentation<F>, text: &str) -> Result<Self> {
        let gens = crate::polyring::parse_poly_list(text, ring.ambient())?;
        IdealHandle::new(ring, gens)
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self.gb = OnceLock::new();
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget.unwrap_or_else(default_budget)
    }

    pub fn ring(&self) -> &RingPresentation<F> {
        &self.ring
    }

    pub fn ambient(&self) -> &PolyRing<F> {
        self.ring.ambient()
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    fn order(&self) -> ModuleOrder {
        ModuleOrder::ideal(self.ambient().weights(), TermOrder::WeightedRevLex)
    }

    fn lifted_generators(&self) -> Vec<Polynomial<F>> {
        let mut all = self.gens.clone();
        all.extend(self.ring.relations().iter().cloned());
        all
    }

    fn gb(&self) -> Result<&Arc<Gb<F>>> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let order = self.order();
        let vecs = self.lifted_generators().iter().map(|g| to_vector(g, 0, &order)).collect();
        let vecs = engine::groebner(self.ring.field(), &order, vecs, self.budget())?;
        let polys = vecs.iter().map(|v| from_vector(self.ambient(), v)).collect();
        let _ = self.gb.set(Arc::new(Gb { polys, vecs }));
        Ok(self.gb.get().expect("just set"))
    }

    /// Reduced Gröbner basis of the lifted ideal, sorted by increasing lead.
    pub fn groebner_basis(&self) -> Result<&[Polynomial<F>]> {
        Ok(&self.gb()?.polys)
    }

    pub fn lead_monomials(&self) -> Result<Vec<Monomial>> {
        Ok(self.gb()?.vecs.iter().map(|v| v[0].mono.clone()).collect())
    }

    /// Remainder of `p` modulo the reduced Gröbner basis.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        if p.ring() != self.ambient() {
            return Err(CakError::RingMismatch);
        }
        let gb = self.gb()?;
        let order = self.order();
        let r = reduce_by(self.ring.field(), &order, &gb.vecs, to_vector(p, 0, &order), true);
        Ok(from_vector(self.ambient(), &r))
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &IdealHandle<F>) -> Result<bool> {
        self.check_same_ring(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal equality, decided by comparing reduced Gröbner bases.
    pub fn equals(&self, other: &IdealHandle<F>) -> Result<bool> {
        self.check_same_ring(other)?;
        Ok(self.groebner_basis()? == other.groebner_basis()?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().any(|g| g.is_constant()))
    }

    pub fn is_zero(&self) -> Result<bool> {
        for g in &self.gens {
            if !self.ring_ideal().contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The zero ideal of the same ring (its lift is `J`).
    pub fn ring_ideal(&self) -> IdealHandle<F> {
        IdealHandle { ring: self.ring.clone(), gens: Vec::new(), budget: self.budget, gb: OnceLock::new() }
    }

    fn check_same_ring(&self, other: &IdealHandle<F>) -> Result<()> {
        if self.ring.ambient() != other.ring.ambient() || self.ring.relations() != other.ring.relations() {
            return Err(CakError::RingMismatch);
        }
        Ok(())
    }

    fn derived(&self, gens: Vec<Polynomial<F>>) -> IdealHandle<F> {
        IdealHandle { ring: self.ring.clone(), gens, budget: self.budget, gb: OnceLock::new() }
    }

    pub fn sum(&self, other: &IdealHandle<F>) -> Result<IdealHandle<F>> {
        self.check_same_ring(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ok(self.derived(g))
    }

    pub fn product(&self, other: &IdealHandle<F>) -> Result<IdealHandle<F>> {
        self.check_same_ring(other)?;
        let mut g: Vec<Polynomial<F>> = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                let p = (a * b).monic();
                if !p.is_zero() && !g.contains(&p) {
                    g.push(p);
                }
            }
        }
        Ok(self.derived(g))
    }

    pub fn power(&self, e: u32) -> Result<IdealHandle<F>> {
        if e == 0 {
            return Err(CakError::Precondition("ideal power exponent must be at least 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `self ∩ other`
    pub fn intersection(&self, other: &IdealHandle<F>) -> Result<IdealHandle<F>> {
        self.check_same_ring(other)?;
        let out = self.intersect_lifts(&self.lifted_generators(), &other.lifted_generators())?;
        Ok(self.derived(out))
    }

    /// Intersection of two ideals of the ambient ring, by eliminating `t`
    /// from `t·A + (1−t)·B`.
    fn intersect_lifts(&self, a: &[Polynomial<F>], b: &[Polynomial<F>]) -> Result<Vec<Polynomial<F>>> {
        let s = self.ambient();
        let tname = fresh_name(s, "t");
        let mut names: Vec<String> = s.var_names().to_vec();
        names.push(tname);
        let mut weights = s.weights().to_vec();
        weights.push(1);
        let big = PolyRing::new(s.field().clone(), &names, &weights)?;
        let n = s.nvars();
        let map: Vec<usize> = (0..n).collect();
        let t = big.var(n);
        let one_minus_t = &big.one() - &t;
        let mut gens = Vec::new();
        for g in a {
            gens.push(&g.embed(&big, &map) * &t);
        }
        for g in b {
            gens.push(&g.embed(&big, &map) * &one_minus_t);
        }
        let mut mask = vec![false; n + 1];
        mask[n] = true;
        let gb = super::groebner_basis_with_order(&big, &TermOrder::Block(mask), &gens, self.budget())?;
        let keep: Vec<usize> = (0..n).collect();
        Ok(gb
            .into_iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exps()[n] == 0))
            .map(|g| s.from_terms(g.terms().iter().map(|(m, c)| (m.restrict(&keep), c.clone()))))
            .collect())
    }

    /// `self : (g)`
    pub fn colon_element(&self, g: &Polynomial<F>) -> Result<IdealHandle<F>> {
        if g.ring() != self.ambient() {
            return Err(CakError::RingMismatch);
        }
        if self.contains(g)? {
            return Ok(self.derived(vec![self.ambient().one()]));
        }
        let inter = self.intersect_lifts(&self.lifted_generators(), std::slice::from_ref(g))?;
        let mut out = Vec::new();
        for h in &inter {
            out.push(h.exact_div(g)?);
        }
        Ok(self.derived(out))
    }

    /// `self : other`, intersecting the colons by each generator.
    pub fn colon(&self, other: &IdealHandle<F>) -> Result<IdealHandle<F>> {
        self.check_same_ring(other)?;
        let mut acc: Option<IdealHandle<F>> = None;
        for g in &other.gens {
            let c = self.colon_element(g)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersection(&c)?,
            });
        }
        Ok(acc.unwrap_or_else(|| self.derived(vec![self.ambient().one()])))
    }

    pub fn ideal_op(&self, op: IdealOp<'_, F>) -> Result<IdealOpResult<F>> {
        use IdealOpResult::{Bool, Ideal};
        Ok(match op {
            IdealOp::Sum(o) => Ideal(self.sum(o)?),
            IdealOp::Product(o) => Ideal(self.product(o)?),
            IdealOp::Power(e) => Ideal(self.power(e)?),
            IdealOp::Intersection(o) => Ideal(self.intersection(o)?),
            IdealOp::Colon(o) => Ideal(self.colon(o)?),
            IdealOp::Equal(o) => Bool(self.equals(o)?),
            IdealOp::Contains(o) => Bool(self.contains_ideal(o)?),
        })
    }

    /// `I ∩ k[kept variables]`, expressed in the polynomial ring on the kept
    /// variables (same names and weights). Relations of the ring are part of
    /// the lift and get eliminated too.
    pub fn eliminate(&self, drop: &[usize]) -> Result<IdealHandle<F>> {
        let s = self.ambient();
        let n = s.nvars();
        if let Some(&bad) = drop.iter().find(|&&i| i >= n) {
            return Err(CakError::Precondition(format!("variable index {bad} out of range")));
        }
        let mut mask = vec![false; n];
        for &i in drop {
            mask[i] = true;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| !mask[i]).collect();
        let sub = s.subring(&keep)?;
        let gb = super::groebner_basis_with_order(s, &TermOrder::Block(mask.clone()), &self.lifted_generators(), self.budget())?;
        let out = gb
            .into_iter()
            .filter(|g| g.terms().iter().all(|(m, _)| drop.iter().all(|&i| m.exps()[i] == 0)))
            .map(|g| sub.from_terms(g.terms().iter().map(|(m, c)| (m.restrict(&keep), c.clone()))))
            .collect();
        let h = IdealHandle::in_poly_ring(&sub, out)?;
        Ok(match self.budget {
            Some(b) => h.with_budget(b),
            None => h,
        })
    }

    /// Eliminates variables given by name.
    pub fn eliminate_named(&self, drop: &[&str]) -> Result<IdealHandle<F>> {
        let idx = drop
            .iter()
            .map(|v| self.ambient().var_index(v).ok_or_else(|| CakError::UnknownVariable(v.to_string())))
            .collect::<Result<Vec<_>>>()?;
        self.eliminate(&idx)
    }

    /// Monomials outside the lead-term ideal, sorted increasingly.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        standard_monomials_of(self.ambient(), &self.lead_monomials()?)
    }

    /// Vector-space dimension of `S/(I + J)`.
    pub fn colength(&self) -> Result<usize> {
        Ok(self.standard_monomials()?.len())
    }

    /// Minimal homogeneous generators of the image of `I` in `S/J`.
    ///
    /// Generators are scanned by increasing degree and kept when they are
    /// not in the ideal spanned by `J` and those kept so far; the Gröbner
    /// basis is only completed up to the degree being tested.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial<F>>> {
        let mut gens: Vec<(u64, Polynomial<F>)> = Vec::new();
        for g in &self.gens {
            let d = g.homogeneous_degree().ok_or_else(|| CakError::NotHomogeneous(format!("generator `{g}`")))?;
            gens.push((d, g.clone()));
        }
        gens.sort_by(|a, b| a.0.cmp(&b.0));
        let order = self.order();
        let mut eng = Engine::new(self.ring.field().clone(), order.clone(), self.budget());
        for r in self.ring.relations() {
            eng.add(to_vector(r, 0, &order));
        }
        let mut kept = Vec::new();
        for (d, g) in gens {
            eng.complete(Some(d as i64))?;
            let v = eng.reduce(to_vector(&g, 0, &order), false);
            if !v.is_empty() {
                eng.add(v);
                kept.push(g);
            }
        }
        Ok(kept)
    }
}

fn fresh_name<F: Field>(ring: &PolyRing<F>, base: &str) -> String {
    let mut name = format!("_{base}");
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// Standard monomials for a lead-term ideal given by its generators.
///
/// Errors when some variable has no pure power among the leads, since the
/// quotient is then infinite-dimensional.
pub fn standard_monomials_of<F: Field>(ring: &PolyRing<F>, leads: &[Monomial]) -> Result<Vec<Monomial>> {
    let n = ring.nvars();
    let mut bound = vec![u16::MAX; n];
    for m in leads {
        if m.is_one() {
            return Ok(Vec::new());
        }
        if let Some((i, e)) = m.pure_power() {
            bound[i] = bound[i].min(e);
        }
    }
    if let Some(i) = bound.iter().position(|&b| b == u16::MAX) {
        return Err(CakError::NotFiniteDimensional(ring.var_names()[i].clone()));
    }
    let mut out = Vec::new();
    let mut exps = vec![0u16; n];
    fn rec(i: usize, exps: &mut Vec<u16>, bound: &[u16], leads: &[Monomial], out: &mut Vec<Monomial>) {
        if i == exps.len() {
            out.push(Monomial::from_exps(exps));
            return;
        }
        for e in 0..bound[i] {
            exps[i] = e;
            let m = Monomial::from_exps(exps);
            if leads.iter().any(|l| l.divides(&m)) {
                break;
            }
            rec(i + 1, exps, bound, leads, out);
        }
        exps[i] = 0;
    }
    rec(0, &mut exps, &bound, leads, &mut out);
    out.sort_by(|a, b| ring.compare_monomials(a, b));
    Ok(out)
}
