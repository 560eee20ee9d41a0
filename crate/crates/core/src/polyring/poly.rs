use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::Monomial;
use super::ring::PolyRing;
use crate::error::{CakError, Result};
use crate::field::Field;

/// Sparse polynomial with exact coefficients.
///
/// Terms are kept sorted by decreasing weighted degrevlex order with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: PolyRing<F>,
    terms: Vec<(Monomial, F::Elem)>,
}

/// Result of [`Polynomial::weighted_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightedDegree {
    Homogeneous(u64),
    Inhomogeneous,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> std::hash::Hash for Polynomial<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<F: Field> Polynomial<F> {
    pub(crate) fn from_sorted_terms(ring: PolyRing<F>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// Constant value, if the polynomial is a constant (zero included).
    pub fn constant_value(&self) -> Option<F::Elem> {
        match self.terms.as_slice() {
            [] => Some(self.ring.field().zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// Weighted degree of a homogeneous polynomial, or `Inhomogeneous`.
    pub fn weighted_degree(&self) -> Result<WeightedDegree> {
        let mut it = self.terms.iter().map(|(m, _)| self.ring.monomial_degree(m));
        let first = it.next().ok_or(CakError::ZeroPolynomial)?;
        if it.all(|d| d == first) {
            Ok(WeightedDegree::Homogeneous(first))
        } else {
            Ok(WeightedDegree::Inhomogeneous)
        }
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        !matches!(self.weighted_degree(), Ok(WeightedDegree::Inhomogeneous))
    }

    /// Degree of a homogeneous nonzero polynomial.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        match self.weighted_degree() {
            Ok(WeightedDegree::Homogeneous(d)) => Some(d),
            _ => None,
        }
    }

    /// Maximal weighted degree among the terms (leading degree).
    pub fn max_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| self.ring.monomial_degree(m)).max()
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring.ptr_eq(&other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(CakError::RingMismatch)
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let field = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let conv = |c: &F::Elem| if negate_other { field.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match self.ring.compare_monomials(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), conv(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { field.sub(&a[i].1, &b[j].1) } else { field.add(&a[i].1, &b[j].1) };
                    if !field.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), conv(c))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let field = self.ring.field();
        let mut acc = std::collections::HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                acc.entry(m).and_modify(|e| *e = field.add(e, &c)).or_insert(c);
            }
        }
        self.ring.from_terms(acc)
    }

    /// Multiplication by `c·m`. Term order is preserved by monomial multiplication.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let field = self.ring.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|(tm, tc)| (tm.mul(m), field.mul(tc, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn neg(&self) -> Self {
        let field = self.ring.field();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Integer power with the sign checked, for callers holding a signed exponent.
    pub fn pow_signed(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return Err(CakError::Precondition(format!("negative exponent {e}")));
        }
        let e = u32::try_from(e).map_err(|_| CakError::Precondition("exponent too large".into()))?;
        Ok(self.pow(e))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.ring.field().inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Substitutes `images[i]` for variable `i`. All images must live in one ring.
    pub fn compose(&self, target: &PolyRing<F>, images: &[Polynomial<F>]) -> Result<Self> {
        if images.len() != self.ring.nvars() {
            return Err(CakError::Shape(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        if images.iter().any(|p| p.ring() != target) {
            return Err(CakError::RingMismatch);
        }
        let mut acc = target.zero();
        // cache of powers per variable
        let mut powers: Vec<Vec<Polynomial<F>>> = images.iter().map(|p| vec![target.one(), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_unchecked(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul_unchecked(&powers[i][e as usize]);
            }
            acc = acc.merge(&t, false);
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial in another ring by mapping variable
    /// positions: variable `i` of `self` becomes variable `map[i]` of `target`.
    pub fn embed(&self, target: &PolyRing<F>, map: &[usize]) -> Self {
        let n = target.nvars();
        target.from_terms(self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u16; n];
            for (i, &x) in m.exps().iter().enumerate() {
                if x > 0 {
                    e[map[i]] = x;
                }
            }
            (Monomial::from_exps(&e), c.clone())
        }))
    }

    /// Exact division by a nonzero polynomial; errors if a remainder is left.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        self.check_ring(d)?;
        let (lm, lc) = d.leading_term().ok_or(CakError::Division("division by zero".into()))?;
        let field = self.ring.field();
        let lc_inv = field.inv(lc).expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = m.div(lm).ok_or_else(|| CakError::Division(format!("{d} does not divide {self}")))?;
            let qc = field.mul(&c, &lc_inv);
            rem = rem.merge(&d.mul_term(&q, &qc), true);
            quot.push((q, qc));
        }
        Ok(self.ring.from_terms(quot))
    }

    /// Coefficients of the monomials `x_i` of total degree one, whatever
    /// their weight.
    pub fn linear_part(&self) -> Vec<(usize, F::Elem)> {
        self.terms
            .iter()
            .filter_map(|(m, c)| m.pure_power().filter(|&(_, e)| e == 1).map(|(i, _)| (i, c.clone())))
            .collect()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let field = self.ring.field();
        let names = self.ring.var_names();
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = field.signed_repr(c);
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&mag);
            } else if mag == "1" {
                s.push_str(&m.render(names));
            } else {
                s.push_str(&mag);
                s.push('*');
                s.push_str(&m.render(names));
            }
        }
        s
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.render())
    }
}

// Operator sugar; panics on ring mismatch. Use the checked methods at API
// boundaries.
impl<'a, F: Field> Add<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        Polynomial::add(self, rhs).expect("ring mismatch")
    }
}

impl<'a, F: Field> Sub<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        Polynomial::sub(self, rhs).expect("ring mismatch")
    }
}

impl<'a, F: Field> Mul<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        Polynomial::mul(self, rhs).expect("ring mismatch")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

/// Arithmetic operation selector for [`poly_arith`].
#[derive(Clone, Debug)]
pub enum ArithOp<'a, F: Field> {
    Add(&'a Polynomial<F>),
    Sub(&'a Polynomial<F>),
    Mul(&'a Polynomial<F>),
    Pow(i64),
}

/// Single entry point over the four ring operations.
pub fn poly_arith<F: Field>(a: &Polynomial<F>, op: ArithOp<'_, F>) -> Result<Polynomial<F>> {
    match op {
        ArithOp::Add(b) => a.add(b),
        ArithOp::Sub(b) => a.sub(b),
        ArithOp::Mul(b) => a.mul(b),
        ArithOp::Pow(e) => a.pow_signed(e),
    }
}
