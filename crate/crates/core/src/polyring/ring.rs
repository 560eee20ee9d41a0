use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, TermOrder};
use super::poly::Polynomial;
use crate::error::{CakError, Result};
use crate::field::{Field, FieldSpec};

struct RingData<F: Field> {
    field: F,
    vars: Vec<String>,
    weights: Vec<u32>,
    index: HashMap<String, usize>,
}

/// Positively weighted polynomial ring `k[x_1, …, x_n]` over an exact field.
///
/// Cheap to clone; clones share the same variable table.
pub struct PolyRing<F: Field> {
    inner: Arc<RingData<F>>,
}

impl<F: Field> Clone for PolyRing<F> {
    fn clone(&self) -> Self {
        PolyRing { inner: Arc::clone(&self.inner) }
    }
}

impl<F: Field> PartialEq for PolyRing<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.field == other.inner.field
                && self.inner.vars == other.inner.vars
                && self.inner.weights == other.inner.weights)
    }
}

impl<F: Field> Eq for PolyRing<F> {}

impl<F: Field> fmt::Debug for PolyRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.inner.field.spec())?;
        for (i, (v, w)) in self.inner.vars.iter().zip(&self.inner.weights).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if *w == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}:{w}")?;
            }
        }
        write!(f, "]")
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<F: Field> PolyRing<F> {
    pub fn new<S: AsRef<str>>(field: F, vars: &[S], weights: &[u32]) -> Result<Self> {
        if vars.len() != weights.len() {
            return Err(CakError::InvalidRing(format!(
                "{} variables but {} weights",
                vars.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(CakError::InvalidRing("weights must be positive".into()));
        }
        let mut index = HashMap::new();
        let mut names = Vec::with_capacity(vars.len());
        for (i, v) in vars.iter().enumerate() {
            let v = v.as_ref();
            if !is_identifier(v) {
                return Err(CakError::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if index.insert(v.to_string(), i).is_some() {
                return Err(CakError::InvalidRing(format!("duplicate variable `{v}`")));
            }
            names.push(v.to_string());
        }
        Ok(PolyRing {
            inner: Arc::new(RingData { field, vars: names, weights: weights.to_vec(), index }),
        })
    }

    /// Standard grading: every weight is 1.
    pub fn standard<S: AsRef<str>>(field: F, vars: &[S]) -> Result<Self> {
        PolyRing::new(field, vars, &vec![1; vars.len()])
    }

    pub fn field(&self) -> &F {
        &self.inner.field
    }

    pub fn nvars(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.inner.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.inner.weights
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.inner.index.get(name).copied()
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    /// Total order used for canonical term ordering: weighted degrevlex.
    #[inline]
    pub fn compare_monomials(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        TermOrder::WeightedRevLex.cmp(&self.inner.weights, a, b)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u64 {
        m.weighted_degree(&self.inner.weights)
    }

    pub fn zero(&self) -> Polynomial<F> {
        Polynomial::from_sorted_terms(self.clone(), Vec::new())
    }

    pub fn one(&self) -> Polynomial<F> {
        self.constant(self.field().one())
    }

    pub fn constant(&self, c: F::Elem) -> Polynomial<F> {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn from_int(&self, c: i64) -> Polynomial<F> {
        self.constant(self.field().from_i64(c))
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Polynomial<F> {
        if self.field().is_zero(&c) {
            return self.zero();
        }
        Polynomial::from_sorted_terms(self.clone(), vec![(m, c)])
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial<F> {
        self.term(m, self.field().one())
    }

    pub fn var(&self, i: usize) -> Polynomial<F> {
        assert!(i < self.nvars(), "variable index out of range");
        self.monomial(Monomial::var(self.nvars(), i, 1))
    }

    pub fn var_named(&self, name: &str) -> Result<Polynomial<F>> {
        self.var_index(name)
            .map(|i| self.var(i))
            .ok_or_else(|| CakError::UnknownVariable(name.to_string()))
    }

    pub fn vars(&self) -> Vec<Polynomial<F>> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, F::Elem)>>(&self, terms: I) -> Polynomial<F> {
        let field = self.field();
        let mut v: Vec<(Monomial, F::Elem)> = terms.into_iter().collect();
        let w = self.weights();
        v.sort_by(|a, b| TermOrder::WeightedRevLex.cmp(w, &b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(&last.1, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Polynomial::from_sorted_terms(self.clone(), out)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial<F>> {
        super::parse::parse_poly(text, self)
    }

    /// Ring with the same field and weights but selected variables only.
    pub fn subring(&self, keep: &[usize]) -> Result<PolyRing<F>> {
        let names: Vec<&str> = keep.iter().map(|&i| self.inner.vars[i].as_str()).collect();
        let weights: Vec<u32> = keep.iter().map(|&i| self.inner.weights[i]).collect();
        PolyRing::new(self.field().clone(), &names, &weights)
    }
}

/// Quotient presentation `S/J` of a weighted polynomial ring `S` by a
/// weighted-homogeneous ideal `J` (possibly zero).
#[derive(Clone, PartialEq, Eq)]
pub struct RingPresentation<F: Field> {
    ambient: PolyRing<F>,
    relations: Vec<Polynomial<F>>,
}

impl<F: Field> fmt::Debug for RingPresentation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.ambient)?;
        if !self.relations.is_empty() {
            write!(f, "/(")?;
            for (i, r) in self.relations.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{r}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl<F: Field> RingPresentation<F> {
    pub fn new(ambient: PolyRing<F>, relations: Vec<Polynomial<F>>) -> Result<Self> {
        let mut kept = Vec::new();
        for r in relations {
            if r.ring() != &ambient {
                return Err(CakError::RingMismatch);
            }
            if r.is_zero() {
                continue;
            }
            if !r.is_homogeneous() {
                return Err(CakError::NotHomogeneous(format!("relation `{r}`")));
            }
            kept.push(r);
        }
        Ok(RingPresentation { ambient, relations: kept })
    }

    /// The polynomial ring itself, no relations.
    pub fn polynomial(ambient: PolyRing<F>) -> Self {
        RingPresentation { ambient, relations: Vec::new() }
    }

    pub fn parse(ambient: PolyRing<F>, relations: &[&str]) -> Result<Self> {
        let rels = relations.iter().map(|s| ambient.parse(s)).collect::<Result<Vec<_>>>()?;
        RingPresentation::new(ambient, rels)
    }

    pub fn ambient(&self) -> &PolyRing<F> {
        &self.ambient
    }

    pub fn relations(&self) -> &[Polynomial<F>] {
        &self.relations
    }

    pub fn field(&self) -> &F {
        self.ambient.field()
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_empty()
    }

    /// Same ambient ring with extra relations appended.
    pub fn with_relations(&self, extra: &[Polynomial<F>]) -> Result<Self> {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        RingPresentation::new(self.ambient.clone(), rels)
    }
}

/// JSON ring file: `{"field": {...}, "vars": [...], "weights": [...], "relations": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFile {
    #[serde(default)]
    pub field: FieldSpec,
    pub vars: Vec<String>,
    #[serde(default)]
    pub weights: Option<Vec<u32>>,
    #[serde(default)]
    pub relations: Vec<String>,
}

impl RingFile {
    /// Validates the file and builds the presentation over the given field,
    /// which must match `self.field`.
    pub fn build<F: Field>(&self, field: F) -> Result<RingPresentation<F>> {
        if field.spec() != self.field {
            return Err(CakError::InvalidField(format!(
                "ring file declares {} but {} was supplied",
                self.field,
                field.spec()
            )));
        }
        let weights = self.weights.clone().unwrap_or_else(|| vec![1; self.vars.len()]);
        let ambient = PolyRing::new(field, &self.vars, &weights)?;
        let mut rels = Vec::with_capacity(self.relations.len());
        for (i, text) in self.relations.iter().enumerate() {
            let p = ambient.parse(text).map_err(|e| {
                CakError::InvalidRing(format!("relation {i} (`{text}`): {e}"))
            })?;
            if !p.is_zero() && !p.is_homogeneous() {
                return Err(CakError::NotHomogeneous(format!("relation {i} `{text}`")));
            }
            rels.push(p);
        }
        RingPresentation::new(ambient, rels)
    }

    pub fn from_presentation<F: Field>(r: &RingPresentation<F>) -> Self {
        RingFile {
            field: r.field().spec(),
            vars: r.ambient().var_names().to_vec(),
            weights: Some(r.ambient().weights().to_vec()),
            relations: r.relations().iter().map(|p| p.to_string()).collect(),
        }
    }
}
