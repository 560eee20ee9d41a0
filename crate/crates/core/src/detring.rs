//! Determinantal ideals: minors, the banded presentation of powers of a
//! parameter ideal, and the linear reduction of a generic `s×t` matrix to it.

use serde::{Deserialize, Serialize};

use crate::complexes::{determinant, subsets};
use crate::error::{CakError, Result};
use crate::field::Field;
use crate::groebner::IdealHandle;
use crate::polyring::{PolyRing, Polynomial, RingPresentation};
use crate::resolve::{is_regular_sequence, PolyMatrix};

/// A matrix and a minor size `1 ≤ s ≤ min(rows, cols)`.
#[derive(Clone, Debug)]
pub struct MinorSpec<F: Field> {
    matrix: PolyMatrix<F>,
    size: usize,
}

impl<F: Field> MinorSpec<F> {
    pub fn new(matrix: PolyMatrix<F>, size: usize) -> Result<Self> {
        if size == 0 || size > matrix.rows().min(matrix.cols()) {
            return Err(CakError::Shape(format!(
                "minor size {size} for a {}×{} matrix",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(MinorSpec { matrix, size })
    }

    pub fn matrix(&self) -> &PolyMatrix<F> {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

/// Column sets of size `k` in colexicographic order.
pub fn colex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut v = subsets(n, k);
    v.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    v
}

/// All `s×s` minors: row sets in lex order, column sets in colex order
/// within each row set. Zero minors are kept.
pub fn minors<F: Field>(spec: &MinorSpec<F>) -> Result<Vec<Polynomial<F>>> {
    let m = &spec.matrix;
    let s = spec.size;
    let mut out = Vec::new();
    for rows in subsets(m.rows(), s) {
        let sub = m.select_rows(&rows);
        for cols in colex_subsets(m.cols(), s) {
            out.push(determinant(&sub.select_cols(&cols))?);
        }
    }
    Ok(out)
}

/// `𝕀_s(M)` in the polynomial ring of the matrix.
pub fn minors_ideal<F: Field>(spec: &MinorSpec<F>) -> Result<IdealHandle<F>> {
    let gens = minors(spec)?.into_iter().filter(|p| !p.is_zero()).collect();
    IdealHandle::in_poly_ring(spec.matrix.ring(), gens)
}

/// `𝕀_s(M)` as an ideal of a presented ring over the matrix's ambient ring.
pub fn minors_ideal_in<F: Field>(ring: &RingPresentation<F>, spec: &MinorSpec<F>) -> Result<IdealHandle<F>> {
    if ring.ambient() != spec.matrix.ring() {
        return Err(CakError::RingMismatch);
    }
    let gens = minors(spec)?.into_iter().filter(|p| !p.is_zero()).collect();
    IdealHandle::new(ring, gens)
}

fn named_vars<F: Field>(ring: &PolyRing<F>, names: impl IntoIterator<Item = String>) -> Result<Vec<Polynomial<F>>> {
    names.into_iter().map(|n| ring.var_named(&n)).collect()
}

/// The `ℓ×(n+ℓ−1)` matrix whose row `i` holds `x1..xn` in columns `i..i+n−1`.
/// Its maximal minors generate `(x1..xn)^ℓ`.
pub fn power_parameter_matrix<F: Field>(ring: &PolyRing<F>, l: usize, n: usize) -> Result<PolyMatrix<F>> {
    if l == 0 || n == 0 {
        return Err(CakError::Precondition(format!("need ℓ, n ≥ 1, got ℓ = {l}, n = {n}")));
    }
    let xs = named_vars(ring, (1..=n).map(|i| format!("x{i}")))?;
    Ok(banded(ring, &xs, l))
}

fn banded<F: Field>(ring: &PolyRing<F>, xs: &[Polynomial<F>], l: usize) -> PolyMatrix<F> {
    let cols = xs.len() + l - 1;
    let mut m = PolyMatrix::zero(ring, l, cols);
    for i in 0..l {
        for (k, x) in xs.iter().enumerate() {
            m.set(i, i + k, x.clone());
        }
    }
    m
}

/// Name of the `(i, j)` entry of a generic matrix, 1-based.
pub fn generic_variable_name(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("x{i}{j}")
    } else {
        format!("x{i}_{j}")
    }
}

/// `k[x_{ij}]` for an `s×t` matrix, variables in row-major order.
pub fn generic_matrix_ring<F: Field>(field: F, s: usize, t: usize) -> Result<PolyRing<F>> {
    let names: Vec<String> = (1..=s).flat_map(|i| (1..=t).map(move |j| generic_variable_name(i, j))).collect();
    PolyRing::standard(field, &names)
}

pub fn generic_matrix<F: Field>(ring: &PolyRing<F>, s: usize, t: usize) -> Result<PolyMatrix<F>> {
    let rows = (1..=s)
        .map(|i| named_vars(ring, (1..=t).map(|j| generic_variable_name(i, j))))
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::from_rows(ring, rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetReductionReport {
    pub s: usize,
    pub t: usize,
    pub forms: Vec<String>,
    /// the generic matrix modulo the forms
    pub substituted: Vec<Vec<String>>,
    /// first-row variables left after the substitution, `t − s + 1`
    pub surviving: usize,
    /// number of forms equals `(s−1)(t−s+1) + st − s(t−s+1)`
    pub count_matches: bool,
    /// the forms are a regular sequence on `S/𝕀_s`
    pub regular_on_quotient: bool,
    /// `𝕀_s + Q = (x11..x1,t−s+1)^s + Q`
    pub ideals_equal: bool,
    pub verified: bool,
}

/// Diagonal differences along the band and the entries off it, for
/// `2s ≤ t+1`, together with the generic matrix modulo these forms: the
/// banded `s×t` matrix in `x11..x1,t−s+1`.
pub fn reduction_forms<F: Field>(ring: &PolyRing<F>, s: usize, t: usize) -> Result<(Vec<Polynomial<F>>, PolyMatrix<F>)> {
    if s == 0 || 2 * s > t + 1 {
        return Err(CakError::Precondition(format!("need 1 ≤ s and 2s ≤ t+1, got s = {s}, t = {t}")));
    }
    let x = |i: usize, j: usize| ring.var_named(&generic_variable_name(i, j));
    let band = t - s;
    // B: diagonals starting in rows 1..s−1; C adds row s of the band
    let in_b = |i: usize, j: usize| i < s && j >= i && j - i <= band;
    let in_c = |i: usize, j: usize| i <= s && j >= i && j - i <= band;
    let mut forms = Vec::new();
    for i in 1..=s {
        for j in 1..=t {
            if in_b(i, j) {
                forms.push(&x(i, j)? - &x(i + 1, j + 1)?);
            }
        }
    }
    for i in 1..=s {
        for j in 1..=t {
            if !in_c(i, j) {
                forms.push(x(i, j)?);
            }
        }
    }

    let x_mat = generic_matrix(ring, s, t)?;
    let images = (0..ring.nvars())
        .map(|v| {
            let name = &ring.var_names()[v];
            for i in 1..=s {
                for j in 1..=t {
                    if *name == generic_variable_name(i, j) {
                        return if in_c(i, j) { x(1, j - i + 1) } else { Ok(ring.zero()) };
                    }
                }
            }
            Ok(ring.var(v))
        })
        .collect::<Result<Vec<_>>>()?;
    let substituted = x_mat.try_map_entries(|p| p.compose(ring, &images))?;
    Ok((forms, substituted))
}

/// [`reduction_forms`] with the verification: `𝕀_s + Q = (x11..x1,t−s+1)^s + Q`
/// and `Q` regular on `S/𝕀_s`.
pub fn det_reduction_sequence<F: Field>(ring: &PolyRing<F>, s: usize, t: usize) -> Result<(Vec<Polynomial<F>>, DetReductionReport)> {
    let (forms, substituted) = reduction_forms(ring, s, t)?;
    let band = t - s;
    let x = |i: usize, j: usize| ring.var_named(&generic_variable_name(i, j));
    let x_mat = generic_matrix(ring, s, t)?;

    let first_row: Vec<Polynomial<F>> = (1..=band + 1).map(|j| x(1, j)).collect::<Result<_>>()?;
    let poly = RingPresentation::polynomial(ring.clone());
    let q = IdealHandle::new(&poly, forms.clone())?;
    let i_s = minors_ideal(&MinorSpec::new(x_mat, s)?)?;
    let lhs = i_s.sum(&q)?;
    let rhs = IdealHandle::new(&poly, first_row)?.power(s as u32)?.sum(&q)?;
    let ideals_equal = lhs.equals(&rhs)?;
    let regular_on_quotient = is_regular_sequence(&poly.with_relations(i_s.generators())?, &forms)?;

    let count = (s - 1) * (band + 1) + s * t - s * (band + 1);
    let report = DetReductionReport {
        s,
        t,
        forms: forms.iter().map(|f| f.to_string()).collect(),
        substituted: (0..s).map(|i| substituted.row(i).iter().map(|p| p.to_string()).collect()).collect(),
        surviving: band + 1,
        count_matches: forms.len() == count,
        regular_on_quotient,
        ideals_equal,
        verified: ideals_equal && regular_on_quotient && forms.len() == count,
    };
    Ok((forms, report))
}

#[cfg(test)]
mod tests;
