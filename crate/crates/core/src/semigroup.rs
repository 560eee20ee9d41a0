//! Numerical semigroups and their rings `k[t^{a_1}, …, t^{a_e}]`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::detring::{minors, MinorSpec};
use crate::error::{CakError, Result};
use crate::field::Field;
use crate::groebner::{IdealHandle, RingMap};
use crate::polyring::{Monomial, PolyRing, Polynomial, RingPresentation};
use crate::resolve::PolyMatrix;

/// Minimally generated numerical semigroup (gcd of the generators is 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    apery: Vec<u64>,
}

impl TryFrom<Vec<u64>> for NumericalSemigroup {
    type Error = CakError;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        NumericalSemigroup::new(v)
    }
}

impl From<NumericalSemigroup> for Vec<u64> {
    fn from(s: NumericalSemigroup) -> Self {
        s.generators
    }
}

/// Apéry set with respect to `gens[0]`: shortest paths in the residue graph.
fn apery_set(gens: &[u64]) -> Vec<u64> {
    let a = gens[0] as usize;
    let mut w = vec![u64::MAX; a];
    w[0] = 0;
    let mut done = vec![false; a];
    for _ in 0..a {
        let Some(r) = (0..a).filter(|&r| !done[r] && w[r] != u64::MAX).min_by_key(|&r| w[r]) else { break };
        done[r] = true;
        for &g in &gens[1..] {
            let s = (r + g as usize) % a;
            w[s] = w[s].min(w[r] + g);
        }
    }
    w
}

impl NumericalSemigroup {
    /// Generators in the given order; they must be positive, coprime and
    /// minimal.
    pub fn new(generators: Vec<u64>) -> Result<Self> {
        if generators.is_empty() || generators.contains(&0) {
            return Err(CakError::Precondition("generators must be positive and nonempty".into()));
        }
        if generators.iter().fold(0u64, |g, &a| g.gcd(&a)) != 1 {
            return Err(CakError::Precondition(format!("generators {generators:?} are not coprime")));
        }
        for (i, &a) in generators.iter().enumerate() {
            let others: Vec<u64> = generators.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &b)| b).collect();
            if generated_by(&others, a) {
                return Err(CakError::Precondition(format!("generator {a} is generated by the others")));
            }
        }
        let mut sorted = generators.clone();
        sorted.sort_unstable();
        let apery = apery_set(&sorted);
        Ok(NumericalSemigroup { generators, apery })
    }

    /// Drops redundant generators, keeping the order of the rest.
    pub fn generated_by(generators: &[u64]) -> Result<Self> {
        let mut kept: Vec<u64> = Vec::new();
        let mut sorted: Vec<u64> = generators.iter().copied().filter(|&a| a > 0).collect();
        sorted.sort_unstable();
        sorted.dedup();
        for a in sorted {
            if !generated_by(&kept, a) {
                kept.push(a);
            }
        }
        let order: Vec<u64> = generators.iter().copied().filter(|a| kept.contains(a)).fold(Vec::new(), |mut v, a| {
            if !v.contains(&a) {
                v.push(a);
            }
            v
        });
        NumericalSemigroup::new(order)
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn multiplicity(&self) -> u64 {
        *self.generators.iter().min().unwrap()
    }

    pub fn embedding_dim(&self) -> usize {
        self.generators.len()
    }

    /// Smallest element of each residue class modulo the multiplicity.
    pub fn apery(&self) -> &[u64] {
        &self.apery
    }

    /// Largest integer outside the semigroup; `-1` for `ℕ`.
    pub fn frobenius(&self) -> i64 {
        *self.apery.iter().max().unwrap() as i64 - self.multiplicity() as i64
    }

    /// Number of gaps.
    pub fn genus(&self) -> u64 {
        let e = self.multiplicity();
        self.apery.iter().map(|w| w / e).sum()
    }

    pub fn contains(&self, m: u64) -> bool {
        let e = self.multiplicity();
        m >= self.apery[(m % e) as usize]
    }

    /// Coefficients `c` with `m = Σ c_i a_i`, or `None`.
    pub fn representation(&self, m: u64) -> Option<Vec<u64>> {
        if !self.contains(m) {
            return None;
        }
        let e = self.multiplicity();
        let base = self.apery[(m % e) as usize];
        let idx = self.generators.iter().position(|&a| a == e).unwrap();
        let mut c = decompose(&self.generators, base)?;
        c[idx] += (m - base) / e;
        Some(c)
    }
}

fn generated_by(gens: &[u64], m: u64) -> bool {
    decompose(gens, m).is_some()
}

/// Dynamic programming over `0..=m`.
fn decompose(gens: &[u64], m: u64) -> Option<Vec<u64>> {
    let m = m as usize;
    let mut from = vec![usize::MAX; m + 1];
    let mut reach = vec![false; m + 1];
    reach[0] = true;
    for x in 1..=m {
        for (i, &a) in gens.iter().enumerate() {
            let a = a as usize;
            if a <= x && reach[x - a] {
                reach[x] = true;
                from[x] = i;
                break;
            }
        }
    }
    if !reach[m] {
        return None;
    }
    let mut c = vec![0u64; gens.len()];
    let mut x = m;
    while x > 0 {
        c[from[x]] += 1;
        x -= gens[from[x]] as usize;
    }
    Some(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub element: u64,
    pub member: bool,
    pub witness: Option<Vec<u64>>,
}

pub fn semigroup_membership(s: &NumericalSemigroup, m: u64) -> Membership {
    let witness = s.representation(m);
    Membership { element: m, member: witness.is_some(), witness }
}

/// `X, Y, Z, W` for up to four generators, `X1..Xe` beyond.
pub fn variable_names(e: usize) -> Vec<String> {
    if e <= 4 {
        ["X", "Y", "Z", "W"][..e].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=e).map(|i| format!("X{i}")).collect()
    }
}

/// `S = k[X_1..X_e]` graded by the generators.
pub fn semigroup_ambient<F: Field>(field: F, s: &NumericalSemigroup) -> Result<PolyRing<F>> {
    let weights: Vec<u32> = s
        .generators()
        .iter()
        .map(|&a| u32::try_from(a).map_err(|_| CakError::Precondition(format!("generator {a} is too large"))))
        .collect::<Result<_>>()?;
    PolyRing::new(field, &variable_names(s.embedding_dim()), &weights)
}

/// Kernel of `S → k[t]`, `X_i ↦ t^{a_i}`, as an ideal of `S`.
pub fn toric_ideal<F: Field>(field: F, s: &NumericalSemigroup) -> Result<IdealHandle<F>> {
    let ambient = semigroup_ambient(field.clone(), s)?;
    let t = PolyRing::new(field, &["t"], &[1])?;
    let images = s.generators().iter().map(|&a| t.monomial(Monomial::from_exps(&[a as u16]))).collect();
    let phi = RingMap::graded(RingPresentation::polynomial(ambient), RingPresentation::polynomial(t), images)?;
    phi.kernel()
}

/// `k[t^{a_1}, …, t^{a_e}] ≅ S/P` with `P` minimally generated.
pub fn semigroup_ring<F: Field>(field: F, s: &NumericalSemigroup) -> Result<RingPresentation<F>> {
    let p = toric_ideal(field, s)?;
    let mut rels = p.minimal_generators()?;
    rels.sort_by_key(|g| g.homogeneous_degree());
    RingPresentation::new(p.ambient().clone(), rels)
}

/// `X_i ↦ t^{a_i}` applied to a polynomial of the semigroup ambient ring,
/// as a list of `(exponent, coefficient)`.
pub fn t_substitution<F: Field>(s: &NumericalSemigroup, p: &Polynomial<F>) -> Vec<(u64, F::Elem)> {
    let field = p.ring().field();
    let mut out: Vec<(u64, F::Elem)> = Vec::new();
    for (m, c) in p.terms() {
        let e: u64 = m.exps().iter().zip(s.generators()).map(|(&x, &a)| x as u64 * a).sum();
        match out.iter_mut().find(|(d, _)| *d == e) {
            Some((_, acc)) => *acc = field.add(acc, c),
            None => out.push((e, c.clone())),
        }
    }
    out.retain(|(_, c)| !field.is_zero(c));
    out.sort_by_key(|(e, _)| *e);
    out
}

/// The `f` of `W² − f` by `n mod 6`, with `m = ⌊n/6⌋`, as exponents of `X, Y, Z`.
pub fn family_2x3_f_exponents(n: u64) -> [u64; 3] {
    let m = n / 6;
    match n % 6 {
        0 => [m, m - 1, 1],
        1 => [m + 2, 0, m - 1],
        2 => [m + 1, m, 0],
        3 => [m, m - 1, 0],
        4 => [m, m - 1, 2],
        _ => [m + 2, m - 1, 1],
    }
}

/// The ring of `⟨10, 14, 16, 2n+1⟩` against `𝕀₂` of the `2×3` matrix plus `(W² − f)`.
#[derive(Clone, Debug)]
pub struct Family2x3<F: Field> {
    pub n: u64,
    pub m: u64,
    pub semigroup: NumericalSemigroup,
    pub ring: RingPresentation<F>,
    pub kernel: IdealHandle<F>,
    pub expected: IdealHandle<F>,
    pub f: Polynomial<F>,
    pub report: Family2x3Report,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family2x3Report {
    pub n: u64,
    pub m: u64,
    pub generators: Vec<u64>,
    pub f: String,
    pub f_degree: u64,
    pub w2_degree: u64,
    pub expected_in_kernel: bool,
    pub kernel_in_expected: bool,
    #[serde(rename = "match")]
    pub matches: bool,
    pub diagnostic: Option<String>,
}

pub fn family_2x3_matrix<F: Field>(s: &PolyRing<F>) -> Result<PolyMatrix<F>> {
    PolyMatrix::parse(s, "X, Y^2, Z; Y, Z^2, X^2")
}

/// Monomials `X^a Y^b Z^c` of weighted degree `d` for weights `10, 14, 16`.
fn xyz_monomials_of_degree(d: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for c in 0..=d / 16 {
        for b in 0..=(d - 16 * c) / 14 {
            let rest = d - 16 * c - 14 * b;
            if rest % 10 == 0 {
                out.push([rest / 10, b, c]);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn family_2x3_semigroup<F: Field>(field: F, n: u64) -> Result<Family2x3<F>> {
    if n < 6 {
        return Err(CakError::Precondition(format!("the family needs n ≥ 6, got {n}")));
    }
    let semigroup = NumericalSemigroup::new(vec![10, 14, 16, 2 * n + 1])?;
    let kernel = toric_ideal(field, &semigroup)?;
    let s = kernel.ambient().clone();
    let ring = RingPresentation::new(s.clone(), kernel.minimal_generators()?)?;

    let mat = family_2x3_matrix(&s)?;
    let mut gens = minors(&MinorSpec::new(mat, 2)?)?;
    let [a, b, c] = family_2x3_f_exponents(n);
    let f = s.monomial(Monomial::from_exps(&[a as u16, b as u16, c as u16, 0]));
    let w = s.var(3);
    gens.push(&(&w * &w) - &f);
    let expected = IdealHandle::in_poly_ring(&s, gens)?.with_budget(kernel.budget());

    let expected_in_kernel = kernel.contains_ideal(&expected)?;
    let kernel_in_expected = expected.contains_ideal(&kernel)?;
    let matches = expected_in_kernel && kernel_in_expected;
    let f_degree = 10 * a + 14 * b + 16 * c;
    let w2_degree = 2 * (2 * n + 1);
    let diagnostic = (!matches).then(|| {
        let mut msg = format!("f = {f} has degree {f_degree}; W^2 has degree {w2_degree}");
        let fits: Vec<String> = xyz_monomials_of_degree(w2_degree)
            .iter()
            .map(|e| s.monomial(Monomial::from_exps(&[e[0] as u16, e[1] as u16, e[2] as u16, 0])).to_string())
            .collect();
        if !fits.is_empty() {
            msg.push_str(&format!("; monomials in X, Y, Z of degree {w2_degree}: {}", fits.join(", ")));
        }
        msg
    });
    let report = Family2x3Report {
        n,
        m: n / 6,
        generators: semigroup.generators().to_vec(),
        f: f.to_string(),
        f_degree,
        w2_degree,
        expected_in_kernel,
        kernel_in_expected,
        matches,
        diagnostic,
    };
    Ok(Family2x3 { n, m: n / 6, semigroup, ring, kernel, expected, f, report })
}

#[cfg(test)]
mod tests;
