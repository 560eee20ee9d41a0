//! Koszul and Eagon–Northcott complexes, tensor products of complexes, the
//! closed Betti-number formula and a resolution verifier.

use serde::{Deserialize, Serialize};

use crate::error::{CakError, Result};
use crate::field::Field;
use crate::groebner::{default_budget, IdealHandle};
use crate::polyring::{Polynomial, RingPresentation};
use crate::resolve::{hilbert_numerator, kernel, module_hilbert_numerator, submodule_equal};
use crate::resolve::{ChainComplex, Laurent, PolyMatrix, PresentedModule};

/// Ranks of a complex by homological degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<u64>);

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Multisets of size `k` from `0..n` as sorted tuples, lexicographic order.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn degree_of(p: &Polynomial<impl Field>) -> Result<i64> {
    if p.is_zero() {
        return Ok(0);
    }
    p.homogeneous_degree().map(|d| d as i64).ok_or_else(|| CakError::NotHomogeneous(format!("`{p}`")))
}

/// Koszul complex on homogeneous elements; `K_i` has the `i`-subsets as
/// basis and `d(e_J) = Σ_p (−1)^p f_{J_p} e_{J∖J_p}`.
pub fn koszul_complex<F: Field>(ring: &RingPresentation<F>, elems: &[Polynomial<F>]) -> Result<ChainComplex<F>> {
    let s = ring.ambient();
    if elems.iter().any(|p| p.ring() != s) {
        return Err(CakError::RingMismatch);
    }
    let degs = elems.iter().map(degree_of).collect::<Result<Vec<_>>>()?;
    let m = elems.len();
    let bases: Vec<Vec<Vec<usize>>> = (0..=m).map(|k| subsets(m, k)).collect();
    let modules: Vec<Vec<i64>> = bases.iter().map(|b| b.iter().map(|j| j.iter().map(|&x| degs[x]).sum()).collect()).collect();
    let mut maps = Vec::with_capacity(m);
    for k in 1..=m {
        let src = &bases[k];
        let tgt = &bases[k - 1];
        let mut d = PolyMatrix::zero(s, tgt.len(), src.len());
        for (c, j) in src.iter().enumerate() {
            for p in 0..j.len() {
                let mut rest = j.clone();
                rest.remove(p);
                let r = tgt.binary_search(&rest).expect("subset present");
                let e = if p % 2 == 0 { elems[j[p]].clone() } else { elems[j[p]].neg() };
                d.set(r, c, e);
            }
        }
        maps.push(d);
    }
    ChainComplex::new(ring, modules, maps)
}

/// Row and column degrees making `deg M_ij = c_j − r_i`, propagated along
/// nonzero entries; each connected piece starts from a row of degree 0.
pub fn matrix_degrees<F: Field>(m: &PolyMatrix<F>) -> Result<(Vec<i64>, Vec<i64>)> {
    let (s, t) = (m.rows(), m.cols());
    let mut r: Vec<Option<i64>> = vec![None; s];
    let mut c: Vec<Option<i64>> = vec![None; t];
    let mut degs = vec![vec![None; t]; s];
    for i in 0..s {
        for j in 0..t {
            let p = m.get(i, j);
            if !p.is_zero() {
                degs[i][j] = Some(degree_of(p)?);
            }
        }
    }
    while let Some(start) = (0..s).find(|&i| r[i].is_none()) {
        r[start] = Some(0);
        let mut stack = vec![(true, start)];
        while let Some((is_row, k)) = stack.pop() {
            if is_row {
                let a = r[k].unwrap();
                for j in 0..t {
                    let Some(d) = degs[k][j] else { continue };
                    match c[j] {
                        None => {
                            c[j] = Some(a + d);
                            stack.push((false, j));
                        }
                        Some(b) if b - a != d => {
                            return Err(CakError::NotHomogeneous(format!("matrix entry ({k},{j})")));
                        }
                        _ => {}
                    }
                }
            } else {
                let b = c[k].unwrap();
                for i in 0..s {
                    let Some(d) = degs[i][k] else { continue };
                    match r[i] {
                        None => {
                            r[i] = Some(b - d);
                            stack.push((true, i));
                        }
                        Some(a) if b - a != d => {
                            return Err(CakError::NotHomogeneous(format!("matrix entry ({i},{k})")));
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    Ok((r.into_iter().map(|x| x.unwrap()).collect(), c.into_iter().map(|x| x.unwrap_or(0)).collect()))
}

/// Determinant by Laplace expansion along the first row.
pub fn determinant<F: Field>(m: &PolyMatrix<F>) -> Result<Polynomial<F>> {
    if m.rows() != m.cols() {
        return Err(CakError::Shape(format!("{}x{} matrix is not square", m.rows(), m.cols())));
    }
    let n = m.rows();
    let ring = m.ring();
    if n == 0 {
        return Ok(ring.one());
    }
    if n == 1 {
        return Ok(m.get(0, 0).clone());
    }
    let mut acc = ring.zero();
    for j in 0..n {
        let e = m.get(0, j);
        if e.is_zero() {
            continue;
        }
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&x| x != j).collect();
        let minor = determinant(&m.select_rows(&rows).select_cols(&cols))?;
        let term = e * &minor;
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    Ok(acc)
}

/// Eagon–Northcott complex of an `s × t` matrix (`s ≤ t`).
///
/// `EN_0 = R`, `EN_1 = ∧^s F` with `d_1(e_J) = det M_J`, and for `k ≥ 2`
/// `EN_k = D_{k−1}(G*) ⊗ ∧^{s+k−1} F` with
/// `d_k(α ⊗ e_J) = Σ_{i: α_i>0} Σ_p (−1)^p M_{i,J_p} (α − ε_i) ⊗ e_{J∖J_p}`.
pub fn eagon_northcott<F: Field>(ring: &RingPresentation<F>, m: &PolyMatrix<F>) -> Result<ChainComplex<F>> {
    let (s, t) = (m.rows(), m.cols());
    if s == 0 || s > t {
        return Err(CakError::Shape(format!("Eagon–Northcott needs 1 ≤ rows ≤ cols, got {s}x{t}")));
    }
    if m.ring() != ring.ambient() {
        return Err(CakError::RingMismatch);
    }
    let ring_s = ring.ambient();
    let (rdeg, cdeg) = matrix_degrees(m)?;
    let rsum: i64 = rdeg.iter().sum();
    // basis of EN_k, k ≥ 1: (multiset α of size k−1 over rows, subset J of size s+k−1)
    let len = t - s + 1;
    let mut bases: Vec<Vec<(Vec<usize>, Vec<usize>)>> = vec![vec![(Vec::new(), Vec::new())]];
    for k in 1..=len {
        let mut b = Vec::new();
        for a in multisets(s, k - 1) {
            for j in subsets(t, s + k - 1) {
                b.push((a.clone(), j));
            }
        }
        bases.push(b);
    }
    let twist = |a: &[usize], j: &[usize], k: usize| -> i64 {
        if k == 0 {
            return 0;
        }
        j.iter().map(|&x| cdeg[x]).sum::<i64>() - rsum - a.iter().map(|&i| rdeg[i]).sum::<i64>()
    };
    let modules: Vec<Vec<i64>> =
        bases.iter().enumerate().map(|(k, b)| b.iter().map(|(a, j)| twist(a, j, k)).collect()).collect();
    let mut maps = Vec::with_capacity(len);
    // d_1: maximal minors
    let mut d1 = PolyMatrix::zero(ring_s, 1, bases[1].len());
    for (c, (_, j)) in bases[1].iter().enumerate() {
        d1.set(0, c, determinant(&m.select_cols(j))?);
    }
    maps.push(d1);
    for k in 2..=len {
        let src = &bases[k];
        let tgt = &bases[k - 1];
        let mut d = PolyMatrix::zero(ring_s, tgt.len(), src.len());
        for (c, (a, j)) in src.iter().enumerate() {
            let mut rows_used: Vec<usize> = a.clone();
            rows_used.dedup();
            for &i in &rows_used {
                let mut a2 = a.clone();
                let pos = a2.iter().position(|&x| x == i).unwrap();
                a2.remove(pos);
                for p in 0..j.len() {
                    let e = m.get(i, j[p]);
                    if e.is_zero() {
                        continue;
                    }
                    let mut j2 = j.clone();
                    j2.remove(p);
                    let r = tgt.binary_search(&(a2.clone(), j2)).expect("basis element present");
                    let e = if p % 2 == 0 { e.clone() } else { e.neg() };
                    let cur = d.get(r, c).clone();
                    d.set(r, c, &cur + &e);
                }
            }
        }
        maps.push(d);
    }
    ChainComplex::new(ring, modules, maps)
}

/// Total complex of `C ⊗ D`, `d(a⊗b) = da⊗b + (−1)^{|a|} a⊗db`.
pub fn tensor_complexes<F: Field>(c: &ChainComplex<F>, d: &ChainComplex<F>) -> Result<ChainComplex<F>> {
    if c.ring() != d.ring() {
        return Err(CakError::RingMismatch);
    }
    let ring = c.ring();
    let s = ring.ambient();
    let (n, m) = (c.top(), d.top());
    // basis of (C⊗D)_k: (i, a, b) with i + j = k, a < rank C_i, b < rank D_j
    let mut bases: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(n + m + 1);
    for k in 0..=n + m {
        let mut b = Vec::new();
        for i in 0..=k.min(n) {
            let j = k - i;
            if j > m {
                continue;
            }
            for a in 0..c.rank(i) {
                for bb in 0..d.rank(j) {
                    b.push((i, a, bb));
                }
            }
        }
        bases.push(b);
    }
    let modules: Vec<Vec<i64>> = bases
        .iter()
        .enumerate()
        .map(|(k, b)| b.iter().map(|&(i, a, bb)| c.twists(i)[a] + d.twists(k - i)[bb]).collect())
        .collect();
    let mut maps = Vec::with_capacity(n + m);
    for k in 1..=n + m {
        let src = &bases[k];
        let tgt = &bases[k - 1];
        let index = |x: &(usize, usize, usize)| tgt.iter().position(|y| y == x).expect("basis element present");
        let mut mat = PolyMatrix::zero(s, tgt.len(), src.len());
        for (col, &(i, a, b)) in src.iter().enumerate() {
            let j = k - i;
            if i >= 1 {
                let dc = c.differential(i);
                for r in 0..dc.rows() {
                    let e = dc.get(r, a);
                    if !e.is_zero() {
                        mat.set(index(&(i - 1, r, b)), col, e.clone());
                    }
                }
            }
            if j >= 1 {
                let dd = d.differential(j);
                for r in 0..dd.rows() {
                    let e = dd.get(r, b);
                    if !e.is_zero() {
                        let e = if i % 2 == 0 { e.clone() } else { e.neg() };
                        mat.set(index(&(i, a, r)), col, e);
                    }
                }
            }
        }
        maps.push(mat);
    }
    ChainComplex::new(ring, modules, maps)
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `rank F_i = Σ_{j=0}^{v−r−d} β_{i−j}·binom(v−r−d, j)` with `β_0 = 1` and
/// `β_k = k·binom(r+1, k+1)` for `1 ≤ k ≤ r`.
pub fn theorem_betti_formula(v: u64, r: u64, d: u64) -> Result<BettiVector> {
    if r < 1 {
        return Err(CakError::Precondition("r must be at least 1".into()));
    }
    if v < r + d {
        return Err(CakError::Precondition(format!("v = {v} is smaller than r + d = {}", r + d)));
    }
    let m = v - r - d;
    let beta: Vec<u64> = (0..=r).map(|k| if k == 0 { 1 } else { k * binom(r + 1, k + 1) }).collect();
    let len = (v - d) as usize + 1;
    let mut out = vec![0u64; len];
    for (i, slot) in out.iter_mut().enumerate() {
        for j in 0..=m as usize {
            if j <= i && i - j < beta.len() {
                *slot += beta[i - j] * binom(m, j as u64);
            }
        }
    }
    Ok(BettiVector(out))
}

/// Outcome of [`verify_resolution`]; `failures` names each failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionReport {
    pub d_squared_zero: bool,
    pub graded: bool,
    pub h0_matches: bool,
    /// exactness at `F_i` for `i = 1..=top`
    pub exact: Vec<bool>,
    pub euler_characteristic: bool,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Checks that `c` is a graded free resolution of `target`.
pub fn verify_resolution<F: Field>(c: &ChainComplex<F>, target: &PresentedModule<F>) -> Result<ResolutionReport> {
    let budget = default_budget();
    let ring = c.ring();
    let mut failures = Vec::new();
    let d_squared_zero = c.is_complex()?;
    if !d_squared_zero {
        failures.push("d∘d ≠ 0".to_string());
    }
    let graded = c.is_graded();
    if !graded {
        failures.push("differentials are not degree-preserving".to_string());
    }
    let mut t0 = c.twists(0).to_vec();
    let mut ta = target.ambient().twists().to_vec();
    t0.sort();
    ta.sort();
    let h0_matches = if c.twists(0) != target.ambient().twists() || t0 != ta {
        false
    } else {
        let img = if c.top() >= 1 { c.differential(1).columns() } else { Vec::new() };
        submodule_equal(ring, c.twists(0), &img, &target.relations().columns(), budget)?
    };
    if !h0_matches {
        failures.push("H_0 differs from the target module".to_string());
    }
    let mut exact = Vec::new();
    for i in 1..=c.top() {
        let (ker, _) = kernel(ring, c.differential(i), c.twists(i - 1), c.twists(i), budget)?;
        let ok = if i < c.top() {
            submodule_equal(ring, c.twists(i), &ker, &c.differential(i + 1).columns(), budget)?
        } else {
            ker.is_empty()
        };
        if !ok {
            failures.push(format!("not exact at F_{i}"));
        }
        exact.push(ok);
    }
    let rnum = hilbert_numerator(&IdealHandle::new(ring, Vec::new())?)?;
    let mut alt = Laurent::default();
    for i in 0..=c.top() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for &a in c.twists(i) {
            alt = &alt + &Laurent::monomial(a, sign);
        }
    }
    let euler_characteristic = &alt * &rnum == module_hilbert_numerator(target, budget)?;
    if !euler_characteristic {
        failures.push("Euler characteristic differs from the Hilbert series".to_string());
    }
    let passed = failures.is_empty();
    Ok(ResolutionReport { d_squared_zero, graded, h0_matches, exact, euler_characteristic, failures, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::polyring::PolyRing;
    use crate::resolve::{minimal_free_resolution, resolve_quotient};

    fn ring(names: &[&str]) -> RingPresentation<PrimeField> {
        RingPresentation::polynomial(PolyRing::standard(PrimeField::default(), names).unwrap())
    }

    fn generic(s: usize, t: usize) -> (RingPresentation<PrimeField>, PolyMatrix<PrimeField>) {
        let names: Vec<String> = (1..=s).flat_map(|i| (1..=t).map(move |j| format!("x{i}{j}"))).collect();
        let r = RingPresentation::polynomial(PolyRing::standard(PrimeField::default(), &names).unwrap());
        let vars = r.ambient().vars();
        let rows = (0..s).map(|i| vars[i * t..(i + 1) * t].to_vec()).collect();
        let m = PolyMatrix::from_rows(r.ambient(), rows).unwrap();
        (r, m)
    }

    #[test]
    fn koszul_ranks() {
        let r = ring(&["x", "y", "z", "w"]);
        let v = r.ambient().vars();
        assert_eq!(koszul_complex(&r, &v[..1]).unwrap().ranks(), vec![1, 1]);
        let k2 = koszul_complex(&r, &v[..2]).unwrap();
        assert_eq!(k2.ranks(), vec![1, 2, 1]);
        let k4 = koszul_complex(&r, &v).unwrap();
        assert_eq!(k4.ranks(), vec![1, 4, 6, 4, 1]);
        assert!(k4.is_complex().unwrap());
        assert_eq!(koszul_complex(&r, &[]).unwrap().ranks(), vec![1]);
        let target = PresentedModule::cyclic(&r, &v[..2]).unwrap();
        assert!(verify_resolution(&k2, &target).unwrap().passed);
    }

    #[test]
    fn eagon_northcott_shapes() {
        let (r, m) = generic(2, 3);
        let en = eagon_northcott(&r, &m).unwrap();
        assert_eq!(en.ranks(), vec![1, 3, 2]);
        assert!(en.is_complex().unwrap());
        for q in 2..=4usize {
            let (r, m) = generic(2, q);
            let en = eagon_northcott(&r, &m).unwrap();
            let want: Vec<usize> = (0..q).map(|k| if k == 0 { 1 } else { k * binom(q as u64, k as u64 + 1) as usize }).collect();
            assert_eq!(en.ranks(), want);
            let minors: Vec<_> = en.differential(1).row(0);
            let target = PresentedModule::cyclic(&r, &minors).unwrap();
            let rep = verify_resolution(&en, &target).unwrap();
            assert!(rep.passed, "{rep:?}");
        }
        // 1×t is Koszul on the entries
        let (r, m) = generic(1, 4);
        let en = eagon_northcott(&r, &m).unwrap();
        let k = koszul_complex(&r, &m.row(0)).unwrap();
        assert_eq!(en.ranks(), k.ranks());
        assert_eq!(en.differentials(), k.differentials());
    }

    #[test]
    fn en_of_power_matrix() {
        let r = ring(&["x1", "x2"]);
        let m = PolyMatrix::parse(r.ambient(), "x1, x2, 0; 0, x1, x2").unwrap();
        let en = eagon_northcott(&r, &m).unwrap();
        let q2 = IdealHandle::parse(&r, "x1^2; x1*x2; x2^2").unwrap();
        let target = PresentedModule::cyclic(&r, q2.generators()).unwrap();
        assert!(verify_resolution(&en, &target).unwrap().passed);
    }

    #[test]
    fn tensor_products() {
        let r = ring(&["x", "y", "z", "w"]);
        let v = r.ambient().vars();
        let kx = koszul_complex(&r, &v[..1]).unwrap();
        let ky = koszul_complex(&r, &v[1..2]).unwrap();
        let t = tensor_complexes(&kx, &ky).unwrap();
        assert_eq!(t.ranks(), vec![1, 2, 1]);
        assert!(t.is_complex().unwrap());
        let unit = ChainComplex::free(&r, vec![0]);
        let same = tensor_complexes(&kx, &unit).unwrap();
        assert_eq!(same.differentials(), kx.differentials());

        // EN(2x3) ⊗ Koszul(w) has the shape of the R1 resolution
        let m = PolyMatrix::parse(r.ambient(), "x, y, z; y, z, x").unwrap();
        let en = eagon_northcott(&r, &m).unwrap();
        let kw = koszul_complex(&r, &v[3..4]).unwrap();
        let cone = tensor_complexes(&en, &kw).unwrap();
        assert_eq!(cone.ranks(), vec![1, 4, 5, 2]);
        assert!(cone.is_complex().unwrap());
    }

    #[test]
    fn corrupted_sign_is_caught() {
        let r = ring(&["x", "y"]);
        let v = r.ambient().vars();
        let k = koszul_complex(&r, &v).unwrap();
        let mut maps = k.differentials().to_vec();
        let e = maps[1].get(0, 0).neg();
        maps[1].set(0, 0, e);
        let bad = ChainComplex::new(&r, k.modules().to_vec(), maps).unwrap();
        let rep = verify_resolution(&bad, &PresentedModule::cyclic(&r, &v).unwrap()).unwrap();
        assert!(!rep.d_squared_zero);
        assert!(!rep.passed);
    }

    #[test]
    fn betti_formula_values() {
        assert_eq!(theorem_betti_formula(4, 2, 1).unwrap().0, vec![1, 4, 5, 2]);
        assert_eq!(theorem_betti_formula(3, 2, 1).unwrap().0, vec![1, 3, 2]);
        assert_eq!(theorem_betti_formula(2, 1, 1).unwrap().0, vec![1, 1]);
        assert_eq!(theorem_betti_formula(6, 3, 1).unwrap().0, vec![1, 8, 21, 25, 14, 3]);
        assert!(theorem_betti_formula(2, 2, 1).is_err());
        for r in 1..=4 {
            for d in 0..=2 {
                let b = theorem_betti_formula(r + d, r, d).unwrap().0;
                assert_eq!(*b.last().unwrap(), r);
            }
        }
    }

    #[test]
    fn formula_matches_model_rings() {
        // (X_1..X_r)^2 + (X_{r+1}..X_{v−d}) in v variables
        for (v, r, d) in [(4u64, 2u64, 1u64), (3, 1, 0), (4, 3, 0), (5, 2, 1)] {
            let names: Vec<String> = (1..=v).map(|i| format!("X{i}")).collect();
            let s = RingPresentation::polynomial(PolyRing::standard(PrimeField::default(), &names).unwrap());
            let x = s.ambient().vars();
            let sq = IdealHandle::new(&s, x[..r as usize].to_vec()).unwrap().power(2).unwrap();
            let lin = IdealHandle::new(&s, x[r as usize..(v - d) as usize].to_vec()).unwrap();
            let i = sq.sum(&lin).unwrap();
            let c = resolve_quotient(&i, None).unwrap();
            let ranks: Vec<u64> = c.ranks().iter().map(|&x| x as u64).collect();
            assert_eq!(ranks, theorem_betti_formula(v, r, d).unwrap().0, "(v,r,d)=({v},{r},{d})");
        }
    }

    #[test]
    fn resolution_of_residue_field_verifies() {
        let r = ring(&["x", "y", "z"]);
        let k = PresentedModule::residue_field(&r);
        let c = minimal_free_resolution(&k, None).unwrap();
        assert!(verify_resolution(&c, &k).unwrap().passed);
    }

    #[test]
    fn laplace_matches_leibniz() {
        use rand::{Rng, SeedableRng};
        let r = ring(&["x", "y"]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let mut m = PolyMatrix::zero(r.ambient(), 3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    let a = rng.gen_range(-3i64..4);
                    let b = rng.gen_range(-3i64..4);
                    let p = &r.ambient().from_int(a) + &(&r.ambient().var(0) * &r.ambient().from_int(b));
                    m.set(i, j, p);
                }
            }
            // Leibniz over the six permutations
            let perms = [([0, 1, 2], 1i64), ([0, 2, 1], -1), ([1, 0, 2], -1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([2, 1, 0], -1)];
            let mut leib = r.ambient().zero();
            for (p, sgn) in perms {
                let t = &(m.get(0, p[0]) * m.get(1, p[1])) * m.get(2, p[2]);
                leib = &leib + &(&t * &r.ambient().from_int(sgn));
            }
            assert_eq!(determinant(&m).unwrap(), leib);
        }
    }
}
