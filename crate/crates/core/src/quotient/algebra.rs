//! Finite-dimensional graded algebras `S/J` and their finitely generated
//! modules, handled by linear algebra on the standard-monomial basis.

use std::collections::{BTreeMap, HashMap};

use crate::error::{CakError, Result};
use crate::field::Field;
use crate::groebner::IdealHandle;
use crate::linalg::{Echelon, SparseVec};
use crate::polyring::{Monomial, Polynomial, RingPresentation};
use crate::resolve::{ChainComplex, PolyMatrix, PresentedModule};

type Vec_<F> = SparseVec<<F as Field>::Elem>;

fn sorted<E>(mut v: Vec<(u32, E)>) -> Vec<(u32, E)> {
    v.sort_by_key(|x| x.0);
    v
}

fn accumulate<F: Field>(field: &F, acc: &mut BTreeMap<u32, F::Elem>, i: u32, c: F::Elem) {
    match acc.get_mut(&i) {
        Some(x) => {
            *x = field.add(x, &c);
            if field.is_zero(x) {
                acc.remove(&i);
            }
        }
        None => {
            if !field.is_zero(&c) {
                acc.insert(i, c);
            }
        }
    }
}

/// `S/J` with `J` homogeneous and `S/J` finite-dimensional.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra<F: Field> {
    ring: RingPresentation<F>,
    basis: Vec<Monomial>,
    degrees: Vec<i64>,
    index: HashMap<Monomial, u32>,
    /// `table[a][b]` is the product of basis elements `a` and `b`.
    table: Vec<Vec<Vec_<F>>>,
    /// `var_mult[v][b]` is `x_v` times basis element `b`.
    var_mult: Vec<Vec<Vec_<F>>>,
    jideal: IdealHandle<F>,
}

impl<F: Field> FiniteAlgebra<F> {
    pub fn new(ring: &RingPresentation<F>) -> Result<Self> {
        let jideal = IdealHandle::new(ring, Vec::new())?;
        let mut basis = match jideal.standard_monomials() {
            Ok(b) => b,
            Err(CakError::NotFiniteDimensional(v)) => {
                return Err(CakError::NotArtinian(format!("`{v}` is not nilpotent")));
            }
            Err(e) => return Err(e),
        };
        if basis.is_empty() {
            return Err(CakError::InvalidRing("the relations generate the unit ideal".into()));
        }
        let s = ring.ambient();
        basis.sort_by(|a, b| s.monomial_degree(a).cmp(&s.monomial_degree(b)).then_with(|| b.exps().cmp(a.exps())));
        let degrees = basis.iter().map(|m| s.monomial_degree(m) as i64).collect();
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let mut alg = FiniteAlgebra { ring: ring.clone(), basis, degrees, index, table: Vec::new(), var_mult: Vec::new(), jideal };
        let n = alg.basis.len();
        let mut var_mult = Vec::with_capacity(s.nvars());
        for v in 0..s.nvars() {
            let x = Monomial::var(s.nvars(), v, 1);
            let row = (0..n).map(|b| alg.reduce_monomial(&x.mul(&alg.basis[b]))).collect::<Result<Vec<_>>>()?;
            var_mult.push(row);
        }
        alg.var_mult = var_mult;
        let mut table = Vec::with_capacity(n);
        for a in 0..n {
            let row = (0..n).map(|b| alg.reduce_monomial(&alg.basis[a].mul(&alg.basis[b]))).collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        alg.table = table;
        Ok(alg)
    }

    fn reduce_monomial(&self, m: &Monomial) -> Result<Vec_<F>> {
        if let Some(&i) = self.index.get(m) {
            return Ok(vec![(i, self.field().one())]);
        }
        self.element(&self.ring.ambient().monomial(m.clone()))
    }

    pub fn ring(&self) -> &RingPresentation<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Standard monomials, by increasing degree.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Coordinates of the class of `p`.
    pub fn element(&self, p: &Polynomial<F>) -> Result<Vec_<F>> {
        let nf = self.jideal.normal_form(p)?;
        Ok(sorted(nf.terms().iter().map(|(m, c)| (self.index[m], c.clone())).collect()))
    }

    pub fn to_poly(&self, v: &[(u32, F::Elem)]) -> Polynomial<F> {
        self.ring.ambient().from_terms(v.iter().map(|(i, c)| (self.basis[*i as usize].clone(), c.clone())))
    }

    pub fn mul(&self, a: &[(u32, F::Elem)], b: &[(u32, F::Elem)]) -> Vec_<F> {
        let f = self.field();
        let mut acc = BTreeMap::new();
        for (i, x) in a {
            for (j, y) in b {
                let xy = f.mul(x, y);
                for (k, z) in &self.table[*i as usize][*j as usize] {
                    accumulate(f, &mut acc, *k, f.mul(&xy, z));
                }
            }
        }
        acc.into_iter().collect()
    }

    /// Basis element `c` times a vector of the free module `A^p`, whose
    /// coordinate `g·dim + b` is basis element `b` in component `g`.
    pub fn mul_free(&self, c: u32, v: &[(u32, F::Elem)]) -> Vec_<F> {
        let f = self.field();
        let n = self.dim() as u32;
        let mut acc = BTreeMap::new();
        for (idx, x) in v {
            let (g, b) = (idx / n, idx % n);
            for (k, z) in &self.table[c as usize][b as usize] {
                accumulate(f, &mut acc, g * n + k, f.mul(x, z));
            }
        }
        acc.into_iter().collect()
    }

    /// `x_var` times a vector of `A^p`.
    pub fn var_free(&self, var: usize, v: &[(u32, F::Elem)]) -> Vec_<F> {
        let f = self.field();
        let n = self.dim() as u32;
        let mut acc = BTreeMap::new();
        for (idx, x) in v {
            let (g, b) = (idx / n, idx % n);
            for (k, z) in &self.var_mult[var][b as usize] {
                accumulate(f, &mut acc, g * n + k, f.mul(x, z));
            }
        }
        acc.into_iter().collect()
    }

    /// Column of polynomials as a vector of `A^p`.
    pub fn column(&self, col: &[Polynomial<F>]) -> Result<Vec_<F>> {
        let n = self.dim() as u32;
        let mut out = Vec::new();
        for (g, p) in col.iter().enumerate() {
            out.extend(self.element(p)?.into_iter().map(|(i, c)| (g as u32 * n + i, c)));
        }
        Ok(out)
    }

    pub fn column_to_polys(&self, rank: usize, v: &[(u32, F::Elem)]) -> Vec<Polynomial<F>> {
        let n = self.dim() as u32;
        let mut parts: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); rank];
        for (idx, c) in v {
            parts[(idx / n) as usize].push((idx % n, c.clone()));
        }
        parts.iter().map(|p| self.to_poly(p)).collect()
    }

    /// Dimension of the annihilator of the maximal ideal.
    pub fn socle_dim(&self) -> usize {
        let n = self.dim();
        let nv = self.var_mult.len() as u32;
        let images: Vec<Vec_<F>> = (0..n)
            .map(|b| {
                let mut v = Vec::new();
                for (var, m) in self.var_mult.iter().enumerate() {
                    v.extend(m[b].iter().map(|(k, c)| (var as u32 + nv * k, c.clone())));
                }
                sorted(v)
            })
            .collect();
        crate::linalg::kernel(self.field(), &images).len()
    }
}

/// A module `A^p / U` over a [`FiniteAlgebra`], kept as a vector space with
/// the coordinates of `A^p` that are not pivots of `U` as basis.
pub struct FiniteModule<F: Field> {
    twists: Vec<i64>,
    ech: Echelon<F>,
    coords: Vec<u32>,
    pos: HashMap<u32, u32>,
    degrees: Vec<i64>,
    /// `act[c][b]`: basis monomial `c` of the algebra on basis element `b`
    act: Vec<Vec<Vec_<F>>>,
}

impl<F: Field> FiniteModule<F> {
    pub fn new(alg: &FiniteAlgebra<F>, m: &PresentedModule<F>) -> Result<Self> {
        if m.ring() != alg.ring() {
            return Err(CakError::RingMismatch);
        }
        let n = alg.dim() as u32;
        let twists = m.ambient().twists().to_vec();
        let mut ech = Echelon::new(alg.field().clone());
        for col in m.relations().columns() {
            let v = alg.column(&col)?;
            for c in 0..n {
                let _ = ech.insert(alg.mul_free(c, &v));
            }
        }
        let total = twists.len() as u32 * n;
        let coords: Vec<u32> = (0..total).filter(|&i| !ech.is_pivot(i)).collect();
        let pos: HashMap<u32, u32> = coords.iter().enumerate().map(|(k, &i)| (i, k as u32)).collect();
        let degrees = coords.iter().map(|&i| twists[(i / n) as usize] + alg.degrees()[(i % n) as usize]).collect();
        let mut module = FiniteModule { twists, ech, coords, pos, degrees, act: Vec::new() };
        let act = (0..n)
            .map(|c| module.coords.iter().map(|&i| module.project(alg.mul_free(c, &[(i, alg.field().one())]))).collect())
            .collect();
        module.act = act;
        Ok(module)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    /// Class of a vector of `A^p` in module coordinates.
    pub fn project(&self, v: Vec_<F>) -> Vec_<F> {
        self.ech.reduce(v).into_iter().map(|(i, c)| (self.pos[&i], c)).collect()
    }

    /// Algebra element `a` times module element `x`.
    pub fn act(&self, field: &F, a: &[(u32, F::Elem)], x: &[(u32, F::Elem)]) -> Vec_<F> {
        let mut acc = BTreeMap::new();
        for (c, ac) in a {
            for (b, xb) in x {
                let s = field.mul(ac, xb);
                for (k, z) in &self.act[*c as usize][*b as usize] {
                    accumulate(field, &mut acc, *k, field.mul(&s, z));
                }
            }
        }
        acc.into_iter().collect()
    }

    fn act_basis(&self, a: &[(u32, F::Elem)], b: u32, field: &F) -> Vec_<F> {
        self.act(field, a, &[(b, field.one())])
    }
}

/// Minimal generators of the kernel of a graded linear map defined on the
/// free module `⊕ A(−twists)`, together with their degrees.
///
/// `image` gives the image of each coordinate. The kernel is computed one
/// degree at a time; in degree `t` the new generators are the kernel vectors
/// independent of `(𝔪K)_t = Σ_v x_v·K_{t−w_v}`.
fn min_kernel_gens<F: Field>(
    alg: &FiniteAlgebra<F>,
    twists: &[i64],
    mut image: impl FnMut(u32) -> Vec_<F>,
) -> (Vec<Vec_<F>>, Vec<i64>) {
    let n = alg.dim() as u32;
    let field = alg.field();
    let weights = alg.ring().ambient().weights().to_vec();
    let mut by_degree: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
    for (g, &tw) in twists.iter().enumerate() {
        for b in 0..n {
            by_degree.entry(tw + alg.degrees()[b as usize]).or_default().push(g as u32 * n + b);
        }
    }
    let mut kernels: HashMap<i64, Vec<Vec_<F>>> = HashMap::new();
    let mut gens = Vec::new();
    let mut degs = Vec::new();
    for (&t, coords) in &by_degree {
        let images: Vec<Vec_<F>> = coords.iter().map(|&i| image(i)).collect();
        let ker: Vec<Vec_<F>> = crate::linalg::kernel(field, &images)
            .into_iter()
            .map(|k| sorted(k.into_iter().map(|(l, c)| (coords[l as usize], c)).collect()))
            .collect();
        if ker.is_empty() {
            continue;
        }
        let mut ech = Echelon::new(field.clone());
        for (v, &w) in weights.iter().enumerate() {
            if let Some(lower) = kernels.get(&(t - w as i64)) {
                for k in lower {
                    let _ = ech.insert(alg.var_free(v, k));
                }
            }
        }
        for k in &ker {
            if ech.insert(k.clone()).is_ok() {
                gens.push(k.clone());
                degs.push(t);
            }
        }
        kernels.insert(t, ker);
    }
    (gens, degs)
}

/// Minimal free resolution of a module over a [`FiniteAlgebra`], extended on
/// demand. `maps[i−1][j]` is column `j` of `d_i` as a vector of `F_{i−1}`.
pub struct ArtinianResolution<'a, F: Field> {
    alg: &'a FiniteAlgebra<F>,
    twists: Vec<Vec<i64>>,
    maps: Vec<Vec<Vec_<F>>>,
    complete: bool,
}

impl<'a, F: Field> ArtinianResolution<'a, F> {
    pub fn new(alg: &'a FiniteAlgebra<F>, m: &PresentedModule<F>) -> Result<Self> {
        let module = FiniteModule::new(alg, m)?;
        let n = alg.dim() as u32;
        let field = alg.field();
        // minimal generators: a basis of N/𝔪N among the generators of A^p
        let mut ech = Echelon::new(field.clone());
        for b in 0..module.dim() as u32 {
            for var in &alg.var_mult {
                let _ = ech.insert(module.act_basis(&var[0], b, field));
            }
        }
        let mut order: Vec<usize> = (0..module.twists.len()).collect();
        order.sort_by_key(|&g| (module.twists[g], g));
        let mut kept = Vec::new();
        for g in order {
            if ech.insert(module.project(vec![(g as u32 * n, field.one())])).is_ok() {
                kept.push(g);
            }
        }
        let f0: Vec<i64> = kept.iter().map(|&g| module.twists[g]).collect();
        let (cols, degs) = min_kernel_gens(alg, &f0, |i| {
            let (j, c) = (i / n, i % n);
            module.project(vec![(kept[j as usize] as u32 * n + c, field.one())])
        });
        let complete = cols.is_empty();
        Ok(ArtinianResolution { alg, twists: vec![f0, degs], maps: vec![cols], complete })
    }

    pub fn algebra(&self) -> &FiniteAlgebra<F> {
        self.alg
    }

    /// Computes through `F_len` (or until the resolution stops).
    pub fn extend_to(&mut self, len: usize) {
        let n = self.alg.dim() as u32;
        while !self.complete && self.twists.len() <= len {
            let i = self.maps.len();
            let cols = &self.maps[i - 1];
            let alg = self.alg;
            let (k, d) = min_kernel_gens(alg, &self.twists[i], |idx| alg.mul_free(idx % n, &cols[(idx / n) as usize]));
            if k.is_empty() {
                self.complete = true;
            } else {
                self.maps.push(k);
                self.twists.push(d);
            }
        }
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Betti number `β_i`, computing the resolution as far as needed.
    pub fn rank(&mut self, i: usize) -> usize {
        self.extend_to(i);
        self.twists.get(i).map_or(0, |t| t.len())
    }

    pub fn twists(&mut self, i: usize) -> Vec<i64> {
        self.extend_to(i);
        self.twists.get(i).cloned().unwrap_or_default()
    }

    /// Entries of column `j` of `d_i`, grouped by row.
    fn entries(&self, i: usize, j: usize) -> BTreeMap<u32, Vec_<F>> {
        let n = self.alg.dim() as u32;
        let mut out: BTreeMap<u32, Vec_<F>> = BTreeMap::new();
        for (idx, c) in &self.maps[i - 1][j] {
            out.entry(idx / n).or_default().push((idx % n, c.clone()));
        }
        out
    }

    /// Rank of `Hom(d_i, N): Hom(F_{i−1}, N) → Hom(F_i, N)`.
    pub fn hom_rank(&mut self, i: usize, nm: &FiniteModule<F>) -> usize {
        self.extend_to(i);
        if i == 0 || i >= self.twists.len() {
            return 0;
        }
        let field = self.alg.field().clone();
        let dn = nm.dim() as u32;
        let src = self.twists[i - 1].len();
        let mut images: Vec<BTreeMap<u32, F::Elem>> = vec![BTreeMap::new(); src * dn as usize];
        for j in 0..self.twists[i].len() {
            for (k, a) in self.entries(i, j) {
                for b in 0..dn {
                    for (b2, c) in nm.act_basis(&a, b, &field) {
                        accumulate(&field, &mut images[(k * dn + b) as usize], j as u32 * dn + b2, c);
                    }
                }
            }
        }
        let mut groups: BTreeMap<i64, Echelon<F>> = BTreeMap::new();
        for (idx, img) in images.into_iter().enumerate() {
            if img.is_empty() {
                continue;
            }
            let (k, b) = (idx / dn as usize, idx % dn as usize);
            let deg = nm.degrees()[b] - self.twists[i - 1][k];
            let _ = groups.entry(deg).or_insert_with(|| Echelon::new(field.clone())).insert(img.into_iter().collect());
        }
        groups.values().map(|e| e.rank()).sum()
    }

    /// Rank of `d_i ⊗ N: F_i ⊗ N → F_{i−1} ⊗ N`.
    pub fn tensor_rank(&mut self, i: usize, nm: &FiniteModule<F>) -> usize {
        self.extend_to(i);
        if i == 0 || i >= self.twists.len() {
            return 0;
        }
        let field = self.alg.field().clone();
        let dn = nm.dim() as u32;
        let mut groups: BTreeMap<i64, Echelon<F>> = BTreeMap::new();
        for j in 0..self.twists[i].len() {
            let entries = self.entries(i, j);
            for b in 0..dn {
                let mut acc = BTreeMap::new();
                for (k, a) in &entries {
                    for (b2, c) in nm.act_basis(a, b, &field) {
                        accumulate(&field, &mut acc, k * dn + b2, c);
                    }
                }
                if acc.is_empty() {
                    continue;
                }
                let deg = self.twists[i][j] + nm.degrees()[b as usize];
                let _ = groups.entry(deg).or_insert_with(|| Echelon::new(field.clone())).insert(acc.into_iter().collect());
            }
        }
        groups.values().map(|e| e.rank()).sum()
    }

    /// `dim Ext^i(M, N)`.
    pub fn ext_dim(&mut self, i: usize, nm: &FiniteModule<F>) -> usize {
        let hom = self.rank(i) * nm.dim();
        hom - self.hom_rank(i + 1, nm) - self.hom_rank(i, nm)
    }

    /// `dim Tor_i(M, N)`.
    pub fn tor_dim(&mut self, i: usize, nm: &FiniteModule<F>) -> usize {
        let t = self.rank(i) * nm.dim();
        t - self.tensor_rank(i, nm) - self.tensor_rank(i + 1, nm)
    }

    /// The part computed so far as a complex over the ring.
    pub fn to_complex(&self) -> Result<ChainComplex<F>> {
        let ring = self.alg.ring();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (i, cols) in self.maps.iter().enumerate() {
            let rank = self.twists[i].len();
            let polys: Vec<Vec<Polynomial<F>>> = cols.iter().map(|v| self.alg.column_to_polys(rank, v)).collect();
            maps.push(PolyMatrix::from_columns(ring.ambient(), rank, polys)?);
        }
        let mut c = ChainComplex::new(ring, self.twists.clone(), maps)?.trimmed();
        c.set_complete(self.complete);
        Ok(c)
    }
}
