//! Homological algebra over quotient rings `R = S/J`: bounded resolutions,
//! Ext and Tor dimensions, freeness, socle, type and embedding dimension.

mod algebra;

pub use algebra::{ArtinianResolution, FiniteAlgebra, FiniteModule};

use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CakError, Result};
use crate::field::Field;
use crate::groebner::{default_budget, IdealHandle};
use crate::linalg;
use crate::polyring::{Polynomial, RingPresentation};
use crate::resolve::{is_regular_sequence, minimal_presentation, resolve_with_budget, ChainComplex, PolyMatrix, PresentedModule};

/// Default homological bound for Ext and Tor.
pub const DEFAULT_BOUND: usize = 10;

/// `S/J` with `J ≠ 0, (1)`; the finite-dimensional model is built on first use.
#[derive(Clone, Debug)]
pub struct QuotientRing<F: Field> {
    presentation: RingPresentation<F>,
    algebra: Arc<OnceLock<Result<Arc<FiniteAlgebra<F>>>>>,
}

impl<F: Field> QuotientRing<F> {
    pub fn new(presentation: RingPresentation<F>) -> Result<Self> {
        if presentation.relations().is_empty() {
            return Err(CakError::InvalidRing("a quotient ring needs at least one relation".into()));
        }
        if IdealHandle::new(&presentation, Vec::new())?.is_unit()? {
            return Err(CakError::InvalidRing("the relations generate the unit ideal".into()));
        }
        Ok(QuotientRing { presentation, algebra: Arc::new(OnceLock::new()) })
    }

    pub fn presentation(&self) -> &RingPresentation<F> {
        &self.presentation
    }

    /// Standard-monomial model; fails with `NotArtinian` for positive dimension.
    pub fn algebra(&self) -> Result<Arc<FiniteAlgebra<F>>> {
        self.algebra.get_or_init(|| FiniteAlgebra::new(&self.presentation).map(Arc::new)).clone()
    }

    pub fn is_artinian(&self) -> bool {
        self.algebra().is_ok()
    }

    /// `R/(elems)`.
    pub fn quotient_by(&self, elems: &[Polynomial<F>]) -> Result<QuotientRing<F>> {
        QuotientRing::new(self.presentation.with_relations(elems)?)
    }
}

/// Dimensions of `Ext^i` (or `Tor_i`) for `i = 1..=bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtProfile {
    pub bound: usize,
    pub dims: Vec<usize>,
}

impl ExtProfile {
    pub fn vanishes(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}

/// First `steps` terms of a minimal free resolution of `coker(M)` over `R`,
/// computed by lifting to the ambient ring (rows in degree 0).
pub fn syzygy_over_quotient<F: Field>(r: &QuotientRing<F>, m: &PolyMatrix<F>, steps: usize) -> Result<ChainComplex<F>> {
    if steps == 0 {
        return Err(CakError::Precondition("steps must be at least 1".into()));
    }
    let ring = r.presentation();
    let rows = vec![0; m.rows()];
    let module = PresentedModule::new(ring, rows, m.clone())?;
    resolve_with_budget(&module, Some(steps), default_budget())
}

/// Same resolution computed by linear algebra over the Artinian model.
pub fn artinian_resolution<F: Field>(r: &QuotientRing<F>, m: &PresentedModule<F>, steps: usize) -> Result<ChainComplex<F>> {
    let alg = r.algebra()?;
    let mut res = ArtinianResolution::new(&alg, m)?;
    res.extend_to(steps);
    let c = res.to_complex()?;
    if c.top() > steps {
        let mods = c.modules()[..=steps].to_vec();
        let maps = c.differentials()[..steps].to_vec();
        return ChainComplex::new(c.ring(), mods, maps);
    }
    Ok(c)
}

fn check_ring<F: Field>(r: &QuotientRing<F>, m: &PresentedModule<F>) -> Result<()> {
    if m.ring() != r.presentation() {
        return Err(CakError::RingMismatch);
    }
    Ok(())
}

/// `dim Ext^i_R(M, N)` for `i = 1..=bound`.
pub fn ext_dims<F: Field>(r: &QuotientRing<F>, m: &PresentedModule<F>, n: &PresentedModule<F>, bound: usize) -> Result<ExtProfile> {
    check_ring(r, m)?;
    check_ring(r, n)?;
    let alg = r.algebra()?;
    let nm = FiniteModule::new(&alg, n)?;
    let mut res = ArtinianResolution::new(&alg, m)?;
    let dims = (1..=bound).map(|i| res.ext_dim(i, &nm)).collect();
    Ok(ExtProfile { bound, dims })
}

/// `dim Tor_i^R(M, N)` for `i = 1..=bound`.
pub fn tor_dims<F: Field>(r: &QuotientRing<F>, m: &PresentedModule<F>, n: &PresentedModule<F>, bound: usize) -> Result<ExtProfile> {
    check_ring(r, m)?;
    check_ring(r, n)?;
    let alg = r.algebra()?;
    let nm = FiniteModule::new(&alg, n)?;
    let mut res = ArtinianResolution::new(&alg, m)?;
    let dims = (1..=bound).map(|i| res.tor_dim(i, &nm)).collect();
    Ok(ExtProfile { bound, dims })
}

/// `dim Hom_R(M, N)`.
pub fn hom_dim<F: Field>(r: &QuotientRing<F>, m: &PresentedModule<F>, n: &PresentedModule<F>) -> Result<usize> {
    let alg = r.algebra()?;
    let nm = FiniteModule::new(&alg, n)?;
    Ok(ArtinianResolution::new(&alg, m)?.ext_dim(0, &nm))
}

/// `dim M ⊗_R N`.
pub fn tensor_dim<F: Field>(r: &QuotientRing<F>, m: &PresentedModule<F>, n: &PresentedModule<F>) -> Result<usize> {
    let alg = r.algebra()?;
    let nm = FiniteModule::new(&alg, n)?;
    Ok(ArtinianResolution::new(&alg, m)?.tor_dim(0, &nm))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeVerdict {
    pub free: bool,
    /// number of minimal generators; the rank when free
    pub generators: usize,
    pub rank: Option<usize>,
}

/// Free iff the minimal presentation has no relations.
pub fn is_free_module<F: Field>(m: &PresentedModule<F>) -> Result<FreeVerdict> {
    let p = minimal_presentation(m, default_budget())?;
    let generators = p.rank(0);
    let free = p.rank(1) == 0;
    Ok(FreeVerdict { free, generators, rank: free.then_some(generators) })
}

pub fn socle_dim<F: Field>(r: &QuotientRing<F>) -> Result<usize> {
    Ok(r.algebra()?.socle_dim())
}

/// Cohen–Macaulay type: socle dimension of `R/(params)`.
pub fn cm_type<F: Field>(r: &QuotientRing<F>, params: &[Polynomial<F>]) -> Result<usize> {
    let cut = r.quotient_by(params)?;
    let alg = match cut.algebra() {
        Ok(a) => a,
        Err(CakError::NotArtinian(msg)) => {
            return Err(CakError::Precondition(format!("parameters do not cut the ring down to finite length: {msg}")));
        }
        Err(e) => return Err(e),
    };
    if !is_regular_sequence(r.presentation(), params)? {
        return Err(CakError::NotRegularSequence("the parameters are not a regular sequence".into()));
    }
    Ok(alg.socle_dim())
}

/// `dim 𝔪/𝔪²`: variables minus the rank of the linear parts of the relations.
pub fn embedding_dim<F: Field>(r: &QuotientRing<F>) -> Result<usize> {
    let ring = r.presentation();
    let n = ring.ambient().nvars();
    let rows = ring.relations().iter().map(|p| p.linear_part().into_iter().map(|(i, c)| (i as u32, c)).collect());
    Ok(n - linalg::rank(ring.field(), rows))
}

/// Random graded module over an Artinian `R`: `gens` generators in degrees
/// `0` or the smallest weight, and `rels` relations of positive degree.
pub fn random_module<F: Field, G: Rng + ?Sized>(r: &QuotientRing<F>, rng: &mut G, gens: usize, rels: usize) -> Result<PresentedModule<F>> {
    let alg = r.algebra()?;
    let ring = r.presentation();
    let s = ring.ambient();
    let field = ring.field();
    let wmin = *s.weights().iter().min().unwrap_or(&1) as i64;
    let twists: Vec<i64> = (0..gens).map(|_| if rng.gen_bool(0.3) { wmin } else { 0 }).collect();
    let positive: Vec<usize> = (0..alg.dim()).filter(|&c| alg.degrees()[c] > 0).collect();
    let mut cols = Vec::new();
    for _ in 0..rels {
        let g0 = rng.gen_range(0..gens);
        let Some(&c0) = positive.choose(rng) else { break };
        let d = twists[g0] + alg.degrees()[c0];
        let mut col = Vec::with_capacity(gens);
        for (g, &tw) in twists.iter().enumerate() {
            let mut terms = Vec::new();
            for c in 0..alg.dim() {
                if alg.degrees()[c] + tw != d {
                    continue;
                }
                let coef = if g == g0 && c == c0 {
                    field.from_i64(*[1i64, 2, -1, 3].choose(rng).unwrap())
                } else if rng.gen_bool(0.5) {
                    field.random_small(rng, 3)
                } else {
                    continue;
                };
                terms.push((alg.basis()[c].clone(), coef));
            }
            col.push(s.from_terms(terms));
        }
        cols.push(col);
    }
    let m = PolyMatrix::from_columns(s, gens, cols)?;
    PresentedModule::new(ring, twists, m)
}
