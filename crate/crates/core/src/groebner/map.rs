use super::ideal::IdealHandle;
use crate::error::{CakError, Result};
use crate::field::Field;
use crate::polyring::{PolyRing, Polynomial, RingPresentation};

/// Ring homomorphism `source → target` given by the images of the source
/// variables.
#[derive(Clone, Debug)]
pub struct RingMap<F: Field> {
    source: RingPresentation<F>,
    target: RingPresentation<F>,
    images: Vec<Polynomial<F>>,
}

impl<F: Field> RingMap<F> {
    pub fn new(source: RingPresentation<F>, target: RingPresentation<F>, images: Vec<Polynomial<F>>) -> Result<Self> {
        if images.len() != source.ambient().nvars() {
            return Err(CakError::Shape(format!(
                "{} images for {} source variables",
                images.len(),
                source.ambient().nvars()
            )));
        }
        if images.iter().any(|p| p.ring() != target.ambient()) {
            return Err(CakError::RingMismatch);
        }
        Ok(RingMap { source, target, images })
    }

    /// Like [`RingMap::new`], also requiring each image to be homogeneous of
    /// the weight of its variable (or zero).
    pub fn graded(source: RingPresentation<F>, target: RingPresentation<F>, images: Vec<Polynomial<F>>) -> Result<Self> {
        let map = RingMap::new(source, target, images)?;
        for (i, p) in map.images.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let w = map.source.ambient().weights()[i] as u64;
            if p.homogeneous_degree() != Some(w) {
                return Err(CakError::NotHomogeneous(format!(
                    "image `{p}` of `{}` (weight {w})",
                    map.source.ambient().var_names()[i]
                )));
            }
        }
        Ok(map)
    }

    pub fn source(&self) -> &RingPresentation<F> {
        &self.source
    }

    pub fn target(&self) -> &RingPresentation<F> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial<F>] {
        &self.images
    }

    /// Image of a source polynomial (not reduced modulo target relations).
    pub fn apply(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        if p.ring() != self.source.ambient() {
            return Err(CakError::RingMismatch);
        }
        p.compose(self.target.ambient(), &self.images)
    }

    /// Kernel as an ideal of the source ring: eliminate the target variables
    /// from the graph ideal `(x_i − φ(x_i)) + J_target`.
    pub fn kernel(&self) -> Result<IdealHandle<F>> {
        let t = self.target.ambient();
        let s = self.source.ambient();
        let (nt, ns) = (t.nvars(), s.nvars());
        let names: Vec<String> = (0..nt).map(|i| format!("_t{i}")).chain((0..ns).map(|i| format!("_s{i}"))).collect();
        let weights: Vec<u32> = t.weights().iter().chain(s.weights()).copied().collect();
        let big = PolyRing::new(t.field().clone(), &names, &weights)?;
        let tmap: Vec<usize> = (0..nt).collect();
        let mut gens = Vec::with_capacity(ns + self.target.relations().len());
        for (i, img) in self.images.iter().enumerate() {
            gens.push(&big.var(nt + i) - &img.embed(&big, &tmap));
        }
        for r in self.target.relations() {
            gens.push(r.embed(&big, &tmap));
        }
        let graph = IdealHandle::in_poly_ring(&big, gens)?;
        let elim = graph.eliminate(&tmap)?;
        let back: Vec<usize> = (0..ns).collect();
        let kernel_gens = elim.generators().iter().map(|g| g.embed(s, &back)).collect();
        IdealHandle::new(&self.source, kernel_gens)
    }
}

/// Kernel of `φ`, as an ideal of the source.
pub fn ring_map_kernel<F: Field>(phi: &RingMap<F>) -> Result<IdealHandle<F>> {
    phi.kernel()
}
