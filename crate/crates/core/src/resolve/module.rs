use serde::{Deserialize, Serialize};

use super::matrix::PolyMatrix;
use crate::error::{CakError, Result};
use crate::field::Field;
use crate::groebner::engine::{self, Engine, ModuleOrder, Term, Vector};
use crate::groebner::IdealHandle;
use crate::polyring::{Monomial, PolyRing, Polynomial, RingPresentation};

/// `⊕ R(−a_i)`: basis element `i` sits in degree `twists[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFreeModule<F: Field> {
    ring: RingPresentation<F>,
    twists: Vec<i64>,
}

impl<F: Field> GradedFreeModule<F> {
    pub fn new(ring: &RingPresentation<F>, twists: Vec<i64>) -> Self {
        GradedFreeModule { ring: ring.clone(), twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn ring(&self) -> &RingPresentation<F> {
        &self.ring
    }
}

/// Cokernel of a graded map `⊕R(−b_j) → ⊕R(−a_i)`.
#[derive(Clone, Debug)]
pub struct PresentedModule<F: Field> {
    ambient: GradedFreeModule<F>,
    relations: PolyMatrix<F>,
    relation_degrees: Vec<i64>,
}

impl<F: Field> PresentedModule<F> {
    /// Checks homogeneity; zero columns are dropped.
    pub fn new(ring: &RingPresentation<F>, twists: Vec<i64>, relations: PolyMatrix<F>) -> Result<Self> {
        if relations.ring() != ring.ambient() {
            return Err(CakError::RingMismatch);
        }
        if relations.rows() != twists.len() && relations.cols() > 0 {
            return Err(CakError::Shape(format!(
                "relation matrix has {} rows but the ambient module has rank {}",
                relations.rows(),
                twists.len()
            )));
        }
        let relations = if relations.rows() != twists.len() {
            PolyMatrix::zero(ring.ambient(), twists.len(), 0)
        } else {
            relations
        };
        let degs = relations.infer_column_degrees(&twists)?;
        let keep: Vec<usize> = (0..degs.len()).filter(|&j| degs[j].is_some()).collect();
        let relations = relations.select_cols(&keep);
        let relation_degrees = keep.iter().map(|&j| degs[j].unwrap()).collect();
        Ok(PresentedModule { ambient: GradedFreeModule::new(ring, twists), relations, relation_degrees })
    }

    pub fn free(ring: &RingPresentation<F>, twists: Vec<i64>) -> Self {
        let n = twists.len();
        PresentedModule {
            ambient: GradedFreeModule::new(ring, twists),
            relations: PolyMatrix::zero(ring.ambient(), n, 0),
            relation_degrees: Vec::new(),
        }
    }

    /// `R/I` for an ideal given by generators.
    pub fn cyclic(ring: &RingPresentation<F>, gens: &[Polynomial<F>]) -> Result<Self> {
        let m = PolyMatrix::from_rows(ring.ambient(), vec![gens.to_vec()])?;
        let m = if gens.is_empty() { PolyMatrix::zero(ring.ambient(), 1, 0) } else { m };
        PresentedModule::new(ring, vec![0], m)
    }

    /// The residue field `R/𝔪`.
    pub fn residue_field(ring: &RingPresentation<F>) -> Self {
        PresentedModule::cyclic(ring, &ring.ambient().vars()).expect("variables are homogeneous")
    }

    pub fn ring(&self) -> &RingPresentation<F> {
        self.ambient.ring()
    }

    pub fn ambient(&self) -> &GradedFreeModule<F> {
        &self.ambient
    }

    pub fn relations(&self) -> &PolyMatrix<F> {
        &self.relations
    }

    pub fn relation_degrees(&self) -> &[i64] {
        &self.relation_degrees
    }

    pub fn to_file(&self) -> ModuleFile {
        ModuleFile {
            ambient_twists: self.ambient.twists.clone(),
            relations: (0..self.relations.rows())
                .map(|i| self.relations.row(i).iter().map(|p| p.to_string()).collect())
                .collect(),
        }
    }
}

/// JSON module file: `{"ambient_twists": [...], "relations": [[...], ...]}`,
/// the relation matrix given row by row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub ambient_twists: Vec<i64>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

impl ModuleFile {
    pub fn build<F: Field>(&self, ring: &RingPresentation<F>) -> Result<PresentedModule<F>> {
        let s = ring.ambient();
        let m = if self.relations.is_empty() || self.relations.iter().all(|r| r.is_empty()) {
            PolyMatrix::zero(s, self.ambient_twists.len(), 0)
        } else {
            let rows = self
                .relations
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, e)| {
                            s.parse(e).map_err(|err| CakError::InvalidRing(format!("/relations/{i}/{j}: {err}")))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            PolyMatrix::from_rows(s, rows)?
        };
        PresentedModule::new(ring, self.ambient_twists.clone(), m)
    }
}

pub(crate) fn column_to_vector<F: Field>(col: &[Polynomial<F>], order: &ModuleOrder) -> Vector<F::Elem> {
    let mut v = Vec::new();
    for (i, p) in col.iter().enumerate() {
        let w = p.ring().weights();
        for (m, c) in p.terms() {
            v.push(Term { comp: i as u32, mono: m.clone(), deg: m.weighted_degree(w), coef: c.clone() });
        }
    }
    order.sort(&mut v);
    v
}

pub(crate) fn vector_to_column<F: Field>(ring: &PolyRing<F>, rank: usize, v: &[Term<F::Elem>], offset: u32) -> Vec<Polynomial<F>> {
    let mut parts: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); rank];
    for t in v {
        parts[(t.comp - offset) as usize].push((t.mono.clone(), t.coef.clone()));
    }
    parts.into_iter().map(|p| ring.from_terms(p)).collect()
}

fn vector_degree<E>(order: &ModuleOrder, v: &[Term<E>]) -> i64 {
    order.degree(v[0].comp, v[0].deg)
}

/// Generators `f·e_i` of `J·R^rank` for the ring relations `f`.
fn relation_vectors<F: Field>(ring: &RingPresentation<F>, rank: usize, offset: u32, order: &ModuleOrder) -> Vec<Vector<F::Elem>> {
    let mut out = Vec::new();
    for i in 0..rank {
        for f in ring.relations() {
            let mut v = column_to_vector(std::slice::from_ref(f), order);
            for t in v.iter_mut() {
                t.comp = i as u32 + offset;
            }
            order.sort(&mut v);
            out.push(v);
        }
    }
    out
}

/// Reduced Gröbner basis of the submodule of `S^r` generated by `cols`
/// together with `J·S^r`.
pub fn submodule_gb<F: Field>(
    ring: &RingPresentation<F>,
    twists: &[i64],
    cols: &[Vec<Polynomial<F>>],
    budget: u64,
) -> Result<Vec<Vector<F::Elem>>> {
    let order = ModuleOrder::module(ring.ambient().weights(), twists.to_vec());
    let mut gens: Vec<Vector<F::Elem>> = cols.iter().map(|c| column_to_vector(c, &order)).collect();
    gens.extend(relation_vectors(ring, twists.len(), 0, &order));
    engine::groebner(ring.field(), &order, gens, budget)
}

/// Equality of two submodules of `R^r` (compared through their lifts).
pub fn submodule_equal<F: Field>(
    ring: &RingPresentation<F>,
    twists: &[i64],
    a: &[Vec<Polynomial<F>>],
    b: &[Vec<Polynomial<F>>],
    budget: u64,
) -> Result<bool> {
    Ok(submodule_gb(ring, twists, a, budget)? == submodule_gb(ring, twists, b, budget)?)
}

/// Lead monomials of a submodule GB, grouped by component.
pub fn lead_monomials_by_component<E>(gb: &[Vector<E>], rank: usize) -> Vec<Vec<Monomial>> {
    let mut out = vec![Vec::new(); rank];
    for v in gb {
        out[v[0].comp as usize].push(v[0].mono.clone());
    }
    out
}

/// Minimal homogeneous generators of the image of `cols` in `R^r`
/// (i.e. modulo `J·S^r`), with their degrees. Zero columns are skipped.
pub fn minimal_generators<F: Field>(
    ring: &RingPresentation<F>,
    twists: &[i64],
    cols: &[Vec<Polynomial<F>>],
    budget: u64,
) -> Result<(Vec<Vec<Polynomial<F>>>, Vec<i64>)> {
    let order = ModuleOrder::module(ring.ambient().weights(), twists.to_vec());
    let mut cands: Vec<(i64, usize, Vector<F::Elem>)> = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let v = column_to_vector(c, &order);
        if v.is_empty() {
            continue;
        }
        let d = vector_degree(&order, &v);
        if v.iter().any(|t| order.degree(t.comp, t.deg) != d) {
            return Err(CakError::NotHomogeneous(format!("generator {j}")));
        }
        cands.push((d, j, v));
    }
    cands.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut eng = Engine::new(ring.field().clone(), order.clone(), budget);
    for v in relation_vectors(ring, twists.len(), 0, &order) {
        eng.add(v);
    }
    let jideal = IdealHandle::new(ring, Vec::new())?;
    let mut kept = Vec::new();
    let mut degs = Vec::new();
    for (d, j, v) in cands {
        eng.complete(Some(d))?;
        let r = eng.reduce(v, false);
        if !r.is_empty() {
            eng.add(r);
            let col = cols[j].iter().map(|p| jideal.normal_form(p)).collect::<Result<Vec<_>>>()?;
            kept.push(col);
            degs.push(d);
        }
    }
    Ok((kept, degs))
}

/// Minimal generators of `ker(d) ⊆ R^cols` for a graded map
/// `d: ⊕R(−col_twists) → ⊕R(−row_twists)`, with their degrees.
///
/// Works in `S`: a block order on `S^rows ⊕ S^cols` with the target block
/// first eliminates the target from `(d_j, e_j)` and `(f·ε_i, 0)`, leaving
/// generators of `{a : d·a ∈ J·S^rows}`.
pub fn kernel<F: Field>(
    ring: &RingPresentation<F>,
    d: &PolyMatrix<F>,
    row_twists: &[i64],
    col_twists: &[i64],
    budget: u64,
) -> Result<(Vec<Vec<Polynomial<F>>>, Vec<i64>)> {
    let (r, c) = (d.rows(), d.cols());
    if row_twists.len() != r || col_twists.len() != c {
        return Err(CakError::Shape("twists do not match the matrix".into()));
    }
    if c == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut twists = row_twists.to_vec();
    twists.extend_from_slice(col_twists);
    let mut order = ModuleOrder::module(ring.ambient().weights(), twists);
    for b in order.blocks.iter_mut().skip(r) {
        *b = 1;
    }
    let mut gens = Vec::with_capacity(c + r * ring.relations().len());
    for j in 0..c {
        let mut col = d.column(j);
        let mut e = vec![ring.ambient().zero(); c];
        e[j] = ring.ambient().one();
        col.extend(e);
        gens.push(column_to_vector(&col, &order));
    }
    gens.extend(relation_vectors(ring, r, 0, &order));
    let gb = engine::groebner(ring.field(), &order, gens, budget)?;
    let syz: Vec<Vec<Polynomial<F>>> = gb
        .iter()
        .filter(|v| v[0].comp as usize >= r)
        .map(|v| vector_to_column(ring.ambient(), c, v, r as u32))
        .collect();
    minimal_generators(ring, col_twists, &syz, budget)
}

/// `syzygies` for a matrix over a polynomial ring with degree-0 rows.
pub fn syzygies<F: Field>(ring: &RingPresentation<F>, m: &PolyMatrix<F>, budget: u64) -> Result<PolyMatrix<F>> {
    let rows = vec![0; m.rows()];
    let cols: Vec<i64> = m.infer_column_degrees(&rows)?.into_iter().map(|d| d.unwrap_or(0)).collect();
    let (k, _) = kernel(ring, m, &rows, &cols, budget)?;
    PolyMatrix::from_columns(ring.ambient(), m.cols(), k)
}
