//! Sparse exact linear algebra: incremental echelon forms, ranks, kernels.

use std::collections::HashMap;

use crate::field::Field;

/// Sparse vector: strictly increasing indices, nonzero values.
pub type SparseVec<E> = Vec<(u32, E)>;

/// `a + c·b`
pub fn axpy<F: Field>(field: &F, a: &[(u32, F::Elem)], c: &F::Elem, b: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(c, &b[j].1)));
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(field: &F, c: &F::Elem, v: &mut SparseVec<F::Elem>) {
    for (_, x) in v.iter_mut() {
        *x = field.mul(c, x);
    }
}

/// Dense to sparse.
pub fn sparsify<F: Field>(field: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(i, x)| (i as u32, x.clone()))
        .collect()
}

struct Row<E> {
    v: SparseVec<E>,
    combo: SparseVec<E>,
}

/// Row echelon form built one vector at a time.
///
/// With tracking enabled every stored row remembers which combination of
/// the inserted vectors produced it, which is what kernel computations need.
pub struct Echelon<F: Field> {
    field: F,
    rows: HashMap<u32, Row<F::Elem>>,
    track: bool,
    inserted: u32,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon { field, rows: HashMap::new(), track: false, inserted: 0 }
    }

    pub fn tracking(field: F) -> Self {
        Echelon { field, rows: HashMap::new(), track: true, inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_pair(&self, mut v: SparseVec<F::Elem>, mut combo: SparseVec<F::Elem>) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let mut k = 0;
        while k < v.len() {
            let idx = v[k].0;
            match self.rows.get(&idx) {
                Some(row) => {
                    let c = self.field.neg(&v[k].1);
                    let tail = axpy(&self.field, &v[k..], &c, &row.v);
                    v.truncate(k);
                    v.extend(tail);
                    if self.track {
                        combo = axpy(&self.field, &combo, &c, &row.combo);
                    }
                }
                None => k += 1,
            }
        }
        (v, combo)
    }

    /// Remainder of `v` modulo the current span (zero iff `v` is in it).
    pub fn reduce(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.reduce_pair(v, Vec::new()).0
    }

    /// True when some stored row has its leading entry at `i`.
    pub fn is_pivot(&self, i: u32) -> bool {
        self.rows.contains_key(&i)
    }

    pub fn contains(&self, v: &[(u32, F::Elem)]) -> bool {
        self.reduce(v.to_vec()).is_empty()
    }

    /// Adds `v` to the span. Returns `Err(combo)` when `v` was dependent:
    /// with tracking, `combo` is a relation among inserted vectors (indexed
    /// by insertion order) that includes the new one with coefficient 1.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> Result<(), SparseVec<F::Elem>> {
        let id = self.inserted;
        self.inserted += 1;
        let combo = if self.track { vec![(id, self.field.one())] } else { Vec::new() };
        let (mut r, mut combo) = self.reduce_pair(v, combo);
        if r.is_empty() {
            return Err(combo);
        }
        let inv = self.field.inv(&r[0].1).expect("nonzero");
        scale(&self.field, &inv, &mut r);
        if self.track {
            scale(&self.field, &inv, &mut combo);
        }
        self.rows.insert(r[0].0, Row { v: r, combo });
        Ok(())
    }
}

/// Rank of a list of sparse rows.
pub fn rank<F: Field>(field: &F, rows: impl IntoIterator<Item = SparseVec<F::Elem>>) -> usize {
    let mut e = Echelon::new(field.clone());
    for r in rows {
        let _ = e.insert(r);
    }
    e.rank()
}

/// Basis of the kernel of the linear map sending basis vector `i` to
/// `images[i]`, as sparse vectors over the source basis.
pub fn kernel<F: Field>(field: &F, images: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let mut e = Echelon::tracking(field.clone());
    let mut out = Vec::new();
    for img in images {
        if let Err(combo) = e.insert(img.clone()) {
            out.push(combo);
        }
    }
    out
}
