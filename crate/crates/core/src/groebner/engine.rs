//! Buchberger's algorithm for submodules of graded free modules `S^r`.
//!
//! Ideals are the rank-one case. Elements are sparse vectors of terms
//! `c·m·e_i` kept sorted by a [`ModuleOrder`]. Pairs are chosen by the normal
//! strategy (smallest lcm degree, then lexicographically smallest index pair)
//! and filtered with the Gebauer–Möller criteria; the product criterion is
//! only applied in rank one, where it is valid.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{CakError, Result};
use crate::field::Field;
use crate::polyring::{Monomial, TermOrder};

/// Default number of S-pair reductions before giving up.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term<E> {
    pub comp: u32,
    pub mono: Monomial,
    /// weighted degree of `mono`
    pub deg: u64,
    pub coef: E,
}

pub type Vector<E> = Vec<Term<E>>;

/// Order on the terms `m·e_i` of a free module.
///
/// Components are grouped into blocks; a lower block number always wins.
/// Inside a block, terms compare by `deg(m) + twist(i)`, then by the
/// monomial order, then by smaller component index. When the monomial order
/// is an elimination order the degree step is skipped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub weights: Vec<u32>,
    pub mono: TermOrder,
    pub twists: Vec<i64>,
    pub blocks: Vec<u8>,
}

impl ModuleOrder {
    pub fn ideal(weights: &[u32], mono: TermOrder) -> Self {
        ModuleOrder { weights: weights.to_vec(), mono, twists: vec![0], blocks: vec![0] }
    }

    pub fn module(weights: &[u32], twists: Vec<i64>) -> Self {
        let blocks = vec![0; twists.len()];
        ModuleOrder { weights: weights.to_vec(), mono: TermOrder::WeightedRevLex, twists, blocks }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    #[inline]
    pub fn degree(&self, comp: u32, deg: u64) -> i64 {
        deg as i64 + self.twists[comp as usize]
    }

    #[inline]
    pub fn cmp_parts(&self, ca: u32, ma: &Monomial, da: u64, cb: u32, mb: &Monomial, db: u64) -> Ordering {
        let (ba, bb) = (self.blocks[ca as usize], self.blocks[cb as usize]);
        if ba != bb {
            return bb.cmp(&ba);
        }
        let ord = match &self.mono {
            TermOrder::WeightedRevLex => self
                .degree(ca, da)
                .cmp(&self.degree(cb, db))
                .then_with(|| self.mono.cmp_with_degrees(&self.weights, ma, da, mb, db)),
            TermOrder::Block(_) => self.mono.cmp(&self.weights, ma, mb),
        };
        ord.then_with(|| cb.cmp(&ca))
    }

    #[inline]
    pub fn cmp<E>(&self, a: &Term<E>, b: &Term<E>) -> Ordering {
        self.cmp_parts(a.comp, &a.mono, a.deg, b.comp, &b.mono, b.deg)
    }

    pub fn sort<E>(&self, v: &mut Vector<E>) {
        v.sort_by(|a, b| self.cmp(b, a));
    }
}

/// Combines like terms of an unsorted term list and sorts it.
pub fn normalize<F: Field>(field: &F, order: &ModuleOrder, mut v: Vector<F::Elem>) -> Vector<F::Elem> {
    order.sort(&mut v);
    let mut out: Vector<F::Elem> = Vec::with_capacity(v.len());
    for t in v {
        match out.last_mut() {
            Some(last) if last.comp == t.comp && last.mono == t.mono => {
                last.coef = field.add(&last.coef, &t.coef);
            }
            _ => out.push(t),
        }
    }
    out.retain(|t| !field.is_zero(&t.coef));
    out
}

/// `a - c·m·b`, both sorted.
pub fn sub_scaled<F: Field>(
    field: &F,
    order: &ModuleOrder,
    a: &[Term<F::Elem>],
    b: &[Term<F::Elem>],
    m: &Monomial,
    mdeg: u64,
    c: &F::Elem,
) -> Vector<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut scaled: Option<Term<F::Elem>> = None;
    let next_b = |j: usize| -> Term<F::Elem> {
        let t = &b[j];
        Term { comp: t.comp, mono: t.mono.mul(m), deg: t.deg + mdeg, coef: field.mul(&t.coef, c) }
    };
    loop {
        if scaled.is_none() && j < b.len() {
            scaled = Some(next_b(j));
        }
        match (i < a.len(), scaled.as_ref()) {
            (false, None) => break,
            (true, None) => {
                out.extend_from_slice(&a[i..]);
                break;
            }
            (false, Some(_)) => {
                let t = scaled.take().unwrap();
                out.push(Term { coef: field.neg(&t.coef), ..t });
                j += 1;
            }
            (true, Some(t)) => match order.cmp(&a[i], t) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let t = scaled.take().unwrap();
                    out.push(Term { coef: field.neg(&t.coef), ..t });
                    j += 1;
                }
                Ordering::Equal => {
                    let t = scaled.take().unwrap();
                    let c = field.sub(&a[i].coef, &t.coef);
                    if !field.is_zero(&c) {
                        out.push(Term { coef: c, ..t });
                    }
                    i += 1;
                    j += 1;
                }
            },
        }
    }
    out
}

/// Reduces `r` by a list of monic vectors. The first reducer (in list
/// order) whose lead divides the current term is used.
pub fn reduce_by<F: Field, V: AsRef<[Term<F::Elem>]>>(
    field: &F,
    order: &ModuleOrder,
    reducers: &[V],
    mut r: Vector<F::Elem>,
    full: bool,
) -> Vector<F::Elem> {
    // r[..start] holds terms that are already irreducible
    let mut start = 0;
    while start < r.len() {
        let t = &r[start];
        let hit = reducers.iter().map(|g| g.as_ref()).find(|g| {
            let l = &g[0];
            l.comp == t.comp && l.deg <= t.deg && l.mono.divides(&t.mono)
        });
        match hit {
            Some(g) => {
                let q = t.mono.div(&g[0].mono).expect("divides");
                let qdeg = t.deg - g[0].deg;
                let c = t.coef.clone();
                let tail = sub_scaled(field, order, &r[start..], g, &q, qdeg, &c);
                r.truncate(start);
                r.extend(tail);
            }
            None => {
                if !full {
                    break;
                }
                start += 1;
            }
        }
    }
    r
}

pub fn make_monic<F: Field>(field: &F, v: &mut Vector<F::Elem>) {
    if let Some(first) = v.first() {
        if !field.is_one(&first.coef) {
            let inv = field.inv(&first.coef).expect("nonzero lead");
            for t in v.iter_mut() {
                t.coef = field.mul(&t.coef, &inv);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    deg: i64,
    i: usize,
    j: usize,
}

/// Incremental Buchberger state.
///
/// Generators can be added at any time; [`Engine::complete`] processes
/// pending pairs, optionally only up to a degree bound, which is what
/// homogeneous minimal-generator selection needs.
pub struct Engine<F: Field> {
    field: F,
    order: ModuleOrder,
    basis: Vec<Vector<F::Elem>>,
    active: Vec<bool>,
    pairs: BTreeSet<Pair>,
    rank_one: bool,
    steps: u64,
    budget: u64,
}

impl<F: Field> Engine<F> {
    pub fn new(field: F, order: ModuleOrder, budget: u64) -> Self {
        let rank_one = order.rank() == 1;
        Engine { field, order, basis: Vec::new(), active: Vec::new(), pairs: BTreeSet::new(), rank_one, steps: 0, budget }
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn lead(&self, i: usize) -> &Term<F::Elem> {
        &self.basis[i][0]
    }

    /// Normal form with respect to the current basis. With `full == false`
    /// only the leading term is reduced away.
    pub fn reduce(&self, r: Vector<F::Elem>, full: bool) -> Vector<F::Elem> {
        let reducers: Vec<&Vector<F::Elem>> =
            (0..self.basis.len()).filter(|&k| self.active[k]).map(|k| &self.basis[k]).collect();
        reduce_by(&self.field, &self.order, &reducers, r, full)
    }

    /// Reduces and inserts an element. Returns `false` if it reduced to zero.
    pub fn add(&mut self, v: Vector<F::Elem>) -> bool {
        let mut h = self.reduce(v, false);
        if h.is_empty() {
            return false;
        }
        make_monic(&self.field, &mut h);
        self.insert(h);
        true
    }

    fn insert(&mut self, h: Vector<F::Elem>) {
        let k = self.basis.len();
        let lh = h[0].clone();
        struct Cand {
            i: usize,
            lcm: Monomial,
            deg: i64,
            coprime: bool,
        }
        let mut cands: Vec<Cand> = Vec::new();
        for i in 0..k {
            if !self.active[i] {
                continue;
            }
            let li = self.lead(i);
            if li.comp != lh.comp {
                continue;
            }
            let lcm = li.mono.lcm(&lh.mono);
            let deg = self.order.degree(lh.comp, lcm.weighted_degree(&self.order.weights));
            let coprime = self.rank_one && li.mono.is_coprime(&lh.mono);
            cands.push(Cand { i, lcm, deg, coprime });
        }
        // chain criterion among the new pairs
        let mut kept: Vec<Cand> = Vec::new();
        while !cands.is_empty() {
            let p = cands.remove(0);
            let dominated = cands.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if p.coprime || !dominated {
                kept.push(p);
            }
        }
        // old pairs made redundant by the new lead
        let basis = &self.basis;
        let order = &self.order;
        self.pairs.retain(|p| {
            let li = &basis[p.i][0];
            let lj = &basis[p.j][0];
            if li.comp != lh.comp {
                return true;
            }
            let lij = li.mono.lcm(&lj.mono);
            if !lh.mono.divides(&lij) {
                return true;
            }
            let lik = li.mono.lcm(&lh.mono);
            let ljk = lj.mono.lcm(&lh.mono);
            let _ = order;
            lik == lij || ljk == lij
        });
        for c in kept.into_iter().filter(|c| !c.coprime) {
            self.pairs.insert(Pair { deg: c.deg, i: c.i, j: k });
        }
        for i in 0..k {
            if self.active[i] {
                let li = &self.basis[i][0];
                if li.comp == lh.comp && lh.mono.divides(&li.mono) {
                    self.active[i] = false;
                }
            }
        }
        self.basis.push(h);
        self.active.push(true);
    }

    fn s_vector(&self, i: usize, j: usize) -> Vector<F::Elem> {
        let (gi, gj) = (&self.basis[i], &self.basis[j]);
        let lcm = gi[0].mono.lcm(&gj[0].mono);
        let mi = lcm.div(&gi[0].mono).unwrap();
        let mj = lcm.div(&gj[0].mono).unwrap();
        let di = mi.weighted_degree(&self.order.weights);
        let dj = mj.weighted_degree(&self.order.weights);
        let one = self.field.one();
        let a: Vector<F::Elem> = gi
            .iter()
            .map(|t| Term { comp: t.comp, mono: t.mono.mul(&mi), deg: t.deg + di, coef: t.coef.clone() })
            .collect();
        sub_scaled(&self.field, &self.order, &a, gj, &mj, dj, &one)
    }

    /// Processes pending pairs of degree at most `max_deg` (all if `None`).
    pub fn complete(&mut self, max_deg: Option<i64>) -> Result<()> {
        loop {
            let Some(&p) = self.pairs.first() else { return Ok(()) };
            if let Some(b) = max_deg {
                if p.deg > b {
                    return Ok(());
                }
            }
            self.pairs.remove(&p);
            self.steps += 1;
            if self.steps > self.budget {
                return Err(CakError::ResourceLimit { budget: self.budget });
            }
            let s = self.s_vector(p.i, p.j);
            let mut h = self.reduce(s, false);
            if !h.is_empty() {
                make_monic(&self.field, &mut h);
                self.insert(h);
            }
        }
    }

    /// Lowest degree among pending pairs.
    pub fn next_pair_degree(&self) -> Option<i64> {
        self.pairs.first().map(|p| p.deg)
    }

    /// Current minimal basis (lead terms pairwise non-dividing), unreduced tails.
    pub fn minimal_basis(&self) -> Vec<&Vector<F::Elem>> {
        (0..self.basis.len()).filter(|&i| self.active[i]).map(|i| &self.basis[i]).collect()
    }

    /// The reduced Gröbner basis: monic, tails fully reduced, sorted by
    /// increasing leading term.
    pub fn reduced_basis(&self) -> Vec<Vector<F::Elem>> {
        let mut out: Vec<Vector<F::Elem>> = Vec::new();
        for g in self.minimal_basis() {
            let head = g[0].clone();
            let tail = self.reduce(g[1..].to_vec(), true);
            let mut v = Vec::with_capacity(tail.len() + 1);
            v.push(head);
            v.extend(tail);
            make_monic(&self.field, &mut v);
            out.push(v);
        }
        out.sort_by(|a, b| self.order.cmp(&a[0], &b[0]));
        out
    }
}

/// One-shot reduced Gröbner basis of a list of vectors.
pub fn groebner<F: Field>(
    field: &F,
    order: &ModuleOrder,
    gens: Vec<Vector<F::Elem>>,
    budget: u64,
) -> Result<Vec<Vector<F::Elem>>> {
    let mut e = Engine::new(field.clone(), order.clone(), budget);
    let mut gens: Vec<_> = gens.into_iter().filter(|g| !g.is_empty()).collect();
    // smaller leads first keeps interreduction cheap; the result is canonical anyway
    gens.sort_by(|a, b| order.cmp(&a[0], &b[0]));
    for g in gens {
        e.add(g);
    }
    e.complete(None)?;
    Ok(e.reduced_basis())
}
