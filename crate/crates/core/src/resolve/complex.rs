use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::PolyMatrix;
use super::module::GradedFreeModule;
use crate::error::{CakError, Result};
use crate::field::Field;
use crate::groebner::IdealHandle;
use crate::polyring::RingPresentation;

/// Complex of graded free modules `F_0 ← F_1 ← … ← F_n`.
///
/// `twists(i)` lists the degrees of the basis of `F_i`; `differential(i)`
/// is the `rank F_{i−1} × rank F_i` matrix of `d_i`.
#[derive(Clone, Debug)]
pub struct ChainComplex<F: Field> {
    ring: RingPresentation<F>,
    modules: Vec<Vec<i64>>,
    maps: Vec<PolyMatrix<F>>,
    complete: bool,
}

impl<F: Field> ChainComplex<F> {
    pub fn new(ring: &RingPresentation<F>, modules: Vec<Vec<i64>>, maps: Vec<PolyMatrix<F>>) -> Result<Self> {
        if modules.is_empty() {
            return Err(CakError::Shape("a complex needs at least one module".into()));
        }
        if maps.len() + 1 != modules.len() {
            return Err(CakError::Shape(format!("{} modules but {} differentials", modules.len(), maps.len())));
        }
        for (i, d) in maps.iter().enumerate() {
            if d.ring() != ring.ambient() {
                return Err(CakError::RingMismatch);
            }
            if d.rows() != modules[i].len() || d.cols() != modules[i + 1].len() {
                return Err(CakError::Shape(format!(
                    "d_{} is {}x{} between ranks {} and {}",
                    i + 1,
                    d.rows(),
                    d.cols(),
                    modules[i + 1].len(),
                    modules[i].len()
                )));
            }
        }
        Ok(ChainComplex { ring: ring.clone(), modules, maps, complete: false })
    }

    /// Single free module in homological degree 0.
    pub fn free(ring: &RingPresentation<F>, twists: Vec<i64>) -> Self {
        ChainComplex { ring: ring.clone(), modules: vec![twists], maps: Vec::new(), complete: true }
    }

    pub(crate) fn set_complete(&mut self, c: bool) {
        self.complete = c;
    }

    /// True when the resolution was computed to the end (the next kernel vanished).
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn ring(&self) -> &RingPresentation<F> {
        &self.ring
    }

    /// Index of the last stored module.
    pub fn top(&self) -> usize {
        self.modules.len() - 1
    }

    /// Largest `i` with `F_i ≠ 0`.
    pub fn length(&self) -> usize {
        (0..self.modules.len()).rev().find(|&i| !self.modules[i].is_empty()).unwrap_or(0)
    }

    pub fn twists(&self, i: usize) -> &[i64] {
        self.modules.get(i).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn module(&self, i: usize) -> GradedFreeModule<F> {
        GradedFreeModule::new(&self.ring, self.twists(i).to_vec())
    }

    pub fn rank(&self, i: usize) -> usize {
        self.twists(i).len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        let n = self.length();
        (0..=n).map(|i| self.rank(i)).collect()
    }

    /// `d_i` for `1 ≤ i ≤ top`.
    pub fn differential(&self, i: usize) -> &PolyMatrix<F> {
        &self.maps[i - 1]
    }

    pub fn differentials(&self) -> &[PolyMatrix<F>] {
        &self.maps
    }

    pub fn modules(&self) -> &[Vec<i64>] {
        &self.modules
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut t = BettiTable::default();
        for (i, tw) in self.modules.iter().enumerate() {
            for &a in tw {
                *t.entries.entry((i, a)).or_insert(0) += 1;
            }
        }
        t
    }

    fn relation_ideal(&self) -> Result<IdealHandle<F>> {
        IdealHandle::new(&self.ring, Vec::new())
    }

    /// `d_{i−1} ∘ d_i = 0` for all `i`, modulo the ring relations.
    pub fn is_complex(&self) -> Result<bool> {
        let j = self.relation_ideal()?;
        for i in 1..self.maps.len() {
            let p = self.maps[i - 1].mul(&self.maps[i])?;
            for r in 0..p.rows() {
                for c in 0..p.cols() {
                    if !j.contains(p.get(r, c))? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Every differential is a degree-0 map for the stored twists.
    pub fn is_graded(&self) -> bool {
        (1..=self.maps.len()).all(|i| self.maps[i - 1].is_graded(&self.modules[i - 1], &self.modules[i]))
    }

    /// No differential entry is a unit (a nonzero constant modulo the relations).
    pub fn is_minimal(&self) -> Result<bool> {
        let j = self.relation_ideal()?;
        for d in &self.maps {
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    let p = j.normal_form(d.get(r, c))?;
                    if !p.is_zero() && p.is_constant() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Drops trailing zero modules.
    pub fn trimmed(mut self) -> Self {
        let n = self.length();
        self.modules.truncate(n + 1);
        self.maps.truncate(n);
        self
    }
}

/// Cancels unit entries of the differentials until none are left.
///
/// For a unit `u = d_i[k][j]`, the pair `e_j ∈ F_i`, `f_k ∈ F_{i−1}` is split
/// off: `d_i` becomes `D − γ·u⁻¹·β` on the remaining bases, `d_{i+1}` loses
/// row `j` and `d_{i−1}` loses column `k`.
pub fn minimalize<F: Field>(c: &ChainComplex<F>) -> Result<ChainComplex<F>> {
    let jideal = IdealHandle::new(&c.ring, Vec::new())?;
    let field = c.ring.field().clone();
    let mut modules = c.modules.clone();
    let mut maps: Vec<PolyMatrix<F>> =
        c.maps.iter().map(|d| d.try_map_entries(|p| jideal.normal_form(p))).collect::<Result<_>>()?;
    for i in 1..=maps.len() {
        loop {
            let d = &maps[i - 1];
            let mut unit = None;
            'search: for j in 0..d.cols() {
                for k in 0..d.rows() {
                    let p = d.get(k, j);
                    if !p.is_zero() && p.is_constant() {
                        unit = Some((k, j));
                        break 'search;
                    }
                }
            }
            let Some((k, j)) = unit else { break };
            let u = d.get(k, j).constant_value().unwrap();
            let uinv = field.inv(&u).expect("unit");
            let rows: Vec<usize> = (0..d.rows()).filter(|&r| r != k).collect();
            let cols: Vec<usize> = (0..d.cols()).filter(|&x| x != j).collect();
            let mut nd = PolyMatrix::zero(d.ring(), rows.len(), cols.len());
            for (a, &r) in rows.iter().enumerate() {
                let gamma = d.get(r, j).scale(&uinv);
                for (b, &x) in cols.iter().enumerate() {
                    let mut e = d.get(r, x).clone();
                    let beta = d.get(k, x);
                    if !gamma.is_zero() && !beta.is_zero() {
                        e = &e - &(&gamma * beta);
                    }
                    nd.set(a, b, jideal.normal_form(&e)?);
                }
            }
            maps[i - 1] = nd;
            if i < maps.len() {
                let keep: Vec<usize> = (0..maps[i].rows()).filter(|&r| r != j).collect();
                maps[i] = maps[i].select_rows(&keep);
            }
            if i >= 2 {
                let keep: Vec<usize> = (0..maps[i - 2].cols()).filter(|&x| x != k).collect();
                maps[i - 2] = maps[i - 2].select_cols(&keep);
            }
            modules[i].remove(j);
            modules[i - 1].remove(k);
        }
    }
    let mut out = ChainComplex::new(&c.ring, modules, maps)?;
    out.complete = c.complete;
    Ok(out)
}

/// Graded Betti numbers: `(homological degree i, internal degree j) → β_ij`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<[i64; 3]>", from = "Vec<[i64; 3]>")]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl From<BettiTable> for Vec<[i64; 3]> {
    fn from(t: BettiTable) -> Self {
        t.triples()
    }
}

impl From<Vec<[i64; 3]>> for BettiTable {
    fn from(v: Vec<[i64; 3]>) -> Self {
        let mut t = BettiTable::default();
        for [i, j, r] in v {
            if r > 0 {
                *t.entries.entry((i as usize, j)).or_insert(0) += r as usize;
            }
        }
        t
    }
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, i64), usize> {
        &self.entries
    }

    /// `[i, j, rank]` triples in increasing `(i, j)` order.
    pub fn triples(&self) -> Vec<[i64; 3]> {
        self.entries.iter().map(|(&(i, j), &r)| [i as i64, j, r as i64]).collect()
    }

    /// Total rank per homological degree, up to the last nonzero one.
    pub fn totals(&self) -> Vec<usize> {
        let n = self.entries.keys().map(|&(i, _)| i).max();
        let Some(n) = n else { return Vec::new() };
        let mut out = vec![0; n + 1];
        for (&(i, _), &r) in &self.entries {
            out[i] += r;
        }
        out
    }
}

impl fmt::Display for BettiTable {
    /// Macaulay2 layout: column `i`, row `j − i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let totals = self.totals();
        if totals.is_empty() {
            return writeln!(f, "total: 0");
        }
        let lo = self.entries.keys().map(|&(i, j)| j - i as i64).min().unwrap();
        let hi = self.entries.keys().map(|&(i, j)| j - i as i64).max().unwrap();
        let width = totals.iter().map(|t| t.to_string().len()).max().unwrap_or(1);
        let label = format!("{hi}:").len().max(format!("{lo}:").len()).max("total:".len());
        write!(f, "{:>label$}", "")?;
        for i in 0..totals.len() {
            write!(f, " {:>width$}", i)?;
        }
        writeln!(f)?;
        write!(f, "{:>label$}", "total:")?;
        for t in &totals {
            write!(f, " {:>width$}", t)?;
        }
        writeln!(f)?;
        for row in lo..=hi {
            write!(f, "{:>label$}", format!("{row}:"))?;
            for i in 0..totals.len() {
                let v = self.get(i, row + i as i64);
                if v == 0 {
                    write!(f, " {:>width$}", ".")?;
                } else {
                    write!(f, " {:>width$}", v)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
