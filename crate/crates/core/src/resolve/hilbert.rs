//! Hilbert series of graded quotients, kept as numerators over
//! `∏ (1 − t^{w_i})`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::polyring::Monomial;

/// Integer Laurent polynomial in `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent(BTreeMap<i64, i64>);

impl Laurent {
    pub fn one() -> Self {
        Laurent::monomial(0, 1)
    }

    pub fn monomial(e: i64, c: i64) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(e, c);
        }
        Laurent(m)
    }

    /// `1 − t^d`
    pub fn one_minus(d: i64) -> Self {
        &Laurent::one() - &Laurent::monomial(d, 1)
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.0.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<i64, i64> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn shift(&self, k: i64) -> Self {
        Laurent(self.0.iter().map(|(&e, &c)| (e + k, c)).collect())
    }

    fn add_term(&mut self, e: i64, c: i64) {
        let v = self.0.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.0.remove(&e);
        }
    }

    /// Value at `t = 1`.
    pub fn at_one(&self) -> i64 {
        self.0.values().sum()
    }

    /// Coefficients of `self / ∏(1 − t^{w})` in degrees `lo..=hi`.
    pub fn series(&self, weights: &[u32], lo: i64, hi: i64) -> Vec<i64> {
        if hi < lo {
            return Vec::new();
        }
        let n = (hi - lo + 1) as usize;
        let mut s = vec![0i64; n];
        for (&e, &c) in &self.0 {
            if e >= lo && e <= hi {
                s[(e - lo) as usize] += c;
            }
        }
        // multiply by 1/(1 − t^w) = running sums with stride w
        for &w in weights {
            let w = w as usize;
            for k in w..n {
                s[k] += s[k - w];
            }
        }
        if self.0.keys().next().is_some_and(|&e| e < lo) {
            // terms below the window also contribute; fold them in directly
            let mut extra = Laurent::default();
            for (&e, &c) in self.0.range(..lo) {
                extra.add_term(e, c);
            }
            let lowest = *extra.0.keys().next().unwrap();
            let full = extra.series(weights, lowest, hi);
            for k in 0..n {
                s[k] += full[(lo - lowest) as usize + k];
            }
        }
        s
    }
}

impl std::ops::Add for &Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (&e, &c) in &o.0 {
            r.add_term(e, c);
        }
        r
    }
}

impl std::ops::Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (&e, &c) in &o.0 {
            r.add_term(e, -c);
        }
        r
    }
}

impl std::ops::Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        let mut r = Laurent::default();
        for (&a, &x) in &self.0 {
            for (&b, &y) in &o.0 {
                r.add_term(a + b, x * y);
            }
        }
        r
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e, &c)) in self.0.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "t^{e}")?,
                _ => write!(f, "{a}*t^{e}")?,
            }
        }
        Ok(())
    }
}

fn minimize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut g: Vec<Monomial> = gens.to_vec();
    g.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| a.exps().cmp(b.exps())));
    g.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in g {
        if !out.iter().any(|o| o.divides(&m)) {
            out.push(m);
        }
    }
    out.sort_by(|a, b| a.exps().cmp(b.exps()));
    out
}

struct Numerator<'a> {
    weights: &'a [u32],
    memo: HashMap<Vec<Monomial>, Laurent>,
}

impl Numerator<'_> {
    fn compute(&mut self, gens: Vec<Monomial>) -> Laurent {
        let gens = minimize(&gens);
        if let Some(v) = self.memo.get(&gens) {
            return v.clone();
        }
        let deg = |m: &Monomial| m.weighted_degree(self.weights) as i64;
        let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
        let out = if pairwise_coprime {
            gens.iter().fold(Laurent::one(), |acc, m| &acc * &Laurent::one_minus(deg(m)))
        } else {
            // split on the last generator: N(I) = N(I') − t^{deg m}·N(I' : m)
            let mut rest = gens.clone();
            let m = rest.pop().unwrap();
            let colon: Vec<Monomial> = rest.iter().map(|a| a.div(&a.gcd(&m)).unwrap()).collect();
            let a = self.compute(rest);
            let b = self.compute(colon).shift(deg(&m));
            &a - &b
        };
        self.memo.insert(gens, out.clone());
        out
    }
}

/// Numerator `N(t)` with `HS(S/I) = N(t) / ∏(1 − t^{w_i})` for the monomial
/// ideal generated by `gens`, by inclusion–exclusion with memoization.
pub fn monomial_ideal_numerator(weights: &[u32], gens: &[Monomial]) -> Laurent {
    let mut n = Numerator { weights, memo: HashMap::new() };
    n.compute(gens.to_vec())
}

/// Numerator for `⊕ S(−a_c)/L_c`, one monomial ideal `L_c` per component.
pub fn module_numerator(weights: &[u32], twists: &[i64], leads: &[Vec<Monomial>]) -> Laurent {
    let mut acc = Laurent::default();
    for (c, l) in leads.iter().enumerate() {
        acc = &acc + &monomial_ideal_numerator(weights, l).shift(twists[c]);
    }
    acc
}
