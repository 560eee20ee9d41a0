use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial. Its length is the number of ring variables.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u16; 16]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Weighted degree `Σ e_i w_i`. Cannot overflow for `u16` exponents and
    /// `u32` weights with fewer than 2^16 variables.
    #[inline]
    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum()
    }

    /// Product. Panics on exponent overflow.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|&a| {
                    let v = a as u64 * e as u64;
                    u16::try_from(v).expect("exponent overflow")
                })
                .collect(),
        )
    }

    /// `self | other`
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, if exact.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable if this is a pure power `x_i^e`, `e ≥ 1`.
    pub fn pure_power(&self) -> Option<(usize, u16)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    /// Drops the variables at the given positions.
    pub fn restrict(&self, keep: &[usize]) -> Monomial {
        Monomial(keep.iter().map(|&i| self.0[i]).collect())
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Monomial order on a weighted polynomial ring.
///
/// `WeightedRevLex` compares weighted degree first and breaks ties
/// reverse-lexicographically on the fixed variable order. `Block` is an
/// elimination order: the variables flagged `true` form a block that
/// dominates the rest; each block is ordered by weighted degrevlex.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum TermOrder {
    #[default]
    WeightedRevLex,
    Block(Vec<bool>),
}

#[inline]
fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // smaller exponent in the last differing variable wins
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn masked_cmp(weights: &[u32], a: &[u16], b: &[u16], mask: &[bool], want: bool) -> Ordering {
    let mut da = 0u64;
    let mut db = 0u64;
    for i in 0..a.len() {
        if mask[i] == want {
            da += a[i] as u64 * weights[i] as u64;
            db += b[i] as u64 * weights[i] as u64;
        }
    }
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if mask[i] == want && a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl TermOrder {
    #[inline]
    pub fn cmp(&self, weights: &[u32], a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::WeightedRevLex => a
                .weighted_degree(weights)
                .cmp(&b.weighted_degree(weights))
                .then_with(|| revlex(a.exps(), b.exps())),
            TermOrder::Block(mask) => masked_cmp(weights, a.exps(), b.exps(), mask, true)
                .then_with(|| masked_cmp(weights, a.exps(), b.exps(), mask, false)),
        }
    }

    /// Same as [`TermOrder::cmp`] with the weighted degrees already known.
    #[inline]
    pub fn cmp_with_degrees(&self, weights: &[u32], a: &Monomial, da: u64, b: &Monomial, db: u64) -> Ordering {
        match self {
            TermOrder::WeightedRevLex => da.cmp(&db).then_with(|| revlex(a.exps(), b.exps())),
            TermOrder::Block(_) => self.cmp(weights, a, b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn degrevlex_tie_break() {
        let o = TermOrder::WeightedRevLex;
        // X^2 > XY with weights (1,1)
        assert_eq!(o.cmp(&[1, 1], &m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        // Y (deg 11) > X (deg 6)
        assert_eq!(o.cmp(&[6, 11], &m(&[0, 1]), &m(&[1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&[1, 1], &m(&[1, 1]), &m(&[1, 1])), Ordering::Equal);
        // classic degrevlex: xz^2 < y^3 in k[x,y,z]
        assert_eq!(o.cmp(&[1, 1, 1], &m(&[1, 0, 2]), &m(&[0, 3, 0])), Ordering::Less);
    }

    #[test]
    fn block_order_eliminates() {
        let o = TermOrder::Block(vec![true, false, false]);
        // t > X^100 in the elimination order
        assert_eq!(o.cmp(&[1, 1, 1], &m(&[1, 0, 0]), &m(&[0, 100, 0])), Ordering::Greater);
    }

    #[test]
    fn divisibility_helpers() {
        let a = m(&[2, 1, 0]);
        let b = m(&[3, 1, 4]);
        assert!(a.divides(&b));
        assert_eq!(b.div(&a), Some(m(&[1, 0, 4])));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[2, 3, 1]));
        assert_eq!(m(&[0, 5, 0]).pure_power(), Some((1, 5)));
        assert_eq!(m(&[1, 5, 0]).pure_power(), None);
    }
}
