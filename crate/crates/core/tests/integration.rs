//! End-to-end checks through the public API against independent oracles.

use proptest::prelude::*;

use cak_core::quotient::{ext_dims, tor_dims};
use cak_core::resolve::{hilbert_numerator, minimal_free_resolution, resolve_quotient};
use cak_core::semigroup::toric_ideal;
use cak_core::{IdealHandle, NumericalSemigroup, PolyRing, PresentedModule, PrimeField, QuotientRing, RingPresentation};

fn fp() -> PrimeField {
    PrimeField::default()
}

/// Membership by reachability, bounded by `hi`.
fn members(gens: &[u64], hi: usize) -> Vec<bool> {
    let mut ok = vec![false; hi + 1];
    ok[0] = true;
    for m in 1..=hi {
        ok[m] = gens.iter().any(|&a| a as usize <= m && ok[m - a as usize]);
    }
    ok
}

#[test]
fn semigroup_ring_hilbert_function_is_membership() {
    for gens in [vec![6, 11, 16, 26], vec![3, 5], vec![4, 5, 6, 7], vec![5, 7, 9], vec![10, 14, 16, 19]] {
        let s = NumericalSemigroup::new(gens.clone()).unwrap();
        let p = toric_ideal(fp(), &s).unwrap();
        let hf = hilbert_numerator(&p).unwrap().series(p.ambient().weights(), 0, 90);
        let oracle = members(&gens, 90);
        for (m, (&h, &o)) in hf.iter().zip(&oracle).enumerate() {
            assert_eq!(h, o as i64, "degree {m} of <{gens:?}>");
        }
    }
}

#[test]
fn koszul_ranks_are_binomial() {
    for n in 1..=5usize {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let s = PolyRing::standard(fp(), &names).unwrap();
        let vars: Vec<_> = (0..n).map(|i| s.var(i)).collect();
        let c = resolve_quotient(&IdealHandle::in_poly_ring(&s, vars).unwrap(), None).unwrap();
        let want: Vec<usize> = (0..=n).map(|k| (0..k).fold(1, |a, i| a * (n - i) / (i + 1))).collect();
        assert_eq!(c.ranks(), want);
    }
}

fn truncated(n: u32) -> (RingPresentation<PrimeField>, QuotientRing<PrimeField>) {
    let s = PolyRing::standard(fp(), &["x"]).unwrap();
    let r = RingPresentation::polynomial(s.clone()).with_relations(&[s.var(0).pow(n)]).unwrap();
    (r.clone(), QuotientRing::new(r).unwrap())
}

/// Over `k[x]/(x^n)`, `R/(x^a)` has the periodic resolution with maps
/// `x^a`, `x^(n−a)`; the dims follow from ranks of multiplication on `R/(x^b)`.
fn ext_oracle(n: usize, a: usize, b: usize, i: usize) -> usize {
    if i % 2 == 1 {
        b.min(n - a) - b.saturating_sub(a)
    } else {
        b.min(a) - b.saturating_sub(n - a)
    }
}

#[test]
fn ext_and_tor_over_truncated_polynomial_ring() {
    for n in 2..=5u32 {
        let (r, q) = truncated(n);
        let x = r.ambient().var(0);
        let k = PresentedModule::residue_field(&r);
        for a in 1..n {
            let m = PresentedModule::cyclic(&r, &[x.pow(a)]).unwrap();
            assert_eq!(tor_dims(&q, &m, &k, 5).unwrap().dims, vec![1; 5]);
            for b in 1..n {
                let nb = PresentedModule::cyclic(&r, &[x.pow(b)]).unwrap();
                let got = ext_dims(&q, &m, &nb, 5).unwrap().dims;
                let want: Vec<usize> = (1..=5).map(|i| ext_oracle(n as usize, a as usize, b as usize, i)).collect();
                assert_eq!(got, want, "n = {n}, a = {a}, b = {b}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Alternating sums of graded Betti numbers give the Hilbert numerator.
    #[test]
    fn betti_numbers_give_hilbert_numerator(exps in prop::collection::vec((0u16..4, 0u16..4, 0u16..4), 1..6)) {
        let s = PolyRing::standard(fp(), &["x", "y", "z"]).unwrap();
        let gens: Vec<_> = exps
            .iter()
            .filter(|e| **e != (0, 0, 0))
            .map(|&(a, b, c)| s.var(0).pow(a as u32).mul(&s.var(1).pow(b as u32)).unwrap().mul(&s.var(2).pow(c as u32)).unwrap())
            .collect();
        prop_assume!(!gens.is_empty());
        let i = IdealHandle::in_poly_ring(&s, gens.clone()).unwrap();
        let num = hilbert_numerator(&i).unwrap();
        let r = RingPresentation::polynomial(s.clone());
        let c = minimal_free_resolution(&PresentedModule::cyclic(&r, &gens).unwrap(), None).unwrap();
        prop_assert!(c.is_complete());
        let mut alt = std::collections::BTreeMap::<i64, i64>::new();
        for [h, j, b] in c.betti_table().triples() {
            *alt.entry(j).or_default() += if h % 2 == 0 { b } else { -b };
        }
        alt.retain(|_, v| *v != 0);
        let want: std::collections::BTreeMap<i64, i64> = num.terms().clone();
        prop_assert_eq!(alt, want);
    }
}
