use proptest::prelude::*;

use super::*;
use crate::field::{PrimeField, Rationals};
use crate::quotient::{embedding_dim, QuotientRing};

fn fp() -> PrimeField {
    PrimeField::default()
}

fn sg(g: &[u64]) -> NumericalSemigroup {
    NumericalSemigroup::new(g.to_vec()).unwrap()
}

/// Membership by enumerating all coefficient vectors.
fn brute_member(gens: &[u64], m: u64) -> bool {
    fn rec(gens: &[u64], m: u64) -> bool {
        match gens.split_first() {
            None => m == 0,
            Some((&a, rest)) => (0..=m / a).any(|c| rec(rest, m - c * a)),
        }
    }
    rec(gens, m)
}

#[test]
fn membership() {
    let s = sg(&[6, 11, 16, 26]);
    let m = semigroup_membership(&s, 22);
    assert!(m.member);
    let c = m.witness.unwrap();
    assert_eq!(c.iter().zip(s.generators()).map(|(c, a)| c * a).sum::<u64>(), 22);
    assert_eq!(semigroup_membership(&s, 0).witness, Some(vec![0; 4]));
    assert!(!semigroup_membership(&sg(&[2, 3]), 1).member);
    for x in 0..120 {
        assert_eq!(s.contains(x), brute_member(s.generators(), x), "{x}");
        if let Some(c) = s.representation(x) {
            assert_eq!(c.iter().zip(s.generators()).map(|(c, a)| c * a).sum::<u64>(), x);
        }
    }
}

#[test]
fn frobenius_and_genus() {
    let s = sg(&[3, 5]);
    assert_eq!(s.frobenius(), 7);
    assert_eq!(s.genus(), 4);
    assert_eq!(sg(&[1]).frobenius(), -1);
    assert_eq!(sg(&[1]).genus(), 0);
    let s = sg(&[6, 11, 16, 26]);
    let gaps: Vec<u64> = (0..200).filter(|&x| !brute_member(s.generators(), x)).collect();
    assert_eq!(s.frobenius(), *gaps.last().unwrap() as i64);
    assert_eq!(s.genus(), gaps.len() as u64);
}

#[test]
fn rejects_bad_generators() {
    assert!(NumericalSemigroup::new(vec![4, 6]).is_err());
    assert!(NumericalSemigroup::new(vec![3, 5, 8]).is_err());
    assert!(NumericalSemigroup::new(vec![]).is_err());
    assert!(NumericalSemigroup::new(vec![0, 1]).is_err());
    assert_eq!(NumericalSemigroup::generated_by(&[5, 3, 8, 10]).unwrap().generators(), &[5, 3]);
    assert!(serde_json::from_str::<NumericalSemigroup>("[4, 6]").is_err());
    assert_eq!(serde_json::to_string(&sg(&[2, 3])).unwrap(), "[2,3]");
}

#[test]
fn semigroup_rings() {
    let s = sg(&[6, 11, 16, 26]);
    let r = semigroup_ring(fp(), &s).unwrap();
    let expected = IdealHandle::parse(&RingPresentation::polynomial(r.ambient().clone()), "X^7 - Z*W; Y^2 - X*Z; Z^2 - X*W; W^2 - X^6*Z").unwrap();
    let got = IdealHandle::in_poly_ring(r.ambient(), r.relations().to_vec()).unwrap();
    assert!(got.equals(&expected).unwrap());
    assert_eq!(r.relations().len(), 4);

    let r = semigroup_ring(fp(), &sg(&[2, 3])).unwrap();
    assert_eq!(r.relations().len(), 1);
    let y2x3 = r.ambient().parse("Y^2 - X^3").unwrap();
    assert!(r.relations()[0] == y2x3 || r.relations()[0] == y2x3.neg());

    let r = semigroup_ring(fp(), &sg(&[1])).unwrap();
    assert!(r.is_polynomial_ring());
    assert_eq!(r.ambient().nvars(), 1);

    let r = semigroup_ring(Rationals, &sg(&[3, 4, 5])).unwrap();
    assert_eq!(r.relations().len(), 3);
    assert_eq!(variable_names(5), vec!["X1", "X2", "X3", "X4", "X5"]);
}

fn check_toric_invariants(gens: &[u64]) {
    let s = sg(gens);
    let r = semigroup_ring(fp(), &s).unwrap();
    for g in r.relations() {
        assert!(t_substitution(&s, g).is_empty(), "{g} does not vanish");
        assert_eq!(g.num_terms(), 2, "{g} is not a binomial");
        let degs: Vec<u64> = g.terms().iter().map(|(m, _)| r.ambient().monomial_degree(m)).collect();
        assert_eq!(degs[0], degs[1]);
    }
    if !r.is_polynomial_ring() {
        let q = QuotientRing::new(r.clone()).unwrap();
        assert_eq!(embedding_dim(&q).unwrap(), s.embedding_dim());
    }
}

#[test]
fn toric_invariants() {
    for g in [&[6, 11, 16, 26][..], &[2, 3], &[3, 4, 5], &[5, 7, 9], &[4, 5, 6, 7], &[7, 8, 9, 10, 11], &[10, 14, 16, 13]] {
        check_toric_invariants(g);
    }
}

#[test]
fn family_first_period() {
    assert_eq!(family_2x3_f_exponents(6), [1, 0, 1]);
    assert_eq!(family_2x3_f_exponents(7), [3, 0, 0]);
    assert_eq!(family_2x3_f_exponents(8), [2, 1, 0]);
    assert_eq!(family_2x3_f_exponents(11), [3, 0, 1]);
    for n in [6, 7, 8, 10, 11] {
        let fam = family_2x3_semigroup(fp(), n).unwrap();
        assert!(fam.report.matches, "n = {n}: {:?}", fam.report.diagnostic);
        assert_eq!(fam.report.f_degree, fam.report.w2_degree);
        assert!(fam.report.diagnostic.is_none());
    }
    assert_eq!(family_2x3_semigroup(fp(), 6).unwrap().f.to_string(), "X*Z");
}

#[test]
fn family_mismatch_is_reported() {
    // the n ≡ 3 row gives f = X for n = 9, of degree 10 against 38
    let fam = family_2x3_semigroup(fp(), 9).unwrap();
    assert!(!fam.report.matches);
    assert!(!fam.report.expected_in_kernel);
    assert_eq!((fam.report.f_degree, fam.report.w2_degree), (10, 38));
    assert!(fam.report.diagnostic.as_deref().unwrap().contains("X*Y^2"));
    assert!(matches!(family_2x3_semigroup(fp(), 5), Err(CakError::Precondition(_))));
}

#[test]
fn family_minors() {
    let s = PolyRing::new(fp(), &["X", "Y", "Z", "W"], &[10, 14, 16, 13]).unwrap();
    let m = minors(&MinorSpec::new(family_2x3_matrix(&s).unwrap(), 2).unwrap()).unwrap();
    let want: Vec<_> = ["X*Z^2 - Y^3", "X^3 - Y*Z", "X^2*Y^2 - Z^3"].iter().map(|t| s.parse(t).unwrap()).collect();
    assert_eq!(m, want);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_matches_enumeration(gens in prop::collection::vec(2u64..20, 2..4), x in 0u64..150) {
        let Ok(s) = NumericalSemigroup::generated_by(&gens) else { return Ok(()) };
        prop_assert_eq!(s.contains(x), brute_member(s.generators(), x));
        prop_assert_eq!(s.representation(x).is_some(), s.contains(x));
        prop_assert!(!s.contains(s.frobenius() as u64) || s.frobenius() < 0);
        prop_assert!((s.frobenius() + 1..s.frobenius() + 40).all(|y| s.contains(y as u64)));
    }
}
