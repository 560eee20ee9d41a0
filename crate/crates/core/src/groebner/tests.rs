use proptest::prelude::*;

use super::*;
use crate::error::CakError;
use crate::field::{PrimeField, Rationals};
use crate::polyring::RingPresentation;

fn fp() -> PrimeField {
    PrimeField::default()
}

fn ring(vars: &[&str], w: &[u32]) -> PolyRing<PrimeField> {
    PolyRing::new(fp(), vars, w).unwrap()
}

fn ideal(r: &PolyRing<PrimeField>, text: &str) -> IdealHandle<PrimeField> {
    IdealHandle::parse(&RingPresentation::polynomial(r.clone()), text).unwrap()
}

fn strs<F: Field>(v: &[Polynomial<F>]) -> Vec<String> {
    v.iter().map(|p| p.to_string()).collect()
}

/// Buchberger criterion checked from scratch, independent of the engine's
/// pair bookkeeping: every S-polynomial reduces to zero by plain division.
fn s_pairs_reduce_to_zero<F: Field>(gb: &[Polynomial<F>]) -> bool {
    let Some(first) = gb.first() else { return true };
    let ring = first.ring().clone();
    let divide = |mut p: Polynomial<F>| -> Polynomial<F> {
        let mut rem = ring.zero();
        while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            match gb.iter().find(|g| g.leading_monomial().unwrap().divides(&m)) {
                Some(g) => {
                    let (lm, lc) = g.leading_term().unwrap();
                    let q = m.div(lm).unwrap();
                    let k = ring.field().div(&c, lc).unwrap();
                    p = &p - &g.mul_term(&q, &k);
                }
                None => {
                    let t = ring.term(m, c);
                    rem = &rem + &t;
                    p = &p - &t;
                }
            }
        }
        rem
    };
    for i in 0..gb.len() {
        for j in i + 1..gb.len() {
            let (mi, ci) = gb[i].leading_term().unwrap();
            let (mj, cj) = gb[j].leading_term().unwrap();
            let l = mi.lcm(mj);
            let a = gb[i].mul_term(&l.div(mi).unwrap(), &ring.field().inv(ci).unwrap());
            let b = gb[j].mul_term(&l.div(mj).unwrap(), &ring.field().inv(cj).unwrap());
            if !divide(&a - &b).is_zero() {
                return false;
            }
        }
    }
    true
}

#[test]
fn small_gb_examples() {
    let r = ring(&["X", "Y"], &[1, 1]);
    let i = ideal(&r, "X^2 - Y; Y^2");
    // degree-compatible order: Y^2 has lower degree, then X^2 - Y; the S-pair
    // gives X^2*Y^2 terms which reduce, adding X*Y? no: the pair is coprime
    let gb = i.groebner_basis().unwrap();
    assert!(s_pairs_reduce_to_zero(gb));
    assert!(i.contains(&r.parse("Y^2").unwrap()).unwrap());
    assert!(i.contains(&r.parse("X^2 - Y").unwrap()).unwrap());

    assert!(ideal(&r, "0").groebner_basis().unwrap().is_empty());

    let q = ideal(&r, "X; Y").power(2).unwrap();
    assert_eq!(strs(q.groebner_basis().unwrap()), vec!["Y^2", "X*Y", "X^2"]);
}

#[test]
fn cyclic_example_matches_known_basis() {
    // a classic: GB of cyclic-3 has 3 elements under degrevlex
    let r = PolyRing::standard(Rationals, &["a", "b", "c"]).unwrap();
    let i = IdealHandle::parse(&RingPresentation::polynomial(r.clone()), "a+b+c; a*b+b*c+c*a; a*b*c-1").unwrap();
    let gb = i.groebner_basis().unwrap();
    assert!(s_pairs_reduce_to_zero(gb));
    assert_eq!(strs(gb), vec!["a + b + c", "b^2 + b*c + c^2", "c^3 - 1"]);
}

#[test]
fn normal_forms() {
    let r = ring(&["x1", "x2"], &[1, 1]);
    let q2 = ideal(&r, "x1; x2").power(2).unwrap();
    assert!(q2.normal_form(&r.parse("x1*x2").unwrap()).unwrap().is_zero());
    let m = ideal(&r, "x1; x2");
    assert_eq!(m.normal_form(&r.one()).unwrap(), r.one());

    let s = ring(&["X", "Y"], &[1, 1]);
    let i = ideal(&s, "X^2 - Y");
    let y3 = s.parse("Y^3").unwrap();
    assert_eq!(i.normal_form(&y3).unwrap(), y3);

    let other = ring(&["Z"], &[1]);
    assert_eq!(i.normal_form(&other.var(0)), Err(CakError::RingMismatch));
}

#[test]
fn ideal_arithmetic() {
    let r = ring(&["X", "Y"], &[1, 1]);
    let m = ideal(&r, "X; Y");
    let m2 = ideal(&r, "X^2; X*Y; Y^2");
    assert!(m.product(&m).unwrap().equals(&m2).unwrap());
    assert!(m.contains_ideal(&m2).unwrap());
    assert!(!m2.contains_ideal(&m).unwrap());

    let a = ideal(&r, "X");
    let b = ideal(&r, "Y");
    let ab = a.intersection(&b).unwrap();
    assert!(ab.equals(&ideal(&r, "X*Y")).unwrap());
    // (X^2, XY) : (X) = (X, Y)
    let c = ideal(&r, "X^2; X*Y").colon(&a).unwrap();
    assert!(c.equals(&m).unwrap());
    // colon by an element already inside gives the unit ideal
    assert!(m2.colon(&m2).unwrap().is_unit().unwrap());

    let r3 = ring(&["X", "Y", "Z"], &[1, 1, 1]);
    let q = ideal(&r3, "X; Y; Z");
    assert!(q.power(3).unwrap().equals(&q.product(&q).unwrap().product(&q).unwrap()).unwrap());
    assert!(q.power(0).is_err());
}

#[test]
fn elimination_examples() {
    let r = ring(&["t", "X"], &[1, 1]);
    let e = ideal(&r, "t - X").eliminate_named(&["t"]).unwrap();
    assert!(e.generators().is_empty());

    // the cusp; t has weight 1, X and Y weights 2 and 3 to stay graded
    let r = ring(&["t", "X", "Y"], &[1, 2, 3]);
    let e = ideal(&r, "X - t^2; Y - t^3").eliminate_named(&["t"]).unwrap();
    assert_eq!(strs(e.generators()), vec!["X^3 - Y^2"]);

    let r = ring(&["t", "X", "Y"], &[1, 6, 11]);
    let e = ideal(&r, "X - t^6; Y - t^11").eliminate_named(&["t"]).unwrap();
    assert_eq!(e.generators().len(), 1);
    assert_eq!(e.generators()[0].homogeneous_degree(), Some(66));
    assert_eq!(e.generators()[0].to_string(), "X^11 - Y^6");

    // idempotent on its result
    let again = e.eliminate(&[]).unwrap();
    assert!(again.equals(&e).unwrap());
}

#[test]
fn kernels_of_monomial_maps() {
    let t = ring(&["t"], &[1]);
    let tt = RingPresentation::polynomial(t.clone());
    let s = ring(&["X", "Y", "Z", "W"], &[6, 11, 16, 26]);
    let images = ["t^6", "t^11", "t^16", "t^26"].iter().map(|x| t.parse(x).unwrap()).collect();
    let phi = RingMap::graded(RingPresentation::polynomial(s.clone()), tt.clone(), images).unwrap();
    let k = ring_map_kernel(&phi).unwrap();
    let expected = ideal(&s, "X^7 - Z*W; Y^2 - X*Z; Z^2 - X*W; W^2 - X^6*Z");
    assert!(k.equals(&expected).unwrap());
    for g in k.generators() {
        assert!(phi.apply(g).unwrap().is_zero());
    }

    let x = ring(&["X"], &[1]);
    let phi = RingMap::new(RingPresentation::polynomial(x), tt.clone(), vec![t.var(0)]).unwrap();
    assert!(phi.kernel().unwrap().generators().is_empty());

    let s = ring(&["X", "Y"], &[2, 3]);
    let images = vec![t.parse("t^2").unwrap(), t.parse("t^3").unwrap()];
    let phi = RingMap::graded(RingPresentation::polynomial(s.clone()), tt, images).unwrap();
    assert!(phi.kernel().unwrap().equals(&ideal(&s, "Y^2 - X^3")).unwrap());
}

#[test]
fn graded_map_rejects_wrong_weight() {
    let t = ring(&["t"], &[1]);
    let s = ring(&["X"], &[2]);
    let r = RingMap::graded(
        RingPresentation::polynomial(s),
        RingPresentation::polynomial(t.clone()),
        vec![t.parse("t^3").unwrap()],
    );
    assert!(matches!(r, Err(CakError::NotHomogeneous(_))));
}

#[test]
fn standard_monomial_counts() {
    let r = ring(&["X", "Y"], &[1, 1]);
    let sm = ideal(&r, "X; Y").power(2).unwrap().standard_monomials().unwrap();
    assert_eq!(sm.len(), 3);
    let x = ring(&["X"], &[1]);
    assert_eq!(ideal(&x, "X^2").colength().unwrap(), 2);
    assert!(matches!(ideal(&r, "X^2").standard_monomials(), Err(CakError::NotFiniteDimensional(v)) if v == "Y"));
    assert_eq!(ideal(&r, "1").colength().unwrap(), 0);
}

#[test]
fn quotient_ring_ideals() {
    // R1 = S/J with J the toric ideal of <6,11,16,26>
    let s = ring(&["X", "Y", "Z", "W"], &[6, 11, 16, 26]);
    let rr = RingPresentation::parse(s.clone(), &["X^7 - Z*W", "Y^2 - X*Z", "Z^2 - X*W", "W^2 - X^6*Z"]).unwrap();
    let i = IdealHandle::parse(&rr, "X; Z; W").unwrap();
    let q = IdealHandle::parse(&rr, "X").unwrap();
    assert!(q.colon(&i).unwrap().equals(&i).unwrap());
    assert_eq!(i.colength().unwrap(), 2);
    let sm = IdealHandle::parse(&rr, "X; Z; W").unwrap().standard_monomials().unwrap();
    assert_eq!(sm.iter().map(|m| m.render(s.var_names())).collect::<Vec<_>>(), vec!["1", "Y"]);
    assert_eq!(q.colength().unwrap(), 6);
    assert_eq!(i.minimal_generators().unwrap().len(), 3);
}

#[test]
fn minimal_generators_drop_redundancy() {
    let r = ring(&["X", "Y"], &[1, 1]);
    let i = ideal(&r, "X^2; X; X*Y; Y^3; X + Y");
    let mg = i.minimal_generators().unwrap();
    assert_eq!(strs(&mg), vec!["X", "X + Y"]);
}

#[test]
fn budget_is_enforced() {
    let r = ring(&["a", "b", "c", "d"], &[1, 1, 1, 1]);
    let i = ideal(&r, "a*b - c^2; b*c - d^2; a*d - b^2; c*d - a^2 + b*d").with_budget(3);
    assert!(matches!(i.groebner_basis(), Err(CakError::ResourceLimit { budget: 3 })));
}

fn arb_gens() -> impl Strategy<Value = Vec<Vec<(Vec<u16>, i64)>>> {
    prop::collection::vec(prop::collection::vec((prop::collection::vec(0u16..3, 3), -5i64..5), 1..4), 1..4)
}

fn build(r: &PolyRing<PrimeField>, g: &[Vec<(Vec<u16>, i64)>]) -> Vec<Polynomial<PrimeField>> {
    g.iter()
        .map(|ts| r.from_terms(ts.iter().map(|(e, c)| (Monomial::from_exps(e), r.field().from_i64(*c)))))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gb_is_canonical_and_satisfies_criterion(g in arb_gens(), seed in 0usize..6) {
        let r = ring(&["x", "y", "z"], &[1, 2, 1]);
        let gens = build(&r, &g);
        let a = IdealHandle::in_poly_ring(&r, gens.clone()).unwrap().with_budget(20_000);
        let mut perm = gens.clone();
        perm.rotate_left(seed % gens.len().max(1));
        perm.reverse();
        let b = IdealHandle::in_poly_ring(&r, perm).unwrap().with_budget(20_000);
        let (ga, gb) = (a.groebner_basis(), b.groebner_basis());
        prop_assume!(ga.is_ok() && gb.is_ok());
        prop_assert_eq!(ga.unwrap(), gb.unwrap());
        prop_assert!(s_pairs_reduce_to_zero(a.groebner_basis().unwrap()));
    }

    #[test]
    fn membership_of_combinations(g in arb_gens(), r1 in prop::collection::vec(0u16..3, 3), c in 1i64..9) {
        let r = ring(&["x", "y", "z"], &[1, 1, 1]);
        let gens = build(&r, &g);
        let i = IdealHandle::in_poly_ring(&r, gens.clone()).unwrap().with_budget(20_000);
        prop_assume!(i.groebner_basis().is_ok());
        let mult = r.term(Monomial::from_exps(&r1), r.field().from_i64(c));
        let a = &gens[0] + &(&mult * gens.last().unwrap());
        prop_assert!(i.normal_form(&a).unwrap().is_zero());
        for g in &gens {
            prop_assert!(i.contains(g).unwrap());
        }
    }

    #[test]
    fn power_is_iterated_product(e in 1u32..4, g in prop::collection::vec(prop::collection::vec(0u16..3, 2), 1..3)) {
        let r = ring(&["x", "y"], &[1, 1]);
        let gens = g.iter().map(|e| r.monomial(Monomial::from_exps(e))).collect();
        let i = IdealHandle::in_poly_ring(&r, gens).unwrap();
        let mut acc = i.clone();
        for _ in 1..e {
            acc = acc.product(&i).unwrap();
        }
        prop_assert!(i.power(e).unwrap().equals(&acc).unwrap());
    }
}
