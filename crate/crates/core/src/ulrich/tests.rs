use super::*;
use crate::field::PrimeField;
use crate::quotient::{cm_type, embedding_dim, socle_dim};
use crate::resolve::{kernel, PolyMatrix};

fn ring(vars: &[&str], w: &[u32], rels: &[&str]) -> RingPresentation<PrimeField> {
    RingPresentation::parse(PolyRing::new(PrimeField::default(), vars, w).unwrap(), rels).unwrap()
}

fn r1() -> RingPresentation<PrimeField> {
    ring(&["X", "Y", "Z", "W"], &[6, 11, 16, 26], &["X^7 - Z*W", "Y^2 - X*Z", "Z^2 - X*W", "W^2 - X^6*Z"])
}

fn b210(w: &[u32], f: &str, g: &str, h: &str, f1: Option<&str>) -> FghFamily<PrimeField> {
    let s = PolyRing::new(PrimeField::default(), &["X", "Y", "Z"], w).unwrap();
    let p = |t: &str| s.parse(t).unwrap();
    let f1 = f1.map(p);
    family_b210(&s, &p(f), &p(g), &p(h), f1.as_ref()).unwrap()
}

/// `(gens)/(sub)` as a module over `R/I`, presented on `gens`.
fn quotient_module(
    i: &IdealHandle<PrimeField>,
    gens: &[Polynomial<PrimeField>],
    sub: &[Polynomial<PrimeField>],
) -> PresentedModule<PrimeField> {
    let r = i.ring();
    let s = r.ambient();
    let mut row: Vec<_> = gens.to_vec();
    row.extend(sub.iter().cloned());
    let degs: Vec<i64> = row.iter().map(|p| p.homogeneous_degree().unwrap() as i64).collect();
    let m = PolyMatrix::from_rows(s, vec![row]).unwrap();
    let (k, _) = kernel(r, &m, &[0], &degs, 1_000_000).unwrap();
    let cols: Vec<Vec<_>> = k.into_iter().map(|c| c[..gens.len()].to_vec()).collect();
    let residue = r.with_relations(i.generators()).unwrap();
    let rel = PolyMatrix::from_columns(s, gens.len(), cols).unwrap();
    PresentedModule::new(&residue, degs[..gens.len()].to_vec(), rel).unwrap()
}

#[test]
fn parameter_ideals() {
    let r = r1();
    assert!(is_parameter_ideal(&IdealHandle::parse(&r, "X").unwrap(), 1).unwrap());
    let p = ring(&["x", "y"], &[1, 1], &[]);
    assert!(!is_parameter_ideal(&IdealHandle::parse(&p, "x*y").unwrap(), 2).unwrap());
    assert!(is_parameter_ideal(&IdealHandle::parse(&p, "x; y").unwrap(), 2).unwrap());
    assert!(!is_parameter_ideal(&IdealHandle::parse(&p, "x*y; x^2").unwrap(), 2).unwrap());
}

#[test]
fn r1_instance() {
    let r = r1();
    let i = IdealHandle::parse(&r, "X; Z; W").unwrap();
    let q = IdealHandle::parse(&r, "X").unwrap();
    let rep = is_ulrich(&i, &q, 1).unwrap();
    assert!(rep.is_ulrich);
    assert!(rep.q_is_parameter_reduction);
    assert_eq!((rep.length_r_mod_i, rep.mu_i, rep.length_i_mod_q), (2, 3, 4));
    assert!(rep.residue_complete_intersection);
    assert!(rep.residue_gorenstein);
    // I = q : I
    assert!(q.colon(&i).unwrap().equals(&i).unwrap());

    let s = check_structure_conditions(&i, &q).unwrap();
    assert!(s.passed);
    assert_eq!(s.i_mod_q_rank, 2);

    let t = type_relation_check(&i, &q, 1).unwrap();
    assert_eq!((t.lhs, t.rhs, t.equal), (2, 2, true));
    // Gorenstein residue: μ(I) = d + r(R)
    assert_eq!(rep.mu_i, 1 + t.type_r);

    // I/q and I/I² as modules over R/I
    let gens = i.generators().to_vec();
    let iq = quotient_module(&i, &gens, q.generators());
    assert_eq!(is_free_module(&iq).unwrap().rank, Some(2));
    let i2 = i.power(2).unwrap();
    let ii2 = quotient_module(&i, &gens, i2.generators());
    assert_eq!(is_free_module(&ii2).unwrap().rank, Some(3));
}

#[test]
fn equal_ideals_are_not_ulrich() {
    let r = r1();
    let q = IdealHandle::parse(&r, "X").unwrap();
    let rep = is_ulrich(&q, &q, 1).unwrap();
    assert!(!rep.i_not_q);
    assert!(!rep.is_ulrich);
    let i = IdealHandle::parse(&r, "Z; W").unwrap();
    assert!(matches!(is_ulrich(&i, &q, 1), Err(CakError::Precondition(_))));
}

#[test]
fn b210_instances() {
    let fam = b210(&[1, 1, 1], "X", "Y", "Z", None);
    assert!(fam.report.is_ulrich);
    assert!(fam.report.residue_complete_intersection);
    assert_eq!((fam.report.length_r_mod_i, fam.report.length_i_mod_q), (1, 2));
    let cert = is_ulrich(&fam.ideal, &IdealHandle::parse(fam.ring.presentation(), "X").unwrap(), 1).unwrap();
    assert_eq!(cert, fam.report);

    let fam = b210(&[1, 2, 2], "X^2", "Y", "Z", Some("X"));
    assert!(fam.report.is_ulrich && fam.report.residue_complete_intersection);
    let f = fam.factor_report.unwrap();
    assert!(f.is_ulrich && f.residue_complete_intersection);
    assert_eq!(f.length_i_mod_q, 2 * f.length_r_mod_i);

    let fam = b210(&[6, 3, 2], "X", "Y^2", "Z^3", None);
    assert!(fam.report.is_ulrich && fam.report.residue_complete_intersection);
    assert_eq!((fam.report.length_r_mod_i, fam.report.length_i_mod_q), (6, 12));
}

#[test]
fn b210_needs_three_dimensions() {
    let s = PolyRing::standard(PrimeField::default(), &["X", "Y"]).unwrap();
    let x = s.var(0);
    let y = s.var(1);
    let err = family_b210(&s, &x, &y, &(&x + &y), None).unwrap_err();
    assert!(matches!(err, CakError::NotRegularSequence(_)));
}

#[test]
fn structure_conditions() {
    let (r, i) = model_ring_a26(PrimeField::default(), 2, 3).unwrap();
    let q = IdealHandle::new(r.presentation(), Vec::new()).unwrap();
    let s = check_structure_conditions(&i, &q).unwrap();
    assert!(s.condition_i && s.condition_ii);
    assert_eq!(s.i_mod_q_rank, 2);

    let r = ring(&["x", "y"], &[1, 1], &["x^3", "x*y", "y^3"]);
    let m = IdealHandle::parse(&r, "x; y").unwrap();
    let q = IdealHandle::parse(&r, "x").unwrap();
    let s = check_structure_conditions(&m, &q).unwrap();
    assert!(!s.i2_in_q);
    assert!(!s.condition_i);
    assert!(s.residue_complete_intersection);
}

#[test]
fn type_relation_on_hypersurface() {
    let r = ring(&["x", "y"], &[1, 1], &["y^2"]);
    let i = IdealHandle::parse(&r, "x; y").unwrap();
    let q = IdealHandle::parse(&r, "x").unwrap();
    let t = type_relation_check(&i, &q, 1).unwrap();
    assert_eq!((t.lhs, t.rhs, t.equal), (1, 1, true));
}

#[test]
fn model_rings() {
    let f = PrimeField::default();
    let (r, i) = model_ring_a26(f.clone(), 1, 1).unwrap();
    assert_eq!(r.algebra().unwrap().dim(), 2);
    assert_eq!(i.generators().len(), 1);
    for (rr, v) in [(2usize, 3usize), (2, 2), (3, 3), (1, 3)] {
        let (r, i) = model_ring_a26(f.clone(), rr, v).unwrap();
        let total = r.algebra().unwrap().dim();
        let lri = i.colength().unwrap();
        assert_eq!(total - lri, rr * lri, "ℓ(I) = r·ℓ(R/I)");
        assert!(i.power(2).unwrap().is_zero().unwrap());
        assert_eq!(embedding_dim(&r).unwrap(), rr);
        if rr == v {
            assert_eq!(socle_dim(&r).unwrap(), rr);
            assert_eq!(cm_type(&r, &[]).unwrap(), rr);
        }
    }
    assert!(model_ring_a26(f, 3, 2).is_err());
}

#[test]
fn ci_residue_bound() {
    // r(R) + d ≤ v on certified instances with complete-intersection residue
    let r = r1();
    let i = IdealHandle::parse(&r, "X; Z; W").unwrap();
    let q = IdealHandle::parse(&r, "X").unwrap();
    let t = type_relation_check(&i, &q, 1).unwrap();
    let qr = QuotientRing::new(r).unwrap();
    assert!(t.type_r + 1 <= embedding_dim(&qr).unwrap());
}

#[test]
fn ar_checker_basics() {
    let r = QuotientRing::new(ring(&["X"], &[1], &["X^2"])).unwrap();
    let free = PresentedModule::free(r.presentation(), vec![0]);
    let v = ar_instance_check(&r, &free, 10).unwrap();
    assert_eq!(v.classification, ArClassification::ConsistentFree);
    assert!(v.module_free);
    let k = PresentedModule::residue_field(r.presentation());
    let v = ar_instance_check(&r, &k, 10).unwrap();
    assert_eq!(v.classification, ArClassification::HypothesisFails);
    assert_eq!(v.first_nonvanishing, Some(Nonvanishing { i: 1, which: ExtTarget::Module }));

    let r = QuotientRing::new(ring(&["Y", "Z", "W"], &[1, 1, 1], &["Y^2", "Y*Z", "Z^2", "W^2"])).unwrap();
    let w = PresentedModule::cyclic(r.presentation(), &[r.presentation().ambient().var(2)]).unwrap();
    let v = ar_instance_check(&r, &w, 10).unwrap();
    assert_ne!(v.classification, ArClassification::ConsistentFree);
    let json = serde_json::to_string(&v).unwrap();
    assert_eq!(serde_json::from_str::<ArVerdict>(&json).unwrap(), v);
}
