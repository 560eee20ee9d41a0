use proptest::prelude::*;

use super::*;
use crate::field::PrimeField;

fn fp() -> PrimeField {
    PrimeField::default()
}

fn xs(n: usize) -> PolyRing<PrimeField> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    PolyRing::standard(fp(), &names).unwrap()
}

fn strs(v: &[Polynomial<PrimeField>]) -> Vec<String> {
    v.iter().map(|p| p.to_string()).collect()
}

#[test]
fn small_minors() {
    let r = xs(3);
    let m = PolyMatrix::parse(&r, "x1, x2; x3, 0").unwrap();
    assert_eq!(strs(&minors(&MinorSpec::new(m.clone(), 1).unwrap()).unwrap()), ["x1", "x2", "x3", "0"]);
    assert_eq!(strs(&minors(&MinorSpec::new(m, 2).unwrap()).unwrap()), ["-x2*x3"]);

    let m = PolyMatrix::parse(&r, "x1, x2, 0; 0, x1, x2").unwrap();
    assert_eq!(strs(&minors(&MinorSpec::new(m.clone(), 2).unwrap()).unwrap()), ["x1^2", "x1*x2", "x2^2"]);
    assert!(MinorSpec::new(m.clone(), 3).is_err());
    assert!(MinorSpec::new(m, 0).is_err());
}

#[test]
fn colex_order() {
    assert_eq!(colex_subsets(4, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]);
    assert_eq!(colex_subsets(3, 0), vec![Vec::<usize>::new()]);
}

#[test]
fn banded_matrices() {
    let r = xs(3);
    let m = power_parameter_matrix(&r, 2, 2).unwrap();
    assert_eq!(m, PolyMatrix::parse(&r, "x1, x2, 0; 0, x1, x2").unwrap());
    let m = power_parameter_matrix(&r, 1, 3).unwrap();
    assert_eq!(m, PolyMatrix::parse(&r, "x1, x2, x3").unwrap());
    let m = power_parameter_matrix(&r, 3, 2).unwrap();
    assert_eq!((m.rows(), m.cols()), (3, 4));
    assert!(matches!(power_parameter_matrix(&xs(2), 2, 3), Err(CakError::UnknownVariable(_))));
}

#[test]
fn minors_of_banded_matrix_give_powers() {
    for (l, n) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (2, 4), (4, 2)] {
        let r = xs(n);
        let i = minors_ideal(&MinorSpec::new(power_parameter_matrix(&r, l, n).unwrap(), l).unwrap()).unwrap();
        let q = IdealHandle::in_poly_ring(&r, r.vars()).unwrap().power(l as u32).unwrap();
        assert!(i.equals(&q).unwrap(), "ℓ = {l}, n = {n}");
    }
}

#[test]
fn reduction_2x3() {
    let r = generic_matrix_ring(fp(), 2, 3).unwrap();
    let (forms, rep) = det_reduction_sequence(&r, 2, 3).unwrap();
    assert_eq!(strs(&forms), ["x11 - x22", "x12 - x23", "x13", "x21"]);
    assert_eq!(rep.substituted, vec![vec!["x11", "x12", "0"], vec!["0", "x11", "x12"]]);
    assert_eq!(rep.surviving, 2);
    assert!(rep.ideals_equal && rep.regular_on_quotient && rep.count_matches && rep.verified);
}

#[test]
fn reduction_trivial_and_larger() {
    let r = generic_matrix_ring(fp(), 1, 1).unwrap();
    let (forms, rep) = det_reduction_sequence(&r, 1, 1).unwrap();
    assert!(forms.is_empty());
    assert!(rep.verified);

    for (s, t) in [(2, 4), (1, 3), (3, 5)] {
        let r = generic_matrix_ring(fp(), s, t).unwrap();
        let (forms, rep) = det_reduction_sequence(&r, s, t).unwrap();
        assert!(rep.verified, "{s}×{t}: {rep:?}");
        assert_eq!(rep.surviving, t - s + 1);
        // the substituted matrix is the banded one in the surviving variables
        let names: Vec<String> = (1..=t - s + 1).map(|j| format!("x1{j}")).collect();
        for i in 0..s {
            for j in 0..t {
                let want = if j >= i && j - i < names.len() { names[j - i].clone() } else { "0".into() };
                assert_eq!(rep.substituted[i][j], want);
            }
        }
        assert_eq!(forms.len(), s * t - (t - s + 1));
    }
    let r = generic_matrix_ring(fp(), 3, 4).unwrap();
    assert!(matches!(det_reduction_sequence(&r, 3, 4), Err(CakError::Precondition(_))));
    let r = generic_matrix_ring(fp(), 2, 2).unwrap();
    assert!(matches!(det_reduction_sequence(&r, 2, 4), Err(CakError::UnknownVariable(_))));
}

#[test]
fn generic_names() {
    assert_eq!(generic_variable_name(2, 3), "x23");
    assert_eq!(generic_variable_name(2, 11), "x2_11");
    let r = generic_matrix_ring(fp(), 2, 2).unwrap();
    assert_eq!(r.var_names(), &["x11", "x12", "x21", "x22"]);
    assert_eq!(generic_matrix(&r, 2, 2).unwrap(), PolyMatrix::parse(&r, "x11, x12; x21, x22").unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduction_form_count(s in 1usize..5, extra in 0usize..4) {
        let t = 2 * s - 1 + extra;
        let r = generic_matrix_ring(fp(), s, t).unwrap();
        let (forms, sub) = reduction_forms(&r, s, t).unwrap();
        prop_assert_eq!(forms.len(), (s - 1) * (t - s + 1) + s * t - s * (t - s + 1));
        let mut seen: Vec<String> = Vec::new();
        for i in 0..s {
            for p in sub.row(i) {
                if !p.is_zero() && !seen.contains(&p.to_string()) {
                    seen.push(p.to_string());
                }
            }
        }
        prop_assert_eq!(seen.len(), t - s + 1);
        prop_assert!(seen.iter().all(|v| v.starts_with("x1")));
    }
}
