//! The verification suite behind `cak verify-paper`: one or more named
//! cases per acceptance criterion, run in parallel, reported as JSON.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use cak_core::complexes::{eagon_northcott, theorem_betti_formula, verify_resolution};
use cak_core::detring::{
    det_reduction_sequence, generic_matrix, generic_matrix_ring, minors, minors_ideal, power_parameter_matrix, MinorSpec,
};
use cak_core::quotient::{ext_dims, is_free_module, random_module, socle_dim, tor_dims};
use cak_core::resolve::{graded_rank_check, resolve_quotient};
use cak_core::semigroup::{family_2x3_semigroup, semigroup_ring, toric_ideal};
use cak_core::ulrich::{ar_instance_check, family_b210, is_ulrich, model_ring_a26, type_relation_check, ArClassification, ExtTarget};
use cak_core::{
    CakError, IdealHandle, NumericalSemigroup, PolyMatrix, PolyRing, PresentedModule, PrimeField, QuotientRing,
    RingPresentation,
};

pub const DEFAULT_SEED: u64 = 20240611;

type CaseFn = fn(&mut ChaCha8Rng) -> Result<(bool, Value), CakError>;

pub struct Case {
    pub id: &'static str,
    pub criterion: u8,
    pub title: &'static str,
    run: CaseFn,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub id: String,
    pub criterion: u8,
    pub title: String,
    pub passed: bool,
    pub error: Option<String>,
    pub details: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub criterion: u8,
    pub passed: bool,
    pub cases: Vec<String>,
}

/// Deterministic part of a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub filter: Option<String>,
    pub cases: Vec<CaseResult>,
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteRun {
    pub report: SuiteReport,
    /// wall-clock seconds per case id
    pub timing: BTreeMap<String, f64>,
    pub workers: usize,
}

impl SuiteRun {
    /// Summed case time for one criterion.
    pub fn criterion_seconds(&self, criterion: u8) -> f64 {
        self.report.cases.iter().filter(|c| c.criterion == criterion).map(|c| self.timing[&c.id]).sum()
    }
}

fn fp() -> PrimeField {
    PrimeField::default()
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|p| p.to_string()).collect()
}

fn r1_semigroup() -> NumericalSemigroup {
    NumericalSemigroup::new(vec![6, 11, 16, 26]).expect("minimal generators")
}

fn r1_ring() -> Result<RingPresentation<PrimeField>, CakError> {
    semigroup_ring(fp(), &r1_semigroup())
}

fn resolution_r1(_: &mut ChaCha8Rng) -> Result<(bool, Value), CakError> {
    let p = toric_ideal(fp(), &r1_semigroup())?;
    let c = resolve_quotient(&p, None)?;
    let target = PresentedModule::cyclic(p.ring(), p.generators())?;
    let report = verify_resolution(&c, &target)?;
    let ranks = c.ranks();
    let passed = ranks == [1, 4, 5, 2] && c.length() == 3 && report.passed;
    Ok((passed, json!({ "ranks": ranks, "length": c.length(), "betti": c.betti_table(), "verification": report })))
}

/// `(X1..Xr)² + (X_{r+1}..X_{v−d})` in `v` variables.
fn model_ideal(r: usize, v: usize, d: usize) -> Result<IdealHandle<PrimeField>, CakError> {
    let (q, _) = model_ring_a26(fp(), r, v - d)?;
    let names: Vec<String> = (1..=v).map(|i| format!("X{i}")).collect();
    let s = PolyRing::standard(fp(), &names)?;
    let map: Vec<usize> = (0..v - d).collect();
    let gens = q.presentation().relations().iter().map(|g| g.embed(&s, &map)).collect();
    IdealHandle::in_poly_ring(&s, gens)
}

fn betti_formula(_: &mut ChaCha8Rng) -> Result<(bool, Value), CakError> {
    let base = theorem_betti_formula(4, 2, 1)?;
    let mut passed = base.0 == [1, 4, 5, 2];
    let mut rows = Vec::new();
    for r in 1..=3usize {
        for d in 0..=1usize {
            for m in 0..=2usize {
                let v = r + d + m;
                let formula = theorem_betti_formula(v as u64, r as u64, d as u64)?;
                let c = resolve_quotient(&model_ideal(r, v, d)?, None)?;
                let computed: Vec<u64> = c.ranks().iter().map(|&x| x as u64).collect();
                let ok = computed == formula.0;
                passed &= ok;
                rows.push(json!({ "v": v, "r": r, "d": d, "formula": formula, "computed": computed, "equal": ok }));
            }
        }
    }
    Ok((passed, json!({ "formula_4_2_1": base, "instances": rows })))
}

fn toric_kernel(_: &mut ChaCha8Rng) -> Result<(bool, Value), CakError> {
    let p = toric_ideal(fp(), &r1_semigroup())?;
    let expected = IdealHandle::parse(p.ring(), "X^7 - Z*W; Y^2 - X*Z; Z^2 - X*W; W^2 - X^6*Z")?;
    let equal = p.equals(&expected)?;
    Ok((equal, json!({ "kernel": strings(&p.minimal_generators()?), "equal": equal })))
}

fn ulrich_r1(_: &mut ChaCha8Rng) -> Result<(bool, Value), CakError> {
    let r = r1_ring()?;
    let i = IdealHandle::parse(&r, "X; Z; W")?;
    let q = IdealHandle::parse(&r, "X")?;
    let rep = is_ulrich(&i, &q, 1)?;
    let passed = rep.is_ulrich && (rep.length_r_mod_i, rep.mu_i, rep.length_i_mod_q) == (2, 3, 4);
    Ok((passed, json!({ "report": rep })))
}

/// The three instances `(f, g, h)` over `k[X,Y,Z]` with their weights.
const FGH_INSTANCES: [([u32; 3], [&str; 3], Option<&str>); 3] = [
    ([1, 1, 1], ["X", "Y", "Z"], None),
    ([1, 2, 2], ["X^2", "Y", "Z"], Some("X")),
    ([6, 3, 2], ["X", "Y^2", "Z^3"], None),
];

fn fgh_instance(k: usize) -> Result<cak_core::ulrich::FghFamily<PrimeField>, CakError> {
    let (w, [f, g, h], f1) = FGH_INSTANCES[k];
    let s = PolyRing::new(fp(), &["X", "Y", "Z"], &w)?;
    let f1 = f1.map(|t| s.parse(t)).transpose()?;
    family_b210(&s, &s.parse(f)?, &s.parse(g)?, &s.parse(h)?, f1.as_ref())
}

fn ulrich_fgh(_: &mut ChaCha8Rng) -> Result<(bool, Value), CakError> {
    let mut passed = true;
    let mut rows = Vec::new();
    for k in 0..FGH_INSTANCES.len() {
        let fam = fgh_instance(k)?;
        let mut reports = vec![fam.report.clone()];
        reports.extend(fam.factor_report.clone());
        for rep in &reports {
            passed &= rep.is_ulrich && rep.residue_complete_intersection;
        }
        rows.push(json!({ "f_g_h": FGH_INSTANCES[k].1, "weights": FGH_INSTANCES[k].0, "f1": FGH_INSTANCES[k].2, "reports": reports }));
    }
    Ok((passed, json!({ "instances": rows })))
}

fn parameter_powers(_: &mut ChaCha8Rng) -> Result<(bool, Value), CakError> {
    let mut passed = true;
    let mut minors_rows = Vec::new();
    let pairs = (1..=3).flat_map(|l| (1..=3).map(move |n| (l, n))).chain([(2, 4), (4, 2)]);
    for (l, n) in pairs {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let s = PolyRing::standard(fp(), &names)?;
        let i = minors_ideal(&MinorSpec::new(power_parameter_matrix(&s, l, n)?, l)?)?;
        let q = IdealHandle::in_poly_ring(&s, s.vars())?.power(l as u32)?;
        let ok = i.equals(&q)?;
        passed &= ok;
        minors_rows.push(json!({ "l": l, "n": n, "equal": ok }));
    }
    let mut rank_rows = Vec::new();
    for n in 1..=3usize {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let s = PolyRing::standard(fp(), &names)?;
        let ring = RingPresentation::polynomial(s.clone());
        let q = IdealHandle::new(&ring, s.vars())?;
        for i in 0..=3u32 {
            let rep = graded_rank_check(&ring, &q, i)?;
            passed &= rep.matches;
            rank_rows.push(rep);
        }
    }
    Ok((passed, json!({ "minors": minors_rows, "graded_ranks": rank_rows })))
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn check_en(ring: &RingPresentation<PrimeField>, m: &PolyMatrix<PrimeField>) -> Result<(bool, Value), CakError> {
    let q = m.cols() as u64;
    let c = eagon_northcott(ring, m)?;
    let gens: Vec<_> = minors(&MinorSpec::new(m.clone(), 2)?)?.into_iter().filter(|p| !p.is_zero()).collect();
    let report = verify_resolution(&c, &PresentedModule::cyclic(ring, &gens)?)?;
    let expected: Vec<usize> = std::iter::once(1).chain((1..q).map(|k| (k * binom(q, k + 1)) as usize)).collect();
    let ok = report.passed && c.ranks() == expected;
    Ok((ok, json!({ "matrix": (0..m.rows()).map(|i| strings(&m.row(i))).collect::<Vec<_>>(), "ranks": c.ranks(), "expected": expected, "verification": report })))
}

fn eagon_northcott_cases(_: &mut ChaCha8Rng) -> Result<(bool, Value), CakError> {
    let mut passed = true;
    let mut rows = Vec::new();
    for q in 2..=4 {
        let s = generic_matrix_ring(fp(), 2, q)?;
        let (ok, v) = check_en(&RingPresentation::polynomial(s.clone()), &generic_matrix(&s, 2, q)?)?;
        passed &= ok;
        rows.push(v);
    }
    for n in 1..=3 {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let s = PolyRing::standard(fp(), &names)?;
        let (ok, v) = check_en(&RingPresentation::polynomial(s.clone()), &power_parameter_matrix(&s, 2, n)?)?;
        passed &= ok;
        rows.push(v);
    }
    Ok((passed, json!({ "complexes": rows })))
}

fn type_relations(_: &mut ChaCha8Rng) -> Result<(bool, Value), CakError> {
    let mut passed = true;
    let mut rows = Vec::new();
    let r = r1_ring()?;
    let rel = type_relation_check(&IdealHandle::parse(&r, "X; Z; W")?, &IdealHandle::parse(&r, "X")?, 1)?;
    passed &= rel.equal;
    rows.push(json!({ "instance": "semigroup ring, I = (X, Z, W)", "relation": rel }));
    for k in 0..FGH_INSTANCES.len() {
        let fam = fgh_instance(k)?;
        let rp = fam.ring.presentation();
        let f = &fam.ideal.generators()[0];
        let rel = type_relation_check(&fam.ideal, &IdealHandle::new(rp, vec![f.clone()])?, 1)?;
        passed &= rel.equal;
        rows.push(json!({ "instance": format!("{:?}", FGH_INSTANCES[k].1), "relation": rel }));
        if let Some(i1) = &fam.factor_ideal {
            let f1 = &i1.generators()[0];
            let rel = type_relation_check(i1, &IdealHandle::new(rp, vec![f1.clone()])?, 1)?;
            passed &= rel.equal;
            rows.push(json!({ "instance": format!("{:?} with f1 = {}", FGH_INSTANCES[k].1, f1), "relation": rel }));
        }
    }
    Ok((passed, json!({ "instances": rows })))
}

/// Rings and ideals with Gorenstein `R/I` for the base-change property.
const BASE_CHANGE_RINGS: [(&[&str], &[&str], &[&str]); 6] = [
    (&["X"], &["X^3"], &["X"]),
    (&["X"], &["X^3"], &["X^2"]),
    (&["X", "Y"], &["X^2", "Y^2"], &["X"]),
    (&["X", "Y"], &["X^2", "Y^2"], &["X", "Y"]),
    (&["X", "Y"], &["X^3", "X^2*Y", "X*Y^2", "Y^3"], &["X", "Y^3"]),
    (&["X", "Y"], &["X^3", "X^2*Y", "X*Y^2", "Y^3"], &["X", "Y"]),
];

const BASE_CHANGE_MODULES: usize = 20;
const BASE_CHANGE_BOUND: usize = 6;

fn qring(vars: &[&str], rels: &[&str]) -> Result<QuotientRing<PrimeField>, CakError> {
    let s = PolyRing::standard(fp(), vars)?;
    QuotientRing::new(RingPresentation::parse(s, rels)?)
}

fn ext_tor_base_change(rng: &mut ChaCha8Rng) -> Result<(bool, Value), CakError> {
    let mut passed = true;
    let mut rows = Vec::new();
    for (vars, rels, ideal) in BASE_CHANGE_RINGS {
        let r = qring(vars, rels)?;
        let rp = r.presentation();
        let i = IdealHandle::parse(rp, &ideal.join("; "))?;
        let rbar = QuotientRing::new(rp.with_relations(i.generators())?)?;
        let gorenstein = socle_dim(&rbar)? == 1;
        passed &= gorenstein;
        let targets_r = [PresentedModule::cyclic(rp, i.generators())?, PresentedModule::residue_field(rp)];
        let targets_rbar = [PresentedModule::free(rbar.presentation(), vec![0]), PresentedModule::residue_field(rbar.presentation())];
        let (mut ext_zero, mut tor_zero, mut violations) = (0, 0, 0);
        for _ in 0..BASE_CHANGE_MODULES {
            let gens = rng.gen_range(1..=2);
            let rels = rng.gen_range(0..=2);
            let m = random_module(&r, rng, gens, rels)?;
            let ext = ext_dims(&r, &m, &targets_r[0], BASE_CHANGE_BOUND)?;
            let tor = tor_dims(&r, &m, &targets_r[0], BASE_CHANGE_BOUND)?;
            if ext.vanishes() {
                ext_zero += 1;
                if !tor.vanishes() {
                    violations += 1;
                }
            }
            if tor.vanishes() {
                tor_zero += 1;
                let mbar = PresentedModule::new(rbar.presentation(), m.ambient().twists().to_vec(), m.relations().clone())?;
                for (n_r, n_bar) in targets_r.iter().zip(&targets_rbar) {
                    if ext_dims(&r, &m, n_r, BASE_CHANGE_BOUND)? != ext_dims(&rbar, &mbar, n_bar, BASE_CHANGE_BOUND)? {
                        violations += 1;
                    }
                }
            }
        }
        passed &= violations == 0;
        rows.push(json!({
            "ring": rels, "ideal": ideal, "gorenstein_quotient": gorenstein,
            "modules": BASE_CHANGE_MODULES, "ext_vanishing": ext_zero, "tor_vanishing": tor_zero, "violations": violations,
        }));
    }
    Ok((passed, json!({ "bound": BASE_CHANGE_BOUND, "instances": rows })))
}

fn family_case(n: u64) -> Result<(bool, Value), CakError> {
    let fam = family_2x3_semigroup(fp(), n)?;
    Ok((fam.report.matches, json!({ "report": fam.report })))
}

fn det_reduction_cases(_: &mut ChaCha8Rng) -> Result<(bool, Value), CakError> {
    let mut passed = true;
    let mut rows = Vec::new();
    for (s, t) in [(2, 3), (2, 4), (3, 5)] {
        let ring = generic_matrix_ring(fp(), s, t)?;
        let (_, rep) = det_reduction_sequence(&ring, s, t)?;
        passed &= rep.verified;
        rows.push(rep);
    }
    Ok((passed, json!({ "instances": rows })))
}

const AR_MODULES: usize = 20;
const AR_BOUND: usize = 10;

fn ar_case(r: QuotientRing<PrimeField>, rng: &mut ChaCha8Rng) -> Result<(bool, Value), CakError> {
    let rp = r.presentation();
    let free = ar_instance_check(&r, &PresentedModule::free(rp, vec![0]), AR_BOUND)?;
    let residue = ar_instance_check(&r, &PresentedModule::residue_field(rp), AR_BOUND)?;
    let mut passed = free.classification == ArClassification::ConsistentFree
        && residue.classification == ArClassification::HypothesisFails
        && residue.first_nonvanishing.map(|n| n.i) == Some(1);
    let mut verdicts = Vec::new();
    let mut attempts = 0;
    while verdicts.len() < AR_MODULES && attempts < 50 * AR_MODULES {
        attempts += 1;
        let gens = rng.gen_range(1..=3);
        let rels = rng.gen_range(1..=3);
        let m = random_module(&r, rng, gens, rels)?;
        if is_free_module(&m)?.free {
            continue;
        }
        let v = ar_instance_check(&r, &m, AR_BOUND)?;
        passed &= v.classification != ArClassification::ConsistentFree;
        verdicts.push(json!({
            "module": m.to_file(), "classification": v.classification,
            "first_nonvanishing": v.first_nonvanishing,
        }));
    }
    passed &= verdicts.len() == AR_MODULES;
    let which = |t: ExtTarget| verdicts.iter().filter(|v| v["first_nonvanishing"]["which"] == json!(t)).count();
    let (by_module, by_ring) = (which(ExtTarget::Module), which(ExtTarget::Ring));
    Ok((passed, json!({
        "ring": strings(rp.relations()), "free": free, "residue_field": residue,
        "random": verdicts, "first_nonzero_ext_m_m": by_module, "first_nonzero_ext_m_r": by_ring,
    })))
}

fn ar_ci_like(rng: &mut ChaCha8Rng) -> Result<(bool, Value), CakError> {
    ar_case(qring(&["Y", "Z", "W"], &["Y^2", "Y*Z", "Z^2", "W^2"])?, rng)
}

fn ar_dual_numbers(rng: &mut ChaCha8Rng) -> Result<(bool, Value), CakError> {
    ar_case(qring(&["X"], &["X^2"])?, rng)
}

macro_rules! family {
    ($name:ident, $n:expr) => {
        fn $name(_: &mut ChaCha8Rng) -> Result<(bool, Value), CakError> {
            family_case($n)
        }
    };
}

family!(family_n6, 6);
family!(family_n7, 7);
family!(family_n8, 8);
family!(family_n9, 9);
family!(family_n10, 10);
family!(family_n11, 11);

/// Every case, in criterion order.
pub fn cases() -> Vec<Case> {
    let c = |id, criterion, title, run| Case { id, criterion, title, run };
    vec![
        c("c01_semigroup_ring_resolution", 1, "resolution of k[t^6,t^11,t^16,t^26] has ranks 1,4,5,2", resolution_r1 as CaseFn),
        c("c02_betti_formula", 2, "closed Betti formula against computed resolutions", betti_formula),
        c("c03_toric_kernel", 3, "toric ideal of <6,11,16,26> by GB equality", toric_kernel),
        c("c04_ulrich_semigroup_ring", 4, "Ulrich ideal (X,Z,W) with reduction (X)", ulrich_r1),
        c("c04_ulrich_fgh_family", 4, "Ulrich ideals (f,g,h) with complete-intersection residue", ulrich_fgh),
        c("c05_parameter_powers", 5, "Q^l from banded minors and ranks of Q^i/Q^(i+1)", parameter_powers),
        c("c06_eagon_northcott", 6, "Eagon-Northcott complexes resolve maximal minors", eagon_northcott_cases),
        c("c07_type_relation", 7, "type of R against (mu(I) - d) times type of R/I", type_relations),
        c("c08_ext_tor_base_change", 8, "Ext and Tor against R/I with Gorenstein R/I", ext_tor_base_change),
        c("c09_family_2x3_n6", 9, "2x3 minors plus W^2 - f, n = 6", family_n6),
        c("c09_family_2x3_n7", 9, "2x3 minors plus W^2 - f, n = 7", family_n7),
        c("c09_family_2x3_n8", 9, "2x3 minors plus W^2 - f, n = 8", family_n8),
        c("c09_family_2x3_n9", 9, "2x3 minors plus W^2 - f, n = 9", family_n9),
        c("c09_family_2x3_n10", 9, "2x3 minors plus W^2 - f, n = 10", family_n10),
        c("c09_family_2x3_n11", 9, "2x3 minors plus W^2 - f, n = 11", family_n11),
        c("c10_det_reduction", 10, "linear reduction of generic s x t minors", det_reduction_cases),
        c("c11_ar_yzw", 11, "AR instance checks over k[Y,Z,W]/((Y,Z)^2 + W^2)", ar_ci_like),
        c("c11_ar_dual_numbers", 11, "AR instance checks over k[X]/(X^2)", ar_dual_numbers),
    ]
}

fn run_case(case: &Case, index: usize, seed: u64) -> (CaseResult, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let start = Instant::now();
    let outcome = (case.run)(&mut rng);
    let secs = start.elapsed().as_secs_f64();
    let (passed, error, details) = match outcome {
        Ok((p, d)) => (p, None, d),
        Err(e) => (false, Some(e.to_string()), Value::Null),
    };
    let result = CaseResult {
        id: case.id.to_string(),
        criterion: case.criterion,
        title: case.title.to_string(),
        passed,
        error,
        details,
    };
    (result, secs)
}

/// Runs the cases whose id matches `filter` (a glob) on `workers` threads.
pub fn run_verify_paper(filter: Option<&str>, seed: u64, workers: usize) -> Result<SuiteRun, String> {
    let pattern = filter.map(glob::Pattern::new).transpose().map_err(|e| format!("bad filter: {e}"))?;
    let all = cases();
    let selected: Vec<(usize, &Case)> =
        all.iter().enumerate().filter(|(_, c)| pattern.as_ref().map_or(true, |p| p.matches(c.id))).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().map_err(|e| e.to_string())?;
    let results: Vec<(CaseResult, f64)> =
        pool.install(|| selected.par_iter().map(|&(i, c)| run_case(c, i, seed)).collect());

    let mut criteria: BTreeMap<u8, CriterionResult> = BTreeMap::new();
    for (r, _) in &results {
        let e = criteria.entry(r.criterion).or_insert(CriterionResult { criterion: r.criterion, passed: true, cases: Vec::new() });
        e.passed &= r.passed;
        e.cases.push(r.id.clone());
    }
    let timing = results.iter().map(|(r, t)| (r.id.clone(), *t)).collect();
    let cases: Vec<CaseResult> = results.into_iter().map(|(r, _)| r).collect();
    let passed = cases.iter().all(|c| c.passed);
    let report = SuiteReport { seed, filter: filter.map(str::to_string), cases, criteria: criteria.into_values().collect(), passed };
    Ok(SuiteRun { report, timing, workers: workers.max(1) })
}
