use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

use cak_core::polyring::RingFile;
use cak_core::semigroup::{semigroup_ring, toric_ideal};
use cak_core::{IdealHandle, NumericalSemigroup, PrimeField};

fn cak(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cak")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_out(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = cak(&all);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}{}", stdout(&o), stderr(&o)));
    (code(&o), v)
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const XYZ: &str = r#"{"field":{"kind":"fp","p":32003},"vars":["x","y","z"],"weights":[1,1,1],"relations":[]}"#;
const DUAL: &str = r#"{"field":{"kind":"q"},"vars":["X"],"weights":[1],"relations":["X^2"]}"#;

#[test]
fn gb_matches_library() {
    let dir = TempDir::new().unwrap();
    let ring = write(&dir, "r.json", XYZ);
    let (c, v) = json_out(&["--ring", s(&ring), "gb", "--gens", "x^2 - y; x*y"]);
    assert_eq!(c, 0);
    let file: RingFile = serde_json::from_str(XYZ).unwrap();
    let r = file.build(PrimeField::default()).unwrap();
    let gb: Vec<String> =
        IdealHandle::parse(&r, "x^2 - y; x*y").unwrap().groebner_basis().unwrap().iter().map(|p| p.to_string()).collect();
    assert_eq!(v["groebner_basis"], json!(gb));
}

#[test]
fn nf_and_ideal_ops() {
    let dir = TempDir::new().unwrap();
    let ring = write(&dir, "r.json", XYZ);
    let r = s(&ring);
    let (_, v) = json_out(&["--ring", r, "nf", "--gens", "x - y", "--poly", "x^2 + z"]);
    assert_eq!(v["normal_form"], "y^2 + z");
    let (c, v) = json_out(&["--ring", r, "ideal-op", "--gens", "x; y", "--op", "contains", "--other", "x*y"]);
    assert_eq!((c, v["result"].clone()), (0, json!(true)));
    let (c, _) = json_out(&["--ring", r, "ideal-op", "--gens", "x*y", "--op", "equal", "--other", "x; y"]);
    assert_eq!(c, 1);
    let (_, v) = json_out(&["--ring", r, "ideal-op", "--gens", "x; y", "--op", "intersection", "--other", "y; z"]);
    assert_eq!(v["result"], json!(["y", "x*z"]));
    let (_, v) = json_out(&["--ring", r, "ideal-op", "--gens", "x; y; z", "--op", "colength"]);
    assert_eq!(v["colength"], 1);
    let o = cak(&["--ring", r, "ideal-op", "--gens", "x", "--op", "power"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn kernel_of_semigroup_map() {
    let dir = TempDir::new().unwrap();
    let ring = write(
        &dir,
        "r1.json",
        r#"{"field":{"kind":"fp","p":32003},"vars":["X","Y","Z","W"],"weights":[6,11,16,26],"relations":[]}"#,
    );
    let (c, v) = json_out(&["--ring", s(&ring), "kernel", "--images", "t^6; t^11; t^16; t^26"]);
    assert_eq!(c, 0);
    let p = toric_ideal(PrimeField::default(), &NumericalSemigroup::new(vec![6, 11, 16, 26]).unwrap()).unwrap();
    let got: Vec<String> = serde_json::from_value(v["kernel"].clone()).unwrap();
    let got = IdealHandle::parse(p.ring(), &got.join("; ")).unwrap();
    assert!(got.equals(&p).unwrap());
}

#[test]
fn resolve_reports_triples() {
    let dir = TempDir::new().unwrap();
    let ring = write(&dir, "r.json", XYZ);
    let (c, v) = json_out(&["--ring", s(&ring), "resolve", "--gens", "x; y; z"]);
    assert_eq!(c, 0);
    assert_eq!(v["betti"], json!([[0, 0, 1], [1, 1, 3], [2, 2, 3], [3, 3, 1]]));
    assert_eq!(v["complete"], true);
    let (_, v) = json_out(&["--ring", s(&ring), "resolve", "--gens", "x; y; z", "--max-length", "1"]);
    assert_eq!(v["complete"], false);
    let o = cak(&["--ring", s(&ring), "betti", "--gens", "x^2; y^2; x*z"]);
    assert!(stdout(&o).contains("total: 1 3 3 1"), "{}", stdout(&o));
}

#[test]
fn complexes_verify() {
    let dir = TempDir::new().unwrap();
    let ring = write(&dir, "r.json", XYZ);
    let (c, v) = json_out(&["--ring", s(&ring), "en", "--matrix", "x, y, z; y, z, x", "--verify"]);
    assert_eq!(c, 0);
    assert_eq!(v["ranks"], json!([1, 3, 2]));
    let (c, v) = json_out(&["--ring", s(&ring), "koszul", "--elems", "x; y^2; z^3", "--verify"]);
    assert_eq!(c, 0);
    assert_eq!(v["ranks"], json!([1, 3, 3, 1]));
    let (c, v) = json_out(&["betti-formula", "4", "2", "1"]);
    assert_eq!((c, v), (0, json!([1, 4, 5, 2])));
}

#[test]
fn semigroup_emit_ring_round_trips() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("ring.json");
    let (c, v) = json_out(&["semigroup", "6", "11", "16", "26", "--emit-ring", s(&out)]);
    assert_eq!(c, 0);
    assert_eq!(v["frobenius"], 31);
    let file: RingFile = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let inline: RingFile = serde_json::from_value(v["ring"].clone()).unwrap();
    assert_eq!(file, inline);
    let lib = semigroup_ring(PrimeField::default(), &NumericalSemigroup::new(vec![6, 11, 16, 26]).unwrap()).unwrap();
    assert_eq!(file, RingFile::from_presentation(&lib));

    let (c, v) = json_out(&["--ring", s(&out), "ulrich", "--ideal", "X; Z; W", "--reduction", "X", "--dim", "1"]);
    assert_eq!(c, 0);
    assert_eq!((v["length_r_mod_i"].clone(), v["mu_i"].clone(), v["length_i_mod_q"].clone()), (json!(2), json!(3), json!(4)));
    let (c, _) = json_out(&["--ring", s(&out), "ulrich", "--ideal", "X; Y; Z; W", "--reduction", "X", "--dim", "1"]);
    assert_eq!(c, 1);
    let o = cak(&["--ring", s(&out), "ulrich", "--ideal", "X; Z; W", "--reduction", "X; Z", "--dim", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn semigroup_membership() {
    let (c, v) = json_out(&["semigroup", "6", "11", "16", "26", "--member", "22"]);
    assert_eq!(c, 0);
    assert_eq!(v["membership"][0]["member"], true);
    let (c, v) = json_out(&["semigroup", "6", "11", "16", "26", "--member", "31"]);
    assert_eq!(c, 1);
    assert_eq!(v["membership"][0]["witness"], Value::Null);
    assert_eq!(code(&cak(&["semigroup", "4", "6"])), 2);
}

#[test]
fn family_and_det_reduce_exit_codes() {
    let (c, v) = json_out(&["family-2x3", "--n", "6"]);
    assert_eq!((c, v["match"].clone()), (0, json!(true)));
    let (c, v) = json_out(&["family-2x3", "--n", "9"]);
    assert_eq!((c, v["match"].clone()), (1, json!(false)));
    assert!(v["diagnostic"].as_str().unwrap().contains("X*Y^2"));
    assert_eq!(code(&cak(&["family-2x3", "--n", "5"])), 2);
    let (c, v) = json_out(&["det-reduce", "--s", "2", "--t", "3"]);
    assert_eq!(c, 0);
    assert_eq!(v["forms"], json!(["x11 - x22", "x12 - x23", "x13", "x21"]));
    assert_eq!(code(&cak(&["det-reduce", "--s", "3", "--t", "4"])), 2);
}

#[test]
fn minors_order() {
    let dir = TempDir::new().unwrap();
    let ring = write(&dir, "r.json", XYZ);
    let (_, v) = json_out(&["--ring", s(&ring), "minors", "--matrix", "x, y, z; y, z, x", "--size", "2"]);
    assert_eq!(v["minors"], json!(["-y^2 + x*z", "x^2 - y*z", "x*y - z^2"]));
}

#[test]
fn artinian_invariants() {
    let dir = TempDir::new().unwrap();
    let ring = write(&dir, "dual.json", DUAL);
    let k = write(&dir, "k.json", r#"{"ambient_twists":[0],"relations":[["X"]]}"#);
    let (r, k) = (s(&ring), s(&k));
    let (_, v) = json_out(&["--ring", r, "ext", "--module", k, "--against", "ring", "--bound", "4"]);
    assert_eq!(v["dims"], json!([0, 0, 0, 0]));
    let (_, v) = json_out(&["--ring", r, "tor", "--module", k, "--bound", "3"]);
    assert_eq!(v["dims"], json!([1, 1, 1]));
    let (_, v) = json_out(&["--ring", r, "ext", "--module", k, "--against", "k", "--bound", "2"]);
    assert_eq!(v["dims"], json!([1, 1]));
    assert_eq!(json_out(&["--ring", r, "socle"]).1["socle_dim"], 1);
    assert_eq!(json_out(&["--ring", r, "embdim"]).1["embedding_dim"], 1);
    let (c, v) = json_out(&["--ring", r, "ar-check", "--module", k, "--bound", "3"]);
    assert_eq!((c, v["classification"].clone()), (0, json!("hypothesis_fails")));
    assert_eq!(v["first_nonvanishing"]["i"], 1);
}

#[test]
fn load_errors() {
    let dir = TempDir::new().unwrap();
    let w0 = write(&dir, "w0.json", r#"{"field":{"kind":"fp","p":32003},"vars":["x","y"],"weights":[1,0],"relations":[]}"#);
    let o = cak(&["--ring", s(&w0), "embdim"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("weights must be positive"), "{}", stderr(&o));

    let inhom =
        write(&dir, "nh.json", r#"{"field":{"kind":"fp","p":32003},"vars":["x","y"],"weights":[1,1],"relations":["x^2 - y"]}"#);
    let o = cak(&["--ring", s(&inhom), "embdim"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("x^2 - y"), "{}", stderr(&o));

    let schema = write(&dir, "bad.json", r#"{"field":{"kind":"fp","p":32003},"vars":["x"],"weights":["one"],"relations":[]}"#);
    let o = cak(&["--ring", s(&schema), "embdim"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("/weights/0"), "{}", stderr(&o));

    assert_eq!(code(&cak(&["gb", "--gens", "x"])), 2);
    assert_eq!(code(&cak(&["--ring", "/nonexistent.json", "embdim"])), 2);
}

#[test]
fn budget_exhaustion_exits_3() {
    let dir = TempDir::new().unwrap();
    let ring = write(&dir, "r.json", XYZ);
    let o = cak(&["--ring", s(&ring), "--budget", "3", "gb", "--gens", "x^3 - y*z; y^3 - x*z; z^3 - x*y; x^2*y - z^3"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
}

#[test]
fn verify_paper_filters() {
    let (c, v) = json_out(&["verify-paper", "--filter", "c0[1-3]*"]);
    assert_eq!(c, 0);
    let ids: Vec<&str> = v["report"]["cases"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["c01_semigroup_ring_resolution", "c02_betti_formula", "c03_toric_kernel"]);
    assert!(v["timing"]["c01_semigroup_ring_resolution"].is_number());

    let o = cak(&["verify-paper", "--filter", "nothing*"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("matches no case"));

    let (c, _) = json_out(&["verify-paper", "--filter", "c09_family_2x3_n9"]);
    assert_eq!(c, 1);
}

#[test]
fn verify_paper_is_deterministic() {
    let (_, a) = json_out(&["--workers", "1", "verify-paper", "--filter", "c1*"]);
    let (_, b) = json_out(&["--workers", "3", "verify-paper", "--filter", "c1*"]);
    assert_eq!(a["report"], b["report"]);
}
