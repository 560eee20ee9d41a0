//! Subcommand definitions and their library calls.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use cak_core::complexes::{eagon_northcott, koszul_complex, theorem_betti_formula, verify_resolution};
use cak_core::detring::{det_reduction_sequence, generic_matrix_ring, minors, MinorSpec};
use cak_core::groebner::{IdealOp, IdealOpResult, RingMap};
use cak_core::polyring::{parse_poly_list, RingFile};
use cak_core::quotient::{cm_type, embedding_dim, ext_dims, socle_dim, tor_dims, DEFAULT_BOUND};
use cak_core::resolve::minimal_free_resolution;
use cak_core::semigroup::{family_2x3_semigroup, semigroup_membership, semigroup_ring};
use cak_core::ulrich::{ar_instance_check, is_ulrich, ArClassification};
use cak_core::{
    ChainComplex, Field, IdealHandle, NumericalSemigroup, PolyMatrix, PolyRing, PresentedModule, PrimeField,
    QuotientRing, RingPresentation,
};

use crate::io::{ideal_arg, load_module, load_ring, ring_from_file, AnyRing, CliError, CliResult};
use crate::suite::{run_verify_paper, DEFAULT_SEED};
use crate::with_ring;

#[derive(Parser, Debug)]
#[command(name = "cak", version, about = "Exact commutative algebra: Gröbner bases, resolutions, Ext/Tor, Ulrich ideals")]
pub struct Cli {
    /// Ring file (JSON)
    #[arg(long, global = true, value_name = "FILE")]
    pub ring: Option<PathBuf>,
    /// Print machine-readable JSON
    #[arg(long, global = true)]
    pub json: bool,
    /// Maximum number of pair reductions per Gröbner computation
    #[arg(long, global = true, value_name = "N")]
    pub budget: Option<u64>,
    /// Seed for randomized sampling
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads for verify-paper (default: available cores)
    #[arg(long, global = true, value_name = "N")]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpKind {
    Sum,
    Product,
    Power,
    Intersection,
    Colon,
    Equal,
    Contains,
    Eliminate,
    Colength,
    MinimalGenerators,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced Gröbner basis of an ideal
    Gb {
        #[arg(long)]
        gens: String,
    },
    /// Normal form of a polynomial modulo an ideal
    Nf {
        #[arg(long)]
        gens: String,
        #[arg(long)]
        poly: String,
    },
    /// Ideal arithmetic and comparisons
    IdealOp {
        #[arg(long)]
        gens: String,
        #[arg(long, value_enum)]
        op: OpKind,
        /// Second ideal for binary operations
        #[arg(long)]
        other: Option<String>,
        #[arg(long)]
        exp: Option<u32>,
        /// Comma-separated variables to eliminate
        #[arg(long)]
        drop: Option<String>,
    },
    /// Kernel of the map sending the ring variables to the given images
    Kernel {
        #[arg(long)]
        images: String,
        /// Target ring file; default is a polynomial ring in --target-vars
        #[arg(long, value_name = "FILE")]
        target: Option<PathBuf>,
        #[arg(long, default_value = "t")]
        target_vars: String,
        /// Comma-separated weights of the target variables (default 1)
        #[arg(long)]
        target_weights: Option<String>,
    },
    /// Minimal free resolution of R/(gens) or of a module file
    Resolve {
        #[arg(long)]
        gens: Option<String>,
        #[arg(long, value_name = "FILE")]
        module: Option<PathBuf>,
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Betti table of the minimal free resolution
    Betti {
        #[arg(long)]
        gens: Option<String>,
        #[arg(long, value_name = "FILE")]
        module: Option<PathBuf>,
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Ranks from the closed Betti formula
    BettiFormula { v: u64, r: u64, d: u64 },
    /// Koszul complex of a list of elements
    Koszul {
        #[arg(long)]
        elems: String,
        /// Check that it resolves R/(elems)
        #[arg(long)]
        verify: bool,
    },
    /// Eagon–Northcott complex of a matrix
    En {
        #[arg(long)]
        matrix: String,
        /// Check that it resolves the quotient by the maximal minors
        #[arg(long)]
        verify: bool,
    },
    /// Dimensions of Ext^i(M, N) for i = 1..bound
    Ext {
        #[arg(long, value_name = "FILE")]
        module: PathBuf,
        /// self, ring, k, or a module file
        #[arg(long, default_value = "self")]
        against: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Dimensions of Tor_i(M, N) for i = 1..bound
    Tor {
        #[arg(long, value_name = "FILE")]
        module: PathBuf,
        #[arg(long, default_value = "self")]
        against: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Cohen–Macaulay type with respect to a regular sequence of parameters
    Type {
        #[arg(long)]
        params: String,
    },
    /// Embedding dimension
    Embdim,
    /// Socle dimension of an Artinian ring
    Socle,
    /// Certify an Ulrich ideal with respect to a reduction
    Ulrich {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        reduction: String,
        #[arg(long)]
        dim: usize,
    },
    /// Bounded Auslander–Reiten instance check
    ArCheck {
        #[arg(long, value_name = "FILE")]
        module: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Numerical semigroup data and its ring
    Semigroup {
        #[arg(required = true)]
        generators: Vec<u64>,
        /// Write the semigroup ring as a ring file
        #[arg(long, value_name = "FILE")]
        emit_ring: Option<PathBuf>,
        /// Test membership of these integers
        #[arg(long)]
        member: Vec<u64>,
    },
    /// The semigroup <10, 14, 16, 2n+1> against 2x3 minors plus W^2 - f
    #[command(name = "family-2x3")]
    Family2x3 {
        #[arg(long)]
        n: u64,
    },
    /// Minors of a matrix
    Minors {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        size: usize,
    },
    /// Linear reduction of the generic s x t determinantal ideal
    DetReduce {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
    /// Run the verification suite
    VerifyPaper {
        /// Glob on case ids, e.g. "c09_*"
        #[arg(long)]
        filter: Option<String>,
    },
}

/// Result of a command: JSON value, human text, and whether the
/// mathematical verdict is positive.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub value: Value,
    pub text: String,
    pub ok: bool,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn new(value: Value) -> Self {
        let text = render(&value);
        Outcome { value, text, ok: true, warnings: Vec::new() }
    }

    fn verdict(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    fn text(mut self, text: String) -> Self {
        self.text = text;
        self
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// `key: value` lines for an object, strings unquoted.
pub fn render(v: &Value) -> String {
    let one = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    match v {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {}\n", one(v))).collect(),
        Value::Array(items) => items.iter().map(|v| format!("{}\n", one(v))).collect(),
        other => format!("{}\n", one(other)),
    }
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|p| p.to_string()).collect()
}

fn lines(v: &[String]) -> String {
    v.iter().map(|s| format!("{s}\n")).collect()
}

fn require_ring(cli: &Cli) -> CliResult<AnyRing> {
    let path = cli.ring.as_ref().ok_or_else(|| CliError::Usage("this command needs --ring FILE".into()))?;
    load_ring(path)
}

fn quotient<F: Field>(r: &RingPresentation<F>) -> CliResult<QuotientRing<F>> {
    Ok(QuotientRing::new(r.clone())?)
}

fn complex_value<F: Field>(c: &ChainComplex<F>) -> Value {
    json!({ "betti": c.betti_table(), "ranks": c.ranks(), "complete": c.is_complete() })
}

fn resolution_input<F: Field>(
    r: &RingPresentation<F>,
    gens: Option<&str>,
    module: Option<&Path>,
) -> CliResult<PresentedModule<F>> {
    match (gens, module) {
        (Some(g), None) => Ok(PresentedModule::cyclic(r, &parse_poly_list(g, r.ambient())?)?),
        (None, Some(p)) => load_module(r, p),
        _ => Err(CliError::Usage("give exactly one of --gens and --module".into())),
    }
}

fn against<F: Field>(r: &RingPresentation<F>, m: &PresentedModule<F>, spec: &str) -> CliResult<PresentedModule<F>> {
    Ok(match spec {
        "self" => m.clone(),
        "ring" => PresentedModule::free(r, vec![0]),
        "k" => PresentedModule::residue_field(r),
        path => load_module(r, Path::new(path))?,
    })
}

fn ideal_op<F: Field>(r: &RingPresentation<F>, gens: &str, op: OpKind, other: Option<&str>, exp: Option<u32>, drop: Option<&str>) -> CliResult<Outcome> {
    let i = ideal_arg(r, gens)?;
    let other = || -> CliResult<IdealHandle<F>> {
        let text = other.ok_or_else(|| CliError::Usage(format!("{op:?} needs --other")))?;
        ideal_arg(r, text)
    };
    let ideal_out = |j: IdealHandle<F>| -> CliResult<Outcome> {
        let gb = strings(j.groebner_basis()?);
        Ok(Outcome::new(json!({ "result": gb })).text(lines(&gb)))
    };
    let o;
    let res = match op {
        OpKind::Sum => IdealOp::Sum({ o = other()?; &o }),
        OpKind::Product => IdealOp::Product({ o = other()?; &o }),
        OpKind::Intersection => IdealOp::Intersection({ o = other()?; &o }),
        OpKind::Colon => IdealOp::Colon({ o = other()?; &o }),
        OpKind::Equal => IdealOp::Equal({ o = other()?; &o }),
        OpKind::Contains => IdealOp::Contains({ o = other()?; &o }),
        OpKind::Power => IdealOp::Power(exp.ok_or_else(|| CliError::Usage("power needs --exp".into()))?),
        OpKind::Eliminate => {
            let names: Vec<&str> = drop.unwrap_or("").split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            return ideal_out(i.eliminate_named(&names)?);
        }
        OpKind::Colength => return Ok(Outcome::new(json!({ "colength": i.colength()? }))),
        OpKind::MinimalGenerators => {
            let g = strings(&i.minimal_generators()?);
            return Ok(Outcome::new(json!({ "result": g })).text(lines(&g)));
        }
    };
    match i.ideal_op(res)? {
        IdealOpResult::Ideal(j) => ideal_out(j),
        IdealOpResult::Bool(b) => Ok(Outcome::new(json!({ "result": b })).verdict(b)),
    }
}

fn kernel<F: Field>(src: &RingPresentation<F>, tgt: &RingPresentation<F>, images: &str) -> CliResult<Outcome> {
    let imgs = parse_poly_list(images, tgt.ambient())?;
    let phi = RingMap::new(src.clone(), tgt.clone(), imgs)?;
    let k = phi.kernel()?;
    let gens = match k.minimal_generators() {
        Ok(g) => g,
        Err(_) => k.groebner_basis()?.to_vec(),
    };
    let g = strings(&gens);
    Ok(Outcome::new(json!({ "kernel": g })).text(lines(&g)))
}

fn default_target<F: Field>(field: F, vars: &str, weights: Option<&str>) -> CliResult<RingPresentation<F>> {
    let names: Vec<&str> = vars.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let weights: Vec<u32> = match weights {
        None => vec![1; names.len()],
        Some(w) => w
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("bad weight `{x}`"))))
            .collect::<CliResult<_>>()?,
    };
    Ok(RingPresentation::polynomial(PolyRing::new(field, &names, &weights)?))
}

fn resolve_cmd<F: Field>(r: &RingPresentation<F>, gens: Option<&str>, module: Option<&Path>, max_length: Option<usize>) -> CliResult<Outcome> {
    let m = resolution_input(r, gens, module)?;
    let c = minimal_free_resolution(&m, max_length)?;
    let text = format!("{}complete: {}\n", c.betti_table(), c.is_complete());
    Ok(Outcome::new(complex_value(&c)).text(text))
}

fn complex_cmd<F: Field>(r: &RingPresentation<F>, c: ChainComplex<F>, target: Option<PresentedModule<F>>) -> CliResult<Outcome> {
    let mut v = complex_value(&c);
    let mut ok = true;
    let mut text = format!("ranks: {:?}\n{}", c.ranks(), c.betti_table());
    if let Some(t) = target {
        let rep = verify_resolution(&c, &t)?;
        ok = rep.passed;
        text.push_str(&format!("resolution: {}\n", if rep.passed { "verified" } else { "FAILED" }));
        for f in &rep.failures {
            text.push_str(&format!("  {f}\n"));
        }
        v["verification"] = to_value(&rep);
    }
    let _ = r;
    Ok(Outcome::new(v).text(text).verdict(ok))
}

fn semigroup_cmd(gens: &[u64], emit: Option<&Path>, members: &[u64]) -> CliResult<Outcome> {
    let s = NumericalSemigroup::new(gens.to_vec())?;
    let ring = semigroup_ring(PrimeField::default(), &s)?;
    let file = RingFile::from_presentation(&ring);
    if let Some(path) = emit {
        let text = serde_json::to_string_pretty(&file).expect("ring file serializes");
        std::fs::write(path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let membership: Vec<_> = members.iter().map(|&m| semigroup_membership(&s, m)).collect();
    let ok = membership.iter().all(|m| m.member);
    let v = json!({
        "generators": s.generators(), "frobenius": s.frobenius(), "genus": s.genus(), "apery": s.apery(),
        "relations": file.relations, "ring": file, "membership": membership,
    });
    let mut text = format!("generators: {:?}\nfrobenius: {}\ngenus: {}\nrelations:\n", s.generators(), s.frobenius(), s.genus());
    for r in &file.relations {
        text.push_str(&format!("  {r}\n"));
    }
    for m in &membership {
        match &m.witness {
            Some(c) => text.push_str(&format!("{} = {}\n", m.element, witness(s.generators(), c))),
            None => text.push_str(&format!("{} is not in the semigroup\n", m.element)),
        }
    }
    Ok(Outcome::new(v).text(text).verdict(ok))
}

fn witness(gens: &[u64], c: &[u64]) -> String {
    let parts: Vec<String> = gens.iter().zip(c).filter(|(_, &c)| c > 0).map(|(a, c)| format!("{c}*{a}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn verify_paper(cli: &Cli, filter: Option<&str>) -> CliResult<Outcome> {
    let workers = cli.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let run = run_verify_paper(filter, cli.seed, workers).map_err(CliError::Usage)?;
    let mut warnings = Vec::new();
    if run.report.cases.is_empty() {
        warnings.push(format!("filter {:?} matches no case", filter.unwrap_or("")));
    }
    let mut text = String::new();
    for c in &run.report.cases {
        let status = if c.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("{status}  {:<34} {:>8.3}s  {}\n", c.id, run.timing[&c.id], c.title));
        if let Some(e) = &c.error {
            text.push_str(&format!("      error: {e}\n"));
        }
        if let Some(d) = c.details.pointer("/report/diagnostic").and_then(Value::as_str) {
            text.push_str(&format!("      {d}\n"));
        }
    }
    let passed = run.report.criteria.iter().filter(|c| c.passed).count();
    text.push_str(&format!("{passed}/{} criteria passed\n", run.report.criteria.len()));
    let ok = run.report.passed;
    let mut out = Outcome::new(to_value(&run)).text(text).verdict(ok);
    out.warnings = warnings;
    Ok(out)
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> CliResult<Outcome> {
    if let Some(b) = cli.budget {
        cak_core::groebner::set_default_budget(b);
    }
    match &cli.command {
        Command::Gb { gens } => with_ring!(require_ring(cli)?, r => {
            let gb = strings(ideal_arg(&r, gens)?.groebner_basis()?);
            Ok(Outcome::new(json!({ "groebner_basis": gb })).text(lines(&gb)))
        }),
        Command::Nf { gens, poly } => with_ring!(require_ring(cli)?, r => {
            let p = r.ambient().parse(poly)?;
            let nf = ideal_arg(&r, gens)?.normal_form(&p)?.to_string();
            Ok(Outcome::new(json!({ "normal_form": nf })).text(format!("{nf}\n")))
        }),
        Command::IdealOp { gens, op, other, exp, drop } => with_ring!(require_ring(cli)?, r => {
            ideal_op(&r, gens, *op, other.as_deref(), *exp, drop.as_deref())
        }),
        Command::Kernel { images, target, target_vars, target_weights } => {
            let src = require_ring(cli)?;
            let tgt = match target {
                Some(p) => load_ring(p)?,
                None => match &src {
                    AnyRing::Fp(r) => AnyRing::Fp(default_target(r.field().clone(), target_vars, target_weights.as_deref())?),
                    AnyRing::Q(r) => AnyRing::Q(default_target(r.field().clone(), target_vars, target_weights.as_deref())?),
                },
            };
            match (&src, &tgt) {
                (AnyRing::Fp(a), AnyRing::Fp(b)) if a.field() == b.field() => kernel(a, b, images),
                (AnyRing::Q(a), AnyRing::Q(b)) => kernel(a, b, images),
                _ => Err(CliError::Usage("source and target rings have different fields".into())),
            }
        }
        Command::Resolve { gens, module, max_length } => with_ring!(require_ring(cli)?, r => {
            resolve_cmd(&r, gens.as_deref(), module.as_deref(), *max_length)
        }),
        Command::Betti { gens, module, max_length } => with_ring!(require_ring(cli)?, r => {
            let out = resolve_cmd(&r, gens.as_deref(), module.as_deref(), *max_length)?;
            let table: cak_core::BettiTable = serde_json::from_value(out.value["betti"].clone()).expect("betti table");
            Ok(out.text(table.to_string()))
        }),
        Command::BettiFormula { v, r, d } => {
            let ranks = theorem_betti_formula(*v, *r, *d)?;
            let text = format!("{}\n", strings(&ranks.0).join(" "));
            Ok(Outcome::new(to_value(&ranks)).text(text))
        }
        Command::Koszul { elems, verify } => with_ring!(require_ring(cli)?, r => {
            let e = parse_poly_list(elems, r.ambient())?;
            let c = koszul_complex(&r, &e)?;
            let target = if *verify { Some(PresentedModule::cyclic(&r, &e)?) } else { None };
            complex_cmd(&r, c, target)
        }),
        Command::En { matrix, verify } => with_ring!(require_ring(cli)?, r => {
            let m = PolyMatrix::parse(r.ambient(), matrix)?;
            let c = eagon_northcott(&r, &m)?;
            let target = if *verify {
                let k = m.rows().min(m.cols());
                let g: Vec<_> = minors(&MinorSpec::new(m.clone(), k)?)?.into_iter().filter(|p| !p.is_zero()).collect();
                Some(PresentedModule::cyclic(&r, &g)?)
            } else {
                None
            };
            complex_cmd(&r, c, target)
        }),
        Command::Ext { module, against: a, bound } => with_ring!(require_ring(cli)?, r => {
            let q = quotient(&r)?;
            let m = load_module(&r, module)?;
            let n = against(&r, &m, a)?;
            let p = ext_dims(&q, &m, &n, *bound)?;
            Ok(Outcome::new(to_value(&p)).text(format!("Ext^1..{}: {:?}\n", p.bound, p.dims)))
        }),
        Command::Tor { module, against: a, bound } => with_ring!(require_ring(cli)?, r => {
            let q = quotient(&r)?;
            let m = load_module(&r, module)?;
            let n = against(&r, &m, a)?;
            let p = tor_dims(&q, &m, &n, *bound)?;
            Ok(Outcome::new(to_value(&p)).text(format!("Tor_1..{}: {:?}\n", p.bound, p.dims)))
        }),
        Command::Type { params } => with_ring!(require_ring(cli)?, r => {
            let p = parse_poly_list(params, r.ambient())?;
            Ok(Outcome::new(json!({ "type": cm_type(&quotient(&r)?, &p)? })))
        }),
        Command::Embdim => with_ring!(require_ring(cli)?, r => {
            Ok(Outcome::new(json!({ "embedding_dim": embedding_dim(&quotient(&r)?)? })))
        }),
        Command::Socle => with_ring!(require_ring(cli)?, r => {
            Ok(Outcome::new(json!({ "socle_dim": socle_dim(&quotient(&r)?)? })))
        }),
        Command::Ulrich { ideal, reduction, dim } => with_ring!(require_ring(cli)?, r => {
            let rep = is_ulrich(&ideal_arg(&r, ideal)?, &ideal_arg(&r, reduction)?, *dim)?;
            let ok = rep.is_ulrich;
            Ok(Outcome::new(to_value(&rep)).verdict(ok))
        }),
        Command::ArCheck { module, bound } => with_ring!(require_ring(cli)?, r => {
            let m = load_module(&r, module)?;
            let v = ar_instance_check(&quotient(&r)?, &m, *bound)?;
            let ok = v.classification != ArClassification::CounterexampleCandidate;
            Ok(Outcome::new(to_value(&v)).verdict(ok))
        }),
        Command::Semigroup { generators, emit_ring, member } => semigroup_cmd(generators, emit_ring.as_deref(), member),
        Command::Family2x3 { n } => {
            let fam = family_2x3_semigroup(PrimeField::default(), *n)?;
            let ok = fam.report.matches;
            Ok(Outcome::new(to_value(&fam.report)).verdict(ok))
        }
        Command::Minors { matrix, size } => with_ring!(require_ring(cli)?, r => {
            let m = PolyMatrix::parse(r.ambient(), matrix)?;
            let g = strings(&minors(&MinorSpec::new(m, *size)?)?);
            Ok(Outcome::new(json!({ "minors": g })).text(lines(&g)))
        }),
        Command::DetReduce { s, t } => {
            let ring = generic_matrix_ring(PrimeField::default(), *s, *t)?;
            let (_, rep) = det_reduction_sequence(&ring, *s, *t)?;
            let ok = rep.verified;
            Ok(Outcome::new(to_value(&rep)).verdict(ok))
        }
        Command::VerifyPaper { filter } => verify_paper(cli, filter.as_deref()),
    }
}

/// Loads a ring from an in-memory ring file; used by tests.
pub fn ring_from_json(text: &str) -> CliResult<AnyRing> {
    let file: RingFile = crate::io::parse_json("<inline>", text)?;
    ring_from_file(&file)
}
