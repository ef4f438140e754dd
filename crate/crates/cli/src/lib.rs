//! The `hhlab` command line.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use hhlab_core::acceptance::{self, CriterionReport, DEFAULT_SEED};
use hhlab_core::cech::{line_bundle_closed_form, sheaf_cohomology, SheafKind, SheafSpec};
use hhlab_core::combinatorics::binomial;
use hhlab_core::decomp::{
    characteristic_criterion, hh_affine, hh_projective, DecompositionReport, Space, Verdict,
};
use hhlab_core::exactla::FieldSpec;
use hhlab_core::ext::{cochain_cohomology_rank, hkr_scaling_check, koszul_ext};
use hhlab_core::hochschild::{
    antisymmetrization_eps, chain_dimension, chain_homology_rank, hkr_pi, omega_dimension,
    omega_spanning_set, pi_induced_rank,
};
use hhlab_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hhlab",
    version,
    about = "Exact Hochschild homology and cohomology of polynomial algebras and projective space"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (defaults to HHLAB_WORKERS, then the number of cores).
    #[arg(long, global = true, env = "HHLAB_WORKERS")]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    let c: u64 = s
        .parse()
        .map_err(|_| format!("'{s}' is not a characteristic"))?;
    FieldSpec::from_characteristic(c).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PieceArgs {
    /// Number of variables.
    #[arg(long)]
    pub n: usize,
    /// Characteristic: 0 for the rationals, p prime for GF(p).
    #[arg(long = "char", value_name = "CHAR", value_parser = parse_field)]
    #[serde(rename = "char")]
    pub field: FieldSpec,
    /// Hochschild degree.
    #[arg(long)]
    pub q: usize,
    /// Internal polynomial degree.
    #[arg(long)]
    pub deg: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ChainHomologyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub piece: PieceArgs,
    /// Exit with status 1 unless the rank equals this value.
    #[arg(long)]
    pub expect: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExtArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "char", value_name = "CHAR", value_parser = parse_field)]
    #[serde(rename = "char")]
    pub field: FieldSpec,
    /// A single degree; all degrees 0..=n+1 when omitted.
    #[arg(long)]
    pub q: Option<usize>,
    /// Also compare the Koszul and bar-side identifications (the q! factor).
    #[arg(long)]
    pub scaling: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(group(ArgGroup::new("sheaf").required(true).args(["line_bundle", "omega", "wedge_tangent"])))]
pub struct CechArgs {
    /// Projective dimension.
    #[arg(long)]
    pub n: usize,
    #[arg(long = "char", value_name = "CHAR", value_parser = parse_field)]
    #[serde(rename = "char")]
    pub field: FieldSpec,
    /// The line bundle O(d).
    #[arg(long, allow_hyphen_values = true)]
    pub line_bundle: Option<i64>,
    /// The twisted forms Ω^p(k); use with --twist.
    #[arg(long, requires = "twist")]
    pub omega: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub twist: Option<i64>,
    /// The polyvector bundle ⋀^q T.
    #[arg(long)]
    pub wedge_tangent: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceArg {
    Affine,
    Pn,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HhArgs {
    #[arg(long, value_enum)]
    pub space: SpaceArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long = "char", value_name = "CHAR", value_parser = parse_field)]
    #[serde(rename = "char")]
    pub field: FieldSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Holds,
    Fails,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CharCheckArgs {
    #[arg(long)]
    pub n: usize,
    /// Characteristic: 0 or a prime.
    #[arg(long = "char", value_name = "CHAR", value_parser = parse_field)]
    #[serde(rename = "char")]
    pub field: FieldSpec,
    #[arg(long)]
    pub qmax: usize,
    #[arg(long)]
    pub degmax: usize,
    /// Exit with status 1 if the verdict differs.
    #[arg(long, value_enum)]
    pub expect: Option<Expectation>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SelfcheckArgs {
    /// Criteria to run, e.g. 1,3,7 (all when omitted).
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(1..=8))]
    pub criteria: Vec<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank of Hochschild homology H_q of K[t_1..t_n] in one internal degree,
    /// from the cyclic boundary on A ⊗ A^{⊗q}.
    ChainHomology(ChainHomologyArgs),
    /// HKR maps on one graded piece: checks π ε = q! on a spanning set of Ω^q
    /// and reports the rank of the map H_q -> Ω^q induced by π.
    HkrCheck(PieceArgs),
    /// Ext over the enveloping algebra from the Koszul resolution, optionally
    /// with the q! comparison to the bar-side map π_cd.
    Ext(ExtArgs),
    /// Cohomology of the graded dual of the Hochschild chain complex.
    Cochain(PieceArgs),
    /// Čech cohomology on P^n of O(d), Ω^p(k) or ⋀^q T.
    Cech(CechArgs),
    /// Hochschild cohomology of affine space or P^n assembled from
    /// polyvector cohomology (HKR decomposition).
    Hh(HhArgs),
    /// Scans graded pieces for a failure of π to be a quasi-isomorphism
    /// (the characteristic criterion).
    CharCheck(CharCheckArgs),
    /// Runs the acceptance suite.
    Selfcheck(SelfcheckArgs),
}

/// A finished computation, before formatting.
pub struct Report {
    pub command: &'static str,
    pub params: Value,
    pub result: Value,
    pub paper_refs: Vec<&'static str>,
    pub text: String,
    pub passed: bool,
}

impl Report {
    pub fn to_json(&self, argv: &[String]) -> Value {
        let mut params = self.params.clone();
        if let Value::Object(map) = &mut params {
            map.insert("argv".into(), json!(argv));
        }
        json!({
            "command": self.command,
            "params": params,
            "result": self.result,
            "paper_refs": self.paper_refs,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Exit status for an error from the core library.
pub fn error_status(e: &Error) -> i32 {
    match e {
        Error::CompositionNotZero
        | Error::NotAChainMap(_)
        | Error::FactorNotScalar
        | Error::KoszulCoboundaryNonzero
        | Error::ShellNotExact(_)
        | Error::CrossCheck(_) => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

fn chain_homology(a: &ChainHomologyArgs) -> Result<Report, Error> {
    let p = &a.piece;
    let rank = chain_homology_rank(p.n, p.field, p.q, p.deg)?;
    let passed = a.expect.is_none_or(|e| e == rank);
    let mut text = format!(
        "dim H_{}(C)_{} over {} with n = {}: {rank}\n",
        p.q, p.deg, p.field, p.n
    );
    if let Some(e) = a.expect {
        let _ = writeln!(
            text,
            "expected {e}: {}",
            if passed { "ok" } else { "MISMATCH" }
        );
    }
    Ok(Report {
        command: "chain-homology",
        params: to_value(a),
        result: json!({
            "rank": rank,
            "chain_dimension": chain_dimension(p.n, p.q, p.deg),
            "omega_dimension": omega_dimension(p.n, p.q, p.deg),
        }),
        paper_refs: vec![
            "Hochschild chain complex",
            "Hochschild-Kostant-Rosenberg theorem",
        ],
        text,
        passed,
    })
}

fn hkr_check(a: &PieceArgs) -> Result<Report, Error> {
    let forms = omega_spanning_set(a.n, a.field, a.q, a.deg);
    let scale = a.field.factorial(a.q);
    let failures = forms
        .iter()
        .filter(|w| hkr_pi(&antisymmetrization_eps(w)) != w.scale(&scale))
        .count();
    let homology = chain_homology_rank(a.n, a.field, a.q, a.deg)?;
    let induced = pi_induced_rank(a.n, a.field, a.q, a.deg)?;
    let omega = omega_dimension(a.n, a.q, a.deg);
    let iso = induced == homology && homology == omega;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "π ε = {}! on {} spanning forms: {}",
        a.q,
        forms.len(),
        if failures == 0 { "ok" } else { "FAILED" }
    );
    let _ = writeln!(
        text,
        "dim H_{}(C)_{} = {homology}, dim Ω^{}_{} = {omega}",
        a.q, a.deg, a.q, a.deg
    );
    let _ = writeln!(
        text,
        "rank of π on homology = {induced} ({})",
        if iso {
            "isomorphism"
        } else {
            "not an isomorphism"
        }
    );
    Ok(Report {
        command: "hkr-check",
        params: to_value(a),
        result: json!({
            "pi_eps_scalar": scale.to_string(),
            "forms_checked": forms.len(),
            "pi_eps_failures": failures,
            "homology_dim": homology,
            "omega_dim": omega,
            "induced_rank": induced,
            "pi_is_isomorphism": iso,
        }),
        paper_refs: vec![
            "HKR antisymmetrization and projection",
            "Hochschild-Kostant-Rosenberg theorem",
        ],
        text,
        passed: failures == 0,
    })
}

fn ext(a: &ExtArgs) -> Result<Report, Error> {
    let degrees: Vec<usize> = match a.q {
        Some(q) => vec![q],
        None => (0..=a.n + 1).collect(),
    };
    let mut text = String::new();
    let mut ranks = Vec::new();
    let mut passed = true;
    for &q in &degrees {
        let rank = koszul_ext(a.n, a.field, q)?;
        let expected = binomial(a.n, q);
        passed &= rank == expected;
        let _ = writeln!(
            text,
            "rank Ext^{q}(A, A) = {rank}  (C({}, {q}) = {expected})",
            a.n
        );
        ranks.push(json!({ "q": q, "rank": rank, "binomial": expected }));
    }
    let mut scaling = Vec::new();
    if a.scaling {
        for &q in degrees.iter().filter(|&&q| q <= a.n) {
            match hkr_scaling_check(a.n, a.field, q) {
                Ok(c) => {
                    let _ = writeln!(text, "q = {q}: π_cd = {c} · Koszul identification");
                    scaling.push(json!({ "q": q, "factor": c.to_string() }));
                }
                Err(Error::Precondition(why)) => {
                    let _ = writeln!(text, "q = {q}: skipped ({why})");
                    scaling.push(json!({ "q": q, "factor": Value::Null, "skipped": why }));
                }
                Err(e) => return Err(e),
            }
        }
    }
    let mut result = json!({ "ranks": ranks });
    if a.scaling {
        result["scaling"] = json!(scaling);
    }
    Ok(Report {
        command: "ext",
        params: to_value(a),
        result,
        paper_refs: vec!["Koszul resolution", "Hochschild-Kostant-Rosenberg theorem"],
        text,
        passed,
    })
}

fn cochain(a: &PieceArgs) -> Result<Report, Error> {
    let rank = cochain_cohomology_rank(a.n, a.field, a.q, a.deg)?;
    Ok(Report {
        command: "cochain",
        params: to_value(a),
        result: json!({ "rank": rank }),
        paper_refs: vec!["continuous Hochschild cochains", "graded duality"],
        text: format!(
            "dim H^{}(C^*)_{} over {} with n = {}: {rank}\n",
            a.q, a.deg, a.field, a.n
        ),
        passed: true,
    })
}

fn cech(a: &CechArgs) -> Result<Report, Error> {
    let spec = match (a.line_bundle, a.omega, a.twist, a.wedge_tangent) {
        (Some(d), None, _, None) => SheafSpec::line_bundle(a.n, d),
        (None, Some(p), Some(k), None) => SheafSpec::omega_twist(a.n, p, k),
        (None, None, _, Some(q)) => SheafSpec::wedge_tangent(a.n, q),
        _ => return Err(Error::InvalidSpec("choose exactly one sheaf".into())),
    };
    let h = sheaf_cohomology(spec, a.field)?;
    let name = match spec.kind {
        SheafKind::LineBundle { d } => format!("O({d})"),
        SheafKind::OmegaTwist { p, k } => format!("Ω^{p}({k})"),
        SheafKind::WedgeTangent { q } => format!("⋀^{q} T"),
    };
    let mut text = String::new();
    for (i, x) in h.iter().enumerate() {
        let _ = writeln!(text, "h^{i}(P^{}, {name}) = {x}", a.n);
    }
    let mut result = json!({ "sheaf": spec, "h": h });
    let mut passed = true;
    if let SheafKind::LineBundle { d } = spec.kind {
        let closed = line_bundle_closed_form(a.n, d);
        passed = closed == h;
        result["closed_form"] = json!(closed);
        let _ = writeln!(
            text,
            "closed form: {}",
            if passed { "agrees" } else { "DISAGREES" }
        );
    }
    Ok(Report {
        command: "cech",
        params: to_value(a),
        result,
        paper_refs: vec!["Čech cohomology", "Euler sequence", "polyvector fields"],
        text,
        passed,
    })
}

fn render_decomposition(r: &DecompositionReport) -> String {
    let mut text = String::new();
    let (label, n) = match r.space {
        Space::Affine(n) => ("A", n),
        Space::Projective(n) => ("P", n),
    };
    let _ = writeln!(
        text,
        "{label}^{n} over {}, n! invertible: {}",
        r.field, r.validity
    );
    for (i, row) in r.summands.iter().enumerate() {
        let parts: Vec<String> = row
            .iter()
            .enumerate()
            .filter(|(q, _)| *q <= i)
            .map(|(q, x)| format!("H^{}(⋀^{q} T) = {x}", i - q))
            .collect();
        let total = match &r.hh {
            Some(hh) => hh[i].to_string(),
            None => "not determined".into(),
        };
        let _ = writeln!(text, "HH^{i} = {total}   [{}]", parts.join(", "));
    }
    text
}

fn hh(a: &HhArgs) -> Result<Report, Error> {
    let report = match a.space {
        SpaceArg::Affine => hh_affine(a.n, a.field)?,
        SpaceArg::Pn => hh_projective(a.n, a.field)?,
    };
    Ok(Report {
        command: "hh",
        params: to_value(a),
        text: render_decomposition(&report),
        result: to_value(&report),
        paper_refs: vec![
            "Hochschild-Kostant-Rosenberg decomposition",
            "Hochschild cohomology",
        ],
        passed: true,
    })
}

fn char_check(a: &CharCheckArgs) -> Result<Report, Error> {
    let w = characteristic_criterion(a.n, a.field.characteristic(), a.qmax, a.degmax)?;
    let passed = match a.expect {
        None => true,
        Some(Expectation::Holds) => w.verdict == Verdict::Holds,
        Some(Expectation::Fails) => w.verdict == Verdict::Fails,
    };
    let mut text = format!("n = {}, characteristic {}: {}\n", a.n, w.p, w.summary());
    if !passed {
        let _ = writeln!(text, "verdict differs from --expect");
    }
    Ok(Report {
        command: "char-check",
        params: to_value(a),
        result: to_value(&w),
        paper_refs: vec![
            "HKR projection as quasi-isomorphism",
            "characteristic criterion",
        ],
        text,
        passed,
    })
}

fn selfcheck(a: &SelfcheckArgs, seed: u64) -> Result<Report, Error> {
    let ids = if a.criteria.is_empty() {
        acceptance::CRITERIA.to_vec()
    } else {
        a.criteria.iter().map(|&c| c as usize).collect()
    };
    let reports: Vec<CriterionReport> = ids
        .iter()
        .filter_map(|&id| acceptance::run_criterion(id, seed))
        .collect();
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "{}", r.line());
        for f in &r.failures {
            let _ = writeln!(text, "    {f}");
        }
    }
    Ok(Report {
        command: "selfcheck",
        params: json!({ "criteria": ids, "seed": seed }),
        result: json!({ "criteria": reports }),
        paper_refs: vec!["Hochschild-Kostant-Rosenberg theorem", "HKR decomposition"],
        passed: reports.iter().all(|r| r.passed),
        text,
    })
}

pub fn execute(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::ChainHomology(a) => chain_homology(a),
        Command::HkrCheck(a) => hkr_check(a),
        Command::Ext(a) => ext(a),
        Command::Cochain(a) => cochain(a),
        Command::Cech(a) => cech(a),
        Command::Hh(a) => hh(a),
        Command::CharCheck(a) => char_check(a),
        Command::Selfcheck(a) => selfcheck(a, cli.seed.unwrap_or(DEFAULT_SEED)),
    }
}

/// Parses `argv` (including the program name), runs the command and prints
/// the report. Returns the process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be positive");
            return EXIT_USAGE;
        }
        // Fails only if a pool already exists in this process.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global();
    }
    match execute(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Json => {
                    let verbatim: Vec<String> = argv
                        .iter()
                        .skip(1)
                        .map(|s| s.to_string_lossy().into_owned())
                        .collect();
                    let out =
                        serde_json::to_string_pretty(&report.to_json(&verbatim)).expect("json");
                    println!("{out}");
                }
            }
            if report.passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_status(&e)
        }
    }
}
