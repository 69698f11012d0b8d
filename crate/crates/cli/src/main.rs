//! `diagcheb`: diagonals, detection, least polynomials and signatures from
//! the command line.
//!
//! Exit codes: 0 on success, 1 on bad input, 2 when the answer is a
//! structured negative (failed diagonal, inconclusive detection, failed check).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use log::{info, warn};
use serde::Serialize;
use serde_json::Value;

use diagcheb::detect::{detect, DetectOptions, DetectionResult, DetectionStatus};
use diagcheb::least::{least_for_certificate, LeastResult};
use diagcheb::oracle::{remez_monic, sup_norm_estimate};
use diagcheb::roots::{compute_diagonal, Interval, DEFAULT_TOL};
use diagcheb::sets::{check_certificate, SUM_TOL};
use diagcheb::signature::{
    build_functional, build_signature, verify_annihilation, verify_dual_optimality, AnnihilationReport,
    AtomicFunctional, DualReport, Signature,
};
use diagcheb::{certify_analytic, json, least_norm, DDCertificate, SetDescription};

const EXIT_INPUT: u8 = 1;
const EXIT_NEGATIVE: u8 = 2;

/// Rows in the plot table written by `least --table`.
const TABLE_ROWS: usize = 201;

#[derive(Parser)]
#[command(name = "diagcheb", version, about = "Least Chebyshev polynomials on diagonally-determined sets")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the diagonal [a, b] of a set.
    Diag {
        #[arg(long)]
        set: PathBuf,
        /// Root isolation tolerance.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the sum-of-squares hierarchy on a semi-algebraic set.
    Detect {
        #[arg(long)]
        set: PathBuf,
        #[command(flatten)]
        hier: Hierarchy,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the least polynomial P* of degree n.
    Least {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        hier: Hierarchy,
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV of P* along the diagonal.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Build the optimal signature and check its dual optimality.
    Signature {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        hier: Hierarchy,
        /// Largest accepted duality gap.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check every stage on one set.
    Verify {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        hier: Hierarchy,
        /// Largest accepted certificate violation and sup-norm mismatch.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Source {
    #[arg(long)]
    set: Option<PathBuf>,
    /// A certificate, or the output of `detect`.
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Args)]
struct Hierarchy {
    #[arg(long, default_value_t = 8)]
    kmax: usize,
    #[arg(long, default_value_t = 1e-6)]
    zero_threshold: f64,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Failure carrying its exit code.
struct Exit {
    code: u8,
    err: anyhow::Error,
}

fn input<E: Into<anyhow::Error>>(e: E) -> Exit {
    Exit { code: EXIT_INPUT, err: e.into() }
}

fn negative(msg: String) -> Exit {
    Exit { code: EXIT_NEGATIVE, err: anyhow!(msg) }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("DIAGCHEB_LOG", "warn")).init();
    let cli = Cli::parse();
    let run = match cli.cmd {
        Command::Diag { set, tol, out } => cmd_diag(&set, tol, out.as_deref()),
        Command::Detect { set, hier, out } => cmd_detect(&set, &hier, out.as_deref()),
        Command::Least { src, n, hier, out, table } => cmd_least(&src, n, &hier, out.as_deref(), table.as_deref()),
        Command::Signature { src, n, hier, tol, out } => cmd_signature(&src, n, &hier, tol, out.as_deref()),
        Command::Verify { src, n, hier, tol, out } => cmd_verify(&src, n, &hier, tol, out.as_deref()),
    };
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit { code, err }) => {
            eprintln!("error: {err:#}");
            ExitCode::from(code)
        }
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_set(path: &Path) -> Result<SetDescription> {
    let s: SetDescription =
        serde_json::from_value(read_json(path)?).with_context(|| format!("set description in {}", path.display()))?;
    s.validate()?;
    Ok(s)
}

/// A bare certificate, or a detection result with a `certificate` field.
fn load_certificate(path: &Path) -> Result<Option<DDCertificate>> {
    let v = read_json(path)?;
    let inner = match v.get("certificate") {
        Some(Value::Null) => return Ok(None),
        Some(c) => c.clone(),
        None => v,
    };
    let c: DDCertificate =
        serde_json::from_value(inner).with_context(|| format!("certificate in {}", path.display()))?;
    Ok(Some(c))
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), Exit> {
    let text = json::to_string_pretty(value).map_err(input)?;
    match out {
        Some(p) => fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display())).map_err(input),
        None => {
            // a closed pipe downstream is not an error
            let _ = writeln!(std::io::stdout(), "{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
enum DiagOutput {
    Ok { interval: Interval },
    Failure { failure: diagcheb::roots::DiagonalFailure },
}

fn cmd_diag(set: &Path, tol: f64, out: Option<&Path>) -> Result<(), Exit> {
    let s = load_set(set).map_err(input)?;
    let r = match s.semialgebraic_parts() {
        Some((g, _)) => compute_diagonal(&g, tol),
        None => s.diagonal().map(|(a, b)| Interval::closed(a, b)),
    };
    match r {
        Ok(i) => {
            println!("{i}");
            if let Some(p) = out {
                emit(&DiagOutput::Ok { interval: i }, Some(p))?;
            }
            Ok(())
        }
        Err(f) => {
            println!("{f}");
            if let Some(p) = out {
                emit(&DiagOutput::Failure { failure: f.clone() }, Some(p))?;
            }
            Err(negative(format!("no single bounded diagonal: {f}")))
        }
    }
}

fn run_detect(s: &SetDescription, hier: &Hierarchy) -> Result<DetectionResult, Exit> {
    let Some((g, bbox)) = s.semialgebraic_parts() else {
        return Err(input(anyhow!("detection needs a semialgebraic set, got `{}`", s.kind())));
    };
    if bbox.is_none() {
        warn!("no bounding box: the sampling check on the recovered certificate is skipped");
    }
    let iv = compute_diagonal(&g, DEFAULT_TOL).map_err(|f| negative(format!("diagonal step failed: {f}")))?;
    let opts = DetectOptions {
        k_max: hier.kmax,
        zero_threshold: hier.zero_threshold,
        bbox,
        check_samples: hier.samples,
        seed: hier.seed,
        ..DetectOptions::default()
    };
    detect(&g, iv.lo, iv.hi, &opts).map_err(|e| match e {
        diagcheb::detect::DetectError::DegenerateDiagonal { .. } => negative(e.to_string()),
        e => input(e),
    })
}

fn cmd_detect(set: &Path, hier: &Hierarchy, out: Option<&Path>) -> Result<(), Exit> {
    let s = load_set(set).map_err(input)?;
    let r = run_detect(&s, hier)?;
    for l in &r.levels {
        info!("k = {}: rho = {:?}, {:?}", l.level, l.rho, l.status);
    }
    emit(&r, out)?;
    match r.status {
        DetectionStatus::Certified => {
            if out.is_some() {
                println!("certified at k = {}, v' = {:?}", r.level, r.v_prime);
            }
            Ok(())
        }
        DetectionStatus::Inconclusive => Err(negative(format!(
            "inconclusive up to k = {}, rho profile {:?}",
            r.level,
            r.rho_profile()
        ))),
    }
}

/// Certificate from `--cert`, the closed form of an analytic set, or the
/// hierarchy.
fn resolve_certificate(src: &Source, hier: &Hierarchy) -> Result<(Option<SetDescription>, DDCertificate), Exit> {
    let set = src.set.as_deref().map(load_set).transpose().map_err(input)?;
    if let Some(path) = &src.cert {
        let c = load_certificate(path)
            .map_err(input)?
            .ok_or_else(|| negative(format!("{} holds no certificate", path.display())))?;
        if let Some(s) = &set {
            if s.dim() != c.dim() {
                return Err(input(anyhow!("set dimension {} differs from certificate dimension {}", s.dim(), c.dim())));
            }
        }
        return Ok((set, c));
    }
    let Some(s) = set else {
        return Err(input(anyhow!("one of --set or --cert is required")));
    };
    if let Some(c) = certify_analytic(&s) {
        return Ok((Some(s), c));
    }
    let r = run_detect(&s, hier)?;
    match r.certificate {
        Some(c) => Ok((Some(s), c)),
        None => Err(negative(format!("set not certified up to k = {}", r.level))),
    }
}

fn build_least(c: &DDCertificate, n: usize) -> Result<LeastResult, Exit> {
    if c.a == c.b {
        warn!("degenerate diagonal a = b = {}; using (<v, x> - a)^n", c.a);
    }
    least_for_certificate(c, n).map_err(input)
}

fn write_table(r: &LeastResult, path: &Path) -> Result<(), Exit> {
    let c = &r.certificate;
    let (lo, hi) = if c.a < c.b { (c.a, c.b) } else { (c.a - 1.0, c.a + 1.0) };
    let d = c.dim();
    let p = r.poly.compile();
    let mut buf = String::from("t,value\n");
    for i in 0..TABLE_ROWS {
        let t = lo + (hi - lo) * i as f64 / (TABLE_ROWS - 1) as f64;
        buf += &format!("{},{}\n", json::format_g17(t), json::format_g17(p.eval(&vec![t; d])));
    }
    let mut f = fs::File::create(path).with_context(|| format!("creating {}", path.display())).map_err(input)?;
    f.write_all(buf.as_bytes()).map_err(input)
}

fn cmd_least(src: &Source, n: usize, hier: &Hierarchy, out: Option<&Path>, table: Option<&Path>) -> Result<(), Exit> {
    let (_, c) = resolve_certificate(src, hier)?;
    let r = build_least(&c, n)?;
    emit(&r, out)?;
    if let Some(t) = table {
        write_table(&r, t)?;
    }
    if out.is_some() {
        println!("value = {}", json::format_g17(r.value));
    }
    Ok(())
}

#[derive(Serialize)]
struct SignatureOutput {
    degree: usize,
    certificate: DDCertificate,
    signature: Signature,
    functional: AtomicFunctional,
    annihilation: AnnihilationReport,
    dual: DualReport,
}

fn cmd_signature(src: &Source, n: usize, hier: &Hierarchy, tol: f64, out: Option<&Path>) -> Result<(), Exit> {
    if n == 0 {
        return Err(input(anyhow!("--n must be at least 1")));
    }
    let (_, c) = resolve_certificate(src, hier)?;
    c.validate().map_err(|e| input(anyhow!(e)))?;
    let signature = build_signature(&c, n);
    let functional = build_functional(&signature, n);
    let annihilation = verify_annihilation(&functional, n, c.dim());
    let dual = verify_dual_optimality(&functional, &c, n).map_err(input)?;
    let gap = dual.gap;
    emit(&SignatureOutput { degree: n, certificate: c, signature, functional, annihilation, dual }, out)?;
    if gap > tol {
        return Err(negative(format!("duality gap {gap:e} exceeds {tol:e}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    measured: f64,
    threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(Serialize)]
struct VerifyReport {
    degree: usize,
    samples: usize,
    seed: u64,
    set: Option<SetDescription>,
    certificate: DDCertificate,
    value: Option<f64>,
    checks: Vec<Check>,
    passed: bool,
}

fn check(name: &'static str, measured: f64, threshold: f64) -> Check {
    Check { name, passed: measured <= threshold, measured, threshold, detail: None }
}

fn failed(name: &'static str, threshold: f64, detail: String) -> Check {
    Check { name, passed: false, measured: f64::NAN, threshold, detail: Some(detail) }
}

fn cmd_verify(src: &Source, n: usize, hier: &Hierarchy, tol: f64, out: Option<&Path>) -> Result<(), Exit> {
    if n == 0 {
        return Err(input(anyhow!("--n must be at least 1")));
    }
    let (set, c) = resolve_certificate(src, hier)?;
    let mut checks = Vec::new();

    let sum_err = (c.sum_v() - 1.0).abs();
    let mut sum_check = check("certificate_sum", sum_err, SUM_TOL);
    sum_check.detail = Some(format!("<v, 1> = {}", json::format_g17(c.sum_v())));
    checks.push(sum_check);
    if let Some(s) = &set {
        checks.push(match check_certificate(s, &c, hier.samples, hier.seed) {
            Ok(r) => {
                let mut k = check("certificate_sampling", r.max_violation.max(0.0), tol);
                if !r.diagonal_ok {
                    k.passed = false;
                    k.detail = Some("diagonal endpoints lie outside the set".into());
                }
                k
            }
            Err(e) => failed("certificate_sampling", tol, e.to_string()),
        });
    }

    let value = least_norm(c.a, c.b, n).ok();
    match value {
        Some(v) if c.a < c.b => checks.push(match remez_monic(n, c.a, c.b, 100) {
            Ok(r) => check("remez", (r.value - v).abs() / v, 1e-8),
            Err(e) => failed("remez", 1e-8, e.to_string()),
        }),
        Some(_) => info!("degenerate diagonal: remez check not applicable"),
        None => checks.push(failed("remez", 1e-8, format!("no least norm on [{}, {}]", c.a, c.b))),
    }

    match (least_for_certificate(&c, n), value) {
        (Ok(r), Some(v)) => {
            let lead = r.poly.leading_coeff_sum(n).unwrap_or(f64::NAN);
            checks.push(check("pi_star_membership", (lead - 1.0).abs(), 1e-9));
            if let Some(s) = &set {
                checks.push(match sup_norm_estimate(&r.poly, s, hier.samples, hier.seed) {
                    Ok(e) => {
                        let mut k = check("sup_norm", (e.max_val - v).abs(), tol * v.max(1.0));
                        k.detail = Some(format!("max |P*| = {}", json::format_g17(e.max_val)));
                        k
                    }
                    Err(e) => failed("sup_norm", tol, e.to_string()),
                });
            }
        }
        (Err(e), _) => {
            checks.push(failed("pi_star_membership", 1e-9, e.to_string()));
            if set.is_some() {
                checks.push(failed("sup_norm", tol, e.to_string()));
            }
        }
        (Ok(_), None) => unreachable!("a least polynomial exists only with a least norm"),
    }

    let signature = build_signature(&c, n);
    let l = build_functional(&signature, n);
    let scale = c.a.abs().max(c.b.abs()).max(1.0).powi(n as i32);
    checks.push(check("annihilation", verify_annihilation(&l, n, c.dim()).max_abs, 1e-10 * scale));
    checks.push(match verify_dual_optimality(&l, &c, n) {
        Ok(r) => {
            let mut k = check("dual_gap", r.gap.max(r.gamma_spread), 1e-9);
            k.passed &= r.passes(1e-9);
            k
        }
        Err(e) => failed("dual_gap", 1e-9, e.to_string()),
    });

    for k in &checks {
        println!(
            "{} {:<22} measured={} threshold={}{}",
            if k.passed { "PASS" } else { "FAIL" },
            k.name,
            if k.measured.is_nan() { "n/a".into() } else { json::format_g17(k.measured) },
            json::format_g17(k.threshold),
            k.detail.as_deref().map(|d| format!("  ({d})")).unwrap_or_default()
        );
    }
    let passed = checks.iter().all(|k| k.passed);
    let report = VerifyReport {
        degree: n,
        samples: hier.samples,
        seed: hier.seed,
        set,
        certificate: c,
        value,
        checks,
        passed,
    };
    if let Some(p) = out {
        emit(&report, Some(p))?;
    }
    if passed {
        Ok(())
    } else {
        Err(negative("some checks failed".into()))
    }
}
