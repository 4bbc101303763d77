//! The `mixres` command-line tool.
//!
//! Exit codes: 0 on success, 1 when a germ or cone fails a definition the
//! pipeline relies on, 2 on usage and expression syntax errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::fan::{canonical_subdivision, make_cone};
use crate::lab::{class_probe, FractionalMonomial};
use crate::lattice::WeightVector;
use crate::nondeg::{probe_face, CriticalityReport, NondegVerdict};
use crate::poly::MixedPolynomial;
use crate::report::{self, emit_report_json, InputEcho};
use crate::svg::emit_svg;
use crate::toric::{
    certify, chart_map, factorize, pullback, render_chart_sum, strictly_positive_first, ChartMonomial, ProbeOptions,
};

/// Overrides `--seed` when set.
pub const SEED_ENV: &str = "MIXRES_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "mixres",
    version,
    about = "Newton polyhedra, toric charts and smoothness certificates for mixed polynomial germs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Support, Newton boundary, face table and face type of a germ.
    Analyze {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Canonical regular subdivision of the dual Newton diagram.
    Subdivide {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Pull-back to a toric chart and its factored form.
    Pullback {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Matrix rows separated by ';', one column per vertex: "2,3;1,2".
        #[arg(long)]
        cone: String,
        /// Number of leading vertices forming the cone tau.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Smoothness certificate of the strict transform.
    Certify {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Random starts per numeric probe.
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Non-degeneracy of one face function.
    Nondeg {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        weight: String,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Numerical experiments.
    Lab {
        #[command(subcommand)]
        which: LabCommand,
    },
    /// Staircase and fan as an SVG file.
    Plot {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum LabCommand {
    /// Continuity sweep for the derivatives of u^(r+s)/conj(u)^r.
    Fraction {
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
        /// Highest derivative order probed (default s + 1).
        #[arg(long)]
        max_order: Option<u32>,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Math(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = std::result::Result<Vec<u8>, Failure>;

/// Runs the tool on `argv` (including the program name) with the process
/// streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(bytes) => match out.write_all(&bytes) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Math(e)) => match e.failing_definition() {
            None => {
                let _ = writeln!(err, "error: {e}");
                2
            }
            Some(def) => {
                let _ = writeln!(err, "error: {e}");
                let _ = writeln!(err, "failing definition: {def}");
                1
            }
        },
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Analyze { expr, n, json } => analyze(&expr, n, json),
        Command::Subdivide { expr, json } => subdivide(&expr, json),
        Command::Pullback { expr, cone, k, json } => pullback_cmd(&expr, &cone, k, json),
        Command::Certify {
            expr,
            samples,
            seed,
            json,
        } => certify_cmd(&expr, samples, effective_seed(seed)?, json),
        Command::Nondeg {
            expr,
            weight,
            samples,
            seed,
            json,
        } => nondeg(&expr, &weight, samples, effective_seed(seed)?, json),
        Command::Lab {
            which: LabCommand::Fraction { r, s, max_order, json },
        } => lab_fraction(r, s, max_order, json),
        Command::Plot { expr, out } => plot(&expr, &out),
    }
}

fn effective_seed(flag: u64) -> std::result::Result<u64, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{SEED_ENV} must be an unsigned integer, got {v:?}"))),
        Err(_) => Ok(flag),
    }
}

fn parse_expr(expr: &str, n: usize) -> std::result::Result<MixedPolynomial, Failure> {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    Ok(MixedPolynomial::parse(expr, n)?)
}

fn echo(expr: &str, n: usize, options: Map<String, Value>) -> InputEcho {
    InputEcho {
        expression: expr.to_string(),
        n,
        options,
    }
}

fn json_bytes<T: Serialize>(v: &T) -> Vec<u8> {
    emit_report_json(v)
}

fn analyze(expr: &str, n: usize, json: bool) -> Outcome {
    let f = parse_expr(expr, n)?;
    let r = report::analyze(&f, echo(expr, n, Map::new()), "analyze")?;
    Ok(if json {
        json_bytes(&r)
    } else {
        report::render_analysis(&r).into_bytes()
    })
}

fn subdivide(expr: &str, json: bool) -> Outcome {
    let f = parse_expr(expr, 2)?;
    let s = canonical_subdivision(&f)?;
    let r = report::subdivision_report(&f, &s)?;
    Ok(if json {
        json_bytes(&json!({"schema": report::SCHEMA, "command": "subdivide", "subdivision": r}))
    } else {
        report::render_subdivision(&r).into_bytes()
    })
}

/// `"a,b;c,d"`: rows of the vertex matrix.
fn parse_matrix(text: &str) -> std::result::Result<Vec<Vec<i64>>, Failure> {
    let rows: Vec<Vec<i64>> = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("bad --cone {text:?}: {e}")))?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Failure::Usage(format!("--cone {text:?} must be a square matrix")));
    }
    Ok(rows)
}

fn parse_weight(text: &str) -> std::result::Result<Vec<i64>, Failure> {
    text.split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("bad --weight {text:?}: {e}")))
}

fn factor_monomial(k: usize, n: usize, factor: &[(i64, i64)]) -> ChartMonomial {
    let mut m = ChartMonomial {
        coeff: crate::GaussianRational::from_ints(1, 0),
        u_exps: vec![0; n],
        ubar_exps: vec![0; n],
    };
    for (j, &(a, b)) in factor.iter().enumerate().take(k) {
        m.u_exps[j] = a;
        m.ubar_exps[j] = b;
    }
    m
}

fn pullback_cmd(expr: &str, cone: &str, k: Option<usize>, json: bool) -> Outcome {
    let rows = parse_matrix(cone)?;
    let n = rows.len();
    let f = parse_expr(expr, n)?;
    let columns: Vec<Vec<i64>> = (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    let sigma = make_cone(columns)?;
    let (sigma, k) = match k {
        Some(k) => (sigma, k),
        None => strictly_positive_first(&sigma),
    };
    let chart = chart_map(&sigma)?;
    let pulled = pullback(&f, &sigma)?;
    let fac = factorize(&f, &sigma, k)?;
    if json {
        return Ok(json_bytes(&json!({
            "schema": report::SCHEMA,
            "command": "pullback",
            "input": echo(expr, n, Map::from_iter([("cone".to_string(), json!(cone)), ("k".to_string(), json!(k))])),
            "chart": chart.to_string(),
            "pullback": pulled,
            "factorization": fac,
        })));
    }
    let mut s = String::new();
    let _ = writeln!(s, "chart: z = {chart}");
    let _ = writeln!(s, "pull-back: {}", render_chart_sum(&pulled));
    let factor = render_chart_sum(&[factor_monomial(k, n, &fac.monomial_factor)]);
    let _ = writeln!(s, "factored: {factor} * (f~_delta + R~)");
    let _ = writeln!(s, "f~_delta = {}", render_chart_sum(&fac.f_tilde_delta));
    let r: Vec<ChartMonomial> = fac.r_tilde.iter().map(|t| t.monomial.clone()).collect();
    let _ = writeln!(s, "R~ = {}", render_chart_sum(&r));
    for t in &fac.r_tilde {
        let sums: Vec<String> = fac.exponent_sums(t).iter().map(i64::to_string).collect();
        let class = t.class.map_or("analytic".to_string(), |c| format!("C^{c}"));
        let _ = writeln!(
            s,
            "  {:<32} a+b = ({})  lambda {}  {}",
            render_chart_sum(std::slice::from_ref(&t.monomial)),
            sums.join(", "),
            t.lambda,
            class
        );
    }
    let lambda = fac.lambda_tau.map_or("none".to_string(), |l| l.to_string());
    let _ = writeln!(s, "Lambda(tau) = {lambda}");
    Ok(s.into_bytes())
}

fn certify_cmd(expr: &str, samples: usize, seed: u64, json: bool) -> Outcome {
    let f = parse_expr(expr, 2)?;
    let options = Map::from_iter([
        ("samples".to_string(), json!(samples)),
        ("seed".to_string(), json!(seed)),
    ]);
    let mut r = report::analyze(&f, echo(expr, 2, options), "certify")?;
    let s = canonical_subdivision(&f)?;
    let opts = ProbeOptions {
        starts: samples,
        seed,
        ..ProbeOptions::default()
    };
    r.certificate = Some(certify(&f, &s, opts)?);
    Ok(if json {
        json_bytes(&r)
    } else {
        report::render_analysis(&r).into_bytes()
    })
}

fn verdict_label(v: &NondegVerdict) -> String {
    match v {
        NondegVerdict::StronglyNdExact => "STRONGLY_ND_EXACT".into(),
        NondegVerdict::NdExact => "ND_EXACT".into(),
        NondegVerdict::NoViolationFound => "NO_VIOLATION_FOUND".into(),
        NondegVerdict::Violation { point } => {
            let p: Vec<String> = point.iter().map(|z| format!("{:.6}{:+.6}i", z[0], z[1])).collect();
            format!("VIOLATION at z = ({})", p.join(", "))
        }
    }
}

fn nondeg(expr: &str, weight: &str, samples: usize, seed: u64, json: bool) -> Outcome {
    let p = parse_weight(weight)?;
    let f = parse_expr(expr, p.len())?;
    let p = WeightVector::new(p)?;
    let rep: CriticalityReport = probe_face(&f, &p, samples, seed)?;
    if json {
        return Ok(json_bytes(
            &json!({"schema": report::SCHEMA, "command": "nondeg", "report": rep}),
        ));
    }
    let face = crate::face::face_function(&f, &p)?;
    let mut s = String::new();
    let _ = writeln!(s, "face weight {p}: f_P = {}", face.render());
    let _ = writeln!(s, "verdict: {}", verdict_label(&rep.verdict));
    if rep.samples > 0 {
        let _ = writeln!(
            s,
            "samples: {}  seed: {}  min residual: {:.3e}",
            rep.samples, rep.seed, rep.min_residual
        );
    }
    Ok(s.into_bytes())
}

fn lab_fraction(r: i64, s: i64, max_order: Option<u32>, json: bool) -> Outcome {
    let m = FractionalMonomial::new(r, s)?;
    let probe = class_probe(m, max_order.unwrap_or(s as u32 + 1));
    if json {
        return Ok(json_bytes(
            &json!({"schema": report::SCHEMA, "command": "lab", "probe": probe}),
        ));
    }
    let mut out = String::new();
    let _ = writeln!(out, "xi(u) = u^{}/conj(u)^{}  (r = {r}, s = {s})", r + s, r);
    let head: Vec<String> = probe.radii.iter().map(|x| format!("{x:>9.0e}")).collect();
    let _ = writeln!(out, "order  {}  origin gap  continuous", head.join(" "));
    for sw in &probe.sweeps {
        let cells: Vec<String> = sw.spread.iter().map(|x| format!("{x:>9.2e}")).collect();
        let _ = writeln!(
            out,
            "{:<6} {}  {:>10.2e}  {}",
            sw.order,
            cells.join(" "),
            sw.origin_gap,
            if sw.continuous { "yes" } else { "no" }
        );
    }
    let class = match probe.observed_class {
        c if c < 0 => "none".to_string(),
        c => format!("C^{c}"),
    };
    let _ = writeln!(out, "observed class: {class}");
    Ok(out.into_bytes())
}

fn plot(expr: &str, path: &PathBuf) -> Outcome {
    let f = parse_expr(expr, 2)?;
    let svg = emit_svg(&f)?;
    std::fs::write(path, svg)?;
    Ok(format!("wrote {}\n", path.display()).into_bytes())
}
