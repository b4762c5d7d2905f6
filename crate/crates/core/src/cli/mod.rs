//! The `ncdiff` command line: `validate`, `compute` and `check` over
//! problem files.

mod expr;
mod problem;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

use crate::checks::{run_suite, CheckConfig, Suite};
use crate::forms::Omega;

pub use expr::{parse_expr, Env, ExprError, Value};
pub use problem::{load, parse_problem, ParseError, Problem, ProblemFile};
pub use report::{Format, Report};

#[derive(Debug, Parser)]
#[command(
    name = "ncdiff",
    version,
    about = "Exact noncommutative differential calculus on finite-dimensional algebras"
)]
pub struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Highest form degree used by basis-form checks.
    #[arg(long, global = true, default_value_t = 4)]
    pub degree: i32,
    /// Worker threads for independent checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Random cases per randomized check.
    #[arg(long, global = true, default_value_t = 10)]
    pub samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a problem file and check the algebra and every declaration.
    Validate { file: PathBuf },
    /// Evaluate an expression against a problem file.
    Compute { file: PathBuf, expr: String },
    /// Run a verification suite: dga, derivations, brackets, geometry or all.
    Check { file: PathBuf, suite: String },
}

/// Output of one invocation.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn fatal(msg: String) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
        code: 2,
    }
}

/// Runs a parsed command line. Exit code 0 means no FAIL entry, 1 means at
/// least one FAIL, 2 means the input could not be read, parsed or evaluated.
pub fn run(cli: &Cli) -> Outcome {
    let (file, suite) = match &cli.command {
        Command::Validate { file } | Command::Compute { file, .. } => (file, None),
        Command::Check { file, suite } => match suite.parse::<Suite>() {
            Ok(s) => (file, Some(s)),
            Err(e) => return fatal(e),
        },
    };
    if cli.degree < 0 {
        return fatal("--degree must be non-negative".into());
    }
    let bytes = match std::fs::read(file) {
        Ok(b) => b,
        Err(e) => return fatal(format!("{}: {e}", file.display())),
    };
    let text = match String::from_utf8(bytes.clone()) {
        Ok(t) => t,
        Err(_) => return fatal(format!("{}: not valid UTF-8", file.display())),
    };
    let problem = match parse_problem(&text).and_then(|f| load(&f)) {
        Ok(p) => p,
        Err(e) => return fatal(format!("{}:{e}", file.display())),
    };

    let mut report = Report::default();
    report
        .meta
        .push(("version".into(), format!("ncdiff {}", env!("CARGO_PKG_VERSION"))));
    report
        .meta
        .push(("input".into(), format!("sha256:{:x}", Sha256::digest(&bytes))));
    if let Some(o) = &problem.omega {
        let a = o.algebra();
        report.meta.push((
            "algebra".into(),
            format!("{} (dim {}; basis {})", a.name(), a.dim(), a.labels().join(", ")),
        ));
    }

    match &cli.command {
        Command::Validate { .. } => report.entries = problem.entries,
        Command::Compute { expr, .. } => {
            report.meta.push(("expression".into(), expr.clone()));
            let Some(omega) = &problem.omega else {
                report.entries = problem.entries;
                return finish(report, cli.format);
            };
            match evaluate(omega, &problem.names, expr) {
                Ok(lines) => report.result = lines,
                Err(e) => return fatal(format!("expression:{}: {}", e.col + 1, e.msg)),
            }
        }
        Command::Check { .. } => {
            let suite = suite.expect("check has a suite");
            report.meta.push(("seed".into(), cli.seed.to_string()));
            report.meta.push(("degree".into(), cli.degree.to_string()));
            report.meta.push(("samples".into(), cli.samples.to_string()));
            let mut entries = problem.entries;
            if let Some(omega) = &problem.omega {
                let cfg = CheckConfig {
                    seed: cli.seed,
                    degree: cli.degree,
                    samples: cli.samples,
                    projections: problem.projections.iter().map(|(_, p)| p.clone()).collect(),
                };
                let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers.max(1)).build() {
                    Ok(p) => p,
                    Err(e) => return fatal(format!("cannot start workers: {e}")),
                };
                entries.extend(pool.install(|| run_suite(omega, suite, &cfg)));
            }
            report.entries = entries;
        }
    }
    finish(report, cli.format)
}

fn finish(report: Report, format: Format) -> Outcome {
    Outcome {
        stdout: report.render(format),
        stderr: String::new(),
        code: if report.has_failure() { 1 } else { 0 },
    }
}

/// Evaluates `src` and describes the value as `(key, value)` lines.
pub fn evaluate(omega: &Omega, names: &BTreeMap<String, Value>, src: &str) -> Result<Vec<(String, String)>, ExprError> {
    let e = parse_expr(src)?;
    let v = Env { omega, names }.eval(&e)?;
    Ok(describe(omega, &v))
}

fn coords(v: &[crate::linalg::Scalar]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn describe(omega: &Omega, v: &Value) -> Vec<(String, String)> {
    let alg = omega.algebra();
    let kv = |k: &str, v: String| (k.to_string(), v);
    match v {
        Value::Form(f) => vec![
            kv("result", format!("form of degree {}", f.degree())),
            kv("coords", coords(f.coords())),
            kv("value", omega.format(f)),
        ],
        Value::Hom(h) => vec![
            kv("result", format!("hom of degree {}", h.degree())),
            kv("coords", coords(&h.coords())),
            kv("value", h.format(omega)),
        ],
        Value::Derivation(d) => {
            let mut out = vec![kv("result", format!("derivation of degree {}", d.degree()))];
            for (i, f) in d.on_elements().iter().enumerate() {
                out.push(kv("on", format!("{} -> {}", alg.labels()[i], omega.format(f))));
            }
            for (j, f) in d.on_differentials().iter().enumerate() {
                out.push(kv("on", format!("d({}) -> {}", alg.labels()[j + 1], omega.format(f))));
            }
            out
        }
        Value::Distribution(d) => {
            let mut out = vec![kv("result", format!("distribution of dimension {}", d.dim()))];
            for f in d.basis_forms(omega) {
                out.push(kv("basis", omega.format(&f)));
            }
            out
        }
        Value::Subalgebra(b) => {
            let mut out = vec![kv("result", format!("subalgebra of dimension {}", b.dim()))];
            for v in b.space().basis() {
                out.push(kv("basis", alg.format_element(v)));
            }
            out
        }
        Value::Integrability(r) => {
            let mut out = vec![
                kv("result", "integrability report".into()),
                kv("integrable", r.integrable.to_string()),
            ];
            for v in r.witness.space().basis() {
                out.push(kv("witness", alg.format_element(v)));
            }
            out.push(kv("generated", format!("dimension {}", r.generated.dim())));
            if r.readings_differ() {
                out.push(kv("linear span", format!("dimension {}", r.linear_span.dim())));
            }
            out
        }
        Value::Bool(b) => vec![kv("result", b.to_string())],
    }
}
