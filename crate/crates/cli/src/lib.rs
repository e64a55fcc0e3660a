//! Command-line front end for `numrad`.
//!
//! [`run`] does all the work and returns the exit code together with the
//! text that would go to stdout and stderr, so tests can drive it in-process.
//! Exit codes: 0 success, 1 an inequality was violated, 2 bad usage or input.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use numrad::bounds::contraction::{bound_contraction_product, contraction_radius_bounds, product_contraction};
use numrad::bounds::refined::{bound_product_axb, SingleOperatorBounds};
use numrad::bounds::schatten::{p_radius_report, schatten_sum_bound, PowerExponents};
use numrad::graph::{energy_report, parse_edge_list};
use numrad::harness::{fuzz_verify, Ensemble, FuzzConfig};
use numrad::linalg::svd;
use numrad::radius::{numerical_radius, p_numerical_radius};
use numrad::{BoundReport, ComplexMatrix, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "numrad", version, about = "Numerical radius bounds and their verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Numerical radius (or p-numerical radius) and operator norm.
    Radius {
        #[arg(long)]
        matrix: PathBuf,
        /// Schatten index (`inf` allowed); omit for the ordinary numerical radius.
        #[arg(long, value_parser = parse_p)]
        p: Option<f64>,
        /// Angular resolution of the maximization.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Single-operator upper and lower bounds on w(T).
    Bounds {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<f64>>,
        #[arg(long)]
        json: bool,
    },
    /// Bounds on w(AXB) for positive semidefinite X.
    Product {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Contraction bounds on w(A*B), and optionally on w(T).
    Contraction(ContractionArgs),
    /// p-numerical radius bounds, and Schatten bounds for T + S.
    Schatten {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        s: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', value_parser = parse_p)]
        p: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<f64>>,
    },
    /// Energy of a graph and its bounds.
    Graph {
        #[arg(long)]
        edges: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Randomized check of every inequality.
    Verify {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_parser = parse_ensemble)]
        ensemble: Option<Ensemble>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct ContractionArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long, requires = "alpha")]
    matrix: Option<PathBuf>,
    #[arg(long, requires = "matrix")]
    alpha: Option<f64>,
}

fn parse_p(s: &str) -> Result<f64, String> {
    match s {
        "inf" | "infinity" => Ok(f64::INFINITY),
        _ => s.parse().map_err(|e| format!("{e}")),
    }
}

fn parse_ensemble(s: &str) -> Result<Ensemble, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, pass: bool) -> Self {
        Self { code: if pass { EXIT_OK } else { EXIT_VIOLATION }, stdout, stderr: String::new() }
    }

    fn usage(stderr: String) -> Self {
        Self { code: EXIT_USAGE, stdout: String::new(), stderr }
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome::ok(text, true)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}

/// Failures that map to exit code 2.
#[derive(Debug)]
enum CliError {
    Io(PathBuf, std::io::Error),
    Input(PathBuf, Error),
    Numrad(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Input(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Numrad(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numrad(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))
}

fn load_matrix(path: &Path) -> CliResult<ComplexMatrix> {
    ComplexMatrix::from_json_str(&read(path)?).map_err(|e| CliError::Input(path.to_owned(), e))
}

fn default_grid() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

fn dispatch(command: Command) -> CliResult<Outcome> {
    match command {
        Command::Radius { matrix, p, tol } => radius(&load_matrix(&matrix)?, p, tol),
        Command::Bounds { matrix, t, alpha, json: as_json } => {
            let m = load_matrix(&matrix)?;
            let ts = t.unwrap_or_else(default_grid);
            let alphas = alpha.unwrap_or_else(default_grid);
            let report = SingleOperatorBounds::new(&m)?.grid_report(&ts, &alphas)?;
            Ok(bound_output(&report, as_json))
        }
        Command::Product { a, x, b, json: as_json } => {
            let report = bound_product_axb(&load_matrix(&a)?, &load_matrix(&x)?, &load_matrix(&b)?)?;
            Ok(bound_output(&report, as_json))
        }
        Command::Contraction(args) => contraction(args),
        Command::Schatten { matrix, s, p, t } => {
            let s = s.map(|path| load_matrix(&path)).transpose()?;
            schatten(&load_matrix(&matrix)?, s.as_ref(), &p.unwrap_or(vec![1.0, 2.0, f64::INFINITY]), &t.unwrap_or(vec![0.5]))
        }
        Command::Graph { edges, json: as_json } => {
            let g = parse_edge_list(&read(&edges)?).map_err(|e| CliError::Input(edges.clone(), e))?;
            let report = energy_report(&g);
            let pass = report.bounds.all_satisfied();
            if as_json {
                return Ok(Outcome::ok(json(&report), pass));
            }
            let mut out = String::new();
            let _ = writeln!(out, "vertices        {}", report.n);
            let _ = writeln!(out, "edges           {}", report.m);
            let _ = writeln!(out, "max degree sum  {}", report.max_degree_sum);
            let _ = writeln!(out, "rank            {}", report.rank);
            let _ = writeln!(out, "spectral norm   {:.10}", report.spectral_norm);
            let _ = writeln!(out, "energy          {:.10}", report.energy);
            let _ = writeln!(
                out,
                "degree-sum bound improves on 2*sqrt(m): {}",
                if report.degree_sum_bound_improves() { "yes" } else { "no" }
            );
            out.push('\n');
            out.push_str(&bound_table(&report.bounds));
            Ok(Outcome::ok(out, pass))
        }
        Command::Verify { seed, trials, dim, ensemble, json: as_json } => {
            let mut config = FuzzConfig::new(seed, trials, dim);
            config.ensemble = ensemble;
            let report = fuzz_verify(&config)?;
            let out = if as_json {
                let summary: BTreeMap<&str, VerifyEntry> = report
                    .checks
                    .iter()
                    .map(|(name, s)| {
                        (name.as_str(), VerifyEntry { trials: s.trials, violations: s.violations, worst_slack: s.worst_slack })
                    })
                    .collect();
                json(&summary)
            } else {
                report.to_table()
            };
            Ok(Outcome::ok(out, report.pass))
        }
    }
}

#[derive(serde::Serialize)]
struct VerifyEntry {
    trials: usize,
    violations: usize,
    worst_slack: f64,
}

fn radius(m: &ComplexMatrix, p: Option<f64>, tol: Option<f64>) -> CliResult<Outcome> {
    let norm = svd(m).norm();
    let mut out = String::new();
    match p {
        Some(p) => {
            let wp = p_numerical_radius(m, p, tol)?;
            let _ = writeln!(out, "p                   {p}");
            let _ = writeln!(out, "p-numerical radius  {wp:.10}");
        }
        None => {
            let r = numerical_radius(m, tol)?;
            let _ = writeln!(out, "numerical radius    {:.10}", r.value);
            let _ = writeln!(out, "maximizing angle    {:.10}", r.theta_star);
        }
    }
    let _ = writeln!(out, "operator norm       {norm:.10}");
    Ok(Outcome::ok(out, true))
}

fn contraction(args: ContractionArgs) -> CliResult<Outcome> {
    let (a, b) = (load_matrix(&args.a)?, load_matrix(&args.b)?);
    let fact = product_contraction(&a, &b)?;
    let mut report = bound_contraction_product(&a, &b)?;
    if let (Some(path), Some(alpha)) = (args.matrix, args.alpha) {
        report.extend(contraction_radius_bounds(&load_matrix(&path)?, alpha)?);
    }
    let mut out = String::new();
    let _ = writeln!(out, "contraction K with A*B = |A| K |B|:");
    out.push_str(&format!("{:.6}\n", fact.k));
    let _ = writeln!(out, "norm of K      {:.10}", fact.norm_k);
    let _ = writeln!(out, "residual       {:.3e}", fact.residual);
    out.push('\n');
    out.push_str(&bound_table(&report));
    let pass = report.all_satisfied() && fact.is_contraction();
    Ok(Outcome::ok(out, pass))
}

fn schatten(t: &ComplexMatrix, s: Option<&ComplexMatrix>, ps: &[f64], ts: &[f64]) -> CliResult<Outcome> {
    let report = p_radius_report(t, ps, ts)?;
    let mut out = bound_table(&report);
    let mut pass = report.all_satisfied();
    if let Some(s) = s {
        out.push('\n');
        let _ = writeln!(out, "{:<10} {:>6} {:>6} {:>16} {:>16}  status", "exponents", "t", "p", "||T+S||_p", "bound");
        for &t_exp in ts {
            for (label, pe) in [("uniform", PowerExponents::uniform(t_exp)?), ("mixed", PowerExponents::mixed(t_exp)?)] {
                for &p in ps {
                    let (lhs, rhs) = schatten_sum_bound(t, s, pe, p)?;
                    let ok = lhs <= rhs + numrad::bounds::SLACK_TOL;
                    pass &= ok;
                    let _ = writeln!(
                        out,
                        "{label:<10} {t_exp:>6} {p:>6} {lhs:>16.10} {rhs:>16.10}  {}",
                        if ok { "ok" } else { "VIOLATED" }
                    );
                }
            }
        }
    }
    Ok(Outcome::ok(out, pass))
}

fn bound_output(report: &BoundReport, as_json: bool) -> Outcome {
    let text = if as_json { json(report) } else { bound_table(report) };
    Outcome::ok(text, report.all_satisfied())
}

fn format_params(params: &BTreeMap<String, f64>) -> String {
    params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

/// One line per bound: name, parameters, bound value, bounded quantity, slack.
pub fn bound_table(report: &BoundReport) -> String {
    let width = report.iter().map(|r| r.name.len()).max().unwrap_or(4).max(5);
    let pwidth = report.iter().map(|r| format_params(&r.params).len()).max().unwrap_or(0).max(6);
    let mut out = format!(
        "{:<width$}  {:<pwidth$}  {:>5}  {:>16}  {:>16}  {:>11}  status\n",
        "bound", "params", "kind", "value", "reference", "slack"
    );
    for r in report.iter() {
        let kind = match r.kind {
            numrad::BoundKind::Upper => "upper",
            numrad::BoundKind::Lower => "lower",
        };
        let _ = writeln!(
            out,
            "{:<width$}  {:<pwidth$}  {:>5}  {:>16.10}  {:>16.10}  {:>11.3e}  {}",
            r.name,
            format_params(&r.params),
            kind,
            r.value,
            r.reference,
            r.slack,
            if r.satisfied { "ok" } else { "VIOLATED" }
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use numrad::BoundResult;

    #[test]
    fn violated_bound_exits_one() {
        let mut report = BoundReport::default();
        report.push(BoundResult::upper("made_up", 1.0, 2.0));
        let out = bound_output(&report, false);
        assert_eq!(out.code, EXIT_VIOLATION);
        assert!(out.stdout.contains("VIOLATED"));
    }

    #[test]
    fn p_accepts_infinity() {
        assert_eq!(parse_p("inf"), Ok(f64::INFINITY));
        assert_eq!(parse_p("2.5"), Ok(2.5));
        assert!(parse_p("two").is_err());
    }
}
