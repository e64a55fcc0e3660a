//! Acceptance criteria, one printed PASS/FAIL line each. Run with
//! `cargo test -p numrad --test acceptance -- --nocapture` to see the lines.
//!
//! Everything runs inside a single test so the timing criteria are not
//! skewed by other tests sharing the CPU.

mod common;

use std::time::{Duration, Instant};

use common::*;
use numrad::bounds::contraction::{bound_contraction_product, product_contraction};
use numrad::bounds::refined::{bound_product_axb, SingleOperatorBounds};
use numrad::graph::{energy_report, parse_edge_list};
use numrad::harness::{fuzz_verify, FuzzConfig, VerificationReport};
use numrad::linalg::{inf_lambda_distance, polar_decompose, svd};
use numrad::radius::numerical_radius;
use numrad::ComplexMatrix;

// Pinned tolerances.
const RADIUS_TOL: f64 = 1e-8;
const NORM_TOL: f64 = 1e-10;
const POLAR_TOL: f64 = 1e-10;
const CORRECTION_TOL: f64 = 5e-4;
const ROUNDED_BOUND_TOL: f64 = 5e-3;
const EXACT_BOUND_TOL: f64 = 1e-10;
const CONTRACTION_BOUND_TOL: f64 = 1e-8;
const K_TOL: f64 = 1e-9;
const GRAPH_TOL: f64 = 1e-10;
const ORDER_TOL: f64 = 1e-9;
const RADIUS_ORACLE_TOL: f64 = 1e-6;
const INF_ORACLE_TOL: f64 = 1e-8;
const EXAMPLE_BUDGET: Duration = Duration::from_secs(1);
const FUZZ_BUDGET: Duration = Duration::from_secs(60);

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

/// Accumulates named sub-checks for one criterion.
struct Checks {
    ok: bool,
    notes: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Self { ok: true, notes: Vec::new() }
    }

    fn near(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        let good = (got - want).abs() <= tol;
        self.ok &= good;
        self.notes.push(format!("{what}={got:.10} (want {want:.10} ±{tol:e}){}", if good { "" } else { " MISS" }));
    }

    fn holds(&mut self, what: &str, good: bool) {
        self.ok &= good;
        if !good {
            self.notes.push(format!("{what} FAILED"));
        }
    }

    fn within(&mut self, what: &str, elapsed: Duration, budget: Duration) {
        let good = elapsed < budget;
        self.ok &= good;
        self.notes.push(format!("{what} {:.3}s (budget {}s)", elapsed.as_secs_f64(), budget.as_secs()));
    }

    fn finish(self, id: u32, title: &'static str) -> Outcome {
        Outcome { id, title, pass: self.ok, detail: self.notes.join("; ") }
    }
}

fn shift() -> ComplexMatrix {
    ComplexMatrix::from_real(3, 3, &[0., 1., 0., 0., 0., 2., 0., 0., 0.]).unwrap()
}

fn example_radius_and_norm_refinement() -> Outcome {
    let start = Instant::now();
    let mut c = Checks::new();
    let t = shift();
    c.near("w", numerical_radius(&t, None).unwrap().value, 5f64.sqrt() / 2.0, RADIUS_TOL);
    c.near("norm", svd(&t).norm(), 2.0, NORM_TOL);
    let polar = polar_decompose(&t, None).unwrap();
    let u = ComplexMatrix::from_real(3, 3, &[0., 1., 0., 0., 0., 1., 0., 0., 0.]).unwrap();
    let modulus = ComplexMatrix::from_real_diag(&[0.0, 1.0, 2.0]);
    c.holds("U entrywise", polar.isometry.max_abs_diff(&u) <= POLAR_TOL);
    c.holds("|T| entrywise", polar.modulus.max_abs_diff(&modulus) <= POLAR_TOL);
    let b = SingleOperatorBounds::new(&t).unwrap().norm_refinement(0.01);
    c.near("correction", b.correction.unwrap(), 0.06089, CORRECTION_TOL);
    c.near("refined", b.value, 1.9391, ROUNDED_BOUND_TOL);
    c.within("runtime", start.elapsed(), EXAMPLE_BUDGET);
    c.finish(1, "3x3 shift: radius, norm, polar factors, norm refinement at t=0.01")
}

fn example_product() -> Outcome {
    let mut c = Checks::new();
    let id = ComplexMatrix::identity(3);
    let report = bound_product_axb(&shift(), &id, &id).unwrap();
    let refined = report.get("product_refined").unwrap();
    c.near("correction", refined.correction.unwrap(), 0.2934, CORRECTION_TOL);
    c.near("refined", refined.value, 2.3532, ROUNDED_BOUND_TOL);
    c.near("unrefined", report.get("product").unwrap().value, 2.5, EXACT_BOUND_TOL);
    c.finish(2, "AXB with A = shift, X = B = I")
}

fn example_contraction() -> Outcome {
    let mut c = Checks::new();
    let id = ComplexMatrix::identity(3);
    let report = bound_contraction_product(&shift(), &id).unwrap();
    let middle = report.get("product_contraction").unwrap();
    c.near("w(A*B)", middle.reference, 5f64.sqrt() / 2.0, CONTRACTION_BOUND_TOL);
    c.near("middle", middle.value, 2.0, CONTRACTION_BOUND_TOL);
    c.near("right", report.get("product_contraction_coarse").unwrap().value, 2.5, CONTRACTION_BOUND_TOL);
    let k = product_contraction(&shift(), &id).unwrap().k;
    let want = ComplexMatrix::from_real(3, 3, &[0., 0., 0., 1., 0., 0., 0., 1., 0.]).unwrap();
    let diff = k.max_abs_diff(&want);
    c.holds("K entrywise", diff <= K_TOL);
    c.notes.push(format!("max |K - K_expected| = {diff:.1e}"));
    c.finish(3, "contraction bounds for w(A*B), A = shift, B = I")
}

fn example_graphs() -> Outcome {
    let mut c = Checks::new();
    let g1 = energy_report(&parse_edge_list("8\n1 2\n2 3\n3 4\n3 6\n4 5\n5 6\n6 7\n7 8\n").unwrap());
    let g2 = energy_report(&parse_edge_list("10\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 8\n3 8\n6 9\n9 10\n").unwrap());
    let value = |r: &numrad::EnergyReport, name: &str| r.bounds.get(name).unwrap().value;
    c.near("G1 degree-sum", value(&g1, "degree_sum_lower"), 16.0 / 7f64.sqrt(), GRAPH_TOL);
    c.near("G1 2sqrt(m)", value(&g1, "sqrt_edges_lower"), 2.0 * 8f64.sqrt(), GRAPH_TOL);
    c.near("G2 degree-sum", value(&g2, "degree_sum_lower"), 20.0 / 6f64.sqrt(), GRAPH_TOL);
    c.near("G2 2sqrt(m)", value(&g2, "sqrt_edges_lower"), 2.0 * 10f64.sqrt(), GRAPH_TOL);
    c.holds("E(G1) above bound", g1.energy > value(&g1, "degree_sum_lower"));
    c.holds("E(G2) above bound", g2.energy > value(&g2, "degree_sum_lower"));
    c.notes.push(format!("E(G1)={:.6}, E(G2)={:.6}", g1.energy, g2.energy));
    c.finish(4, "graph energy lower bounds on the two example graphs")
}

/// Seed 7, 200 trials for each dimension 2..=6, every ensemble in rotation.
fn fuzz_suite() -> (Outcome, VerificationReport) {
    let mut c = Checks::new();
    let start = Instant::now();
    let mut total = VerificationReport::empty();
    for dim in 2..=6 {
        let report = fuzz_verify(&FuzzConfig::new(7, 200, dim)).unwrap();
        c.holds(&format!("dim {dim}"), report.pass);
        total.merge(&report);
    }
    let evaluations: usize = total.checks.values().map(|s| s.trials).sum();
    c.notes.push(format!(
        "{} checks, {} evaluations, {} violations{}",
        total.checks.len(),
        evaluations,
        total.total_violations(),
        if total.pass { String::new() } else { format!(" in {:?}", total.failing()) }
    ));
    c.within("runtime", start.elapsed(), FUZZ_BUDGET);
    (c.finish(5, "fuzz suite: seed 7, 200 trials, dims 2-6, zero violations"), total)
}

fn refinement_orderings(report: &VerificationReport) -> Outcome {
    let mut c = Checks::new();
    let mut count = 0;
    for (name, stats) in &report.checks {
        if name.ends_with("_vs_partner") || name.ends_with("_vs_classical") {
            count += 1;
            c.holds(name, stats.violations == 0 && stats.worst_slack >= -ORDER_TOL);
        }
    }
    for chain in ["contraction_vs_partner", "contraction_root_vs_partner"] {
        c.holds(&format!("{chain} present"), report.checks.contains_key(chain));
    }
    c.notes.push(format!("{count} orderings, tolerance {ORDER_TOL:e}"));
    c.finish(6, "refined <= unrefined on the fuzz set, including the |K|^(1/2) chain")
}

fn oracle_equivalence() -> Outcome {
    let mut c = Checks::new();
    let mut worst_radius = 0.0f64;
    for k in 0..50u64 {
        let dim = 2 + (k as usize % 7);
        let t = matrix(&mut rng(9000 + k), dim, ensemble(k as usize));
        let w = numerical_radius(&t, None).unwrap().value;
        let grid = radius_grid(&t, 100_000);
        worst_radius = worst_radius.max((w - grid).abs());
    }
    c.holds("radius vs 1e5-angle grid", worst_radius <= RADIUS_ORACLE_TOL);
    let mut worst_inf = 0.0f64;
    for k in 0..50u64 {
        let mut r = rng(7000 + k);
        let dim = 1 + (k as usize % 6);
        let (u, v) = (vector(&mut r, dim), vector(&mut r, dim));
        worst_inf = worst_inf.max((inf_lambda_distance(&u, &v).unwrap() - inf_lambda_grid(&u, &v)).abs());
    }
    c.holds("inf-lambda vs 400x400 grid", worst_inf <= INF_ORACLE_TOL);
    c.notes.push(format!("max radius gap {worst_radius:.1e} (tol {RADIUS_ORACLE_TOL:e})"));
    c.notes.push(format!("max inf gap {worst_inf:.1e} (tol {INF_ORACLE_TOL:e})"));
    c.finish(7, "oracle equivalence on 50 seeded matrices and 50 vector pairs")
}

#[test]
fn acceptance() {
    let mut outcomes = vec![example_radius_and_norm_refinement(), example_product(), example_contraction(), example_graphs()];
    let (fuzz, report) = fuzz_suite();
    outcomes.push(fuzz);
    outcomes.push(refinement_orderings(&report));
    outcomes.push(oracle_equivalence());

    println!();
    for o in &outcomes {
        println!("[{}] {}. {} -- {}", if o.pass { "PASS" } else { "FAIL" }, o.id, o.title, o.detail);
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert!(failed.is_empty(), "acceptance criteria failed: {failed:?}");
}
