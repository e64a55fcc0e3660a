//! One fuzz trial: every inequality evaluated on freshly drawn inputs.

use num_complex::Complex64;
use rand::Rng;

use super::random::{random_matrix, random_vector, Ensemble};
use super::{FuzzConfig, VerificationReport, BOUND_TOL, ORDER_TOL};
use crate::bounds::contraction::{block_positive, bound_contraction_product, contraction_factor, product_contraction, ContractionKato};
use crate::bounds::refined::{bound_product_axb, bound_product_st, buzano_psd, ProductFactors, SingleOperatorBounds};
use crate::bounds::schatten::{schatten_interpolation, PowerExponents, PowerRadius, PowerVariant, SumPair};
use crate::bounds::{quad_form, BoundReport, PointwiseCheck};
use crate::error::Result;
use crate::graph::{energy_report, Graph};
use crate::linalg::{inner, psd_function_apply, schatten_of_values, svd, ComplexMatrix, Moduli};
use crate::radius::p_numerical_radius;

/// Tolerance for monotonicity of Schatten norms in `p`.
const MONOTONE_TOL: f64 = 1e-10;
/// Random graphs in the graph checks have at most this many vertices.
const MAX_GRAPH_ORDER: usize = 12;

pub(super) fn run_trial<R: Rng>(
    config: &FuzzConfig,
    ensemble: Ensemble,
    rng: &mut R,
    report: &mut VerificationReport,
) -> Result<()> {
    let n = config.dim;
    let t = random_matrix(rng, n, ensemble);
    let s = random_matrix(rng, n, ensemble);
    let pairs: Vec<(Vec<Complex64>, Vec<Complex64>)> =
        (0..config.pairs).map(|_| (random_vector(rng, n), random_vector(rng, n))).collect();

    let single = SingleOperatorBounds::new(&t)?;
    let w = single.radius().value;
    radius_checks(&t, &single, report);
    kato_checks(config, &single, &pairs, report)?;
    record_bounds(report, &single.grid_report(&config.t_grid, &config.alpha_grid)?);
    product_checks(config, rng, &t, &s, &single, &pairs, report)?;
    contraction_checks(config, rng, &t, &s, w, &pairs, report)?;
    schatten_checks(config, &t, &s, w, report)?;
    if config.graphs {
        graph_checks(rng, report);
    }
    Ok(())
}

/// Records each bound's slack and, where present, its ordering against the
/// coarser partner bound.
fn record_bounds(report: &mut VerificationReport, bounds: &BoundReport) {
    for b in bounds.iter() {
        report.record(&b.name, b.slack, BOUND_TOL);
        if let Some(gap) = b.refinement_gap() {
            report.record(&format!("{}_vs_partner", b.name), gap, ORDER_TOL);
        }
    }
}

fn record_pointwise(report: &mut VerificationReport, name: &str, c: &PointwiseCheck) {
    report.record(name, c.rhs_refined - c.lhs, BOUND_TOL);
    report.record(&format!("{name}_vs_classical"), c.rhs_classical - c.rhs_refined, ORDER_TOL);
}

fn radius_checks(t: &ComplexMatrix, single: &SingleOperatorBounds, report: &mut VerificationReport) {
    let r = single.radius();
    let attained = r.attained(t).norm();
    report.record("radius_maximizer_attains", -(attained - r.value).abs(), BOUND_TOL);
    let unit = crate::linalg::norm(&r.maximizer);
    report.record("radius_maximizer_unit", -(unit - 1.0).abs(), 1e-12);
}

fn kato_checks(
    config: &FuzzConfig,
    single: &SingleOperatorBounds,
    pairs: &[(Vec<Complex64>, Vec<Complex64>)],
    report: &mut VerificationReport,
) -> Result<()> {
    let op = single.operator();
    for &t in &config.t_grid {
        for (x, y) in pairs {
            record_pointwise(report, "kato", &op.kato_pointwise(x, y, t)?);
        }
        let x0 = &single.radius().maximizer;
        record_pointwise(report, "kato", &op.kato_pointwise(x0, x0, t)?);
    }
    Ok(())
}

fn product_checks<R: Rng>(
    config: &FuzzConfig,
    rng: &mut R,
    t: &ComplexMatrix,
    s: &ComplexMatrix,
    single: &SingleOperatorBounds,
    pairs: &[(Vec<Complex64>, Vec<Complex64>)],
    report: &mut VerificationReport,
) -> Result<()> {
    let n = t.rows();
    let x_mat = random_matrix(rng, n, Ensemble::Psd);
    let generic = ProductFactors::new(t, &x_mat, s)?;
    for (x, y) in pairs {
        record_pointwise(report, "buzano_product", &generic.pointwise(x, y)?);
        let (lhs, rhs) = buzano_psd(&x_mat, x, y)?;
        report.record("buzano_psd", rhs - lhs, BOUND_TOL);
    }
    let x0 = &single.radius().maximizer;
    for &tt in &config.t_grid {
        let half = ProductFactors::split_half(single.operator(), tt)?;
        let sym = ProductFactors::split_symmetric(single.operator(), tt)?;
        for (x, y) in pairs.iter().map(|(x, y)| (x, y)).chain([(x0, x0)]) {
            record_pointwise(report, "buzano_split_half", &half.pointwise(x, y)?);
            record_pointwise(report, "buzano_split_symmetric", &sym.pointwise(x, y)?);
        }
    }

    if svd(s).norm() > 0.0 {
        record_bounds(report, &bound_product_axb(t, &x_mat, s)?);
    }
    let id = ComplexMatrix::identity(n);
    let mut with_identity = bound_product_axb(&id, &id, t)?;
    for b in &mut with_identity.results {
        b.name = format!("{}_identity", b.name);
    }
    record_bounds(report, &with_identity);
    if svd(t).norm() > 0.0 {
        record_bounds(report, &bound_product_st(s, t)?);
    }
    Ok(())
}

fn contraction_checks<R: Rng>(
    config: &FuzzConfig,
    rng: &mut R,
    t: &ComplexMatrix,
    s: &ComplexMatrix,
    w: f64,
    pairs: &[(Vec<Complex64>, Vec<Complex64>)],
    report: &mut VerificationReport,
) -> Result<()> {
    let n = t.rows();
    let mt = Moduli::new(t)?;
    for &alpha in &config.alpha_grid {
        let ck = ContractionKato::with_moduli(t, &mt, alpha);
        let f = ck.factorization();
        report.record_bool("contraction_extracted", f.is_contraction());
        report.record("contraction_modulus_order", f.modulus_order_gap(), ORDER_TOL);
        for (x, y) in pairs {
            record_pointwise(report, "contraction_kato", &ck.check(x, y)?);
        }
        record_bounds(report, &ck.radius_bounds(alpha, w));

        // [f² T*; T g²] is positive; scaling T by c keeps it positive iff c ≤ 1.
        let (f_sq, g_sq) = (mt.abs_pow(2.0 * alpha), mt.abs_adj_pow(2.0 * (1.0 - alpha)));
        for c in [0.5, 1.0, 1.5] {
            block_equivalence(report, &f_sq, &g_sq, &t.scale_real(c), pairs)?;
        }
    }

    // Generic blocks: C = B^{1/2} K A^{1/2} with ‖K‖ on either side of 1.
    let a = random_matrix(rng, n, Ensemble::Psd);
    let b = random_matrix(rng, n, Ensemble::Psd);
    let k = random_matrix(rng, n, Ensemble::Contraction);
    let scale = if rng.random::<bool>() { 0.8 } else { 1.25 };
    let c = &(&psd_function_apply(&b, 0.5)? * &k.scale_real(scale)) * &psd_function_apply(&a, 0.5)?;
    block_equivalence(report, &a, &b, &c, pairs)?;

    let fact = product_contraction(t, s)?;
    report.record_bool("product_contraction_extracted", fact.is_contraction());
    report.record("contraction_modulus_order", fact.modulus_order_gap(), ORDER_TOL);
    record_bounds(report, &bound_contraction_product(t, s)?);
    Ok(())
}

/// Positivity of `[A C*; C B]` must agree with extracting a contraction, and
/// positivity must give `|⟨Cx,y⟩|² ≤ ⟨Ax,x⟩⟨By,y⟩`.
fn block_equivalence(
    report: &mut VerificationReport,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    pairs: &[(Vec<Complex64>, Vec<Complex64>)],
) -> Result<()> {
    let positive = block_positive(a, b, c, None)?;
    let fact = contraction_factor(a, b, c, None)?;
    report.record_bool("block_positive_iff_contraction", positive == fact.is_contraction());
    if positive {
        for (x, y) in pairs {
            let lhs = inner(&c.mul_vec(x)?, y).norm();
            let rhs = (quad_form(a, x).max(0.0) * quad_form(b, y).max(0.0)).sqrt();
            report.record("block_positive_cauchy_schwarz", rhs - lhs, ORDER_TOL);
        }
    }
    Ok(())
}

fn schatten_checks(
    config: &FuzzConfig,
    t: &ComplexMatrix,
    s: &ComplexMatrix,
    w: f64,
    report: &mut VerificationReport,
) -> Result<()> {
    let pair = SumPair::new(t, s)?;
    for &alpha in &config.alpha_grid {
        for &beta in &config.alpha_grid {
            for (l, r) in pair.singular_value_bounds(PowerExponents::new(alpha, beta)?) {
                report.record("singular_value_sum", r - l, ORDER_TOL);
            }
        }
    }
    for &p in &config.p_grid {
        for &tt in &config.t_grid {
            let (l, r) = pair.schatten(PowerExponents::uniform(tt)?, p)?;
            report.record("schatten_sum_uniform", r - l, ORDER_TOL);
            let (l, r) = pair.schatten(PowerExponents::mixed(tt)?, p)?;
            report.record("schatten_sum_mixed", r - l, ORDER_TOL);
        }
    }
    let (l, r) = pair.schatten(PowerExponents::uniform(0.5)?, f64::INFINITY)?;
    report.record("schatten_sum_half", r - l, ORDER_TOL);
    if let Some((l, r)) = pair.normal_pair() {
        report.record("schatten_sum_normal", r - l, ORDER_TOL);
    }

    // ‖T‖ ≤ ‖T‖_q ≤ ‖T‖_p for 1 ≤ p ≤ q.
    let sv = svd(t).singulars;
    let mut ps: Vec<f64> = config.p_grid.iter().copied().filter(|&p| p >= 1.0).collect();
    ps.sort_by(f64::total_cmp);
    let norms: Vec<f64> = ps.iter().map(|&p| schatten_of_values(&sv, p)).collect();
    for pair in norms.windows(2) {
        report.record("schatten_monotone", pair[0] - pair[1], MONOTONE_TOL * pair[0].max(1.0));
    }
    report.record("schatten_monotone", norms.last().copied().unwrap_or(sv[0]) - sv[0], MONOTONE_TOL);

    let pr = PowerRadius::from_moduli(Moduli::new(t)?);
    let mut radii: Vec<(f64, f64)> = Vec::new();
    for &p in &config.p_grid {
        let w_p = if p.is_infinite() { w } else { p_numerical_radius(t, p, None)? };
        radii.push((p, w_p));
        let mut bounds = BoundReport::default();
        bounds.push(pr.bound(0.5, p, PowerVariant::Half, w_p)?);
        for &tt in &config.t_grid {
            bounds.push(pr.bound(tt, p, PowerVariant::Symmetric, w_p)?);
            bounds.push(pr.bound(tt, p, PowerVariant::Mixed, w_p)?);
        }
        record_bounds(report, &bounds);
        if p.is_finite() {
            for &tt in config.t_grid.iter().filter(|&&x| x > 0.0 && x < 1.0) {
                let (l, r) = schatten_interpolation(t, p, tt)?;
                report.record("schatten_interpolation", r - l, ORDER_TOL * l.max(1.0));
            }
        }
    }
    radii.retain(|&(p, _)| p >= 1.0);
    radii.sort_by(|a, b| a.0.total_cmp(&b.0));
    for pair in radii.windows(2) {
        report.record("p_radius_monotone", pair[0].1 - pair[1].1, ORDER_TOL);
    }
    let mut squared = BoundReport::default();
    for &tt in &config.t_grid {
        squared.push(pr.squared_radius(tt, w)?);
    }
    record_bounds(report, &squared);
    Ok(())
}

fn graph_checks<R: Rng>(rng: &mut R, report: &mut VerificationReport) {
    let order = rng.random_range(1..=MAX_GRAPH_ORDER);
    let q = [0.2, 0.5, 0.8][rng.random_range(0..3)];
    let g = Graph::random(rng, order, q);
    let e = energy_report(&g);
    for b in e.bounds.iter() {
        report.record(&format!("graph_{}", b.name), b.slack, BOUND_TOL);
    }
    let two_m = 2.0 * e.m as f64;
    let frob_sq = g.adjacency().frobenius_norm().powi(2);
    let eig_sq: f64 = e.eigenvalues.iter().map(|l| l * l).sum();
    report.record("graph_trace_identity", -(two_m - frob_sq).abs().max((two_m - eig_sq).abs()), ORDER_TOL);
    report.record("graph_norm_energy_product", e.spectral_norm * e.energy - two_m, BOUND_TOL);
    let new = e.bounds.get("degree_sum_lower").expect("present").value;
    let old = e.bounds.get("sqrt_edges_lower").expect("present").value;
    if (new - old).abs() > ORDER_TOL {
        report.record_bool("graph_improvement_iff_m_exceeds_degree_sum", (new > old) == e.degree_sum_bound_improves());
    }
}
