//! Upper bounds for numerical radii and Schatten norms, and the pointwise
//! inner-product inequalities they come from.
//!
//! Each bound is reported together with the exact quantity it bounds, so a
//! report doubles as a numerical check of the inequality.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain_err, Result};
use crate::linalg::{eigenvalues_of_hermitian, inner, norm, ComplexMatrix, HERMITIAN_TOL, PSD_TOL};

pub mod contraction;
pub mod refined;
pub mod schatten;

/// A bound counts as satisfied when its slack is at least `−SLACK_TOL`.
pub const SLACK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// `reference ≤ value`
    Upper,
    /// `value ≤ reference`
    Lower,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundResult {
    pub name: String,
    pub kind: BoundKind,
    pub value: f64,
    /// The quantity being bounded, e.g. `w(T)`.
    pub reference: f64,
    /// `value − reference` for upper bounds, `reference − value` for lower.
    pub slack: f64,
    pub satisfied: bool,
    pub params: BTreeMap<String, f64>,
    /// The defect term of a refined bound. For bounds of the form
    /// `k·(M − d)` this is `d`, before the outer factor `k`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correction: Option<f64>,
    /// The coarser bound this one refines; `value ≤ partner` is expected.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner: Option<f64>,
    /// A correction denominator vanished and the correction was zeroed.
    pub degenerate: bool,
}

impl BoundResult {
    pub fn upper(name: impl Into<String>, value: f64, reference: f64) -> Self {
        Self::new(name.into(), BoundKind::Upper, value, reference)
    }

    pub fn lower(name: impl Into<String>, value: f64, reference: f64) -> Self {
        Self::new(name.into(), BoundKind::Lower, value, reference)
    }

    fn new(name: String, kind: BoundKind, value: f64, reference: f64) -> Self {
        let slack = match kind {
            BoundKind::Upper => value - reference,
            BoundKind::Lower => reference - value,
        };
        Self {
            name,
            kind,
            value,
            reference,
            slack,
            satisfied: slack >= -SLACK_TOL,
            params: BTreeMap::new(),
            correction: None,
            partner: None,
            degenerate: false,
        }
    }

    pub fn param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_owned(), value);
        self
    }

    pub fn refining(mut self, partner: f64, correction: Option<f64>) -> Self {
        self.partner = Some(partner);
        self.correction = correction;
        self
    }

    pub fn degenerate(mut self, flag: bool) -> Self {
        self.degenerate = flag;
        self
    }

    /// `partner − value`, when there is a partner.
    pub fn refinement_gap(&self) -> Option<f64> {
        self.partner.map(|p| p - self.value)
    }
}

/// Ordered list of bounds from one evaluation.
#[derive(Debug, Clone, Default, Serialize)]
pub struct BoundReport {
    pub results: Vec<BoundResult>,
}

impl BoundReport {
    pub fn push(&mut self, r: BoundResult) {
        self.results.push(r);
    }

    pub fn extend(&mut self, other: BoundReport) {
        self.results.extend(other.results);
    }

    pub fn get(&self, name: &str) -> Option<&BoundResult> {
        self.results.iter().find(|r| r.name == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BoundResult> {
        self.results.iter()
    }

    pub fn all_satisfied(&self) -> bool {
        self.results.iter().all(|r| r.satisfied)
    }

    pub fn len(&self) -> usize {
        self.results.len()
    }

    pub fn is_empty(&self) -> bool {
        self.results.is_empty()
    }
}

impl IntoIterator for BoundReport {
    type Item = BoundResult;
    type IntoIter = std::vec::IntoIter<BoundResult>;

    fn into_iter(self) -> Self::IntoIter {
        self.results.into_iter()
    }
}

/// One evaluation of a pointwise inequality `lhs ≤ rhs_refined ≤ rhs_classical`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PointwiseCheck {
    pub lhs: f64,
    pub rhs_refined: f64,
    pub rhs_classical: f64,
    /// The refinement does not apply and `rhs_refined = rhs_classical`.
    pub degenerate: bool,
}

impl PointwiseCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.rhs_refined + tol && self.rhs_refined <= self.rhs_classical + tol
    }
}

/// Denominators below this (relative to the problem scale) are treated as zero.
const DEGENERATE_FLOOR: f64 = 1e-14;

pub(crate) fn is_negligible(value: f64, scale: f64) -> bool {
    value <= DEGENERATE_FLOOR * scale.max(f64::MIN_POSITIVE)
}

/// `(‖mult‖ / (k·‖den‖)) · inf_λ ‖u − λv‖²`, or `(0, true)` when `‖den‖`
/// vanishes relative to `scale`.
pub(crate) fn defect_term(
    mult: &[Complex64],
    den: &[Complex64],
    k: f64,
    u: &[Complex64],
    v: &[Complex64],
    scale: f64,
) -> (f64, bool) {
    let d = norm(den);
    if is_negligible(d, scale) {
        return (0.0, true);
    }
    let inf = crate::linalg::inf_lambda_distance(u, v).expect("equal lengths");
    (norm(mult) / (k * d) * inf, false)
}

/// Operator norm of a Hermitian matrix, `max |λ_i|`.
pub(crate) fn hermitian_norm(m: &ComplexMatrix) -> f64 {
    eigenvalues_of_hermitian(m.hermitian_part()).iter().fold(0.0f64, |a, l| a.max(l.abs()))
}

/// Hermitian eigenvalues of a matrix known to be Hermitian up to rounding.
pub(crate) fn hermitian_values(m: &ComplexMatrix) -> Vec<f64> {
    eigenvalues_of_hermitian(m.hermitian_part())
}

/// `⟨M x, x⟩` for Hermitian `M` (real part).
pub(crate) fn quad_form(m: &ComplexMatrix, x: &[Complex64]) -> f64 {
    inner(&m.mul_vec(x).expect("dimension"), x).re
}

/// Checks that `m` is Hermitian positive semidefinite within the library
/// tolerances.
pub(crate) fn require_psd(m: &ComplexMatrix, what: &str) -> Result<()> {
    m.require_square(what)?;
    if !m.is_hermitian(HERMITIAN_TOL) {
        return domain_err(format!("{what} must be Hermitian"));
    }
    let vals = hermitian_values(m);
    let scale = vals.iter().fold(0.0f64, |a, l| a.max(l.abs()));
    if vals[0] < -PSD_TOL * scale.max(1.0) {
        return domain_err(format!("{what} must be positive semidefinite (min eigenvalue {:e})", vals[0]));
    }
    Ok(())
}

pub(crate) fn check_unit_interval(value: f64, what: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return domain_err(format!("{what} must lie in [0, 1], got {value}"));
    }
    Ok(())
}
