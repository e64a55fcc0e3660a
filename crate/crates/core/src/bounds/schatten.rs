//! Singular value and Schatten p-norm bounds for sums `T + S`, and the
//! p-numerical radius bounds they induce.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{check_unit_interval, hermitian_norm, hermitian_values, BoundReport, BoundResult};
use crate::error::{dim_err, domain_err, Error, Result};
use crate::linalg::{check_schatten_p, schatten_of_values, svd, ComplexMatrix, Moduli};
use crate::radius::p_numerical_radius;

/// Normality defects below this count as normal.
pub const NORMAL_TOL: f64 = 1e-8;

/// Exponents of the function pairs `f = t^α, g = t^{1−α}` (for `T`) and
/// `e = t^β, h = t^{1−β}` (for `S`); `f·g = e·h = t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerExponents {
    pub alpha: f64,
    pub beta: f64,
}

impl PowerExponents {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        check_unit_interval(alpha, "alpha")?;
        check_unit_interval(beta, "beta")?;
        Ok(Self { alpha, beta })
    }

    /// `g² = |T*|^{2t}`, `h² = |S*|^{2t}`.
    pub fn uniform(t: f64) -> Result<Self> {
        Self::new(1.0 - t, 1.0 - t)
    }

    /// `g² = |T*|^{2t}`, `h² = |S*|^{2(1−t)}`.
    pub fn mixed(t: f64) -> Result<Self> {
        Self::new(1.0 - t, t)
    }
}

/// A pair `T, S` of equal-size square matrices with their polar factors.
#[derive(Debug, Clone)]
pub struct SumPair {
    sum: ComplexMatrix,
    t: ComplexMatrix,
    s: ComplexMatrix,
    mt: Moduli,
    ms: Moduli,
}

impl SumPair {
    pub fn new(t: &ComplexMatrix, s: &ComplexMatrix) -> Result<Self> {
        let n = t.require_square("T")?;
        if s.require_square("S")? != n {
            return dim_err("T and S must have the same dimension");
        }
        Ok(Self { sum: t.try_add(s)?, t: t.clone(), s: s.clone(), mt: Moduli::new(t)?, ms: Moduli::new(s)? })
    }

    /// `(‖g²(|T*|) + h²(|S*|)‖, f²(|T|) + e²(|S|))`
    fn factors(&self, pe: PowerExponents) -> (f64, ComplexMatrix) {
        let left = &self.mt.abs_adj_pow(2.0 * (1.0 - pe.alpha)) + &self.ms.abs_adj_pow(2.0 * (1.0 - pe.beta));
        let right = &self.mt.abs_pow(2.0 * pe.alpha) + &self.ms.abs_pow(2.0 * pe.beta);
        (hermitian_norm(&left), right)
    }

    /// `(s_j(T+S), ‖g²(|T*|)+h²(|S*|)‖^{1/2} s_j^{1/2}(f²(|T|)+e²(|S|)))` for every `j`.
    pub fn singular_value_bounds(&self, pe: PowerExponents) -> Vec<(f64, f64)> {
        let (left, right) = self.factors(pe);
        let lhs = svd(&self.sum).singulars;
        let mut rhs: Vec<f64> = hermitian_values(&right).iter().map(|v| v.max(0.0)).collect();
        rhs.reverse();
        lhs.into_iter().zip(rhs).map(|(l, r)| (l, (left * r).sqrt())).collect()
    }

    /// `(‖T+S‖_p, ‖g²(|T*|)+h²(|S*|)‖^{1/2} ‖f²(|T|)+e²(|S|)‖_{p/2}^{1/2})`.
    pub fn schatten(&self, pe: PowerExponents, p: f64) -> Result<(f64, f64)> {
        check_schatten_p(p)?;
        let (left, right) = self.factors(pe);
        let lhs = schatten_of_values(&svd(&self.sum).singulars, p);
        let right_norm = schatten_of_values(&hermitian_values(&right), p / 2.0);
        Ok((lhs, (left * right_norm).sqrt()))
    }

    /// `(‖T+S‖, ‖|T| + |S|‖)` when both matrices are normal, else `None`.
    pub fn normal_pair(&self) -> Option<(f64, f64)> {
        if self.t.normality_defect() >= NORMAL_TOL || self.s.normality_defect() >= NORMAL_TOL {
            return None;
        }
        let rhs = hermitian_norm(&(&self.mt.abs_pow(1.0) + &self.ms.abs_pow(1.0)));
        Some((svd(&self.sum).norm(), rhs))
    }
}

/// `s_j(T+S) ≤ ‖g²(|T*|)+h²(|S*|)‖^{1/2} s_j^{1/2}(f²(|T|)+e²(|S|))`
/// for a 1-based index `j`; returns `(lhs, rhs)`.
pub fn singular_value_sum_bound(t: &ComplexMatrix, s: &ComplexMatrix, pe: PowerExponents, j: usize) -> Result<(f64, f64)> {
    let pair = SumPair::new(t, s)?;
    let n = t.rows();
    if j == 0 || j > n {
        return Err(Error::Index { index: j, len: n });
    }
    Ok(pair.singular_value_bounds(pe)[j - 1])
}

/// `‖T+S‖_p ≤ ‖g²(|T*|)+h²(|S*|)‖^{1/2} ‖f²(|T|)+e²(|S|)‖_{p/2}^{1/2}`;
/// returns `(lhs, rhs)`.
pub fn schatten_sum_bound(t: &ComplexMatrix, s: &ComplexMatrix, pe: PowerExponents, p: f64) -> Result<(f64, f64)> {
    check_schatten_p(p)?;
    SumPair::new(t, s)?.schatten(pe, p)
}

/// Choice of exponents in the p-numerical radius bound
/// `w_p(T) ≤ ½‖g²(|T*|) + h²(|T|)‖^{1/2} ‖f²(|T|) + e²(|T*|)‖_{p/2}^{1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerVariant {
    /// `½‖|T|^{2(1−t)}+|T*|^{2(1−t)}‖^{1/2} ‖|T|^{2t}+|T*|^{2t}‖_{p/2}^{1/2}`
    Symmetric,
    /// `½‖|T|^{2t}+|T*|^{2(1−t)}‖^{1/2} ‖|T|^{2t}+|T*|^{2(1−t)}‖_{p/2}^{1/2}`
    Mixed,
    /// `½‖|T|+|T*|‖^{1/2} ‖|T|+|T*|‖_{p/2}^{1/2}`; ignores `t`.
    Half,
}

impl PowerVariant {
    pub const ALL: [PowerVariant; 3] = [PowerVariant::Symmetric, PowerVariant::Mixed, PowerVariant::Half];

    pub fn as_str(self) -> &'static str {
        match self {
            PowerVariant::Symmetric => "symmetric",
            PowerVariant::Mixed => "mixed",
            PowerVariant::Half => "half",
        }
    }
}

impl fmt::Display for PowerVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PowerVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symmetric" => Ok(PowerVariant::Symmetric),
            "mixed" => Ok(PowerVariant::Mixed),
            "half" => Ok(PowerVariant::Half),
            other => domain_err(format!("unknown variant {other:?}; expected symmetric, mixed or half")),
        }
    }
}

/// Right-hand sides of the p-numerical radius bounds for one matrix.
#[derive(Debug, Clone)]
pub struct PowerRadius {
    moduli: Moduli,
}

impl PowerRadius {
    pub fn new(t: &ComplexMatrix) -> Result<Self> {
        t.require_square("T")?;
        Ok(Self { moduli: Moduli::new(t)? })
    }

    pub(crate) fn from_moduli(moduli: Moduli) -> Self {
        Self { moduli }
    }

    fn sum(&self, a: f64, b: f64) -> ComplexMatrix {
        &self.moduli.abs_pow(a) + &self.moduli.abs_adj_pow(b)
    }

    /// `(‖left‖, ‖right‖_{p/2})` for the chosen variant.
    fn factors(&self, t: f64, p: f64, variant: PowerVariant) -> (f64, f64) {
        let (left, right) = match variant {
            PowerVariant::Symmetric => (self.sum(2.0 * (1.0 - t), 2.0 * (1.0 - t)), self.sum(2.0 * t, 2.0 * t)),
            PowerVariant::Mixed => {
                let m = self.sum(2.0 * t, 2.0 * (1.0 - t));
                (m.clone(), m)
            }
            PowerVariant::Half => (self.sum(1.0, 1.0), self.sum(1.0, 1.0)),
        };
        (hermitian_norm(&left), schatten_of_values(&hermitian_values(&right), p / 2.0))
    }

    pub fn value(&self, t: f64, p: f64, variant: PowerVariant) -> Result<f64> {
        check_unit_interval(t, "t")?;
        check_schatten_p(p)?;
        let (l, r) = self.factors(t, p, variant);
        Ok(0.5 * (l * r).sqrt())
    }

    /// The bound against a precomputed `w_p(T)`.
    pub fn bound(&self, t: f64, p: f64, variant: PowerVariant, w_p: f64) -> Result<BoundResult> {
        let v = self.value(t, p, variant)?;
        let mut r = BoundResult::upper(format!("p_radius_{variant}"), v, w_p).param("p", p);
        if variant != PowerVariant::Half {
            r = r.param("t", t);
        }
        Ok(r)
    }

    /// `w²(T) ≤ ¼‖|T|^{2(1−t)}+|T*|^{2(1−t)}‖ ‖|T|^{2t}+|T*|^{2t}‖ ≤ ½‖|T|²+|T*|²‖`.
    pub fn squared_radius(&self, t: f64, w: f64) -> Result<BoundResult> {
        check_unit_interval(t, "t")?;
        let (l, r) = self.factors(t, f64::INFINITY, PowerVariant::Symmetric);
        let coarse = 0.5 * hermitian_norm(&self.sum(2.0, 2.0));
        Ok(BoundResult::upper("squared_radius", 0.25 * l * r, w * w).param("t", t).refining(coarse, None))
    }
}

/// p-numerical radius bound of the chosen variant, checked against `w_p(T)`.
pub fn p_radius_power_bound(t: &ComplexMatrix, t_exp: f64, p: f64, variant: PowerVariant) -> Result<BoundResult> {
    let pr = PowerRadius::new(t)?;
    pr.value(t_exp, p, variant)?;
    let w_p = p_numerical_radius(t, p, None)?;
    pr.bound(t_exp, p, variant, w_p)
}

/// All p-numerical radius bounds of `T` over the given `p` and `t` values.
pub fn p_radius_report(t: &ComplexMatrix, ps: &[f64], ts: &[f64]) -> Result<BoundReport> {
    let pr = PowerRadius::new(t)?;
    let mut report = BoundReport::default();
    for &p in ps {
        check_schatten_p(p)?;
        let w_p = p_numerical_radius(t, p, None)?;
        report.push(pr.bound(0.5, p, PowerVariant::Half, w_p)?);
        for &s in ts {
            report.push(pr.bound(s, p, PowerVariant::Symmetric, w_p)?);
            report.push(pr.bound(s, p, PowerVariant::Mixed, w_p)?);
        }
    }
    Ok(report)
}

/// `‖T‖_p ≤ ‖T‖ᵗ ‖T‖_{p(1−t)}^{1−t}` for `p > 0`, `0 < t < 1`; returns `(lhs, rhs)`.
pub fn schatten_interpolation(t: &ComplexMatrix, p: f64, t_exp: f64) -> Result<(f64, f64)> {
    if !(p > 0.0 && p.is_finite()) {
        return domain_err(format!("p must be positive and finite, got {p}"));
    }
    if !(t_exp > 0.0 && t_exp < 1.0) {
        return domain_err(format!("t must lie in (0, 1), got {t_exp}"));
    }
    let s = svd(t).singulars;
    let lhs = schatten_of_values(&s, p);
    let rhs = s[0].powf(t_exp) * schatten_of_values(&s, p * (1.0 - t_exp)).powf(1.0 - t_exp);
    Ok((lhs, rhs))
}
