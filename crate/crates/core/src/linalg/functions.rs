use num_complex::Complex64;

use super::eigen::hermitian_eig;
use super::matrix::{inner, ComplexMatrix};
use super::svd::svd;
use crate::error::{dim_err, domain_err, Result};

/// Eigenvalues down to `−PSD_TOL·‖A‖` are accepted as rounding noise and
/// clamped to zero.
pub const PSD_TOL: f64 = 1e-8;
/// Eigenvalues at or below this fraction of `‖A‖` count as exact zeros
/// before fractional powers are taken.
const ZERO_SNAP: f64 = 1e-13;

/// `A^s` for Hermitian positive semidefinite `A`, with `0^0 = 1` (so `A^0 = I`).
pub fn psd_function_apply(a: &ComplexMatrix, s: f64) -> Result<ComplexMatrix> {
    if !(s >= 0.0) || !s.is_finite() {
        return domain_err(format!("exponent must be finite and non-negative, got {s}"));
    }
    let eig = hermitian_eig(a)?;
    let scale = eig.eigenvalues.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    if eig.eigenvalues[0] < -PSD_TOL * scale {
        return domain_err(format!(
            "matrix is not positive semidefinite: min eigenvalue {:e}",
            eig.eigenvalues[0]
        ));
    }
    if s == 0.0 {
        return Ok(ComplexMatrix::identity(a.rows()));
    }
    let floor = ZERO_SNAP * scale;
    Ok(eig.map_spectrum(|l| if l <= floor { 0.0 } else { l.powf(s) }))
}

/// Moore–Penrose pseudo-inverse of `A^{1/2}` for PSD `A`. Eigenvalues at or
/// below `rank_tol · λ_max` are treated as zero.
pub fn psd_sqrt_pinv(a: &ComplexMatrix, rank_tol: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(a)?;
    let top = eig.eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
    let floor = rank_tol * top;
    Ok(eig.map_spectrum(|l| if l > floor && l > 0.0 { 1.0 / l.sqrt() } else { 0.0 }))
}

/// Schatten p-norm `(Σ σ_i^p)^{1/p}`; `p = ∞` is the operator norm. For
/// `0 < p < 1` this is the usual quasi-norm.
pub fn schatten_norm(t: &ComplexMatrix, p: f64) -> Result<f64> {
    check_schatten_p(p)?;
    Ok(schatten_of_values(&svd(t).singulars, p))
}

pub(crate) fn check_schatten_p(p: f64) -> Result<()> {
    if p.is_nan() || p <= 0.0 {
        return domain_err(format!("Schatten index must be positive or infinite, got {p}"));
    }
    Ok(())
}

/// Schatten norm from singular values (or eigenvalues of a Hermitian
/// matrix, whose moduli are the singular values). Assumes `p > 0`.
pub(crate) fn schatten_of_values(values: &[f64], p: f64) -> f64 {
    let top = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if p.is_infinite() || top == 0.0 {
        return top;
    }
    // Scaled by the largest value to keep large p from overflowing.
    let sum: f64 = values.iter().map(|v| (v.abs() / top).powf(p)).sum();
    top * sum.powf(1.0 / p)
}

/// `inf_{λ∈ℂ} ‖u − λv‖² = ‖u‖² − |⟨u, v⟩|²/‖v‖²`, or `‖u‖²` when `v = 0`.
pub fn inf_lambda_distance(u: &[Complex64], v: &[Complex64]) -> Result<f64> {
    if u.len() != v.len() {
        return dim_err(format!("vectors of length {} and {}", u.len(), v.len()));
    }
    let uu = inner(u, u).re;
    let vv = inner(v, v).re;
    if vv == 0.0 {
        return Ok(uu);
    }
    Ok((uu - inner(u, v).norm_sqr() / vv).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: &[f64]) -> Vec<Complex64> {
        x.iter().map(|&v| Complex64::new(v, 0.0)).collect()
    }

    #[test]
    fn psd_power_examples() {
        let a = ComplexMatrix::from_real_diag(&[0., 1., 4.]);
        let half = psd_function_apply(&a, 0.5).unwrap();
        assert!(half.max_abs_diff(&ComplexMatrix::from_real_diag(&[0., 1., 2.])) < 1e-14);
        assert_eq!(psd_function_apply(&a, 0.0).unwrap(), ComplexMatrix::identity(3));
        let b = psd_function_apply(&ComplexMatrix::from_real_diag(&[4.]), 1.5).unwrap();
        assert!((b[(0, 0)].re - 8.0).abs() < 1e-14);
    }

    #[test]
    fn psd_power_errors() {
        let a = ComplexMatrix::identity(2);
        assert!(psd_function_apply(&a, -0.5).is_err());
        let indefinite = ComplexMatrix::from_real_diag(&[1.0, -1e-3]);
        assert!(matches!(psd_function_apply(&indefinite, 0.5), Err(crate::Error::Domain(_))));
        let noise = ComplexMatrix::from_real_diag(&[1.0, -1e-12]);
        let r = psd_function_apply(&noise, 0.5).unwrap();
        assert_eq!(r[(1, 1)].re, 0.0);
    }

    #[test]
    fn schatten_examples() {
        let d = ComplexMatrix::from_real_diag(&[3., 4.]);
        assert!((schatten_norm(&d, 1.0).unwrap() - 7.0).abs() < 1e-14);
        assert!((schatten_norm(&d, 2.0).unwrap() - 5.0).abs() < 1e-14);
        assert_eq!(schatten_norm(&d, f64::INFINITY).unwrap(), 4.0);
        let rank_one = ComplexMatrix::from_real(2, 2, &[1., 2., 2., 4.]).unwrap();
        for p in [0.5, 1.0, 3.0, f64::INFINITY] {
            assert!((schatten_norm(&rank_one, p).unwrap() - 5.0).abs() < 1e-12);
        }
        let shift = ComplexMatrix::from_real(3, 3, &[0., 1., 0., 0., 0., 2., 0., 0., 0.]).unwrap();
        assert_eq!(schatten_norm(&shift, f64::INFINITY).unwrap(), 2.0);
        assert!(schatten_norm(&d, 0.0).is_err());
        assert!(schatten_norm(&d, -1.0).is_err());
    }

    #[test]
    fn inf_lambda_examples() {
        assert_eq!(inf_lambda_distance(&re(&[1., 0.]), &re(&[0., 1.])).unwrap(), 1.0);
        let v = vec![Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.25)];
        let u: Vec<Complex64> = v.iter().map(|z| z * 3.0).collect();
        assert!(inf_lambda_distance(&u, &v).unwrap() < 1e-13);
        assert!((inf_lambda_distance(&re(&[1., 1.]), &re(&[1., 0.])).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(inf_lambda_distance(&re(&[3., 4.]), &re(&[0., 0.])).unwrap(), 25.0);
        assert!(inf_lambda_distance(&re(&[1.]), &re(&[1., 0.])).is_err());
    }
}
