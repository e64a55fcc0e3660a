//! Numerical radius and p-numerical radius.
//!
//! Both are maxima over the angle θ of a spectral function of the Hermitian
//! matrix `Re(e^{iθ}T)`:
//!
//! * `w(T)   = max_θ λ_max(Re(e^{iθ}T))`
//! * `w_p(T) = max_θ ‖Re(e^{iθ}T)‖_p`
//!
//! The maximum is located by a uniform grid over `[0, 2π)` followed by
//! golden-section refinement of the best few local-maximum brackets.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain_err, Result};
use crate::linalg::{
    check_schatten_p, eigenvalues_of_hermitian, hermitian_eig, inner, schatten_of_values, ComplexMatrix,
};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const GRID_POINTS: usize = 1024;
/// Number of grid local maxima refined by golden-section search.
pub const REFINED_BRACKETS: usize = 5;
/// Top eigenvalues closer than this are treated as one degenerate group
/// when picking the maximizing vector.
const DEGENERACY_GAP: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct RadiusResult {
    pub value: f64,
    /// Maximizing angle in `[0, 2π)`.
    pub theta_star: f64,
    /// Unit vector `x₀` with `|⟨T x₀, x₀⟩| = value`.
    pub maximizer: Vec<Complex64>,
}

impl RadiusResult {
    /// `⟨T x₀, x₀⟩`; its modulus reproduces [`RadiusResult::value`].
    pub fn attained(&self, t: &ComplexMatrix) -> Complex64 {
        inner(&t.mul_vec(&self.maximizer).expect("dimension checked"), &self.maximizer)
    }
}

/// `(e^{iθ}T + e^{−iθ}T*)/2`, exactly Hermitian.
pub fn rotated_real_part(t: &ComplexMatrix, theta: f64) -> Result<ComplexMatrix> {
    let n = t.require_square("numerical radius input")?;
    let phase = Complex64::from_polar(1.0, theta);
    let mut h = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = Complex64::new((phase * t[(i, i)]).re, 0.0);
        for j in i + 1..n {
            let z = (phase * t[(i, j)] + (phase * t[(j, i)]).conj()) * 0.5;
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    Ok(h)
}

/// Numerical radius `w(T)` with an attained maximizing unit vector.
///
/// `tol` (default `1e-10`) is the final width of the angle bracket; the
/// value error is at most `‖T‖·tol`.
pub fn numerical_radius(t: &ComplexMatrix, tol: Option<f64>) -> Result<RadiusResult> {
    t.require_square("numerical radius input")?;
    let tol = check_tol(tol)?;
    let lambda_max = |theta: f64| {
        let h = rotated_real_part(t, theta).expect("square");
        *eigenvalues_of_hermitian(h).last().expect("non-empty")
    };
    let (theta, _) = maximize_over_angle(lambda_max, tol);
    let theta_star = theta.rem_euclid(TAU);

    let eig = hermitian_eig(&rotated_real_part(t, theta_star)?)?;
    let n = eig.eigenvalues.len();
    let top = eig.eigenvalues[n - 1];
    let pick = (0..n)
        .find(|&k| top - eig.eigenvalues[k] < DEGENERACY_GAP)
        .expect("top eigenvalue is in its own group");
    Ok(RadiusResult { value: top, theta_star, maximizer: eig.eigenvector(pick) })
}

/// p-numerical radius `w_p(T) = max_θ ‖Re(e^{iθ}T)‖_p`; `p = ∞` gives `w(T)`.
pub fn p_numerical_radius(t: &ComplexMatrix, p: f64, tol: Option<f64>) -> Result<f64> {
    t.require_square("numerical radius input")?;
    check_schatten_p(p)?;
    let tol = check_tol(tol)?;
    let norm_p = |theta: f64| {
        let h = rotated_real_part(t, theta).expect("square");
        schatten_of_values(&eigenvalues_of_hermitian(h), p)
    };
    Ok(maximize_over_angle(norm_p, tol).1)
}

fn check_tol(tol: Option<f64>) -> Result<f64> {
    match tol {
        None => Ok(DEFAULT_TOL),
        Some(t) if t > 0.0 && t.is_finite() => Ok(t),
        Some(t) => domain_err(format!("tolerance must be positive, got {t}")),
    }
}

/// Global maximum of a 2π-periodic function: grid scan, then golden-section
/// refinement of the best local-maximum brackets. Ties resolve to the
/// smallest angle.
pub(crate) fn maximize_over_angle(f: impl Fn(f64) -> f64, tol: f64) -> (f64, f64) {
    let step = TAU / GRID_POINTS as f64;
    let values: Vec<f64> = (0..GRID_POINTS).map(|k| f(k as f64 * step)).collect();

    let mut peaks: Vec<usize> = (0..GRID_POINTS)
        .filter(|&k| {
            let prev = values[(k + GRID_POINTS - 1) % GRID_POINTS];
            let next = values[(k + 1) % GRID_POINTS];
            values[k] >= prev && values[k] >= next
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    peaks.truncate(REFINED_BRACKETS);

    let mut best = (0.0, f64::NEG_INFINITY);
    for k in peaks {
        let centre = k as f64 * step;
        let mut candidate = golden_section_max(&f, centre - step, centre + step, tol);
        if candidate.1 < values[k] {
            candidate = (centre, values[k]);
        }
        if candidate.1 > best.1 {
            best = candidate;
        }
    }
    best
}

fn golden_section_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::norm;

    fn nilpotent2() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0., 1., 0., 0.]).unwrap()
    }

    fn example_r() -> ComplexMatrix {
        ComplexMatrix::from_real(3, 3, &[0., 1., 0., 0., 0., 2., 0., 0., 0.]).unwrap()
    }

    #[test]
    fn rotated_real_part_examples() {
        let h = ComplexMatrix::from_real(2, 2, &[1., 2., 2., -3.]).unwrap();
        assert!(rotated_real_part(&h, 0.0).unwrap().max_abs_diff(&h) < 1e-15);
        let want = ComplexMatrix::from_real(2, 2, &[0., 0.5, 0.5, 0.]).unwrap();
        assert_eq!(rotated_real_part(&nilpotent2(), 0.0).unwrap(), want);
        let g = ComplexMatrix::new(
            2,
            2,
            vec![Complex64::new(1., 2.), Complex64::new(0., 1.), Complex64::new(3., 0.), Complex64::new(-1., -1.)],
        )
        .unwrap();
        let neg = rotated_real_part(&g, std::f64::consts::PI).unwrap();
        assert!(neg.max_abs_diff(&g.hermitian_part().scale_real(-1.0)) < 1e-15);
        assert!(rotated_real_part(&ComplexMatrix::zeros(2, 3), 0.0).is_err());
    }

    #[test]
    fn nilpotent_radius_is_half() {
        let r = numerical_radius(&nilpotent2(), None).unwrap();
        assert!((r.value - 0.5).abs() < 1e-12);
        assert!((norm(&r.maximizer) - 1.0).abs() < 1e-12);
        assert!((r.attained(&nilpotent2()).norm() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn weighted_shift_radius() {
        let t = example_r();
        let r = numerical_radius(&t, None).unwrap();
        assert!((r.value - 5f64.sqrt() / 2.0).abs() < 1e-10);
        let want = [1.0 / 10f64.sqrt(), 1.0 / 2f64.sqrt(), (2.0f64 / 5.0).sqrt()];
        for (z, w) in r.maximizer.iter().zip(want) {
            assert!((z.norm() - w).abs() < 1e-8);
        }
        assert!((r.attained(&t).norm() - r.value).abs() < 1e-8);
    }

    #[test]
    fn hermitian_radius_is_spectral_radius() {
        let r = numerical_radius(&ComplexMatrix::from_real_diag(&[1.0, -3.0]), None).unwrap();
        assert!((r.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn p_radius_examples() {
        let h = ComplexMatrix::from_real(2, 2, &[2., 1., 1., -1.]).unwrap();
        for p in [1.0, 2.0, 3.5] {
            let want = crate::linalg::schatten_norm(&h, p).unwrap();
            assert!((p_numerical_radius(&h, p, None).unwrap() - want).abs() < 1e-10);
        }
        let w2 = p_numerical_radius(&nilpotent2(), 2.0, None).unwrap();
        assert!((w2 - 0.5f64.sqrt()).abs() < 1e-12);
        let winf = p_numerical_radius(&example_r(), f64::INFINITY, None).unwrap();
        assert!((winf - 5f64.sqrt() / 2.0).abs() < 1e-10);
        assert!(p_numerical_radius(&h, 0.0, None).is_err());
    }
}
