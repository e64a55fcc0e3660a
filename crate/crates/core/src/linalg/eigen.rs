//! Cyclic Jacobi eigensolver for Hermitian matrices.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{domain_err, Result};

/// Relative tolerance on `‖A − A*‖_F` accepted as Hermitian input.
pub const HERMITIAN_TOL: f64 = 1e-8;
/// Sweeps stop once the off-diagonal Frobenius mass drops below this
/// fraction of `‖A‖_F`.
const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;
/// Components with modulus at or below this are skipped by phase normalization.
const PHASE_FLOOR: f64 = 1e-12;

/// Eigenvalues in ascending order with a unitary matrix of column eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V · diag(f(λ_i)) · V*`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &w) in weights.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized as `(A + A*)/2` after checking that it is
/// Hermitian to within [`HERMITIAN_TOL`] relative to `max(1, ‖A‖_F)`.
/// Each eigenvector is phase-normalized so that its first component of
/// modulus above `1e-12` is real and positive.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEigen> {
    let mut work = checked_hermitian(a)?;
    let n = work.rows();
    let mut v = ComplexMatrix::identity(n);
    jacobi_sweeps(&mut work, Some(&mut v));

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work[(i, i)].re.total_cmp(&work[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| work[(i, i)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = v.column(src);
        normalize_phase(&mut col);
        for (i, z) in col.into_iter().enumerate() {
            eigenvectors[(i, dst)] = z;
        }
    }
    Ok(HermitianEigen { eigenvalues, eigenvectors })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let work = checked_hermitian(a)?;
    Ok(eigenvalues_of_hermitian(work))
}

pub fn min_eigenvalue(a: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(a)?[0])
}

pub fn max_eigenvalue(a: &ComplexMatrix) -> Result<f64> {
    Ok(*hermitian_eigenvalues(a)?.last().expect("non-empty"))
}

/// Ascending eigenvalues of a matrix the caller guarantees is exactly
/// Hermitian. Skips validation and eigenvector accumulation.
pub(crate) fn eigenvalues_of_hermitian(mut work: ComplexMatrix) -> Vec<f64> {
    jacobi_sweeps(&mut work, None);
    let mut vals: Vec<f64> = (0..work.rows()).map(|i| work[(i, i)].re).collect();
    vals.sort_by(f64::total_cmp);
    vals
}

fn checked_hermitian(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.require_square("Hermitian input")?;
    let scale = a.frobenius_norm().max(1.0);
    let defect = a.hermitian_defect();
    if defect > HERMITIAN_TOL * scale {
        return domain_err(format!("matrix is not Hermitian: ‖A − A*‖_F = {defect:e}"));
    }
    Ok(a.hermitian_part())
}

pub(crate) fn normalize_phase(v: &mut [Complex64]) {
    if let Some(z) = v.iter().find(|z| z.norm() > PHASE_FLOOR) {
        let phase = z.conj() / z.norm();
        for c in v.iter_mut() {
            *c *= phase;
        }
    }
}

/// Parameters `(c, s, e^{iφ})` of the unitary rotation annihilating the
/// off-diagonal entry of `[[app, apq], [conj(apq), aqq]]`, with
/// `φ = arg(apq)`. Returns `None` if `apq` is already zero.
pub(crate) fn rotation(app: f64, aqq: f64, apq: Complex64) -> Option<(f64, f64, Complex64, f64)> {
    let r = apq.norm();
    if r == 0.0 {
        return None;
    }
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    Some((c, t * c, phase, t * r))
}

/// Right-multiplies columns `p`, `q` by the rotation
/// `G = [[c, s], [−s·ē, c·ē]]` where `ē = conj(phase)`.
pub(crate) fn rotate_columns(m: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let e = phase.conj();
    for k in 0..m.rows() {
        let a = m[(k, p)];
        let b = m[(k, q)] * e;
        m[(k, p)] = a * c - b * s;
        m[(k, q)] = a * s + b * c;
    }
}

fn rotate_rows(m: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    for k in 0..m.cols() {
        let a = m[(p, k)];
        let b = m[(q, k)] * phase;
        m[(p, k)] = a * c - b * s;
        m[(q, k)] = a * s + b * c;
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi_sweeps(a: &mut ComplexMatrix, mut v: Option<&mut ComplexMatrix>) {
    let n = a.rows();
    let target = OFF_DIAGONAL_TOL * a.frobenius_norm();
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(a) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let Some((c, s, phase, shift)) = rotation(app, aqq, a[(p, q)]) else {
                    continue;
                };
                rotate_columns(a, p, q, c, s, phase);
                rotate_rows(a, p, q, c, s, phase);
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(app - shift, 0.0);
                a[(q, q)] = Complex64::new(aqq + shift, 0.0);
                if let Some(v) = v.as_deref_mut() {
                    rotate_columns(v, p, q, c, s, phase);
                }
            }
        }
    }
}
