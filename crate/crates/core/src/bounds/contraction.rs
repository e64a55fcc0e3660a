//! Positive 2×2 block matrices `[A C*; C B]`, the contraction `K` with
//! `C = B^{1/2} K A^{1/2}`, and the numerical radius bounds built from `|K|`.

use num_complex::Complex64;
use serde::Serialize;

use super::{check_unit_interval, hermitian_norm, hermitian_values, quad_form, require_psd, BoundReport, BoundResult, PointwiseCheck};
use crate::error::{dim_err, Result};
use crate::linalg::{inner, psd_function_apply, psd_sqrt_pinv, svd, ComplexMatrix, Moduli, DEFAULT_RANK_TOL};
use crate::radius::numerical_radius;

/// Extracted contractions may exceed norm one by this much.
pub const CONTRACTION_TOL: f64 = 1e-8;
/// Residuals up to this multiple of `max(1, ‖C‖_F)` count as exact.
pub const RESIDUAL_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Serialize)]
pub struct ContractionFactorization {
    pub k: ComplexMatrix,
    /// `‖B^{1/2} K A^{1/2} − C‖_F`
    pub residual: f64,
    pub norm_k: f64,
    /// `‖C‖_F`, the scale the residual is judged against.
    pub c_norm: f64,
}

impl ContractionFactorization {
    /// `‖K‖ ≤ 1` and `C = B^{1/2} K A^{1/2}`, both within tolerance.
    pub fn is_contraction(&self) -> bool {
        self.norm_k <= 1.0 + CONTRACTION_TOL && self.residual <= RESIDUAL_TOL * self.c_norm.max(1.0)
    }

    /// Smallest eigenvalue of `|K|^{1/2} − |K|`; nonnegative for a contraction.
    pub fn modulus_order_gap(&self) -> f64 {
        let m = Moduli::new(&self.k).expect("square");
        hermitian_values(&(&m.abs_pow(0.5) - &m.abs_pow(1.0)))[0]
    }
}

fn check_block(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix) -> Result<usize> {
    require_psd(a, "A")?;
    require_psd(b, "B")?;
    let n = a.rows();
    if b.rows() != n || c.rows() != n || c.cols() != n {
        return dim_err("A, B and C must have the same dimension");
    }
    Ok(n)
}

/// Whether `[A C*; C B]` is positive semidefinite, i.e. its smallest
/// eigenvalue is at least `−tol` (default `1e−9·‖block‖`).
pub fn block_positive(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, tol: Option<f64>) -> Result<bool> {
    check_block(a, b, c)?;
    let block = ComplexMatrix::block2x2(a, &c.adjoint(), c, b)?;
    let vals = hermitian_values(&block);
    let scale = vals.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let tol = tol.unwrap_or(1e-9 * scale);
    Ok(vals[0] >= -tol)
}

/// `K = pinv(B^{1/2}) C pinv(A^{1/2})`. Eigenvalues below `rank_tol·λ_max`
/// (default `1e−10`) are dropped from the pseudo-inverses.
pub fn contraction_factor(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    rank_tol: Option<f64>,
) -> Result<ContractionFactorization> {
    check_block(a, b, c)?;
    let tol = rank_tol.unwrap_or(DEFAULT_RANK_TOL);
    let k = &(&psd_sqrt_pinv(b, tol)? * c) * &psd_sqrt_pinv(a, tol)?;
    Ok(factorization(k, &psd_function_apply(b, 0.5)?, &psd_function_apply(a, 0.5)?, c))
}

/// Packages `K` with its residual against `C = b_half K a_half`.
fn factorization(
    k: ComplexMatrix,
    b_half: &ComplexMatrix,
    a_half: &ComplexMatrix,
    c: &ComplexMatrix,
) -> ContractionFactorization {
    let rebuilt = &(b_half * &k) * a_half;
    ContractionFactorization {
        residual: (&rebuilt - c).frobenius_norm(),
        norm_k: svd(&k).norm(),
        c_norm: c.frobenius_norm(),
        k,
    }
}

/// The contraction-weighted Kato inequality for `T` with `f = t^α`,
/// `g = t^{1−α}`, prepared once for many `(x, y)` pairs.
#[derive(Debug, Clone)]
pub struct ContractionKato {
    matrix: ComplexMatrix,
    factorization: ContractionFactorization,
    /// `f(|T|) |K| f(|T|)`
    weighted_abs: ComplexMatrix,
    /// `g(|T*|) |K*| g(|T*|)`
    weighted_adj: ComplexMatrix,
    /// `f(|T|) |K|^{1/2} f(|T|)` and `g(|T*|) |K*|^{1/2} g(|T*|)`
    root_abs: ComplexMatrix,
    root_adj: ComplexMatrix,
    /// `f²(|T|)` and `g²(|T*|)`
    f_sq: ComplexMatrix,
    g_sq: ComplexMatrix,
}

impl ContractionKato {
    pub fn new(t: &ComplexMatrix, alpha: f64) -> Result<Self> {
        check_unit_interval(alpha, "alpha")?;
        let mt = Moduli::new(t)?;
        Ok(Self::with_moduli(t, &mt, alpha))
    }

    pub(crate) fn with_moduli(t: &ComplexMatrix, mt: &Moduli, alpha: f64) -> Self {
        let f = mt.abs_pow(alpha);
        let g = mt.abs_adj_pow(1.0 - alpha);
        let f_sq = mt.abs_pow(2.0 * alpha);
        let g_sq = mt.abs_adj_pow(2.0 * (1.0 - alpha));
        // The pseudo-inverse route reduces to the polar isometry here:
        // T = |T*|^{1−α} U |T|^α. Taking U straight from the SVD avoids
        // re-diagonalizing |T|^{2α}, whose small eigenvalues are inaccurate.
        let factorization = factorization(mt.isometry().clone(), &g, &f, t);
        let mk = Moduli::new(&factorization.k).expect("square");
        let sandwich = |outer: &ComplexMatrix, mid: &ComplexMatrix| &(outer * mid) * outer;
        Self {
            matrix: t.clone(),
            weighted_abs: sandwich(&f, &mk.abs_pow(1.0)),
            weighted_adj: sandwich(&g, &mk.abs_adj_pow(1.0)),
            root_abs: sandwich(&f, &mk.abs_pow(0.5)),
            root_adj: sandwich(&g, &mk.abs_adj_pow(0.5)),
            f_sq,
            g_sq,
            factorization,
        }
    }

    pub fn factorization(&self) -> &ContractionFactorization {
        &self.factorization
    }

    /// `|⟨Tx,y⟩| ≤ √(⟨f|K|f x,x⟩⟨g|K*|g y,y⟩) ≤ √(⟨f²x,x⟩⟨g²y,y⟩)`.
    pub fn check(&self, x: &[Complex64], y: &[Complex64]) -> Result<PointwiseCheck> {
        let n = self.matrix.rows();
        if x.len() != n || y.len() != n {
            return dim_err(format!("vectors of length {} and {} for dimension {n}", x.len(), y.len()));
        }
        let geo = |p: f64, q: f64| (p.max(0.0) * q.max(0.0)).sqrt();
        Ok(PointwiseCheck {
            lhs: inner(&self.matrix.mul_vec(x)?, y).norm(),
            rhs_refined: geo(quad_form(&self.weighted_abs, x), quad_form(&self.weighted_adj, y)),
            rhs_classical: geo(quad_form(&self.f_sq, x), quad_form(&self.g_sq, y)),
            degenerate: false,
        })
    }

    /// `w(T) ≤ ½‖f|K|f + g|K*|g‖ ≤ ½‖f|K|^{1/2}f + g|K*|^{1/2}g‖ ≤ ½‖f² + g²‖`.
    /// Each entry's partner is the next coarser bound in the chain.
    /// `w` is the numerical radius of the underlying matrix.
    pub fn radius_bounds(&self, alpha: f64, w: f64) -> BoundReport {
        let half_norm = |p: &ComplexMatrix, q: &ComplexMatrix| 0.5 * hermitian_norm(&(p + q));
        let refined = half_norm(&self.weighted_abs, &self.weighted_adj);
        let intermediate = half_norm(&self.root_abs, &self.root_adj);
        let coarse = half_norm(&self.f_sq, &self.g_sq);
        let mut report = BoundReport::default();
        report.push(BoundResult::upper("contraction", refined, w).param("alpha", alpha).refining(intermediate, None));
        report.push(
            BoundResult::upper("contraction_root", intermediate, w).param("alpha", alpha).refining(coarse, None),
        );
        report.push(BoundResult::upper("contraction_coarse", coarse, w).param("alpha", alpha));
        report
    }
}

/// Contraction-refined Kato inequality with `f = t^α`, `g = t^{1−α}`.
pub fn contraction_pointwise_bound(
    t: &ComplexMatrix,
    alpha: f64,
    x: &[Complex64],
    y: &[Complex64],
) -> Result<PointwiseCheck> {
    ContractionKato::new(t, alpha)?.check(x, y)
}

/// Numerical radius bounds from the contraction of `[|T|^{2α} T*; T |T*|^{2(1−α)}]`.
pub fn contraction_radius_bounds(t: &ComplexMatrix, alpha: f64) -> Result<BoundReport> {
    let k = ContractionKato::new(t, alpha)?;
    Ok(k.radius_bounds(alpha, numerical_radius(t, None)?.value))
}

/// The contraction `K` with `A*B = |A| K |B|`, from the positive block
/// `[|B|² B*A; A*B |A|²]`.
pub fn product_contraction(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ContractionFactorization> {
    let n = a.require_square("A")?;
    if b.require_square("B")? != n {
        return dim_err("A and B must have the same dimension");
    }
    // A*B = |A| U_A* U_B |B|, so the contraction is U_A* U_B.
    let (ma, mb) = (Moduli::new(a)?, Moduli::new(b)?);
    let k = &ma.isometry().adjoint() * mb.isometry();
    Ok(factorization(k, &ma.abs_pow(1.0), &mb.abs_pow(1.0), &a.adjoint().matmul(b)?))
}

/// `w(A*B) ≤ ½‖|A||K*||A| + |B||K||B|‖ ≤ ½‖A*A + B*B‖`.
pub fn bound_contraction_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<BoundReport> {
    let fact = product_contraction(a, b)?;
    let ma = Moduli::new(a)?;
    let mb = Moduli::new(b)?;
    let mk = Moduli::new(&fact.k)?;
    let (abs_a, abs_b) = (ma.abs_pow(1.0), mb.abs_pow(1.0));
    let middle_op = &(&(&abs_a * &mk.abs_adj_pow(1.0)) * &abs_a) + &(&(&abs_b * &mk.abs_pow(1.0)) * &abs_b);
    let middle = 0.5 * hermitian_norm(&middle_op);
    let right = 0.5 * hermitian_norm(&(&ma.abs_pow(2.0) + &mb.abs_pow(2.0)));
    let w = numerical_radius(&a.adjoint().matmul(b)?, None)?.value;
    let mut report = BoundReport::default();
    report.push(BoundResult::upper("product_contraction", middle, w).refining(right, None));
    report.push(BoundResult::upper("product_contraction_coarse", right, w));
    Ok(report)
}
