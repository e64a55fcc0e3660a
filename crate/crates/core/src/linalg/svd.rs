//! Singular value and polar decompositions.
//!
//! The SVD is computed by one-sided (Hestenes) Jacobi: column pairs of a
//! working copy of `T` are rotated until mutually orthogonal, which is the
//! same rotation that diagonalizes the corresponding 2×2 block of `T*T`.
//! Small singular values come out with absolute accuracy `O(ε‖T‖)`, so
//! rank decisions at `1e-10·σ₁` are reliable.

use num_complex::Complex64;

use super::eigen::{rotate_columns, rotation};
use super::matrix::{inner, norm, ComplexMatrix};
use crate::error::Result;

const MAX_SWEEPS: usize = 100;
/// Default relative rank threshold for polar factors and fractional powers.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// `T = left · diag(singulars) · right*` with `left` (m×m) and `right` (n×n)
/// unitary and `singulars` sorted descending (length `min(m, n)`).
#[derive(Debug, Clone)]
pub struct SingularValueDecomposition {
    pub left: ComplexMatrix,
    pub singulars: Vec<f64>,
    pub right: ComplexMatrix,
}

impl SingularValueDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (m, n) = (self.left.rows(), self.right.rows());
        let mut out = ComplexMatrix::zeros(m, n);
        for (k, &s) in self.singulars.iter().enumerate() {
            if s == 0.0 {
                continue;
            }
            for i in 0..m {
                let a = self.left[(i, k)] * s;
                for j in 0..n {
                    out[(i, j)] += a * self.right[(j, k)].conj();
                }
            }
        }
        out
    }

    /// Largest singular value, i.e. the operator norm.
    pub fn norm(&self) -> f64 {
        self.singulars.first().copied().unwrap_or(0.0)
    }
}

pub fn svd(t: &ComplexMatrix) -> SingularValueDecomposition {
    if t.rows() < t.cols() {
        let s = svd_tall(&t.adjoint());
        return SingularValueDecomposition { left: s.right, singulars: s.singulars, right: s.left };
    }
    svd_tall(t)
}

fn svd_tall(t: &ComplexMatrix) -> SingularValueDecomposition {
    let (m, n) = (t.rows(), t.cols());
    let mut w = t.clone();
    let mut v = ComplexMatrix::identity(n);
    let tol = f64::EPSILON * m as f64;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, Complex64::new(0.0, 0.0));
                for k in 0..m {
                    let (a, b) = (w[(k, p)], w[(k, q)]);
                    alpha += a.norm_sqr();
                    beta += b.norm_sqr();
                    gamma += a.conj() * b;
                }
                if gamma.norm() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                if let Some((c, s, phase, _)) = rotation(alpha, beta, gamma) {
                    rotate_columns(&mut w, p, q, c, s, phase);
                    rotate_columns(&mut v, p, q, c, s, phase);
                    rotated = true;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let cols: Vec<Vec<Complex64>> = (0..n).map(|j| w.column(j)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let sig: Vec<f64> = cols.iter().map(|c| norm(c)).collect();
    order.sort_by(|&a, &b| sig[b].total_cmp(&sig[a]));
    let singulars: Vec<f64> = order.iter().map(|&j| sig[j]).collect();
    let sigma1 = singulars.first().copied().unwrap_or(0.0);

    // Columns at round-off level are noise rather than directions, so each
    // normalized column is re-orthogonalized against the larger ones and
    // dropped to the completion step when little of it survives.
    let mut basis: Vec<Option<Vec<Complex64>>> = Vec::with_capacity(m);
    for &j in &order {
        let s = sig[j];
        let mut u: Vec<Complex64> = if s > 0.0 && s > f64::EPSILON * sigma1 {
            cols[j].iter().map(|z| z / s).collect()
        } else {
            basis.push(None);
            continue;
        };
        for _ in 0..2 {
            for q in basis.iter().flatten() {
                let proj = inner(&u, q);
                for (ui, qi) in u.iter_mut().zip(q) {
                    *ui -= proj * qi;
                }
            }
        }
        let len = norm(&u);
        basis.push((len > 0.5).then(|| u.into_iter().map(|z| z / len).collect()));
    }
    basis.resize(m, None);
    let left = complete_orthonormal(basis, m);

    let mut right = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            right[(i, dst)] = v[(i, src)];
        }
    }
    SingularValueDecomposition { left, singulars, right }
}

/// Fills the `None` slots with unit vectors orthogonal to everything else.
/// Each slot takes the standard basis vector with the largest component
/// outside the current span; with `r` slots filled that component is at
/// least `√((dim − r)/dim)`.
fn complete_orthonormal(mut slots: Vec<Option<Vec<Complex64>>>, dim: usize) -> ComplexMatrix {
    for idx in 0..slots.len() {
        if slots[idx].is_some() {
            continue;
        }
        let best = (0..dim)
            .map(|k| {
                let mut e = vec![Complex64::new(0.0, 0.0); dim];
                e[k] = Complex64::new(1.0, 0.0);
                // Two passes of classical Gram–Schmidt.
                for _ in 0..2 {
                    for u in slots.iter().flatten() {
                        let proj = inner(&e, u);
                        for (ei, ui) in e.iter_mut().zip(u) {
                            *ei -= proj * ui;
                        }
                    }
                }
                (norm(&e), e)
            })
            .reduce(|best, c| if c.0 > best.0 { c } else { best })
            .expect("dim > 0");
        let (len, e) = best;
        slots[idx] = Some(e.into_iter().map(|z| z / len).collect());
    }
    let cols: Vec<Vec<Complex64>> = slots.into_iter().map(|s| s.expect("filled")).collect();
    ComplexMatrix::from_columns(&cols).expect("non-empty")
}

/// `T = U|T|` with `U` the canonical partial isometry from `range(|T|)`
/// onto `range(T)`.
#[derive(Debug, Clone)]
pub struct PolarDecomposition {
    pub isometry: ComplexMatrix,
    pub modulus: ComplexMatrix,
}

/// Polar decomposition of a square matrix. `rank_tol` is an absolute
/// threshold on singular values; `None` selects `1e-10·σ₁`.
pub fn polar_decompose(t: &ComplexMatrix, rank_tol: Option<f64>) -> Result<PolarDecomposition> {
    let m = Moduli::with_rank_tol(t, rank_tol)?;
    Ok(PolarDecomposition { isometry: m.isometry().clone(), modulus: m.abs_pow(1.0) })
}

/// One SVD of a square `T`, exposing the polar isometry `U` and the
/// functional calculus of `|T|` and `|T*|`.
///
/// Singular values at or below the rank threshold are treated as exact
/// zeros, so `|T|^s`, `|T*|^s` and `U` all describe the same truncated
/// operator. Powers use the convention `|T|^0 = I`.
#[derive(Debug, Clone)]
pub struct Moduli {
    svd: SingularValueDecomposition,
    rank: usize,
    isometry: ComplexMatrix,
}

impl Moduli {
    pub fn new(t: &ComplexMatrix) -> Result<Self> {
        Self::with_rank_tol(t, None)
    }

    pub fn with_rank_tol(t: &ComplexMatrix, rank_tol: Option<f64>) -> Result<Self> {
        let n = t.require_square("polar input")?;
        let svd = svd(t);
        let tol = rank_tol.unwrap_or(DEFAULT_RANK_TOL * svd.norm());
        let rank = svd.singulars.iter().filter(|&&s| s > tol).count();
        let mut isometry = ComplexMatrix::zeros(n, n);
        for k in 0..rank {
            for i in 0..n {
                let a = svd.left[(i, k)];
                for j in 0..n {
                    isometry[(i, j)] += a * svd.right[(j, k)].conj();
                }
            }
        }
        Ok(Self { svd, rank, isometry })
    }

    pub fn svd(&self) -> &SingularValueDecomposition {
        &self.svd
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn norm(&self) -> f64 {
        self.svd.norm()
    }

    pub fn dim(&self) -> usize {
        self.svd.singulars.len()
    }

    /// Canonical partial isometry `U` with `T = U|T|`.
    pub fn isometry(&self) -> &ComplexMatrix {
        &self.isometry
    }

    /// `|T|^s = V·diag(σ^s)·V*`.
    pub fn abs_pow(&self, s: f64) -> ComplexMatrix {
        self.power(&self.svd.right, s)
    }

    /// `|T*|^s = W·diag(σ^s)·W*`.
    pub fn abs_adj_pow(&self, s: f64) -> ComplexMatrix {
        self.power(&self.svd.left, s)
    }

    fn power(&self, basis: &ComplexMatrix, s: f64) -> ComplexMatrix {
        assert!(s >= 0.0, "negative power of a positive operator");
        let n = self.dim();
        if s == 0.0 {
            return ComplexMatrix::identity(n);
        }
        let mut out = ComplexMatrix::zeros(n, n);
        for k in 0..self.rank {
            let w = self.svd.singulars[k].powf(s);
            for i in 0..n {
                let a = basis[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += a * basis[(j, k)].conj();
                }
            }
        }
        out
    }
}
