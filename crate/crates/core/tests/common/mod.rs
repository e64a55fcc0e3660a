//! Independent oracles for the integration tests. Dense linear algebra goes
//! through nalgebra rather than the crate's own solvers.
#![allow(dead_code)]

use nalgebra::DMatrix;
use numrad::harness::{random_matrix, random_vector, substream, Ensemble};
use numrad::{Complex64, ComplexMatrix};
use rand_chacha::ChaCha8Rng;

pub fn to_na(m: &ComplexMatrix) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.entries())
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = to_na(m).symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Descending singular values.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = to_na(m).singular_values().iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn spectral_norm(m: &ComplexMatrix) -> f64 {
    singular_values(m)[0]
}

pub fn schatten(m: &ComplexMatrix, p: f64) -> f64 {
    let s = singular_values(m);
    if p.is_infinite() {
        return s[0];
    }
    s.iter().map(|x| x.powf(p)).sum::<f64>().powf(1.0 / p)
}

/// `max_θ λ_max(Re(e^{iθ}T))` over `points` equally spaced angles in
/// `[0, 2π)`. `λ_max` at `θ + π` is `−λ_min` at `θ`, so only the upper
/// half-circle is diagonalized.
pub fn radius_grid(t: &ComplexMatrix, points: usize) -> f64 {
    assert!(points % 2 == 0);
    let a = to_na(t);
    let half = points / 2;
    let mut best = f64::NEG_INFINITY;
    for k in 0..half {
        let theta = std::f64::consts::PI * k as f64 / half as f64;
        let phase = Complex64::from_polar(1.0, theta);
        let rotated = a.map(|z| z * phase);
        let h = (&rotated + rotated.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = h.symmetric_eigenvalues();
        best = best.max(eig.max()).max(-eig.min());
    }
    best
}

fn dist_sq(u: &[Complex64], v: &[Complex64], lambda: Complex64) -> f64 {
    u.iter().zip(v).map(|(a, b)| (a - lambda * b).norm_sqr()).sum()
}

/// `min ‖u − λv‖²` by a 400×400 grid over `|Re λ|, |Im λ| ≤ 2‖u‖/max(‖v‖, ε)`,
/// re-gridded around the best cell until the cell is below `1e-12`.
pub fn inf_lambda_grid(u: &[Complex64], v: &[Complex64]) -> f64 {
    const STEPS: usize = 400;
    let nu = numrad::linalg::norm(u);
    let nv = numrad::linalg::norm(v);
    let mut half = (2.0 * nu / nv.max(1e-300)).max(1e-300);
    let mut center = Complex64::new(0.0, 0.0);
    let mut best = dist_sq(u, v, center);
    while half > 1e-12 * (1.0 + center.norm()) {
        let step = 2.0 * half / STEPS as f64;
        let mut arg = center;
        for i in 0..=STEPS {
            for j in 0..=STEPS {
                let lambda = center + Complex64::new(-half + step * i as f64, -half + step * j as f64);
                let d = dist_sq(u, v, lambda);
                if d < best {
                    best = d;
                    arg = lambda;
                }
            }
        }
        center = arg;
        half = 2.0 * step;
    }
    best
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    substream(seed, 0)
}

pub fn matrix(rng: &mut ChaCha8Rng, dim: usize, ensemble: Ensemble) -> ComplexMatrix {
    random_matrix(rng, dim, ensemble)
}

pub fn vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    random_vector(rng, dim)
}

/// A random matrix of exact rank `rank` (an `n×r` times an `r×n` Gaussian).
pub fn rank_matrix(rng: &mut ChaCha8Rng, n: usize, rank: usize) -> ComplexMatrix {
    if rank == 0 {
        return ComplexMatrix::zeros(n, n);
    }
    let left = ComplexMatrix::new(n, rank, random_vector(rng, n * rank)).unwrap();
    let right = ComplexMatrix::new(rank, n, random_vector(rng, n * rank)).unwrap();
    &left * &right
}

pub fn ensemble(index: usize) -> Ensemble {
    Ensemble::ALL[index % Ensemble::ALL.len()]
}

fn from_na(m: &DMatrix<Complex64>) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out[(i, j)] = m[(i, j)];
        }
    }
    out
}

/// `|T|^s`, `|T*|^s` and the polar isometry from nalgebra's SVD, with the
/// same conventions as the crate: `|T|^0 = I`, singular values at or
/// below `1e-10·σ₁` are zero.
pub struct OracleModuli {
    left: DMatrix<Complex64>,
    right: DMatrix<Complex64>,
    sigma: Vec<f64>,
    cut: f64,
}

impl OracleModuli {
    pub fn new(t: &ComplexMatrix) -> Self {
        let svd = to_na(t).svd(true, true);
        let left = svd.u.unwrap();
        let right = svd.v_t.unwrap().adjoint();
        let sigma: Vec<f64> = svd.singular_values.iter().copied().collect();
        let cut = 1e-10 * sigma.iter().copied().fold(0.0, f64::max);
        Self { left, right, sigma, cut }
    }

    fn power(&self, basis: &DMatrix<Complex64>, s: f64) -> ComplexMatrix {
        let n = basis.nrows();
        if s == 0.0 {
            return ComplexMatrix::identity(n);
        }
        let d = DMatrix::from_fn(n, n, |i, j| {
            let keep = i == j && self.sigma[i] > self.cut;
            Complex64::new(if keep { self.sigma[i].powf(s) } else { 0.0 }, 0.0)
        });
        from_na(&(basis * d * basis.adjoint()))
    }

    pub fn abs_pow(&self, s: f64) -> ComplexMatrix {
        self.power(&self.right, s)
    }

    pub fn abs_adj_pow(&self, s: f64) -> ComplexMatrix {
        self.power(&self.left, s)
    }

    pub fn isometry(&self) -> ComplexMatrix {
        let n = self.left.nrows();
        let mut u = DMatrix::zeros(n, n);
        for (k, &s) in self.sigma.iter().enumerate() {
            if k < n && s > self.cut {
                u += self.left.column(k) * self.right.column(k).adjoint();
            }
        }
        from_na(&u)
    }
}

pub fn hermitian_norm(m: &ComplexMatrix) -> f64 {
    let e = eigenvalues(m);
    e[0].abs().max(e[e.len() - 1].abs())
}
