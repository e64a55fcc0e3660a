//! Seeded random matrices, vectors and graphs.
//!
//! Every stream is a ChaCha8 generator seeded with `seed ^ index`, so a trial
//! can be reproduced on its own from the seed and its index.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{domain_err, Error, Result};
use crate::linalg::{inner, normalized, svd, ComplexMatrix};

/// The generator for substream `index` of `seed`.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    /// Independent standard complex Gaussian entries.
    Ginibre,
    /// `(G + G*)/2`
    Hermitian,
    /// `V diag(z) V*` with `V` unitary and `z` complex Gaussian.
    Normal,
    /// Strictly upper triangular Gaussian.
    Nilpotent,
    /// `G / ‖G‖`
    Contraction,
    /// `G* G`
    Psd,
}

impl Ensemble {
    pub const ALL: [Ensemble; 6] = [
        Ensemble::Ginibre,
        Ensemble::Hermitian,
        Ensemble::Normal,
        Ensemble::Nilpotent,
        Ensemble::Contraction,
        Ensemble::Psd,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Ensemble::Ginibre => "ginibre",
            Ensemble::Hermitian => "hermitian",
            Ensemble::Normal => "normal",
            Ensemble::Nilpotent => "nilpotent",
            Ensemble::Contraction => "contraction",
            Ensemble::Psd => "psd",
        }
    }
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Ensemble {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match Ensemble::ALL.iter().find(|e| e.as_str() == s) {
            Some(&e) => Ok(e),
            None => domain_err(format!(
                "unknown ensemble {s:?}; expected one of ginibre, hermitian, normal, nilpotent, contraction, psd"
            )),
        }
    }
}

/// Standard complex Gaussian, `E|z|² = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    (0..dim).map(|_| complex_gaussian(rng)).collect()
}

fn ginibre<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    ComplexMatrix::new(dim, dim, random_vector(rng, dim * dim)).expect("finite entries")
}

/// Unitary matrix from Gram–Schmidt on the columns of a Ginibre sample.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v = g.column(j);
        // Two passes keep the columns orthogonal to working precision.
        for _ in 0..2 {
            for q in &cols {
                let c = inner(&v, q);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
        }
        cols.push(normalized(&v));
    }
    ComplexMatrix::from_columns(&cols).expect("square")
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize, ensemble: Ensemble) -> ComplexMatrix {
    match ensemble {
        Ensemble::Ginibre => ginibre(rng, dim),
        Ensemble::Hermitian => ginibre(rng, dim).hermitian_part(),
        Ensemble::Normal => {
            let v = random_unitary(rng, dim);
            let d = ComplexMatrix::from_diag(&random_vector(rng, dim));
            &(&v * &d) * &v.adjoint()
        }
        Ensemble::Nilpotent => {
            let mut g = ginibre(rng, dim);
            for i in 0..dim {
                for j in 0..=i {
                    g[(i, j)] = Complex64::new(0.0, 0.0);
                }
            }
            g
        }
        Ensemble::Contraction => {
            let g = ginibre(rng, dim);
            let n = svd(&g).norm();
            g.scale_real(1.0 / n)
        }
        Ensemble::Psd => {
            let g = ginibre(rng, dim);
            &g.adjoint() * &g
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ensembles_have_their_structure() {
        let mut rng = substream(11, 0);
        let h = random_matrix(&mut rng, 4, Ensemble::Hermitian);
        assert!(h.hermitian_defect() <= 1e-15);
        let n = random_matrix(&mut rng, 4, Ensemble::Nilpotent);
        let mut p = n.clone();
        for _ in 1..4 {
            p = &p * &n;
        }
        assert!(p.frobenius_norm() < 1e-10);
        let c = random_matrix(&mut rng, 4, Ensemble::Contraction);
        assert!((svd(&c).norm() - 1.0).abs() < 1e-12);
        let q = random_matrix(&mut rng, 4, Ensemble::Normal);
        assert!(q.normality_defect() < 1e-10);
        let psd = random_matrix(&mut rng, 4, Ensemble::Psd);
        assert!(crate::linalg::min_eigenvalue(&psd).unwrap() > -1e-12);
        let u = random_unitary(&mut rng, 4);
        assert!((&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-13);
    }

    #[test]
    fn streams_are_deterministic() {
        let a = random_matrix(&mut substream(42, 0), 3, Ensemble::Ginibre);
        let b = random_matrix(&mut substream(42, 0), 3, Ensemble::Ginibre);
        assert_eq!(a, b);
        let c = random_matrix(&mut substream(42, 1), 3, Ensemble::Ginibre);
        assert_ne!(a, c);
    }

    #[test]
    fn ensemble_names_round_trip() {
        for e in Ensemble::ALL {
            assert_eq!(e.as_str().parse::<Ensemble>().unwrap(), e);
        }
        assert!("wishart".parse::<Ensemble>().is_err());
    }
}
