mod common;

use common::*;
use numrad::harness::{random_unitary, Ensemble};
use numrad::radius::{numerical_radius, p_numerical_radius};
use numrad::{Complex64, ComplexMatrix};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn agrees_with_angle_grid(seed in any::<u64>(), dim in 1usize..=8, which in 0usize..6) {
        let t = matrix(&mut rng(seed), dim, ensemble(which));
        let w = numerical_radius(&t, None).unwrap().value;
        let grid = radius_grid(&t, 4096);
        // the grid can only undershoot; with 4096 angles by at most ~‖T‖·3e-7
        prop_assert!(w >= grid - 1e-10 * (1.0 + grid));
        prop_assert!(w - grid <= 1e-6 * (1.0 + grid), "w = {w}, grid = {grid}");
    }

    #[test]
    fn sandwich_and_attained(seed in any::<u64>(), dim in 1usize..=8, which in 0usize..6) {
        let t = matrix(&mut rng(seed), dim, ensemble(which));
        let r = numerical_radius(&t, None).unwrap();
        let norm = spectral_norm(&t);
        prop_assert!(0.5 * norm <= r.value + 1e-8 && r.value <= norm + 1e-8);
        prop_assert!((r.attained(&t).norm() - r.value).abs() < 1e-8 * (1.0 + r.value));
        prop_assert!((numrad::linalg::norm(&r.maximizer) - 1.0).abs() < 1e-12);
        prop_assert!((0.0..std::f64::consts::TAU).contains(&r.theta_star));
    }

    #[test]
    fn phase_invariance(seed in any::<u64>(), dim in 1usize..=6, phi in 0.0f64..std::f64::consts::TAU) {
        let t = matrix(&mut rng(seed), dim, Ensemble::Ginibre);
        let rotated = t.scale(Complex64::from_polar(1.0, phi));
        let (a, b) = (numerical_radius(&t, None).unwrap().value, numerical_radius(&rotated, None).unwrap().value);
        prop_assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }

    #[test]
    fn unitary_invariance(seed in any::<u64>(), dim in 1usize..=6) {
        let mut r = rng(seed);
        let t = matrix(&mut r, dim, Ensemble::Ginibre);
        let v = random_unitary(&mut r, dim);
        let similar = &(&v.adjoint() * &t) * &v;
        let (a, b) = (numerical_radius(&t, None).unwrap().value, numerical_radius(&similar, None).unwrap().value);
        prop_assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }

    #[test]
    fn normal_radius_is_spectral_radius(seed in any::<u64>(), dim in 1usize..=6) {
        let mut r = rng(seed);
        let v = random_unitary(&mut r, dim);
        let z = vector(&mut r, dim);
        let t = &(&v * &ComplexMatrix::from_diag(&z)) * &v.adjoint();
        let rho = z.iter().map(|c| c.norm()).fold(0.0, f64::max);
        prop_assert!((numerical_radius(&t, None).unwrap().value - rho).abs() < 1e-9);
    }

    #[test]
    fn p_radius_decreases_in_p(seed in any::<u64>(), dim in 2usize..=5, p in 1.0f64..6.0, dq in 0.0f64..6.0) {
        let t = matrix(&mut rng(seed), dim, Ensemble::Ginibre);
        let q = p + dq;
        let wp = p_numerical_radius(&t, p, None).unwrap();
        let wq = p_numerical_radius(&t, q, None).unwrap();
        let winf = p_numerical_radius(&t, f64::INFINITY, None).unwrap();
        prop_assert!(wq <= wp + 1e-9 && winf <= wq + 1e-9);
        prop_assert!((winf - numerical_radius(&t, None).unwrap().value).abs() < 1e-9);
    }
}

#[test]
fn shift_matrix_radius() {
    let t = ComplexMatrix::from_real(3, 3, &[0., 1., 0., 0., 0., 2., 0., 0., 0.]).unwrap();
    let w = numerical_radius(&t, None).unwrap().value;
    assert!((w - 5f64.sqrt() / 2.0).abs() < 1e-10);
    // w_2 of a nilpotent 2x2 Jordan block: Re(e^{iθ}T) has eigenvalues ±1/2
    let j = ComplexMatrix::from_real(2, 2, &[0., 1., 0., 0.]).unwrap();
    assert!((p_numerical_radius(&j, 2.0, None).unwrap() - 0.5f64.sqrt()).abs() < 1e-10);
    assert!((p_numerical_radius(&j, 1.0, None).unwrap() - 1.0).abs() < 1e-10);
}
