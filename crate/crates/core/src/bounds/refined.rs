//! Refinements of the Kato and Buzano inner-product inequalities, and the
//! numerical radius bounds obtained by evaluating them at a maximizing
//! vector of `|⟨Tx, x⟩|`.

use num_complex::Complex64;

use super::{
    check_unit_interval, defect_term, hermitian_norm, is_negligible, require_psd, BoundReport, BoundResult,
    PointwiseCheck,
};
use crate::error::{dim_err, domain_err, Result};
use crate::linalg::{inner, norm, svd, ComplexMatrix, Moduli};
use crate::radius::{numerical_radius, RadiusResult};

/// A square matrix together with its polar factors.
#[derive(Debug, Clone)]
pub struct Operator {
    matrix: ComplexMatrix,
    moduli: Moduli,
}

impl Operator {
    pub fn new(t: &ComplexMatrix) -> Result<Self> {
        Ok(Self { matrix: t.clone(), moduli: Moduli::new(t)? })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn moduli(&self) -> &Moduli {
        &self.moduli
    }

    pub fn norm(&self) -> f64 {
        self.moduli.norm()
    }

    /// Refined Kato inequality
    /// `|⟨Tx,y⟩| ≤ (‖|T|ᵗx‖ − inf_λ‖|T|ᵗx − λ|T|^{1−t}U*y‖² / (2‖|T|ᵗx‖)) ‖|T*|^{1−t}y‖`,
    /// compared with the plain `‖|T|ᵗx‖ ‖|T*|^{1−t}y‖`.
    pub fn kato_pointwise(&self, x: &[Complex64], y: &[Complex64], t: f64) -> Result<PointwiseCheck> {
        check_unit_interval(t, "t")?;
        let n = self.moduli.dim();
        if x.len() != n || y.len() != n {
            return dim_err(format!("vectors of length {} and {} for a {n}×{n} operator", x.len(), y.len()));
        }
        let lhs = inner(&self.matrix.mul_vec(x)?, y).norm();
        let a = self.moduli.abs_pow(t).mul_vec(x)?;
        let c = self.moduli.abs_adj_pow(1.0 - t).mul_vec(y)?;
        let classical = norm(&a) * norm(&c);

        let tn = self.norm();
        let tx = norm(&self.matrix.mul_vec(x)?);
        let tsy = norm(&self.matrix.adjoint().mul_vec(y)?);
        if is_negligible(tx, tn * norm(x)) || is_negligible(tsy, tn * norm(y)) {
            return Ok(PointwiseCheck { lhs, rhs_refined: classical, rhs_classical: classical, degenerate: true });
        }
        let u_star_y = self.moduli.isometry().adjoint().mul_vec(y)?;
        let b = self.moduli.abs_pow(1.0 - t).mul_vec(&u_star_y)?;
        let (corr, degenerate) = defect_term(&c, &a, 2.0, &a, &b, tn * norm(x));
        Ok(PointwiseCheck { lhs, rhs_refined: classical - corr, rhs_classical: classical, degenerate })
    }
}

/// Pointwise refined Kato inequality for a single `(x, y)` pair.
pub fn kato_pointwise_refined(t: &ComplexMatrix, x: &[Complex64], y: &[Complex64], t_exp: f64) -> Result<PointwiseCheck> {
    check_unit_interval(t_exp, "t")?;
    Operator::new(t)?.kato_pointwise(x, y, t_exp)
}

/// A nonzero operator with its numerical radius and maximizing vector, for
/// evaluating the single-operator bounds at many parameter values.
#[derive(Debug, Clone)]
pub struct SingleOperatorBounds {
    op: Operator,
    radius: RadiusResult,
}

/// The vectors `a = |T|^{p}x₀`, `b = |T|^{q}U*x₀` and `c = |T*|^{r}x₀` that
/// enter a correction term.
struct Defect {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    c: Vec<Complex64>,
}

impl SingleOperatorBounds {
    pub fn new(t: &ComplexMatrix) -> Result<Self> {
        let op = Operator::new(t)?;
        if op.norm() == 0.0 {
            return domain_err("numerical radius bounds need a nonzero operator");
        }
        let radius = numerical_radius(t, None)?;
        Ok(Self { op, radius })
    }

    pub fn operator(&self) -> &Operator {
        &self.op
    }

    pub fn radius(&self) -> &RadiusResult {
        &self.radius
    }

    fn defect(&self, p: f64, q: f64, r: f64) -> Defect {
        let m = &self.op.moduli;
        let x0 = &self.radius.maximizer;
        let u_star_x = m.isometry().adjoint().mul_vec(x0).expect("dimension");
        Defect {
            a: m.abs_pow(p).mul_vec(x0).expect("dimension"),
            b: m.abs_pow(q).mul_vec(&u_star_x).expect("dimension"),
            c: m.abs_adj_pow(r).mul_vec(x0).expect("dimension"),
        }
    }

    /// `(‖c‖ / (k‖a‖)) inf_λ ‖a − λb‖²` and the degenerate flag.
    fn correction(&self, d: &Defect, k: f64) -> (f64, bool) {
        defect_term(&d.c, &d.a, k, &d.a, &d.b, self.op.norm())
    }

    fn sum_norm(&self, s: f64, r: f64) -> f64 {
        let m = &self.op.moduli;
        hermitian_norm(&(&m.abs_pow(s) + &m.abs_adj_pow(r)))
    }

    /// `½‖|T|^{2t} + |T*|^{2(1−t)}‖` and its refinement by the Kato defect at `x₀`.
    pub fn el_haddad_kittaneh(&self, t: f64) -> (BoundResult, BoundResult) {
        let w = self.radius.value;
        let coarse = 0.5 * self.sum_norm(2.0 * t, 2.0 * (1.0 - t));
        let d = self.defect(t, 1.0 - t, 1.0 - t);
        let (corr, degenerate) = self.correction(&d, 2.0);
        (
            BoundResult::upper("el_haddad_kittaneh", coarse, w).param("t", t),
            BoundResult::upper("el_haddad_kittaneh_refined", coarse - corr, w)
                .param("t", t)
                .refining(coarse, Some(corr))
                .degenerate(degenerate),
        )
    }

    /// `w(T) ≤ ‖T‖ − ‖T‖^{1−t} (‖|T*|^{t/2}x₀‖ / (4‖|T|^{t/2}x₀‖)) inf_λ‖(|T|^{t/2} − λ|T|^{t/2}U*)x₀‖²`.
    pub fn norm_refinement(&self, t: f64) -> BoundResult {
        let norm = self.op.norm();
        let d = self.defect(t / 2.0, t / 2.0, t / 2.0);
        let (inner_corr, degenerate) = self.correction(&d, 4.0);
        let corr = norm.powf(1.0 - t) * inner_corr;
        BoundResult::upper("norm_refined", norm - corr, self.radius.value)
            .param("t", t)
            .refining(norm, Some(corr))
            .degenerate(degenerate)
    }

    /// `(‖T‖^{1/2}/2) ‖|T|ᵗ + |T*|^{1−t}‖`, plain and refined.
    pub fn mixed_power(&self, t: f64) -> (BoundResult, BoundResult) {
        let w = self.radius.value;
        let k = 0.5 * self.op.norm().sqrt();
        let m = self.sum_norm(t, 1.0 - t);
        let d = self.defect(t / 2.0, (1.0 - t) / 2.0, (1.0 - t) / 2.0);
        let (corr, degenerate) = self.correction(&d, 2.0);
        (
            BoundResult::upper("mixed_power", k * m, w).param("t", t),
            BoundResult::upper("mixed_power_refined", k * (m - corr), w)
                .param("t", t)
                .refining(k * m, Some(corr))
                .degenerate(degenerate),
        )
    }

    /// `(‖T‖^{1−t}/2) ‖|T|ᵗ + |T*|ᵗ‖`, plain and refined.
    pub fn equal_power(&self, t: f64) -> (BoundResult, BoundResult) {
        let w = self.radius.value;
        let k = 0.5 * self.op.norm().powf(1.0 - t);
        let m = self.sum_norm(t, t);
        let d = self.defect(t / 2.0, t / 2.0, t / 2.0);
        let (corr, degenerate) = self.correction(&d, 2.0);
        (
            BoundResult::upper("equal_power", k * m, w).param("t", t),
            BoundResult::upper("equal_power_refined", k * (m - corr), w)
                .param("t", t)
                .refining(k * m, Some(corr))
                .degenerate(degenerate),
        )
    }

    /// `√‖α|T|² + (1−α)|T*|²‖`.
    pub fn weighted_square(&self, alpha: f64) -> BoundResult {
        let m = &self.op.moduli;
        let s = &m.abs_pow(2.0).scale_real(alpha) + &m.abs_adj_pow(2.0).scale_real(1.0 - alpha);
        BoundResult::upper("weighted_square", hermitian_norm(&s).sqrt(), self.radius.value).param("alpha", alpha)
    }

    /// Every single-operator bound at `(t, α)`.
    pub fn report(&self, t: f64, alpha: f64) -> Result<BoundReport> {
        self.grid_report(&[t], &[alpha])
    }

    /// Every single-operator bound, over all `t` and `α` values given.
    pub fn grid_report(&self, ts: &[f64], alphas: &[f64]) -> Result<BoundReport> {
        for &t in ts {
            check_unit_interval(t, "t")?;
        }
        for &a in alphas {
            check_unit_interval(a, "alpha")?;
        }
        let w = self.radius.value;
        let mut report = BoundReport::default();
        report.push(BoundResult::upper("norm", self.op.norm(), w));
        report.push(BoundResult::lower("half_norm", 0.5 * self.op.norm(), w));
        // Kittaneh's bound and its refinement are the t = 1/2 case.
        let (kit, kit_refined) = self.el_haddad_kittaneh(0.5);
        let rename = |mut r: BoundResult, name: &str| {
            r.name = name.to_owned();
            r.params.clear();
            r
        };
        report.push(rename(kit, "kittaneh"));
        report.push(rename(kit_refined, "kittaneh_refined"));
        for &t in ts {
            let (ehk, ehk_refined) = self.el_haddad_kittaneh(t);
            report.push(ehk);
            report.push(ehk_refined);
            report.push(self.norm_refinement(t));
            let (mp, mp_refined) = self.mixed_power(t);
            report.push(mp);
            report.push(mp_refined);
            let (ep, ep_refined) = self.equal_power(t);
            report.push(ep);
            report.push(ep_refined);
        }
        for &a in alphas {
            report.push(self.weighted_square(a));
        }
        Ok(report)
    }
}

/// All single-operator numerical radius bounds of `T` at `(t, α)`.
pub fn single_operator_bounds(t: &ComplexMatrix, t_exp: f64, alpha: f64) -> Result<BoundReport> {
    check_unit_interval(t_exp, "t")?;
    check_unit_interval(alpha, "alpha")?;
    SingleOperatorBounds::new(t)?.report(t_exp, alpha)
}

/// Factors of a product `A X B` with `X` positive semidefinite.
#[derive(Debug, Clone)]
pub struct ProductFactors {
    pub a: ComplexMatrix,
    pub x: ComplexMatrix,
    pub b: ComplexMatrix,
}

impl ProductFactors {
    pub fn new(a: &ComplexMatrix, x: &ComplexMatrix, b: &ComplexMatrix) -> Result<Self> {
        let n = a.require_square("A")?;
        require_psd(x, "X")?;
        if b.require_square("B")? != n || x.rows() != n {
            return dim_err("A, X and B must have the same dimension");
        }
        Ok(Self { a: a.clone(), x: x.clone(), b: b.clone() })
    }

    /// `A = U|T|^{(1−t)/2}`, `X = |T|^{1/2}`, `B = |T|^{t/2}`, so that `AXB = T`.
    pub fn split_half(op: &Operator, t: f64) -> Result<Self> {
        check_unit_interval(t, "t")?;
        let m = op.moduli();
        Ok(Self {
            a: m.isometry().matmul(&m.abs_pow((1.0 - t) / 2.0))?,
            x: m.abs_pow(0.5),
            b: m.abs_pow(t / 2.0),
        })
    }

    /// `A = U|T|^{t/2}`, `X = |T|^{1−t}`, `B = |T|^{t/2}`, so that `AXB = T`.
    pub fn split_symmetric(op: &Operator, t: f64) -> Result<Self> {
        check_unit_interval(t, "t")?;
        let m = op.moduli();
        Ok(Self { a: m.isometry().matmul(&m.abs_pow(t / 2.0))?, x: m.abs_pow(1.0 - t), b: m.abs_pow(t / 2.0) })
    }

    pub fn product(&self) -> ComplexMatrix {
        &(&self.a * &self.x) * &self.b
    }

    /// `|⟨AXBx,y⟩| ≤ (‖X‖/2)(2‖Bx‖‖A*y‖ − inf_λ‖Bx − λA*y‖² ‖A*y‖ / (2‖Bx‖))`.
    ///
    /// The classical side is the Cauchy–Schwarz bound `‖X‖‖Bx‖‖A*y‖`; the
    /// refined side is always at most that.
    pub fn pointwise(&self, x: &[Complex64], y: &[Complex64]) -> Result<PointwiseCheck> {
        let n = self.a.rows();
        if x.len() != n || y.len() != n {
            return dim_err(format!("vectors of length {} and {} for dimension {n}", x.len(), y.len()));
        }
        let lhs = inner(&self.product().mul_vec(x)?, y).norm();
        let xn = svd(&self.x).norm();
        let bx = self.b.mul_vec(x)?;
        let ay = self.a.adjoint().mul_vec(y)?;
        let classical = xn * norm(&bx) * norm(&ay);
        let scale = svd(&self.b).norm() * norm(x);
        let (corr, degenerate) = defect_term(&ay, &bx, 2.0, &bx, &ay, scale);
        Ok(PointwiseCheck {
            lhs,
            rhs_refined: 0.5 * xn * (2.0 * norm(&bx) * norm(&ay) - corr),
            rhs_classical: classical,
            degenerate,
        })
    }
}

/// Refined Buzano-type inequality for `|⟨AXBx, y⟩|` with generic factors.
pub fn buzano_product_pointwise(
    a: &ComplexMatrix,
    x_mat: &ComplexMatrix,
    b: &ComplexMatrix,
    x: &[Complex64],
    y: &[Complex64],
) -> Result<PointwiseCheck> {
    ProductFactors::new(a, x_mat, b)?.pointwise(x, y)
}

/// Returns `(|⟨Xx,y⟩|, (‖X‖/2)(|⟨x,y⟩| + ‖x‖‖y‖))` for positive semidefinite `X`.
pub fn buzano_psd(x_mat: &ComplexMatrix, x: &[Complex64], y: &[Complex64]) -> Result<(f64, f64)> {
    require_psd(x_mat, "X")?;
    let lhs = inner(&x_mat.mul_vec(x)?, y).norm();
    let rhs = 0.5 * svd(x_mat).norm() * (inner(x, y).norm() + norm(x) * norm(y));
    Ok((lhs, rhs))
}

/// `w(AXB) ≤ (‖X‖/2)(‖|A*|² + |B|²‖ − correction)` with the correction at
/// the maximizer of `w(AXB)`. Reports `product` and `product_refined`.
pub fn bound_product_axb(a: &ComplexMatrix, x: &ComplexMatrix, b: &ComplexMatrix) -> Result<BoundReport> {
    let f = ProductFactors::new(a, x, b)?;
    let bn = svd(b).norm();
    if bn == 0.0 {
        return domain_err("B must be nonzero");
    }
    let r = numerical_radius(&f.product(), None)?;
    let x0 = &r.maximizer;
    let a_star = a.adjoint();
    let xn = svd(x).norm();
    let coarse_norm = hermitian_norm(&(&(a * &a_star) + &(&b.adjoint() * b)));
    let bx = b.mul_vec(x0)?;
    let ax = a_star.mul_vec(x0)?;
    let (corr, degenerate) = defect_term(&ax, &bx, 2.0, &bx, &ax, bn);
    let coarse = 0.5 * xn * coarse_norm;
    let mut report = BoundReport::default();
    report.push(BoundResult::upper("product", coarse, r.value));
    report.push(
        BoundResult::upper("product_refined", 0.5 * xn * (coarse_norm - corr), r.value)
            .refining(coarse, Some(corr))
            .degenerate(degenerate),
    );
    Ok(report)
}

/// `w(ST) ≤ (‖S‖^{1/2}/2)(‖|S*| + |T|²‖ − correction)`, from the product
/// bound with `A = U|S|^{1/2}`, `X = |S|^{1/2}`, `B = T`.
///
/// The correction is `(‖|S*|^{1/2}x₀‖ / (2‖Tx₀‖)) inf_λ ‖(T − λ|S|^{1/2}U*)x₀‖²`;
/// `|S|^{1/2}U*` is `A*`, and `‖A*x₀‖ = ‖|S*|^{1/2}x₀‖`.
pub fn bound_product_st(s: &ComplexMatrix, t: &ComplexMatrix) -> Result<BoundReport> {
    let n = s.require_square("S")?;
    if t.require_square("T")? != n {
        return dim_err("S and T must have the same dimension");
    }
    let tn = svd(t).norm();
    if tn == 0.0 {
        return domain_err("T must be nonzero");
    }
    let ms = Moduli::new(s)?;
    let r = numerical_radius(&s.matmul(t)?, None)?;
    let x0 = &r.maximizer;
    let k = 0.5 * ms.norm().sqrt();
    let coarse_norm = hermitian_norm(&(&ms.abs_adj_pow(1.0) + &(&t.adjoint() * t)));
    let a_star = &ms.abs_pow(0.5) * &ms.isometry().adjoint();
    let tx = t.mul_vec(x0)?;
    let ax = a_star.mul_vec(x0)?;
    let (corr, degenerate) = defect_term(&ax, &tx, 2.0, &tx, &ax, tn);
    let mut report = BoundReport::default();
    report.push(BoundResult::upper("st_product", k * coarse_norm, r.value));
    report.push(
        BoundResult::upper("st_product_refined", k * (coarse_norm - corr), r.value)
            .refining(k * coarse_norm, Some(corr))
            .degenerate(degenerate),
    );
    Ok(report)
}

/// `inf_λ ‖u − λv‖²` by brute force over a square grid of λ; used to
/// cross-check the closed form in tests.
#[cfg(test)]
pub(crate) fn inf_by_grid(u: &[Complex64], v: &[Complex64], half_width: f64, steps: usize) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..=steps {
        for j in 0..=steps {
            let lambda = Complex64::new(
                -half_width + 2.0 * half_width * i as f64 / steps as f64,
                -half_width + 2.0 * half_width * j as f64 / steps as f64,
            );
            let d: f64 = u.iter().zip(v).map(|(a, b)| (a - lambda * b).norm_sqr()).sum();
            best = best.min(d);
        }
    }
    best.min(u.iter().map(|a| a.norm_sqr()).sum())
}
