//! Reproducing kernels: the closed form for `M²_{a,ρ}`, the Zen-space
//! integral, the Hardy and Bergman kernels, and related bounds.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measures::{AtomicParams, BoundaryMeasure};
use crate::quadrature::{integrate_to_infinity, QuadratureConfig};
use crate::special::log_gamma;

#[derive(Debug, Clone, PartialEq)]
pub enum KernelSpec {
    Atomic(AtomicParams),
    Zen(BoundaryMeasure, QuadratureConfig),
    Hardy,
    Bergman,
}

impl KernelSpec {
    pub fn eval(&self, z: Complex64, w: Complex64) -> Result<Complex64> {
        match self {
            KernelSpec::Atomic(p) => kernel_M(z, w, p),
            KernelSpec::Zen(m, q) => kernel_zen(z, w, m, q),
            KernelSpec::Hardy => hardy_kernel(z, w),
            KernelSpec::Bergman => bergman_kernel(z, w),
        }
    }
}

fn sum_conj(z: Complex64, w: Complex64) -> Result<Complex64> {
    let s = z + w.conj();
    if !(s.re > 0.0) || !s.im.is_finite() {
        return Err(Error::Domain(format!(
            "kernel needs Re(z + conj w) > 0 (z = {z}, w = {w})"
        )));
    }
    Ok(s)
}

/// `K(z,w) = (2πρ)^{-1} a^{-(z+w̄)/ρ} Γ((z+w̄)/ρ)`, assembled in log-space.
pub fn kernel_M(z: Complex64, w: Complex64, p: &AtomicParams) -> Result<Complex64> {
    let s = sum_conj(z, w)? / p.rho();
    let log_value = log_gamma(s)? - s * p.a().ln() - (2.0 * PI * p.rho()).ln();
    if log_value.re > 709.0 {
        return Err(Error::Overflow(format!(
            "|K(z,w)| = e^{:.3} exceeds double range",
            log_value.re
        )));
    }
    Ok(log_value.exp())
}

/// `K(z,w) = (2π)^{-1} ∫_{-∞}^0 e^{(z+w̄)ξ} / v(ξ) dξ`.
///
/// Panels are added leftward from `0`, doubling in width, until two
/// consecutive panels contribute less than `target_rel_error / 100` of the
/// running value.
pub fn kernel_zen(z: Complex64, w: Complex64, m: &BoundaryMeasure, q: &QuadratureConfig) -> Result<Complex64> {
    q.validate()?;
    let s = sum_conj(z, w)?;
    let singular = std::cell::Cell::new(None);
    let integrand = |t: f64| {
        let xi = -t;
        match m.zen_weight(xi) {
            Ok(v) if v > 0.0 && v.is_finite() => (-s * t).exp() / v,
            Ok(v) => {
                singular.set(Some(format!("v({xi:.6e}) = {v:e}")));
                Complex64::new(f64::NAN, 0.0)
            }
            Err(e) => {
                singular.set(Some(e.to_string()));
                Complex64::new(f64::NAN, 0.0)
            }
        }
    };
    let width = 1.0 / s.re;
    let result = integrate_to_infinity(integrand, 0.0, width, q.target_rel_error, q.max_refinements.max(30));
    if let Some(msg) = singular.take() {
        return Err(Error::SingularWeight(msg));
    }
    Ok(result? / (2.0 * PI))
}

/// `1 / (2π (z + w̄))`.
pub fn hardy_kernel(z: Complex64, w: Complex64) -> Result<Complex64> {
    Ok((2.0 * PI * sum_conj(z, w)?).inv())
}

/// `1 / (π (z + w̄)²)`.
pub fn bergman_kernel(z: Complex64, w: Complex64) -> Result<Complex64> {
    let s = sum_conj(z, w)?;
    Ok((PI * s * s).inv())
}

/// `(Re z)^{1/4} (2/a)^{Re z/ρ} Γ(Re z/ρ)`, the growth envelope with unit
/// constant.
pub fn growth_envelope(z: Complex64, p: &AtomicParams) -> Result<f64> {
    let x = z.re;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("growth envelope needs Re z > 0, got {z}")));
    }
    let s = x / p.rho();
    let log_value = 0.25 * x.ln() + s * (2.0 / p.a()).ln() + log_gamma(Complex64::new(s, 0.0))?.re;
    if log_value > 709.0 {
        return Err(Error::Overflow(format!(
            "growth envelope e^{log_value:.3} exceeds double range"
        )));
    }
    Ok(log_value.exp())
}

/// `sqrt(K(z,z))`, the sharp bound `|f(z)| <= ‖f‖ · sqrt(K(z,z))`.
pub fn pointwise_bound(z: Complex64, p: &AtomicParams) -> Result<f64> {
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("pointwise bound needs Re z > 0, got {z}")));
    }
    Ok(kernel_M(z, z, p)?.re.sqrt())
}

/// Whether `M²_{a,ρ}` embeds continuously in `M²_{a2,ρ2}`.
pub fn embedding_check(a: f64, rho: f64, a2: f64, rho2: f64) -> bool {
    rho > rho2 || (rho == rho2 && a > a2)
}

/// `G[i][j] = K(points[i], points[j])`.
pub fn gram_matrix(points: &[Complex64], k: &KernelSpec) -> Result<DMatrix<Complex64>> {
    for (i, p) in points.iter().enumerate() {
        if !(p.re > 0.0) {
            return Err(Error::Domain(format!("Gram point {p} is not in the right half-plane")));
        }
        if points[..i].contains(p) {
            return Err(Error::InvalidInput(format!("Gram point {p} is repeated")));
        }
    }
    let n = points.len();
    let mut g = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for i in 0..n {
        for j in 0..=i {
            let v = k.eval(points[i], points[j])?;
            g[(i, j)] = v;
            g[(j, i)] = if i == j { Complex64::new(v.re, 0.0) } else { v.conj() };
        }
    }
    Ok(g)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(g: &DMatrix<Complex64>) -> f64 {
    if g.nrows() == 0 {
        return 0.0;
    }
    g.clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p21() -> AtomicParams {
        AtomicParams::new(2.0, 1.0).unwrap()
    }

    #[test]
    fn atomic_kernel_examples() {
        let k = kernel_M(c(1.0, 0.0), c(1.0, 0.0), &p21()).unwrap();
        assert!((k.re - 1.0 / (8.0 * PI)).abs() < 1e-16 && k.im.abs() < 1e-17);
        let (z, w) = (c(1.0, 1.0), c(2.0, -0.5));
        let kzw = kernel_M(z, w, &p21()).unwrap();
        let kwz = kernel_M(w, z, &p21()).unwrap();
        assert!((kzw - kwz.conj()).norm() < 1e-16);
        assert!(matches!(
            kernel_M(c(-1.0, 0.0), c(0.5, 0.0), &p21()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn diagonal_is_positive() {
        for (a, rho) in [(2.0, 1.0), (1.0, 2.0), (0.5, 0.5)] {
            let p = AtomicParams::new(a, rho).unwrap();
            for x in [0.1, 1.0, 5.0, 20.0] {
                let k = kernel_M(c(x, 3.0), c(x, 3.0), &p).unwrap();
                assert!(k.re > 0.0 && k.im.abs() <= 1e-14 * k.re, "a={a} ρ={rho} x={x}");
            }
        }
    }

    #[test]
    fn zen_kernel_specialisations() {
        let q = QuadratureConfig::default();
        let delta = BoundaryMeasure::dirac(0.0, 1.0).unwrap();
        let k = kernel_zen(c(1.0, 0.0), c(1.0, 0.0), &delta, &q).unwrap();
        assert!((k.re - 1.0 / (4.0 * PI)).abs() < 1e-12);
        let leb = BoundaryMeasure::lebesgue(1e6).unwrap();
        let k = kernel_zen(c(1.0, 0.0), c(1.0, 0.0), &leb, &q).unwrap();
        assert!((k.re - 1.0 / (4.0 * PI)).abs() < 1e-10);
        let (z, w) = (c(1.0, 1.0), c(2.0, 0.0));
        let a = kernel_zen(z, w, &leb, &q).unwrap();
        let b = kernel_zen(w, z, &leb, &q).unwrap();
        assert!((a - b.conj()).norm() < 1e-12);
    }

    #[test]
    fn zen_kernel_reports_vanishing_weight() {
        let q = QuadratureConfig::default();
        let far = BoundaryMeasure::dirac(400.0, 1.0).unwrap();
        let r = kernel_zen(c(1.0, 0.0), c(1.0, 0.0), &far, &q);
        assert!(
            matches!(r, Err(Error::SingularWeight(_)) | Err(Error::NonConvergence(_))),
            "{r:?}"
        );
    }

    #[test]
    fn closed_form_kernels() {
        assert!((hardy_kernel(c(1.0, 0.0), c(1.0, 0.0)).unwrap().re - 1.0 / (4.0 * PI)).abs() < 1e-17);
        assert!((bergman_kernel(c(1.0, 0.0), c(1.0, 0.0)).unwrap().re - 1.0 / (4.0 * PI)).abs() < 1e-17);
        let (z, w) = (c(0.3, 2.0), c(1.0, -1.0));
        assert_eq!(hardy_kernel(z, w).unwrap(), hardy_kernel(w, z).unwrap().conj());
        assert!(hardy_kernel(c(-2.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn envelope_and_bound() {
        let p = p21();
        assert!((growth_envelope(c(1.0, 0.0), &p).unwrap() - 1.0).abs() < 1e-14);
        assert!((growth_envelope(c(2.0, 0.0), &p).unwrap() - 2f64.powf(0.25)).abs() < 1e-14);
        assert_eq!(
            growth_envelope(c(2.0, 5.0), &p).unwrap(),
            growth_envelope(c(2.0, 0.0), &p).unwrap()
        );
        assert!((pointwise_bound(c(1.0, 0.0), &p).unwrap() - (1.0 / (8.0 * PI)).sqrt()).abs() < 1e-15);
        assert_eq!(
            pointwise_bound(c(1.0, 7.0), &p).unwrap(),
            pointwise_bound(c(1.0, 0.0), &p).unwrap()
        );
        assert!(growth_envelope(c(0.0, 1.0), &p).is_err());
    }

    #[test]
    fn embeddings() {
        assert!(embedding_check(1.0, 2.0, 5.0, 1.0));
        assert!(embedding_check(3.0, 1.0, 2.0, 1.0));
        assert!(!embedding_check(1.0, 1.0, 1.0, 2.0));
        assert!(!embedding_check(2.0, 1.0, 2.0, 1.0));
    }

    #[test]
    fn gram_examples() {
        let spec = KernelSpec::Atomic(p21());
        let g = gram_matrix(&[c(1.0, 0.0)], &spec).unwrap();
        assert!((g[(0, 0)].re - 1.0 / (8.0 * PI)).abs() < 1e-16);
        let pts = [c(0.5, 0.0), c(1.0, 1.0), c(2.0, -1.0), c(0.7, 3.0)];
        let g = gram_matrix(&pts, &spec).unwrap();
        assert_eq!(g, g.adjoint());
        assert!(min_eigenvalue(&g) > -1e-12);
        assert!(gram_matrix(&[c(1.0, 0.0), c(1.0, 0.0)], &spec).is_err());
        assert!(gram_matrix(&[c(0.0, 1.0)], &spec).is_err());
    }
}
