//! Exact integrals of a linear function against a complex exponential.
//!
//! Used wherever an integrand is a piecewise-linear interpolant times
//! `e^{c x}` (Filon-type integration of sampled data).

use num_complex::Complex64;

const SERIES_RADIUS: f64 = 0.5;

/// `(e^w - 1) / w`, stable near `w = 0`.
pub fn e1(w: Complex64) -> Complex64 {
    if w.norm() < SERIES_RADIUS {
        // Σ w^k / (k+1)!
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 1..24 {
            term *= w / (k as f64 + 1.0);
            sum += term;
        }
        sum
    } else {
        (w.exp() - 1.0) / w
    }
}

/// `∫_0^1 t e^{w t} dt = (e^w (w - 1) + 1) / w²`, stable near `w = 0`.
pub fn e2(w: Complex64) -> Complex64 {
    if w.norm() < SERIES_RADIUS {
        // Σ w^k / (k! (k + 2))
        let mut pow_over_fact = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.5, 0.0);
        for k in 1..24 {
            pow_over_fact *= w / k as f64;
            sum += pow_over_fact / (k as f64 + 2.0);
        }
        sum
    } else {
        (w.exp() * (w - 1.0) + 1.0) / (w * w)
    }
}

/// `∫_a^{a+h} ℓ(x) e^{c x} dx` where `ℓ` is linear with `ℓ(a) = s0`,
/// `ℓ(a+h) = s1`.
pub fn segment(c: Complex64, a: f64, h: f64, s0: Complex64, s1: Complex64) -> Complex64 {
    let w = c * h;
    (c * a).exp() * h * (s0 * e1(w) + (s1 - s0) * e2(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;

    #[test]
    fn matches_quadrature_across_regimes() {
        for &(cre, cim) in &[
            (0.0, 0.0),
            (1e-3, 2e-3),
            (0.3, 0.1),
            (-4.0, 25.0),
            (2.0, -0.7),
            (-300.0, 0.0),
        ] {
            let c = Complex64::new(cre, cim);
            let (a, h) = (-0.7, 1.3);
            let s0 = Complex64::new(0.4, -1.0);
            let s1 = Complex64::new(-2.0, 0.5);
            let exact = segment(c, a, h, s0, s1);
            let q = integrate(
                |x| (s0 + (s1 - s0) * ((x - a) / h)) * (c * x).exp(),
                &[a, a + h],
                1e-13,
                0.0,
                40,
            )
            .unwrap();
            assert!(
                (exact - q.value).norm() <= 1e-12 * q.value.norm().max(1e-300),
                "c = {c}: {exact} vs {}",
                q.value
            );
        }
    }

    #[test]
    fn series_and_closed_form_agree_at_switch() {
        for w in [
            Complex64::new(0.4999, 0.0),
            Complex64::new(0.0, 0.5001),
            Complex64::new(-0.35, 0.36),
        ] {
            let closed1 = (w.exp() - 1.0) / w;
            let closed2 = (w.exp() * (w - 1.0) + 1.0) / (w * w);
            assert!((e1(w) - closed1).norm() < 1e-14);
            assert!((e2(w) - closed2).norm() < 1e-13);
        }
    }
}
