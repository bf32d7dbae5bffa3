//! Complex Gamma and log-Gamma.
//!
//! `log_gamma` shifts the argument to `|w| >= 15` with the recurrence and then
//! applies the Stirling series. Every term is a principal logarithm of a point
//! with positive real part, so the result is the analytic branch of
//! `log Γ` on the right half-plane: no `2πi` jumps along vertical lines.
//! `gamma` uses `exp(log_gamma)` on `Re z >= 1/2` and the reflection formula
//! below that.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `B_{2k} / (2k (2k - 1))` for k = 1..=10.
const STIRLING_COEFFICIENTS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// (n-1)! for n = 1..=20, exact in f64 up to 18! and correctly rounded after.
const FACTORIAL: [f64; 20] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Distance from a non-positive integer below which `gamma` reports a pole.
pub const POLE_TOLERANCE: f64 = 1e-14;

/// Gamma evaluator: Stirling series after upward recurrence, reflection on
/// the left.
#[derive(Debug, Clone, Copy)]
pub struct GammaEngine {
    coefficient_set: &'static [f64],
    /// `Re z` below which `gamma` goes through the reflection identity.
    reflection_threshold: f64,
    /// Minimum `|w|` at which the asymptotic series is summed.
    stirling_radius: f64,
}

impl Default for GammaEngine {
    fn default() -> Self {
        Self::STANDARD
    }
}

impl GammaEngine {
    pub const STANDARD: GammaEngine = GammaEngine {
        coefficient_set: &STIRLING_COEFFICIENTS,
        reflection_threshold: 0.5,
        stirling_radius: 15.0,
    };

    pub fn coefficient_set(&self) -> &[f64] {
        self.coefficient_set
    }

    pub fn reflection_threshold(&self) -> f64 {
        self.reflection_threshold
    }

    /// Principal-branch `log Γ(z)` for `Re z > 0`.
    pub fn log_gamma(&self, z: Complex64) -> Result<Complex64> {
        if !(z.re > 0.0) || !z.im.is_finite() {
            return Err(Error::Domain(format!(
                "log_gamma requires Re z > 0, got {} + {}i",
                z.re, z.im
            )));
        }
        let mut w = z;
        let mut shift = Complex64::new(0.0, 0.0);
        while w.norm() < self.stirling_radius {
            shift += w.ln();
            w += 1.0;
        }
        Ok(self.stirling(w) - shift)
    }

    fn stirling(&self, w: Complex64) -> Complex64 {
        let inv = w.inv();
        let inv2 = inv * inv;
        let mut series = Complex64::new(0.0, 0.0);
        let mut power = inv;
        for &c in self.coefficient_set {
            series += power * c;
            power *= inv2;
        }
        (w - 0.5) * w.ln() - w + HALF_LN_2PI + series
    }

    /// Principal-branch `Γ(z)`; errors at poles and on overflow.
    pub fn gamma(&self, z: Complex64) -> Result<Complex64> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Domain(format!("gamma of non-finite {z}")));
        }
        let nearest = z.re.round();
        if nearest <= 0.0 && (z - nearest).norm() < POLE_TOLERANCE {
            return Err(Error::Pole(format!("Γ has a pole at {nearest}")));
        }
        if z.im == 0.0 && z.re == nearest && (1.0..=20.0).contains(&z.re) {
            return Ok(Complex64::new(FACTORIAL[z.re as usize - 1], 0.0));
        }
        if z.re >= self.reflection_threshold {
            return exp_checked(self.log_gamma(z)?);
        }
        // Γ(z) = π / (sin(πz) Γ(1 - z)); sin is reduced by the nearest integer.
        let m = nearest;
        let sign = if (m as i64) % 2 == 0 { 1.0 } else { -1.0 };
        let sin_pz = (PI * (z - m)).sin() * sign;
        let log_rest = self.log_gamma(Complex64::new(1.0, 0.0) - z)?;
        let log_value = Complex64::new(PI.ln(), 0.0) - sin_pz.ln() - log_rest;
        exp_checked(log_value)
    }
}

fn exp_checked(w: Complex64) -> Result<Complex64> {
    if w.re > 709.0 {
        return Err(Error::Overflow(format!("|Γ| = e^{:.3} exceeds double range", w.re)));
    }
    Ok(w.exp())
}

/// `Γ(z)` with the standard engine.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    GammaEngine::STANDARD.gamma(z)
}

/// `log Γ(z)` with the standard engine, `Re z > 0`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    GammaEngine::STANDARD.log_gamma(z)
}

/// `log (a^n / n!)` for real `a > 0`.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 20 {
        FACTORIAL[n as usize].ln()
    } else {
        log_gamma(Complex64::new(n as f64 + 1.0, 0.0))
            .map(|v| v.re)
            .unwrap_or(f64::INFINITY)
    }
}

/// Logarithm of the lower bound for `|Γ(n/2 + u/ρ + iy)|^p` used in the
/// unboundedness argument for the orthogonal projection, with constant 1:
///
/// `-p u/ρ - p π |y| / 2 + p (n - 1)/2 · log(n/2) - p n / 2`.
pub fn gamma_magnitude_lower_bound_ln(n: u64, u: f64, rho: f64, y: f64, p: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain("lower bound requires n >= 1".into()));
    }
    if !(u > 0.0) || !(rho > 0.0) || !(p >= 1.0) || !y.is_finite() {
        return Err(Error::Domain(format!(
            "lower bound requires u > 0, ρ > 0, p >= 1 (got u={u}, ρ={rho}, p={p}, y={y})"
        )));
    }
    let n = n as f64;
    Ok(-p * u / rho - p * PI * y.abs() / 2.0 + p * (n - 1.0) / 2.0 * (n / 2.0).ln() - p * n / 2.0)
}

/// The lower bound itself; see [`gamma_magnitude_lower_bound_ln`].
pub fn gamma_magnitude_lower_bound(n: u64, u: f64, rho: f64, y: f64, p: f64) -> Result<f64> {
    gamma_magnitude_lower_bound_ln(n, u, rho, y, p).map(f64::exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn integer_values() {
        assert_eq!(gamma(c(1.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(gamma(c(5.0, 0.0)).unwrap(), c(24.0, 0.0));
        let mut fact = 1.0_f64;
        for n in 1..=20u32 {
            let g = gamma(c(n as f64, 0.0)).unwrap();
            assert!((g.re - fact).abs() / fact <= 1e-12, "n = {n}");
            fact *= n as f64;
        }
    }

    #[test]
    fn log_gamma_trivial_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        let v = log_gamma(c(10.0, 0.0)).unwrap();
        assert!((v.re - 362880f64.ln()).abs() < 1e-13);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn poles_and_domain() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma(c(n, 0.0)), Err(Error::Pole(_))));
            assert!(matches!(gamma(c(n + 1e-15, 0.0)), Err(Error::Pole(_))));
        }
        assert!(gamma(c(-1.0 + 1e-8, 0.0)).is_ok());
        assert!(matches!(log_gamma(c(0.0, 1.0)), Err(Error::Domain(_))));
        assert!(matches!(log_gamma(c(-0.5, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(gamma(c(200.0, 0.0)), Err(Error::Overflow(_))));
    }

    #[test]
    fn reflection_at_half_integers() {
        // Γ(-1/2) = -2√π
        let g = gamma(c(-0.5, 0.0)).unwrap();
        assert!(rel(g, c(-2.0 * PI.sqrt(), 0.0)) < 1e-14);
    }

    #[test]
    fn log_gamma_is_continuous_along_vertical_lines() {
        let mut prev = log_gamma(c(0.3, -60.0)).unwrap();
        for i in 1..=1200 {
            let z = c(0.3, -60.0 + 0.1 * i as f64);
            let cur = log_gamma(z).unwrap();
            assert!((cur.im - prev.im).abs() < 1.0, "jump near {z}");
            prev = cur;
        }
    }

    #[test]
    fn lower_bound_substitution_examples() {
        let b = gamma_magnitude_lower_bound(2, 1.0, 1.0, 0.0, 2.0).unwrap();
        assert!((b - (-4.0f64).exp()).abs() < 1e-16);
        let b = gamma_magnitude_lower_bound(1, 1.0, 1.0, 0.0, 2.0).unwrap();
        assert!((b - (-3.0f64).exp()).abs() < 1e-16);
        assert!(gamma_magnitude_lower_bound(0, 1.0, 1.0, 0.0, 2.0).is_err());
        assert!(gamma_magnitude_lower_bound(1, 1.0, 1.0, 0.0, 0.5).is_err());
    }

    #[test]
    fn ln_factorial_matches_product() {
        let direct: f64 = (1..=30).map(|k| (k as f64).ln()).sum();
        assert!((ln_factorial(30) - direct).abs() < 1e-12);
        assert_eq!(ln_factorial(0), 0.0);
    }
}
