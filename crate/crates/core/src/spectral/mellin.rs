//! Mellin transform `Mφ(z) = (2π)^{-1/2} ∫_0^∞ φ(t) t^{z-1} dt` and its
//! relation to the spectral picture through `ξ = log t`.

use num_complex::Complex64;

use super::{check_grid, interpolate, SampledDescription, SpectralFunction, INV_SQRT_2PI};
use crate::error::{Error, Result};
use crate::linexp;
use crate::measures::AtomicParams;
use crate::quadrature::{integrate, QuadratureConfig};

/// `φ` sampled on `0 < t_0 < ... < t_N`, linear in `log t` between samples
/// and zero outside `[t_0, t_N]`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfLineFunction {
    grid: Vec<f64>,
    log_grid: Vec<f64>,
    samples: Vec<Complex64>,
}

impl HalfLineFunction {
    pub fn new(grid: Vec<f64>, samples: Vec<Complex64>) -> Result<Self> {
        check_grid(&grid, &samples)?;
        if let Some(&t0) = grid.first() {
            if !(t0 > 0.0) {
                return Err(Error::Support(format!(
                    "half-line function must be supported in (0, ∞), grid starts at {t0}"
                )));
            }
        }
        let log_grid = grid.iter().map(|t| t.ln()).collect();
        Ok(HalfLineFunction {
            grid,
            log_grid,
            samples,
        })
    }

    pub fn from_description(desc: SampledDescription) -> Result<Self> {
        let (grid, samples) = desc.into_parts()?;
        Self::new(grid, samples)
    }

    pub fn zero() -> Self {
        HalfLineFunction {
            grid: Vec::new(),
            log_grid: Vec::new(),
            samples: Vec::new(),
        }
    }

    pub fn indicator(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo, hi], vec![Complex64::new(1.0, 0.0); 2])
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(grid: Vec<f64>, f: F) -> Result<Self> {
        let samples = grid.iter().map(|&t| f(t)).collect();
        Self::new(grid, samples)
    }

    /// `n + 1` geometrically spaced samples on `[lo, hi]`.
    pub fn sample_geometric<F: Fn(f64) -> Complex64>(f: F, lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(lo > 0.0) || !(hi > lo) || n < 1 {
            return Err(Error::Support("geometric sampling needs 0 < lo < hi and n >= 1".into()));
        }
        let (a, b) = (lo.ln(), hi.ln());
        let grid = (0..=n)
            .map(|i| match i {
                0 => lo,
                i if i == n => hi,
                i => (a + (b - a) * i as f64 / n as f64).exp(),
            })
            .collect();
        Self::from_fn(grid, f)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn is_zero(&self) -> bool {
        self.samples.iter().all(|s| *s == Complex64::new(0.0, 0.0))
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        if !(t > 0.0) {
            return Complex64::new(0.0, 0.0);
        }
        interpolate(&self.log_grid, &self.samples, t.ln())
    }
}

/// `Mφ(z)` by adaptive quadrature in `t`.
pub fn mellin_transform(phi: &HalfLineFunction, z: Complex64, q: &QuadratureConfig) -> Result<Complex64> {
    q.validate()?;
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("Mellin transform evaluated at Re z <= 0 ({z})")));
    }
    if phi.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let zm1 = z - 1.0;
    let i = integrate(
        |t| phi.eval(t) * (zm1 * t.ln()).exp(),
        phi.grid(),
        q.target_rel_error,
        0.0,
        q.max_refinements,
    )?;
    Ok(i.value * INV_SQRT_2PI)
}

/// `ψ(ξ) = φ(e^ξ)` on the log-transformed grid.
pub fn mellin_to_spectral(phi: &HalfLineFunction) -> SpectralFunction {
    SpectralFunction::new(phi.log_grid.clone(), phi.samples.clone())
        .expect("log of a strictly increasing positive grid is strictly increasing")
}

/// `(∫_0^∞ |φ(t)|² e^{a t^ρ} dt/t)^{1/2}`.
pub fn norm_halfline_weighted(phi: &HalfLineFunction, p: &AtomicParams, q: &QuadratureConfig) -> Result<f64> {
    q.validate()?;
    if phi.is_zero() {
        return Ok(0.0);
    }
    let i = integrate(
        |t| Complex64::new(phi.eval(t).norm_sqr() * (p.a() * t.powf(p.rho())).exp() / t, 0.0),
        phi.grid(),
        q.target_rel_error,
        0.0,
        q.max_refinements,
    )?;
    Ok(i.value.re.max(0.0).sqrt())
}

/// Samples `t ↦ f(c + it)` of a Mellin image along a vertical line.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSamples {
    pub c: f64,
    pub t: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl LineSamples {
    pub fn new(c: f64, t: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        check_grid(&t, &values)?;
        Ok(LineSamples { c, t, values })
    }

    /// Samples `f` at `n + 1` equally spaced points of `[-half_width, half_width]`.
    pub fn sample<F: Fn(Complex64) -> Complex64>(f: F, c: f64, half_width: f64, n: usize) -> Result<Self> {
        if n < 1 || !(half_width > 0.0) {
            return Err(Error::InvalidInput(
                "line sampling needs n >= 1 and a positive width".into(),
            ));
        }
        let t: Vec<f64> = (0..=n)
            .map(|i| {
                if i == n {
                    half_width
                } else {
                    -half_width + 2.0 * half_width * i as f64 / n as f64
                }
            })
            .collect();
        let values = t.iter().map(|&y| f(Complex64::new(c, y))).collect();
        Self::new(c, t, values)
    }
}

/// `(2π)^{-1/2} ∫ f(c+it) ξ^{-c-it} dt` over the sampled window, with `f`
/// linear between samples and each segment integrated in closed form.
///
/// The window must capture the decay of `f`: both edge samples have to be
/// below `target_rel_error` times the largest sample.
pub fn mellin_inverse_line(line: &LineSamples, xi: f64, q: &QuadratureConfig) -> Result<Complex64> {
    q.validate()?;
    if !(xi > 0.0) {
        return Err(Error::Domain(format!("inverse Mellin transform needs ξ > 0, got {xi}")));
    }
    let peak = line.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let edge = line.values[0].norm().max(line.values[line.values.len() - 1].norm());
    if edge >= q.target_rel_error * peak {
        return Err(Error::DecayViolation(format!(
            "|f| at the window edge is {:.3e} of its maximum (needs < {:.1e})",
            edge / peak,
            q.target_rel_error
        )));
    }
    let freq = Complex64::new(0.0, -xi.ln());
    let sum: Complex64 = line
        .t
        .windows(2)
        .zip(line.values.windows(2))
        .map(|(t, v)| linexp::segment(freq, t[0], t[1] - t[0], v[0], v[1]))
        .sum();
    Ok(sum * xi.powf(-line.c) * INV_SQRT_2PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{norm_M_spectral, pw_synthesize};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn q() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn gamma_integral() {
        let phi = HalfLineFunction::sample_geometric(|t| c((-t).exp(), 0.0), 1e-6, 40.0, 40_000).unwrap();
        let m1 = mellin_transform(&phi, c(1.0, 0.0), &q()).unwrap();
        assert!((m1.re - INV_SQRT_2PI).abs() < 1e-6, "{m1}");
        let m3 = mellin_transform(&phi, c(3.0, 0.0), &q()).unwrap();
        assert!((m3.re - 2.0 * INV_SQRT_2PI).abs() < 1e-6, "{m3}");
        assert_eq!(
            mellin_transform(&HalfLineFunction::zero(), c(1.0, 0.0), &q()).unwrap(),
            c(0.0, 0.0)
        );
    }

    #[test]
    fn log_substitution() {
        let e_inv = (-1.0f64).exp();
        let phi = HalfLineFunction::indicator(e_inv, 1.0).unwrap();
        let psi = mellin_to_spectral(&phi);
        assert!((psi.grid()[0] + 1.0).abs() < 1e-15 && psi.grid()[1] == 0.0);
        let lin = HalfLineFunction::from_fn(vec![e_inv, 0.6, 1.0], |t| c(t, 0.0)).unwrap();
        let psi = mellin_to_spectral(&lin);
        assert!((psi.samples()[1].re - 0.6_f64.ln().exp()).abs() < 1e-15);
        let z = c(1.0, 1.0);
        let a = pw_synthesize(&psi, z, &q()).unwrap();
        let b = mellin_transform(&lin, z, &q()).unwrap();
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn weighted_half_line_norm_of_indicator() {
        let p = AtomicParams::new(2.0, 1.0).unwrap();
        let phi = HalfLineFunction::indicator((-1.0f64).exp(), 1.0).unwrap();
        let n = norm_halfline_weighted(&phi, &p, &q()).unwrap();
        assert!((n - 1.946_072_320_789_823_7).abs() < 1e-12);
        let via_spectral = norm_M_spectral(&mellin_to_spectral(&phi), &p, &q()).unwrap();
        assert!((n - via_spectral).abs() < 1e-9 * n);
    }

    #[test]
    fn support_must_avoid_zero() {
        assert!(matches!(HalfLineFunction::indicator(0.0, 1.0), Err(Error::Support(_))));
    }

    #[test]
    fn inverse_needs_decay() {
        let line = LineSamples::sample(|_| c(1.0, 0.0), 1.0, 10.0, 100).unwrap();
        assert!(matches!(
            mellin_inverse_line(&line, 0.5, &q()),
            Err(Error::DecayViolation(_))
        ));
        let zero = LineSamples::sample(|_| c(0.0, 0.0), 1.0, 10.0, 100).unwrap();
        assert_eq!(mellin_inverse_line(&zero, 0.5, &q()).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn inverse_of_a_gaussian_line() {
        // f(c+it) = e^{-t²/2} has inverse (2π)^{-1/2} ξ^{-c} ∫ e^{-t²/2} e^{-it log ξ} dt
        //         = ξ^{-c} e^{-(log ξ)²/2}.
        let line = LineSamples::sample(|z| c((-z.im * z.im / 2.0).exp(), 0.0), 1.5, 12.0, 24_000).unwrap();
        let v = mellin_inverse_line(&line, 0.7, &q().with_target(1e-6)).unwrap();
        let l = 0.7f64.ln();
        let exact = 0.7f64.powf(-1.5) * (-l * l / 2.0).exp();
        assert!((v.re - exact).abs() < 1e-6 && v.im.abs() < 1e-9);
    }
}
