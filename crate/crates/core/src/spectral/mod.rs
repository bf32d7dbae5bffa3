//! Paley–Wiener side: spectral functions `ψ`, the synthesis
//! `f(z) = (2π)^{-1/2} ∫ ψ(ξ) e^{zξ} dξ`, and the norms that are compared
//! against each other.

mod lines;
mod mellin;
mod zen;

pub use lines::{line_l2_squared, norm_M_lines, LineNorm};
pub use mellin::{
    mellin_inverse_line, mellin_to_spectral, mellin_transform, norm_halfline_weighted, HalfLineFunction, LineSamples,
};
pub use zen::{norm_zen, norm_zen_lines, zen_synthesize};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linexp;
use crate::measures::AtomicParams;
use crate::quadrature::{integrate, QuadratureConfig};

pub(crate) const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Piecewise-linear `ψ` on a strictly increasing grid, zero outside it.
/// An empty grid is the zero function.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFunction {
    grid: Vec<f64>,
    samples: Vec<Complex64>,
}

/// On-disk form shared by spectral and half-line functions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledDescription {
    pub grid: Vec<f64>,
    pub re: Vec<f64>,
    #[serde(default)]
    pub im: Vec<f64>,
}

impl SampledDescription {
    pub(crate) fn into_parts(self) -> Result<(Vec<f64>, Vec<Complex64>)> {
        let im = if self.im.is_empty() {
            vec![0.0; self.re.len()]
        } else {
            self.im
        };
        if self.re.len() != self.grid.len() || im.len() != self.grid.len() {
            return Err(Error::InvalidInput("grid, re and im must have the same length".into()));
        }
        let samples = self.re.into_iter().zip(im).map(|(r, i)| Complex64::new(r, i)).collect();
        Ok((self.grid, samples))
    }
}

pub(crate) fn check_grid(grid: &[f64], samples: &[Complex64]) -> Result<()> {
    if grid.len() != samples.len() {
        return Err(Error::InvalidInput(format!(
            "grid has {} points but {} samples were given",
            grid.len(),
            samples.len()
        )));
    }
    if grid.len() == 1 {
        return Err(Error::InvalidInput(
            "a sampled function needs 0 or >= 2 grid points".into(),
        ));
    }
    if grid.iter().any(|g| !g.is_finite()) || samples.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
        return Err(Error::InvalidInput("grid and samples must be finite".into()));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidInput("grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Linear interpolation on `grid`, zero outside.
pub(crate) fn interpolate(grid: &[f64], samples: &[Complex64], x: f64) -> Complex64 {
    let n = grid.len();
    if n < 2 || x < grid[0] || x > grid[n - 1] {
        return Complex64::new(0.0, 0.0);
    }
    let i = grid.partition_point(|&g| g <= x).clamp(1, n - 1);
    let t = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
    samples[i - 1] + (samples[i] - samples[i - 1]) * t
}

impl SpectralFunction {
    pub fn new(grid: Vec<f64>, samples: Vec<Complex64>) -> Result<Self> {
        check_grid(&grid, &samples)?;
        Ok(SpectralFunction { grid, samples })
    }

    pub fn from_description(desc: SampledDescription) -> Result<Self> {
        let (grid, samples) = desc.into_parts()?;
        Self::new(grid, samples)
    }

    pub fn zero() -> Self {
        SpectralFunction {
            grid: Vec::new(),
            samples: Vec::new(),
        }
    }

    /// `1` on `[lo, hi]`, `0` elsewhere.
    pub fn indicator(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo, hi], vec![Complex64::new(1.0, 0.0); 2])
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(grid: Vec<f64>, f: F) -> Result<Self> {
        let samples = grid.iter().map(|&x| f(x)).collect();
        Self::new(grid, samples)
    }

    /// `n + 1` equally spaced samples of `f` on `[lo, hi]`.
    pub fn sample_uniform<F: Fn(f64) -> Complex64>(f: F, lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n < 1 || !(hi > lo) {
            return Err(Error::InvalidInput("uniform sampling needs n >= 1 and hi > lo".into()));
        }
        let h = (hi - lo) / n as f64;
        let grid: Vec<f64> = (0..=n).map(|i| if i == n { hi } else { lo + h * i as f64 }).collect();
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

    pub fn support(&self) -> Option<(f64, f64)> {
        if self.grid.is_empty() {
            None
        } else {
            Some((self.grid[0], self.grid[self.grid.len() - 1]))
        }
    }

    pub fn eval(&self, xi: f64) -> Complex64 {
        interpolate(&self.grid, &self.samples, xi)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        SpectralFunction {
            grid: self.grid.clone(),
            samples: self.samples.iter().map(|s| s * c).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        SpectralFunction {
            grid: self.grid.clone(),
            samples: self.samples.iter().map(|s| s.conj()).collect(),
        }
    }

    /// Pointwise sum on the union of both grids. Exact where both summands
    /// are linear, i.e. everywhere except across a jump at a support edge.
    pub fn add(&self, other: &SpectralFunction) -> Result<Self> {
        let mut grid: Vec<f64> = self.grid.iter().chain(other.grid.iter()).copied().collect();
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        let samples = grid.iter().map(|&x| self.eval(x) + other.eval(x)).collect();
        Self::new(grid, samples)
    }

    /// Exact `∫ |ψ|² dξ`.
    pub fn l2_norm_squared(&self) -> f64 {
        self.grid
            .windows(2)
            .zip(self.samples.windows(2))
            .map(|(g, s)| {
                let h = g[1] - g[0];
                h / 3.0 * (s[0].norm_sqr() + (s[0] * s[1].conj()).re + s[1].norm_sqr())
            })
            .sum()
    }

    /// Exact synthesis of the piecewise-linear interpolant (per-segment
    /// closed form), without the `(2π)^{-1/2}` factor.
    pub(crate) fn laplace_exact(&self, z: Complex64) -> Complex64 {
        self.grid
            .windows(2)
            .zip(self.samples.windows(2))
            .map(|(g, s)| linexp::segment(z, g[0], g[1] - g[0], s[0], s[1]))
            .sum()
    }

    /// `f(z)` for the piecewise-linear `ψ`, evaluated in closed form.
    pub fn synthesize_exact(&self, z: Complex64) -> Complex64 {
        self.laplace_exact(z) * INV_SQRT_2PI
    }
}

/// `f(z) = (2π)^{-1/2} ∫ ψ(ξ) e^{zξ} dξ` by adaptive quadrature.
pub fn pw_synthesize(psi: &SpectralFunction, z: Complex64, q: &QuadratureConfig) -> Result<Complex64> {
    q.validate()?;
    if !(z.re >= 0.0) || !z.im.is_finite() {
        return Err(Error::Domain(format!("synthesis needs Re z >= 0, got {z}")));
    }
    if psi.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let i = integrate(
        |xi| psi.eval(xi) * (z * xi).exp(),
        psi.grid(),
        q.target_rel_error,
        0.0,
        q.max_refinements,
    )?;
    Ok(i.value * INV_SQRT_2PI)
}

fn weighted_integral<F>(psi_grid: &[f64], f: F, q: &QuadratureConfig) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    integrate(f, psi_grid, q.target_rel_error, 0.0, q.max_refinements).map(|i| i.value)
}

fn spectral_weight(xi: f64, p: &AtomicParams) -> f64 {
    p.ln_spectral_weight(xi).exp()
}

/// `(∫ |ψ|² e^{a e^{ρξ}} dξ)^{1/2}`.
pub fn norm_M_spectral(psi: &SpectralFunction, p: &AtomicParams, q: &QuadratureConfig) -> Result<f64> {
    q.validate()?;
    if psi.is_zero() {
        return Ok(0.0);
    }
    let v = weighted_integral(
        psi.grid(),
        |xi| Complex64::new(psi.eval(xi).norm_sqr() * spectral_weight(xi, p), 0.0),
        q,
    )?;
    Ok(v.re.max(0.0).sqrt())
}

/// `∫ ψ₁ conj(ψ₂) e^{a e^{ρξ}} dξ`.
pub fn inner_M(
    psi1: &SpectralFunction,
    psi2: &SpectralFunction,
    p: &AtomicParams,
    q: &QuadratureConfig,
) -> Result<Complex64> {
    q.validate()?;
    if psi1.is_zero() || psi2.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (lo1, hi1) = psi1.support().expect("non-zero");
    let (lo2, hi2) = psi2.support().expect("non-zero");
    let (lo, hi) = (lo1.max(lo2), hi1.min(hi2));
    if !(hi > lo) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut breaks: Vec<f64> = psi1
        .grid()
        .iter()
        .chain(psi2.grid())
        .copied()
        .filter(|&x| x >= lo && x <= hi)
        .collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    weighted_integral(
        &breaks,
        |xi| psi1.eval(xi) * psi2.eval(xi).conj() * spectral_weight(xi, p),
        q,
    )
}

/// `∫ e^{2xξ} |ψ(ξ)|² dξ`, the squared `L²` norm of `f` on the line `Re z = x`.
pub fn average_function(psi: &SpectralFunction, x: f64, q: &QuadratureConfig) -> Result<f64> {
    q.validate()?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("average function needs x > 0, got {x}")));
    }
    if psi.is_zero() {
        return Ok(0.0);
    }
    weighted_integral(
        psi.grid(),
        |xi| Complex64::new(psi.eval(xi).norm_sqr() * (2.0 * x * xi).exp(), 0.0),
        q,
    )
    .map(|v| v.re)
}

/// `ψ_{K_z}(ξ) = (2π)^{-1/2} e^{-a e^{ρξ}} e^{conj(z) ξ}` sampled on a
/// graded grid over `[lo, hi]`: spacing `step` for `ξ >= 0`, growing like
/// `e^{-Re z · ξ / 3}` below, capped at `0.05`.
pub fn kernel_spectral_function(
    z: Complex64,
    p: &AtomicParams,
    lo: f64,
    hi: f64,
    step: f64,
) -> Result<SpectralFunction> {
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("kernel function needs Re z > 0, got {z}")));
    }
    if !(hi > lo) || !(step > 0.0) {
        return Err(Error::InvalidInput("kernel sampling needs hi > lo and step > 0".into()));
    }
    let zc = z.conj();
    let f = |xi: f64| (Complex64::new(-p.a() * (p.rho() * xi).exp(), 0.0) + zc * xi).exp() * INV_SQRT_2PI;
    let mut grid = vec![lo];
    let mut x = lo;
    while x < hi {
        let h = if x >= 0.0 {
            step
        } else {
            (step * (-z.re * x / 3.0).exp()).min(0.05)
        };
        x = (x + h).min(hi);
        grid.push(x);
    }
    SpectralFunction::from_fn(grid, f)
}
