//! Spatial line integrals `∫ |f(x+iy)|² dy` and the line-sum norm.
//!
//! On `|y| <= Y` the integrand is the exact synthesis of the piecewise-linear
//! `ψ`, integrated adaptively. Beyond `Y` the synthesis has the finite
//! expansion
//!
//! `√(2π) f(z) = Σ_j e^{z ξ_j} (A_j / z + B_j / z²)`
//!
//! (`A` collects the jumps at the support edges, `B` the slope changes), so
//! `|f|²` splits into non-oscillating diagonal terms and oscillating
//! cross terms `e^{iy(ξ_j - ξ_k)}`. The diagonal is integrated after the
//! substitution `y = Y/t`; the cross terms are continued to `y = Y + iu`,
//! where they decay exponentially, and summed with running prefix sums.

use num_complex::Complex64;
use serde::Serialize;

use super::SpectralFunction;
use crate::error::{Error, Result};
use crate::measures::{atom_weight, AtomicParams};
use crate::quadrature::{integrate, integrate_to_infinity, QuadratureConfig};

struct Knots {
    xi: Vec<f64>,
    a: Vec<Complex64>,
    b: Vec<Complex64>,
}

impl Knots {
    fn new(psi: &SpectralFunction) -> Knots {
        let g = psi.grid();
        let s = psi.samples();
        let n = g.len();
        let slopes: Vec<Complex64> = (0..n - 1).map(|k| (s[k + 1] - s[k]) / (g[k + 1] - g[k])).collect();
        let zero = Complex64::new(0.0, 0.0);
        let mut knots = Knots {
            xi: Vec::with_capacity(n),
            a: Vec::with_capacity(n),
            b: Vec::with_capacity(n),
        };
        for j in 0..n {
            let a = if j == 0 {
                -s[0]
            } else if j == n - 1 {
                s[n - 1]
            } else {
                zero
            };
            let right = if j < n - 1 { slopes[j] } else { zero };
            let left = if j > 0 { slopes[j - 1] } else { zero };
            let b = right - left;
            if a != zero || b != zero {
                knots.xi.push(g[j]);
                knots.a.push(a);
                knots.b.push(b);
            }
        }
        knots
    }

    fn conj(&self) -> Knots {
        Knots {
            xi: self.xi.clone(),
            a: self.a.iter().map(|v| v.conj()).collect(),
            b: self.b.iter().map(|v| v.conj()).collect(),
        }
    }

    /// `∫_Y^∞ |Σ_j e^{(x+iy) ξ_j} c_j(x+iy)|² dy` with `c_j(z) = A_j/z + B_j/z²`.
    fn right_tail(&self, x: f64, y0: f64, q: &QuadratureConfig) -> Result<f64> {
        if self.xi.is_empty() {
            return Ok(0.0);
        }
        let rel = q.target_rel_error;
        let depth = q.max_refinements.max(30);
        let growth: Vec<f64> = self.xi.iter().map(|&xi| (2.0 * x * xi).exp()).collect();

        let diagonal = integrate(
            |t| {
                let z = Complex64::new(x, y0 / t);
                let inv = z.inv();
                let s: f64 = (0..self.xi.len())
                    .map(|j| growth[j] * (inv * (self.a[j] + self.b[j] * inv)).norm_sqr())
                    .sum();
                Complex64::new(s * y0 / (t * t), 0.0)
            },
            &[0.0, 0.5, 1.0],
            rel,
            0.0,
            depth,
        )?
        .value
        .re;

        if self.xi.len() < 2 {
            return Ok(diagonal);
        }
        let up: Vec<Complex64> = self.xi.iter().map(|&xi| (Complex64::new(x, y0) * xi).exp()).collect();
        let down: Vec<Complex64> = self.xi.iter().map(|&xi| (Complex64::new(x, -y0) * xi).exp()).collect();
        let gaps: Vec<f64> = self.xi.windows(2).map(|w| w[1] - w[0]).collect();
        let cross = |u: f64| {
            let zi = Complex64::new(x - u, y0).inv();
            let wi = Complex64::new(x + u, -y0).inv();
            let mut prefix = Complex64::new(0.0, 0.0);
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..self.xi.len() {
                if j > 0 {
                    let d = down[j - 1] * wi * (self.a[j - 1].conj() + self.b[j - 1].conj() * wi);
                    prefix = (prefix + d) * (-u * gaps[j - 1]).exp();
                }
                sum += up[j] * zi * (self.a[j] + self.b[j] * zi) * prefix;
            }
            sum
        };
        let spread = self.xi[self.xi.len() - 1] - self.xi[0];
        let g = integrate_to_infinity(cross, 0.0, (1.0 / spread).min(y0), rel, depth)?;
        // ∫_Y^∞ = i ∫_0^∞ g(Y + iu) du, and the cross terms enter twice.
        Ok(diagonal - 2.0 * g.im)
    }
}

/// `∫_{-∞}^{∞} |f(x + iy)|² dy` for the synthesis `f` of `ψ`, computed
/// spatially (no Plancherel shortcut).
pub fn line_l2_squared(psi: &SpectralFunction, x: f64, q: &QuadratureConfig) -> Result<f64> {
    q.validate()?;
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("line integral needs Re z >= 0, got {x}")));
    }
    if psi.is_zero() {
        return Ok(0.0);
    }
    let (lo, hi) = psi.support().expect("non-zero function has a grid");
    let y0 = q.line_truncation_y;
    let step = (2.0 * std::f64::consts::PI / (hi - lo)).min(2.0);
    let panels = ((2.0 * y0 / step).ceil() as usize).max(2);
    let breaks: Vec<f64> = (0..=panels)
        .map(|i| {
            if i == panels {
                y0
            } else {
                -y0 + 2.0 * y0 * i as f64 / panels as f64
            }
        })
        .collect();
    let window = integrate(
        |y| Complex64::new(psi.laplace_exact(Complex64::new(x, y)).norm_sqr(), 0.0),
        &breaks,
        0.1 * q.target_rel_error,
        0.0,
        q.max_refinements,
    )?
    .value
    .re;
    let knots = Knots::new(psi);
    let right = knots.right_tail(x, y0, q)?;
    let left = knots.conj().right_tail(x, y0, q)?;
    let total = (window + right + left) / (2.0 * std::f64::consts::PI);
    if !total.is_finite() {
        return Err(Error::NonConvergence(format!("line integral at x = {x} is not finite")));
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineNorm {
    pub value: f64,
    /// Number of atom lines actually summed.
    pub lines_used: usize,
    /// Last summed term divided by the running sum.
    pub last_term_ratio: f64,
    /// Set when the series was cut at `series_truncation_n` with a last term
    /// above `target_rel_error` of the sum.
    pub truncated: bool,
}

/// `(Σ_n (a^n/n!) ∫ |f(ρn/2 + iy)|² dy)^{1/2}` from spatial line integrals.
///
/// The series stops early once a term is below `1e-17` of the sum and the
/// term ratio bound `a e^{ρ ξ_max} / (n+1)` is under `1/2`, which caps the
/// remaining tail by that term.
#[allow(non_snake_case)]
pub fn norm_M_lines(psi: &SpectralFunction, p: &AtomicParams, q: &QuadratureConfig) -> Result<LineNorm> {
    q.validate()?;
    if psi.is_zero() {
        return Ok(LineNorm {
            value: 0.0,
            lines_used: 0,
            last_term_ratio: 0.0,
            truncated: false,
        });
    }
    let xi_max = psi.support().expect("non-zero").1;
    let growth = (p.rho() * xi_max).exp();
    let mut sum = 0.0;
    let mut last_ratio = 0.0;
    let mut used = 0;
    for n in 0..=q.series_truncation_n {
        let weight = atom_weight(n, p);
        if weight == 0.0 {
            break;
        }
        let term = weight * line_l2_squared(psi, p.atom_location(n), q)?;
        sum += term;
        used = n + 1;
        last_ratio = if sum > 0.0 { term / sum } else { 0.0 };
        if n >= 1 && last_ratio <= 1e-17 && p.a() * growth / (n as f64 + 1.0) < 0.5 {
            break;
        }
    }
    let truncated = used == q.series_truncation_n + 1 && last_ratio > q.target_rel_error;
    Ok(LineNorm {
        value: sum.sqrt(),
        lines_used: used,
        last_term_ratio: last_ratio,
        truncated,
    })
}
