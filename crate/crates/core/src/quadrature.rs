//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.
//!
//! Intervals are kept in a max-heap keyed by their `|K15 - G7|` error
//! estimate; the worst one is bisected until the summed estimate falls below
//! the requested tolerance. An interval that would be bisected more than
//! `max_refinements` times is reported as non-convergence.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Grid, refinement and truncation controls shared by all 1-D integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub target_rel_error: f64,
    /// Maximum bisection depth of any single panel.
    pub max_refinements: u32,
    /// Half-width of the vertical window integrated by direct quadrature;
    /// the remainder of each line is handled by contour deformation.
    pub line_truncation_y: f64,
    /// Largest atom index `n` summed in line-sum norms.
    pub series_truncation_n: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            target_rel_error: 1e-9,
            max_refinements: 20,
            line_truncation_y: 200.0,
            series_truncation_n: 60,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_rel_error > 0.0) {
            return Err(Error::InvalidInput("target_rel_error must be > 0".into()));
        }
        if self.max_refinements < 1 {
            return Err(Error::InvalidInput("max_refinements must be >= 1".into()));
        }
        if !(self.line_truncation_y > 0.0) {
            return Err(Error::InvalidInput("line_truncation_y must be > 0".into()));
        }
        Ok(())
    }

    pub fn with_target(mut self, target_rel_error: f64) -> Self {
        self.target_rel_error = target_rel_error;
        self
    }
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
    /// Integral of `|f|`, used for round-off floors.
    pub abs_value: f64,
    pub evaluations: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Maximum number of live intervals before giving up.
const MAX_INTERVALS: usize = 4_000_000;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    abs_value: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, depth: u32) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let pair = f1 + f2;
        kron += pair * WGK[j];
        abs_sum += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let value = kron * half;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::NonConvergence(format!("integrand is not finite on [{a}, {b}]")));
    }
    Ok(Panel {
        a,
        b,
        value,
        error: ((kron - gauss) * half).norm(),
        abs_value: abs_sum * half.abs(),
        depth,
    })
}

/// Integrates `f` over `[breaks[0], breaks[last]]`, using every entry of
/// `breaks` as an initial panel boundary. `breaks` must be increasing.
///
/// Converges when the summed error estimate is at most
/// `max(rel · |I|, abs_tol)`, floored at round-off level.
pub fn integrate<F>(f: F, breaks: &[f64], rel: f64, abs_tol: f64, max_depth: u32) -> Result<Integral>
where
    F: Fn(f64) -> Complex64,
{
    if breaks.len() < 2 {
        return Ok(Integral {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            abs_value: 0.0,
            evaluations: 0,
        });
    }
    let mut heap = BinaryHeap::with_capacity(2 * breaks.len());
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    let mut total_abs = 0.0;
    for w in breaks.windows(2) {
        if !(w[1] > w[0]) {
            if w[1] == w[0] {
                continue;
            }
            return Err(Error::InvalidInput(format!(
                "integration breakpoints must increase ({} then {})",
                w[0], w[1]
            )));
        }
        let p = kronrod(&f, w[0], w[1], 0)?;
        total += p.value;
        total_err += p.error;
        total_abs += p.abs_value;
        heap.push(p);
    }
    let mut evaluations = 15 * heap.len();
    let mut since_resum = 0usize;
    loop {
        let tol = (rel * total.norm()).max(abs_tol).max(50.0 * f64::EPSILON * total_abs);
        if total_err <= tol || heap.is_empty() {
            break;
        }
        let worst = heap.pop().expect("non-empty heap");
        if worst.error <= 50.0 * f64::EPSILON * worst.abs_value {
            // Round-off limited: the worst panel cannot improve.
            heap.push(worst);
            break;
        }
        if worst.depth >= max_depth || heap.len() >= MAX_INTERVALS {
            return Err(Error::NonConvergence(format!(
                "refinement budget exhausted near [{:.6e}, {:.6e}] (error {:.3e}, tolerance {:.3e})",
                worst.a, worst.b, total_err, tol
            )));
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = kronrod(&f, worst.a, mid, worst.depth + 1)?;
        let right = kronrod(&f, mid, worst.b, worst.depth + 1)?;
        evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        total_abs += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
        since_resum += 1;
        if since_resum == 1024 {
            since_resum = 0;
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.error).sum();
            total_abs = heap.iter().map(|p| p.abs_value).sum();
        }
    }
    let value: Complex64 = heap.iter().map(|p| p.value).sum();
    Ok(Integral {
        value,
        error: heap.iter().map(|p| p.error).sum(),
        abs_value: heap.iter().map(|p| p.abs_value).sum(),
        evaluations,
    })
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<F>(f: F, breaks: &[f64], rel: f64, abs_tol: f64, max_depth: u32) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate(|x| Complex64::new(f(x), 0.0), breaks, rel, abs_tol, max_depth).map(|i| i.value.re)
}

/// Integrates `f` over `[start, ∞)` in panels of doubling width, starting
/// with `width`. Stops once two consecutive panels each contribute less than
/// `rel / 100` of the running total.
///
/// The integrand must eventually decay; a growing or non-decaying tail
/// exhausts the panel budget and is reported as non-convergence.
pub fn integrate_to_infinity<F>(f: F, start: f64, width: f64, rel: f64, max_depth: u32) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let mut total = Complex64::new(0.0, 0.0);
    let mut a = start;
    let mut w = width;
    let mut quiet = 0;
    for _ in 0..200 {
        let b = a + w;
        let abs_tol = 0.01 * rel * total.norm();
        let panel = integrate(&f, &[a, b], rel, abs_tol, max_depth)?;
        total += panel.value;
        if panel.abs_value <= 0.01 * rel * total.norm() || panel.abs_value == 0.0 {
            quiet += 1;
            if quiet >= 2 {
                return Ok(total);
            }
        } else {
            quiet = 0;
        }
        a = b;
        w *= 2.0;
        if !a.is_finite() {
            break;
        }
    }
    Err(Error::NonConvergence(format!(
        "semi-infinite integral from {start} did not settle (integrand does not decay)"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let i = integrate_real(|x| 7.0 * x.powi(4) - 2.0 * x.powi(3) + x, &[-3.0, 10.0], 1e-12, 0.0, 20).unwrap();
        let exact = |x: f64| 7.0 / 5.0 * x.powi(5) - 0.5 * x.powi(4) + 0.5 * x * x;
        assert!((i - (exact(10.0) - exact(-3.0))).abs() < 1e-9 * i.abs());
    }

    #[test]
    fn oscillatory_complex_exponential() {
        let z = Complex64::new(1.0, 40.0);
        let i = integrate(|x| (z * x).exp(), &[-1.0, 0.0], 1e-12, 0.0, 30).unwrap();
        let exact = (Complex64::new(1.0, 0.0) - (-z).exp()) / z;
        assert!((i.value - exact).norm() < 1e-12 * exact.norm());
    }

    #[test]
    fn narrow_peak_needs_refinement() {
        let eps = 1e-3;
        let i = integrate_real(|x| eps / (x * x + eps * eps), &[-1.0, 1.0], 1e-10, 0.0, 40).unwrap();
        let exact = 2.0 * (1.0 / eps).atan();
        assert!((i - exact).abs() < 1e-9 * exact);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = integrate_real(|x| 1.0 / x.abs().sqrt(), &[-1.0, 1.0], 1e-14, 0.0, 3);
        assert!(matches!(r, Err(Error::NonConvergence(_))));
    }

    #[test]
    fn zero_integrand_converges() {
        let i = integrate(|_| Complex64::new(0.0, 0.0), &[0.0, 1.0, 2.0], 1e-9, 0.0, 20).unwrap();
        assert_eq!(i.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn semi_infinite_exponential() {
        let v = integrate_to_infinity(|x| Complex64::new((-2.0 * x).exp(), 0.0), 0.0, 1.0, 1e-12, 30).unwrap();
        assert!((v.re - 0.5).abs() < 1e-13);
        let bad = integrate_to_infinity(|x| Complex64::new(x.exp().min(1e300), 0.0), 0.0, 1.0, 1e-9, 30);
        assert!(bad.is_err());
    }
}
