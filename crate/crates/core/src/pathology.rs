//! Numerical witnesses for the negative results: the line-sum series for
//! `‖K_w‖_p^p`, which diverges for `p > 2`, and two families of functions
//! that are small in the naive `L²(ω_{2,1})` norm while misbehaving off the
//! atom lines.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linexp;
use crate::measures::{ln_atom_weight, AtomicParams};
use crate::quadrature::{integrate, QuadratureConfig};
use crate::special::{ln_factorial, log_gamma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesVerdict {
    Diverging,
    Converging,
    /// Neither monotone pattern holds over the last five terms.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivergenceSeries {
    pub p: f64,
    /// `(n, log term_n)` with
    /// `term_n = a^{n(1-p/2)}/n! ∫_{-Y}^{Y} |Γ(n/2 + u/ρ + it)|^p dt`.
    pub terms: Vec<(usize, f64)>,
    /// `log Σ_{m<=n} term_m`.
    pub partial_sums_log: Vec<f64>,
    pub verdict: SeriesVerdict,
    /// `log(ρ (2πρ)^{-p} a^{-pu/ρ})`, the factor turning the series into
    /// `‖K_w‖_p^p`.
    pub log_prefactor: f64,
}

impl DivergenceSeries {
    /// `log ‖K_w‖_p^p` from the full partial sum.
    pub fn log_norm_p(&self) -> f64 {
        self.log_prefactor + self.partial_sums_log.last().copied().unwrap_or(f64::NEG_INFINITY)
    }
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `log ∫_{-Y}^{Y} |Γ(s + it)|^p dt`, normalised at the peak `t = 0`.
fn log_gamma_line_integral(s: f64, p: f64, y0: f64, q: &QuadratureConfig) -> Result<f64> {
    let peak = log_gamma(Complex64::new(s, 0.0))?.re;
    let mut breaks = vec![0.0];
    let mut t = 0.5;
    while t < y0 {
        breaks.push(t);
        t *= 2.0;
    }
    breaks.push(y0);
    let half = integrate(
        |t| {
            let lg = log_gamma(Complex64::new(s, t)).map(|v| v.re).unwrap_or(f64::NAN);
            Complex64::new((p * (lg - peak)).exp(), 0.0)
        },
        &breaks,
        q.target_rel_error,
        0.0,
        q.max_refinements,
    )?;
    Ok(p * peak + (2.0 * half.value.re).ln())
}

/// Log-space partial sums of the line-sum series for `‖K_w‖_p^p` in
/// `M^p_{a,ρ}`, `n = 0..=n_max`.
pub fn projection_partial_sums(
    p: f64,
    params: &AtomicParams,
    w: Complex64,
    n_max: usize,
    q: &QuadratureConfig,
) -> Result<DivergenceSeries> {
    q.validate()?;
    if !(p >= 2.0) || !p.is_finite() {
        return Err(Error::Domain(format!("projection series needs p >= 2, got {p}")));
    }
    if !(w.re > 0.0) {
        return Err(Error::Domain(format!("projection series needs Re w > 0, got {w}")));
    }
    if n_max > 200 {
        return Err(Error::InvalidInput(format!(
            "projection series supports N <= 200, got {n_max}"
        )));
    }
    let (a, rho, u) = (params.a(), params.rho(), w.re);
    let mut terms = Vec::with_capacity(n_max + 1);
    let mut partial_sums_log = Vec::with_capacity(n_max + 1);
    let mut acc = f64::NEG_INFINITY;
    for n in 0..=n_max {
        let s = n as f64 / 2.0 + u / rho;
        let log_term = n as f64 * (1.0 - p / 2.0) * a.ln() - ln_factorial(n as u64)
            + log_gamma_line_integral(s, p, q.line_truncation_y, q)?;
        if !log_term.is_finite() {
            return Err(Error::Overflow(format!("log term {n} is not finite")));
        }
        acc = log_add(acc, log_term);
        terms.push((n, log_term));
        partial_sums_log.push(acc);
    }
    let verdict = if terms.len() < 5 {
        SeriesVerdict::Undetermined
    } else {
        let tail = &terms[terms.len() - 5..];
        let rising = tail.windows(2).all(|t| t[1].1 > t[0].1);
        let falling = tail.windows(2).all(|t| t[1].1 < t[0].1);
        let settled = tail[4].1 - acc < q.target_rel_error.ln();
        if rising {
            SeriesVerdict::Diverging
        } else if falling && settled {
            SeriesVerdict::Converging
        } else {
            SeriesVerdict::Undetermined
        }
    };
    let log_prefactor = rho.ln() - p * (2.0 * PI * rho).ln() - p * u / rho * a.ln();
    Ok(DivergenceSeries {
        p,
        terms,
        partial_sums_log,
        verdict,
        log_prefactor,
    })
}

/// `(sin 2πt, cos 2πt)` with `t` reduced mod 1 first, exact at multiples of
/// `1/4`.
pub fn sincos_2pi(t: f64) -> (f64, f64) {
    let r = t - t.round();
    if r == 0.0 {
        (0.0, 1.0)
    } else if r.abs() == 0.5 {
        (0.0, -1.0)
    } else if r == 0.25 {
        (1.0, 0.0)
    } else if r == -0.25 {
        (-1.0, 0.0)
    } else {
        (2.0 * PI * r).sin_cos()
    }
}

fn check_k(k: u32, z: Complex64) -> Result<()> {
    if k < 1 {
        return Err(Error::Domain("k must be >= 1".into()));
    }
    if !(z.re >= 0.0) || !z.im.is_finite() {
        return Err(Error::Domain(format!("counterexample needs Re z >= 0, got {z}")));
    }
    Ok(())
}

/// `w = kz` and the real part of `i e^{2πiw}`, exactly `0` when `2 Re w` is
/// an integer.
fn fk_outer(k: u32, z: Complex64) -> (Complex64, f64, f64, f64) {
    let w = z * k as f64;
    let ln_r = -2.0 * PI * w.im;
    let (sin, cos) = sincos_2pi(w.re);
    let re_e = if sin == 0.0 { 0.0 } else { -ln_r.exp() * sin };
    (w, ln_r, re_e, cos)
}

/// `log |f_k(z)|` for `f_k(z) = h(kz)`, `h(z) = (1+z)^{-1} exp{i e^{2πiz}}`.
pub fn counterexample_fk_log_modulus(k: u32, z: Complex64) -> Result<f64> {
    check_k(k, z)?;
    let (w, _, re_e, _) = fk_outer(k, z);
    if !re_e.is_finite() {
        return Err(Error::Overflow(format!("log |f_{k}({z})| is not representable")));
    }
    Ok(re_e - (1.0 + w).norm().ln())
}

/// `f_k(z) = h(kz)`, `h(z) = (1+z)^{-1} exp{i e^{2πiz}}`.
///
/// Errors with overflow when the outer exponent has real part above 700 or
/// when `|e^{2πikz}|` is too large for its phase to mean anything; values
/// whose exponent is below `-700` are returned as `0`.
pub fn counterexample_fk(k: u32, z: Complex64) -> Result<Complex64> {
    check_k(k, z)?;
    let (w, ln_r, re_e, cos) = fk_outer(k, z);
    if re_e > 700.0 || !re_e.is_finite() {
        return Err(Error::Overflow(format!(
            "Re of the exponent of f_{k}({z}) is {re_e:.3e}"
        )));
    }
    if re_e < -700.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if ln_r > 700.0 {
        return Err(Error::Overflow(format!(
            "|e^{{2πikz}}| = e^{ln_r:.1} at z = {z}; the phase of f_{k} is not resolvable"
        )));
    }
    let im_e = ln_r.exp() * cos;
    Ok(Complex64::new(re_e, im_e).exp() / (1.0 + w))
}

/// Smallest `ℓ₀ ∈ 1..=q` with `sin(2π ℓ₀ p/q) < 0`: along `k = ℓ₀ + 2qℓ`
/// the outer exponent of `f_k(p/q + iy)`, `y < 0`, has real part
/// `e^{2πk|y|} |sin(2πℓ₀p/q)| → +∞`.
pub fn blowup_residue(p: u32, q: u32) -> Option<u32> {
    (1..=q).find(|&l| sincos_2pi(l as f64 * p as f64 / q as f64).0 < 0.0)
}

/// `log |f_k|` at `p/q + iy` for `k = ℓ₀ + 2qℓ`, `ℓ ∈ ells`.
pub fn blowup_series(p: u32, q: u32, y: f64, ells: &[u32]) -> Result<Vec<(u32, f64)>> {
    if q == 0 || !(y < 0.0) {
        return Err(Error::Domain("blow-up needs q >= 1 and y < 0".into()));
    }
    let l0 =
        blowup_residue(p, q).ok_or_else(|| Error::Domain(format!("sin(2πℓp/q) >= 0 for every ℓ (p/q = {p}/{q})")))?;
    let z = Complex64::new(p as f64 / q as f64, y);
    ells.iter()
        .map(|&l| {
            let k = l0 + 2 * q * l;
            counterexample_fk_log_modulus(k, z).map(|v| (k, v))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FkNorm {
    /// `Σ_n 2^n/n! ∫_{-Y}^{Y} |f_k(n/2 + iy)|² dy` by line quadrature.
    pub norm_squared: f64,
    /// `π Σ_n 2^n/n! (1 + kn/2)^{-2}`, reported for comparison only.
    pub closed_form: f64,
}

fn line_breaks(scale: f64, y0: f64) -> Vec<f64> {
    let mut right = vec![];
    let mut t = scale;
    while t < y0 {
        right.push(t);
        t *= 4.0;
    }
    right.push(y0);
    let mut breaks: Vec<f64> = right.iter().rev().map(|t| -t).collect();
    breaks.push(0.0);
    breaks.extend(right);
    breaks
}

/// Squared `L²(ω_{2,1})` norm of `f_k` over atom lines `n = 0..=n_max`.
pub fn counterexample_fk_norm(k: u32, n_max: usize, q: &QuadratureConfig) -> Result<FkNorm> {
    q.validate()?;
    if k < 1 || n_max > 100 {
        return Err(Error::InvalidInput(format!(
            "fk norm needs k >= 1 and N <= 100 (k={k}, N={n_max})"
        )));
    }
    let params = AtomicParams::new(2.0, 1.0)?;
    let mut norm_squared = 0.0;
    let mut closed_form = 0.0;
    for n in 0..=n_max {
        let x = n as f64 / 2.0;
        let weight = ln_atom_weight(n, &params).exp();
        let c = 1.0 + k as f64 * x;
        let line = integrate(
            |y| {
                let lm = counterexample_fk_log_modulus(k, Complex64::new(x, y)).unwrap_or(f64::NAN);
                Complex64::new((2.0 * lm).exp(), 0.0)
            },
            &line_breaks(c / k as f64, q.line_truncation_y),
            q.target_rel_error,
            0.0,
            q.max_refinements,
        )?;
        norm_squared += weight * line.value.re;
        closed_form += weight * PI / (c * c);
    }
    Ok(FkNorm {
        norm_squared,
        closed_form,
    })
}

/// `f_k(z) = (1+z)^{-1} (exp{i e^{4kπiz}} - 1) / e^{4kπiz}`.
pub fn counterexample2_fk(k: u32, z: Complex64) -> Result<Complex64> {
    check_k(k, z)?;
    let pre = (1.0 + z).inv();
    let i = Complex64::new(0.0, 1.0);
    let ln_r = -4.0 * PI * k as f64 * z.im;
    let (sin, cos) = sincos_2pi(2.0 * k as f64 * z.re);
    if ln_r < -700.0 {
        return Ok(i * pre);
    }
    if ln_r > 700.0 {
        // |w| is astronomically large: exp(iw) - 1 stays bounded unless
        // Re(iw) = -|w| sin θ is positive.
        if sin < 0.0 {
            return Err(Error::Overflow(format!("exp(i e^{{4kπiz}}) overflows at z = {z}")));
        }
        return Ok(Complex64::new(0.0, 0.0));
    }
    let r = ln_r.exp();
    let w = Complex64::new(r * cos, r * sin);
    if r < 0.5 {
        return Ok(i * linexp::e1(i * w) * pre);
    }
    let iw = i * w;
    if iw.re > 700.0 {
        return Err(Error::Overflow(format!("exp(i e^{{4kπiz}}) overflows at z = {z}")));
    }
    Ok((iw.exp() - 1.0) / w * pre)
}

/// `g(z) = i/(1+z)` for `Im z > 0`, `0` for `Im z < 0`.
pub fn counterexample2_limit(z: Complex64) -> Result<Complex64> {
    if z.im > 0.0 {
        Ok(Complex64::new(0.0, 1.0) / (1.0 + z))
    } else if z.im < 0.0 {
        Ok(Complex64::new(0.0, 0.0))
    } else {
        Err(Error::Domain(format!(
            "the limit is not defined on the real axis ({z})"
        )))
    }
}

/// `Σ_n 2^n/n! ∫_{-Y}^{Y} |f_k(n/2 + iy)|² dy` for the second family.
pub fn counterexample2_fk_norm(k: u32, n_max: usize, q: &QuadratureConfig) -> Result<f64> {
    q.validate()?;
    if k < 1 || n_max > 100 {
        return Err(Error::InvalidInput(format!(
            "fk norm needs k >= 1 and N <= 100 (k={k}, N={n_max})"
        )));
    }
    let params = AtomicParams::new(2.0, 1.0)?;
    let mut total = 0.0;
    for n in 0..=n_max {
        let x = n as f64 / 2.0;
        let line = integrate(
            |y| {
                let v = counterexample2_fk(k, Complex64::new(x, y))
                    .map(|v| v.norm_sqr())
                    .unwrap_or(f64::NAN);
                Complex64::new(v, 0.0)
            },
            &line_breaks(0.25 / k as f64, q.line_truncation_y),
            q.target_rel_error,
            0.0,
            q.max_refinements.max(30),
        )?;
        total += ln_atom_weight(n, &params).exp() * line.value.re;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanValueCheck {
    pub center_value: Complex64,
    pub circle_mean: Complex64,
    pub defect: f64,
}

/// Compares the limit `g` at `center` with its mean over `samples` points of
/// the circle `|z - center| = radius`. Sample angles are offset by half a
/// step so that none falls on the real axis when `center` is real; on the
/// real axis `g` takes its upper-half-plane value `i/(1+x)`.
pub fn mean_value_defect(center: Complex64, radius: f64, samples: usize) -> Result<MeanValueCheck> {
    if !(radius > 0.0) || samples < 4 {
        return Err(Error::InvalidInput(
            "mean-value check needs radius > 0 and >= 4 samples".into(),
        ));
    }
    let g = |z: Complex64| {
        if z.im == 0.0 {
            Ok(Complex64::new(0.0, 1.0) / (1.0 + z))
        } else {
            counterexample2_limit(z)
        }
    };
    let center_value = g(center)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..samples {
        let theta = 2.0 * PI * (j as f64 + 0.5) / samples as f64;
        sum += g(center + Complex64::from_polar(radius, theta))?;
    }
    let circle_mean = sum / samples as f64;
    Ok(MeanValueCheck {
        center_value,
        circle_mean,
        defect: (circle_mean - center_value).norm(),
    })
}
