//! Finite-data analytics for sequences in the right half-plane: counting
//! function, exponent of convergence, densities, the Carleman ratio
//! `(1/log R) Σ_{|z_j| <= R} Re(1/z_j)`, and a zero-set / uniqueness-set
//! classification for `M²_{2,1}`.
//!
//! Every limsup/liminf is replaced by an extremum over a finite window; the
//! windows are part of the report.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Points with `Re z > 0`, sorted by modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSequence {
    points: Vec<Complex64>,
    moduli: Vec<f64>,
    /// `prefix[k] = Σ_{j<k} Re(1/z_j)`.
    prefix: Vec<f64>,
    generator_tag: Option<String>,
}

impl PointSequence {
    pub fn new(mut points: Vec<Complex64>, generator_tag: Option<String>) -> Result<Self> {
        if let Some(p) = points
            .iter()
            .find(|p| !(p.re > 0.0) || !p.im.is_finite() || !p.re.is_finite())
        {
            return Err(Error::Domain(format!(
                "sequence point {p} is not in the right half-plane"
            )));
        }
        points.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
        let moduli: Vec<f64> = points.iter().map(|p| p.norm()).collect();
        let mut prefix = Vec::with_capacity(points.len() + 1);
        let mut acc = 0.0;
        prefix.push(acc);
        for p in &points {
            acc += p.inv().re;
            prefix.push(acc);
        }
        Ok(PointSequence {
            points,
            moduli,
            prefix,
            generator_tag,
        })
    }

    /// `z_j = step · j`, `j = 1..=count`.
    pub fn arithmetic(step: f64, count: usize) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::Domain(format!("arithmetic step must be > 0, got {step}")));
        }
        let pts = (1..=count).map(|j| Complex64::new(step * j as f64, 0.0)).collect();
        Self::new(pts, Some(format!("arith:{step}")))
    }

    /// `z_j = base^j`, `j = 1..=count`.
    pub fn geometric(base: f64, count: usize) -> Result<Self> {
        if !(base > 1.0) {
            return Err(Error::Domain(format!("geometric base must be > 1, got {base}")));
        }
        let pts: Vec<Complex64> = (1..=count).map(|j| Complex64::new(base.powi(j as i32), 0.0)).collect();
        if pts.iter().any(|p| !p.re.is_finite()) {
            return Err(Error::Overflow(format!("{base}^{count} exceeds double range")));
        }
        Self::new(pts, Some(format!("geom:{base}")))
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn generator_tag(&self) -> Option<&str> {
        self.generator_tag.as_deref()
    }

    pub fn max_modulus(&self) -> f64 {
        self.moduli.last().copied().unwrap_or(0.0)
    }

    /// Points with `|z_j| < r`.
    fn count_below(&self, r: f64) -> usize {
        self.moduli.partition_point(|&m| m < r)
    }
}

/// `n(r) = #{ j : |z_j| <= r }`.
pub fn counting_function(s: &PointSequence, r: f64) -> usize {
    s.moduli.partition_point(|&m| m <= r)
}

const EXPONENT_GRID: usize = 64;
const MIN_POINTS: usize = 100;

fn upper_window(s: &PointSequence) -> (f64, f64) {
    let r_max = s.max_modulus();
    (r_max / 2.0, r_max)
}

/// Least-squares slope of `log n(r)` against `log r` on a geometric grid
/// over the upper half `[r_max/2, r_max]` of the moduli.
pub fn exponent_of_convergence_estimate(s: &PointSequence) -> Result<f64> {
    if s.len() < MIN_POINTS {
        return Err(Error::InsufficientData(format!(
            "exponent estimate needs at least {MIN_POINTS} points, got {}",
            s.len()
        )));
    }
    let (lo, hi) = upper_window(s);
    let samples: Vec<(f64, f64)> = log_grid(lo, hi, EXPONENT_GRID)
        .into_iter()
        .filter_map(|r| {
            let n = counting_function(s, r);
            (n > 0).then(|| (r.ln(), (n as f64).ln()))
        })
        .collect();
    Ok(slope(&samples))
}

fn slope(samples: &[(f64, f64)]) -> f64 {
    let n = samples.len() as f64;
    if samples.len() < 2 {
        return 0.0;
    }
    let mx = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let my = samples.iter().map(|s| s.1).sum::<f64>() / n;
    let sxx: f64 = samples.iter().map(|s| (s.0 - mx) * (s.0 - mx)).sum();
    let sxy: f64 = samples.iter().map(|s| (s.0 - mx) * (s.1 - my)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if !(hi > lo) || n < 2 {
        return vec![hi];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| match i {
            0 => lo,
            i if i == n - 1 => hi,
            i => (a + (b - a) * i as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}

/// Max and min of `n(r) / r^{ρ₁}` over `r ∈ [r_max/2, r_max]`.
///
/// `n(r)/r^ρ₁` is decreasing between moduli, so the extremes are attained at
/// the window ends and at the one-sided limits at each modulus inside.
pub fn densities(s: &PointSequence, rho1: f64) -> Result<(f64, f64)> {
    if !(rho1 > 0.0) {
        return Err(Error::Domain(format!("densities need ρ₁ > 0, got {rho1}")));
    }
    if s.is_empty() {
        return Ok((0.0, 0.0));
    }
    let (lo, hi) = upper_window(s);
    let ratio = |n: usize, r: f64| n as f64 / r.powf(rho1);
    let at_lo = ratio(counting_function(s, lo), lo);
    let at_hi = ratio(counting_function(s, hi), hi);
    let (mut d_plus, mut d_minus) = (at_lo.max(at_hi), at_lo.min(at_hi));
    for &m in s.moduli.iter().filter(|&&m| m > lo) {
        d_plus = d_plus.max(ratio(counting_function(s, m), m));
        d_minus = d_minus.min(ratio(s.count_below(m), m));
    }
    Ok((d_plus, d_minus))
}

/// `(1/log R) Σ_{|z_j| <= R} Re(1/z_j)`.
pub fn carleman_ratio(s: &PointSequence, r: f64) -> Result<f64> {
    if !(r > E) {
        return Err(Error::Domain(format!("Carleman ratio needs R > e, got {r}")));
    }
    Ok(s.prefix[counting_function(s, r)] / r.ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    SufficientZeroSet,
    UniquenessSet,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::SufficientZeroSet => "sufficient_zero_set",
            Verdict::UniquenessSet => "uniqueness_set",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Thresholds of [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassifyOptions {
    /// Accepts `ρ₁` estimates with `|ρ₁ - 1| <= rho_tolerance`.
    pub rho_tolerance: f64,
    /// Required excess of the Carleman ratio over `2/π`.
    pub carleman_margin: f64,
    /// Number of geometrically spaced `R` in the top decade.
    pub carleman_samples: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            rho_tolerance: 0.05,
            carleman_margin: 0.05,
            carleman_samples: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub rho1_estimate: f64,
    /// `(r, n(r))` on the grid used for the exponent estimate.
    pub n_samples: Vec<(f64, usize)>,
    pub d_plus: f64,
    pub d_minus: f64,
    /// `(R, ratio)` over `[R_max/10, R_max]`.
    pub carleman_samples: Vec<(f64, f64)>,
    pub eps0: f64,
    pub verdict: Verdict,
    pub density_window: (f64, f64),
    pub carleman_window: (f64, f64),
    pub warnings: Vec<String>,
}

/// Classifies `s` with the finite-data rules for `M²_{2,1}`:
///
/// * `sufficient_zero_set` when `|ρ₁ - 1| <= rho_tolerance` and `d⁺ < 1/2`;
/// * `uniqueness_set` when `min Re z_j > 0` and the Carleman ratio stays at
///   least `2/π + carleman_margin` over the whole top decade of `R`;
/// * `inconclusive` otherwise, or if both rules fire.
pub fn classify(s: &PointSequence, r_max: f64, opts: &ClassifyOptions) -> Result<DensityReport> {
    if !(r_max > E) {
        return Err(Error::Domain(format!("R_max must exceed e, got {r_max}")));
    }
    if opts.carleman_samples < 1 {
        return Err(Error::InvalidInput("at least one Carleman sample is needed".into()));
    }
    let rho1 = exponent_of_convergence_estimate(s)?;
    let mut warnings = vec!["density, exponent and Carleman values are finite-window estimates".to_string()];
    let density_window = upper_window(s);
    let (d_plus, d_minus) = if rho1 > 0.0 {
        densities(s, rho1)?
    } else {
        warnings.push(format!("ρ₁ estimate {rho1} is not positive; densities not computed"));
        (0.0, 0.0)
    };
    let n_samples = log_grid(density_window.0, density_window.1, EXPONENT_GRID)
        .into_iter()
        .map(|r| (r, counting_function(s, r)))
        .collect();

    let r_lo = (r_max / 10.0).max(E * (1.0 + 1e-12));
    let carleman_samples: Vec<(f64, f64)> = log_grid(r_lo, r_max, opts.carleman_samples.max(2))
        .into_iter()
        .map(|r| carleman_ratio(s, r).map(|v| (r, v)))
        .collect::<Result<_>>()?;
    if r_max > s.max_modulus() {
        warnings.push(format!(
            "R_max = {r_max} exceeds the largest modulus {}; the Carleman sum is complete there",
            s.max_modulus()
        ));
    }
    let eps0 = s.points.iter().map(|p| p.re).fold(f64::INFINITY, f64::min);

    let zero_rule = (rho1 - 1.0).abs() <= opts.rho_tolerance && d_plus < 0.5;
    let min_ratio = carleman_samples.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    let uniqueness_rule = eps0 > 0.0 && min_ratio >= 2.0 / PI + opts.carleman_margin;
    let verdict = match (zero_rule, uniqueness_rule) {
        (true, false) => Verdict::SufficientZeroSet,
        (false, true) => Verdict::UniquenessSet,
        (true, true) => {
            warnings.push("both the zero-set and the uniqueness rule fired; reporting inconclusive".into());
            Verdict::Inconclusive
        }
        (false, false) => Verdict::Inconclusive,
    };
    warnings.push("thresholds 1/2 and 2/π are those for M²_{2,1}".into());
    Ok(DensityReport {
        rho1_estimate: rho1,
        n_samples,
        d_plus,
        d_minus,
        carleman_samples,
        eps0,
        verdict,
        density_window,
        carleman_window: (r_lo, r_max),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn counting_examples() {
        let s = PointSequence::arithmetic(1.0, 1000).unwrap();
        assert_eq!(counting_function(&s, 10.5), 10);
        assert_eq!(counting_function(&s, 0.5), 0);
        assert_eq!(counting_function(&s, 1000.0), 1000);
        assert_eq!(counting_function(&s, 10.0), 10);
    }

    #[test]
    fn exponent_examples() {
        let s = PointSequence::arithmetic(1.0, 10_000).unwrap();
        assert!((exponent_of_convergence_estimate(&s).unwrap() - 1.0).abs() < 0.02);
        let sq = PointSequence::new(
            (1..=10_000).map(|j| Complex64::new((j * j) as f64, 0.0)).collect(),
            None,
        )
        .unwrap();
        assert!((exponent_of_convergence_estimate(&sq).unwrap() - 0.5).abs() < 0.02);
        let g = PointSequence::geometric(2.0, 200).unwrap();
        assert!(exponent_of_convergence_estimate(&g).unwrap() < 0.1);
        let short = PointSequence::geometric(2.0, 30).unwrap();
        assert!(matches!(
            exponent_of_convergence_estimate(&short),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn density_examples() {
        let s = PointSequence::arithmetic(1.0, 10_000).unwrap();
        let (dp, dm) = densities(&s, 1.0).unwrap();
        assert!((dp - 1.0).abs() < 0.01 && (dm - 1.0).abs() < 0.01);
        let s3 = PointSequence::arithmetic(3.0, 10_000).unwrap();
        let (dp, _) = densities(&s3, 1.0).unwrap();
        assert!((dp - 1.0 / 3.0).abs() < 0.01);
        let empty = PointSequence::new(vec![], None).unwrap();
        assert_eq!(densities(&empty, 1.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn carleman_examples() {
        let s = PointSequence::arithmetic(1.0, 10_000).unwrap();
        let r = carleman_ratio(&s, 1000.0).unwrap();
        assert!((r - 1.083_632_896_394_867).abs() < 1e-12);
        let one = PointSequence::new(vec![Complex64::new(1.0, 0.0)], None).unwrap();
        assert!((carleman_ratio(&one, 10.0).unwrap() - 1.0 / 10f64.ln()).abs() < 1e-15);
        let diag: Vec<Complex64> = (1..=2000)
            .map(|j| Complex64::new(1.0, 1.0) * (j as f64 / 2f64.sqrt()))
            .collect();
        let d = PointSequence::new(diag, None).unwrap();
        assert!((carleman_ratio(&d, 1000.0).unwrap() - 0.766_244_169_357_629_9).abs() < 1e-12);
        assert!(carleman_ratio(&one, 2.0).is_err());
    }

    #[test]
    fn classification_examples() {
        let o = ClassifyOptions::default();
        let s = PointSequence::arithmetic(1.0, 10_000).unwrap();
        assert_eq!(classify(&s, 1000.0, &o).unwrap().verdict, Verdict::UniquenessSet);
        let s3 = PointSequence::arithmetic(3.0, 10_000).unwrap();
        let r = classify(&s3, 1000.0, &o).unwrap();
        assert_eq!(r.verdict, Verdict::SufficientZeroSet);
        assert!(r.d_minus <= r.d_plus);
        let g = PointSequence::geometric(2.0, 200).unwrap();
        assert_eq!(classify(&g, 1e6, &o).unwrap().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn scaling_divides_carleman_summands() {
        let s = PointSequence::new(
            (1..=500).map(|j| Complex64::new(j as f64, (j % 7) as f64)).collect(),
            None,
        )
        .unwrap();
        let s2 = PointSequence::new(s.points().iter().map(|p| p * 2.0).collect(), None).unwrap();
        let r = 1e4;
        assert!((carleman_ratio(&s2, r).unwrap() - carleman_ratio(&s, r).unwrap() / 2.0).abs() < 1e-14);
    }

    fn arb_points() -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((0.01..50.0f64, -50.0..50.0f64), 0..60)
            .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
    }

    proptest! {
        #[test]
        fn counting_is_monotone(pts in arb_points(), r in 0.0..80.0f64, dr in 0.0..20.0f64) {
            let s = PointSequence::new(pts, None).unwrap();
            prop_assert!(counting_function(&s, r) <= counting_function(&s, r + dr));
        }

        #[test]
        fn carleman_sum_is_additive(a in arb_points(), b in arb_points(), r in 3.0..100.0f64) {
            let sa = PointSequence::new(a.clone(), None).unwrap();
            let sb = PointSequence::new(b.clone(), None).unwrap();
            let su = PointSequence::new(a.into_iter().chain(b).collect(), None).unwrap();
            let lhs = carleman_ratio(&su, r).unwrap();
            let rhs = carleman_ratio(&sa, r).unwrap() + carleman_ratio(&sb, r).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
        }
    }
}
