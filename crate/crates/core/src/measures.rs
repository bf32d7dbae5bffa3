//! Boundary measures `ν` on `[0, ∞)` for translation-invariant measures
//! `ω = ν ⊗ dy` on the closed right half-plane.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linexp;
use crate::special::ln_factorial;

/// Parameters of the atomic measure `ν_{a,ρ} = Σ_n (a^n / n!) δ_{ρ n / 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AtomicParams {
    a: f64,
    rho: f64,
}

impl AtomicParams {
    pub fn new(a: f64, rho: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) || !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::Domain(format!(
                "atomic measure requires a > 0 and ρ > 0 (got a={a}, ρ={rho})"
            )));
        }
        Ok(AtomicParams { a, rho })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Location `ρ n / 2` of the `n`-th atom.
    pub fn atom_location(&self, n: usize) -> f64 {
        self.rho * n as f64 / 2.0
    }

    /// The weight function `e^{a e^{ρ ξ}}` of the spectral norm, in log form.
    pub fn ln_spectral_weight(&self, xi: f64) -> f64 {
        self.a * (self.rho * xi).exp()
    }
}

/// Mass `a^n / n!` of the `n`-th atom; log-space above `n = 30`.
pub fn atom_weight(n: usize, params: &AtomicParams) -> f64 {
    if n <= 30 {
        (1..=n).fold(1.0, |acc, k| acc * params.a / k as f64)
    } else {
        ln_atom_weight(n, params).exp()
    }
}

pub fn ln_atom_weight(n: usize, params: &AtomicParams) -> f64 {
    n as f64 * params.a.ln() - ln_factorial(n as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub x: f64,
    pub mass: f64,
}

/// Piecewise-linear density on `[grid[0], grid[last]]`, zero elsewhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Density {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

/// On-disk form of a boundary measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureDescription {
    #[serde(default)]
    pub atoms: Vec<Atom>,
    #[serde(default)]
    pub density: Option<Density>,
}

/// A finite regular Borel measure on `[0, ∞)`: atoms plus a piecewise-linear
/// density. Atoms are sorted by location.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMeasure {
    atoms: Vec<Atom>,
    density: Option<Density>,
}

impl BoundaryMeasure {
    pub fn new(mut atoms: Vec<Atom>, density: Option<Density>) -> Result<Self> {
        for atom in &atoms {
            if !(atom.x >= 0.0 && atom.x.is_finite()) || !(atom.mass > 0.0 && atom.mass.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "atoms need location >= 0 and mass > 0 (got x={}, mass={})",
                    atom.x, atom.mass
                )));
            }
        }
        atoms.sort_by(|l, r| l.x.total_cmp(&r.x));
        if let Some(d) = &density {
            if d.grid.len() != d.values.len() || d.grid.len() < 2 {
                return Err(Error::InvalidInput(
                    "density grid and values must have equal length >= 2".into(),
                ));
            }
            if !(d.grid[0] >= 0.0) || d.grid.windows(2).any(|w| !(w[1] > w[0])) {
                return Err(Error::InvalidInput(
                    "density grid must be strictly increasing and start at >= 0".into(),
                ));
            }
            if d.grid.iter().any(|g| !g.is_finite()) || d.values.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
                return Err(Error::InvalidInput("density values must be finite and >= 0".into()));
            }
        }
        Ok(BoundaryMeasure { atoms, density })
    }

    pub fn from_description(desc: MeasureDescription) -> Result<Self> {
        Self::new(desc.atoms, desc.density)
    }

    pub fn to_description(&self) -> MeasureDescription {
        MeasureDescription {
            atoms: self.atoms.clone(),
            density: self.density.clone(),
        }
    }

    /// `mass · δ_x`.
    pub fn dirac(x: f64, mass: f64) -> Result<Self> {
        Self::new(vec![Atom { x, mass }], None)
    }

    /// Lebesgue measure restricted to `[0, extent]`.
    pub fn lebesgue(extent: f64) -> Result<Self> {
        Self::new(
            Vec::new(),
            Some(Density {
                grid: vec![0.0, extent],
                values: vec![1.0, 1.0],
            }),
        )
    }

    /// `ν_{a,ρ}` truncated to atoms `n = 0..=n_max`.
    pub fn atomic(params: &AtomicParams, n_max: usize) -> Result<Self> {
        let atoms = (0..=n_max)
            .map(|n| Atom {
                x: params.atom_location(n),
                mass: atom_weight(n, params),
            })
            .filter(|a| a.mass > 0.0)
            .collect();
        Self::new(atoms, None)
    }

    /// Adds the atoms of `other`; the density is kept from whichever side has one.
    pub fn with_atoms(mut self, extra: &[Atom]) -> Result<Self> {
        self.atoms.extend_from_slice(extra);
        Self::new(self.atoms, self.density)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn density(&self) -> Option<&Density> {
        self.density.as_ref()
    }

    /// `ν([0, t))`: atoms strictly below `t` plus the density integral.
    pub fn mass_below(&self, t: f64) -> f64 {
        let atoms: f64 = self.atoms.iter().take_while(|a| a.x < t).map(|a| a.mass).sum();
        let mut dens = 0.0;
        if let Some(d) = &self.density {
            for (g, v) in d.grid.windows(2).zip(d.values.windows(2)) {
                if g[0] >= t {
                    break;
                }
                let right = g[1].min(t);
                let v_right = v[0] + (v[1] - v[0]) * (right - g[0]) / (g[1] - g[0]);
                dens += 0.5 * (v[0] + v_right) * (right - g[0]);
            }
        }
        atoms + dens
    }

    /// `v(ξ) = ∫ e^{2ξx} dν(x)` for `ξ < 0`, exact per density segment.
    pub fn zen_weight(&self, xi: f64) -> Result<f64> {
        if !(xi < 0.0) {
            return Err(Error::Domain(format!("v(ξ) is defined for ξ < 0, got {xi}")));
        }
        let atoms: f64 = self.atoms.iter().map(|a| a.mass * (2.0 * xi * a.x).exp()).sum();
        let mut dens = 0.0;
        if let Some(d) = &self.density {
            let c = Complex64::new(2.0 * xi, 0.0);
            for (g, v) in d.grid.windows(2).zip(d.values.windows(2)) {
                dens += linexp::segment(
                    c,
                    g[0],
                    g[1] - g[0],
                    Complex64::new(v[0], 0.0),
                    Complex64::new(v[1], 0.0),
                )
                .re;
            }
        }
        Ok(atoms + dens)
    }

    /// Smallest point of the support (used to size kernel truncations).
    pub fn support_start(&self) -> Option<f64> {
        let atom = self.atoms.first().map(|a| a.x);
        let dens = self.density.as_ref().and_then(|d| {
            d.grid
                .iter()
                .zip(d.grid.iter().skip(1))
                .zip(d.values.windows(2))
                .find(|(_, v)| v[0] > 0.0 || v[1] > 0.0)
                .map(|((g0, _), _)| *g0)
        });
        match (atom, dens) {
            (Some(a), Some(d)) => Some(a.min(d)),
            (a, d) => a.or(d),
        }
    }
}

/// `ν([0,t))` for a measure; free-function form of [`BoundaryMeasure::mass_below`].
pub fn measure_mass(m: &BoundaryMeasure, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("measure_mass requires t > 0, got {t}")));
    }
    Ok(m.mass_below(t))
}

/// `v(ξ)`; see [`BoundaryMeasure::zen_weight`].
pub fn zen_weight_v(xi: f64, m: &BoundaryMeasure) -> Result<f64> {
    m.zen_weight(xi)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DoublingReport {
    /// `(t, ν([0,2t)) / ν([0,t)))` per grid point.
    pub ratio_samples: Vec<(f64, f64)>,
    pub sup_estimate: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Samples the doubling ratio `ν([0,2t)) / ν([0,t))` on `t_grid` and
/// compares its maximum with `bound`.
pub fn check_doubling(m: &BoundaryMeasure, t_grid: &[f64], bound: f64) -> Result<DoublingReport> {
    if t_grid.is_empty() {
        return Err(Error::InvalidInput("doubling check needs a non-empty t grid".into()));
    }
    let mut ratio_samples = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let below = measure_mass(m, t)?;
        if below <= 0.0 {
            return Err(Error::ZeroMass(format!("ν([0, {t})) = 0")));
        }
        ratio_samples.push((t, m.mass_below(2.0 * t) / below));
    }
    let sup_estimate = ratio_samples.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
    Ok(DoublingReport {
        ratio_samples,
        sup_estimate,
        bound,
        pass: sup_estimate <= bound,
    })
}
