//! The transform `Tφ(z) = (2π)^{-1/2} ∫_{-∞}^0 e^{zξ} φ(ξ) dξ` onto a Zen
//! space `A²_ω`, `ω = ν ⊗ dy`, and both sides of its isometry.

use num_complex::Complex64;

use super::{line_l2_squared, pw_synthesize, SpectralFunction};
use crate::error::{Error, Result};
use crate::measures::BoundaryMeasure;
use crate::quadrature::{integrate, QuadratureConfig};

fn check_support(phi: &SpectralFunction) -> Result<()> {
    match phi.support() {
        Some((_, hi)) if hi > 0.0 => Err(Error::Support(format!(
            "Zen transform needs φ supported in (-∞, 0], support ends at {hi}"
        ))),
        _ => Ok(()),
    }
}

/// `Tφ(z)` by adaptive quadrature.
pub fn zen_synthesize(phi: &SpectralFunction, z: Complex64, q: &QuadratureConfig) -> Result<Complex64> {
    check_support(phi)?;
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("Zen transform needs Re z > 0, got {z}")));
    }
    pw_synthesize(phi, z, q)
}

/// `(∫ |φ(ξ)|² v(ξ) dξ)^{1/2}` with `v(ξ) = ∫ e^{2ξx} dν(x)`.
pub fn norm_zen(phi: &SpectralFunction, m: &BoundaryMeasure, q: &QuadratureConfig) -> Result<f64> {
    q.validate()?;
    check_support(phi)?;
    if phi.is_zero() {
        return Ok(0.0);
    }
    let i = integrate(
        |xi| {
            let v = m.zen_weight(xi).unwrap_or(f64::NAN);
            Complex64::new(phi.eval(xi).norm_sqr() * v, 0.0)
        },
        phi.grid(),
        q.target_rel_error,
        0.0,
        q.max_refinements,
    )?;
    Ok(i.value.re.max(0.0).sqrt())
}

/// `(∫∫ |Tφ(x+iy)|² dy dν(x))^{1/2}` from spatial line integrals: atoms
/// contribute single lines, the density part is integrated over `x`.
///
/// The `x`-integral of the density part stops where `e^{2xξ_max}` has
/// fallen below `1e-3 · target_rel_error`; when `φ` reaches `ξ = 0` the
/// full density grid is used.
pub fn norm_zen_lines(phi: &SpectralFunction, m: &BoundaryMeasure, q: &QuadratureConfig) -> Result<f64> {
    q.validate()?;
    check_support(phi)?;
    if phi.is_zero() {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for atom in m.atoms() {
        total += atom.mass * line_l2_squared(phi, atom.x, q)?;
    }
    if let Some(d) = m.density() {
        let xi_max = phi.support().expect("non-zero").1;
        let cutoff = if xi_max < 0.0 {
            (1e-3 * q.target_rel_error).ln() / (2.0 * xi_max)
        } else {
            f64::INFINITY
        };
        let end = d.grid[d.grid.len() - 1].min(cutoff);
        // Geometric panels from the first grid point: the integrand varies on
        // the scale 1/|ξ| near both ends of the support.
        let mut breaks: Vec<f64> = d.grid.iter().copied().filter(|&x| x < end).collect();
        let mut x = breaks[0].max(1e-3);
        while x < end {
            breaks.push(x);
            x *= 2.0;
        }
        breaks.push(end);
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let grid = &d.grid;
        let values = &d.values;
        let density = |x: f64| {
            let i = grid.partition_point(|&g| g <= x).clamp(1, grid.len() - 1);
            let t = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
            values[i - 1] + (values[i] - values[i - 1]) * t
        };
        let i = integrate(
            |x| {
                let w = density(x);
                if w == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                Complex64::new(w * line_l2_squared(phi, x, q).unwrap_or(f64::NAN), 0.0)
            },
            &breaks,
            q.target_rel_error,
            0.0,
            q.max_refinements,
        )?;
        total += i.value.re;
    }
    Ok(total.sqrt())
}
