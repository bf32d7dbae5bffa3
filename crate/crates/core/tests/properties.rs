use halfplane::kernels::{bergman_kernel, gram_matrix, kernel_M, min_eigenvalue, pointwise_bound, KernelSpec};
use halfplane::measures::{AtomicParams, BoundaryMeasure};
use halfplane::quadrature::QuadratureConfig;
use halfplane::spectral::{
    average_function, mellin_to_spectral, norm_M_lines, norm_M_spectral, norm_halfline_weighted, norm_zen,
    norm_zen_lines, pw_synthesize, HalfLineFunction, SpectralFunction,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn q() -> QuadratureConfig {
    QuadratureConfig::default()
}

/// Piecewise-linear function from unsorted knots; knots closer than 1e-3 are merged.
fn build(mut knots: Vec<(f64, f64, f64)>) -> (Vec<f64>, Vec<Complex64>) {
    knots.sort_by(|a, b| a.0.total_cmp(&b.0));
    knots.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-3);
    if knots.len() < 2 {
        let (x, re, im) = knots[0];
        knots.push((x + 0.5, im, re));
    }
    (
        knots.iter().map(|k| k.0).collect(),
        knots.iter().map(|k| Complex64::new(k.1, k.2)).collect(),
    )
}

fn spectral(lo: f64, hi: f64) -> impl Strategy<Value = SpectralFunction> {
    prop::collection::vec((lo..hi, -1.0..1.0f64, -1.0..1.0f64), 2..8).prop_map(|k| {
        let (g, v) = build(k);
        SpectralFunction::new(g, v).unwrap()
    })
}

fn params() -> impl Strategy<Value = AtomicParams> {
    (0.5..3.0f64, 0.5..2.0f64).prop_map(|(a, rho)| AtomicParams::new(a, rho).unwrap())
}

fn point() -> impl Strategy<Value = Complex64> {
    (0.2..4.0f64, -5.0..5.0f64).prop_map(|(x, y)| Complex64::new(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn paley_wiener_isometry(psi in spectral(-4.0, 1.5), p in params()) {
        let s = norm_M_spectral(&psi, &p, &q()).unwrap();
        let l = norm_M_lines(&psi, &p, &q()).unwrap();
        // Past a e^{ρ ξ_max} ≈ N/2 the default series is cut short and must say so.
        prop_assert!(
            (s - l.value).abs() <= 1e-5 * s || l.truncated,
            "spectral {s}, lines {}, {} lines", l.value, l.lines_used
        );
    }

    #[test]
    fn mellin_isometry(
        knots in prop::collection::vec((-3.0..1.6f64, -1.0..1.0f64, -1.0..1.0f64), 2..8),
        p in params(),
    ) {
        let (g, v) = build(knots);
        let phi = HalfLineFunction::new(g.iter().map(|x| x.exp()).collect(), v).unwrap();
        let h = norm_halfline_weighted(&phi, &p, &q()).unwrap();
        let s = norm_M_spectral(&mellin_to_spectral(&phi), &p, &q()).unwrap();
        prop_assert!((h - s).abs() <= 1e-9 * s, "half-line {h}, spectral {s}");
    }

    #[test]
    fn pointwise_bound_holds(psi in spectral(-4.0, 1.5), p in params(), z in point()) {
        let f = pw_synthesize(&psi, z, &q()).unwrap();
        let n = norm_M_spectral(&psi, &p, &q()).unwrap();
        let b = pointwise_bound(z, &p).unwrap();
        prop_assert!(f.norm() <= n * b * (1.0 + 1e-9), "|f| = {}, bound {}", f.norm(), n * b);
    }

    #[test]
    fn zen_isometry_point_mass(phi in spectral(-4.0, 0.0)) {
        let m = BoundaryMeasure::dirac(0.0, 1.0).unwrap();
        let a = norm_zen(&phi, &m, &q()).unwrap();
        let b = norm_zen_lines(&phi, &m, &q()).unwrap();
        prop_assert!((a - b).abs() <= 1e-5 * a, "{a} vs {b}");
    }

    #[test]
    fn average_function_log_convex(psi in spectral(-4.0, 1.5), x1 in 0.05..2.0f64, d in 0.05..2.0f64) {
        let (x2, x3) = (x1 + d, x1 + 2.0 * d);
        let m1 = average_function(&psi, x1, &q()).unwrap();
        let m2 = average_function(&psi, x2, &q()).unwrap();
        let m3 = average_function(&psi, x3, &q()).unwrap();
        prop_assert!(m2 * m2 <= m1 * m3 + 1e-12, "{m2}² > {m1}·{m3}");
    }

    #[test]
    fn gram_is_positive_semidefinite(pts in prop::collection::vec(point(), 2..9), p in params()) {
        let mut pts = pts;
        pts.dedup_by(|a, b| (*a - *b).norm() < 1e-6);
        for spec in [KernelSpec::Atomic(p), KernelSpec::Hardy, KernelSpec::Bergman] {
            let g = gram_matrix(&pts, &spec).unwrap();
            let diag = (0..pts.len()).map(|i| g[(i, i)].re).fold(0.0, f64::max);
            prop_assert!(min_eigenvalue(&g) >= -1e-10 * diag);
        }
    }

    #[test]
    fn kernel_is_hermitian(z in point(), w in point(), p in params()) {
        let a = kernel_M(z, w, &p).unwrap();
        let b = kernel_M(w, z, &p).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-14 * a.norm());
        let c = bergman_kernel(z, w).unwrap();
        prop_assert!((c - bergman_kernel(w, z).unwrap().conj()).norm() <= 1e-15 * c.norm());
    }
}

#[test]
fn zen_isometry_truncated_lebesgue() {
    let m = BoundaryMeasure::lebesgue(1e6).unwrap();
    let fns = [
        SpectralFunction::indicator(-2.0, -1.0).unwrap(),
        SpectralFunction::new(
            vec![-3.0, -1.5, -0.4],
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(-0.5, 1.0),
                Complex64::new(0.2, 0.0),
            ],
        )
        .unwrap(),
    ];
    for phi in &fns {
        let a = norm_zen(phi, &m, &q()).unwrap();
        let b = norm_zen_lines(phi, &m, &q()).unwrap();
        assert!((a - b).abs() <= 1e-5 * a, "{a} vs {b}");
    }
}
