use phasereflect::quadrature::integrate_panels;
use phasereflect::quantum::{spectral_wigner_exact, EigenBasis1D};
use phasereflect::spectral::{airy_spectral_wigner, airy_width};
use phasereflect::special::{airy_ai, airy_pair};
use phasereflect::symplectic::{energy, HamiltonianModel, PhasePoint};
use std::f64::consts::PI;

/// `∫_{-∞}^{-L} Ai` from the leading oscillatory asymptotics.
fn left_tail(l: f64) -> f64 {
    let (ai, aip) = airy_pair(-l);
    -aip / l + ai / (l * l)
}

#[test]
fn airy_function_integrates_to_one() {
    let (l, r) = (100.0, 40.0);
    let body = integrate_panels(airy_ai, -l, r, 3000, 10);
    let total = body + left_tail(l);
    assert!((total - 1.0).abs() < 1e-6, "∫Ai = {total}");
}

#[test]
fn airy_spectral_function_has_unit_energy_integral() {
    let m = HamiltonianModel::spherical(1.3, PhasePoint::zeros(1)).unwrap();
    let x = PhasePoint::new(vec![0.4, 0.9]).unwrap();
    let hbar = 0.02;
    let gamma = airy_width(&m, &x, hbar).unwrap().gamma;
    let h = energy(&m, &x).unwrap();
    let (l, r) = (100.0, 40.0);
    let body = integrate_panels(
        |e| airy_spectral_wigner(&m, e, &x, hbar).unwrap(),
        h - r * gamma,
        h + l * gamma,
        3000,
        10,
    );
    let total = body + left_tail(l);
    assert!((total - 1.0).abs() < 1e-6, "∫ dE W_E = {total}");
}

// Away from the semiclassical regime the smoothing width is comparable to
// the Airy width, and the exact spectral function matches the Airy form
// only after the latter is convolved with the same Lorentzian.
#[test]
fn lorentzian_smoothed_airy_form_tracks_exact_spectral_function() {
    let (hbar, e) = (0.05, 1.0);
    let eps = 3.0 * hbar;
    let m = HamiltonianModel::spherical(1.0, PhasePoint::zeros(1)).unwrap();
    let basis = EigenBasis1D::new(1.0, hbar, 0).unwrap();
    let mut peak = 0.0f64;
    let mut smoothed_err = 0.0f64;
    let mut bare_err = 0.0f64;
    for i in 0..20 {
        let r = 1.0 + 0.6 * i as f64 / 19.0;
        let x = PhasePoint::new(vec![0.0, r]).unwrap();
        let exact = spectral_wigner_exact(&basis, e, eps, &x).unwrap();
        let smoothed = integrate_panels(
            |u: f64| airy_spectral_wigner(&m, e + eps * u.tan(), &x, hbar).unwrap_or(0.0) / PI,
            -0.5 * PI + 1e-9,
            0.5 * PI - 1e-9,
            4000,
            10,
        );
        let bare = airy_spectral_wigner(&m, e, &x, hbar).unwrap();
        peak = peak.max(exact.abs());
        smoothed_err = smoothed_err.max((smoothed - exact).abs());
        bare_err = bare_err.max((bare - exact).abs());
    }
    assert!(smoothed_err < 0.05 * peak, "smoothed {smoothed_err} vs peak {peak}");
    assert!(bare_err > 0.5 * peak, "bare form should miss at this ε: {bare_err}");
}
