//! Semiclassical spectral Wigner functions.
//!
//! Near an energy shell the spectral Wigner function is approximated either
//! by the classical microcanonical delta or by its Airy softening
//! `(1/γ) Ai((H - E)/γ)` with the local width
//! `γ(x) = (ħ² ẋ·𝓗ẋ)^{1/3} / 2`.

use std::f64::consts::PI;

use crate::error::{invalid, require_positive, Error, Result};
use crate::quantum::{spectral_wigner_exact, EigenBasis1D};
use crate::special::airy_ai;
use crate::symplectic::{energy, velocity, Hamiltonian, HamiltonianModel, PhasePoint};

/// Local Airy width `γ(x)`, in energy units.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct AiryWidth {
    pub gamma: f64,
}

/// Energy, Lorentzian half-width and `ħ` of a spectral evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralParams {
    pub energy: f64,
    pub eps: f64,
    pub hbar: f64,
}

impl SpectralParams {
    pub fn new(energy: f64, eps: f64, hbar: f64) -> Result<Self> {
        require_positive("eps", eps)?;
        require_positive("hbar", hbar)?;
        Ok(Self { energy, eps, hbar })
    }
}

/// `γ(x)`; the sign follows `ẋ·𝓗ẋ` so concave points give `γ ≤ 0`.
pub fn airy_width<H: Hamiltonian>(model: &H, x: &PhasePoint, hbar: f64) -> Result<AiryWidth> {
    require_positive("hbar", hbar)?;
    let v = velocity(model, x)?;
    let hess = model.hessian(x);
    let d = v.dim();
    let mut curvature = 0.0;
    for i in 0..d {
        for j in 0..d {
            curvature += v.as_slice()[i] * hess[(i, j)] * v.as_slice()[j];
        }
    }
    Ok(AiryWidth {
        gamma: 0.5 * (hbar * hbar * curvature).cbrt(),
    })
}

/// Argument `(H(x) - E)/γ(x)` of the Airy form.
pub fn airy_argument<H: Hamiltonian>(model: &H, e: f64, x: &PhasePoint, hbar: f64) -> Result<f64> {
    let AiryWidth { gamma } = airy_width(model, x, hbar)?;
    if gamma <= 0.0 {
        return Err(Error::NonConvex { gamma });
    }
    Ok((energy(model, x)? - e) / gamma)
}

/// Gaussian nascent delta of width `smear` in `H(x) - E`.
pub fn classical_spectral_wigner<H: Hamiltonian>(
    model: &H,
    e: f64,
    x: &PhasePoint,
    smear: f64,
) -> Result<f64> {
    require_positive("smear", smear)?;
    let d = (energy(model, x)? - e) / smear;
    Ok((-0.5 * d * d).exp() / ((2.0 * PI).sqrt() * smear))
}

/// `(1/γ) Ai((H - E)/γ)`.
pub fn airy_spectral_wigner<H: Hamiltonian>(
    model: &H,
    e: f64,
    x: &PhasePoint,
    hbar: f64,
) -> Result<f64> {
    let AiryWidth { gamma } = airy_width(model, x, hbar)?;
    if gamma <= 0.0 {
        return Err(Error::NonConvex { gamma });
    }
    Ok(airy_ai((energy(model, x)? - e) / gamma) / gamma)
}

/// Outcome of the regime test `ħ/τ₁ ≪ ε ≪ γ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegimeCheck {
    /// `ħ/τ₁`, the smoothing needed to wash out the first return.
    pub return_scale: f64,
    pub eps: f64,
    pub gamma: f64,
    /// `exp(-ε τ₁/ħ)`: surviving weight of the shortest periodic orbit.
    pub return_weight: f64,
    /// Whether `ε` lies at least `margin` above `ħ/τ₁`.
    pub returns_suppressed: bool,
    /// Whether `ε` lies at least `margin` below `γ`.
    pub below_airy_width: bool,
}

impl RegimeCheck {
    pub fn satisfied(&self) -> bool {
        self.returns_suppressed && self.below_airy_width
    }
}

/// Checks `ħ/τ₁ ≪ ε ≪ γ` with a factor `margin` on each side.
///
/// The lower bound is read as `ε τ₁ ≫ ħ`, which damps every periodic
/// return so that only the direct segment through `x` survives.
pub fn validate_regime(eps: f64, hbar: f64, shortest_period: f64, gamma: f64, margin: f64) -> RegimeCheck {
    let return_scale = hbar / shortest_period;
    RegimeCheck {
        return_scale,
        eps,
        gamma,
        return_weight: (-eps * shortest_period / hbar).exp(),
        returns_suppressed: eps >= margin * return_scale,
        below_airy_width: eps * margin <= gamma,
    }
}

/// One radial sample of [`spectral_bridge`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BridgeSample {
    pub radius: f64,
    /// `(H - E)/γ` at the sample.
    pub z: f64,
    /// Lorentzian-smoothed spectral Wigner function of the oscillator.
    pub exact: f64,
    pub airy: f64,
}

/// Radial comparison of the Airy form with the exact smoothed spectral
/// Wigner function of `H = ω(p² + q²)/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralBridge {
    pub samples: Vec<BridgeSample>,
    pub peak: f64,
    pub rms_rel_peak: f64,
}

/// Scans `x = (0, r)` so that `(H - E)/γ_E` covers `z_range`, where `γ_E` is
/// the width on the shell.
pub fn spectral_bridge(params: &SpectralParams, omega: f64, z_range: (f64, f64), points: usize) -> Result<SpectralBridge> {
    require_positive("omega", omega)?;
    if points < 2 || !(z_range.0 < z_range.1) {
        return Err(invalid("z_range", "need an increasing range and two points"));
    }
    let SpectralParams { energy: e, eps, hbar } = *params;
    let model = HamiltonianModel::spherical(omega, PhasePoint::zeros(1))?;
    let basis = EigenBasis1D::new(omega, hbar, 0)?;
    let gamma_e = 0.5 * (2.0 * hbar * hbar * omega * omega * e).cbrt();
    let radius = |z: f64| -> Result<f64> {
        let h = e + z * gamma_e;
        if h <= 0.0 {
            return Err(invalid("z_range", "scan reaches the bottom of the well"));
        }
        Ok((2.0 * h / omega).sqrt())
    };
    let (r0, r1) = (radius(z_range.0)?, radius(z_range.1)?);
    let samples = (0..points)
        .map(|i| {
            let r = r0 + (r1 - r0) * i as f64 / (points - 1) as f64;
            let x = PhasePoint::new(vec![0.0, r])?;
            Ok(BridgeSample {
                radius: r,
                z: airy_argument(&model, e, &x, hbar)?,
                exact: spectral_wigner_exact(&basis, e, eps, &x)?,
                airy: airy_spectral_wigner(&model, e, &x, hbar)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let peak = samples.iter().fold(0.0f64, |m, s| m.max(s.exact.abs()));
    let ms = samples.iter().map(|s| (s.airy - s.exact).powi(2)).sum::<f64>() / points as f64;
    Ok(SpectralBridge {
        samples,
        peak,
        rms_rel_peak: ms.sqrt() / peak,
    })
}

/// Least-squares exponent of `γ(ħ)` at a fixed point.
pub fn width_exponent<H: Hamiltonian>(model: &H, x: &PhasePoint, hbars: &[f64]) -> Result<f64> {
    let points = hbars
        .iter()
        .map(|&hb| Ok((hb, airy_width(model, x, hb)?.gamma)))
        .collect::<Result<Vec<_>>>()?;
    crate::transition::log_log_slope(&points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::HamiltonianModel;

    fn osc() -> HamiltonianModel {
        HamiltonianModel::spherical(1.0, PhasePoint::zeros(1)).unwrap()
    }

    #[test]
    fn oscillator_width_closed_form() {
        for &(omega, hbar) in &[(1.0, 1.0), (2.0, 0.05), (0.7, 0.3)] {
            let m = HamiltonianModel::spherical(omega, PhasePoint::zeros(1)).unwrap();
            let x = PhasePoint::new(vec![0.4, -1.3]).unwrap();
            let h = m.value(&x);
            let g = airy_width(&m, &x, hbar).unwrap().gamma;
            let exact = 0.5 * (hbar * hbar * 2.0 * omega * omega * h).cbrt();
            assert!((g - exact).abs() < 1e-12 * exact);
        }
    }

    #[test]
    fn on_shell_value_is_ai_zero() {
        let m = osc();
        let x = PhasePoint::new(vec![0.0, 2.0]).unwrap();
        let g = airy_width(&m, &x, 0.1).unwrap().gamma;
        let w = airy_spectral_wigner(&m, 2.0, &x, 0.1).unwrap();
        assert!((w - crate::special::AI0 / g).abs() < 1e-14);
    }

    #[test]
    fn width_scales_as_hbar_two_thirds() {
        let m = osc();
        let x = PhasePoint::new(vec![1.0, 0.5]).unwrap();
        let a = airy_width(&m, &x, 1e-3).unwrap().gamma;
        let b = airy_width(&m, &x, 1.0).unwrap().gamma;
        let slope = (b / a).ln() / 1e3f64.ln();
        assert!((slope - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn concave_point_is_rejected() {
        struct Saddle;
        impl Hamiltonian for Saddle {
            fn dof(&self) -> usize {
                1
            }
            fn value(&self, x: &PhasePoint) -> f64 {
                0.5 * (x.p()[0].powi(2) - x.q()[0].powi(2))
            }
            fn gradient(&self, x: &PhasePoint) -> PhasePoint {
                PhasePoint::new(vec![x.p()[0], -x.q()[0]]).unwrap()
            }
        }
        let x = PhasePoint::new(vec![1.0, 0.2]).unwrap();
        assert!(matches!(
            airy_spectral_wigner(&Saddle, 0.0, &x, 1.0),
            Err(Error::NonConvex { .. })
        ));
    }

    #[test]
    fn classical_delta_peak_and_norm() {
        let m = osc();
        let x = PhasePoint::new(vec![0.0, 2.0]).unwrap();
        let peak = classical_spectral_wigner(&m, 2.0, &x, 0.1).unwrap();
        assert!((peak - 1.0 / ((2.0 * PI).sqrt() * 0.1)).abs() < 1e-12);
        let total = crate::quadrature::integrate_panels(
            |e| classical_spectral_wigner(&m, e, &x, 0.1).unwrap(),
            0.0,
            4.0,
            40,
            10,
        );
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn evanescent_side_is_small() {
        let m = osc();
        let hbar = 0.05;
        let e = 1.0;
        let peak = (0..400)
            .map(|i| {
                let r = 1.2 + 0.0005 * i as f64;
                airy_spectral_wigner(&m, e, &PhasePoint::new(vec![0.0, r]).unwrap(), hbar).unwrap()
            })
            .fold(0.0, f64::max);
        let x = PhasePoint::new(vec![0.0, 1.8]).unwrap();
        let z = airy_argument(&m, e, &x, hbar).unwrap();
        assert!(z > 5.0);
        let w = airy_spectral_wigner(&m, e, &x, hbar).unwrap();
        assert!(w.abs() < 1e-3 * peak);
    }

    #[test]
    fn bridge_in_the_semiclassical_regime() {
        let hbar = 0.05;
        let params = SpectralParams::new(5000.0, 3.0 * hbar, hbar).unwrap();
        let b = spectral_bridge(&params, 1.0, (-8.0, 5.0), 66).unwrap();
        assert!(b.rms_rel_peak < 0.1, "{}", b.rms_rel_peak);
        assert!((b.samples[0].z + 8.0).abs() < 0.05);
    }

    #[test]
    fn regime_validator() {
        let tau = 2.0 * PI;
        let ok = validate_regime(0.15, 0.05, tau, 2.0, 3.0);
        assert!(ok.satisfied());
        let bad = validate_regime(0.15, 0.05, tau, 0.2, 3.0);
        assert!(!bad.below_airy_width);
        assert!(ok.return_weight < 1e-7);
    }
}
