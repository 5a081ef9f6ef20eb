//! The one-dimensional caustic, where the classical transition density
//! diverges as the two circles touch.
//!
//! In the frame of the reflection the shells are
//! `H_± = (ω/2)[(Q ± Q̃)² + P²]` and each delta is replaced by its Airy
//! softening. Three routes are provided:
//!
//! * direct quadrature of the Airy product, with exact or frozen widths;
//! * the closed form `Ai²[(ωQ̃² - E - E')/2γ(0)] / (ωħ √(2ωQ̃² γ(0)))`
//!   with `γ(0) = κ γ₀`, where `κ` is calibrated against the quadrature;
//! * the projection of the double-frequency spectral Wigner function,
//!   which reduces to the closed form at `κ = 1` through the identity
//!   `∫ Ai(x + t²) dt = 2^{2/3} π Ai²(x / 2^{2/3})`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{invalid, require_positive, Error, Result};
use crate::quadrature::{brent, gauss_legendre, golden_min, integrate_adaptive, Estimate};
use crate::special::airy_ai;
use crate::symplectic::{HamiltonianModel, PhasePoint};
use crate::transition::{transition_density_1d, TransitionQuery};

/// Airy arguments beyond this are treated as zero.
const Z_WINDOW: f64 = 25.0;

/// Near-caustic parameters of a one-dimensional transition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CausticFrame1D {
    pub omega: f64,
    pub hbar: f64,
    pub q_tilde: f64,
    pub e: f64,
    pub e_prime: f64,
    /// Crossing of the `H_+ = E` circle with the `Q` axis.
    pub q_plus: f64,
    /// Crossing of the `H_- = E'` circle with the `Q` axis.
    pub q_minus: f64,
    /// `(ω/2)(ħQ̃)^{2/3}`.
    pub gamma_0: f64,
}

impl CausticFrame1D {
    pub fn new(omega: f64, hbar: f64, q_tilde: f64, e: f64, e_prime: f64) -> Result<Self> {
        require_positive("omega", omega)?;
        require_positive("hbar", hbar)?;
        require_positive("q_tilde", q_tilde)?;
        require_positive("E", e)?;
        require_positive("E'", e_prime)?;
        Ok(Self {
            omega,
            hbar,
            q_tilde,
            e,
            e_prime,
            q_plus: -q_tilde + (2.0 * e / omega).sqrt(),
            q_minus: q_tilde - (2.0 * e_prime / omega).sqrt(),
            gamma_0: 0.5 * omega * (hbar * q_tilde).powf(2.0 / 3.0),
        })
    }

    /// The same frame at another offset `Q̃`.
    pub fn with_q_tilde(&self, q_tilde: f64) -> Result<Self> {
        Self::new(self.omega, self.hbar, q_tilde, self.e, self.e_prime)
    }

    /// Signed distance `Q̃ - Q_c = (Q_- - Q_+)/2` from the geometric caustic.
    pub fn caustic_distance(&self) -> f64 {
        0.5 * (self.q_minus - self.q_plus)
    }

    /// `Q̃` at which the closed form has zero argument, `ωQ̃² = E + E'`.
    pub fn closed_form_centre(&self) -> f64 {
        ((self.e + self.e_prime) / self.omega).sqrt()
    }

    /// Argument `(ωQ̃² - E - E')/2γ₀` of the closed form at `κ = 1`.
    pub fn closed_argument(&self) -> f64 {
        (self.omega * self.q_tilde * self.q_tilde - self.e - self.e_prime) / (2.0 * self.gamma_0)
    }

    fn width_scale(&self) -> f64 {
        0.5 * self.omega * self.hbar.powf(2.0 / 3.0)
    }

    /// Natural magnitude of the density near the caustic.
    fn peak_scale(&self) -> f64 {
        let q2 = self.q_tilde * self.q_tilde;
        crate::special::AI0.powi(2)
            / (self.omega * self.hbar * (2.0 * self.omega * q2 * self.gamma_0).sqrt())
    }
}

/// `γ_± = (ωħ^{2/3}/2)[(Q ± Q̃)² + P²]^{1/3}` at the chord `X = (P, Q)`.
pub fn airy_widths(frame: &CausticFrame1D, x: &PhasePoint) -> Result<(f64, f64)> {
    if x.dof() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: x.dim(),
        });
    }
    let (p, q) = (x.p()[0], x.q()[0]);
    let c = frame.width_scale();
    let rp = (q + frame.q_tilde).powi(2) + p * p;
    let rm = (q - frame.q_tilde).powi(2) + p * p;
    Ok((c * rp.cbrt(), c * rm.cbrt()))
}

/// Widths in the Airy product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WidthMode {
    /// `γ_±(X)` and the full quadratic arguments.
    Exact,
    /// Both widths frozen at `γ₀` and the `Q²` terms dropped.
    Frozen,
}

/// Integration box `[q_lo, q_hi] × [0, p_max]` outside which both Airy
/// factors cannot be simultaneously above `Ai(Z_WINDOW)`.
#[derive(Clone, Copy, Debug)]
struct Window {
    q_lo: f64,
    q_hi: f64,
    p_max: f64,
}

/// Radius at which `(ωr²/2 - e)/(c r^{2/3})` reaches `z`.
fn enlarged_radius(omega: f64, c: f64, e: f64, z: f64) -> Result<f64> {
    let f = |r: f64| 0.5 * omega * r * r - e - z * c * r.powf(2.0 / 3.0);
    let lo = (2.0 * e / omega).sqrt();
    let mut hi = 2.0 * lo;
    while f(hi) < 0.0 {
        hi *= 2.0;
    }
    brent(f, lo, hi, 1e-14 * hi)
}

fn window(frame: &CausticFrame1D, mode: WidthMode) -> Result<Option<Window>> {
    let (w, qt) = (frame.omega, frame.q_tilde);
    match mode {
        WidthMode::Exact => {
            let c = frame.width_scale();
            let rp = enlarged_radius(w, c, frame.e, Z_WINDOW)?;
            let rm = enlarged_radius(w, c, frame.e_prime, Z_WINDOW)?;
            if 2.0 * qt <= rp.max(rm) {
                return Err(invalid(
                    "q_tilde",
                    "too far inside the caustic: a shell centre lies within the other shell's Airy window",
                ));
            }
            let (q_lo, q_hi) = (qt - rm, -qt + rp);
            if q_hi <= q_lo {
                return Ok(None);
            }
            let cross = (rp * rp - rm * rm) / (4.0 * qt);
            let p_max = if cross >= qt {
                rm
            } else if cross <= -qt {
                rp
            } else {
                (rp * rp - (cross + qt).powi(2)).max(0.0).sqrt()
            };
            Ok(Some(Window { q_lo, q_hi, p_max }))
        }
        WidthMode::Frozen => {
            let s = 2.0 * Z_WINDOW * frame.gamma_0 / w;
            let (qp, qm) = (frame.q_plus, frame.q_minus);
            let q_hi = qp + (s + qp * qp) / (2.0 * qt);
            let q_lo = qm - (s + qm * qm) / (2.0 * qt);
            let p2 = s + qt * (qp - qm) + 0.5 * (qp * qp + qm * qm);
            if q_hi <= q_lo || p2 <= 0.0 {
                return Ok(None);
            }
            Ok(Some(Window {
                q_lo,
                q_hi,
                p_max: p2.sqrt(),
            }))
        }
    }
}

/// Airy arguments and widths at `(P, Q)`; `None` when the product is
/// negligible or a width vanishes.
#[inline]
fn arguments(frame: &CausticFrame1D, mode: WidthMode, p: f64, q: f64) -> Option<(f64, f64, f64, f64)> {
    let (w, qt) = (frame.omega, frame.q_tilde);
    match mode {
        WidthMode::Exact => {
            let c = frame.width_scale();
            let rp2 = (q + qt).powi(2) + p * p;
            let gp = c * rp2.cbrt();
            if gp == 0.0 {
                return None;
            }
            let zp = (0.5 * w * rp2 - frame.e) / gp;
            if zp > Z_WINDOW {
                return None;
            }
            let rm2 = (q - qt).powi(2) + p * p;
            let gm = c * rm2.cbrt();
            if gm == 0.0 {
                return None;
            }
            let zm = (0.5 * w * rm2 - frame.e_prime) / gm;
            (zm <= Z_WINDOW).then_some((zp, zm, gp, gm))
        }
        WidthMode::Frozen => {
            let g = frame.gamma_0;
            let (qp, qm) = (frame.q_plus, frame.q_minus);
            let zp = 0.5 * w * (p * p + 2.0 * qt * (q - qp) - qp * qp) / g;
            let zm = 0.5 * w * (p * p - 2.0 * qt * (q - qm) - qm * qm) / g;
            (zp <= Z_WINDOW && zm <= Z_WINDOW).then_some((zp, zm, g, g))
        }
    }
}

/// Largest local wavenumber of the Airy product inside the window.
fn max_wavenumber(frame: &CausticFrame1D, mode: WidthMode, win: &Window) -> f64 {
    const N: usize = 96;
    let (w, qt) = (frame.omega, frame.q_tilde);
    let mut k_max = 0.0f64;
    for i in 0..=N {
        let q = win.q_lo + (win.q_hi - win.q_lo) * i as f64 / N as f64;
        for j in 0..=N {
            let p = win.p_max * j as f64 / N as f64;
            if let Some((zp, zm, gp, gm)) = arguments(frame, mode, p, q) {
                let (gradp, gradm) = match mode {
                    WidthMode::Exact => (
                        w * ((q + qt).powi(2) + p * p).sqrt(),
                        w * ((q - qt).powi(2) + p * p).sqrt(),
                    ),
                    WidthMode::Frozen => {
                        let g = w * (qt * qt + p * p).sqrt();
                        (g, g)
                    }
                };
                let k = (zp.min(0.0).abs() + 1.0).sqrt() * gradp / gp
                    + (zm.min(0.0).abs() + 1.0).sqrt() * gradm / gm;
                k_max = k_max.max(k);
            }
        }
    }
    k_max
}

/// Direct quadrature of the Airy-product transition density
/// `∫ dP/2πħ ∫ dQ Ai(z_+) Ai(z_-)/(γ_+ γ_-)`.
///
/// Trapezoidal sums over the window (the integrand is smooth and negligible
/// on the boundary, so they converge faster than any power), compared at
/// spacings `h` and `h/2`; `h` starts at a quarter of the shortest local
/// wavelength.
pub fn transition_density_airy_quadrature(frame: &CausticFrame1D, mode: WidthMode) -> Result<Estimate<f64>> {
    let Some(win) = window(frame, mode)? else {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    };
    let k = max_wavenumber(frame, mode, &win);
    if k == 0.0 {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    }
    let abs_tol = 1e-10 * frame.peak_scale() * 2.0 * PI * frame.hbar;
    let mut fine = 2.0 * PI / (8.0 * k);
    for _ in 0..4 {
        let (coarse_sum, fine_sum) = trapezoid_pair(frame, mode, &win, fine);
        let t_fine = fine_sum * fine * fine;
        let t_coarse = coarse_sum * 4.0 * fine * fine;
        let diff = (t_fine - t_coarse).abs();
        if diff <= abs_tol.max(1e-7 * t_fine.abs()) {
            let norm = 2.0 * PI * frame.hbar;
            return Ok(Estimate {
                value: t_fine / norm,
                error: diff / norm,
            });
        }
        fine *= 0.5;
    }
    Err(Error::Quadrature { estimate: f64::NAN })
}

/// Sums over the even sub-grid and the full grid of spacing `h`; the
/// integrand is even in `P`, so only `P ≥ 0` is visited.
fn trapezoid_pair(frame: &CausticFrame1D, mode: WidthMode, win: &Window, h: f64) -> (f64, f64) {
    let nq = ((win.q_hi - win.q_lo) / h).ceil() as usize;
    let np = (win.p_max / h).ceil() as usize;
    let rows: Vec<(f64, f64)> = (0..=nq)
        .into_par_iter()
        .map(|i| {
            let q = win.q_lo + h * i as f64;
            let (mut coarse, mut fine) = (0.0, 0.0);
            for j in 0..=np {
                let p = h * j as f64;
                if let Some((zp, zm, gp, gm)) = arguments(frame, mode, p, q) {
                    let weight = if j == 0 { 1.0 } else { 2.0 };
                    let v = weight * airy_ai(zp) * airy_ai(zm) / (gp * gm);
                    fine += v;
                    if i % 2 == 0 && j % 2 == 0 {
                        coarse += v;
                    }
                }
            }
            (coarse, fine)
        })
        .collect();
    rows.iter().fold((0.0, 0.0), |a, r| (a.0 + r.0, a.1 + r.1))
}

/// The closed Ai² form with `γ(0) = κ γ₀`.
pub fn transition_density_airy_closed(frame: &CausticFrame1D, kappa: f64) -> Result<f64> {
    require_positive("kappa", kappa)?;
    let g = kappa * frame.gamma_0;
    let (w, qt) = (frame.omega, frame.q_tilde);
    let arg = (w * qt * qt - frame.e - frame.e_prime) / (2.0 * g);
    Ok(airy_ai(arg).powi(2) / (w * frame.hbar * (w * qt * qt * 2.0 * g).sqrt()))
}

/// `∫ dq Ai(aq + b) Ai(-aq + c)` by quadrature and the closed value
/// `Ai((b + c)/2^{1/3}) / (2^{1/3} a)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AbramochkinCheck {
    pub quadrature: f64,
    pub closed: f64,
    pub residual: f64,
}

/// Numerical check of the Airy product identity.
///
/// The integrand is the product of an evanescent and an oscillating factor
/// outside `[(c - Z)/a, (Z - b)/a]`, so it is cut there with `Z = 40`, where
/// `Ai(Z) < 1e-72`.
pub fn abramochkin_check(a: f64, b: f64, c: f64) -> Result<AbramochkinCheck> {
    require_positive("a", a)?;
    const Z: f64 = 40.0;
    let (lo, hi) = ((c - Z) / a, (Z - b) / a);
    let closed = airy_ai((b + c) / 2f64.cbrt()) / (2f64.cbrt() * a);
    if hi <= lo {
        return Ok(AbramochkinCheck {
            quadrature: 0.0,
            closed,
            residual: -closed,
        });
    }
    // Local wavenumber at most √(Z + |b| + |c|) per unit argument.
    let k = a * (Z + b.abs() + c.abs()).sqrt();
    let panels = ((hi - lo) * k / PI).ceil().max(8.0) as usize;
    let est = integrate_adaptive(
        |q: f64| airy_ai(a * q + b) * airy_ai(-a * q + c),
        lo,
        hi,
        panels,
        10,
        1e-15,
        1e-12,
        30,
    )?;
    Ok(AbramochkinCheck {
        quadrature: est.value,
        closed,
        residual: est.value - closed,
    })
}

/// Closed form against the projected double-frequency spectral Wigner
/// function `(2πħQ̃ω)^{-1} ∫ dP W_{E+E'}(P)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagonalCheck {
    pub closed: f64,
    pub projected: f64,
    pub ratio: f64,
}

pub fn diagonal_consistency(frame: &CausticFrame1D, kappa: f64) -> Result<DiagonalCheck> {
    if frame.e != frame.e_prime {
        return Err(invalid("E'", "the diagonal check needs E = E'"));
    }
    let closed = transition_density_airy_closed(frame, kappa)?;
    let (w, qt) = (frame.omega, frame.q_tilde);
    let width = 2f64.cbrt() * frame.gamma_0;
    let base = w * qt * qt - frame.e - frame.e_prime;
    // W is negligible once its argument exceeds 40.
    let p_max = ((40.0 * width - base) / w).max(0.0).sqrt();
    let projected = if p_max == 0.0 {
        0.0
    } else {
        let k = ((-base).max(0.0) / width + 1.0).sqrt() * w * p_max / width;
        let panels = (2.0 * p_max * k / PI).ceil().max(8.0) as usize;
        let est = integrate_adaptive(
            |p: f64| airy_ai((base + w * p * p) / width) / width,
            -p_max,
            p_max,
            panels,
            10,
            1e-300,
            1e-12,
            30,
        )?;
        est.value / (2.0 * PI * frame.hbar * qt * w)
    };
    Ok(DiagonalCheck {
        closed,
        projected,
        ratio: if projected != 0.0 { closed / projected } else { f64::NAN },
    })
}

/// Fit of `κ` against the direct quadrature.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaCalibration {
    pub kappa: f64,
    /// RMS of `closed - quadrature` over the window, relative to the
    /// largest quadrature value.
    pub rms_rel_peak: f64,
    /// Largest `|closed - quadrature|` relative to the same peak.
    pub max_rel_peak: f64,
    /// `(s, Q̃, quadrature, closed)` per sample.
    pub samples: Vec<(f64, f64, f64, f64)>,
}

/// `Q̃` at which the closed-form argument at `κ = 1`, measured with `γ₀`
/// taken at the closed-form centre, equals `s`.
pub fn q_tilde_at(frame: &CausticFrame1D, s: f64) -> Result<f64> {
    let centre = frame.with_q_tilde(frame.closed_form_centre())?;
    let e2 = frame.e + frame.e_prime + 2.0 * centre.gamma_0 * s;
    if e2 <= 0.0 {
        return Err(invalid("s", "argument reaches Q̃ = 0"));
    }
    Ok((e2 / frame.omega).sqrt())
}

/// Evenly spaced `(s, Q̃)` over `s ∈ [-half_width, half_width]`.
pub fn caustic_window(frame: &CausticFrame1D, half_width: f64, points: usize) -> Result<Vec<(f64, f64)>> {
    if points < 2 {
        return Err(invalid("points", "need at least two"));
    }
    (0..points)
        .map(|i| {
            let s = -half_width + 2.0 * half_width * i as f64 / (points - 1) as f64;
            Ok((s, q_tilde_at(frame, s)?))
        })
        .collect()
}

/// Chooses `κ` minimizing the RMS deviation of the closed form from the
/// exact-width quadrature over the window `|s| ≤ half_width`.
pub fn calibrate_kappa(frame: &CausticFrame1D, half_width: f64, points: usize) -> Result<KappaCalibration> {
    let grid = caustic_window(frame, half_width, points)?;
    let frames: Vec<CausticFrame1D> = grid
        .iter()
        .map(|&(_, qt)| frame.with_q_tilde(qt))
        .collect::<Result<_>>()?;
    let quad: Vec<f64> = frames
        .par_iter()
        .map(|f| transition_density_airy_quadrature(f, WidthMode::Exact).map(|e| e.value))
        .collect::<Result<_>>()?;
    let peak = quad.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return Err(Error::InsufficientData("quadrature vanishes over the window".into()));
    }
    let deviation = |kappa: f64| -> Vec<f64> {
        frames
            .iter()
            .zip(&quad)
            .map(|(f, q)| transition_density_airy_closed(f, kappa).unwrap_or(f64::NAN) - q)
            .collect()
    };
    let rms = |kappa: f64| {
        let d = deviation(kappa);
        (d.iter().map(|v| v * v).sum::<f64>() / d.len() as f64).sqrt()
    };
    let kappa = golden_min(rms, 0.25, 4.0, 1e-10);
    let dev = deviation(kappa);
    let samples = grid
        .iter()
        .zip(frames.iter().zip(&quad))
        .map(|(&(s, qt), (f, &q))| Ok((s, qt, q, transition_density_airy_closed(f, kappa)?)))
        .collect::<Result<_>>()?;
    Ok(KappaCalibration {
        kappa,
        rms_rel_peak: rms(kappa) / peak,
        max_rel_peak: dev.iter().fold(0.0f64, |m, v| m.max(v.abs())) / peak,
        samples,
    })
}

/// Maximum over `Q̃` of the closed form, located by golden section within a
/// few `γ₀` of the closed-form centre.
pub fn closed_form_peak(frame: &CausticFrame1D, kappa: f64) -> Result<(f64, f64)> {
    let (lo, hi) = (q_tilde_at(frame, -4.0)?, q_tilde_at(frame, 4.0)?);
    let f = |qt: f64| {
        frame
            .with_q_tilde(qt)
            .and_then(|fr| transition_density_airy_closed(&fr, kappa))
            .map(|v| -v)
            .unwrap_or(f64::INFINITY)
    };
    let qt = golden_min(f, lo, hi, 1e-12);
    Ok((qt, -f(qt)))
}

/// Maximum over `Q̃` of the exact-width quadrature near the caustic.
pub fn quadrature_peak(frame: &CausticFrame1D) -> Result<(f64, f64)> {
    let (lo, hi) = (q_tilde_at(frame, -3.0)?, q_tilde_at(frame, 3.0)?);
    let f = |qt: f64| {
        frame
            .with_q_tilde(qt)
            .and_then(|fr| transition_density_airy_quadrature(&fr, WidthMode::Exact))
            .map(|e| -e.value)
            .unwrap_or(f64::INFINITY)
    };
    let qt = golden_min(&f, lo, hi, 1e-6 * hi);
    Ok((qt, -f(qt)))
}

/// Exponent of the quadrature peak height against `ħ`.
pub fn peak_exponent(frame: &CausticFrame1D, hbars: &[f64]) -> Result<(f64, Vec<(f64, f64)>)> {
    let points: Vec<(f64, f64)> = hbars
        .par_iter()
        .map(|&hb| {
            let f = CausticFrame1D::new(frame.omega, hb, frame.q_tilde, frame.e, frame.e_prime)?;
            Ok((hb, quadrature_peak(&f)?.1))
        })
        .collect::<Result<_>>()?;
    Ok((crate::transition::log_log_slope(&points)?, points))
}

/// Fringe-averaged comparison of the Airy quadrature with the classical
/// density inside the caustic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FringeAverage {
    /// `Q̃` interval covering one period of the closed-form fringes.
    pub window: (f64, f64),
    pub quadrature: f64,
    pub classical: f64,
    pub ratio: f64,
}

/// Averages the exact-width quadrature and the classical bracket sum over
/// one fringe around `frame.q_tilde`, with 8-point Gauss–Legendre in `Q̃`.
///
/// The fringe phase is `(4/3) z^{3/2}` with `z = (Ē - ωQ̃²/2)/γ₀(Q̃)`.
pub fn fringe_averaged_bridge(frame: &CausticFrame1D) -> Result<FringeAverage> {
    let mean = 0.5 * (frame.e + frame.e_prime);
    let phase = |qt: f64| {
        let g = 0.5 * frame.omega * (frame.hbar * qt).powf(2.0 / 3.0);
        let z = (mean - 0.5 * frame.omega * qt * qt) / g;
        4.0 / 3.0 * z.max(0.0).powf(1.5)
    };
    let q0 = frame.q_tilde;
    let phi0 = phase(q0);
    if phi0 < 4.0 * PI {
        return Err(invalid("q_tilde", "fewer than two fringes inside the caustic"));
    }
    let qc = (2.0 * mean / frame.omega).sqrt();
    let step = 0.5 * (qc - q0);
    let lo = brent(|q| phase(q) - (phi0 + PI), (q0 - step).max(0.5 * q0), q0, 1e-14)?;
    let hi = brent(|q| phase(q) - (phi0 - PI), q0, q0 + step, 1e-14)?;
    let model = HamiltonianModel::spherical(frame.omega, PhasePoint::zeros(1))?;
    let terms: Vec<(f64, f64)> = gauss_legendre(8)
        .par_iter()
        .map(|&(t, w)| {
            let qt = 0.5 * (lo + hi) + 0.5 * (hi - lo) * t;
            let f = frame.with_q_tilde(qt)?;
            let quad = transition_density_airy_quadrature(&f, WidthMode::Exact)?.value;
            let q = TransitionQuery::new(
                model.clone(),
                PhasePoint::new(vec![0.0, qt])?,
                frame.e,
                frame.e_prime,
                frame.hbar,
            )?;
            Ok((0.5 * w * quad, 0.5 * w * transition_density_1d(&q)?))
        })
        .collect::<Result<_>>()?;
    let quad: f64 = terms.iter().map(|t| t.0).sum();
    let classical: f64 = terms.iter().map(|t| t.1).sum();
    Ok(FringeAverage {
        window: (lo, hi),
        quadrature: quad,
        classical,
        ratio: quad / classical,
    })
}
