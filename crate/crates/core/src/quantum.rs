//! Exact quantum reference for the one-dimensional oscillator
//! `H = ω (p² + q²) / 2`.
//!
//! Wigner functions carry the standard normalisation `∫ W dx = 1`, so the
//! reflection amplitude is `⟨k|R̂_x|l⟩ = πħ W_kl(x)` and the transition
//! probability is `P_kl(x) = (πħ)² |W_kl(x)|²`. The parity anchor reads
//! `πħ W_kk(0) = (-1)^k`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::config::Numerics;
use crate::error::{require_positive, Error, Result};
use crate::quadrature::integrate_adaptive;
use crate::symplectic::PhasePoint;

/// Eigenstates `|0⟩ .. |K_max⟩` of the oscillator.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenBasis1D {
    omega: f64,
    hbar: f64,
    max_index: usize,
}

/// One element of the Moyal matrix at a fixed reflection centre.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoyalEntry {
    pub k: usize,
    pub l: usize,
    /// `W_kl(x)`.
    pub value: Complex64,
    /// `P_kl(x) = (πħ)² |W_kl(x)|²`.
    pub probability: f64,
}

/// Both sides of the convolution identity for `P_kl`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvolutionCheck {
    /// Probability from the reflection matrix element.
    pub direct: f64,
    /// `2πħ ∫ W_k(x+X) W_l(x-X) dX`.
    pub convolution: f64,
    pub residual: f64,
}

/// Both sides of the self-duality of the Wigner correlation `C(ξ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationCheck {
    pub direct: f64,
    pub fourier: f64,
    pub residual: f64,
}

/// Gaussian widths beyond the turning point kept in every window.
const TAIL_WIDTHS: f64 = 10.0;

impl EigenBasis1D {
    pub fn new(omega: f64, hbar: f64, max_index: usize) -> Result<Self> {
        require_positive("omega", omega)?;
        require_positive("hbar", hbar)?;
        Ok(Self {
            omega,
            hbar,
            max_index,
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn eigenenergy(&self, k: usize) -> f64 {
        self.hbar * self.omega * (k as f64 + 0.5)
    }

    /// Classical turning point `q_k = sqrt(ħ (2k+1))`.
    pub fn turning_point(&self, k: usize) -> f64 {
        (self.hbar * (2 * k + 1) as f64).sqrt()
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k <= self.max_index {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: k,
                max: self.max_index,
            })
        }
    }

    /// `ψ_k(q)`.
    pub fn eigenfunction(&self, k: usize, q: f64) -> Result<f64> {
        self.check_index(k)?;
        Ok(hermite_functions(q / self.hbar.sqrt(), k)[k] * self.hbar.powf(-0.25))
    }

    /// `ψ_0(q) .. ψ_{K_max}(q)`.
    pub fn eigenfunctions(&self, q: f64) -> Vec<f64> {
        let scale = self.hbar.powf(-0.25);
        hermite_functions(q / self.hbar.sqrt(), self.max_index)
            .into_iter()
            .map(|h| h * scale)
            .collect()
    }

    /// Half-width of the window that holds `ψ_k` to double precision.
    fn support(&self, k: usize) -> f64 {
        self.turning_point(k) + TAIL_WIDTHS * self.hbar.sqrt()
    }

    /// `W_kl(x) = (1/πħ) ∫ dξ ψ_k(q+ξ) ψ_l(q-ξ) exp(-2ipξ/ħ)`.
    pub fn cross_wigner(&self, k: usize, l: usize, x: &PhasePoint) -> Result<Complex64> {
        self.check_index(k)?;
        self.check_index(l)?;
        let (p, q) = one_dof(x)?;
        let (lk, ll) = (self.support(k), self.support(l));
        let lo = (-lk - q).max(q - ll);
        let hi = (lk - q).min(q + ll);
        if lo >= hi {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let sh = self.hbar.sqrt();
        let scale = 1.0 / sh;
        let integrand = |xi: f64| {
            let a = hermite_functions((q + xi) / sh, k)[k];
            let b = hermite_functions((q - xi) / sh, l)[l];
            Complex64::from_polar(a * b * scale, -2.0 * p * xi / self.hbar)
        };
        let wavenumber = 2.0 * p.abs() / self.hbar
            + ((2 * k + 1) as f64 / self.hbar).sqrt()
            + ((2 * l + 1) as f64 / self.hbar).sqrt();
        let panels = ((hi - lo) * wavenumber / PI).ceil().max(4.0) as usize;
        let num = Numerics::default();
        let est = integrate_adaptive(
            integrand,
            lo,
            hi,
            panels,
            num.panel_order,
            num.quad_abs_tol,
            num.quad_rel_tol,
            num.quad_max_depth,
        )?;
        Ok(est.value / (PI * self.hbar))
    }

    /// `⟨k|R̂_x|l⟩ = πħ W_kl(x)`.
    pub fn reflection_amplitude(&self, k: usize, l: usize, x: &PhasePoint) -> Result<Complex64> {
        Ok(self.cross_wigner(k, l, x)? * (PI * self.hbar))
    }

    pub fn moyal_entry(&self, k: usize, l: usize, x: &PhasePoint) -> Result<MoyalEntry> {
        let value = self.cross_wigner(k, l, x)?;
        Ok(MoyalEntry {
            k,
            l,
            value,
            probability: (PI * self.hbar * value.norm()).powi(2),
        })
    }

    /// Diagonal Wigner function from its Laguerre closed form.
    pub fn wigner(&self, k: usize, x: &PhasePoint) -> Result<f64> {
        self.check_index(k)?;
        let (p, q) = one_dof(x)?;
        Ok(wigner_closed(k, p, q, self.hbar))
    }
}

fn one_dof(x: &PhasePoint) -> Result<(f64, f64)> {
    if x.dof() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: x.dim(),
        });
    }
    Ok((x.p()[0], x.q()[0]))
}

/// Normalised Hermite functions `h_k(s) e^{-s²/2}` for `k = 0..=kmax`,
/// orthonormal in `s`.
pub fn hermite_functions(s: f64, kmax: usize) -> Vec<f64> {
    // Run the recurrence without the Gaussian factor, rescaling as it grows,
    // and apply exp(log_scale - s²/2) at the end of each step.
    let mut out = Vec::with_capacity(kmax + 1);
    let mut log_scale = 0.0f64;
    let mut h_prev = 0.0f64;
    let mut h = PI.powf(-0.25);
    let finish = |h: f64, log_scale: f64| {
        let e = log_scale - 0.5 * s * s;
        if e < -745.0 {
            0.0
        } else {
            h * e.exp()
        }
    };
    out.push(finish(h, log_scale));
    for k in 0..kmax {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * s * h - (kf / (kf + 1.0)).sqrt() * h_prev;
        h_prev = h;
        h = next;
        if h.abs() > 1e200 {
            h *= 1e-200;
            h_prev *= 1e-200;
            log_scale += 200.0 * std::f64::consts::LN_10;
        }
        out.push(finish(h, log_scale));
    }
    out
}

/// `e^{-y/2} L_k(y)` for `k = 0..=kmax`, stable for large `y`.
pub fn laguerre_weighted(y: f64, kmax: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(kmax + 1);
    let mut log_scale = 0.0f64;
    let finish = |l: f64, log_scale: f64| {
        let e = log_scale - 0.5 * y;
        if e < -745.0 {
            0.0
        } else {
            l * e.exp()
        }
    };
    let mut l_prev = 1.0f64;
    out.push(finish(l_prev, 0.0));
    if kmax == 0 {
        return out;
    }
    let mut l = 1.0 - y;
    out.push(finish(l, 0.0));
    for k in 1..kmax {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - y) * l - kf * l_prev) / (kf + 1.0);
        l_prev = l;
        l = next;
        if l.abs() > 1e200 {
            l *= 1e-200;
            l_prev *= 1e-200;
            log_scale += 200.0 * std::f64::consts::LN_10;
        }
        out.push(finish(l, log_scale));
    }
    out
}

/// `W_k(p, q) = ((-1)^k / πħ) e^{-y/2} L_k(y)`, `y = 2(p²+q²)/ħ`.
pub fn wigner_closed(k: usize, p: f64, q: f64, hbar: f64) -> f64 {
    let y = 2.0 * (p * p + q * q) / hbar;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    sign * laguerre_weighted(y, k)[k] / (PI * hbar)
}

/// `P_kl(x)` from the reflection matrix element.
pub fn transition_probability_exact(
    basis: &EigenBasis1D,
    k: usize,
    l: usize,
    x: &PhasePoint,
) -> Result<f64> {
    Ok(basis.moyal_entry(k, l, x)?.probability)
}

/// Compares `P_kl(x)` with `2πħ ∫ W_k(x+X) W_l(x-X) dX` on a uniform grid of
/// spacing `ħ / (4 D)`, `D` the larger state diameter.
pub fn convolution_identity_check(
    basis: &EigenBasis1D,
    k: usize,
    l: usize,
    x: &PhasePoint,
) -> Result<ConvolutionCheck> {
    let direct = transition_probability_exact(basis, k, l, x)?;
    let (p, q) = one_dof(x)?;
    let hbar = basis.hbar;
    let radius = |n: usize| hbar.sqrt() * (((2 * n + 1) as f64).sqrt() + 6.0);
    let (rk, rl) = (radius(k), radius(l));
    // X ranges over the overlap of the disc of radius r_k about -x and the
    // disc of radius r_l about x.
    let lo_p = (-p - rk).max(p - rl);
    let hi_p = (-p + rk).min(p + rl);
    let lo_q = (-q - rk).max(q - rl);
    let hi_q = (-q + rk).min(q + rl);
    if lo_p >= hi_p || lo_q >= hi_q {
        return Ok(ConvolutionCheck {
            direct,
            convolution: 0.0,
            residual: direct,
        });
    }
    let diameter = 2.0 * rk.max(rl);
    let h = hbar / (4.0 * diameter);
    let np = ((hi_p - lo_p) / h).ceil() as usize + 1;
    let nq = ((hi_q - lo_q) / h).ceil() as usize + 1;
    let sign = if (k + l) % 2 == 0 { 1.0 } else { -1.0 };
    let norm = sign / (PI * hbar).powi(2);
    let value = |xp: f64, xq: f64| {
        let ya = 2.0 * ((p + xp).powi(2) + (q + xq).powi(2)) / hbar;
        let yb = 2.0 * ((p - xp).powi(2) + (q - xq).powi(2)) / hbar;
        norm * laguerre_weighted(ya, k)[k] * laguerre_weighted(yb, l)[l]
    };
    let rows: Vec<(f64, f64)> = (0..np)
        .into_par_iter()
        .map(|i| {
            let xp = lo_p + h * i as f64;
            let mut sum = 0.0;
            let mut edge = 0.0f64;
            for j in 0..nq {
                let v = value(xp, lo_q + h * j as f64);
                sum += v;
                if i == 0 || i + 1 == np || j == 0 || j + 1 == nq {
                    edge = edge.max(v.abs());
                }
            }
            (sum, edge)
        })
        .collect();
    let sum: f64 = rows.iter().map(|r| r.0).sum();
    let edge = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let area = (hi_p - lo_p) * (hi_q - lo_q);
    let boundary = 2.0 * PI * hbar * edge * area;
    let threshold = 1e-10;
    if boundary > threshold {
        return Err(Error::GridTooSmall {
            boundary,
            threshold,
        });
    }
    let convolution = 2.0 * PI * hbar * sum * h * h;
    Ok(ConvolutionCheck {
        direct,
        convolution,
        residual: (direct - convolution).abs(),
    })
}

/// [`convolution_identity_check`] for every pair `k, l ≤ kmax` at once, on
/// the grid of the largest state. Entries are ordered `k * (kmax + 1) + l`.
pub fn convolution_identity_suite(basis: &EigenBasis1D, kmax: usize, x: &PhasePoint) -> Result<Vec<ConvolutionCheck>> {
    basis.check_index(kmax)?;
    let (p, q) = one_dof(x)?;
    let hbar = basis.hbar;
    let m = kmax + 1;
    let r = hbar.sqrt() * (((2 * kmax + 1) as f64).sqrt() + 6.0);
    let (lo_p, hi_p) = (p.abs() - r, r - p.abs());
    let (lo_q, hi_q) = (q.abs() - r, r - q.abs());
    let direct = |k: usize, l: usize| transition_probability_exact(basis, k, l, x);
    if lo_p >= hi_p || lo_q >= hi_q {
        let mut out = Vec::with_capacity(m * m);
        for k in 0..m {
            for l in 0..m {
                let d = direct(k, l)?;
                out.push(ConvolutionCheck {
                    direct: d,
                    convolution: 0.0,
                    residual: d,
                });
            }
        }
        return Ok(out);
    }
    let h = hbar / (8.0 * r);
    let np = ((hi_p - lo_p) / h).ceil() as usize + 1;
    let nq = ((hi_q - lo_q) / h).ceil() as usize + 1;
    let rows: Vec<(Vec<f64>, Vec<f64>)> = (0..np)
        .into_par_iter()
        .map(|i| {
            let xp = lo_p + h * i as f64;
            let mut sum = vec![0.0; m * m];
            let mut edge = vec![0.0f64; m * m];
            for j in 0..nq {
                let xq = lo_q + h * j as f64;
                let ya = 2.0 * ((p + xp).powi(2) + (q + xq).powi(2)) / hbar;
                let yb = 2.0 * ((p - xp).powi(2) + (q - xq).powi(2)) / hbar;
                let (la, lb) = (laguerre_weighted(ya, kmax), laguerre_weighted(yb, kmax));
                let on_edge = i == 0 || i + 1 == np || j == 0 || j + 1 == nq;
                for k in 0..m {
                    for l in 0..m {
                        let v = la[k] * lb[l];
                        sum[k * m + l] += v;
                        if on_edge {
                            edge[k * m + l] = edge[k * m + l].max(v.abs());
                        }
                    }
                }
            }
            (sum, edge)
        })
        .collect();
    let area = (hi_p - lo_p) * (hi_q - lo_q);
    let norm = 1.0 / (PI * hbar).powi(2);
    let mut out = Vec::with_capacity(m * m);
    for k in 0..m {
        for l in 0..m {
            let idx = k * m + l;
            let sign = if (k + l) % 2 == 0 { 1.0 } else { -1.0 };
            let sum: f64 = rows.iter().map(|r| r.0[idx]).sum();
            let edge = rows.iter().map(|r| r.1[idx]).fold(0.0, f64::max);
            let boundary = 2.0 * PI * hbar * norm * edge * area;
            let threshold = 1e-10;
            if boundary > threshold {
                return Err(Error::GridTooSmall {
                    boundary,
                    threshold,
                });
            }
            let convolution = 2.0 * PI * hbar * sign * norm * sum * h * h;
            let d = direct(k, l)?;
            out.push(ConvolutionCheck {
                direct: d,
                convolution,
                residual: (d - convolution).abs(),
            });
        }
    }
    Ok(out)
}

/// Evaluates `C(ξ) = 2πħ ∫ W_k(x) W_k(x+ξ) dx` directly and through
/// `C(ξ) = (2πħ)^{-1} ∫ dη exp(i ξ∧η/ħ) C(η)`, the latter with `C(η)` on a
/// lattice of lags obtained by FFT autocorrelation.
pub fn correlation_identity_check(
    basis: &EigenBasis1D,
    k: usize,
    xi: &PhasePoint,
) -> Result<CorrelationCheck> {
    basis.check_index(k)?;
    let (xp, xq) = one_dof(xi)?;
    let hbar = basis.hbar;
    let r = hbar.sqrt() * (((2 * k + 1) as f64).sqrt() + 6.0);
    let h = hbar.sqrt() / (4.0 * ((2 * k + 1) as f64).sqrt());
    let n = (2.0 * r / h).ceil() as usize + 1;
    let coord = |i: usize| -r + h * i as f64;
    let grid: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|idx| wigner_closed(k, coord(idx / n), coord(idx % n), hbar))
        .collect();
    let edge = (0..n)
        .flat_map(|i| [grid[i], grid[(n - 1) * n + i], grid[i * n], grid[i * n + n - 1]])
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let boundary = edge * (2.0 * PI * hbar);
    let threshold = 1e-12;
    if boundary > threshold {
        return Err(Error::GridTooSmall {
            boundary,
            threshold,
        });
    }

    // Direct side: the shifted factor is evaluated exactly, not interpolated.
    let direct: f64 = (0..n)
        .into_par_iter()
        .map(|i| {
            let p = coord(i);
            (0..n)
                .map(|j| {
                    let q = coord(j);
                    grid[i * n + j] * wigner_closed(k, p + xp, q + xq, hbar)
                })
                .sum::<f64>()
        })
        .collect::<Vec<_>>()
        .iter()
        .sum::<f64>()
        * 2.0
        * PI
        * hbar
        * h
        * h;

    // Fourier side.
    let m = (2 * n).next_power_of_two();
    let mut data = vec![Complex64::new(0.0, 0.0); m * m];
    for i in 0..n {
        for j in 0..n {
            data[i * m + j] = Complex64::new(grid[i * n + j], 0.0);
        }
    }
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(m);
    let inv = planner.plan_fft_inverse(m);
    fft2(&mut data, m, &*fwd);
    for v in data.iter_mut() {
        *v = Complex64::new(v.norm_sqr(), 0.0);
    }
    fft2(&mut data, m, &*inv);
    let mm = (m * m) as f64;
    let mut fourier = 0.0;
    for a in 0..m {
        let lp = if a < m / 2 { a as f64 } else { a as f64 - m as f64 } * h;
        for b in 0..m {
            let lq = if b < m / 2 { b as f64 } else { b as f64 - m as f64 } * h;
            let c = 2.0 * PI * hbar * h * h * data[a * m + b].re / mm;
            let phase = (xp * lq - xq * lp) / hbar;
            fourier += phase.cos() * c;
        }
    }
    fourier *= h * h / (2.0 * PI * hbar);
    Ok(CorrelationCheck {
        direct,
        fourier,
        residual: (direct - fourier).abs(),
    })
}

fn fft2(data: &mut [Complex64], m: usize, fft: &dyn rustfft::Fft<f64>) {
    for row in data.chunks_mut(m) {
        fft.process(row);
    }
    let mut col = vec![Complex64::new(0.0, 0.0); m];
    for j in 0..m {
        for i in 0..m {
            col[i] = data[i * m + j];
        }
        fft.process(&mut col);
        for i in 0..m {
            data[i * m + j] = col[i];
        }
    }
}

/// Lorentzian nascent delta `δ_ε(e) = (ε/π) / (ε² + e²)`.
pub fn lorentzian(eps: f64, e: f64) -> f64 {
    eps / PI / (eps * eps + e * e)
}

/// Number of terms kept in the exact spectral sum.
fn spectral_terms(basis: &EigenBasis1D, e: f64) -> usize {
    let n = e / (basis.hbar * basis.omega);
    (2.2 * n.max(0.0)).ceil() as usize + 2000
}

/// `W_E(x, ε) = 2πħ Σ_k δ_ε(E - E_k) W_k(x)`.
///
/// The alternating tail is accelerated by repeated averaging of the last
/// partial sums; the difference of the final two averages is the reported
/// tail estimate.
pub fn spectral_wigner_exact(basis: &EigenBasis1D, e: f64, eps: f64, x: &PhasePoint) -> Result<f64> {
    let (value, tail) = spectral_wigner_with_tail(basis, e, eps, x)?;
    let tol = Numerics::default().spectral_tail_tol;
    if tail > tol * value.abs().max(1.0) {
        return Err(Error::Truncation { tail });
    }
    Ok(value)
}

/// As [`spectral_wigner_exact`], also returning the tail estimate.
pub fn spectral_wigner_with_tail(
    basis: &EigenBasis1D,
    e: f64,
    eps: f64,
    x: &PhasePoint,
) -> Result<(f64, f64)> {
    require_positive("eps", eps)?;
    let (p, q) = one_dof(x)?;
    let hbar = basis.hbar;
    let kmax = spectral_terms(basis, e);
    let y = 2.0 * (p * p + q * q) / hbar;
    let ell = laguerre_weighted(y, kmax);
    const LEVELS: usize = 4;
    let mut acc = 0.0;
    let mut last = Vec::with_capacity(LEVELS + 2);
    for (k, l) in ell.iter().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        // 2πħ · W_k = 2 (-1)^k e^{-y/2} L_k(y)
        acc += lorentzian(eps, e - basis.eigenenergy(k)) * 2.0 * sign * l;
        if k + LEVELS + 2 > kmax {
            last.push(acc);
        }
    }
    for _ in 0..LEVELS {
        last = last.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    let n = last.len();
    Ok((last[n - 1], (last[n - 1] - last[n - 2]).abs()))
}

/// Smoothed density of states `Σ_k δ_ε(E - E_k)`, with the tail beyond the
/// truncation integrated in closed form.
pub fn smoothed_dos(basis: &EigenBasis1D, e: f64, eps: f64) -> Result<f64> {
    require_positive("eps", eps)?;
    let kmax = spectral_terms(basis, e);
    let sum: f64 = (0..=kmax)
        .map(|k| lorentzian(eps, e - basis.eigenenergy(k)))
        .sum();
    let spacing = basis.hbar * basis.omega;
    let edge = basis.eigenenergy(kmax) + 0.5 * spacing;
    let tail = (0.5 * PI - ((edge - e) / eps).atan()) / (PI * spacing);
    Ok(sum + tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(p: f64, q: f64) -> PhasePoint {
        PhasePoint::new(vec![p, q]).unwrap()
    }

    #[test]
    fn ground_state_at_origin() {
        let b = EigenBasis1D::new(1.0, 1.0, 5).unwrap();
        assert!((b.eigenfunction(0, 0.0).unwrap() - PI.powf(-0.25)).abs() < 1e-15);
        assert_eq!(b.eigenfunction(1, 0.0).unwrap(), 0.0);
        assert!(b.eigenfunction(6, 0.0).is_err());
    }

    #[test]
    fn eigenfunctions_orthonormal() {
        let b = EigenBasis1D::new(1.0, 0.7, 12).unwrap();
        let l = b.support(12);
        let rule = crate::quadrature::gauss_legendre(12);
        let panels = 200;
        let h = 2.0 * l / panels as f64;
        let mut gram = vec![vec![0.0; 13]; 13];
        for i in 0..panels {
            let mid = -l + h * (i as f64 + 0.5);
            for &(u, w) in rule.iter() {
                let psi = b.eigenfunctions(mid + 0.5 * h * u);
                for a in 0..13 {
                    for c in 0..13 {
                        gram[a][c] += 0.5 * h * w * psi[a] * psi[c];
                    }
                }
            }
        }
        for a in 0..13 {
            for c in 0..13 {
                let target = if a == c { 1.0 } else { 0.0 };
                assert!((gram[a][c] - target).abs() < 1e-12, "({a},{c})");
            }
        }
    }

    #[test]
    fn high_index_recurrence_stays_finite() {
        let h = hermite_functions(25.0, 600);
        assert!(h.iter().all(|v| v.is_finite()));
        // ψ_600 near its turning point sqrt(1201) ≈ 34.7 is O(1/sqrt(width)).
        let near = hermite_functions(34.0, 600)[600];
        assert!(near.abs() > 1e-3 && near.abs() < 1.0);
    }

    #[test]
    fn ground_state_wigner_is_gaussian() {
        let b = EigenBasis1D::new(1.0, 1.0, 3).unwrap();
        for &(p, q) in &[(0.0, 0.0), (0.3, -0.8), (1.1, 0.4)] {
            let w = b.cross_wigner(0, 0, &pt(p, q)).unwrap();
            let exact = (-(p * p + q * q)).exp() / PI;
            assert!((w.re - exact).abs() < 1e-13 && w.im.abs() < 1e-13);
        }
    }

    #[test]
    fn parity_anchor() {
        let b = EigenBasis1D::new(1.0, 0.5, 6).unwrap();
        for k in 0..=6 {
            let w = b.cross_wigner(k, k, &pt(0.0, 0.0)).unwrap();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((PI * 0.5 * w.re - sign).abs() < 1e-10, "k = {k}");
        }
        assert!(b.cross_wigner(0, 1, &pt(0.0, 0.0)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn ground_state_reflection_is_unitary_at_origin() {
        let b = EigenBasis1D::new(1.0, 1.0, 2).unwrap();
        let p = transition_probability_exact(&b, 0, 0, &pt(0.0, 0.0)).unwrap();
        assert!((p - 1.0).abs() < 1e-13);
    }

    #[test]
    fn quadrature_route_matches_laguerre_route() {
        let b = EigenBasis1D::new(1.0, 0.3, 8).unwrap();
        for k in 0..=8 {
            for &(p, q) in &[(0.2, 0.1), (-0.5, 0.9), (1.3, -0.2)] {
                let a = b.cross_wigner(k, k, &pt(p, q)).unwrap();
                let c = b.wigner(k, &pt(p, q)).unwrap();
                assert!((a.re - c).abs() < 1e-10 && a.im.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn hermiticity() {
        let b = EigenBasis1D::new(1.0, 1.0, 5).unwrap();
        let x = pt(0.37, -0.81);
        for k in 0..=5 {
            for l in 0..=5 {
                let a = b.cross_wigner(k, l, &x).unwrap();
                let c = b.cross_wigner(l, k, &x).unwrap();
                assert!((a - c.conj()).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn frozen_off_diagonal_values() {
        // W_01(p, q) = (1/πħ) sqrt(2/ħ) (q + i p) exp(-(p²+q²)/ħ) under this
        // kernel orientation.
        let b = EigenBasis1D::new(1.0, 1.0, 1).unwrap();
        let (p, q) = (0.4, -0.3);
        let w = b.cross_wigner(0, 1, &pt(p, q)).unwrap();
        let g = (-(p * p + q * q)).exp() / PI * 2f64.sqrt();
        assert!((w.re - g * q).abs() < 1e-13, "{w}");
        assert!((w.im - g * p).abs() < 1e-13, "{w}");
    }

    #[test]
    fn sum_rule_bounded_and_monotone() {
        let b = EigenBasis1D::new(1.0, 1.0, 30).unwrap();
        let x = pt(0.5, 0.8);
        let mut total = 0.0;
        for l in 0..=30 {
            let p = transition_probability_exact(&b, 0, l, &x).unwrap();
            assert!(p >= 0.0);
            total += p;
            assert!(total <= 1.0 + 1e-8);
        }
        assert!(total > 0.999);
    }

    #[test]
    fn convolution_examples() {
        let b = EigenBasis1D::new(1.0, 1.0, 3).unwrap();
        let c = convolution_identity_check(&b, 0, 0, &pt(0.0, 0.0)).unwrap();
        assert!(c.residual < 1e-6, "{c:?}");
        let c = convolution_identity_check(&b, 0, 3, &pt(0.0, 1.2)).unwrap();
        assert!(c.residual < 1e-5, "{c:?}");
        let c = convolution_identity_check(&b, 0, 0, &pt(30.0, 0.0)).unwrap();
        assert!(c.direct < 1e-10 && c.convolution < 1e-10);
    }

    #[test]
    fn purity_and_correlation_duality() {
        let b = EigenBasis1D::new(1.0, 1.0, 3).unwrap();
        let c = correlation_identity_check(&b, 0, &pt(0.0, 0.0)).unwrap();
        assert!((c.direct - 1.0).abs() < 1e-10, "{c:?}");
        assert!(c.residual < 1e-8, "{c:?}");
        let c = correlation_identity_check(&b, 0, &pt(0.3, -0.2)).unwrap();
        assert!((c.direct - (-(0.13f64) / 2.0).exp()).abs() < 1e-10);
        assert!(c.residual < 1e-5);
        let c = correlation_identity_check(&b, 2, &pt(0.4, 0.25)).unwrap();
        assert!(c.residual < 1e-5, "{c:?}");
        let far = correlation_identity_check(&b, 0, &pt(0.0, 15.0)).unwrap();
        assert!(far.direct.abs() < 1e-20);
    }

    #[test]
    fn lorentzian_integrates_to_one() {
        let est = integrate_adaptive(
            |t: f64| {
                // e = tan(t) maps the real line onto (-π/2, π/2).
                let e = t.tan();
                lorentzian(0.3, e) / t.cos().powi(2)
            },
            -0.5 * PI + 1e-12,
            0.5 * PI - 1e-12,
            8,
            10,
            1e-14,
            1e-12,
            40,
        )
        .unwrap();
        assert!((est.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn spectral_sum_resonant_limit() {
        let b = EigenBasis1D::new(1.0, 1.0, 10).unwrap();
        let eps = 1e-4;
        let x = pt(0.3, 0.9);
        let w = spectral_wigner_exact(&b, b.eigenenergy(3), eps, &x).unwrap();
        let resonant = 2.0 * PI / (PI * eps) * b.wigner(3, &x).unwrap();
        assert!((w / resonant - 1.0).abs() < 1e-3);
    }

    #[test]
    fn spectral_sum_integrates_to_density_of_states() {
        let hbar = 0.5;
        let b = EigenBasis1D::new(1.0, hbar, 1).unwrap();
        let (e, eps) = (2.0, 0.4);
        let rmax = 6.0;
        let kmax = spectral_terms(&b, e);
        let rule = crate::quadrature::gauss_legendre(10);
        let panels = 120;
        let h = rmax / panels as f64;
        // W depends on r only: ∫ dx = 2π ∫ r dr.
        let mut from_w = 0.0;
        let mut captured = vec![0.0; kmax + 1];
        for i in 0..panels {
            let mid = h * (i as f64 + 0.5);
            for &(u, w) in rule.iter() {
                let r = mid + 0.5 * h * u;
                let weight = 0.5 * h * w * 2.0 * PI * r;
                from_w += weight * spectral_wigner_exact(&b, e, eps, &pt(0.0, r)).unwrap();
                let ell = laguerre_weighted(2.0 * r * r / hbar, kmax);
                for (k, l) in ell.iter().enumerate() {
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    captured[k] += weight * sign * l / (PI * hbar);
                }
            }
        }
        let nu_from_w = from_w / (2.0 * PI * hbar);
        // Each state integrates to one over the plane; inside rmax it carries
        // the fraction `captured[k]`.
        let nu_inside: f64 = (0..=kmax)
            .map(|k| lorentzian(eps, e - b.eigenenergy(k)) * captured[k])
            .sum();
        assert!((nu_from_w - nu_inside).abs() < 1e-6, "{nu_from_w} vs {nu_inside}");
        assert!((captured[0] - 1.0).abs() < 1e-12);
        let nu = smoothed_dos(&b, e, eps).unwrap();
        assert!(nu_inside < nu && nu_inside > 0.98 * nu);
    }
}
