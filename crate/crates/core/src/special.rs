//! Airy function and related constants.
//!
//! `Ai` and `Ai'` are evaluated with absolute error below `1e-12` on the real
//! line, and relative error near `1e-14` on the evanescent side. Values at the
//! integers of `[-8, 10]` come once from the Maclaurin series, a
//! steepest-descent integral or the asymptotic expansion; between them a short
//! Taylor series driven by `y'' = z y` is summed. Beyond that range the
//! asymptotic expansions are used directly.

use std::f64::consts::PI;
use std::sync::OnceLock;

/// `Ai(0)`.
pub const AI0: f64 = 0.355_028_053_887_817_24;
/// `-Ai'(0)`.
pub const MINUS_AIP0: f64 = 0.258_819_403_792_806_8;

const SERIES_LO: f64 = -5.0;
const SERIES_HI: f64 = 1.5;
const ANCHOR_LO: f64 = -8.0;
const ANCHOR_HI: f64 = 10.0;

/// `Ai(z)`.
pub fn airy_ai(z: f64) -> f64 {
    airy_pair(z).0
}

/// `Ai'(z)`.
pub fn airy_ai_prime(z: f64) -> f64 {
    airy_pair(z).1
}

/// `(Ai(z), Ai'(z))`.
pub fn airy_pair(z: f64) -> (f64, f64) {
    if z.is_nan() {
        (f64::NAN, f64::NAN)
    } else if z < ANCHOR_LO {
        asymptotic_negative(-z)
    } else if z > ANCHOR_HI {
        asymptotic_positive(z)
    } else {
        let k = (z.round() - ANCHOR_LO) as usize;
        let z0 = ANCHOR_LO + k as f64;
        taylor(z0, anchors()[k], z - z0)
    }
}

/// `(Ai, Ai')` at the integers of `[ANCHOR_LO, ANCHOR_HI]`, each from the
/// most accurate direct method available there.
fn anchors() -> &'static [(f64, f64)] {
    static ANCHORS: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    ANCHORS.get_or_init(|| {
        let n = (ANCHOR_HI - ANCHOR_LO) as usize;
        let start = asymptotic_negative(-ANCHOR_LO);
        (0..=n)
            .map(|k| {
                let z = ANCHOR_LO + k as f64;
                if z < SERIES_LO {
                    taylor(ANCHOR_LO, start, z - ANCHOR_LO)
                } else if z <= SERIES_HI {
                    maclaurin(z)
                } else {
                    laplace_positive(z)
                }
            })
            .collect()
    })
}

/// Taylor expansion of the Airy solution with value and slope `y0` at `z0`,
/// evaluated at `z0 + h`. Scaled terms `e_n = y^(n)(z0) hⁿ/n!` obey
/// `e_{n+2} = (z0 h² e_n + h³ e_{n-1}) / ((n+1)(n+2))`, from `y'' = z y`.
fn taylor(z0: f64, y0: (f64, f64), h: f64) -> (f64, f64) {
    if h == 0.0 {
        return y0;
    }
    let (h2, h3) = (h * h, h * h * h);
    let (mut em1, mut e0, mut e1) = (0.0, y0.0, y0.1 * h);
    let mut y = e0 + e1;
    let mut yp = e1;
    for n in 0..200usize {
        let e2 = (z0 * h2 * e0 + h3 * em1) / ((n + 1) * (n + 2)) as f64;
        y += e2;
        yp += (n + 2) as f64 * e2;
        if n > 4 && e2.abs() + e1.abs() < 1e-18 * (y.abs() + (yp * h).abs()) {
            break;
        }
        em1 = e0;
        e0 = e1;
        e1 = e2;
    }
    (y, yp / h)
}

fn maclaurin(z: f64) -> (f64, f64) {
    let z3 = z * z * z;
    let (mut f, mut g) = (1.0, z);
    let (mut tf, mut tg) = (1.0, z);
    let (mut fp, mut gp) = (0.0, 1.0);
    let (mut tfp, mut tgp) = (0.5 * z * z, 1.0);
    fp += tfp;
    for k in 1..200 {
        let kf = k as f64;
        tf *= z3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        tg *= z3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        tgp *= z3 / ((3.0 * kf) * (3.0 * kf - 2.0));
        f += tf;
        g += tg;
        gp += tgp;
        if k >= 2 {
            tfp *= z3 / ((3.0 * kf - 1.0) * (3.0 * kf - 3.0));
            fp += tfp;
        }
        let scale = f.abs() + g.abs() + fp.abs() + gp.abs();
        if tf.abs() + tg.abs() + tfp.abs() + tgp.abs() < 1e-18 * scale {
            break;
        }
    }
    (AI0 * f - MINUS_AIP0 * g, AI0 * fp - MINUS_AIP0 * gp)
}

const UV_TERMS: usize = 60;

/// Coefficients `u_k`, `v_k` of the large-argument expansions.
fn uv() -> &'static ([f64; UV_TERMS + 1], [f64; UV_TERMS + 1]) {
    static UV: OnceLock<([f64; UV_TERMS + 1], [f64; UV_TERMS + 1])> = OnceLock::new();
    UV.get_or_init(|| {
        let mut u = [1.0; UV_TERMS + 1];
        let mut v = [1.0; UV_TERMS + 1];
        for k in 1..=UV_TERMS {
            let kf = k as f64;
            u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
                / ((2.0 * kf - 1.0) * 216.0 * kf);
            v[k] = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k];
        }
        (u, v)
    })
}

/// Gauss–Legendre nodes on `[0, 6.5]`, four panels of 16 points.
fn laplace_nodes() -> &'static [(f64, f64)] {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| {
        let rule = crate::quadrature::gauss_legendre(16);
        let (panels, end) = (4, 6.5);
        let h = end / panels as f64;
        (0..panels)
            .flat_map(|i| {
                let mid = h * (i as f64 + 0.5);
                rule.iter()
                    .map(move |&(x, w)| (mid + 0.5 * h * x, 0.5 * h * w))
                    .collect::<Vec<_>>()
            })
            .collect()
    })
}

/// Steepest-descent integrals for moderate positive `z`:
/// `Ai(z) = (e^{-ζ}/π) ∫_0^∞ e^{-√z t²} cos(t³/3) dt` and
/// `Ai'(z) = -(e^{-ζ}/π) ∫_0^∞ e^{-√z t²} [√z cos(t³/3) + t sin(t³/3)] dt`,
/// written in `u = z^{1/4} t`, which makes the Gaussian factor `e^{-u²}`.
fn laplace_positive(z: f64) -> (f64, f64) {
    let r = z.sqrt();
    let s = z.powf(0.25);
    let (mut a, mut b) = (0.0, 0.0);
    for &(u, w) in laplace_nodes() {
        let t = u / s;
        let (sn, cs) = (t * t * t / 3.0).sin_cos();
        let g = w * (-u * u).exp();
        a += g * cs;
        b += g * (r * cs + t * sn);
    }
    let e = (-2.0 / 3.0 * z * r).exp() / (PI * s);
    (e * a, -e * b)
}

/// `Σ_k sign(k) c_k ζ^{-k}` for `u` and `v` together, each cut at its
/// smallest term.
fn optimal_sums(zeta: f64, sign: impl Fn(usize) -> f64, parity: Option<usize>) -> (f64, f64) {
    let (u, v) = uv();
    let inv = 1.0 / zeta;
    let (mut su, mut sv) = (0.0, 0.0);
    let (mut last_u, mut last_v) = (f64::INFINITY, f64::INFINITY);
    let (mut live_u, mut live_v) = (true, true);
    let mut p = 1.0;
    for k in 0..=UV_TERMS {
        let (tu, tv) = (u[k] * p, v[k] * p);
        p *= inv;
        live_u &= tu.abs() <= last_u;
        live_v &= tv.abs() <= last_v;
        if !(live_u || live_v) {
            break;
        }
        let keep = parity.is_none_or(|q| k % 2 == q);
        if live_u {
            last_u = tu.abs();
            if keep {
                su += sign(k) * tu;
            }
        }
        if live_v {
            last_v = tv.abs();
            if keep {
                sv += sign(k) * tv;
            }
        }
    }
    (su, sv)
}

fn asymptotic_positive(z: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * z.powf(1.5);
    let (su, sv) = optimal_sums(zeta, |k| if k % 2 == 0 { 1.0 } else { -1.0 }, None);
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = z.powf(0.25);
    (e / q * su, -e * q * sv)
}

fn asymptotic_negative(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    // Σ (-1)^j c_{2j+parity} / ζ^{2j+parity}
    let sign = |k: usize| if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let (eu, ev) = optimal_sums(zeta, sign, Some(0));
    let (ou, ov) = optimal_sums(zeta, sign, Some(1));
    let (s, c) = (zeta - PI / 4.0).sin_cos();
    let q = x.powf(0.25);
    let ai = (c * eu + s * ou) / (PI.sqrt() * q);
    let aip = q / PI.sqrt() * (s * ev - c * ov);
    (ai, aip)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values computed with 30-digit arithmetic.
    const REFERENCE: [(f64, f64, f64); 12] = [
        (-9.7, 0.28023750191629778381, 0.48628629123926627751),
        (-8.0, -0.052705050356386202622, 0.93556093819830655103),
        (-7.3, 0.33577037051514727697, -0.18009580448329365985),
        (-6.1, -0.35351167612096482551, 0.13836393725271761463),
        (-5.0, 0.35076100902411431979, 0.32719281855444313679),
        (-2.5, -0.11232506769296608919, 0.67885273426479436337),
        (0.0, 0.35502805388781723926, -0.25881940379280679841),
        (1.3, 0.093474665771502704523, -0.12033386559018357707),
        (4.2, 0.00062749586830916314018, -0.0013210006638876860872),
        (6.0, 9.9476943602528895702e-6, -0.000024765200397034954754),
        (7.5, 1.9172560675134307516e-7, -5.3127139597205446848e-7),
        (12.0, 1.393184688875360839e-13, -4.854736554985308463e-13),
    ];

    #[test]
    fn matches_reference_values() {
        for &(z, ai, aip) in &REFERENCE {
            let (a, ap) = airy_pair(z);
            assert!((a - ai).abs() < 1e-12, "Ai({z}) = {a}, expected {ai}");
            assert!((ap - aip).abs() < 1e-11, "Ai'({z}) = {ap}, expected {aip}");
        }
    }

    #[test]
    fn relative_accuracy_on_evanescent_side() {
        for &(z, ai, aip) in REFERENCE.iter().filter(|r| r.0 > 1.0) {
            let (a, ap) = airy_pair(z);
            assert!((a / ai - 1.0).abs() < 1e-13, "Ai({z})");
            assert!((ap / aip - 1.0).abs() < 1e-13, "Ai'({z})");
        }
    }

    #[test]
    fn far_oscillatory_region() {
        let (a, ap) = airy_pair(-30.0);
        assert!((a + 0.087968188456842162833).abs() < 1e-13);
        assert!((ap - 1.2286206026374851347).abs() < 1e-12);
    }

    #[test]
    fn continuous_across_branch_points() {
        for &b in &[ANCHOR_LO, -4.5, 0.5, 1.5, 7.5, ANCHOR_HI] {
            let (l, lp) = airy_pair(b - 1e-12);
            let (r, rp) = airy_pair(b + 1e-12);
            assert!((l - r).abs() < 1e-11 && (lp - rp).abs() < 1e-10, "jump at {b}");
            if b > 0.0 {
                let (l, lp) = airy_pair(b - 1e-14);
                let (r, rp) = airy_pair(b + 1e-14);
                assert!((l / r - 1.0).abs() < 2e-13 && (lp / rp - 1.0).abs() < 2e-13, "seam at {b}");
            }
        }
    }

    #[test]
    fn satisfies_airy_equation() {
        for i in 0..200 {
            let z = -10.0 + 0.1 * i as f64 + 0.013;
            let h = 1e-4;
            let d2 = (airy_ai_prime(z + h) - airy_ai_prime(z - h)) / (2.0 * h);
            assert!((d2 - z * airy_ai(z)).abs() < 1e-7, "z = {z}");
        }
    }

    #[test]
    fn wronskian_with_derivative() {
        // Ai and Ai' must be consistent: ∫ Ai' = Ai difference.
        let v = crate::quadrature::integrate_panels(airy_ai_prime, -9.0, 7.0, 64, 12);
        assert!((v - (airy_ai(7.0) - airy_ai(-9.0))).abs() < 1e-12);
    }
}
