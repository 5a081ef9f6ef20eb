//! Gauss-Legendre panel quadrature in one and two dimensions.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::ops::{Add, Mul, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Nodes and weights of the `order`-point rule on `[-1, 1]`, cached.
pub fn gauss_legendre(order: usize) -> Arc<Vec<(f64, f64)>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<(f64, f64)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("quadrature cache poisoned");
    guard
        .entry(order)
        .or_insert_with(|| {
            let rule = GaussLegendre::new(NonZeroUsize::new(order).expect("order must be positive"));
            let mut pairs = rule.as_node_weight_pairs().to_vec();
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            Arc::new(pairs)
        })
        .clone()
}

/// Values that can be integrated: real or complex.
pub trait QuadValue:
    Copy + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

fn panel<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64, rule: &[(f64, f64)]) -> T {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = T::zero();
    for &(x, w) in rule {
        acc = acc + f(mid + half * x) * (w * half);
    }
    acc
}

/// Composite rule: `panels` equal panels of `order` points each.
pub fn integrate_panels<T: QuadValue, F: Fn(f64) -> T>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
) -> T {
    let rule = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut acc = T::zero();
    for i in 0..panels {
        let lo = a + h * i as f64;
        acc = acc + panel(&f, lo, lo + h, &rule);
    }
    acc
}

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
}

/// Adaptive bisection starting from `initial_panels` panels; each panel is
/// accepted once the rule on it agrees with the rule on its halves, or once
/// the disagreement is down to `1e-11` of the panel value, below which
/// special-function branch seams dominate.
pub fn integrate_adaptive<T: QuadValue, F: Fn(f64) -> T>(
    f: F,
    a: f64,
    b: f64,
    initial_panels: usize,
    order: usize,
    abs_tol: f64,
    rel_tol: f64,
    max_depth: usize,
) -> Result<Estimate<T>> {
    let rule = gauss_legendre(order);
    let n0 = initial_panels.max(1);
    let h = (b - a) / n0 as f64;
    let mut stack: Vec<(f64, f64, T, usize)> = (0..n0)
        .rev()
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == n0 { b } else { lo + h };
            (lo, hi, panel(&f, lo, hi, &rule), 0)
        })
        .collect();
    let coarse_total: f64 = stack.iter().map(|s| s.2.magnitude()).sum();
    let tol = abs_tol.max(rel_tol * coarse_total);
    let width = (b - a).abs().max(f64::MIN_POSITIVE);
    let mut value = T::zero();
    let mut error = 0.0;
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = panel(&f, lo, mid, &rule);
        let right = panel(&f, mid, hi, &rule);
        let refined = left + right;
        let diff = (refined - whole).magnitude();
        let share = tol * (hi - lo).abs() / width;
        let floor = 1e-11 * refined.magnitude();
        if diff <= share.max(floor) || depth >= max_depth {
            if diff > share.max(floor) && depth >= max_depth {
                return Err(Error::Quadrature { estimate: diff });
            }
            value = value + refined;
            error += diff;
        } else {
            stack.push((mid, hi, right, depth + 1));
            stack.push((lo, mid, left, depth + 1));
        }
    }
    Ok(Estimate { value, error })
}

/// Tensor-product panel rule on a rectangle, parallel over the first axis.
///
/// Partial sums are combined in panel order so results are reproducible
/// regardless of thread count.
pub fn integrate_2d<F: Fn(f64, f64) -> f64 + Sync>(
    f: F,
    (ax, bx, nx): (f64, f64, usize),
    (ay, by, ny): (f64, f64, usize),
    order: usize,
) -> f64 {
    let rule = gauss_legendre(order);
    let hx = (bx - ax) / nx as f64;
    let hy = (by - ay) / ny as f64;
    let partial: Vec<f64> = (0..nx)
        .into_par_iter()
        .map(|i| {
            let x0 = ax + hx * (i as f64 + 0.5);
            let mut acc = 0.0;
            for &(u, wu) in rule.iter() {
                let x = x0 + 0.5 * hx * u;
                let mut row = 0.0;
                for j in 0..ny {
                    let y0 = ay + hy * (j as f64 + 0.5);
                    for &(v, wv) in rule.iter() {
                        row += wv * f(x, y0 + 0.5 * hy * v);
                    }
                }
                acc += wu * row;
            }
            acc
        })
        .collect();
    partial.iter().sum::<f64>() * 0.25 * hx * hy
}

/// Brent's method on a bracketing interval.
pub fn brent<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::RootFinding(format!(
            "interval [{a}, {b}] does not bracket a root"
        )));
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * m * s, 1.0 - s)
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0)),
                    (qa - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * m * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = d;
            }
        } else {
            d = m;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(m) };
        fb = f(b);
    }
    Err(Error::RootFinding("Brent iteration limit reached".into()))
}

/// Golden-section minimisation of a unimodal function on `[a, b]`.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let v = integrate_panels(|x: f64| x.powi(7) + 3.0 * x * x, -1.0, 2.0, 1, 4);
        let exact = (2f64.powi(8) - 1.0) / 8.0 + (8.0 + 1.0);
        assert!((v - exact).abs() < 1e-12);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        let est = integrate_adaptive(|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, 2, 8, 1e-12, 1e-12, 50)
            .unwrap();
        let exact = 2.0 * (1.0 / 1e-2) * (1.0f64 / 1e-2).atan();
        assert!((est.value - exact).abs() < 1e-9 * exact);
    }

    #[test]
    fn adaptive_complex_oscillatory() {
        let est = integrate_adaptive(
            |x: f64| Complex64::new(0.0, 30.0 * x).exp(),
            0.0,
            1.0,
            4,
            10,
            1e-14,
            1e-12,
            40,
        )
        .unwrap();
        let exact = (Complex64::new(0.0, 30.0).exp() - 1.0) / Complex64::new(0.0, 30.0);
        assert!((est.value - exact).norm() < 1e-12);
    }

    #[test]
    fn two_dimensional_gaussian() {
        let v = integrate_2d(|x, y| (-(x * x + y * y)).exp(), (-8.0, 8.0, 16), (-8.0, 8.0, 16), 8);
        assert!((v - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn brent_finds_cubic_root() {
        let r = brent(|x| x * x * x - 2.0, 0.0, 3.0, 1e-15).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
        assert!(brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn golden_finds_parabola_minimum() {
        let m = golden_min(|x| (x - 0.3).powi(2), -1.0, 2.0, 1e-10);
        assert!((m - 0.3).abs() < 1e-8);
    }
}
