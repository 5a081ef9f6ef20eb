//! Polygons defined by the centres of their sides.
//!
//! Vertices `v_i` and side centres `c_i` satisfy `v_i + v_{i+1} = 2 c_i`
//! cyclically. With an odd number of sides this fixes the vertices through
//! `v_0 = Σ (-1)^i c_i`; with an even number the alternating sum of the
//! centres must vanish and `v_0` is then free. Sides are `Ξ_i = v_i - v_{i+1}`,
//! which makes `Ξ_k = -J ∂Δ/∂c_k` for the area `Δ = ½ Σ v_i ∧ v_{i+1}`.

use crate::config::fd_step;
use crate::error::{invalid, Error, Result};
use crate::symplectic::{skew_unchecked, velocity, Hamiltonian, PhasePoint};
use crate::transition::log_log_slope;

/// Closure of even polygons is accepted up to this multiple of the centre
/// scale.
const CLOSURE_TOL: f64 = 1e-10;

/// A polygon given by its side centres, in cyclic order.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonPath {
    centres: Vec<PhasePoint>,
}

fn alternating_sum(points: &[PhasePoint], first_sign: f64) -> Option<PhasePoint> {
    let first = points.first()?;
    let mut acc = PhasePoint::zeros(first.dof());
    let mut s = first_sign;
    for p in points {
        acc = acc.axpy(s, p);
        s = -s;
    }
    Some(acc)
}

fn scale(points: &[PhasePoint]) -> f64 {
    points.iter().map(|p| p.norm()).fold(1.0, f64::max)
}

impl PolygonPath {
    pub fn new(centres: Vec<PhasePoint>) -> Result<Self> {
        let Some(first) = centres.first() else {
            return Err(invalid("centres", "a polygon needs at least one side"));
        };
        let dim = first.dim();
        if let Some(bad) = centres.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self { centres })
    }

    pub fn centres(&self) -> &[PhasePoint] {
        &self.centres
    }

    pub fn sides(&self) -> usize {
        self.centres.len()
    }

    pub fn is_odd(&self) -> bool {
        self.centres.len() % 2 == 1
    }

    /// `Σ (-1)^i c_i`; zero exactly when an even polygon closes.
    pub fn alternating_sum(&self) -> PhasePoint {
        alternating_sum(&self.centres, 1.0).expect("non-empty")
    }

    /// Whether the polygon closes: always for odd counts, and for even
    /// counts when the alternating sum vanishes.
    pub fn is_closable(&self) -> bool {
        self.is_odd() || self.alternating_sum().norm() <= CLOSURE_TOL * scale(&self.centres)
    }

    /// The unique vertices of an odd polygon.
    pub fn reconstruct_vertices(&self) -> Result<Vec<PhasePoint>> {
        if !self.is_odd() {
            return Err(invalid(
                "centres",
                "an even polygon has a family of closures; use vertices_from",
            ));
        }
        Ok(self.walk(self.alternating_sum()))
    }

    /// Vertices of a closable even polygon starting from `v0`.
    pub fn vertices_from(&self, v0: PhasePoint) -> Result<Vec<PhasePoint>> {
        if self.is_odd() {
            return Err(invalid("centres", "an odd polygon has unique vertices"));
        }
        if v0.dim() != self.centres[0].dim() {
            return Err(Error::DimensionMismatch {
                expected: self.centres[0].dim(),
                found: v0.dim(),
            });
        }
        if !self.is_closable() {
            return Err(invalid(
                "centres",
                format!("alternating sum {:e} does not vanish", self.alternating_sum().norm()),
            ));
        }
        Ok(self.walk(v0))
    }

    fn walk(&self, v0: PhasePoint) -> Vec<PhasePoint> {
        let mut v = Vec::with_capacity(self.centres.len());
        v.push(v0);
        for c in &self.centres[..self.centres.len() - 1] {
            let last = v.last().expect("non-empty");
            v.push((c * 2.0).axpy(-1.0, last));
        }
        v
    }

    /// Symplectic area of an odd polygon.
    pub fn symplectic_area(&self) -> Result<f64> {
        Ok(polygon_area(&self.reconstruct_vertices()?))
    }

    /// Symplectic area of a closed even polygon with first vertex `v0`.
    pub fn area_from(&self, v0: PhasePoint) -> Result<f64> {
        Ok(polygon_area(&self.vertices_from(v0)?))
    }

    /// `ξ = 2 Σ_{j=1}^{n-1} (-1)^j c_{d+j}`: the side centred on `c_d`,
    /// which depends only on the other centres.
    pub fn open_polygon_side(&self, distinguished: usize) -> Result<PhasePoint> {
        let n = self.centres.len();
        if distinguished >= n {
            return Err(Error::IndexOutOfRange {
                index: distinguished,
                max: n - 1,
            });
        }
        if !self.is_odd() {
            return Err(invalid("centres", "the side formula needs an odd polygon"));
        }
        let others: Vec<PhasePoint> = (1..n)
            .map(|j| self.centres[(distinguished + j) % n].clone())
            .collect();
        Ok(match alternating_sum(&others, -1.0) {
            Some(s) => &s * 2.0,
            None => PhasePoint::zeros(self.centres[0].dof()),
        })
    }

    /// Central-difference gradient of the area with respect to `c_k`.
    pub fn area_gradient_fd(&self, k: usize) -> Result<PhasePoint> {
        let n = self.centres.len();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, max: n - 1 });
        }
        let dim = self.centres[k].dim();
        let mut grad = vec![0.0; dim];
        for (i, g) in grad.iter_mut().enumerate() {
            let h = fd_step(self.centres[k].as_slice()[i]);
            let mut plus = self.clone();
            plus.centres[k].as_mut_slice()[i] += h;
            let mut minus = self.clone();
            minus.centres[k].as_mut_slice()[i] -= h;
            *g = (plus.symplectic_area()? - minus.symplectic_area()?) / (2.0 * h);
        }
        PhasePoint::new(grad)
    }

    /// All centres shifted by `d`.
    pub fn translated(&self, d: &PhasePoint) -> Self {
        Self {
            centres: self.centres.iter().map(|c| c + d).collect(),
        }
    }

    /// All centres reflected through the origin.
    pub fn reflected(&self) -> Self {
        Self {
            centres: self.centres.iter().map(|c| -c).collect(),
        }
    }
}

/// `½ Σ v_i ∧ v_{i+1}` around the closed vertex loop.
pub fn polygon_area(vertices: &[PhasePoint]) -> f64 {
    let n = vertices.len();
    0.5 * (0..n)
        .map(|i| skew_unchecked(&vertices[i], &vertices[(i + 1) % n]))
        .sum::<f64>()
}

/// Sides `Ξ_i = v_i - v_{i+1}` of the closed vertex loop.
pub fn polygon_sides(vertices: &[PhasePoint]) -> Vec<PhasePoint> {
    let n = vertices.len();
    (0..n)
        .map(|i| &vertices[i] - &vertices[(i + 1) % n])
        .collect()
}

/// `Σ_{k≥1} (-1)^k a_k + Σ_{k≥1} (-1)^k b_k`; the even polygon formed by
/// joining the two groups closes when this vanishes.
pub fn closure_residual(a: &[PhasePoint], b: &[PhasePoint]) -> Result<PhasePoint> {
    let (ra, rb) = (alternating_sum(a, -1.0), alternating_sum(b, -1.0));
    match (ra, rb) {
        (Some(x), Some(y)) => {
            if x.dim() != y.dim() {
                return Err(Error::DimensionMismatch {
                    expected: x.dim(),
                    found: y.dim(),
                });
            }
            Ok(&x + &y)
        }
        (Some(x), None) | (None, Some(x)) => Ok(x),
        (None, None) => Err(invalid("centres", "both groups are empty")),
    }
}

/// Shifts `a_1` so that the joined polygon closes.
pub fn close_pair(a: &mut [PhasePoint], b: &[PhasePoint]) -> Result<()> {
    let r = closure_residual(a, b)?;
    let first = a
        .first_mut()
        .ok_or_else(|| invalid("a", "the adjusted group is empty"))?;
    *first = &*first + &r;
    Ok(())
}

/// Fourth-order Runge–Kutta trajectory of `ẋ = J∇H`, returning the state
/// after each of `steps` equal steps (the initial state first).
pub fn integrate_trajectory<H: Hamiltonian>(
    model: &H,
    x0: &PhasePoint,
    t: f64,
    steps: usize,
) -> Result<Vec<PhasePoint>> {
    if steps == 0 {
        return Err(invalid("steps", "must be positive"));
    }
    let h = t / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let mut x = x0.clone();
    velocity(model, &x)?;
    out.push(x.clone());
    for _ in 0..steps {
        let k1 = model.gradient(&x).j();
        let k2 = model.gradient(&x.axpy(0.5 * h, &k1)).j();
        let k3 = model.gradient(&x.axpy(0.5 * h, &k2)).j();
        let k4 = model.gradient(&x.axpy(h, &k3)).j();
        x = x
            .axpy(h / 6.0, &k1)
            .axpy(h / 3.0, &k2)
            .axpy(h / 3.0, &k3)
            .axpy(h / 6.0, &k4);
        out.push(x.clone());
    }
    Ok(out)
}

/// Largest deviation of the polygon sides from `(t/K) ẋ` at their centres.
///
/// The `K` centres are trajectory points at times `(k - ½) t/K`, closed by
/// the chord centre `(x(0) + x(t))/2`. Sides are taken along the motion,
/// `v_{k+1} - v_k = -Ξ_k`.
pub fn tangency_residual<H: Hamiltonian>(model: &H, x0: &PhasePoint, t: f64, k: usize) -> Result<f64> {
    if k < 2 || k % 2 != 0 {
        return Err(invalid("K", "need an even number of trajectory centres"));
    }
    const SUB: usize = 16;
    let traj = integrate_trajectory(model, x0, t, 2 * k * SUB)?;
    let chord = &(&traj[0] + &traj[2 * k * SUB]) * 0.5;
    let mut centres = vec![chord];
    centres.extend((1..=k).map(|i| traj[(2 * i - 1) * SUB].clone()));
    let poly = PolygonPath::new(centres)?;
    let v = poly.reconstruct_vertices()?;
    let tau = t / k as f64;
    let mut worst = 0.0f64;
    for i in 1..=k {
        let along = &v[(i + 1) % (k + 1)] - &v[i];
        let target = &velocity(model, &poly.centres[i])? * tau;
        worst = worst.max((&along - &target).norm());
    }
    Ok(worst)
}

/// Fitted order `p` of `residual ∝ (t/K)^p` over the given `K` values.
pub fn tangency_order<H: Hamiltonian>(model: &H, x0: &PhasePoint, t: f64, ks: &[usize]) -> Result<f64> {
    let points: Vec<(f64, f64)> = ks
        .iter()
        .map(|&k| Ok((t / k as f64, tangency_residual(model, x0, t, k)?)))
        .collect::<Result<_>>()?;
    log_log_slope(&points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::HamiltonianModel;

    fn pt(p: f64, q: f64) -> PhasePoint {
        PhasePoint::new(vec![p, q]).unwrap()
    }

    #[test]
    fn triangle_vertices_and_area() {
        let poly = PolygonPath::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(0.0, 1.0)]).unwrap();
        let v = poly.reconstruct_vertices().unwrap();
        assert_eq!(v, vec![pt(-1.0, 1.0), pt(1.0, -1.0), pt(1.0, 1.0)]);
        assert!((poly.symplectic_area().unwrap().abs() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn point_polygon() {
        let c = pt(0.3, -0.7);
        let poly = PolygonPath::new(vec![c.clone(); 5]).unwrap();
        assert!(poly.reconstruct_vertices().unwrap().iter().all(|v| v == &c));
        assert_eq!(poly.symplectic_area().unwrap(), 0.0);
    }

    #[test]
    fn even_polygon_needs_family() {
        let poly = PolygonPath::new(vec![pt(0.0, 0.0), pt(1.0, 0.0)]).unwrap();
        assert!(poly.reconstruct_vertices().is_err());
        assert!(poly.vertices_from(pt(0.0, 0.0)).is_err());
    }

    #[test]
    fn printed_side_formula() {
        let poly = PolygonPath::new(vec![pt(5.0, 5.0), pt(1.0, 0.0), pt(1.0, 1.0)]).unwrap();
        assert_eq!(poly.open_polygon_side(0).unwrap(), pt(0.0, 2.0));
        let v = poly.reconstruct_vertices().unwrap();
        assert_eq!(polygon_sides(&v)[0], pt(0.0, 2.0));
    }

    #[test]
    fn coincident_others_give_zero_side() {
        let c = pt(0.4, 0.9);
        let poly = PolygonPath::new(vec![pt(-3.0, 1.0), c.clone(), c.clone(), c.clone(), c]).unwrap();
        assert_eq!(poly.open_polygon_side(0).unwrap().norm(), 0.0);
    }

    #[test]
    fn closure_of_mirror_groups() {
        let a = vec![pt(1.0, 2.0), pt(-0.5, 0.3)];
        let b: Vec<_> = a.iter().map(|p| -p).collect();
        assert_eq!(closure_residual(&a, &b).unwrap().norm(), 0.0);
    }

    #[test]
    fn straight_line_is_exactly_tangent() {
        struct Linear;
        impl Hamiltonian for Linear {
            fn dof(&self) -> usize {
                1
            }
            fn value(&self, x: &PhasePoint) -> f64 {
                0.7 * x.p()[0] - 0.2 * x.q()[0]
            }
            fn gradient(&self, _: &PhasePoint) -> PhasePoint {
                PhasePoint::new(vec![0.7, -0.2]).unwrap()
            }
        }
        let r = tangency_residual(&Linear, &pt(0.1, 0.3), 0.4, 8).unwrap();
        assert!(r < 1e-14, "{r}");
    }

    #[test]
    fn oscillator_tangency_is_second_order() {
        let m = HamiltonianModel::spherical(1.0, PhasePoint::zeros(1)).unwrap();
        let order = tangency_order(&m, &pt(0.0, 1.0), 0.1, &[4, 8, 16, 32]).unwrap();
        assert!((order - 2.0).abs() < 0.1, "{order}");
    }
}
