//! Geometry of the centre section `{H(x+X) = E, H(x-X) = E'}`.
//!
//! For spherical shells `H = ω|x - c|²/2` with the reflection centre at
//! distance `Q̃` from `c` along the `Q` axis, the section is the sphere
//! `Q = Q_s`, `P² + Y² = Y_M²` with
//!
//! * `Q_s = (E - E')/(2ωQ̃)`
//! * `Y_M² = (E + E')/ω - Q_s² - Q̃²`
//!
//! and it shrinks to a point when `Q̃` reaches the caustic offset
//! `Q_c = (√(2E/ω) + √(2E'/ω))/2`.

use crate::error::{invalid, require_positive, Error, Result};
use crate::symplectic::{skew_unchecked, Hamiltonian, HamiltonianModel, PhasePoint, ReflectionFrame};

/// Scaling that brings a harmonic Hamiltonian to spherical form.
///
/// Original coordinates are `x = centre + factor_n · x'` in plane `n`, where
/// `x'` are the spherical coordinates. The map preserves volume but is not
/// symplectic, so it is only used to transport points, never to propagate.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm {
    pub omega: f64,
    pub centre: PhasePoint,
    pub factors: Vec<f64>,
}

impl NormalForm {
    pub fn to_spherical(&self, x: &PhasePoint) -> Result<PhasePoint> {
        self.check(x)?;
        let n = x.dof();
        let d = x - &self.centre;
        let c: Vec<f64> = (0..2 * n)
            .map(|i| d.as_slice()[i] / self.factors[i % n])
            .collect();
        PhasePoint::new(c)
    }

    pub fn from_spherical(&self, y: &PhasePoint) -> Result<PhasePoint> {
        self.check(y)?;
        let n = y.dof();
        let c: Vec<f64> = (0..2 * n)
            .map(|i| self.centre.as_slice()[i] + y.as_slice()[i] * self.factors[i % n])
            .collect();
        PhasePoint::new(c)
    }

    fn check(&self, x: &PhasePoint) -> Result<()> {
        if x.dof() == self.factors.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: 2 * self.factors.len(),
                found: x.dim(),
            })
        }
    }
}

/// Spherical normal form from the Hessian at the shell centre.
///
/// Requires a Hessian that is diagonal with equal `p` and `q` entries per
/// plane (the form of every harmonic model here); `ω` is the geometric mean
/// of the plane frequencies.
pub fn spherical_normal_form(model: &HamiltonianModel) -> Result<NormalForm> {
    let centre = model.minimum();
    let hess = model.hessian(&centre);
    let n = model.dof();
    let mut freqs = Vec::with_capacity(n);
    for i in 0..n {
        let wp = hess[(i, i)];
        let wq = hess[(n + i, n + i)];
        if !(wp > 0.0 && wq > 0.0) {
            return Err(Error::NormalForm(format!(
                "Hessian not positive definite in plane {i}"
            )));
        }
        if (wp - wq).abs() > 1e-12 * wp {
            return Err(Error::NormalForm(format!(
                "plane {i} is not in oscillator form (p: {wp}, q: {wq})"
            )));
        }
        freqs.push(wp);
    }
    let scale = hess.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for i in 0..2 * n {
        for j in 0..2 * n {
            if i != j && hess[(i, j)].abs() > 1e-12 * scale {
                return Err(Error::NormalForm("Hessian is not diagonal".into()));
            }
        }
    }
    let omega = freqs.iter().map(|w| w.ln()).sum::<f64>() / n as f64;
    let omega = omega.exp();
    let factors = freqs.iter().map(|w| (omega / w).sqrt()).collect();
    Ok(NormalForm {
        omega,
        centre,
        factors,
    })
}

/// Scalars describing the spherical section.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SectionGeometry {
    pub omega: f64,
    pub q_tilde: f64,
    pub e: f64,
    pub e_prime: f64,
    pub q_s: f64,
    pub sigma: f64,
    pub y_m_sq: f64,
    /// `√Y_M²` when the section exists, otherwise 0.
    pub p_s: f64,
    pub q_c: f64,
}

impl SectionGeometry {
    pub fn exists(&self) -> bool {
        self.y_m_sq >= 0.0
    }

    /// `|Y_M|`, zero when there is no section.
    pub fn y_m(&self) -> f64 {
        self.y_m_sq.max(0.0).sqrt()
    }

    /// Radius `√(2E/ω)` of the `H_+` shell.
    pub fn radius(&self) -> f64 {
        (2.0 * self.e / self.omega).sqrt()
    }

    /// Radius `√(2E'/ω)` of the `H_-` shell.
    pub fn radius_prime(&self) -> f64 {
        (2.0 * self.e_prime / self.omega).sqrt()
    }

    /// Section point with transverse coordinates `y = (y_p.., y_q..)` of
    /// length `2(N-1)`, on the upper (`P > 0`) or lower sheet.
    ///
    /// The returned chord is ordered `(y_p.., P, y_q.., Q)`.
    pub fn point(&self, y: &[f64], upper: bool) -> Result<PhasePoint> {
        if y.len() % 2 != 0 {
            return Err(invalid("y", "transverse coordinates come in (p, q) pairs"));
        }
        let y_sq: f64 = y.iter().map(|v| v * v).sum();
        let (plus, minus) = section_momentum(self, y_sq)
            .ok_or_else(|| invalid("y", "outside the section"))?;
        let m = y.len() / 2;
        let mut p = y[..m].to_vec();
        p.push(if upper { plus } else { minus });
        let mut q = y[m..].to_vec();
        q.push(self.q_s);
        PhasePoint::from_pq(&p, &q)
    }

    /// Reflection centre at distance `Q̃` from `shell_centre` along the last
    /// `q` axis, so that the `H_+` shell is centred at `X = -Q̃ e_Q`.
    pub fn reflection_centre(&self, shell_centre: &PhasePoint) -> PhasePoint {
        let n = shell_centre.dof();
        let mut x = shell_centre.clone();
        x.as_mut_slice()[2 * n - 1] += self.q_tilde;
        x
    }
}

/// Builds the spherical section scalars.
pub fn build_section(omega: f64, q_tilde: f64, e: f64, e_prime: f64) -> Result<SectionGeometry> {
    require_positive("omega", omega)?;
    require_positive("q_tilde", q_tilde)?;
    require_positive("E", e)?;
    require_positive("E'", e_prime)?;
    let q_s = (e - e_prime) / (2.0 * omega * q_tilde);
    let mean = 0.5 * (e + e_prime);
    let y_m_sq = (e + e_prime) / omega - q_s * q_s - q_tilde * q_tilde;
    Ok(SectionGeometry {
        omega,
        q_tilde,
        e,
        e_prime,
        q_s,
        sigma: (e - e_prime) / mean,
        y_m_sq,
        p_s: y_m_sq.max(0.0).sqrt(),
        q_c: caustic_offset(omega, e, e_prime),
    })
}

/// `Q_c = (√(2E/ω) + √(2E'/ω))/2`, the offset at which the shells touch.
pub fn caustic_offset(omega: f64, e: f64, e_prime: f64) -> f64 {
    0.5 * ((2.0 * e / omega).sqrt() + (2.0 * e_prime / omega).sqrt())
}

/// `P = ±√(Y_M² - Y²)`; `None` outside the section.
pub fn section_momentum(geom: &SectionGeometry, y_sq: f64) -> Option<(f64, f64)> {
    let rem = geom.y_m_sq - y_sq;
    if y_sq < 0.0 || rem < 0.0 {
        None
    } else {
        let p = rem.sqrt();
        Some((p, -p))
    }
}

/// `(H(x+X) - E, H(x-X) - E')`.
pub fn section_point_check<H: Hamiltonian>(
    model: &H,
    centre: &PhasePoint,
    chord: &PhasePoint,
    e: f64,
    e_prime: f64,
) -> Result<(f64, f64)> {
    if centre.dim() != chord.dim() {
        return Err(Error::DimensionMismatch {
            expected: centre.dim(),
            found: chord.dim(),
        });
    }
    Ok((
        model.value(&(centre + chord)) - e,
        model.value(&(centre - chord)) - e_prime,
    ))
}

/// Symplectic basis adapted to a section point: `(e_p, e_q)` span the
/// velocity plane with `e_p ∧ e_q = 1`, and the `Y` pairs span its
/// skew-orthogonal complement.
#[derive(Clone, Debug)]
pub struct VelocityFrame {
    pub e_p: PhasePoint,
    pub e_q: PhasePoint,
    /// `(f_i, g_i)` with `f_i ∧ g_i = 1`, skew-orthogonal to everything else.
    pub transverse: Vec<(PhasePoint, PhasePoint)>,
}

/// Builds the `(Y, P, Q)` frame at a section point by symplectic
/// Gram–Schmidt. Fails with [`Error::Caustic`] when the two velocities are
/// nearly parallel.
pub fn velocity_frame<H: Hamiltonian>(
    frame: &ReflectionFrame<H>,
    chord: &PhasePoint,
) -> Result<VelocityFrame> {
    let u = frame.velocity_plus(chord);
    let w = frame.velocity_minus(chord);
    let s = skew_unchecked(&u, &w);
    let scale = u.norm() * w.norm();
    if scale == 0.0 || s.abs() < 1e-10 * scale {
        return Err(Error::Caustic { bracket: s });
    }
    let a = s.abs().sqrt();
    let e_p = &u * (1.0 / a);
    let e_q = &w * (s.signum() / a);
    let n = chord.dof();
    let mut pairs: Vec<(PhasePoint, PhasePoint)> = vec![(e_p.clone(), e_q.clone())];
    let project = |v: &PhasePoint, pairs: &[(PhasePoint, PhasePoint)]| {
        let mut out = v.clone();
        for (f, g) in pairs {
            // Remove components so that out ∧ f = out ∧ g = 0.
            let c_g = skew_unchecked(&out, g);
            let c_f = skew_unchecked(&out, f);
            out = out.axpy(-c_g, f).axpy(c_f, g);
        }
        out
    };
    let mut candidates: Vec<PhasePoint> = (0..2 * n).map(|i| PhasePoint::basis(n, i)).collect();
    while pairs.len() < n {
        let projected: Vec<PhasePoint> = candidates.iter().map(|c| project(c, &pairs)).collect();
        let (ia, fa) = projected
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .map(|(i, v)| (i, v.clone()))
            .expect("candidates remain while the basis is incomplete");
        let (ib, gb, sab) = projected
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v.clone(), skew_unchecked(&fa, v)))
            .max_by(|a, b| a.2.abs().total_cmp(&b.2.abs()))
            .expect("non-empty");
        if sab.abs() < 1e-12 {
            return Err(Error::NormalForm("degenerate skew form".into()));
        }
        let r = sab.abs().sqrt();
        let f = &fa * (1.0 / r);
        let g = &gb * (sab.signum() / r);
        pairs.push((f, g));
        let (hi, lo) = if ia > ib { (ia, ib) } else { (ib, ia) };
        candidates.remove(hi);
        if hi != lo {
            candidates.remove(lo);
        }
    }
    let transverse = pairs.split_off(1);
    Ok(VelocityFrame {
        e_p,
        e_q,
        transverse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{poisson_bracket, skew_product};

    #[test]
    fn printed_arithmetic() {
        let g = build_section(1.0, 1.0, 2.0, 2.0).unwrap();
        assert_eq!(g.q_s, 0.0);
        assert!((g.y_m_sq - 3.0).abs() < 1e-15);
        assert!((g.p_s - 3f64.sqrt()).abs() < 1e-15);
        let g = build_section(1.0, 1.0, 2.5, 1.5).unwrap();
        assert!((g.q_s - 0.5).abs() < 1e-15 && (g.sigma - 0.5).abs() < 1e-15);
        let g = build_section(1.0, 2.0, 2.0, 2.0).unwrap();
        assert_eq!(g.y_m_sq, 0.0);
    }

    #[test]
    fn caustic_offset_closes_section() {
        for &(w, e, ep) in &[(1.0, 2.0, 2.0), (0.7, 3.0, 1.2), (2.5, 0.4, 5.0)] {
            let qc = caustic_offset(w, e, ep);
            let g = build_section(w, qc, e, ep).unwrap();
            assert!(g.y_m_sq.abs() < 1e-12, "{g:?}");
        }
    }

    #[test]
    fn momentum_branches() {
        let g = build_section(1.0, 1.0, 2.0, 2.0).unwrap();
        assert_eq!(section_momentum(&g, 0.0), Some((g.p_s, -g.p_s)));
        assert_eq!(section_momentum(&g, g.y_m_sq), Some((0.0, -0.0)));
        assert_eq!(section_momentum(&g, 3.5), None);
    }

    #[test]
    fn normal_form_examples() {
        let m = HamiltonianModel::anisotropic(vec![2.0, 2.0], PhasePoint::zeros(2)).unwrap();
        let nf = spherical_normal_form(&m).unwrap();
        assert!((nf.omega - 2.0).abs() < 1e-15);
        assert!(nf.factors.iter().all(|f| (f - 1.0).abs() < 1e-15));
        let m = HamiltonianModel::anisotropic(vec![1.0, 4.0], PhasePoint::zeros(2)).unwrap();
        let nf = spherical_normal_form(&m).unwrap();
        assert!((nf.omega - 2.0).abs() < 1e-15);
        assert!((nf.factors[0] - 2f64.sqrt()).abs() < 1e-15);
        assert!((nf.factors[1] - 0.5f64.sqrt()).abs() < 1e-15);
        let x = PhasePoint::new(vec![0.3, -0.7, 1.1, 0.2]).unwrap();
        let y = nf.to_spherical(&x).unwrap();
        let sph = HamiltonianModel::spherical(2.0, PhasePoint::zeros(2)).unwrap();
        assert!((sph.value(&y) - m.value(&x)).abs() < 1e-12);
        let back = nf.from_spherical(&y).unwrap();
        assert!((&back - &x).norm() < 1e-14);
    }

    #[test]
    fn constructed_points_lie_on_both_shells() {
        let omega = 1.3;
        let g = build_section(omega, 0.9, 2.4, 1.7).unwrap();
        let c = PhasePoint::new(vec![0.2, -0.1, 0.5, 0.3]).unwrap();
        let model = HamiltonianModel::spherical(omega, c.clone()).unwrap();
        let x = g.reflection_centre(&c);
        for &(yp, yq) in &[(0.1, 0.2), (-0.5, 0.3), (0.0, 0.0)] {
            for &upper in &[true, false] {
                let chord = g.point(&[yp, yq], upper).unwrap();
                let (r1, r2) = section_point_check(&model, &x, &chord, g.e, g.e_prime).unwrap();
                assert!(r1.abs() < 1e-12 && r2.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn velocity_frame_is_symplectic() {
        let omega = 1.0;
        let g = build_section(omega, 0.8, 2.0, 1.6).unwrap();
        let c = PhasePoint::zeros(3);
        let model = HamiltonianModel::spherical(omega, c.clone()).unwrap();
        let frame = ReflectionFrame::new(model, g.reflection_centre(&c)).unwrap();
        let chord = g.point(&[0.3, -0.2, 0.1, 0.4], true).unwrap();
        let vf = velocity_frame(&frame, &chord).unwrap();
        let mut basis = vec![vf.e_p.clone(), vf.e_q.clone()];
        for (f, h) in &vf.transverse {
            basis.push(f.clone());
            basis.push(h.clone());
        }
        assert_eq!(basis.len(), 6);
        for i in 0..6 {
            for j in 0..6 {
                let s = skew_product(&basis[i], &basis[j]).unwrap();
                let target = if i % 2 == 0 && j == i + 1 {
                    1.0
                } else if j % 2 == 0 && i == j + 1 {
                    -1.0
                } else {
                    0.0
                };
                assert!((s - target).abs() < 1e-12, "({i},{j}) = {s}");
            }
        }
        // The velocity plane carries the full bracket.
        let pb = poisson_bracket(&frame, &chord).unwrap();
        let vv = skew_product(&frame.velocity_plus(&chord), &frame.velocity_minus(&chord)).unwrap();
        assert!((pb - vv).abs() < 1e-12);
    }

    #[test]
    fn frame_fails_at_tangency() {
        let g = build_section(1.0, 2.0, 2.0, 2.0).unwrap();
        let c = PhasePoint::zeros(1);
        let model = HamiltonianModel::spherical(1.0, c.clone()).unwrap();
        let frame = ReflectionFrame::new(model, g.reflection_centre(&c)).unwrap();
        let chord = g.point(&[], true).unwrap();
        assert!(matches!(velocity_frame(&frame, &chord), Err(Error::Caustic { .. })));
    }
}
