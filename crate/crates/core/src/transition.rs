//! Classical transition density
//! `P_EE'(x) = (2πħ)^{-N} ∫ dX δ(H(x+X) - E) δ(H(x-X) - E')`.
//!
//! * `N = 1`: a sum of `1/|{H_+, H_-}|` over the intersection points of the
//!   two shells.
//! * Spherical shells: closed form `∝ |Y_M|^{2N-3}`.
//! * General shells, `N ≥ 2`: Monte Carlo over the section.
//!
//! The Monte Carlo integrator writes chords as `X = Q ê + ρ u` with `ê` the
//! unit vector from the shell centre to `x` and `u` a unit vector orthogonal
//! to it. Then `dX = ρ^{2N-2} dρ dQ dσ(u)` and the two deltas are resolved on
//! each ray by Newton's method, leaving
//! `∫ dσ(u) ρ^{2N-2} / |∂(H_+, H_-)/∂(ρ, Q)|`, a smooth integral over the
//! sphere `S^{2N-2}` of directions. Antipodal pairs `(u, -u)` are always
//! sampled together, which makes the estimate exactly symmetric under
//! `E ↔ E'`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use statrs::function::gamma::gamma;

use crate::config::Numerics;
use crate::error::{invalid, require_positive, Error, Result};
use crate::quadrature::{brent, integrate_2d};
use crate::section::{build_section, spherical_normal_form, SectionGeometry};
use crate::symplectic::{poisson_bracket, Hamiltonian, HamiltonianModel, PhasePoint, ReflectionFrame};

/// A transition density request.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionQuery {
    pub model: HamiltonianModel,
    /// The reflection centre `x`.
    pub centre: PhasePoint,
    pub e: f64,
    pub e_prime: f64,
    pub hbar: f64,
}

impl TransitionQuery {
    pub fn new(
        model: HamiltonianModel,
        centre: PhasePoint,
        e: f64,
        e_prime: f64,
        hbar: f64,
    ) -> Result<Self> {
        if centre.dof() != model.dof() {
            return Err(Error::DimensionMismatch {
                expected: 2 * model.dof(),
                found: centre.dim(),
            });
        }
        require_positive("hbar", hbar)?;
        let floor = model.value(&model.minimum());
        for (name, v) in [("E", e), ("E'", e_prime)] {
            if !(v.is_finite() && v > floor) {
                return Err(invalid(name, format!("must exceed the minimum energy {floor}")));
            }
        }
        Ok(Self {
            model,
            centre,
            e,
            e_prime,
            hbar,
        })
    }

    pub fn dof(&self) -> usize {
        self.centre.dof()
    }

    /// The query with `E` and `E'` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            e: self.e_prime,
            e_prime: self.e,
            ..self.clone()
        }
    }

    fn frame(&self) -> ReflectionFrame<&HamiltonianModel> {
        ReflectionFrame::new(&self.model, self.centre.clone()).expect("dimensions checked")
    }

    /// Spherical estimate of the section from the normal form.
    pub fn spherical_estimate(&self) -> Result<SectionGeometry> {
        let nf = spherical_normal_form(&self.model)?;
        let q_tilde = nf.to_spherical(&self.centre)?.norm();
        build_section(nf.omega, q_tilde.max(f64::MIN_POSITIVE), self.e, self.e_prime)
    }

    /// `|{H_+, H_-}|` below which the shells count as tangent.
    fn tangency_threshold(&self) -> Result<f64> {
        let g = self.spherical_estimate()?;
        Ok(Numerics::default().tangency_tol
            * g.omega
            * g.omega
            * g.q_tilde
            * ((self.e + self.e_prime) / g.omega).sqrt())
    }
}

/// `(2πħ)^{-1} Σ_j 1/|{H_+, H_-}(X_j)|` over the intersection points of the
/// curves `H_+ = E` and `H_- = E'`.
pub fn transition_density_1d(q: &TransitionQuery) -> Result<f64> {
    if q.dof() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: q.centre.dim(),
        });
    }
    let points = match &q.model {
        HamiltonianModel::Spherical { .. } | HamiltonianModel::AnisotropicHarmonic { .. } => {
            spherical_intersections(q)?
        }
        HamiltonianModel::QuarticPerturbed { .. } => curve_intersections(q)?,
    };
    let frame = q.frame();
    let threshold = q.tangency_threshold()?;
    let mut sum = 0.0;
    for x in &points {
        let pb = poisson_bracket(&frame, x)?;
        if pb.abs() < threshold {
            return Err(Error::Caustic { bracket: pb });
        }
        sum += 1.0 / pb.abs();
    }
    Ok(sum / (2.0 * PI * q.hbar))
}

/// Intersection chords of two circles (one degree of freedom).
fn spherical_intersections(q: &TransitionQuery) -> Result<Vec<PhasePoint>> {
    let c = q.model.minimum();
    let d = &q.centre - &c;
    let q_tilde = d.norm();
    let omega = q.model.frequencies()[0];
    if q_tilde == 0.0 {
        if q.e == q.e_prime {
            return Err(Error::Caustic { bracket: 0.0 });
        }
        return Ok(Vec::new());
    }
    let g = build_section(omega, q_tilde, q.e, q.e_prime)?;
    if !g.exists() {
        return Ok(Vec::new());
    }
    let axis = &d * (1.0 / q_tilde);
    let normal = axis.j();
    let base = &axis * g.q_s;
    if g.p_s == 0.0 {
        return Ok(vec![base]);
    }
    Ok(vec![base.axpy(g.p_s, &normal), base.axpy(-g.p_s, &normal)])
}

/// Radius of the star-shaped shell `H = e` along `dir` from `c`.
fn shell_radius<H: Hamiltonian>(h: &H, c: &PhasePoint, dir: &PhasePoint, e: f64) -> Result<f64> {
    let f = |r: f64| h.value(&c.axpy(r, dir)) - e;
    let mut hi = 1.0;
    let mut iter = 0;
    while f(hi) < 0.0 {
        hi *= 2.0;
        iter += 1;
        if iter > 200 {
            return Err(Error::RootFinding("shell is not bounded".into()));
        }
    }
    brent(f, 0.0, hi, 1e-15 * hi)
}

/// Intersection chords for a general convex Hamiltonian with one degree of
/// freedom: walk around `H_+ = E` by angle and bracket `H_- - E'`.
fn curve_intersections(q: &TransitionQuery) -> Result<Vec<PhasePoint>> {
    let c = q.model.minimum();
    let x = &q.centre;
    let point = |theta: f64| -> Result<PhasePoint> {
        let dir = PhasePoint::new(vec![theta.cos(), theta.sin()])?;
        let r = shell_radius(&q.model, &c, &dir, q.e)?;
        Ok(&c.axpy(r, &dir) - x)
    };
    let g = |theta: f64| -> Result<f64> {
        let chord = point(theta)?;
        Ok(q.model.value(&(x - &chord)) - q.e_prime)
    };
    const STEPS: usize = 720;
    let step = 2.0 * PI / STEPS as f64;
    let values: Vec<f64> = (0..=STEPS)
        .map(|i| g(step * i as f64))
        .collect::<Result<_>>()?;
    let scale = q.e.max(q.e_prime);
    let mut roots = Vec::new();
    for i in 0..STEPS {
        let (a, b) = (values[i], values[i + 1]);
        if a == 0.0 {
            roots.push(step * i as f64);
        } else if a.signum() != b.signum() && b != 0.0 {
            let t = brent(
                |t| g(t).unwrap_or(f64::NAN),
                step * i as f64,
                step * (i + 1) as f64,
                1e-14,
            )?;
            roots.push(t);
        }
        // A shallow local minimum of |g| without a sign change is a near
        // tangency that the sign scan cannot resolve.
        let prev = values[(i + STEPS - 1) % STEPS];
        if a.abs() < prev.abs() && a.abs() < b.abs() && a.signum() == b.signum() && a.signum() == prev.signum() {
            if a.abs() < 1e-9 * scale {
                return Err(Error::Caustic { bracket: 0.0 });
            }
        }
    }
    roots.into_iter().map(point).collect()
}

/// Gaussian-smeared version of the defining integral with width `s` in
/// both energies, by tensor Gauss–Legendre quadrature over a box that
/// contains the whole `H_+ ≤ E + 12 s` region.
pub fn transition_density_smeared(q: &TransitionQuery, s: f64) -> Result<f64> {
    if q.dof() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: q.centre.dim(),
        });
    }
    require_positive("s", s)?;
    let c = q.model.minimum();
    let x = &q.centre;
    let reach = 12.0 * s;
    let mut radius = 0.0f64;
    let mut grad_max = 0.0f64;
    for i in 0..64 {
        let t = 2.0 * PI * i as f64 / 64.0;
        let dir = PhasePoint::new(vec![t.cos(), t.sin()])?;
        let r = shell_radius(&q.model, &c, &dir, q.e + reach)?;
        radius = radius.max(r);
        let edge = c.axpy(r, &dir);
        grad_max = grad_max.max(q.model.gradient(&edge).norm());
        let r2 = shell_radius(&q.model, &c, &dir, q.e_prime + reach)?;
        grad_max = grad_max.max(q.model.gradient(&c.axpy(r2, &dir)).norm());
    }
    let radius = 1.05 * radius;
    let lo = &(&c - x) * 1.0;
    let (cp, cq) = (lo.p()[0], lo.q()[0]);
    // Each delta band is about s/|∇H| wide; an 8-point panel spanning three
    // band widths resolves it.
    let band = s / grad_max;
    let panels = ((2.0 * radius) / (3.0 * band)).ceil() as usize;
    let norm = 1.0 / (2.0 * PI * s * s);
    let value = integrate_2d(
        |xp, xq| {
            let chord = PhasePoint::from_vec_unchecked(vec![xp, xq]);
            let a = (q.model.value(&(x + &chord)) - q.e) / s;
            let b = (q.model.value(&(x - &chord)) - q.e_prime) / s;
            let e = 0.5 * (a * a + b * b);
            if e > 200.0 {
                0.0
            } else {
                norm * (-e).exp()
            }
        },
        (cp - radius, cp + radius, panels),
        (cq - radius, cq + radius, panels),
        8,
    );
    Ok(value / (2.0 * PI * q.hbar))
}

/// Richardson extrapolation `s → 0` of the smeared density from widths
/// `s, s/2, s/4`, eliminating the `s²` and `s⁴` terms.
pub fn transition_density_nascent(q: &TransitionQuery, s: f64) -> Result<f64> {
    let p1 = transition_density_smeared(q, s)?;
    let p2 = transition_density_smeared(q, 0.5 * s)?;
    let p4 = transition_density_smeared(q, 0.25 * s)?;
    let r1 = (4.0 * p2 - p1) / 3.0;
    let r2 = (4.0 * p4 - p2) / 3.0;
    Ok((16.0 * r2 - r1) / 15.0)
}

/// `C_n = 2π^{(n+1)/2} / Γ((n+1)/2)`: the area of the unit `n`-sphere.
pub fn sphere_area_constant(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(invalid("n", "sphere dimension must be at least 1"));
    }
    let h = 0.5 * (n as f64 + 1.0);
    Ok(2.0 * PI.powf(h) / gamma(h))
}

/// `∫_0^{π/2} sin^m φ dφ` by the reduction `W_m = (m-1)/m W_{m-2}`.
pub fn wallis(m: usize) -> f64 {
    let mut w = if m % 2 == 0 { 0.5 * PI } else { 1.0 };
    let mut k = if m % 2 == 0 { 2 } else { 3 };
    while k <= m {
        w *= (k as f64 - 1.0) / k as f64;
        k += 2;
    }
    w
}

/// Closed form for spherical shells:
/// `P = C_{2N-3} W_{2N-3} |Y_M|^{2N-3} / (ω² Q̃ (2πħ)^N)`.
///
/// The transverse integral `∫ dY Y^{2N-3} / √(Y_M² - Y²)` is reduced to a
/// Wallis integral, so every `N ≥ 2` uses the same expression. For `N = 2`
/// this is `|Y_M| / (2π ħ² ω² Q̃)`, for `N = 3` it is
/// `|Y_M|³ / (6π ħ³ ω² Q̃)`.
pub fn transition_density_spherical(geom: &SectionGeometry, n: usize, hbar: f64) -> Result<f64> {
    if n < 2 {
        return Err(invalid("N", "closed form needs at least two degrees of freedom"));
    }
    require_positive("hbar", hbar)?;
    if !geom.exists() {
        return Ok(0.0);
    }
    let m = 2 * n - 3;
    let c = sphere_area_constant(m)?;
    Ok(c * wallis(m) * geom.y_m().powi(m as i32)
        / (geom.omega * geom.omega * geom.q_tilde * (2.0 * PI * hbar).powi(n as i32)))
}

/// A point of the section found by projecting along a ray.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionSample {
    /// The chord `X` on the section.
    pub point: PhasePoint,
    /// `1/|{H_+, H_-}(X)|`.
    pub weight: f64,
    /// `ρ^{2N-2} / |∂(H_+, H_-)/∂(ρ, Q)|`, the integrand over directions.
    pub chart_weight: f64,
    pub jacobian_ok: bool,
}

/// Monte Carlo settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McOptions {
    /// Number of antipodal direction pairs.
    pub samples: usize,
    pub seed: u64,
    pub batch_size: usize,
    /// Relative standard error above which the result is flagged.
    pub tolerance: Option<f64>,
}

impl McOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            batch_size: 4096,
            tolerance: None,
        }
    }
}

/// Monte Carlo estimate of the transition density.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
    /// Directions whose projection failed.
    pub failed: usize,
    /// Set when the relative standard error exceeds the requested tolerance.
    pub flagged: bool,
}

/// Orthonormal basis of the complement of the unit vector `axis`.
fn complement_basis(axis: &PhasePoint) -> Vec<PhasePoint> {
    let d = axis.dim();
    let n = axis.dof();
    let skip = (0..d)
        .max_by(|&a, &b| axis.as_slice()[a].abs().total_cmp(&axis.as_slice()[b].abs()))
        .expect("non-empty");
    let mut basis = vec![axis.clone()];
    for i in (0..d).filter(|&i| i != skip) {
        let mut v = PhasePoint::basis(n, i);
        for b in &basis {
            let c = v.dot(b);
            v = v.axpy(-c, b);
        }
        let c2: Vec<f64> = basis.iter().map(|b| v.dot(b)).collect();
        for (b, c) in basis.iter().zip(c2) {
            v = v.axpy(-c, b);
        }
        let norm = v.norm();
        basis.push(&v * (1.0 / norm));
    }
    basis.remove(0);
    basis
}

struct RayChart<'a> {
    q: &'a TransitionQuery,
    axis: PhasePoint,
    guess: (f64, f64),
    num: Numerics,
}

impl<'a> RayChart<'a> {
    fn new(q: &'a TransitionQuery) -> Result<Self> {
        let c = q.model.minimum();
        let d = &q.centre - &c;
        let len = d.norm();
        if len == 0.0 {
            return Err(invalid("centre", "coincides with the shell centre; the chart axis is undefined"));
        }
        let g = q.spherical_estimate()?;
        let rho0 = if g.exists() { g.y_m() } else { 1e-3 * g.q_c };
        Ok(Self {
            q,
            axis: &d * (1.0 / len),
            guess: (rho0.max(1e-6 * g.q_c), g.q_s),
            num: Numerics::default(),
        })
    }

    fn chord(&self, dir: &PhasePoint, rho: f64, qq: f64) -> PhasePoint {
        (&self.axis * qq).axpy(rho, dir)
    }

    fn residual(&self, dir: &PhasePoint, rho: f64, qq: f64) -> (f64, f64) {
        let x = &self.q.centre;
        let chord = self.chord(dir, rho, qq);
        (
            self.q.model.value(&(x + &chord)) - self.q.e,
            self.q.model.value(&(x - &chord)) - self.q.e_prime,
        )
    }

    /// `∂(F_1, F_2)/∂(ρ, Q)`.
    fn jacobian(&self, dir: &PhasePoint, rho: f64, qq: f64) -> [[f64; 2]; 2] {
        let x = &self.q.centre;
        let chord = self.chord(dir, rho, qq);
        let gp = self.q.model.gradient(&(x + &chord));
        let gm = self.q.model.gradient(&(x - &chord));
        [
            [gp.dot(dir), gp.dot(&self.axis)],
            [-gm.dot(dir), -gm.dot(&self.axis)],
        ]
    }

    fn newton(&self, dir: &PhasePoint, start: (f64, f64)) -> Option<(f64, f64)> {
        let (mut rho, mut qq) = start;
        let scale = self.q.e.max(self.q.e_prime);
        let mut f = self.residual(dir, rho, qq);
        for _ in 0..self.num.newton_max_iter {
            let norm = f.0.abs().max(f.1.abs());
            if norm <= self.num.newton_tol * scale {
                return (rho > 0.0).then_some((rho, qq));
            }
            let j = self.jacobian(dir, rho, qq);
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det == 0.0 || !det.is_finite() {
                return None;
            }
            let d_rho = (j[1][1] * f.0 - j[0][1] * f.1) / det;
            let d_q = (-j[1][0] * f.0 + j[0][0] * f.1) / det;
            let mut t = 1.0;
            loop {
                let (r2, q2) = (rho - t * d_rho, qq - t * d_q);
                let f2 = self.residual(dir, r2, q2);
                if f2.0.abs().max(f2.1.abs()) < norm || t < 1e-6 {
                    rho = r2;
                    qq = q2;
                    f = f2;
                    break;
                }
                t *= 0.5;
            }
        }
        None
    }

    fn project(&self, dir: &PhasePoint) -> Option<SectionSample> {
        let (r0, q0) = self.guess;
        let starts = [(r0, q0), (0.5 * r0, q0), (1.5 * r0, q0), (0.25 * r0, 0.0)];
        let (rho, qq) = starts.iter().find_map(|&s| self.newton(dir, s))?;
        let j = self.jacobian(dir, rho, qq);
        let det = (j[0][0] * j[1][1] - j[0][1] * j[1][0]).abs();
        let chord = self.chord(dir, rho, qq);
        let pb = poisson_bracket(&self.q.frame(), &chord).ok()?;
        let n = self.q.dof();
        let ok = det > 0.0 && pb != 0.0;
        Some(SectionSample {
            point: chord,
            weight: if pb != 0.0 { 1.0 / pb.abs() } else { f64::INFINITY },
            chart_weight: if det > 0.0 {
                rho.powi(2 * n as i32 - 2) / det
            } else {
                f64::INFINITY
            },
            jacobian_ok: ok,
        })
    }
}

/// Projects onto the section along the ray in direction `dir`, which must
/// be orthogonal to the axis from the shell centre to `x`.
pub fn project_to_section(q: &TransitionQuery, dir: &PhasePoint) -> Result<Option<SectionSample>> {
    let chart = RayChart::new(q)?;
    if dir.dim() != q.centre.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.centre.dim(),
            found: dir.dim(),
        });
    }
    let off_axis = dir.dot(&chart.axis);
    if off_axis.abs() > 1e-12 * dir.norm() {
        return Err(invalid("dir", "must be orthogonal to the chart axis"));
    }
    Ok(chart.project(&(dir * (1.0 / dir.norm()))))
}

#[derive(Clone, Copy, Default)]
struct BatchStats {
    sum: f64,
    sum_sq: f64,
    count: usize,
    failed: usize,
}

fn random_direction(rng: &mut ChaCha8Rng, basis: &[PhasePoint]) -> PhasePoint {
    let mut v = PhasePoint::zeros(basis[0].dof());
    loop {
        for b in basis {
            let g: f64 = rng.sample(StandardNormal);
            v = v.axpy(g, b);
        }
        let norm = v.norm();
        if norm > 1e-12 {
            return &v * (1.0 / norm);
        }
    }
}

/// Monte Carlo estimate of `P_EE'(x)` for `N ≥ 2`.
///
/// Batches draw from `ChaCha8` streams keyed by `(seed, batch index)` and are
/// reduced in batch order, so the result depends only on
/// `(seed, samples, batch_size)`.
pub fn transition_density_mc(q: &TransitionQuery, opts: &McOptions) -> Result<McEstimate> {
    let n = q.dof();
    if n < 2 {
        return Err(invalid("N", "Monte Carlo section integral needs N ≥ 2"));
    }
    if opts.samples < 2 || opts.batch_size == 0 {
        return Err(invalid("samples", "need at least two samples and a positive batch size"));
    }
    let chart = RayChart::new(q)?;
    let basis = complement_basis(&chart.axis);
    let zero = McEstimate {
        value: 0.0,
        stderr: 0.0,
        samples: opts.samples,
        failed: 0,
        flagged: false,
    };
    if !q.spherical_estimate()?.exists() {
        // Pilot: if no direction reaches the section there is none.
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(u64::MAX);
        let found = (0..64).any(|_| chart.project(&random_direction(&mut rng, &basis)).is_some());
        if !found {
            return Ok(zero);
        }
    }
    let batches = opts.samples.div_ceil(opts.batch_size);
    let stats: Vec<BatchStats> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(b as u64);
            let count = opts.batch_size.min(opts.samples - b * opts.batch_size);
            let mut s = BatchStats::default();
            for _ in 0..count {
                let u = random_direction(&mut rng, &basis);
                let mut acc = 0.0;
                let mut ok = 0;
                for dir in [u.clone(), -&u] {
                    match chart.project(&dir) {
                        Some(sample) if sample.jacobian_ok => {
                            acc += sample.chart_weight;
                            ok += 1;
                        }
                        _ => s.failed += 1,
                    }
                }
                if ok > 0 {
                    let v = acc / ok as f64;
                    s.sum += v;
                    s.sum_sq += v * v;
                    s.count += 1;
                }
            }
            s
        })
        .collect();
    let total = stats.iter().fold(BatchStats::default(), |a, s| BatchStats {
        sum: a.sum + s.sum,
        sum_sq: a.sum_sq + s.sum_sq,
        count: a.count + s.count,
        failed: a.failed + s.failed,
    });
    let directions = 2 * opts.samples;
    if total.failed as f64 > chart.num.max_projection_failure * directions as f64 || total.count < 2 {
        return Err(Error::Projection {
            failed: total.failed,
            total: directions,
        });
    }
    let m = total.count as f64;
    let mean = total.sum / m;
    let var = ((total.sum_sq - m * mean * mean) / (m - 1.0)).max(0.0);
    let scale = sphere_area_constant(2 * n - 2)? / (2.0 * PI * q.hbar).powi(n as i32);
    let value = mean * scale;
    let stderr = (var / m).sqrt() * scale;
    let flagged = opts
        .tolerance
        .map(|tol| stderr > tol * value.abs())
        .unwrap_or(false);
    Ok(McEstimate {
        value,
        stderr,
        samples: opts.samples,
        failed: total.failed,
        flagged,
    })
}

/// Offsets `Q̃` approaching the caustic from below, and the sampling used at
/// each.
#[derive(Clone, Debug, PartialEq)]
pub struct CausticScan {
    pub e: f64,
    pub e_prime: f64,
    /// Fractions `Q̃ / Q_c`, all below 1.
    pub fractions: Vec<f64>,
    pub mc: McOptions,
}

/// Result of a log–log fit of `P Q̃` against `|Y_M|`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingFit {
    pub slope: f64,
    /// `(|Y_M|, P Q̃)` pairs that entered the fit.
    pub points: Vec<(f64, f64)>,
}

/// Least-squares slope of `ln y` against `ln x` over positive pairs.
pub fn log_log_slope(points: &[(f64, f64)]) -> Result<f64> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if usable.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "{} usable points, need at least 4",
            usable.len()
        )));
    }
    let n = usable.len() as f64;
    let mx = usable.iter().map(|p| p.0).sum::<f64>() / n;
    let my = usable.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = usable.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = usable.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Fits the exponent of `P ∝ |Y_M|^{2N-3}` from Monte Carlo estimates on a
/// spherical model as `Q̃` approaches the caustic.
///
/// The density also carries an explicit factor `1/Q̃`, which moves along the
/// scan; it is removed before fitting so that only the section radius is
/// measured.
pub fn scaling_exponent_fit(
    model: &HamiltonianModel,
    hbar: f64,
    scan: &CausticScan,
) -> Result<ScalingFit> {
    let HamiltonianModel::Spherical { omega, centre } = model else {
        return Err(invalid("model", "the caustic scan expects a spherical model"));
    };
    let qc = crate::section::caustic_offset(*omega, scan.e, scan.e_prime);
    let mut points = Vec::with_capacity(scan.fractions.len());
    for &f in &scan.fractions {
        if !(f > 0.0 && f < 1.0) {
            return Err(invalid("fractions", format!("{f} is not inside (0, 1)")));
        }
        let g = build_section(*omega, f * qc, scan.e, scan.e_prime)?;
        if !g.exists() {
            continue;
        }
        let x = g.reflection_centre(centre);
        let q = TransitionQuery::new(model.clone(), x, scan.e, scan.e_prime, hbar)?;
        let est = transition_density_mc(&q, &scan.mc)?;
        points.push((g.y_m(), est.value * g.q_tilde));
    }
    let slope = log_log_slope(&points)?;
    Ok(ScalingFit { slope, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn osc1() -> HamiltonianModel {
        HamiltonianModel::spherical(1.0, PhasePoint::zeros(1)).unwrap()
    }

    #[test]
    fn printed_one_dimensional_example() {
        let q = TransitionQuery::new(osc1(), PhasePoint::new(vec![0.0, 1.0]).unwrap(), 2.0, 2.0, 1.0)
            .unwrap();
        let p = transition_density_1d(&q).unwrap();
        assert!((p - 1.0 / (2.0 * PI * 3f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn disjoint_shells_give_zero() {
        let q = TransitionQuery::new(osc1(), PhasePoint::new(vec![0.0, 2.5]).unwrap(), 2.0, 2.0, 1.0)
            .unwrap();
        assert_eq!(transition_density_1d(&q).unwrap(), 0.0);
    }

    #[test]
    fn tangent_shells_raise_caustic() {
        let q = TransitionQuery::new(osc1(), PhasePoint::new(vec![0.0, 2.0]).unwrap(), 2.0, 2.0, 1.0)
            .unwrap();
        assert!(matches!(transition_density_1d(&q), Err(Error::Caustic { .. })));
    }

    #[test]
    fn rotation_invariance_in_one_dimension() {
        let a = TransitionQuery::new(osc1(), PhasePoint::new(vec![0.0, 1.2]).unwrap(), 2.0, 1.5, 0.5)
            .unwrap();
        let t: f64 = 0.7;
        let b = TransitionQuery::new(
            osc1(),
            PhasePoint::new(vec![1.2 * t.sin(), 1.2 * t.cos()]).unwrap(),
            2.0,
            1.5,
            0.5,
        )
        .unwrap();
        let (pa, pb) = (transition_density_1d(&a).unwrap(), transition_density_1d(&b).unwrap());
        assert!((pa - pb).abs() < 1e-13 * pa);
    }

    #[test]
    fn quartic_curve_walk_reduces_to_circle() {
        let omega = 1.3;
        let c = PhasePoint::new(vec![0.0, 0.9]).unwrap();
        let sph = HamiltonianModel::spherical(omega, PhasePoint::zeros(1)).unwrap();
        let quart = HamiltonianModel::quartic(vec![omega], 0.0).unwrap();
        let a = TransitionQuery::new(sph, c.clone(), 1.7, 1.1, 1.0).unwrap();
        let b = TransitionQuery::new(quart, c, 1.7, 1.1, 1.0).unwrap();
        let (pa, pb) = (transition_density_1d(&a).unwrap(), transition_density_1d(&b).unwrap());
        assert!((pa - pb).abs() < 1e-10 * pa, "{pa} {pb}");
    }

    #[test]
    fn nascent_delta_agrees_with_bracket_sum() {
        let x = PhasePoint::new(vec![0.3, 1.0]).unwrap();
        for model in [osc1(), HamiltonianModel::quartic(vec![1.0], 0.1).unwrap()] {
            let q = TransitionQuery::new(model, x.clone(), 2.0, 1.6, 1.0).unwrap();
            let a = transition_density_1d(&q).unwrap();
            let b = transition_density_nascent(&q, 0.08).unwrap();
            assert!((a - b).abs() < 1e-6 * a, "{a} {b}");
        }
    }

    #[test]
    fn sphere_constants() {
        assert!((sphere_area_constant(1).unwrap() - 2.0 * PI).abs() < 1e-13);
        assert!((sphere_area_constant(2).unwrap() - 4.0 * PI).abs() < 1e-13);
        assert!((sphere_area_constant(3).unwrap() - 2.0 * PI * PI).abs() < 1e-12);
        // C_4 = 8π²/3, C_5 = π³.
        assert!((sphere_area_constant(4).unwrap() / (8.0 * PI * PI / 3.0) - 1.0).abs() < 1e-12);
        assert!((sphere_area_constant(5).unwrap() / PI.powi(3) - 1.0).abs() < 1e-12);
        assert!(sphere_area_constant(0).is_err());
    }

    #[test]
    fn wallis_values() {
        assert!((wallis(0) - PI / 2.0).abs() < 1e-15);
        assert_eq!(wallis(1), 1.0);
        assert!((wallis(3) - 2.0 / 3.0).abs() < 1e-15);
        assert!((wallis(5) - 8.0 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn spherical_closed_forms() {
        let g = build_section(1.0, 1.0, 2.0, 2.0).unwrap();
        let p2 = transition_density_spherical(&g, 2, 1.0).unwrap();
        assert!((p2 - 3f64.sqrt() / (2.0 * PI)).abs() < 1e-14);
        let p3 = transition_density_spherical(&g, 3, 1.0).unwrap();
        assert!((p3 - 3f64.powf(1.5) / (6.0 * PI)).abs() < 1e-14);
        let at_caustic = build_section(1.0, 2.0, 2.0, 2.0).unwrap();
        assert_eq!(transition_density_spherical(&at_caustic, 2, 1.0).unwrap(), 0.0);
        let beyond = build_section(1.0, 2.1, 2.0, 2.0).unwrap();
        assert_eq!(transition_density_spherical(&beyond, 3, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn spherical_monte_carlo_is_exact() {
        let g = build_section(1.0, 1.0, 2.0, 1.5).unwrap();
        for n in 2..=4 {
            let model = HamiltonianModel::spherical(1.0, PhasePoint::zeros(n)).unwrap();
            let q = TransitionQuery::new(model, g.reflection_centre(&PhasePoint::zeros(n)), 2.0, 1.5, 1.0)
                .unwrap();
            let est = transition_density_mc(&q, &McOptions::new(200, 7)).unwrap();
            let exact = transition_density_spherical(&g, n, 1.0).unwrap();
            assert!((est.value / exact - 1.0).abs() < 1e-10, "N = {n}");
            assert!(est.stderr < 1e-10 * exact);
        }
    }

    #[test]
    fn monte_carlo_without_section_is_zero() {
        let model = HamiltonianModel::spherical(1.0, PhasePoint::zeros(2)).unwrap();
        let x = PhasePoint::new(vec![0.0, 0.0, 0.0, 3.0]).unwrap();
        let q = TransitionQuery::new(model, x, 2.0, 2.0, 1.0).unwrap();
        let est = transition_density_mc(&q, &McOptions::new(100, 1)).unwrap();
        assert_eq!((est.value, est.stderr), (0.0, 0.0));
    }

    #[test]
    fn slope_needs_four_points() {
        assert!(log_log_slope(&[(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)]).is_err());
        let pts: Vec<(f64, f64)> = (1..6).map(|i| (i as f64, (i as f64).powi(3))).collect();
        assert!((log_log_slope(&pts).unwrap() - 3.0).abs() < 1e-12);
    }
}
