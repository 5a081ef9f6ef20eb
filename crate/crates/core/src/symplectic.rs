//! Phase-space points, the skew product, reflections and Hamiltonian models.
//!
//! Coordinates are ordered `(p_1, .., p_N, q_1, .., q_N)`. The symplectic
//! matrix acts as `J (a_p, a_q) = (-a_q, a_p)` and the skew product is
//! `a ∧ b = (J a) · b = a_p · b_q - a_q · b_p`.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;

use crate::config::fd_step;
use crate::error::{invalid, require_finite, require_positive, Error, Result};

/// A point (or chord) in a `2N`-dimensional phase space.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePoint {
    coords: Vec<f64>,
}

impl PhasePoint {
    /// Builds a point from `(p_1..p_N, q_1..q_N)`.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || coords.len() % 2 != 0 {
            return Err(invalid(
                "coords",
                format!("phase-space dimension must be even and positive, got {}", coords.len()),
            ));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(invalid("coords", format!("non-finite coordinate {bad}")));
        }
        Ok(Self { coords })
    }

    pub fn from_pq(p: &[f64], q: &[f64]) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::DimensionMismatch {
                expected: p.len(),
                found: q.len(),
            });
        }
        let mut coords = p.to_vec();
        coords.extend_from_slice(q);
        Self::new(coords)
    }

    /// The origin of an `n`-degree-of-freedom phase space.
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "phase space needs at least one degree of freedom");
        Self {
            coords: vec![0.0; 2 * n],
        }
    }

    /// Unit vector along coordinate `index` of a `2n`-dimensional space.
    pub fn basis(n: usize, index: usize) -> Self {
        let mut x = Self::zeros(n);
        x.coords[index] = 1.0;
        x
    }

    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty() && coords.len() % 2 == 0);
        Self { coords }
    }

    pub fn dof(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn p(&self) -> &[f64] {
        &self.coords[..self.dof()]
    }

    pub fn q(&self) -> &[f64] {
        &self.coords[self.dof()..]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coords
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.coords
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// `J x`.
    pub fn j(&self) -> Self {
        let n = self.dof();
        let mut out = vec![0.0; 2 * n];
        for i in 0..n {
            out[i] = -self.coords[n + i];
            out[n + i] = self.coords[i];
        }
        Self { coords: out }
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: f64, other: &Self) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + s * b)
                .collect(),
        }
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }
}

impl Add for &PhasePoint {
    type Output = PhasePoint;
    fn add(self, rhs: &PhasePoint) -> PhasePoint {
        self.axpy(1.0, rhs)
    }
}

impl Sub for &PhasePoint {
    type Output = PhasePoint;
    fn sub(self, rhs: &PhasePoint) -> PhasePoint {
        self.axpy(-1.0, rhs)
    }
}

impl Neg for &PhasePoint {
    type Output = PhasePoint;
    fn neg(self) -> PhasePoint {
        self * -1.0
    }
}

impl Mul<f64> for &PhasePoint {
    type Output = PhasePoint;
    fn mul(self, s: f64) -> PhasePoint {
        PhasePoint {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }
}

/// Symplectic area `a ∧ b = a_p · b_q - a_q · b_p`.
pub fn skew_product(a: &PhasePoint, b: &PhasePoint) -> Result<f64> {
    a.same_dim(b)?;
    Ok(skew_unchecked(a, b))
}

pub(crate) fn skew_unchecked(a: &PhasePoint, b: &PhasePoint) -> f64 {
    let n = a.dof();
    let (c, d) = (a.as_slice(), b.as_slice());
    (0..n).map(|i| c[i] * d[n + i] - c[n + i] * d[i]).sum()
}

/// Reflection of `point` through `centre`: `2 centre - point`.
pub fn reflect(centre: &PhasePoint, point: &PhasePoint) -> Result<PhasePoint> {
    centre.same_dim(point)?;
    Ok(&(centre * 2.0) - point)
}

/// A smooth Hamiltonian on phase space.
pub trait Hamiltonian: Send + Sync {
    fn dof(&self) -> usize;

    fn value(&self, x: &PhasePoint) -> f64;

    fn gradient(&self, x: &PhasePoint) -> PhasePoint;

    /// Hessian; the default differentiates the gradient numerically.
    fn hessian(&self, x: &PhasePoint) -> DMatrix<f64> {
        let d = x.dim();
        let mut h = DMatrix::zeros(d, d);
        for j in 0..d {
            let step = fd_step(x.as_slice()[j]);
            let mut up = x.clone();
            up.as_mut_slice()[j] += step;
            let mut down = x.clone();
            down.as_mut_slice()[j] -= step;
            let gu = self.gradient(&up);
            let gd = self.gradient(&down);
            for i in 0..d {
                h[(i, j)] = (gu.as_slice()[i] - gd.as_slice()[i]) / (2.0 * step);
            }
        }
        (&h + h.transpose()) * 0.5
    }
}

impl<T: Hamiltonian + ?Sized> Hamiltonian for &T {
    fn dof(&self) -> usize {
        (**self).dof()
    }
    fn value(&self, x: &PhasePoint) -> f64 {
        (**self).value(x)
    }
    fn gradient(&self, x: &PhasePoint) -> PhasePoint {
        (**self).gradient(x)
    }
    fn hessian(&self, x: &PhasePoint) -> DMatrix<f64> {
        (**self).hessian(x)
    }
}

fn check_dof<H: Hamiltonian + ?Sized>(h: &H, x: &PhasePoint) -> Result<()> {
    if x.dof() == h.dof() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: 2 * h.dof(),
            found: x.dim(),
        })
    }
}

/// Energy at `x`, with a dimension check.
pub fn energy<H: Hamiltonian + ?Sized>(h: &H, x: &PhasePoint) -> Result<f64> {
    check_dof(h, x)?;
    Ok(h.value(x))
}

/// Hamiltonian velocity `J ∇H`, i.e. `(ṗ, q̇) = (-∂H/∂q, ∂H/∂p)`.
pub fn velocity<H: Hamiltonian + ?Sized>(h: &H, x: &PhasePoint) -> Result<PhasePoint> {
    check_dof(h, x)?;
    Ok(h.gradient(x).j())
}

/// The Hamiltonians used throughout the crate.
#[derive(Clone, Debug, PartialEq)]
pub enum HamiltonianModel {
    /// `Σ ω_n ((p_n - c_pn)² + (q_n - c_qn)²) / 2`.
    AnisotropicHarmonic { omegas: Vec<f64>, centre: PhasePoint },
    /// `ω |x - c|² / 2`.
    Spherical { omega: f64, centre: PhasePoint },
    /// `Σ ω_n (p_n² + q_n²) / 2 + λ (Σ q_n²)²`.
    QuarticPerturbed { omegas: Vec<f64>, lambda: f64 },
}

impl HamiltonianModel {
    pub fn spherical(omega: f64, centre: PhasePoint) -> Result<Self> {
        require_positive("omega", omega)?;
        Ok(Self::Spherical { omega, centre })
    }

    pub fn anisotropic(omegas: Vec<f64>, centre: PhasePoint) -> Result<Self> {
        if omegas.len() != centre.dof() {
            return Err(Error::DimensionMismatch {
                expected: 2 * omegas.len(),
                found: centre.dim(),
            });
        }
        for &w in &omegas {
            require_positive("omegas", w)?;
        }
        Ok(Self::AnisotropicHarmonic { omegas, centre })
    }

    pub fn quartic(omegas: Vec<f64>, lambda: f64) -> Result<Self> {
        if omegas.is_empty() {
            return Err(invalid("omegas", "need at least one frequency"));
        }
        for &w in &omegas {
            require_positive("omegas", w)?;
        }
        require_finite("lambda", lambda)?;
        if lambda < 0.0 {
            return Err(invalid("lambda", "negative quartic term leaves the shells non-compact"));
        }
        Ok(Self::QuarticPerturbed { omegas, lambda })
    }

    /// The minimum of `H` (the shell centre).
    pub fn minimum(&self) -> PhasePoint {
        match self {
            Self::AnisotropicHarmonic { centre, .. } | Self::Spherical { centre, .. } => {
                centre.clone()
            }
            Self::QuarticPerturbed { omegas, .. } => PhasePoint::zeros(omegas.len()),
        }
    }

    /// Frequency of each degree of freedom at the minimum.
    pub fn frequencies(&self) -> Vec<f64> {
        match self {
            Self::AnisotropicHarmonic { omegas, .. } | Self::QuarticPerturbed { omegas, .. } => {
                omegas.clone()
            }
            Self::Spherical { omega, centre } => vec![*omega; centre.dof()],
        }
    }

    fn omega(&self, n: usize) -> f64 {
        match self {
            Self::AnisotropicHarmonic { omegas, .. } | Self::QuarticPerturbed { omegas, .. } => {
                omegas[n]
            }
            Self::Spherical { omega, .. } => *omega,
        }
    }
}

impl Hamiltonian for HamiltonianModel {
    fn dof(&self) -> usize {
        match self {
            Self::AnisotropicHarmonic { omegas, .. } | Self::QuarticPerturbed { omegas, .. } => {
                omegas.len()
            }
            Self::Spherical { centre, .. } => centre.dof(),
        }
    }

    fn value(&self, x: &PhasePoint) -> f64 {
        let n = self.dof();
        let c = self.minimum();
        let (xs, cs) = (x.as_slice(), c.as_slice());
        let mut h = 0.0;
        for i in 0..n {
            let dp = xs[i] - cs[i];
            let dq = xs[n + i] - cs[n + i];
            h += 0.5 * self.omega(i) * (dp * dp + dq * dq);
        }
        if let Self::QuarticPerturbed { lambda, .. } = self {
            let s: f64 = x.q().iter().map(|q| q * q).sum();
            h += lambda * s * s;
        }
        h
    }

    fn gradient(&self, x: &PhasePoint) -> PhasePoint {
        let n = self.dof();
        let c = self.minimum();
        let (xs, cs) = (x.as_slice(), c.as_slice());
        let mut g = vec![0.0; 2 * n];
        for i in 0..n {
            let w = self.omega(i);
            g[i] = w * (xs[i] - cs[i]);
            g[n + i] = w * (xs[n + i] - cs[n + i]);
        }
        if let Self::QuarticPerturbed { lambda, .. } = self {
            let s: f64 = x.q().iter().map(|q| q * q).sum();
            for i in 0..n {
                g[n + i] += 4.0 * lambda * s * xs[n + i];
            }
        }
        PhasePoint::from_vec_unchecked(g)
    }

    fn hessian(&self, x: &PhasePoint) -> DMatrix<f64> {
        let n = self.dof();
        let mut h = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            h[(i, i)] = self.omega(i);
            h[(n + i, n + i)] = self.omega(i);
        }
        if let Self::QuarticPerturbed { lambda, .. } = self {
            let q = x.q();
            let s: f64 = q.iter().map(|v| v * v).sum();
            for i in 0..n {
                for j in 0..n {
                    let delta = if i == j { s } else { 0.0 };
                    h[(n + i, n + j)] += 4.0 * lambda * (delta + 2.0 * q[i] * q[j]);
                }
            }
        }
        h
    }
}

/// `H` composed with the reflection through `centre`: `H(2 centre - y)`.
#[derive(Clone, Debug)]
pub struct Reflected<H> {
    inner: H,
    centre: PhasePoint,
}

impl<H: Hamiltonian> Hamiltonian for Reflected<H> {
    fn dof(&self) -> usize {
        self.inner.dof()
    }
    fn value(&self, y: &PhasePoint) -> f64 {
        self.inner.value(&(&(&self.centre * 2.0) - y))
    }
    fn gradient(&self, y: &PhasePoint) -> PhasePoint {
        -&self.inner.gradient(&(&(&self.centre * 2.0) - y))
    }
    fn hessian(&self, y: &PhasePoint) -> DMatrix<f64> {
        self.inner.hessian(&(&(&self.centre * 2.0) - y))
    }
}

/// A reflection centre `x` together with `H_±(X) = H(x ± X)`.
#[derive(Clone, Debug)]
pub struct ReflectionFrame<H> {
    hamiltonian: H,
    centre: PhasePoint,
}

impl<H: Hamiltonian> ReflectionFrame<H> {
    pub fn new(hamiltonian: H, centre: PhasePoint) -> Result<Self> {
        check_dof(&hamiltonian, &centre)?;
        Ok(Self {
            hamiltonian,
            centre,
        })
    }

    pub fn hamiltonian(&self) -> &H {
        &self.hamiltonian
    }

    pub fn centre(&self) -> &PhasePoint {
        &self.centre
    }

    pub fn dof(&self) -> usize {
        self.centre.dof()
    }

    pub fn h_plus(&self, chord: &PhasePoint) -> f64 {
        self.hamiltonian.value(&(&self.centre + chord))
    }

    pub fn h_minus(&self, chord: &PhasePoint) -> f64 {
        self.hamiltonian.value(&(&self.centre - chord))
    }

    /// `∂H_+/∂X`.
    pub fn grad_plus(&self, chord: &PhasePoint) -> PhasePoint {
        self.hamiltonian.gradient(&(&self.centre + chord))
    }

    /// `∂H_-/∂X`.
    pub fn grad_minus(&self, chord: &PhasePoint) -> PhasePoint {
        -&self.hamiltonian.gradient(&(&self.centre - chord))
    }

    pub fn velocity_plus(&self, chord: &PhasePoint) -> PhasePoint {
        self.grad_plus(chord).j()
    }

    pub fn velocity_minus(&self, chord: &PhasePoint) -> PhasePoint {
        self.grad_minus(chord).j()
    }

    /// The frame with the roles of `H_+` and `H_-` exchanged.
    pub fn swapped(&self) -> ReflectionFrame<Reflected<H>>
    where
        H: Clone,
    {
        ReflectionFrame {
            hamiltonian: Reflected {
                inner: self.hamiltonian.clone(),
                centre: self.centre.clone(),
            },
            centre: self.centre.clone(),
        }
    }
}

/// `{H_+, H_-}(X) = ∂_P H_+ ∂_Q H_- - ∂_Q H_+ ∂_P H_-`.
pub fn poisson_bracket<H: Hamiltonian>(frame: &ReflectionFrame<H>, chord: &PhasePoint) -> Result<f64> {
    frame.centre.same_dim(chord)?;
    Ok(skew_unchecked(&frame.grad_plus(chord), &frame.grad_minus(chord)))
}
