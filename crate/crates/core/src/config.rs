//! Numerical settings shared by every module.
//!
//! Tolerances live here rather than at call sites so that a single record
//! describes how a run was computed.

/// Default reduced Planck constant.
pub const DEFAULT_HBAR: f64 = 1.0;

/// Relative step used by central finite differences, scaled by `max(1, |x|)`.
pub fn fd_step(x: f64) -> f64 {
    f64::EPSILON.cbrt() * x.abs().max(1.0)
}

/// Tolerances and resolution knobs.
#[derive(Clone, Debug, PartialEq)]
pub struct Numerics {
    /// Absolute tolerance for adaptive one-dimensional quadrature.
    pub quad_abs_tol: f64,
    /// Relative tolerance for adaptive one-dimensional quadrature.
    pub quad_rel_tol: f64,
    /// Maximum bisection depth of the adaptive integrator.
    pub quad_max_depth: usize,
    /// Gauss-Legendre order used on each panel.
    pub panel_order: usize,
    /// Grid boundary magnitude (relative to the peak) above which a grid is rejected.
    pub grid_boundary_tol: f64,
    /// Largest tail estimate accepted from a truncated spectral sum.
    pub spectral_tail_tol: f64,
    /// Newton tolerance when projecting onto the section.
    pub newton_tol: f64,
    /// Newton iteration cap.
    pub newton_max_iter: usize,
    /// Fraction of failed projections above which Monte Carlo aborts.
    pub max_projection_failure: f64,
    /// Relative size of the Poisson bracket below which shells count as tangent.
    pub tangency_tol: f64,
    /// Airy argument beyond which the evanescent side is treated as zero.
    pub airy_cutoff: f64,
}

impl Default for Numerics {
    fn default() -> Self {
        Self {
            quad_abs_tol: 1e-13,
            quad_rel_tol: 1e-11,
            quad_max_depth: 40,
            panel_order: 10,
            grid_boundary_tol: 1e-12,
            spectral_tail_tol: 1e-8,
            newton_tol: 1e-13,
            newton_max_iter: 60,
            max_projection_failure: 0.2,
            tangency_tol: 1e-8,
            airy_cutoff: 40.0,
        }
    }
}
