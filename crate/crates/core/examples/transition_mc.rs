//! Classical transition densities for two and three freedoms: the closed
//! spherical form, the Monte Carlo ray chart, and the quartic model.

use phasereflect::section::build_section;
use phasereflect::symplectic::{HamiltonianModel, PhasePoint};
use phasereflect::transition::*;

fn main() -> phasereflect::Result<()> {
    let (e, e_prime, hbar) = (2.0, 1.5, 1.0);
    let g = build_section(1.0, 1.0, e, e_prime)?;
    for n in [2, 3] {
        let model = HamiltonianModel::spherical(1.0, PhasePoint::zeros(n))?;
        let q = TransitionQuery::new(model, g.reflection_centre(&PhasePoint::zeros(n)), e, e_prime, hbar)?;
        let mc = transition_density_mc(&q, &McOptions::new(20_000, 1))?;
        let closed = transition_density_spherical(&g, n, hbar)?;
        println!("N = {n}: closed {closed:.10}  MC {:.10} ± {:.1e}", mc.value, mc.stderr);
    }
    for lambda in [0.0, 0.01, 0.05, 0.2] {
        let model = if lambda == 0.0 {
            HamiltonianModel::spherical(1.0, PhasePoint::zeros(2))?
        } else {
            HamiltonianModel::quartic(vec![1.0, 1.0], lambda)?
        };
        let q = TransitionQuery::new(model, g.reflection_centre(&PhasePoint::zeros(2)), e, e_prime, hbar)?;
        let mc = transition_density_mc(&q, &McOptions::new(20_000, 1))?;
        println!("λ = {lambda}: P = {:.6} ± {:.1e}", mc.value, mc.stderr);
    }
    Ok(())
}
