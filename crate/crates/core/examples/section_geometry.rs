//! The section of two reflected spherical shells: its scalars, a few points
//! on it, and their shell residuals.

use phasereflect::section::*;
use phasereflect::symplectic::{HamiltonianModel, PhasePoint};

fn main() -> phasereflect::Result<()> {
    let (omega, e, e_prime) = (1.0, 2.0, 1.5);
    let model = HamiltonianModel::spherical(omega, PhasePoint::zeros(2))?;
    for q_tilde in [0.5, 1.0, 1.5, caustic_offset(omega, e, e_prime)] {
        let g = build_section(omega, q_tilde, e, e_prime)?;
        println!("Q̃ = {q_tilde:.4}: Q_s = {:.4}, Y_M² = {:.3e}, exists {}", g.q_s, g.y_m_sq, g.exists());
        if g.y_m_sq <= 0.0 {
            continue;
        }
        let x = g.reflection_centre(&PhasePoint::zeros(2));
        for y in [[0.0, 0.0], [0.3 * g.y_m(), -0.2 * g.y_m()]] {
            let chord = g.point(&y, true)?;
            let (r, r_prime) = section_point_check(&model, &x, &chord, e, e_prime)?;
            println!("    y = {y:?}: residuals {r:.1e} {r_prime:.1e}");
        }
    }
    Ok(())
}
