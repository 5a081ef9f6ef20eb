//! One-freedom transition density: the bracket sum over intersection
//! points against Gaussian-smeared delta functions extrapolated to zero
//! width.

use phasereflect::symplectic::{HamiltonianModel, PhasePoint};
use phasereflect::transition::*;

fn main() -> phasereflect::Result<()> {
    let model = HamiltonianModel::anisotropic(vec![1.0], PhasePoint::new(vec![0.1, -0.2])?)?;
    for (p, q) in [(0.0, 0.8), (0.3, 1.2), (-0.5, 0.4)] {
        let query = TransitionQuery::new(model.clone(), PhasePoint::new(vec![p, q])?, 2.0, 1.5, 1.0)?;
        let exact = transition_density_1d(&query)?;
        let nascent = transition_density_nascent(&query, 0.08)?;
        println!("x = ({p}, {q}): bracket sum {exact:.8}  nascent {nascent:.8}  rel {:.1e}", (nascent / exact - 1.0).abs());
    }
    Ok(())
}
