//! The one-freedom caustic: Airy quadrature, the closed Ai² form with a
//! calibrated amplitude, and the classical density with its fringes
//! averaged.

use phasereflect::caustic::*;

fn main() -> phasereflect::Result<()> {
    let frame = CausticFrame1D::new(1.0, 0.01, 1.0, 2.0, 2.0)?;
    let cal = calibrate_kappa(&frame, 3.0, 25)?;
    println!("κ = {:.5}", cal.kappa);
    println!("{:>6} {:>10} {:>14} {:>14}", "s", "Q̃", "quadrature", "closed");
    for s in [-8.0, -4.0, -2.0, 0.0, 1.0, 2.0, 4.0] {
        let f = frame.with_q_tilde(q_tilde_at(&frame, s)?)?;
        let quad = transition_density_airy_quadrature(&f, WidthMode::Exact)?.value;
        let closed = transition_density_airy_closed(&f, cal.kappa)?;
        println!("{s:>6.1} {:>10.6} {quad:>14.6e} {closed:>14.6e}", f.q_tilde);
    }
    let (exponent, peaks) = peak_exponent(&frame, &[0.005, 0.01, 0.02, 0.03])?;
    println!("peak height ∝ ħ^{exponent:.3} over {peaks:?}");
    Ok(())
}
