//! Lorentzian-smoothed spectral Wigner function of the oscillator against
//! the uniform Airy approximation across the energy shell.

use phasereflect::spectral::{spectral_bridge, SpectralParams};

fn main() -> phasereflect::Result<()> {
    let hbar = 0.05;
    let params = SpectralParams::new(5000.0, 3.0 * hbar, hbar)?;
    let bridge = spectral_bridge(&params, 1.0, (-8.0, 5.0), 27)?;
    println!("{:>10} {:>8} {:>14} {:>14}", "radius", "z", "exact", "airy");
    for s in &bridge.samples {
        println!("{:>10.5} {:>8.3} {:>14.6e} {:>14.6e}", s.radius, s.z, s.exact, s.airy);
    }
    println!("RMS / peak = {:.3}", bridge.rms_rel_peak);
    Ok(())
}
