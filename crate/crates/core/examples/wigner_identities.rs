//! Oscillator Wigner functions: transition probabilities from the
//! reflection matrix element against the convolution of two Wigner
//! functions, and the normalisation of the P_kl row sums.

use phasereflect::quantum::*;
use phasereflect::symplectic::PhasePoint;

fn main() -> phasereflect::Result<()> {
    let basis = EigenBasis1D::new(1.0, 0.1, 60)?;
    let x = PhasePoint::new(vec![0.2, 0.35])?;
    println!("W_k(x) = {:.6}  closed {:.6}", basis.wigner(3, &x)?, wigner_closed(3, 0.2, 0.35, 0.1));
    for (k, l) in [(0, 0), (1, 3), (4, 2)] {
        let c = convolution_identity_check(&basis, k, l, &x)?;
        println!("P_{k}{l}: direct {:.10}  convolution {:.10}  residual {:.1e}", c.direct, c.convolution, c.residual);
    }
    let row: f64 = (0..=60).map(|l| transition_probability_exact(&basis, 2, l, &x).unwrap()).sum();
    println!("Σ_l P_2l = {row:.10}");
    let corr = correlation_identity_check(&basis, 2, &PhasePoint::new(vec![0.1, -0.2])?)?;
    println!("correlation: direct {:.8}  fourier {:.8}", corr.direct, corr.fourier);
    Ok(())
}
