use phasereflect::section::build_section;
use phasereflect::symplectic::{HamiltonianModel, PhasePoint};
use phasereflect::transition::*;
use std::f64::consts::PI;

fn spherical_query(n: usize, q_tilde: f64, e: f64, e_prime: f64, hbar: f64) -> TransitionQuery {
    let g = build_section(1.0, q_tilde, e, e_prime).unwrap();
    let m = HamiltonianModel::spherical(1.0, PhasePoint::zeros(n)).unwrap();
    TransitionQuery::new(m, g.reflection_centre(&PhasePoint::zeros(n)), e, e_prime, hbar).unwrap()
}

fn quartic_query(lambda: f64, q_tilde: f64) -> TransitionQuery {
    let g = build_section(1.0, q_tilde, 2.0, 1.5).unwrap();
    let m = HamiltonianModel::quartic(vec![1.0, 1.0], lambda).unwrap();
    TransitionQuery::new(m, g.reflection_centre(&PhasePoint::zeros(2)), 2.0, 1.5, 1.0).unwrap()
}

// The three-freedom density is Y_M³ / (6πħ³ω²Q̃). The sphere-area formula
// and the ray chart agree on this; the prefactor 1/(2π) is three times too
// large.
#[test]
fn three_freedom_prefactor_is_one_over_six_pi() {
    let (q_tilde, hbar) = (0.8, 0.7);
    let q = spherical_query(3, q_tilde, 2.0, 1.5, hbar);
    let g = q.spherical_estimate().unwrap();
    let mc = transition_density_mc(&q, &McOptions::new(20_000, 5)).unwrap();
    let six_pi = g.y_m().powi(3) / (6.0 * PI * hbar.powi(3) * q_tilde);
    let two_pi = 3.0 * six_pi;
    assert!((mc.value / six_pi - 1.0).abs() < 1e-8, "{} vs {six_pi}", mc.value);
    assert!((mc.value / two_pi - 1.0 / 3.0).abs() < 1e-8);
    let closed = transition_density_spherical(&g, 3, hbar).unwrap();
    assert!((closed / six_pi - 1.0).abs() < 1e-12);
}

#[test]
fn standard_error_falls_as_inverse_root_of_samples() {
    let q = quartic_query(0.1, 1.0);
    let small = transition_density_mc(&q, &McOptions::new(2_500, 11)).unwrap();
    let large = transition_density_mc(&q, &McOptions::new(40_000, 11)).unwrap();
    let ratio = small.stderr / large.stderr;
    assert!((3.0..5.3).contains(&ratio), "stderr ratio {ratio}, expected about 4");
    let z = (small.value - large.value).abs() / small.stderr.hypot(large.stderr);
    assert!(z < 4.0, "estimates disagree by {z} σ");
}

#[test]
fn density_is_symmetric_in_the_two_energies() {
    let q = quartic_query(0.05, 0.9);
    let opts = McOptions::new(40_000, 2);
    let a = transition_density_mc(&q, &opts).unwrap();
    let b = transition_density_mc(&q.swapped(), &opts).unwrap();
    let z = (a.value - b.value).abs() / a.stderr.hypot(b.stderr);
    assert!(z < 4.0, "P(E,E') = {} but P(E',E) = {} ({z} σ)", a.value, b.value);
}

#[test]
fn estimate_does_not_depend_on_the_thread_pool() {
    let q = quartic_query(0.1, 1.0);
    let opts = McOptions::new(10_000, 7);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| transition_density_mc(&q, &opts).unwrap())
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one.value.to_bits(), four.value.to_bits());
    assert_eq!(one.stderr.to_bits(), four.stderr.to_bits());
}

// The quartic density approaches the spherical one as λ → 0, with the
// difference shrinking about linearly.
#[test]
fn quartic_density_is_continuous_at_zero_coupling() {
    let g = build_section(1.0, 1.0, 2.0, 1.5).unwrap();
    let p0 = transition_density_spherical(&g, 2, 1.0).unwrap();
    let diffs: Vec<f64> = [0.04, 0.02, 0.01]
        .iter()
        .map(|&lam| {
            let est = transition_density_mc(&quartic_query(lam, 1.0), &McOptions::new(40_000, 3)).unwrap();
            (est.value - p0).abs()
        })
        .collect();
    for w in diffs.windows(2) {
        let ratio = w[1] / w[0];
        assert!((0.35..0.8).contains(&ratio), "halving λ scaled the gap by {ratio} ({diffs:?})");
    }
    assert!(diffs[2] < 0.2 * p0);
}

#[test]
fn scaling_exponent_matches_sphere_dimension() {
    let model = HamiltonianModel::spherical(1.0, PhasePoint::zeros(2)).unwrap();
    let scan = CausticScan {
        e: 2.0,
        e_prime: 1.5,
        fractions: vec![0.5, 0.6, 0.7, 0.8, 0.9, 0.95],
        mc: McOptions::new(5_000, 1),
    };
    let fit = scaling_exponent_fit(&model, 1.0, &scan).unwrap();
    assert!((fit.slope - 1.0).abs() < 0.05, "slope {}", fit.slope);
}
