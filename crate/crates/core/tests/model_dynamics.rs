//! Closed-form dynamics against the independent Runge-Kutta integration of
//! the truncated four-level Hamiltonian.

mod common;

use jc_gqd::model::{amplitudes, SystemParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_PI_2;

#[test]
fn named_point_matches_integration_oracle() {
    // n = 3, α = π/6, g = ν = ω = 1, t = 1
    let p = SystemParams::resonant(std::f64::consts::FRAC_PI_6, 3, 1.0, 1.0).unwrap();
    let t = 1.0;
    let a = amplitudes(&p, t);
    let oracle = common::rk4_amplitudes(p.alpha(), p.n(), p.g(), p.nu(), p.omega(), t);
    let closed = [a.x1, a.x2, a.x3, a.x4];
    for (got, want) in closed.iter().zip(&oracle) {
        assert!(
            (got - want).norm() < 1e-8,
            "closed {got:?} vs integrated {want:?}"
        );
    }
}

#[test]
fn random_points_match_integration_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    for _ in 0..8 {
        let g = rng.gen_range(0.3..2.5);
        let p = SystemParams::resonant(
            rng.gen_range(0.0..FRAC_PI_2),
            rng.gen_range(0..8),
            g,
            rng.gen_range(0.3..2.5),
        )
        .unwrap();
        let t = rng.gen_range(0.1..10.0 / g);
        let a = amplitudes(&p, t);
        let oracle = common::rk4_amplitudes(p.alpha(), p.n(), p.g(), p.nu(), p.omega(), t);
        for (got, want) in [a.x1, a.x2, a.x3, a.x4].iter().zip(&oracle) {
            assert!(
                (got - want).norm() < 1e-8,
                "params {p:?} t {t}: {got:?} vs {want:?}"
            );
        }
    }
}
