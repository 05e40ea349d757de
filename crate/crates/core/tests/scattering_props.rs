#[path = "support/mod.rs"]
mod support;

use flyspin_core::qcore::{gates, CMatrix, DensityMatrix, C64};
use flyspin_core::scattering::{
    forward_unitary, full_scatter, herald_transmission, ForwardScatterParams, FullScatterParams,
};
use proptest::prelude::*;
use support::{max_abs_diff, random_density};

fn angle() -> impl Strategy<Value = f64> {
    -10.0f64..10.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn forward_gate_is_unitary_and_conserves_magnetization(theta in angle(), theta_prime in angle()) {
        let u = forward_unitary(&ForwardScatterParams::new(theta, theta_prime).unwrap());
        let id = CMatrix::identity(4, 4);
        prop_assert!(max_abs_diff(&(&u * u.adjoint()), &id) < 1e-10);
        let tz = gates::total_z(2);
        prop_assert!(max_abs_diff(&(&u * &tz), &(&tz * &u)) < 1e-10);
    }

    #[test]
    fn parallel_spins_only_pick_up_a_phase(theta in angle(), theta_prime in angle()) {
        let u = forward_unitary(&ForwardScatterParams::new(theta, theta_prime).unwrap());
        for col in [0usize, 3] {
            prop_assert!((u[(col, col)].norm() - 1.0).abs() < 1e-12);
            for row in 0..4 {
                if row != col {
                    prop_assert!(u[(row, col)].norm() < 1e-12);
                    prop_assert!(u[(col, row)].norm() < 1e-12);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflectionless_full_scatter_matches_forward_gate(
        theta_s in angle(),
        theta_t in angle(),
        state in prop::collection::vec(-1.0f64..1.0, 32),
    ) {
        let rho = random_density(2, &state);
        let fwd = ForwardScatterParams::from_phases(theta_s, theta_t).unwrap();
        let zero = C64::new(0.0, 0.0);
        let amps = FullScatterParams::new(
            C64::from_polar(1.0, theta_s),
            zero,
            C64::from_polar(1.0, theta_t),
            zero,
        )
        .unwrap();
        let branch = herald_transmission(&full_scatter(&rho, &amps).unwrap()).unwrap();
        prop_assert!((branch.probability - 1.0).abs() < 1e-12);
        let want = rho.apply_unitary(&forward_unitary(&fwd), &[0, 1]).unwrap();
        prop_assert!(branch.state.unwrap().distance(&want) < 1e-12);
    }

    #[test]
    fn herald_probability_is_transmitted_block_trace(
        state in prop::collection::vec(-1.0f64..1.0, 32),
        ts in 0.0f64..1.0,
        tt in 0.0f64..1.0,
        phases in prop::collection::vec(-3.2f64..3.2, 4),
    ) {
        let rho = random_density(2, &state);
        let amp = |mag: f64, ph: f64| C64::from_polar(mag, ph);
        let p = FullScatterParams::new(
            amp(ts, phases[0]),
            amp((1.0 - ts * ts).sqrt(), phases[1]),
            amp(tt, phases[2]),
            amp((1.0 - tt * tt).sqrt(), phases[3]),
        )
        .unwrap();
        let out = full_scatter(&rho, &p).unwrap();
        // Direction is the last qubit; "transmitted" rows have an even index.
        let block: f64 = (0..8).filter(|i| i % 2 == 0).map(|i| out.entry(i, i).re).sum();
        let branch = herald_transmission(&out).unwrap();
        prop_assert!((branch.probability - block).abs() < 1e-12);
    }
}

#[test]
fn triplet_input_transmits_with_triplet_weight() {
    let t_t = C64::from_polar(0.6, 0.4);
    let r_t = C64::from_polar(0.8, -1.1);
    let p = FullScatterParams::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0), t_t, r_t).unwrap();
    let up_up = DensityMatrix::basis(2, 0).unwrap();
    let b = herald_transmission(&full_scatter(&up_up, &p).unwrap()).unwrap();
    assert!((b.probability - t_t.norm_sqr()).abs() < 1e-12);
}
