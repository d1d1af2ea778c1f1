use approx::assert_relative_eq;
use proptest::prelude::*;
use xxchain::observables::{concurrence_from_x, EndToEndState as State, ThermalContext as Ctx};
use xxchain::oracle::{
    dense_hamiltonian, gibbs_state, oracle_end_correlators, reduce_to_endpoints, wootters_concurrence, Beta,
};
use xxchain::{single, ChainSpec, EndToEndState, ThermalContext};

fn custom(couplings: Vec<f64>) -> ChainSpec {
    ChainSpec::custom(couplings, 1.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_chains_agree_with_exact_diagonalization(
        couplings in (2usize..5).prop_flat_map(|half| prop::collection::vec(0.2f64..2.0, 2 * half - 1))
    ) {
        let spec = custom(couplings);
        let state = EndToEndState::compute(&spec, ThermalContext::ground()).unwrap();
        let dense = gibbs_state(&dense_hamiltonian(&spec).unwrap(), Beta::Infinite);
        let corr = oracle_end_correlators(&dense);
        prop_assert!((state.x - corr.x_inferred).abs() <= 1e-9);
        prop_assert!((state.longitudinal - corr.longitudinal).abs() <= 1e-9);
        let wootters = wootters_concurrence(&reduce_to_endpoints(&dense)).unwrap();
        prop_assert!((state.concurrence - wootters).abs() <= 1e-9);
    }
}

#[test]
fn single_precision_tracks_double() {
    for (l, lam) in [(20usize, 0.3f64), (50, 0.1), (100, 1.0)] {
        let d = EndToEndState::compute(&ChainSpec::end_bond(l, lam, 1.0).unwrap(), ThermalContext::ground()).unwrap();
        let s: State<f32> = State::compute(
            &single::ChainSpec::end_bond(l, lam as f32, 1.0).unwrap(),
            Ctx::<f32>::ground(),
        )
        .unwrap();
        assert!(
            (f64::from(s.x) - d.x).abs() < 1e-4,
            "L={l} lambda={lam}: {} vs {}",
            s.x,
            d.x
        );
    }
}

#[test]
fn state_serializes_with_named_fields() {
    let state = EndToEndState::compute(&ChainSpec::uniform(4, 1.0).unwrap(), ThermalContext::ground()).unwrap();
    let v = serde_json::to_value(&state).unwrap();
    assert_eq!(v["length"], 4);
    assert_relative_eq!(v["x"].as_f64().unwrap(), 0.5 / 5f64.sqrt(), epsilon = 1e-14);
    assert_relative_eq!(v["concurrence"].as_f64().unwrap(), concurrence_from_x(state.x));
    assert_eq!(v["rho"].as_array().unwrap().len(), 4);
}

#[test]
fn scale_invariance_in_units_of_j() {
    let a = EndToEndState::compute(
        &ChainSpec::dimer(12, 0.4, 1.0).unwrap(),
        ThermalContext::new(0.05).unwrap(),
    )
    .unwrap();
    let b = EndToEndState::compute(
        &ChainSpec::dimer(12, 0.4, 3.0).unwrap(),
        ThermalContext::new(0.15).unwrap(),
    )
    .unwrap();
    assert_relative_eq!(a.x, b.x, epsilon = 1e-13);
}

#[test]
fn surface_order_sign_follows_half_length() {
    for l in [100usize, 102] {
        let x = EndToEndState::compute(&ChainSpec::dimer(l, 0.3, 1.0).unwrap(), ThermalContext::ground())
            .unwrap()
            .x;
        assert_eq!(x.signum(), xxchain::analytics::dimer_x_asymptotic(l, 0.3f64).signum());
    }
}
