use carlab_core::fsigma::{
    density_report, distance_bound_check, witness_search, RandomUnitaryNet, TestElementNet, UnitaryGrid, UnitaryNet,
};
use carlab_core::linalg::{is_unitary, operator_norm, rotation_unitary};
use carlab_core::random::{haar_unitary, rng_from_seed, trial_seed, unit_vector};
use carlab_core::states::VectorState;
use proptest::prelude::*;

#[test]
fn grid_is_epsilon_dense() {
    for d in [1, 2, 4] {
        let net = UnitaryNet::Grid(UnitaryGrid::new(d, 0.4).unwrap());
        let report = density_report(&net, 100, 17).unwrap();
        assert!(report.max_distance <= 0.4 + 1e-6, "dim {d}: {report:?}");
    }
}

#[test]
fn grid_contains_a_point_near_a_rotation() {
    let g = UnitaryGrid::new(2, 0.5).unwrap();
    let r = rotation_unitary(0.3).unwrap();
    let (_, u) = g.nearest(&r).unwrap();
    assert!(operator_norm(&(&u - &r)).unwrap() < 0.5);
}

#[test]
fn random_net_reports_density() {
    let net = UnitaryNet::Random(RandomUnitaryNet::new(8, 64, 3).unwrap());
    assert_eq!(net.element_at(0).unwrap(), carlab_core::ComplexMatrix::identity(8));
    let report = density_report(&net, 10, 4).unwrap();
    assert!(report.max_distance > 0.0 && report.max_distance <= 2.0 + 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn grid_elements_are_unitary(position in any::<u128>(), d in 1usize..5) {
        let g = UnitaryGrid::new(d, 0.4).unwrap();
        let p = position % g.cardinality();
        prop_assert!(is_unitary(&g.element(g.index_at(p).unwrap()).unwrap(), 1e-9));
    }

    #[test]
    fn witnesses_are_sound_and_complete(seed in any::<u64>(), wide in any::<bool>()) {
        let d = if wide { 4 } else { 2 };
        let mut rng = rng_from_seed(seed);
        let psi = VectorState::new(unit_vector(d, &mut rng).unwrap()).unwrap();
        let v = haar_unitary(d, &mut rng).unwrap();
        let phi = psi.pullback(&v).unwrap();
        let net = UnitaryNet::Grid(UnitaryGrid::new(d, 0.4).unwrap());
        let tests = TestElementNet::standard(d, 10, trial_seed(seed, 1)).unwrap();
        let out = witness_search(&phi, &psi, &net, &tests, 0, 1_000_000).unwrap();
        let w = out.witness.expect("a witness exists within the net");
        prop_assert!(w.gap < 1.0);
        let (dist, below) = distance_bound_check(&phi, &psi, &w.unitary).unwrap();
        prop_assert!(below, "distance {dist}");
    }
}
