use carlab_core::linalg::{operator_norm, ComplexMatrix};
use carlab_core::random::{contraction, haar_unitary, rng_from_seed, unit_vector};
use carlab_core::states::{separation_witness, state_distance, sup_gap, VectorState};
use proptest::prelude::*;

fn state(dim: usize, rng: &mut carlab_core::random::Rng64) -> VectorState {
    VectorState::new(unit_vector(dim, rng).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pullback_composes(seed in any::<u64>(), level in 0u32..4) {
        let d = 1usize << level;
        let mut rng = rng_from_seed(seed);
        let s = state(d, &mut rng);
        let u = haar_unitary(d, &mut rng).unwrap();
        let w = haar_unitary(d, &mut rng).unwrap();
        let a = contraction(d, 1.0, &mut rng).unwrap();
        // (ω∘Ad u)∘Ad w = ω∘Ad(uw).
        let twice = s.pullback(&u).unwrap().pullback(&w).unwrap();
        let once = s.pullback(&(&u * &w)).unwrap();
        prop_assert!((twice.evaluate(&a).unwrap() - once.evaluate(&a).unwrap()).norm() < 1e-10);
        let direct = s.evaluate(&a.conjugate_by(&u)).unwrap();
        prop_assert!((s.pullback(&u).unwrap().evaluate(&a).unwrap() - direct).norm() < 1e-10);
    }

    #[test]
    fn distance_duality(seed in any::<u64>(), level in 0u32..5) {
        let d = 1usize << level;
        let mut rng = rng_from_seed(seed);
        let (p, q) = (state(d, &mut rng), state(d, &mut rng));
        let c = p.vector().overlap(q.vector()).unwrap().norm();
        let dist = state_distance(&p, &q).unwrap();
        // Squared form: √(1 − c²) amplifies rounding in c when c ≈ 1.
        prop_assert!((dist * dist / 4.0 - (1.0 - c * c)).abs() <= 1e-12);
        prop_assert!((dist - state_distance(&q, &p).unwrap()).abs() < 1e-14);
        prop_assert!((0.0..=2.0 + 1e-12).contains(&dist));
        let w = separation_witness(p.vector(), q.vector()).unwrap();
        prop_assert!((w.value_phi - (1.0 - c * c)).abs() <= 1e-10);
        prop_assert!((w.value_psi + (1.0 - c * c)).abs() <= 1e-10);
        prop_assert!((w.norm * w.norm - (1.0 - c * c)).abs() <= 1e-12);
    }

    #[test]
    fn sup_gap_is_bounded_by_twice_the_unitary_distance(seed in any::<u64>(), level in 1u32..3) {
        let d = 1usize << level;
        let mut rng = rng_from_seed(seed);
        let psi = state(d, &mut rng);
        let v = haar_unitary(d, &mut rng).unwrap();
        let u = haar_unitary(d, &mut rng).unwrap();
        let phi = psi.pullback(&v).unwrap();
        let tests: Vec<ComplexMatrix> = (0..8).map(|_| contraction(d, 1.0, &mut rng).unwrap()).collect();
        let gap = sup_gap(&phi, &psi, &u, &tests).unwrap();
        let bound = 2.0 * operator_norm(&(&u - &v)).unwrap();
        prop_assert!(gap <= bound + 1e-9);
        prop_assert!(sup_gap(&phi, &psi, &v, &tests).unwrap() < 1e-12);
    }
}
