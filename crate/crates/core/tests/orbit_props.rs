use carlab_core::linalg::UnitVector;
use carlab_core::orbit::{
    adjudicate_product, min_distance_bruteforce, min_distance_bruteforce_state, min_distance_closed_form,
    product_min_distance, tensor_vectors,
};
use carlab_core::random::{rng_from_seed, unit_vector};
use carlab_core::{Complex64, Error};
use proptest::prelude::*;

fn qubit(c: f64) -> UnitVector {
    UnitVector::from_real(&[c, (1.0 - c * c).sqrt()]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_decreases_in_overlap(a in 0.0f64..1.0, b in 0.0f64..1.0) {
        prop_assume!((a - b).abs() > 1e-9);
        let e = qubit(1.0);
        let da = min_distance_closed_form(&e, &qubit(a)).unwrap().closed_form_distance;
        let db = min_distance_closed_form(&e, &qubit(b)).unwrap().closed_form_distance;
        prop_assert_eq!(a < b, da > db);
    }

    #[test]
    fn phase_invariance(seed in any::<u64>(), d in 2usize..5, phase in -3.2f64..3.2) {
        let mut rng = rng_from_seed(seed);
        let x = unit_vector(d, &mut rng).unwrap();
        let y = unit_vector(d, &mut rng).unwrap();
        let r0 = min_distance_closed_form(&x, &y).unwrap();
        let r1 = min_distance_closed_form(&x, &y.with_phase(Complex64::from_polar(1.0, phase))).unwrap();
        prop_assert!((r0.abs_overlap - r1.abs_overlap).abs() < 1e-12);
        prop_assert!((r0.closed_form_distance - r1.closed_form_distance).abs() < 1e-12);
    }

    #[test]
    fn overlap_factorizes(seed in any::<u64>(), k in 1usize..13) {
        let mut rng = rng_from_seed(seed);
        let xs: Vec<UnitVector> = (0..k).map(|_| unit_vector(2, &mut rng).unwrap()).collect();
        let ys: Vec<UnitVector> = (0..k).map(|_| unit_vector(2, &mut rng).unwrap()).collect();
        let direct = tensor_vectors(&xs).unwrap().overlap(&tensor_vectors(&ys).unwrap()).unwrap();
        let product: Complex64 = xs.iter().zip(&ys).map(|(x, y)| x.overlap(y).unwrap()).product();
        prop_assert!((direct - product).norm() <= 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn oracle_is_bounded_below_by_its_closed_form(seed in any::<u64>(), d in 2usize..5) {
        let mut rng = rng_from_seed(seed);
        let x = unit_vector(d, &mut rng).unwrap();
        let y = unit_vector(d, &mut rng).unwrap();
        let r = min_distance_closed_form(&x, &y).unwrap();
        let exact = min_distance_bruteforce(&x, &y, 4000, seed).unwrap();
        prop_assert!(exact >= r.exact_constraint_distance - 1e-6);
        prop_assert!((exact - r.exact_constraint_distance).abs() <= 1e-4);
        let state = min_distance_bruteforce_state(&x, &y, 4000, seed).unwrap();
        prop_assert!(state >= r.closed_form_distance - 1e-6);
        prop_assert!((state - r.closed_form_distance).abs() <= 1e-4);
    }
}

#[test]
fn oracle_rejects_bad_inputs() {
    let x = qubit(0.5);
    assert!(matches!(min_distance_bruteforce(&x, &x, 999, 0), Err(Error::InvalidInput(_))));
    let e = UnitVector::basis(5, 0).unwrap();
    assert!(matches!(min_distance_bruteforce(&e, &e, 1000, 0), Err(Error::Domain(_))));
}

#[test]
fn product_examples() {
    let xs = [qubit(1.0), qubit(1.0)];
    let ys = [qubit(0.9), qubit(0.8)];
    let p = product_min_distance(&xs, &ys).unwrap();
    assert!((p.overlap_product - 0.72).abs() < 1e-12);
    assert!((p.constant_one - 0.56f64.sqrt()).abs() < 1e-12);
    let same = product_min_distance(&xs, &xs).unwrap();
    assert_eq!((same.constant_one, same.doubled), (0.0, 0.0));
    let single = product_min_distance(&xs[..1], &ys[..1]).unwrap();
    let lemma = min_distance_closed_form(&xs[0], &ys[0]).unwrap();
    assert!((single.constant_one - lemma.closed_form_distance).abs() < 1e-15);
    let adj = adjudicate_product(&xs, &ys, 10_000, 3).unwrap();
    assert!(adj.deviation_constant_one < 1e-3);
    assert!(adj.deviation_doubled > 0.5);
}
