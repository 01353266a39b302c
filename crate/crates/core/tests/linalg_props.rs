use approx::assert_abs_diff_eq;
use carlab_core::linalg::{
    exp_i_hermitian, hermitian_eigen, is_unitary, kron, operator_norm, rotation_unitary, trace_norm, two_plane_unitary,
    ComplexMatrix,
};
use carlab_core::random::{gaussian_hermitian, haar_unitary, rng_from_seed, unit_vector};
use carlab_core::states::projection;
use carlab_core::Complex64;
use proptest::prelude::*;

fn random_matrix(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = rng_from_seed(seed);
    let h = gaussian_hermitian(dim, &mut rng).unwrap();
    let u = haar_unitary(dim, &mut rng).unwrap();
    &h * &u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_is_associative(seed in any::<u64>(), da in 1usize..4, db in 1usize..4, dc in 1usize..3) {
        let a = random_matrix(da, seed);
        let b = random_matrix(db, seed ^ 1);
        let c = random_matrix(dc, seed ^ 2);
        let left = kron(&kron(&a, &b).unwrap(), &c).unwrap();
        let right = kron(&a, &kron(&b, &c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) < 1e-12);
    }

    #[test]
    fn kron_mixed_product(seed in any::<u64>(), da in 1usize..4, db in 1usize..4) {
        let (a1, a2) = (random_matrix(da, seed), random_matrix(da, seed ^ 3));
        let (b1, b2) = (random_matrix(db, seed ^ 5), random_matrix(db, seed ^ 7));
        let lhs = &kron(&a1, &b1).unwrap() * &kron(&a2, &b2).unwrap();
        let rhs = kron(&(&a1 * &a2), &(&b1 * &b2)).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
    }

    #[test]
    fn operator_norm_is_unitarily_invariant(seed in any::<u64>(), d in 1usize..7) {
        let a = random_matrix(d, seed);
        let mut rng = rng_from_seed(seed ^ 11);
        let u = haar_unitary(d, &mut rng).unwrap();
        let w = haar_unitary(d, &mut rng).unwrap();
        let n0 = operator_norm(&a).unwrap();
        let n1 = operator_norm(&(&(&u * &a) * &w)).unwrap();
        prop_assert!((n0 - n1).abs() <= 1e-10 * n0.max(1.0));
        prop_assert!(n0 <= a.frobenius_norm() + 1e-12);
    }

    #[test]
    fn operator_norm_of_kron_multiplies(seed in any::<u64>(), da in 1usize..4, db in 1usize..4) {
        let a = random_matrix(da, seed);
        let b = random_matrix(db, seed ^ 13);
        let k = operator_norm(&kron(&a, &b).unwrap()).unwrap();
        let p = operator_norm(&a).unwrap() * operator_norm(&b).unwrap();
        prop_assert!((k - p).abs() <= 1e-10 * p.max(1.0));
    }

    #[test]
    fn rotation_identity(t in -1.0f64..=1.0) {
        let u = rotation_unitary(t).unwrap();
        prop_assert!(is_unitary(&u, 1e-12));
        let g = operator_norm(&(&ComplexMatrix::identity(2) - &u)).unwrap();
        prop_assert!((g * g - (2.0 - 2.0 * t)).abs() <= 1e-10);
    }

    #[test]
    fn projection_difference_trace_norm(seed in any::<u64>(), d in 2usize..9) {
        let mut rng = rng_from_seed(seed);
        let x = unit_vector(d, &mut rng).unwrap();
        let y = unit_vector(d, &mut rng).unwrap();
        let c = x.overlap(&y).unwrap().norm();
        let diff = &projection(&x) - &projection(&y);
        let expected = 2.0 * (1.0 - c * c).max(0.0).sqrt();
        prop_assert!((trace_norm(&diff).unwrap() - expected).abs() <= 1e-8);
    }

    #[test]
    fn eigen_reconstructs(seed in any::<u64>(), d in 1usize..10) {
        let mut rng = rng_from_seed(seed);
        let h = gaussian_hermitian(d, &mut rng).unwrap();
        let eig = hermitian_eigen(&h).unwrap();
        let v = eig.vectors.unwrap();
        prop_assert!(is_unitary(&v, 1e-10));
        let diag: Vec<Complex64> = eig.values.iter().map(|&l| Complex64::new(l, 0.0)).collect();
        let back = &(&v * &ComplexMatrix::diagonal(&diag).unwrap()) * &v.adjoint();
        prop_assert!(back.max_abs_diff(&h) <= 1e-10 * operator_norm(&h).unwrap().max(1.0));
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn exponential_is_unitary(seed in any::<u64>(), d in 1usize..7) {
        let mut rng = rng_from_seed(seed);
        let h = gaussian_hermitian(d, &mut rng).unwrap();
        prop_assert!(is_unitary(&exp_i_hermitian(&h).unwrap(), 1e-10));
    }

    #[test]
    fn two_plane_unitary_attains_real_part_form(seed in any::<u64>(), d in 1usize..6) {
        let mut rng = rng_from_seed(seed);
        let x = unit_vector(d, &mut rng).unwrap();
        let y = unit_vector(d, &mut rng).unwrap();
        let u = two_plane_unitary(&x, &y).unwrap();
        prop_assert!(is_unitary(&u, 1e-10));
        let image = u.apply(x.as_slice());
        let err: f64 = image.iter().zip(y.as_slice()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        prop_assert!(err <= 1e-10);
        let t = x.overlap(&y).unwrap();
        let gap = operator_norm(&(&ComplexMatrix::identity(d) - &u)).unwrap();
        prop_assert!((gap - (2.0 * (1.0 - t.re)).max(0.0).sqrt()).abs() <= 1e-8);
    }
}

#[test]
fn rotation_identity_on_a_grid() {
    for k in 0..1000 {
        let t = -1.0 + 2.0 * k as f64 / 999.0;
        let u = rotation_unitary(t).unwrap();
        let g = operator_norm(&(&ComplexMatrix::identity(2) - &u)).unwrap();
        assert_abs_diff_eq!(g * g, 2.0 - 2.0 * t, epsilon = 1e-10);
    }
}

#[test]
fn clustered_spectrum_converges() {
    // Many eigenvalues at exactly zero next to a handful of order-one ones.
    let mut rng = rng_from_seed(99);
    let d = 64;
    let u = haar_unitary(d, &mut rng).unwrap();
    let diag: Vec<Complex64> = (0..d)
        .map(|i| Complex64::new(if i % 16 == 0 { 1.0 + i as f64 } else { 0.0 }, 0.0))
        .collect();
    let h = ComplexMatrix::diagonal(&diag).unwrap().conjugate_by(&u);
    let values = hermitian_eigen(&h).unwrap().values;
    assert_abs_diff_eq!(values[d - 1], 49.0, epsilon = 1e-10);
    assert!(values[..d - 4].iter().all(|v| v.abs() < 1e-12));
}
