use carlab_core::linalg::ComplexMatrix;
use carlab_core::random::{hermitian_contraction, rng_from_seed};
use carlab_core::reduction::{
    build_intertwiner_chain, build_intertwiner_chain_with, cauchy_gap_table, intertwining_check, ChainOptions,
    PhasePolicy,
};
use carlab_core::sequences::{AngleSequence, SequenceFamily};
use proptest::prelude::*;

fn angles() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.5f64..1.5, 7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn block_gaps_match_sign_patterns(a in angles(), b in angles(), eig_one in any::<bool>()) {
        let alpha = AngleSequence::new(a).unwrap();
        let beta = AngleSequence::new(b).unwrap();
        let policy = if eig_one { PhasePolicy::EigenvalueOne } else { PhasePolicy::None };
        let opts = ChainOptions { phase_policy: policy, ..ChainOptions::default() };
        let chain = build_intertwiner_chain_with(&alpha, &beta, 7, &opts).unwrap();
        for row in cauchy_gap_table(&chain, 6).unwrap() {
            prop_assert!((row.measured - row.spectral).abs() <= 1e-8, "{row:?}");
            prop_assert_eq!(row.exceeds_bound, row.measured > row.product_bound + 1e-12);
        }
        for l in chain.levels() {
            prop_assert!((l.gap_to_prev - l.exact_eigenphase_norm).abs() <= 1e-10);
            if policy == PhasePolicy::None {
                prop_assert!((l.gap_to_prev - l.paper_bound).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn intertwining_holds(a in angles(), b in angles(), seed in any::<u64>()) {
        let alpha = AngleSequence::new(a).unwrap();
        let beta = AngleSequence::new(b).unwrap();
        let chain = build_intertwiner_chain(&alpha, &beta, 6).unwrap();
        let mut rng = rng_from_seed(seed);
        let mut tests: Vec<ComplexMatrix> = (0..6).map(|_| hermitian_contraction(4, 1.0, &mut rng).unwrap()).collect();
        tests.push(ComplexMatrix::identity(4));
        tests.push(ComplexMatrix::matrix_unit(2, 0, 1).unwrap());
        prop_assert!(intertwining_check(&chain, 6, &tests).unwrap() <= 1e-10);
    }
}

#[test]
fn identity_has_no_intertwining_gap() {
    let alpha = SequenceFamily::InvSqrt.generate(5).unwrap();
    let beta = SequenceFamily::Zero.generate(5).unwrap();
    let chain = build_intertwiner_chain(&alpha, &beta, 5).unwrap();
    assert!(intertwining_check(&chain, 5, &[ComplexMatrix::identity(32)]).unwrap() <= 1e-14);
}

#[test]
fn deep_block_with_clustered_gram_spectrum() {
    // The Gram matrix of this 512-dimensional block has clusters of tiny
    // eigenvalues; it needs the absolute deflation floor in the QL sweep.
    let alpha = SequenceFamily::InvSqrt.generate(9).unwrap();
    let beta = SequenceFamily::Zero.generate(9).unwrap();
    let opts = ChainOptions { dense_max_level: 0, ..ChainOptions::default() };
    let chain = build_intertwiner_chain_with(&alpha, &beta, 9, &opts).unwrap();
    let measured = chain.measured_block_gap(7, 9).unwrap();
    let spectral = chain.spectral_block_gap(7, 9).unwrap();
    assert!((measured - spectral).abs() <= 1e-8, "{measured} vs {spectral}");
}

#[test]
fn product_bound_fails_for_large_first_moment() {
    // Small Σθ² but large Σ|θ|: the product bound is exceeded.
    let alpha = AngleSequence::new(vec![0.5; 6]).unwrap();
    let beta = SequenceFamily::Zero.generate(6).unwrap();
    let chain = build_intertwiner_chain(&alpha, &beta, 6).unwrap();
    let measured = chain.measured_block_gap(0, 6).unwrap();
    assert!((measured - 2.0 * (1.5f64).sin()).abs() < 1e-10);
    assert!(measured > chain.product_bound(0, 6).unwrap());
}
