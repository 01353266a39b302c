//! Seeded sampling of vectors, unitaries and test elements.
//!
//! Every experiment draws from a [`ChaCha8Rng`] seeded through
//! [`trial_seed`], so results depend only on the root seed and trial index.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{exp_i_hermitian, inner, norm, operator_norm, ComplexMatrix, UnitVector};
use crate::Result;

pub type Rng64 = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// One step of the SplitMix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for trial `index` under `root`: `splitmix64(root + (index + 1) · γ)`
/// with `γ = 0x9E3779B97F4A7C15`. Distinct trials get decorrelated streams and
/// the mapping does not depend on execution order.
pub fn trial_seed(root: u64, index: u64) -> u64 {
    splitmix64(root.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

pub fn rng_from_seed(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_c<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniformly distributed unit vector in `C^dim`.
pub fn unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<UnitVector> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| gaussian_c(rng)).collect();
        if norm(&v) > 1e-8 {
            return UnitVector::normalized(v);
        }
    }
}

/// Uniformly distributed unit vector in `R^dim`, embedded in `C^dim`.
pub fn real_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<UnitVector> {
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), 0.0))
            .collect();
        if norm(&v) > 1e-8 {
            return UnitVector::normalized(v);
        }
    }
}

/// Haar-distributed unitary: Gram–Schmidt on a complex Gaussian matrix.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<ComplexMatrix> {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| gaussian_c(rng)).collect();
        for _ in 0..2 {
            for c in &cols {
                let p = inner(c, &v);
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= p * y;
                }
            }
        }
        let n = norm(&v);
        if n > 1e-8 {
            v.iter_mut().for_each(|x| *x /= n);
            cols.push(v);
        }
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

/// Hermitian matrix with independent Gaussian entries (GUE-like).
pub fn gaussian_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<ComplexMatrix> {
    let g = ComplexMatrix::from_fn(dim, |_, _| gaussian_c(rng))?;
    Ok((&g + &g.adjoint()).scale(Complex64::new(0.5, 0.0)))
}

/// Random Hermitian matrix rescaled to operator norm `radius`.
pub fn hermitian_contraction<R: Rng + ?Sized>(dim: usize, radius: f64, rng: &mut R) -> Result<ComplexMatrix> {
    let h = gaussian_hermitian(dim, rng)?;
    let n = operator_norm(&h)?;
    Ok(h.scale(Complex64::new(radius / n, 0.0)))
}

/// Random complex matrix rescaled to operator norm `radius`.
pub fn contraction<R: Rng + ?Sized>(dim: usize, radius: f64, rng: &mut R) -> Result<ComplexMatrix> {
    let g = ComplexMatrix::from_fn(dim, |_, _| gaussian_c(rng))?;
    let n = operator_norm(&g)?;
    Ok(g.scale(Complex64::new(radius / n, 0.0)))
}

/// A unitary `w = V diag(e^{iλ}) V*` together with its generator
/// `H = V diag(λ) V*`, where `V` is Haar and the `λ` are uniform in `(−π, π]`.
pub fn unitary_with_generator<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let v = haar_unitary(dim, rng)?;
    let lambdas: Vec<f64> = (0..dim)
        .map(|_| core::f64::consts::PI * (1.0 - 2.0 * rng.random::<f64>()))
        .collect();
    let h = ComplexMatrix::from_fn(dim, |i, j| {
        (0..dim).map(|k| v[(i, k)] * lambdas[k] * v[(j, k)].conj()).sum()
    })?;
    let w = exp_i_hermitian(&h)?;
    Ok((h, w))
}
