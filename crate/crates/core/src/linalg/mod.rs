//! Dense complex linear algebra: Kronecker products, norms, unitarity and the
//! explicit rotations that realize minimal unitary distance between vectors.

mod eigen;
mod matrix;
mod vector;

use alloc::vec::Vec;

use num_complex::Complex64;

pub use eigen::{exp_i_hermitian, hermitian_eigen, hermitian_eigenvalues, HermitianEigen};
pub use matrix::ComplexMatrix;
pub use vector::{inner, norm, UnitVector};

use crate::error::{domain, invalid};
use crate::numerics::{Numerics, MAX_DIM};
use crate::{Error, Result};

fn checked_product_dim(da: usize, db: usize, cap: usize) -> Result<usize> {
    match da.checked_mul(db) {
        Some(d) if d <= cap => Ok(d),
        _ => Err(Error::SizeLimit {
            what: "Kronecker product dimension",
            requested: da as u128 * db as u128,
            cap: cap as u128,
        }),
    }
}

/// Kronecker product `a ⊗ b`; the left factor is the outer (slow) index.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_with(a, b, &Numerics::DEFAULT)
}

pub fn kron_with(a: &ComplexMatrix, b: &ComplexMatrix, numerics: &Numerics) -> Result<ComplexMatrix> {
    let (da, db) = (a.dim(), b.dim());
    let dim = checked_product_dim(da, db, numerics.max_dim.min(MAX_DIM))?;
    let mut data = Vec::with_capacity(dim * dim);
    for i1 in 0..da {
        for i2 in 0..db {
            for j1 in 0..da {
                let x = a[(i1, j1)];
                data.extend(b.row(i2).iter().map(|y| x * y));
            }
        }
    }
    ComplexMatrix::from_vec(dim, data)
}

/// Kronecker product of vectors, left factor outermost.
pub fn kron_vec(x: &[Complex64], y: &[Complex64]) -> Result<Vec<Complex64>> {
    checked_product_dim(x.len(), y.len(), MAX_DIM)?;
    Ok(x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect())
}

fn require_finite(a: &ComplexMatrix) -> Result<()> {
    if a.is_finite() {
        Ok(())
    } else {
        Err(invalid!("matrix has non-finite entries"))
    }
}

/// Largest singular value, from the eigenvalues of `a* a`.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    require_finite(a)?;
    let gram = &a.adjoint() * a;
    let top = hermitian_eigenvalues(&gram)?.last().copied().unwrap_or(0.0);
    Ok(libm::sqrt(top.max(0.0)))
}

/// Sum of singular values.
///
/// Hermitian inputs use `Σ|λ_i|` directly. Other inputs go through the
/// Hermitian dilation `[[0, a], [a*, 0]]`, whose spectrum is `±σ_i`; this keeps
/// small singular values accurate where `sqrt(eig(a* a))` would not.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    require_finite(a)?;
    if a.is_hermitian(0.0) {
        return Ok(hermitian_eigenvalues(a)?.iter().map(|x| x.abs()).sum());
    }
    let n = a.dim();
    if 2 * n > MAX_DIM {
        let gram = &a.adjoint() * a;
        return Ok(hermitian_eigenvalues(&gram)?.iter().map(|&x| libm::sqrt(x.max(0.0))).sum());
    }
    let zero = Complex64::new(0.0, 0.0);
    let dilation = ComplexMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, false) => a[(i, j - n)],
        (false, true) => a[(j, i - n)].conj(),
        _ => zero,
    })?;
    let eig = hermitian_eigenvalues(&dilation)?;
    Ok(0.5 * eig.iter().map(|x| x.abs()).sum::<f64>())
}

/// `‖a* a − I‖ ≤ tol` in operator norm. Non-finite input is never unitary.
pub fn is_unitary(a: &ComplexMatrix, tol: f64) -> bool {
    if !a.is_finite() || tol.is_nan() || tol <= 0.0 {
        return false;
    }
    let defect = &(&a.adjoint() * a) - &ComplexMatrix::identity(a.dim());
    operator_norm(&defect).map(|d| d <= tol).unwrap_or(false)
}

/// The real rotation `[[t, −√(1−t²)], [√(1−t²), t]]`, mapping `(1, 0)` to
/// `(t, √(1−t²))`.
pub fn rotation_unitary(t: f64) -> Result<ComplexMatrix> {
    if t.is_nan() || t.abs() > 1.0 {
        return Err(domain!("rotation parameter {t} outside [-1, 1]"));
    }
    let s = libm::sqrt((1.0 - t * t).max(0.0));
    ComplexMatrix::from_real(2, &[t, -s, s, t])
}

/// Counter-clockwise plane rotation by `theta`.
pub fn plane_rotation(theta: f64) -> ComplexMatrix {
    let (s, c) = (libm::sin(theta), libm::cos(theta));
    ComplexMatrix::from_real(2, &[c, -s, s, c]).expect("2x2")
}

/// Radius below which `η − ⟨ξ|η⟩ξ` is treated as zero.
const COLINEAR_RADIUS: f64 = 1e-13;

/// A unitary `u` with `u ξ = η` that acts on `span{ξ, η}` only.
///
/// Writing `η = tξ + rζ` with `ζ ⟂ ξ` a unit vector and `r ≥ 0`, `u` is the
/// special unitary `[[t, −r], [r, t̄]]` in the basis `(ξ, ζ)` and the identity
/// on the orthogonal complement. Its eigenvalues are `e^{±iφ}` with
/// `cos φ = Re t`, so `‖I − u‖ = √(2(1 − Re t))`, which equals `‖ξ − η‖`.
/// When `η = λξ` the result is multiplication by `λ` on `Cξ` and the identity
/// elsewhere.
pub fn two_plane_unitary(xi: &UnitVector, eta: &UnitVector) -> Result<ComplexMatrix> {
    if xi.dim() != eta.dim() {
        return Err(invalid!("two_plane_unitary: dimensions {} and {} differ", xi.dim(), eta.dim()));
    }
    let x = xi.as_slice();
    let y = eta.as_slice();
    let n = xi.dim();
    let t = inner(x, y);
    let mut zeta: Vec<Complex64> = y.iter().zip(x).map(|(b, a)| b - t * a).collect();
    let r = norm(&zeta);
    let one = Complex64::new(1.0, 0.0);

    if r <= COLINEAR_RADIUS || n == 1 {
        let lambda = if t.norm() > 0.0 { t / t.norm() } else { one };
        return ComplexMatrix::from_fn(n, |i, j| {
            let id = if i == j { one } else { Complex64::new(0.0, 0.0) };
            id + (lambda - one) * x[i] * x[j].conj()
        });
    }

    // Second Gram-Schmidt pass keeps ζ orthogonal to ξ when r is small.
    let c = inner(x, &zeta);
    for (z, a) in zeta.iter_mut().zip(x) {
        *z -= c * a;
    }
    let zn = norm(&zeta);
    for z in &mut zeta {
        *z /= zn;
    }

    let rc = Complex64::new(r, 0.0);
    let tc = t.conj();
    ComplexMatrix::from_fn(n, |i, j| {
        let id = if i == j { one } else { Complex64::new(0.0, 0.0) };
        let (xi_i, xi_j) = (x[i], x[j].conj());
        let (z_i, z_j) = (zeta[i], zeta[j].conj());
        id + (t - one) * xi_i * xi_j + rc * z_i * xi_j - rc * xi_i * z_j + (tc - one) * z_i * z_j
    })
}
