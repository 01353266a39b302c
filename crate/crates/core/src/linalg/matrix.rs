use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::invalid;
use crate::numerics::MAX_DIM;
use crate::{Error, Result};

/// Dense square complex matrix stored row-major.
///
/// Dimensions are in `1..=MAX_DIM`. The arithmetic operators panic on a
/// dimension mismatch; the checked entry points of the crate validate shapes
/// before reaching them.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(invalid!("matrix dimension must be at least 1"));
    }
    if dim > MAX_DIM {
        return Err(Error::SizeLimit {
            what: "matrix dimension",
            requested: dim as u128,
            cap: MAX_DIM as u128,
        });
    }
    Ok(())
}

impl ComplexMatrix {
    /// Builds a matrix from `dim * dim` row-major entries.
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(invalid!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            ));
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(dim, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        check_dim(dim)?;
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Ok(Self { dim, data })
    }

    /// # Panics
    /// If `dim` is zero or above `MAX_DIM`.
    pub fn zeros(dim: usize) -> Self {
        check_dim(dim).expect("invalid matrix dimension");
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// # Panics
    /// If `dim` is zero or above `MAX_DIM`.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(entries: &[Complex64]) -> Result<Self> {
        let dim = entries.len();
        Self::from_fn(dim, |i, j| {
            if i == j {
                entries[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// The rank-one matrix `x y*`.
    pub fn outer(x: &[Complex64], y: &[Complex64]) -> Result<Self> {
        if x.len() != y.len() {
            return Err(invalid!("outer product of vectors of length {} and {}", x.len(), y.len()));
        }
        Self::from_fn(x.len(), |i, j| x[i] * y[j].conj())
    }

    /// The matrix unit `e_i e_j*`.
    pub fn matrix_unit(dim: usize, i: usize, j: usize) -> Result<Self> {
        if i >= dim || j >= dim {
            return Err(invalid!("matrix unit ({i}, {j}) out of range for dimension {dim}"));
        }
        let mut m = Self::from_vec(dim, vec![Complex64::new(0.0, 0.0); dim * dim])?;
        m[(i, j)] = Complex64::new(1.0, 0.0);
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.data[j * n + i].conj());
            }
        }
        Self { dim: n, data }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// Matrix–vector product `a x`.
    ///
    /// # Panics
    /// If `x.len() != self.dim()`.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim, "matrix-vector dimension mismatch");
        self.data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `a* x` without forming the adjoint.
    pub fn apply_adjoint(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim, "matrix-vector dimension mismatch");
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (row, xi) in self.data.chunks_exact(self.dim).zip(x) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a.conj() * xi;
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.dim;
        (0..n).all(|i| (i..n).all(|j| (self.data[i * n + j] - self.data[j * n + i].conj()).norm() <= tol))
    }

    /// `u a u*`, the inner automorphism `Ad u` applied to `self`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }

    pub(crate) fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.dim && j < self.dim, "index out of range");
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.dim && j < self.dim, "index out of range");
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(&rhs.data[k * n..(k + 1) * n]) {
                    *o += a * b;
                }
            }
        }
        ComplexMatrix { dim: n, data: out }
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(ComplexMatrix::from_vec(0, vec![]).is_err());
        assert!(ComplexMatrix::from_vec(2, vec![c(1.0, 0.0); 3]).is_err());
        assert!(matches!(
            ComplexMatrix::from_fn(MAX_DIM + 1, |_, _| c(0.0, 0.0)),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn product_and_adjoint() {
        let a = ComplexMatrix::from_vec(2, vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(3.0, 0.5)]).unwrap();
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(&a * &i2, a);
        let aa = a.adjoint();
        assert_eq!(aa[(0, 1)], c(0.0, 1.0));
        assert_eq!(aa.adjoint(), a);
        let g = &aa * &a;
        assert!(g.is_hermitian(1e-14));
        assert!(!a.is_hermitian(1e-14));
    }

    #[test]
    fn apply_adjoint_matches_adjoint_apply() {
        let a = ComplexMatrix::from_fn(3, |i, j| c(i as f64 - j as f64, (i * j) as f64)).unwrap();
        let x = [c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 1.0)];
        let lhs = a.apply_adjoint(&x);
        let rhs = a.adjoint().apply(&x);
        for (l, r) in lhs.iter().zip(&rhs) {
            assert!((l - r).norm() < 1e-14);
        }
    }
}
