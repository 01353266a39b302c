use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::invalid;
use crate::numerics::{Numerics, MAX_DIM};
use crate::{Error, Result};

/// `⟨x|y⟩ = Σ conj(x_i) y_i`, conjugate-linear in the first slot.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    assert_eq!(x.len(), y.len(), "inner product of vectors of different length");
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(x: &[Complex64]) -> f64 {
    libm::sqrt(x.iter().map(|z| z.norm_sqr()).sum())
}

/// A complex vector of unit Euclidean norm.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitVector {
    entries: Vec<Complex64>,
}

impl UnitVector {
    /// Accepts `entries` if their norm is within the default tolerance of 1.
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(entries, Numerics::DEFAULT.unit_norm_tol)
    }

    pub fn with_tolerance(entries: Vec<Complex64>, tol: f64) -> Result<Self> {
        check_len(entries.len())?;
        let n = norm(&entries);
        if !n.is_finite() || (n - 1.0).abs() > tol {
            return Err(invalid!("vector norm {n} is not within {tol} of 1"));
        }
        Ok(Self { entries })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(mut entries: Vec<Complex64>) -> Result<Self> {
        check_len(entries.len())?;
        let n = norm(&entries);
        if !(n.is_finite() && n > 0.0) {
            return Err(invalid!("cannot normalize a vector of norm {n}"));
        }
        for z in &mut entries {
            *z /= n;
        }
        Ok(Self { entries })
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The standard basis vector `e_k` of `C^dim` (zero-based `k`).
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        check_len(dim)?;
        if k >= dim {
            return Err(invalid!("basis index {k} out of range for dimension {dim}"));
        }
        let mut entries = alloc::vec![Complex64::new(0.0, 0.0); dim];
        entries[k] = Complex64::new(1.0, 0.0);
        Ok(Self { entries })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn as_slice(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.entries
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(invalid!("overlap of vectors in C^{} and C^{}", self.dim(), other.dim()));
        }
        Ok(inner(&self.entries, &other.entries))
    }

    /// Multiplies by a unit-modulus scalar.
    pub fn with_phase(&self, phase: Complex64) -> Self {
        let phase = phase / phase.norm();
        Self {
            entries: self.entries.iter().map(|z| z * phase).collect(),
        }
    }
}

fn check_len(len: usize) -> Result<()> {
    if len == 0 {
        return Err(invalid!("vector dimension must be at least 1"));
    }
    if len > MAX_DIM {
        return Err(Error::SizeLimit {
            what: "vector dimension",
            requested: len as u128,
            cap: MAX_DIM as u128,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_tolerance() {
        assert!(UnitVector::from_real(&[1.0, 1.0]).is_err());
        let v = UnitVector::normalized(alloc::vec![Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)]).unwrap();
        assert!((norm(v.as_slice()) - 1.0).abs() < 1e-15);
        assert!(UnitVector::normalized(alloc::vec![Complex64::new(0.0, 0.0)]).is_err());
        assert!(UnitVector::from_real(&[1.0 + 1e-12, 0.0]).is_ok());
    }

    #[test]
    fn overlap_is_conjugate_linear_in_first_slot() {
        let e1 = UnitVector::basis(2, 0).unwrap();
        let v = e1.with_phase(Complex64::new(0.0, 1.0));
        assert_eq!(e1.overlap(&v).unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(v.overlap(&e1).unwrap(), Complex64::new(0.0, -1.0));
        assert!(e1.overlap(&UnitVector::basis(3, 0).unwrap()).is_err());
    }
}
