//! Finite truncations `M_{2^n}` of the CAR algebra.
//!
//! Tensor factors are laid out left to right: factor 1 is the outermost
//! (most significant) index of the Kronecker layout, so the connecting map
//! `M_{2^m} → M_{2^n}` is `a ↦ a ⊗ I_{2^{n−m}}`.

use alloc::vec;

use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{domain, invalid};
use crate::linalg::{kron, kron_vec, ComplexMatrix, UnitVector};
use crate::numerics::MAX_LEVEL;
use crate::{Error, Result};

/// Number of `M_2` tensor factors; the matrix dimension is `2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TruncationLevel(u32);

impl TruncationLevel {
    pub fn new(n: u32) -> Result<Self> {
        if n > MAX_LEVEL {
            return Err(Error::Level(alloc::format!("level {n} exceeds the cap {MAX_LEVEL}")));
        }
        Ok(Self(n))
    }

    /// Level whose dimension is exactly `dim`.
    pub fn from_dim(dim: usize) -> Result<Self> {
        if !dim.is_power_of_two() {
            return Err(Error::Level(alloc::format!("dimension {dim} is not a power of two")));
        }
        Self::new(dim.trailing_zeros())
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn dim(self) -> usize {
        1 << self.0
    }
}

/// `a ⊗ I_{2^{n−m}}` for `a ∈ M_{2^m}`.
pub fn embed(a: &ComplexMatrix, level: TruncationLevel) -> Result<ComplexMatrix> {
    let from = TruncationLevel::from_dim(a.dim())?;
    if from > level {
        return Err(Error::Level(alloc::format!(
            "cannot embed level {} into lower level {}",
            from.get(),
            level.get()
        )));
    }
    if from == level {
        return Ok(a.clone());
    }
    kron(a, &ComplexMatrix::identity(level.dim() >> from.get()))
}

/// Checks that an angle lies strictly inside `(−π/2, π/2)`.
pub fn check_angle(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha.abs() < FRAC_PI_2 {
        Ok(())
    } else {
        Err(domain!("angle {alpha} outside the open interval (-pi/2, pi/2)"))
    }
}

/// The qubit vector `(cos α, sin α)`.
pub fn qubit_vector(alpha: f64) -> Result<UnitVector> {
    check_angle(alpha)?;
    UnitVector::from_real(&[libm::cos(alpha), libm::sin(alpha)])
}

/// `⊗_{j=from}^{to} (cos α_j, sin α_j)` with one-based inclusive indices.
pub fn product_vector(angles: &[f64], from: usize, to: usize) -> Result<UnitVector> {
    if from == 0 || from > to || to > angles.len() {
        return Err(invalid!(
            "factor range {from}..={to} invalid for a sequence of length {}",
            angles.len()
        ));
    }
    let count = to - from + 1;
    if count > MAX_LEVEL as usize {
        return Err(Error::SizeLimit {
            what: "product vector factors",
            requested: count as u128,
            cap: MAX_LEVEL as u128,
        });
    }
    let mut acc = vec![Complex64::new(1.0, 0.0)];
    for &alpha in &angles[from - 1..to] {
        check_angle(alpha)?;
        let factor = [
            Complex64::new(libm::cos(alpha), 0.0),
            Complex64::new(libm::sin(alpha), 0.0),
        ];
        acc = kron_vec(&acc, &factor)?;
    }
    UnitVector::new(acc)
}
