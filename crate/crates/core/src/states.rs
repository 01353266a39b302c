//! Vector states on matrix truncations.
//!
//! A state is kept as its defining unit vector `ξ`; `ω_ξ(a) = ⟨ξ|aξ⟩`. Density
//! matrices are only formed when a dense operator is actually requested.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::car::TruncationLevel;
use crate::error::invalid;
use crate::linalg::{hermitian_eigenvalues, inner, is_unitary, norm, operator_norm, ComplexMatrix, UnitVector};
use crate::numerics::Numerics;
use crate::Result;

/// The vector state `ω_ξ` on `M_{2^level}`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorState {
    vector: UnitVector,
    level: TruncationLevel,
}

impl VectorState {
    pub fn new(vector: UnitVector) -> Result<Self> {
        let level = TruncationLevel::from_dim(vector.dim())?;
        Ok(Self { vector, level })
    }

    #[inline]
    pub fn vector(&self) -> &UnitVector {
        &self.vector
    }

    #[inline]
    pub fn level(&self) -> TruncationLevel {
        self.level
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.vector.dim()
    }

    /// `ω_ξ(a) = ⟨ξ|aξ⟩`.
    pub fn evaluate(&self, a: &ComplexMatrix) -> Result<Complex64> {
        if a.dim() != self.dim() {
            return Err(invalid!("evaluate: operator of dimension {} on a state of dimension {}", a.dim(), self.dim()));
        }
        Ok(quadratic_form(a, self.vector.as_slice()))
    }

    /// The state `ω_ξ ∘ Ad u`, represented by the vector `u* ξ`.
    pub fn pullback(&self, u: &ComplexMatrix) -> Result<Self> {
        self.pullback_with(u, &Numerics::DEFAULT)
    }

    pub fn pullback_with(&self, u: &ComplexMatrix, numerics: &Numerics) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(invalid!("pullback: unitary of dimension {} on a state of dimension {}", u.dim(), self.dim()));
        }
        if !is_unitary(u, numerics.unitarity_tol) {
            return Err(invalid!("pullback: operator is not unitary within {}", numerics.unitarity_tol));
        }
        self.pullback_unchecked(u)
    }

    /// Like [`pullback`](Self::pullback) without the unitarity check, for
    /// callers that already know `u` is unitary (e.g. tensor products of
    /// verified factors, where a dense check would dominate the cost).
    pub fn pullback_unchecked(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(invalid!("pullback: unitary of dimension {} on a state of dimension {}", u.dim(), self.dim()));
        }
        let w = u.apply_adjoint(self.vector.as_slice());
        Ok(Self {
            vector: UnitVector::normalized(w)?,
            level: self.level,
        })
    }

    /// The density matrix `P_ξ = ξ ξ*`.
    pub fn density_matrix(&self) -> ComplexMatrix {
        projection(&self.vector)
    }
}

/// `⟨x|a x⟩`.
pub(crate) fn quadratic_form(a: &ComplexMatrix, x: &[Complex64]) -> Complex64 {
    inner(x, &a.apply(x))
}

/// Rank-one projection onto `Cξ`.
pub fn projection(xi: &UnitVector) -> ComplexMatrix {
    ComplexMatrix::outer(xi.as_slice(), xi.as_slice()).expect("valid vector")
}

fn same_dim(phi: &VectorState, psi: &VectorState, what: &str) -> Result<()> {
    if phi.dim() != psi.dim() {
        return Err(invalid!("{what}: states of dimension {} and {}", phi.dim(), psi.dim()));
    }
    Ok(())
}

/// Matrix of `P_ξ − P_η` compressed to an orthonormal basis of `span{ξ, η}`.
/// The difference vanishes on the orthogonal complement, so its nonzero
/// spectrum is that of this (at most) 2×2 Hermitian matrix.
fn compressed_difference(xi: &[Complex64], eta: &[Complex64]) -> Result<ComplexMatrix> {
    let t = inner(xi, eta);
    let mut b2: Vec<Complex64> = eta.iter().zip(xi).map(|(y, x)| y - t * x).collect();
    let r = norm(&b2);
    if r <= 1e-300 {
        return ComplexMatrix::from_vec(1, alloc::vec![Complex64::new(1.0 - t.norm_sqr(), 0.0)]);
    }
    b2.iter_mut().for_each(|z| *z /= r);
    let basis = [xi, &b2[..]];
    ComplexMatrix::from_fn(2, |i, j| {
        let bi = basis[i];
        let bj = basis[j];
        inner(bi, xi) * inner(xi, bj) - inner(bi, eta) * inner(eta, bj)
    })
}

/// Norm distance `‖ω_ξ − ω_η‖`, i.e. the trace norm of `P_ξ − P_η`.
pub fn state_distance(phi: &VectorState, psi: &VectorState) -> Result<f64> {
    same_dim(phi, psi, "state_distance")?;
    let m = compressed_difference(phi.vector.as_slice(), psi.vector.as_slice())?;
    Ok(hermitian_eigenvalues(&m)?.iter().map(|x| x.abs()).sum())
}

/// The separating element `a = P_ξ − P_η` together with `ω_ξ(a)`, `ω_η(a)`
/// and `‖a‖`.
#[derive(Clone, Debug)]
pub struct SeparationWitness {
    pub witness: ComplexMatrix,
    pub value_phi: f64,
    pub value_psi: f64,
    pub norm: f64,
}

pub fn separation_witness(xi: &UnitVector, eta: &UnitVector) -> Result<SeparationWitness> {
    if xi.dim() != eta.dim() {
        return Err(invalid!("separation_witness: vectors of dimension {} and {}", xi.dim(), eta.dim()));
    }
    let witness = &projection(xi) - &projection(eta);
    let value_phi = quadratic_form(&witness, xi.as_slice()).re;
    let value_psi = quadratic_form(&witness, eta.as_slice()).re;
    let m = compressed_difference(xi.as_slice(), eta.as_slice())?;
    let norm = hermitian_eigenvalues(&m)?.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    Ok(SeparationWitness {
        witness,
        value_phi,
        value_psi,
        norm,
    })
}

/// `max_{a ∈ test_set} |φ(a) − ψ(u a u*)|`.
///
/// Every test element must lie in the unit ball (`‖a‖ ≤ 1` up to
/// `contraction_tol`).
pub fn sup_gap(phi: &VectorState, psi: &VectorState, u: &ComplexMatrix, test_set: &[ComplexMatrix]) -> Result<f64> {
    sup_gap_with(phi, psi, u, test_set, &Numerics::DEFAULT)
}

pub fn sup_gap_with(
    phi: &VectorState,
    psi: &VectorState,
    u: &ComplexMatrix,
    test_set: &[ComplexMatrix],
    numerics: &Numerics,
) -> Result<f64> {
    for (k, a) in test_set.iter().enumerate() {
        if a.dim() != phi.dim() {
            return Err(invalid!("sup_gap: test element {k} has dimension {}", a.dim()));
        }
        let n = operator_norm(a)?;
        if n > 1.0 + numerics.contraction_tol {
            return Err(invalid!("sup_gap: test element {k} has norm {n} > 1"));
        }
    }
    sup_gap_trusted(phi, psi, u, test_set)
}

/// `sup_gap` for a test set already known to be a set of contractions of the
/// right dimension.
pub(crate) fn sup_gap_trusted(
    phi: &VectorState,
    psi: &VectorState,
    u: &ComplexMatrix,
    test_set: &[ComplexMatrix],
) -> Result<f64> {
    same_dim(phi, psi, "sup_gap")?;
    if u.dim() != phi.dim() {
        return Err(invalid!("sup_gap: unitary of dimension {} on states of dimension {}", u.dim(), phi.dim()));
    }
    // ψ(u a u*) = ⟨u*η| a u*η⟩.
    let pulled = u.apply_adjoint(psi.vector.as_slice());
    let xi = phi.vector.as_slice();
    Ok(test_set
        .iter()
        .map(|a| (quadratic_form(a, xi) - quadratic_form(a, &pulled)).norm())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rotation_unitary, trace_norm};
    use crate::random::{haar_unitary, rng_from_seed, unit_vector};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn state(v: UnitVector) -> VectorState {
        VectorState::new(v).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let e1 = state(UnitVector::basis(2, 0).unwrap());
        assert_eq!(e1.evaluate(&ComplexMatrix::identity(2)).unwrap(), c(1.0, 0.0));
        let d = ComplexMatrix::diagonal(&[c(3.0, 0.0), c(5.0, 0.0)]).unwrap();
        assert_eq!(e1.evaluate(&d).unwrap(), c(3.0, 0.0));
        assert!(e1.evaluate(&ComplexMatrix::identity(4)).is_err());
        assert!(VectorState::new(UnitVector::basis(3, 0).unwrap()).is_err());
    }

    #[test]
    fn pullback_of_rotation_returns_first_basis_vector() {
        let t: f64 = 0.35;
        let s = libm::sqrt(1.0 - t * t);
        let phi = state(UnitVector::from_real(&[t, s]).unwrap());
        let pulled = phi.pullback(&rotation_unitary(t).unwrap()).unwrap();
        let ov = pulled.vector().overlap(&UnitVector::basis(2, 0).unwrap()).unwrap();
        assert!((ov.norm() - 1.0).abs() < 1e-14);
        assert_eq!(phi.pullback(&ComplexMatrix::identity(2)).unwrap(), phi);
        let not_unitary = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert!(phi.pullback(&not_unitary).is_err());
    }

    #[test]
    fn distance_examples() {
        let mut rng = rng_from_seed(3);
        let phi = state(unit_vector(4, &mut rng).unwrap());
        assert!(state_distance(&phi, &phi).unwrap().abs() < 1e-15);
        let e1 = state(UnitVector::basis(4, 0).unwrap());
        let e2 = state(UnitVector::basis(4, 1).unwrap());
        assert!((state_distance(&e1, &e2).unwrap() - 2.0).abs() < 1e-15);
        let a = state(UnitVector::from_real(&[0.6, 0.8, 0.0, 0.0]).unwrap());
        assert!((state_distance(&e1, &a).unwrap() - 1.6).abs() < 1e-8);
        assert!(state_distance(&e1, &state(UnitVector::basis(2, 0).unwrap())).is_err());
    }

    #[test]
    fn distance_agrees_with_dense_trace_norm() {
        let mut rng = rng_from_seed(5);
        for &d in &[2usize, 4, 8, 16] {
            let x = unit_vector(d, &mut rng).unwrap();
            let y = unit_vector(d, &mut rng).unwrap();
            let dense = trace_norm(&(&projection(&x) - &projection(&y))).unwrap();
            let fast = state_distance(&state(x), &state(y)).unwrap();
            assert!((dense - fast).abs() < 1e-10, "d={d}: {dense} vs {fast}");
        }
    }

    #[test]
    fn witness_examples() {
        let e1 = UnitVector::basis(2, 0).unwrap();
        let e2 = UnitVector::basis(2, 1).unwrap();
        let same = separation_witness(&e1, &e1).unwrap();
        assert_eq!(same.witness, ComplexMatrix::zeros(2));
        assert_eq!((same.value_phi, same.value_psi), (0.0, 0.0));
        let orth = separation_witness(&e1, &e2).unwrap();
        assert_eq!((orth.value_phi, orth.value_psi), (1.0, -1.0));
        assert!((orth.norm - 1.0).abs() < 1e-15);
        let cval: f64 = 0.25;
        let y = UnitVector::from_real(&[cval, libm::sqrt(1.0 - cval * cval)]).unwrap();
        let w = separation_witness(&e1, &y).unwrap();
        assert!((w.value_phi - 0.9375).abs() < 1e-10);
        assert!((w.value_psi + 0.9375).abs() < 1e-10);
        assert!((w.norm - libm::sqrt(0.9375)).abs() < 1e-8);
        assert!((operator_norm(&w.witness).unwrap() - w.norm).abs() < 1e-8);
    }

    #[test]
    fn sup_gap_examples() {
        let mut rng = rng_from_seed(9);
        let psi = state(unit_vector(2, &mut rng).unwrap());
        let tests = [ComplexMatrix::identity(2), ComplexMatrix::matrix_unit(2, 0, 1).unwrap()];
        assert_eq!(sup_gap(&psi, &psi, &ComplexMatrix::identity(2), &tests).unwrap(), 0.0);
        let v = haar_unitary(2, &mut rng).unwrap();
        let phi = psi.pullback(&v).unwrap();
        assert!(sup_gap(&phi, &psi, &v, &tests).unwrap() < 1e-14);
        let too_big = [ComplexMatrix::identity(2).scale(c(2.0, 0.0))];
        assert!(sup_gap(&phi, &psi, &v, &too_big).is_err());
    }
}
