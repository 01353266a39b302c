//! Numerical laboratory for pure product states on finite truncations
//! `M_{2^n}` of the CAR algebra `M_{2^∞} = ⊗ M_2(C)`.
//!
//! The crate is `no_std` and only needs `alloc`. It provides
//!
//! - [`linalg`]: dense complex matrices, Kronecker products, operator and trace
//!   norms via a deterministic Hermitian eigen-solver, and the explicit
//!   rotations that move one unit vector onto another;
//! - [`car`]: truncation levels, the connecting embeddings `a ↦ a ⊗ I` and
//!   product vectors `⊗ (cos α_j, sin α_j)`;
//! - [`states`]: vector states `ω_ξ`, pullbacks along `Ad u`, norm distances
//!   and separating elements;
//! - [`orbit`]: closed forms for the smallest `‖I − u‖` moving one vector
//!   state onto another, with seeded brute-force oracles;
//! - [`sequences`]: angle sequences, `ℓ²` partial sums, log-space partial
//!   products and a finite-prefix equivalence classifier;
//! - [`reduction`]: the map from angle sequences to product states, the
//!   intertwiner chain `v_n = u_1 ⊗ … ⊗ u_n` and the separation experiment;
//! - [`fsigma`]: ε-nets of unitaries, test-element nets and the countable
//!   witness search for equivalence of states.
#![no_std]

extern crate alloc;

mod error;
pub mod numerics;

pub mod car;
pub mod fsigma;
pub mod linalg;
pub mod orbit;
pub mod random;
pub mod reduction;
pub mod sequences;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, UnitVector};
pub use numerics::Numerics;
pub use num_complex::Complex64;
