//! Smallest `‖I − u‖` over unitaries that move one vector state onto another.
//!
//! Two constraint modes are kept apart on purpose:
//!
//! - *exact*: `u ξ = η` (the condition `⟨uξ|η⟩ = 1` for unit vectors);
//! - *state equality*: `ω_ξ = ω_η ∘ Ad u`, which only forces `u ξ ∈ Tη` and so
//!   leaves a free phase.
//!
//! With `t = ⟨ξ|η⟩`, every `u` with `uξ = η` satisfies `‖I − u‖ ≥ ‖ξ − η‖ =
//! √(2(1 − Re t))` and [`two_plane_unitary`] attains it. Optimizing the phase
//! as well gives `√(2(1 − |t|))`. The brute-force oracles below search the
//! constraint set directly and do not use either formula.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{domain, invalid};
use crate::linalg::{
    exp_i_hermitian, inner, kron_vec, norm, operator_norm, two_plane_unitary, ComplexMatrix, UnitVector,
};
use crate::numerics::MAX_DIM;
use crate::random::rng_from_seed;
use crate::{Error, Result};

/// Overlap data for a pair of unit vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OverlapReport {
    /// `t = ⟨ξ|η⟩`.
    pub overlap: Complex64,
    pub abs_overlap: f64,
    /// `√(2(1 − |t|))`.
    pub closed_form_distance: f64,
    /// `√(2(1 − Re t))`, the minimum under the exact constraint `uξ = η`.
    pub exact_constraint_distance: f64,
}

fn same_dim(xi: &UnitVector, eta: &UnitVector) -> Result<()> {
    if xi.dim() != eta.dim() {
        return Err(invalid!("vectors of dimension {} and {}", xi.dim(), eta.dim()));
    }
    Ok(())
}

fn distance_from_overlap(x: f64) -> f64 {
    libm::sqrt((2.0 * (1.0 - x)).max(0.0))
}

pub fn min_distance_closed_form(xi: &UnitVector, eta: &UnitVector) -> Result<OverlapReport> {
    same_dim(xi, eta)?;
    let overlap = xi.overlap(eta)?;
    let abs_overlap = overlap.norm().min(1.0);
    Ok(OverlapReport {
        overlap,
        abs_overlap,
        closed_form_distance: distance_from_overlap(abs_overlap),
        exact_constraint_distance: distance_from_overlap(overlap.re.min(1.0)),
    })
}

/// Which unitaries the oracle searches over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// `u ξ = η`.
    Exact,
    /// `u ξ = λ η` for some `|λ| = 1`.
    StateEquality,
}

/// Settings for the seeded brute-force search.
#[derive(Clone, Copy, Debug)]
pub struct OracleSettings {
    /// Total number of objective evaluations.
    pub budget: usize,
    pub seed: u64,
    /// Number of starts; the first one is the origin of the parametrization.
    pub restarts: usize,
}

impl OracleSettings {
    pub fn new(budget: usize, seed: u64) -> Self {
        Self { budget, seed, restarts: 4 }
    }
}

const MIN_BUDGET: usize = 1000;
const INITIAL_STEP: f64 = 0.5;
const FINAL_STEP: f64 = 1e-6;

/// Brute-force minimum of `‖I − u‖` over unitaries with `u ξ = η`.
///
/// Candidates are `u = w u₀` where `u₀ = two_plane_unitary(ξ, η)` and `w`
/// ranges over the stabilizer of `η`: `w = ηη* + B exp(iK) B*` for an
/// orthonormal basis `B` of `η^⊥` and Hermitian `K`. The `(d−1)²` real
/// parameters of `K` are searched by seeded random restarts and coordinate
/// descent with step halving from 0.5 to 1e-6.
pub fn min_distance_bruteforce(xi: &UnitVector, eta: &UnitVector, budget: usize, seed: u64) -> Result<f64> {
    search(xi, eta, Constraint::Exact, &OracleSettings::new(budget, seed))
}

/// Brute-force minimum of `‖I − u‖` subject to `ω_ξ = ω_η ∘ Ad u`.
pub fn min_distance_bruteforce_state(xi: &UnitVector, eta: &UnitVector, budget: usize, seed: u64) -> Result<f64> {
    search(xi, eta, Constraint::StateEquality, &OracleSettings::new(budget, seed))
}

pub fn search(xi: &UnitVector, eta: &UnitVector, constraint: Constraint, settings: &OracleSettings) -> Result<f64> {
    same_dim(xi, eta)?;
    let d = xi.dim();
    if !(2..=4).contains(&d) {
        return Err(domain!("brute-force oracle supports dimensions 2 to 4, got {d}"));
    }
    if settings.budget < MIN_BUDGET {
        return Err(invalid!("oracle budget {} is below {MIN_BUDGET}", settings.budget));
    }
    let problem = StabilizerProblem::new(xi, eta, constraint)?;
    let restarts = settings.restarts.max(1);
    let per_start = settings.budget / restarts;
    let mut rng = rng_from_seed(settings.seed);
    let mut best = f64::INFINITY;
    for r in 0..restarts {
        let start: Vec<f64> = if r == 0 {
            alloc::vec![0.0; problem.n_params()]
        } else {
            (0..problem.n_params())
                .map(|_| core::f64::consts::PI * (2.0 * rng.random::<f64>() - 1.0))
                .collect()
        };
        best = best.min(coordinate_descent(&problem, start, per_start)?);
    }
    Ok(best)
}

struct StabilizerProblem {
    xi: UnitVector,
    eta: UnitVector,
    /// Orthonormal basis of `η^⊥`.
    complement: Vec<Vec<Complex64>>,
    constraint: Constraint,
    fixed_base: Option<ComplexMatrix>,
}

impl StabilizerProblem {
    fn new(xi: &UnitVector, eta: &UnitVector, constraint: Constraint) -> Result<Self> {
        let d = eta.dim();
        let y = eta.as_slice();
        let mut complement: Vec<Vec<Complex64>> = Vec::with_capacity(d - 1);
        for k in 0..d {
            if complement.len() == d - 1 {
                break;
            }
            let mut v = alloc::vec![Complex64::new(0.0, 0.0); d];
            v[k] = Complex64::new(1.0, 0.0);
            for _ in 0..2 {
                let p = inner(y, &v);
                v.iter_mut().zip(y).for_each(|(a, b)| *a -= p * b);
                for c in &complement {
                    let p = inner(c, &v);
                    v.iter_mut().zip(c).for_each(|(a, b)| *a -= p * b);
                }
            }
            let n = norm(&v);
            if n > 1e-6 {
                v.iter_mut().for_each(|a| *a /= n);
                complement.push(v);
            }
        }
        let fixed_base = match constraint {
            Constraint::Exact => Some(two_plane_unitary(xi, eta)?),
            Constraint::StateEquality => None,
        };
        Ok(Self {
            xi: xi.clone(),
            eta: eta.clone(),
            complement,
            constraint,
            fixed_base,
        })
    }

    fn n_generator_params(&self) -> usize {
        let m = self.complement.len();
        m * m
    }

    fn n_params(&self) -> usize {
        self.n_generator_params() + usize::from(self.constraint == Constraint::StateEquality)
    }

    fn unitary(&self, params: &[f64]) -> Result<ComplexMatrix> {
        let d = self.eta.dim();
        let m = self.complement.len();
        // Hermitian generator on η^⊥: diagonal first, then (re, im) of the upper triangle.
        let mut k = ComplexMatrix::zeros(m);
        let mut idx = 0;
        for i in 0..m {
            k[(i, i)] = Complex64::new(params[idx], 0.0);
            idx += 1;
        }
        for i in 0..m {
            for j in i + 1..m {
                let z = Complex64::new(params[idx], params[idx + 1]);
                idx += 2;
                k[(i, j)] = z;
                k[(j, i)] = z.conj();
            }
        }
        let small = exp_i_hermitian(&k)?;
        let y = self.eta.as_slice();
        let b = &self.complement;
        let w = ComplexMatrix::from_fn(d, |r, c| {
            let mut acc = y[r] * y[c].conj();
            for i in 0..m {
                for j in 0..m {
                    acc += b[i][r] * small[(i, j)] * b[j][c].conj();
                }
            }
            acc
        })?;
        let base = match (&self.fixed_base, self.constraint) {
            (Some(base), _) => base.clone(),
            (None, _) => {
                let phase = Complex64::from_polar(1.0, params[idx]);
                two_plane_unitary(&self.xi, &self.eta.with_phase(phase))?
            }
        };
        Ok(&w * &base)
    }

    fn objective(&self, params: &[f64]) -> Result<f64> {
        let u = self.unitary(params)?;
        operator_norm(&(&ComplexMatrix::identity(u.dim()) - &u))
    }
}

fn coordinate_descent(problem: &StabilizerProblem, mut point: Vec<f64>, budget: usize) -> Result<f64> {
    let mut best = problem.objective(&point)?;
    let mut evals = 1;
    let mut step = INITIAL_STEP;
    while step >= FINAL_STEP && evals < budget {
        let mut improved = false;
        for i in 0..point.len() {
            for dir in [1.0, -1.0] {
                if evals >= budget {
                    break;
                }
                let old = point[i];
                point[i] = old + dir * step;
                let value = problem.objective(&point)?;
                evals += 1;
                if value < best {
                    best = value;
                    improved = true;
                    break;
                }
                point[i] = old;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok(best)
}

/// Closed forms for the product problem on `⊗ξ_i` and `⊗η_i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductDistance {
    /// `p = ∏ |⟨ξ_i|η_i⟩|`.
    pub overlap_product: f64,
    /// `√(2(1 − p))`.
    pub constant_one: f64,
    /// `2√(2(1 − p))`, the value with a leading factor 2.
    pub doubled: f64,
}

fn product_inputs(xis: &[UnitVector], etas: &[UnitVector]) -> Result<usize> {
    if xis.len() != etas.len() || xis.is_empty() {
        return Err(invalid!("need equally many factors, got {} and {}", xis.len(), etas.len()));
    }
    let mut total: u128 = 1;
    for (x, y) in xis.iter().zip(etas) {
        same_dim(x, y)?;
        if x.dim() < 2 {
            return Err(invalid!("factor dimension {} is below 2", x.dim()));
        }
        total = total.saturating_mul(x.dim() as u128);
    }
    if total > MAX_DIM as u128 {
        return Err(Error::SizeLimit {
            what: "product dimension",
            requested: total,
            cap: MAX_DIM as u128,
        });
    }
    Ok(total as usize)
}

pub fn product_min_distance(xis: &[UnitVector], etas: &[UnitVector]) -> Result<ProductDistance> {
    product_inputs(xis, etas)?;
    let mut p = 1.0;
    for (x, y) in xis.iter().zip(etas) {
        p *= x.overlap(y)?.norm();
    }
    let p = p.min(1.0);
    let constant_one = distance_from_overlap(p);
    Ok(ProductDistance {
        overlap_product: p,
        constant_one,
        doubled: 2.0 * constant_one,
    })
}

/// Tensor product of unit vectors, first factor outermost.
pub fn tensor_vectors(vs: &[UnitVector]) -> Result<UnitVector> {
    let mut acc = alloc::vec![Complex64::new(1.0, 0.0)];
    for v in vs {
        acc = kron_vec(&acc, v.as_slice())?;
    }
    UnitVector::normalized(acc)
}

/// Oracle value on the product space under the state-equality constraint,
/// compared with both closed forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductAdjudication {
    pub closed: ProductDistance,
    pub oracle: f64,
    pub deviation_constant_one: f64,
    pub deviation_doubled: f64,
}

pub fn adjudicate_product(
    xis: &[UnitVector],
    etas: &[UnitVector],
    budget: usize,
    seed: u64,
) -> Result<ProductAdjudication> {
    let closed = product_min_distance(xis, etas)?;
    let xi = tensor_vectors(xis)?;
    let eta = tensor_vectors(etas)?;
    let oracle = min_distance_bruteforce_state(&xi, &eta, budget, seed)?;
    Ok(ProductAdjudication {
        closed,
        oracle,
        deviation_constant_one: (oracle - closed.constant_one).abs(),
        deviation_doubled: (oracle - closed.doubled).abs(),
    })
}
