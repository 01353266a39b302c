//! The map from angle sequences to product states on `M_{2^n}`, the
//! intertwiner chain `v_n = u_1 ⊗ … ⊗ u_n`, and the separation experiment.
//!
//! `u_j` is the plane rotation by `θ_j = β_j − α_j`, which sends
//! `(cos α_j, sin α_j)` to `(cos β_j, sin β_j)`. Its eigenvalues are
//! `e^{±iθ_j}`, so the spectrum of `u_{m+1} ⊗ … ⊗ u_n` is
//! `{exp(i Σ ε_j θ_j) : ε ∈ {±1}^{n−m}}` and
//! `‖v_m ⊗ I − v_n‖ = max_ε |1 − exp(i Σ ε_j θ_j)|`. That value can exceed
//! `√(2(1 − ∏ cos θ_j))` once `Σ |θ_j|` is large, even when `Σ θ_j²` is small,
//! so the chain records the measured gap, the sign-pattern value and the
//! product bound side by side without asserting the bound.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::car::{embed, product_vector, TruncationLevel};
use crate::error::invalid;
use crate::linalg::{is_unitary, kron, norm, operator_norm, plane_rotation, ComplexMatrix, UnitVector};
use crate::numerics::{Numerics, MAX_LEVEL};
use crate::sequences::AngleSequence;
use crate::states::{separation_witness, state_distance, VectorState};
use crate::{Error, Result};

/// The vector state of `⊗_{j ≤ n} (cos α_j, sin α_j)` on `M_{2^n}`.
pub fn phi_truncate(alpha: &AngleSequence, n: u32) -> Result<VectorState> {
    let level = TruncationLevel::new(n)?;
    if alpha.len() < n as usize {
        return Err(invalid!("sequence of length {} is shorter than level {n}", alpha.len()));
    }
    if n == 0 {
        return VectorState::new(UnitVector::basis(1, 0)?);
    }
    let state = VectorState::new(product_vector(alpha.values(), 1, n as usize)?)?;
    debug_assert_eq!(state.level(), level);
    Ok(state)
}

/// Phase attached to each factor `u_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PhasePolicy {
    /// `u_j = R(θ_j)`, eigenvalues `e^{±iθ_j}`.
    #[default]
    None,
    /// `u_j = e^{iθ_j} R(θ_j)`, eigenvalues `1` and `e^{2iθ_j}`. Maps the
    /// `α_j` vector onto the `β_j` vector up to the phase `e^{iθ_j}`.
    EigenvalueOne,
}

impl PhasePolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            PhasePolicy::None => "none",
            PhasePolicy::EigenvalueOne => "eigenvalue-one",
        }
    }

    fn eigenphases(self, theta: f64) -> (f64, f64) {
        match self {
            PhasePolicy::None => (theta, -theta),
            PhasePolicy::EigenvalueOne => (0.0, 2.0 * theta),
        }
    }

    fn factor(self, theta: f64) -> ComplexMatrix {
        let r = plane_rotation(theta);
        match self {
            PhasePolicy::None => r,
            PhasePolicy::EigenvalueOne => r.scale(Complex64::from_polar(1.0, theta)),
        }
    }
}

impl core::str::FromStr for PhasePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(PhasePolicy::None),
            "eigenvalue-one" => Ok(PhasePolicy::EigenvalueOne),
            _ => Err(invalid!("unknown phase policy '{s}'")),
        }
    }
}

/// How `gap_to_prev` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapMethod {
    /// Operator norm of the dense `v_{n−1} ⊗ I − v_n`.
    Dense,
    /// `‖v_{n−1} ⊗ (I − u_n)‖ = ‖I₂ − u_n‖`, used above the dense level cap.
    Factorized,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainLevel {
    pub n: u32,
    pub theta: f64,
    pub gap_to_prev: f64,
    pub gap_method: GapMethod,
    /// `√(2(1 − cos θ_n))`.
    pub paper_bound: f64,
    /// `max |1 − e^{iφ}|` over the eigenphases of `u_n`.
    pub exact_eigenphase_norm: f64,
    /// `∏_{j ≤ n} cos θ_j`.
    pub overlap_product: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainOptions {
    pub phase_policy: PhasePolicy,
    /// Levels up to this one get dense gap measurements.
    pub dense_max_level: u32,
}

impl Default for ChainOptions {
    fn default() -> Self {
        Self {
            phase_policy: PhasePolicy::None,
            dense_max_level: 8,
        }
    }
}

/// `v_1, …, v_N` with per-step gap data. Dense `v_n` are rebuilt on demand
/// from the stored 2×2 factors.
#[derive(Clone, Debug)]
pub struct IntertwinerChain {
    alpha: AngleSequence,
    beta: AngleSequence,
    policy: PhasePolicy,
    factors: Vec<ComplexMatrix>,
    levels: Vec<ChainLevel>,
}

pub fn build_intertwiner_chain(alpha: &AngleSequence, beta: &AngleSequence, depth: u32) -> Result<IntertwinerChain> {
    build_intertwiner_chain_with(alpha, beta, depth, &ChainOptions::default())
}

pub fn build_intertwiner_chain_with(
    alpha: &AngleSequence,
    beta: &AngleSequence,
    depth: u32,
    options: &ChainOptions,
) -> Result<IntertwinerChain> {
    TruncationLevel::new(depth)?;
    if alpha.len() != beta.len() {
        return Err(invalid!("sequences of length {} and {}", alpha.len(), beta.len()));
    }
    if alpha.len() < depth as usize {
        return Err(invalid!("sequences of length {} are shorter than depth {depth}", alpha.len()));
    }
    let policy = options.phase_policy;
    let mut factors = Vec::with_capacity(depth as usize);
    let mut levels = Vec::with_capacity(depth as usize);
    let mut v_prev = ComplexMatrix::identity(1);
    let mut product = 1.0;
    for n in 1..=depth {
        let j = n as usize - 1;
        let theta = beta.values()[j] - alpha.values()[j];
        let u = policy.factor(theta);
        if !is_unitary(&u, Numerics::DEFAULT.unitarity_tol) {
            return Err(Error::InvalidInput(alloc::format!("factor u_{n} is not unitary")));
        }
        product *= libm::cos(theta);
        let (p1, p2) = policy.eigenphases(theta);
        let exact_eigenphase_norm = gap_from_phase(p1).max(gap_from_phase(p2));
        let (gap_to_prev, gap_method, v_next) = if n <= options.dense_max_level {
            let v = kron(&v_prev, &u)?;
            let lifted = kron(&v_prev, &ComplexMatrix::identity(2))?;
            (operator_norm(&(&lifted - &v))?, GapMethod::Dense, v)
        } else {
            let i2 = ComplexMatrix::identity(2);
            (operator_norm(&(&i2 - &u))?, GapMethod::Factorized, v_prev)
        };
        v_prev = v_next;
        levels.push(ChainLevel {
            n,
            theta,
            gap_to_prev,
            gap_method,
            paper_bound: libm::sqrt((2.0 * (1.0 - libm::cos(theta))).max(0.0)),
            exact_eigenphase_norm,
            overlap_product: product,
        });
        factors.push(u);
    }
    Ok(IntertwinerChain {
        alpha: alpha.clone(),
        beta: beta.clone(),
        policy,
        factors,
        levels,
    })
}

/// `|1 − e^{iφ}| = 2|sin(φ/2)|`.
fn gap_from_phase(phi: f64) -> f64 {
    2.0 * libm::sin(0.5 * phi).abs()
}

/// `max over one eigenphase per factor of |1 − exp(i Σ φ_j)|`.
pub fn sign_pattern_norm(phase_pairs: &[(f64, f64)]) -> Result<f64> {
    const MAX_FACTORS: usize = 24;
    if phase_pairs.len() > MAX_FACTORS {
        return Err(Error::SizeLimit {
            what: "sign-pattern enumeration factors",
            requested: phase_pairs.len() as u128,
            cap: MAX_FACTORS as u128,
        });
    }
    let k = phase_pairs.len();
    let mut best: f64 = 0.0;
    for mask in 0u32..(1u32 << k) {
        let total: f64 = phase_pairs
            .iter()
            .enumerate()
            .map(|(j, &(a, b))| if mask & (1 << j) == 0 { a } else { b })
            .sum();
        best = best.max(gap_from_phase(total));
    }
    Ok(best)
}

impl IntertwinerChain {
    pub fn depth(&self) -> u32 {
        self.levels.len() as u32
    }

    pub fn levels(&self) -> &[ChainLevel] {
        &self.levels
    }

    pub fn factors(&self) -> &[ComplexMatrix] {
        &self.factors
    }

    pub fn phase_policy(&self) -> PhasePolicy {
        self.policy
    }

    pub fn alpha(&self) -> &AngleSequence {
        &self.alpha
    }

    pub fn beta(&self) -> &AngleSequence {
        &self.beta
    }

    /// Dense `v_n = u_1 ⊗ … ⊗ u_n` (`v_0 = [1]`).
    pub fn unitary(&self, n: u32) -> Result<ComplexMatrix> {
        if n > self.depth() {
            return Err(Error::Level(alloc::format!("chain has depth {}, requested {n}", self.depth())));
        }
        let mut v = ComplexMatrix::identity(1);
        for u in &self.factors[..n as usize] {
            v = kron(&v, u)?;
        }
        Ok(v)
    }

    /// Eigenphase pairs of `u_{m+1}, …, u_n`.
    fn phase_pairs(&self, m: u32, n: u32) -> Vec<(f64, f64)> {
        self.levels[m as usize..n as usize]
            .iter()
            .map(|l| self.policy.eigenphases(l.theta))
            .collect()
    }

    /// `‖v_m ⊗ I − v_n‖` from the spectrum of `u_{m+1} ⊗ … ⊗ u_n`.
    pub fn spectral_block_gap(&self, m: u32, n: u32) -> Result<f64> {
        self.check_block(m, n)?;
        sign_pattern_norm(&self.phase_pairs(m, n))
    }

    /// Dense operator norm of `v_m ⊗ I_{2^{n−m}} − v_n`.
    pub fn measured_block_gap(&self, m: u32, n: u32) -> Result<f64> {
        self.check_block(m, n)?;
        let vm = self.unitary(m)?;
        let vn = self.unitary(n)?;
        let lifted = kron(&vm, &ComplexMatrix::identity(1 << (n - m)))?;
        operator_norm(&(&lifted - &vn))
    }

    /// `√(2(1 − ∏_{j=m+1}^{n} cos θ_j))`.
    pub fn product_bound(&self, m: u32, n: u32) -> Result<f64> {
        self.check_block(m, n)?;
        let p: f64 = self.levels[m as usize..n as usize].iter().map(|l| libm::cos(l.theta)).product();
        Ok(libm::sqrt((2.0 * (1.0 - p)).max(0.0)))
    }

    fn check_block(&self, m: u32, n: u32) -> Result<()> {
        if m > n || n > self.depth() {
            return Err(Error::Level(alloc::format!(
                "block ({m}, {n}) invalid for chain depth {}",
                self.depth()
            )));
        }
        Ok(())
    }

    /// Largest `‖v_n ξ^{(n)} − η^{(n)}‖` (phase-adjusted for
    /// [`PhasePolicy::EigenvalueOne`]) and largest unitarity defect
    /// `‖v_n* v_n − I‖` over levels `1..=max_level`.
    pub fn verify(&self, max_level: u32) -> Result<ChainCheck> {
        let top = max_level.min(self.depth());
        let mut mapping_error: f64 = 0.0;
        let mut unitarity_defect: f64 = 0.0;
        for n in 1..=top {
            let v = self.unitary(n)?;
            let xi = product_vector(self.alpha.values(), 1, n as usize)?;
            let eta = product_vector(self.beta.values(), 1, n as usize)?;
            let mut image = v.apply(xi.as_slice());
            if self.policy == PhasePolicy::EigenvalueOne {
                let total: f64 = self.levels[..n as usize].iter().map(|l| l.theta).sum();
                let undo = Complex64::from_polar(1.0, -total);
                image.iter_mut().for_each(|z| *z *= undo);
            }
            let diff: Vec<Complex64> = image.iter().zip(eta.as_slice()).map(|(a, b)| a - b).collect();
            mapping_error = mapping_error.max(norm(&diff));
            let defect = &(&v.adjoint() * &v) - &ComplexMatrix::identity(v.dim());
            unitarity_defect = unitarity_defect.max(operator_norm(&defect)?);
        }
        Ok(ChainCheck {
            levels_checked: top,
            mapping_error,
            unitarity_defect,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainCheck {
    pub levels_checked: u32,
    pub mapping_error: f64,
    pub unitarity_defect: f64,
}

/// One row of the `‖v_m − v_n‖` table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockGap {
    pub m: u32,
    pub n: u32,
    pub measured: f64,
    pub spectral: f64,
    pub product_bound: f64,
    /// `measured > product_bound + 1e-12`.
    pub exceeds_bound: bool,
}

/// All blocks `1 ≤ m < n ≤ depth` with `n − m ≤ max_span`.
pub fn cauchy_gap_table(chain: &IntertwinerChain, max_span: u32) -> Result<Vec<BlockGap>> {
    let mut rows = Vec::new();
    for m in 1..chain.depth() {
        for n in m + 1..=chain.depth().min(m + max_span) {
            let measured = chain.measured_block_gap(m, n)?;
            let spectral = chain.spectral_block_gap(m, n)?;
            let product_bound = chain.product_bound(m, n)?;
            rows.push(BlockGap {
                m,
                n,
                measured,
                spectral,
                product_bound,
                exceeds_bound: measured > product_bound + 1e-12,
            });
        }
    }
    Ok(rows)
}

/// `max_a |Φ_n(α)(a ⊗ I) − Φ_n(β)(v_n (a ⊗ I) v_n*)|` over test elements
/// `a ∈ M_{2^m}`, `m ≤ n`.
pub fn intertwining_check(chain: &IntertwinerChain, n: u32, test_set: &[ComplexMatrix]) -> Result<f64> {
    let level = TruncationLevel::new(n)?;
    let v = chain.unitary(n)?;
    let phi = phi_truncate(&chain.alpha, n)?;
    // v_n is a tensor product of factors checked for unitarity at build time.
    let pulled = phi_truncate(&chain.beta, n)?.pullback_unchecked(&v)?;
    let mut worst: f64 = 0.0;
    for a in test_set {
        let lifted = embed(a, level)?;
        let lhs = phi.evaluate(&lifted)?;
        let rhs = pulled.evaluate(&lifted)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// One row of the separation experiment on factors `m..=n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparationRow {
    pub n: u32,
    /// `P_n = ∏_{j=m}^{n} cos(α_j − β_j) = ⟨ξ_n|η_n⟩`.
    pub overlap: f64,
    /// `‖ω_{ξ_n} − ω_{η_n}‖`.
    pub state_distance: f64,
    /// `2√(1 − P_n²)`.
    pub closed_form_distance: f64,
    /// `ω_{ξ_n}(a_n)` for `a_n = P_{ξ_n} − P_{η_n}`.
    pub witness_phi: f64,
    /// `ω_{η_n}(a_n)`.
    pub witness_psi: f64,
    pub witness_norm: f64,
}

/// Most tensor factors the separation experiment will materialize densely.
pub const SEPARATION_MAX_FACTORS: usize = 10;

pub fn separation_experiment(alpha: &AngleSequence, beta: &AngleSequence, m: usize, max_n: usize) -> Result<Vec<SeparationRow>> {
    if alpha.len() != beta.len() {
        return Err(invalid!("sequences of length {} and {}", alpha.len(), beta.len()));
    }
    if m == 0 || m > max_n || max_n > alpha.len() {
        return Err(invalid!("start {m} and end {max_n} invalid for length {}", alpha.len()));
    }
    let factors = max_n - m + 1;
    if factors > SEPARATION_MAX_FACTORS.min(MAX_LEVEL as usize) {
        return Err(Error::SizeLimit {
            what: "separation experiment factors",
            requested: factors as u128,
            cap: SEPARATION_MAX_FACTORS as u128,
        });
    }
    let mut rows = Vec::with_capacity(factors);
    for n in m..=max_n {
        let xi = product_vector(alpha.values(), m, n)?;
        let eta = product_vector(beta.values(), m, n)?;
        let overlap = xi.overlap(&eta)?.re;
        let distance = state_distance(&VectorState::new(xi.clone())?, &VectorState::new(eta.clone())?)?;
        let witness = separation_witness(&xi, &eta)?;
        rows.push(SeparationRow {
            n: n as u32,
            overlap,
            state_distance: distance,
            closed_form_distance: 2.0 * libm::sqrt((1.0 - overlap * overlap).max(0.0)),
            witness_phi: witness.value_phi,
            witness_psi: witness.value_psi,
            witness_norm: witness.norm,
        });
    }
    Ok(rows)
}
