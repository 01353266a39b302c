//! Countable search for approximately intertwining unitaries.
//!
//! Two states `φ, ψ` on `M_d` are compared through
//! `sup_{a ∈ T} |φ(a) − ψ(u a u*)|` over a finite test net `T` of
//! contractions, as `u` ranges over an `ε`-net of `U(d)`.
//!
//! The exhaustive net is a grid over Hermitian generators: every `H` with
//! `‖H‖ ≤ π` has real diagonal entries and real and imaginary off-diagonal
//! parts in `[−π, π]`, and `‖e^{iA} − e^{iB}‖ ≤ ‖A − B‖`. Rounding each of the
//! `d²` real parameters to a grid of spacing `h` moves `H` by at most
//! `h/2 + (d − 1)h/√2` in operator norm (Gershgorin), so choosing `h` to make
//! that `≤ ε` yields an `ε`-net. Grid points are visited identity first, then
//! in a keyed pseudorandom permutation of the remaining indices, so a short
//! search samples the whole net rather than one corner of it.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::invalid;
use crate::linalg::{exp_i_hermitian, hermitian_eigen, is_unitary, operator_norm, ComplexMatrix};
use crate::numerics::Numerics;
use crate::random::{hermitian_contraction, haar_unitary, rng_from_seed, splitmix64, unit_vector};
use crate::states::{state_distance, sup_gap_trusted, VectorState};
use crate::{Error, Result};

use core::f64::consts::{FRAC_1_SQRT_2, PI};

/// Largest matrix dimension for the exhaustive grid.
pub const GRID_MAX_DIM: usize = 4;
/// Largest matrix dimension for the random net.
pub const RANDOM_NET_MAX_DIM: usize = 16;

/// Grid `ε`-net of `U(d)` indexed by `u128`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryGrid {
    dim: usize,
    epsilon: f64,
    spacing: f64,
    half_count: u64,
    cardinality: u128,
    identity_index: u128,
    key: u64,
}

impl UnitaryGrid {
    pub fn new(dim: usize, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(invalid!("net resolution {epsilon} must lie in (0, 1]"));
        }
        if dim == 0 {
            return Err(invalid!("dimension must be positive"));
        }
        let spacing = epsilon / (0.5 + (dim as f64 - 1.0) * FRAC_1_SQRT_2);
        let half_count = libm::ceil(PI / spacing) as u64;
        let base = 2 * half_count as u128 + 1;
        let params = (dim * dim) as u32;
        let too_big = || Error::SizeLimit {
            what: "unitary grid cardinality",
            requested: base.checked_pow(params).unwrap_or(u128::MAX),
            cap: u128::MAX,
        };
        if dim > GRID_MAX_DIM {
            return Err(Error::SizeLimit {
                what: "unitary grid dimension",
                requested: dim as u128,
                cap: GRID_MAX_DIM as u128,
            });
        }
        let cardinality = base.checked_pow(params).ok_or_else(too_big)?;
        let identity_index = (0..params).fold(0u128, |acc, _| acc * base + half_count as u128);
        Ok(Self {
            dim,
            epsilon,
            spacing,
            half_count,
            cardinality,
            identity_index,
            key: splitmix64(dim as u64 ^ epsilon.to_bits()),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn cardinality(&self) -> u128 {
        self.cardinality
    }

    /// Values per real parameter.
    pub fn points_per_axis(&self) -> u64 {
        2 * self.half_count + 1
    }

    fn base(&self) -> u128 {
        self.points_per_axis() as u128
    }

    /// Generator with the given grid index. Parameters are ordered
    /// `H_00, …, H_{d−1,d−1}`, then `Re H_ij, Im H_ij` for `i < j`, with the
    /// first parameter as the most significant digit.
    pub fn generator(&self, index: u128) -> Result<ComplexMatrix> {
        if index >= self.cardinality {
            return Err(invalid!("grid index {index} out of range"));
        }
        let d = self.dim;
        let params = d * d;
        let mut digits = alloc::vec![0u64; params];
        let mut rest = index;
        for slot in digits.iter_mut().rev() {
            *slot = (rest % self.base()) as u64;
            rest /= self.base();
        }
        let value = |digit: u64| (digit as f64 - self.half_count as f64) * self.spacing;
        let mut h = ComplexMatrix::zeros(d);
        for i in 0..d {
            h[(i, i)] = Complex64::new(value(digits[i]), 0.0);
        }
        let mut p = d;
        for i in 0..d {
            for j in i + 1..d {
                let z = Complex64::new(value(digits[p]), value(digits[p + 1]));
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
                p += 2;
            }
        }
        Ok(h)
    }

    pub fn element(&self, index: u128) -> Result<ComplexMatrix> {
        exp_i_hermitian(&self.generator(index)?)
    }

    /// Grid index of the point nearest to a Hermitian generator.
    pub fn index_of_generator(&self, h: &ComplexMatrix) -> Result<u128> {
        let d = self.dim;
        if h.dim() != d {
            return Err(invalid!("generator of dimension {} for a grid of dimension {d}", h.dim()));
        }
        let digit = |v: f64| -> u128 {
            let k = libm::round(v / self.spacing) as i64 + self.half_count as i64;
            k.clamp(0, 2 * self.half_count as i64) as u128
        };
        let mut index = 0u128;
        for i in 0..d {
            index = index * self.base() + digit(h[(i, i)].re);
        }
        for i in 0..d {
            for j in i + 1..d {
                index = index * self.base() + digit(h[(i, j)].re);
                index = index * self.base() + digit(h[(i, j)].im);
            }
        }
        Ok(index)
    }

    /// Nearest grid unitary to `w`, through a principal logarithm of `w`.
    pub fn nearest(&self, w: &ComplexMatrix) -> Result<(u128, ComplexMatrix)> {
        let h = principal_log(w)?;
        let index = self.index_of_generator(&h)?;
        Ok((index, self.element(index)?))
    }

    /// Grid index visited at search position `position`; position 0 is the
    /// identity.
    pub fn index_at(&self, position: u128) -> Result<u128> {
        if position >= self.cardinality {
            return Err(invalid!("search position {position} out of range"));
        }
        if position == 0 {
            return Ok(self.identity_index);
        }
        let p = feistel_permute(position, self.cardinality, self.key);
        Ok(if p == self.identity_index {
            feistel_permute(0, self.cardinality, self.key)
        } else {
            p
        })
    }
}

/// Bijection of `[0, n)` built from a balanced Feistel network on the
/// smallest even bit width covering `n`, with cycle walking.
pub fn feistel_permute(x: u128, n: u128, key: u64) -> u128 {
    debug_assert!(x < n);
    if n <= 1 {
        return 0;
    }
    let bits = 128 - (n - 1).leading_zeros();
    let half = bits.div_ceil(2);
    let mask: u128 = if half >= 64 { u64::MAX as u128 } else { (1u128 << half) - 1 };
    let round = |v: u128| -> u128 {
        let (mut l, mut r) = (v >> half, v & mask);
        for k in 0..4u64 {
            let f = splitmix64((r as u64) ^ splitmix64(key.wrapping_add(k))) as u128 & mask;
            (l, r) = (r, l ^ f);
        }
        (l << half) | r
    };
    let mut y = round(x);
    while y >= n {
        y = round(y);
    }
    y
}

/// Hermitian `H` with spectrum in `(−π, π]` and `e^{iH} = w`.
///
/// The eigenvectors come from a generic real combination of the Hermitian
/// and anti-Hermitian parts of `w`, which commute for normal `w`.
pub fn principal_log(w: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !is_unitary(w, 1e-9) {
        return Err(invalid!("logarithm requested for a non-unitary matrix"));
    }
    let d = w.dim();
    let wa = w.adjoint();
    // Irrational angle so that distinct eigenvalues of w stay distinct.
    let gamma: f64 = 0.618_033_988_749_894_8;
    let (c, s) = (libm::cos(gamma), libm::sin(gamma));
    let k = ComplexMatrix::from_fn(d, |i, j| {
        let re = (w[(i, j)] + wa[(i, j)]) * 0.5;
        let im = (w[(i, j)] - wa[(i, j)]) * Complex64::new(0.0, -0.5);
        re * c + im * s
    })?;
    let eig = hermitian_eigen(&k)?;
    let v = eig.vectors.expect("eigenvectors requested");
    let mut phases = alloc::vec![0.0; d];
    for (kk, phase) in phases.iter_mut().enumerate() {
        let col: Vec<Complex64> = (0..d).map(|i| v[(i, kk)]).collect();
        let wv = w.apply(&col);
        let lambda: Complex64 = col.iter().zip(&wv).map(|(a, b)| a.conj() * b).sum();
        let mut arg = lambda.arg();
        if arg <= -PI {
            arg += 2.0 * PI;
        }
        *phase = arg;
    }
    let h = ComplexMatrix::from_fn(d, |i, j| (0..d).map(|k| v[(i, k)] * phases[k] * v[(j, k)].conj()).sum())?;
    let back = exp_i_hermitian(&h)?;
    let err = operator_norm(&(&back - w))?;
    if err > 1e-8 {
        return Err(Error::NoConvergence(0));
    }
    Ok(h)
}

/// Seeded finite net: the identity followed by Haar-random unitaries.
#[derive(Clone, Debug)]
pub struct RandomUnitaryNet {
    seed: u64,
    elements: Vec<ComplexMatrix>,
}

impl RandomUnitaryNet {
    pub fn new(dim: usize, size: usize, seed: u64) -> Result<Self> {
        if dim == 0 || dim > RANDOM_NET_MAX_DIM {
            return Err(Error::SizeLimit {
                what: "random unitary net dimension",
                requested: dim as u128,
                cap: RANDOM_NET_MAX_DIM as u128,
            });
        }
        if size == 0 {
            return Err(invalid!("random net must be non-empty"));
        }
        let mut rng = rng_from_seed(seed);
        let mut elements = Vec::with_capacity(size);
        elements.push(ComplexMatrix::identity(dim));
        for _ in 1..size {
            elements.push(haar_unitary(dim, &mut rng)?);
        }
        Ok(Self { seed, elements })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    /// Closest element to `w` by operator norm, by exhaustive comparison.
    pub fn nearest(&self, w: &ComplexMatrix) -> Result<(usize, f64)> {
        let mut best = (0, f64::INFINITY);
        for (i, e) in self.elements.iter().enumerate() {
            let d = operator_norm(&(e - w))?;
            if d < best.1 {
                best = (i, d);
            }
        }
        Ok(best)
    }
}

/// Either kind of unitary net, addressed by search position.
#[derive(Clone, Debug)]
pub enum UnitaryNet {
    Grid(UnitaryGrid),
    Random(RandomUnitaryNet),
}

impl UnitaryNet {
    pub fn dim(&self) -> usize {
        match self {
            UnitaryNet::Grid(g) => g.dim(),
            UnitaryNet::Random(r) => r.elements[0].dim(),
        }
    }

    pub fn len(&self) -> u128 {
        match self {
            UnitaryNet::Grid(g) => g.cardinality(),
            UnitaryNet::Random(r) => r.elements.len() as u128,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn element_at(&self, position: u128) -> Result<ComplexMatrix> {
        match self {
            UnitaryNet::Grid(g) => g.element(g.index_at(position)?),
            UnitaryNet::Random(r) => r
                .elements
                .get(usize::try_from(position).unwrap_or(usize::MAX))
                .cloned()
                .ok_or_else(|| invalid!("search position {position} out of range")),
        }
    }
}

/// Statistical check of net density: `max ‖w − nearest(w)‖` over Haar
/// samples `w`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityReport {
    pub samples: usize,
    pub max_distance: f64,
    pub mean_distance: f64,
}

pub fn density_report(net: &UnitaryNet, samples: usize, seed: u64) -> Result<DensityReport> {
    let mut rng = rng_from_seed(seed);
    let mut max_distance: f64 = 0.0;
    let mut total = 0.0;
    for _ in 0..samples {
        let w = haar_unitary(net.dim(), &mut rng)?;
        let d = match net {
            UnitaryNet::Grid(g) => operator_norm(&(&g.nearest(&w)?.1 - &w))?,
            UnitaryNet::Random(r) => r.nearest(&w)?.1,
        };
        max_distance = max_distance.max(d);
        total += d;
    }
    Ok(DensityReport {
        samples,
        max_distance,
        mean_distance: if samples == 0 { 0.0 } else { total / samples as f64 },
    })
}

/// A validated finite set of contractions in `M_d`.
#[derive(Clone, Debug)]
pub struct TestElementNet {
    dim: usize,
    elements: Vec<ComplexMatrix>,
}

impl TestElementNet {
    pub fn from_elements(dim: usize, elements: Vec<ComplexMatrix>) -> Result<Self> {
        Self::from_elements_with(dim, elements, &Numerics::DEFAULT)
    }

    pub fn from_elements_with(dim: usize, elements: Vec<ComplexMatrix>, numerics: &Numerics) -> Result<Self> {
        for (k, a) in elements.iter().enumerate() {
            if a.dim() != dim {
                return Err(invalid!("test element {k} has dimension {} instead of {dim}", a.dim()));
            }
            let n = operator_norm(a)?;
            if n > 1.0 + numerics.contraction_tol {
                return Err(invalid!("test element {k} has norm {n} > 1"));
            }
        }
        Ok(Self { dim, elements })
    }

    /// `count` seeded Hermitian contractions of norm one, all matrix units,
    /// and the rank-one projections onto `count` seeded unit vectors.
    pub fn standard(dim: usize, count: usize, seed: u64) -> Result<Self> {
        let mut rng = rng_from_seed(seed);
        let mut elements = Vec::with_capacity(2 * count + dim * dim);
        for _ in 0..count {
            elements.push(hermitian_contraction(dim, 1.0, &mut rng)?);
        }
        for i in 0..dim {
            for j in 0..dim {
                elements.push(ComplexMatrix::matrix_unit(dim, i, j)?);
            }
        }
        for _ in 0..count {
            let x = unit_vector(dim, &mut rng)?;
            elements.push(ComplexMatrix::outer(x.as_slice(), x.as_slice())?);
        }
        Self::from_elements(dim, elements)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub position: u128,
    pub unitary: ComplexMatrix,
    pub gap: f64,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub witness: Option<Witness>,
    pub examined: u128,
    /// Smallest gap seen, with its position.
    pub best: Option<(u128, f64)>,
}

/// First net element `u` (in search order) with
/// `sup_{a ∈ T} |φ(a) − ψ(u a u*)| < 1`, looking at positions
/// `start..start + budget`.
pub fn witness_search(
    phi: &VectorState,
    psi: &VectorState,
    net: &UnitaryNet,
    tests: &TestElementNet,
    start: u128,
    budget: u128,
) -> Result<SearchOutcome> {
    let d = net.dim();
    if phi.dim() != d || psi.dim() != d || tests.dim() != d {
        return Err(invalid!(
            "dimensions differ: states {} and {}, net {d}, tests {}",
            phi.dim(),
            psi.dim(),
            tests.dim()
        ));
    }
    let threshold = 1.0 - Numerics::DEFAULT.strict_margin;
    let end = start.saturating_add(budget).min(net.len());
    let mut best: Option<(u128, f64)> = None;
    let mut examined = 0u128;
    for position in start..end {
        let u = net.element_at(position)?;
        let gap = sup_gap_trusted(phi, psi, &u, tests.elements())?;
        examined += 1;
        if best.is_none_or(|(_, g)| gap < g) {
            best = Some((position, gap));
        }
        if gap < threshold {
            return Ok(SearchOutcome {
                witness: Some(Witness { position, unitary: u, gap }),
                examined,
                best,
            });
        }
    }
    Ok(SearchOutcome { witness: None, examined, best })
}

/// `(‖φ − ψ∘Ad u‖, ‖φ − ψ∘Ad u‖ < 2)` for a unitary `u`.
pub fn distance_bound_check(phi: &VectorState, psi: &VectorState, u: &ComplexMatrix) -> Result<(f64, bool)> {
    let pulled = psi.pullback(u)?;
    let d = state_distance(phi, &pulled)?;
    Ok((d, d < 2.0 - 1e-9))
}
