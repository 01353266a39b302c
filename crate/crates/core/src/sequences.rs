//! Angle sequences and finite-prefix diagnostics for `Σ (α_n − β_n)² < ∞`.
//!
//! For `θ_n = α_n − β_n` the three quantities
//!
//! - `Σ θ_n²`,
//! - `Σ sin²(θ_n / 2) = ½ Σ (1 − cos θ_n)`,
//! - `∏ cos θ_n`
//!
//! are finite / positive together. Only finite prefixes can be computed, so
//! [`classify_pair`] reports a trend with explicit thresholds and an
//! "inconclusive" outcome when the diagnostics disagree.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

use crate::car::check_angle;
use crate::error::{domain, invalid};
use crate::random::rng_from_seed;
use crate::Result;

/// Named generator for an angle sequence (index `n` starts at 1).
#[derive(Clone, Debug, PartialEq)]
pub enum SequenceFamily {
    /// `0`.
    Zero,
    /// `1/n`.
    Harmonic,
    /// `1/√n`.
    InvSqrt,
    /// `n^{−p}`.
    Power(f64),
    /// Uniform on `[−scale, scale]` from a seeded stream.
    Random { scale: f64, seed: u64 },
    /// One decimal angle per line in a text file; loading needs `std`.
    File(String),
}

impl SequenceFamily {
    /// Generates the first `len` terms. `File` families are rejected here; the
    /// std companion crate resolves them.
    pub fn generate(&self, len: usize) -> Result<AngleSequence> {
        let values: Vec<f64> = match self {
            SequenceFamily::Zero => alloc::vec![0.0; len],
            SequenceFamily::Harmonic => (1..=len).map(|n| 1.0 / n as f64).collect(),
            SequenceFamily::InvSqrt => (1..=len).map(|n| 1.0 / libm::sqrt(n as f64)).collect(),
            SequenceFamily::Power(p) => (1..=len).map(|n| libm::pow(n as f64, -p)).collect(),
            SequenceFamily::Random { scale, seed } => {
                if !(*scale >= 0.0 && *scale < FRAC_PI_2) {
                    return Err(domain!("random scale {scale} must lie in [0, pi/2)"));
                }
                let mut rng = rng_from_seed(*seed);
                (0..len).map(|_| scale * (2.0 * rng.random::<f64>() - 1.0)).collect()
            }
            SequenceFamily::File(path) => {
                return Err(invalid!("sequence file '{path}' must be loaded by the caller"));
            }
        };
        let mut seq = AngleSequence::new(values)?;
        seq.family = Some(self.clone());
        Ok(seq)
    }
}

impl FromStr for SequenceFamily {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        match (head, rest) {
            ("zero", None) => Ok(SequenceFamily::Zero),
            ("harmonic", None) => Ok(SequenceFamily::Harmonic),
            ("invsqrt", None) => Ok(SequenceFamily::InvSqrt),
            ("power", Some(p)) => {
                let p: f64 = p.parse().map_err(|_| invalid!("bad exponent in '{s}'"))?;
                if !p.is_finite() {
                    return Err(invalid!("bad exponent in '{s}'"));
                }
                Ok(SequenceFamily::Power(p))
            }
            ("random", Some(r)) => {
                let (scale, seed) = r
                    .split_once(':')
                    .ok_or_else(|| invalid!("expected random:<scale>:<seed>, got '{s}'"))?;
                let scale: f64 = scale.parse().map_err(|_| invalid!("bad scale in '{s}'"))?;
                let seed: u64 = seed.parse().map_err(|_| invalid!("bad seed in '{s}'"))?;
                Ok(SequenceFamily::Random { scale, seed })
            }
            ("file", Some(path)) if !path.is_empty() => Ok(SequenceFamily::File(path.to_string())),
            _ => Err(invalid!("unknown sequence descriptor '{s}'")),
        }
    }
}

impl fmt::Display for SequenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceFamily::Zero => f.write_str("zero"),
            SequenceFamily::Harmonic => f.write_str("harmonic"),
            SequenceFamily::InvSqrt => f.write_str("invsqrt"),
            SequenceFamily::Power(p) => write!(f, "power:{p}"),
            SequenceFamily::Random { scale, seed } => write!(f, "random:{scale}:{seed}"),
            SequenceFamily::File(path) => write!(f, "file:{path}"),
        }
    }
}

/// Finite sequence of angles, each strictly inside `(−π/2, π/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleSequence {
    values: Vec<f64>,
    family: Option<SequenceFamily>,
}

impl AngleSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (i, &v) in values.iter().enumerate() {
            check_angle(v).map_err(|_| domain!("angle {v} at position {} outside (-pi/2, pi/2)", i + 1))?;
        }
        Ok(Self { values, family: None })
    }

    pub fn with_family(mut self, family: SequenceFamily) -> Self {
        self.family = Some(family);
        self
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn family(&self) -> Option<&SequenceFamily> {
        self.family.as_ref()
    }
}

fn differences(alpha: &AngleSequence, beta: &AngleSequence) -> Result<Vec<f64>> {
    if alpha.len() != beta.len() {
        return Err(invalid!("sequences of length {} and {}", alpha.len(), beta.len()));
    }
    Ok(alpha.values.iter().zip(&beta.values).map(|(a, b)| a - b).collect())
}

fn cumulative(terms: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut acc = 0.0;
    terms
        .map(|t| {
            acc += t;
            acc
        })
        .collect()
}

/// `S_k = Σ_{n ≤ k} (α_n − β_n)²`.
pub fn l2_partial_sums(alpha: &AngleSequence, beta: &AngleSequence) -> Result<Vec<f64>> {
    Ok(cumulative(differences(alpha, beta)?.into_iter().map(|t| t * t)))
}

/// `Q_k = Σ_{n ≤ k} sin²((α_n − β_n) / 2)`.
pub fn sin2_partial_sums(alpha: &AngleSequence, beta: &AngleSequence) -> Result<Vec<f64>> {
    Ok(cumulative(differences(alpha, beta)?.into_iter().map(|t| {
        let s = libm::sin(0.5 * t);
        s * s
    })))
}

/// Partial products `∏_{j ≤ k} t_j`, accumulated as a log-modulus plus sign so
/// long products do not underflow before they are read.
pub fn partial_products(factors: &[f64]) -> Vec<f64> {
    let mut log_abs = 0.0;
    let mut negative = false;
    let mut zero = false;
    factors
        .iter()
        .map(|&t| {
            if t == 0.0 {
                zero = true;
            }
            if zero {
                return 0.0;
            }
            log_abs += libm::log(t.abs());
            negative ^= t < 0.0;
            let m = libm::exp(log_abs);
            if negative {
                -m
            } else {
                m
            }
        })
        .collect()
}

/// `P_k = ∏_{j=from}^{k} cos(α_j − β_j)` for `k = from..=to` (one-based).
pub fn overlap_partial_products(alpha: &AngleSequence, beta: &AngleSequence, from: usize, to: usize) -> Result<Vec<f64>> {
    let theta = differences(alpha, beta)?;
    if from == 0 || from > to || to > theta.len() {
        return Err(invalid!("index range {from}..={to} invalid for length {}", theta.len()));
    }
    let cosines: Vec<f64> = theta[from - 1..to].iter().map(|&t| libm::cos(t)).collect();
    Ok(partial_products(&cosines))
}

/// `1 − Σ_{j ≤ k} (1 − t_j)`, a lower bound for `∏_{j ≤ k} t_j` when every
/// `t_j ∈ [0, 1]`.
pub fn weierstrass_lower_bounds(factors: &[f64]) -> Vec<f64> {
    let mut defect = 0.0;
    factors
        .iter()
        .map(|&t| {
            defect += 1.0 - t;
            1.0 - defect
        })
        .collect()
}

/// `(∏_{j ≤ split} t_j) · (1 − tail_defect)`: the Weierstrass bound applied
/// only past `split`, where `tail_defect` bounds `Σ_{j > split} (1 − t_j)`.
pub fn split_weierstrass_bound(factors: &[f64], split: usize, tail_defect: f64) -> f64 {
    let head: f64 = factors[..split.min(factors.len())].iter().product();
    head * (1.0 - tail_defect)
}

/// Thresholds for the finite-prefix classifier.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindowPolicy {
    pub min_length: usize,
    /// Fraction of the prefix used as the tail window.
    pub tail_fraction: f64,
    /// Largest tail increment of `Σ θ²` still read as convergence.
    pub sum_tail_eps: f64,
    /// `|P_K|` above this reads as a positive limit.
    pub product_floor: f64,
}

impl Default for WindowPolicy {
    fn default() -> Self {
        Self {
            min_length: 16,
            tail_fraction: 0.25,
            sum_tail_eps: 1e-6,
            product_floor: 0.05,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trend {
    Converging,
    Diverging,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    EquivalentTrend,
    InequivalentTrend,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::EquivalentTrend => "equivalent-trend",
            Verdict::InequivalentTrend => "inequivalent-trend",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Diagnostics behind a [`Verdict`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    pub length: usize,
    pub window: usize,
    pub l2_sum: f64,
    pub l2_tail: f64,
    pub l2_trend: Trend,
    pub sin2_sum: f64,
    pub sin2_tail: f64,
    pub sin2_trend: Trend,
    pub product: f64,
    pub product_trend: Trend,
}

/// Classifies `(α, β)` from the length-`K` prefix.
///
/// `Σ θ²` converges when its increment over the last `tail_fraction · K`
/// terms is at most `sum_tail_eps`; `Σ sin²(θ/2)` uses `sum_tail_eps / 4`
/// (the terms are `θ²/4` to leading order); the product converges when
/// `|P_K| > product_floor`. All three must agree, otherwise the verdict is
/// inconclusive.
pub fn classify_pair(alpha: &AngleSequence, beta: &AngleSequence, policy: &WindowPolicy) -> Result<Classification> {
    let len = alpha.len();
    if beta.len() != len {
        return Err(invalid!("sequences of length {} and {}", len, beta.len()));
    }
    if len < policy.min_length.max(1) {
        return Err(invalid!("length {len} is below the minimum {}", policy.min_length));
    }
    let window = ((len as f64 * policy.tail_fraction) as usize).clamp(1, len);
    let tail = |sums: &[f64]| {
        let last = sums[len - 1];
        let before = if window == len { 0.0 } else { sums[len - 1 - window] };
        last - before
    };
    let l2 = l2_partial_sums(alpha, beta)?;
    let sin2 = sin2_partial_sums(alpha, beta)?;
    let products = overlap_partial_products(alpha, beta, 1, len)?;

    let l2_tail = tail(&l2);
    let sin2_tail = tail(&sin2);
    let product = products[len - 1].abs();
    let trend = |converging: bool| if converging { Trend::Converging } else { Trend::Diverging };
    let l2_trend = trend(l2_tail <= policy.sum_tail_eps);
    let sin2_trend = trend(sin2_tail <= 0.25 * policy.sum_tail_eps);
    let product_trend = trend(product > policy.product_floor);

    let verdict = match (l2_trend, sin2_trend, product_trend) {
        (Trend::Converging, Trend::Converging, Trend::Converging) => Verdict::EquivalentTrend,
        (Trend::Diverging, Trend::Diverging, Trend::Diverging) => Verdict::InequivalentTrend,
        _ => Verdict::Inconclusive,
    };
    Ok(Classification {
        verdict,
        length: len,
        window,
        l2_sum: l2[len - 1],
        l2_tail,
        l2_trend,
        sin2_sum: sin2[len - 1],
        sin2_tail,
        sin2_trend,
        product,
        product_trend,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(f: SequenceFamily, n: usize) -> AngleSequence {
        f.generate(n).unwrap()
    }

    #[test]
    fn descriptors_round_trip() {
        for d in ["zero", "harmonic", "invsqrt", "power:2", "power:0.75", "random:0.5:42", "file:/tmp/a.txt"] {
            let f: SequenceFamily = d.parse().unwrap();
            assert_eq!(f.to_string(), d);
        }
        for bad in ["", "power", "power:x", "random:0.5", "random:a:1", "file:", "cubic"] {
            assert!(bad.parse::<SequenceFamily>().is_err(), "{bad}");
        }
    }

    #[test]
    fn generators_respect_the_open_interval() {
        assert!(SequenceFamily::Power(-1.0).generate(3).is_err());
        assert!(SequenceFamily::Random { scale: 1.6, seed: 0 }.generate(3).is_err());
        assert!(SequenceFamily::File("x".into()).generate(3).is_err());
        assert!(AngleSequence::new(alloc::vec![0.1, -FRAC_PI_2]).is_err());
        let r = seq(SequenceFamily::Random { scale: 0.3, seed: 9 }, 100);
        assert!(r.values().iter().all(|v| v.abs() <= 0.3));
        assert_eq!(r, seq(SequenceFamily::Random { scale: 0.3, seed: 9 }, 100));
    }

    #[test]
    fn l2_partial_sum_examples() {
        let zero = seq(SequenceFamily::Zero, 3);
        assert_eq!(l2_partial_sums(&zero, &zero).unwrap(), alloc::vec![0.0; 3]);
        let h = seq(SequenceFamily::Harmonic, 3);
        let s = l2_partial_sums(&h, &zero).unwrap();
        assert!((s[2] - 49.0 / 36.0).abs() < 1e-15);
        let inv = seq(SequenceFamily::InvSqrt, 10);
        let s = l2_partial_sums(&inv, &seq(SequenceFamily::Zero, 10)).unwrap();
        let harmonic10: f64 = (1..=10).map(|n| 1.0 / n as f64).sum();
        assert!((s[9] - harmonic10).abs() < 1e-13);
        assert!(l2_partial_sums(&h, &seq(SequenceFamily::Zero, 4)).is_err());
    }

    #[test]
    fn product_examples() {
        let zero = seq(SequenceFamily::Zero, 5);
        assert_eq!(overlap_partial_products(&zero, &zero, 1, 5).unwrap(), alloc::vec![1.0; 5]);
        let a = AngleSequence::new(alloc::vec![0.0, 0.5, 0.0]).unwrap();
        let b = AngleSequence::new(alloc::vec![0.0, 0.2, 0.0]).unwrap();
        let p = overlap_partial_products(&a, &b, 2, 2).unwrap();
        assert!((p[0] - libm::cos(0.3)).abs() < 1e-15);
        assert!(overlap_partial_products(&a, &b, 3, 2).is_err());
        assert!(overlap_partial_products(&a, &b, 1, 4).is_err());

        let dyadic = AngleSequence::new((1..=40).map(|j| libm::pow(2.0, -(j as f64))).collect()).unwrap();
        let p = overlap_partial_products(&dyadic, &seq(SequenceFamily::Zero, 40), 1, 40).unwrap();
        assert!(p.iter().all(|&x| x >= 5.0 / 6.0));
    }

    #[test]
    fn partial_products_handle_signs_and_zeros() {
        let p = partial_products(&[0.5, -2.0, 0.25, 0.0, 3.0]);
        assert_eq!(p[0], 0.5);
        assert!((p[1] + 1.0).abs() < 1e-15);
        assert!((p[2] + 0.25).abs() < 1e-15);
        assert_eq!(&p[3..], &[0.0, 0.0]);
    }

    #[test]
    fn classifier_examples() {
        let n = 4096;
        let policy = WindowPolicy::default();
        let zero = seq(SequenceFamily::Zero, n);
        let sq = seq(SequenceFamily::Power(2.0), n);
        assert_eq!(classify_pair(&sq, &zero, &policy).unwrap().verdict, Verdict::EquivalentTrend);
        let inv = seq(SequenceFamily::InvSqrt, n);
        assert_eq!(classify_pair(&inv, &zero, &policy).unwrap().verdict, Verdict::InequivalentTrend);
        let same = classify_pair(&inv, &inv, &policy).unwrap();
        assert_eq!(same.verdict, Verdict::EquivalentTrend);
        assert_eq!((same.l2_sum, same.sin2_sum, same.product), (0.0, 0.0, 1.0));
        // Short prefixes of 1/√n leave the product above the floor: the diagnostics disagree.
        let short = classify_pair(&seq(SequenceFamily::InvSqrt, 64), &seq(SequenceFamily::Zero, 64), &policy).unwrap();
        assert_eq!(short.verdict, Verdict::Inconclusive);
        assert!(classify_pair(&seq(SequenceFamily::Zero, 8), &seq(SequenceFamily::Zero, 8), &policy).is_err());
    }
}
