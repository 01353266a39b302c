//! Shared numerical settings.

/// Largest supported matrix dimension (truncation level 12).
pub const MAX_DIM: usize = 4096;

/// Largest supported truncation level, `2^MAX_LEVEL == MAX_DIM`.
pub const MAX_LEVEL: u32 = 12;

/// Tolerances and size caps used by checked operations.
///
/// Every routine that needs a threshold takes it from one of these values;
/// `Numerics::default()` carries the defaults used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Numerics {
    /// Dimension cap for products built by `kron`.
    pub max_dim: usize,
    /// Operator-norm tolerance for `‖a*a − I‖` in unitarity checks.
    pub unitarity_tol: f64,
    /// Allowed deviation of a unit vector's norm from 1.
    pub unit_norm_tol: f64,
    /// Slack on `‖a‖ ≤ 1` for test elements of the unit ball.
    pub contraction_tol: f64,
    /// Margin subtracted from strict thresholds (`x < 1` becomes `x < 1 − margin`).
    pub strict_margin: f64,
}

impl Numerics {
    pub const DEFAULT: Numerics = Numerics {
        max_dim: MAX_DIM,
        unitarity_tol: 1e-10,
        unit_norm_tol: 1e-10,
        contraction_tol: 1e-9,
        strict_margin: 1e-12,
    };
}

impl Default for Numerics {
    fn default() -> Self {
        Self::DEFAULT
    }
}
