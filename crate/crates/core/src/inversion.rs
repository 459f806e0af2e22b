//! Inverting monotone primitives.
//!
//! [`invert_monotone`] prefers a pair's closed-form inverse and otherwise
//! runs [`invert_numeric`], a Newton iteration kept inside a shrinking
//! bracket. [`cardano_inverse`] is the closed-form real root of
//! `t + t³/3 = x`.

use crate::error::{Error, Result};
use crate::flux::FluxPair;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionConfig {
    pub rel_tol: f64,
    pub max_iter: usize,
    /// Factor applied to the moving end while searching for a bracket.
    pub bracket_growth: f64,
}

impl Default for InversionConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-13,
            max_iter: 200,
            bracket_growth: 2.0,
        }
    }
}

impl InversionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || self.max_iter < 1 || !(self.bracket_growth > 1.0) {
            return Err(Error::InvalidConfig(format!("{self:?}")));
        }
        Ok(())
    }
}

/// Doubling from 1 overflows after 1024 steps; the cap only matters for growth factors near 1.
const MAX_EXPANSIONS: usize = 4096;

fn check_range(pair: &FluxPair, x: f64) -> Result<()> {
    let range = pair.range();
    if x.is_finite() && range.contains(x) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            pair: pair.name().to_owned(),
            value: x,
            lo: range.lo,
            hi: range.hi,
        })
    }
}

/// `F⁻¹(x)`, using the pair's closed-form inverse when it has one.
pub fn invert_monotone(pair: &FluxPair, x: f64, cfg: &InversionConfig) -> Result<f64> {
    check_range(pair, x)?;
    match pair.analytic_inverse() {
        Some(inverse) => Ok(inverse(x)),
        None => invert_numeric(pair, x, cfg),
    }
}

/// `F⁻¹(x)` by safeguarded Newton, ignoring any closed-form inverse.
///
/// The bracket starts at `[-1, 1]` and its violated end is pushed out
/// geometrically. Newton steps use `f` as the derivative; a step that lands
/// outside the bracket, or a non-positive `f`, triggers a bisection step
/// instead. Iteration stops once `|F(t) - x| <= rel_tol * max(1, |x|)`, or
/// when the bracket has shrunk to adjacent floats.
pub fn invert_numeric(pair: &FluxPair, x: f64, cfg: &InversionConfig) -> Result<f64> {
    check_range(pair, x)?;
    cfg.validate()?;
    let tol = cfg.rel_tol * x.abs().max(1.0);
    let residual = |t: f64| pair.primitive(t) - x;
    let no_convergence = |iterations| Error::NoConvergence {
        pair: pair.name().to_owned(),
        value: x,
        iterations,
    };

    let (mut lo, mut hi) = (-1.0_f64, 1.0_f64);
    let mut expansions = 0;
    while residual(hi) < 0.0 {
        lo = hi;
        hi *= cfg.bracket_growth;
        expansions += 1;
        if expansions > MAX_EXPANSIONS || !hi.is_finite() {
            return Err(no_convergence(expansions));
        }
    }
    while residual(lo) > 0.0 {
        hi = lo;
        lo *= cfg.bracket_growth;
        expansions += 1;
        if expansions > MAX_EXPANSIONS || !lo.is_finite() {
            return Err(no_convergence(expansions));
        }
    }

    let mut t = 0.5 * (lo + hi);
    for _ in 0..cfg.max_iter {
        let r = residual(t);
        if r.abs() <= tol {
            return Ok(t);
        }
        if r < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // bracket is down to neighbouring floats
            return Ok(if residual(lo).abs() <= residual(hi).abs() { lo } else { hi });
        }
        let slope = pair.coefficient(t);
        let newton = t - r / slope;
        t = if slope > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            mid
        };
    }
    Err(no_convergence(cfg.max_iter))
}

/// Real root of `t + t³/3 = x`.
///
/// With `s = √(9x² + 4)` the root is `(∛(s + 3x) − ∛(s − 3x)) / ∛2`. Both
/// cube-root arguments multiply to 4, so the smaller one is taken as
/// `4 / (s + 3|x|)`, and the difference of cube roots is rewritten as
/// `(a − b) / (A² + AB + B²)` with `a − b = 6|x|` exactly. No subtraction of
/// nearby quantities remains at any magnitude of `x`.
pub fn cardano_inverse(x: f64) -> f64 {
    let abs = x.abs();
    let (big, small) = cardano_arguments(abs);
    let (b, s) = (big.cbrt(), small.cbrt());
    let t = 6.0 * abs / (2f64.cbrt() * (b * b + b * s + s * s));
    t.copysign(x)
}

/// `(s + 3a, s − 3a)` for `a ≥ 0`, with the second computed from the product identity.
pub(crate) fn cardano_arguments(abs: f64) -> (f64, f64) {
    let big = (3.0 * abs).hypot(2.0) + 3.0 * abs;
    (big, 4.0 / big)
}

/// The textbook Cardano expression evaluated as printed. Loses accuracy as
/// `|x|` grows because `√(9x² + 4) − 3|x|` cancels; kept for comparison
/// with [`cardano_inverse`].
pub fn cardano_inverse_naive(x: f64) -> f64 {
    let s = (9.0 * x * x + 4.0).sqrt();
    ((s + 3.0 * x).cbrt() - (s - 3.0 * x).cbrt()) / 2f64.cbrt()
}
