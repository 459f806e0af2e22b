//! `H(x) = ∫₀ˣ F⁻¹(s) ds` by globally adaptive Gauss–Legendre quadrature,
//! plus the closed-form `h` for the cubic pair.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::flux::FluxPair;
use crate::inversion::{cardano_arguments, invert_monotone, InversionConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    /// Deepest bisection level any panel may reach.
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-11,
            max_depth: 40,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || self.max_depth < 1 {
            return Err(Error::InvalidConfig(format!("{self:?}")));
        }
        Ok(())
    }
}

const GAUSS_POINTS: usize = 10;
const MAX_PANELS: usize = 4096;

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton on the
/// three-term recurrence.
fn gauss_legendre() -> &'static [(f64, f64); GAUSS_POINTS] {
    static RULE: OnceLock<[(f64, f64); GAUSS_POINTS]> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GAUSS_POINTS;
        let mut rule = [(0.0, 0.0); GAUSS_POINTS];
        for (i, slot) in rule.iter_mut().enumerate() {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            *slot = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        rule
    })
}

fn gauss<F>(f: &mut F, a: f64, b: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let mut sum = 0.0;
    for &(node, weight) in gauss_legendre() {
        sum += weight * f(mid + half * node)?;
    }
    Ok(half * sum)
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    /// Rule applied to the panel as a whole.
    coarse: f64,
    /// Rule applied to both halves.
    fine: f64,
    left: f64,
    right: f64,
    depth: u32,
}

impl Panel {
    fn new<F>(f: &mut F, a: f64, b: f64, coarse: f64, depth: u32) -> Result<Self>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let m = 0.5 * (a + b);
        let left = gauss(f, a, m)?;
        let right = gauss(f, m, b)?;
        Ok(Self { a, b, coarse, fine: left + right, left, right, depth })
    }

    fn error(&self) -> f64 {
        (self.fine - self.coarse).abs()
    }
}

/// `∫ₐᵇ f` with the panel of largest error estimate bisected until the
/// summed estimate drops below `abs_tol`.
///
/// The estimate cannot fall below the rounding noise of the sum itself, so
/// the target is raised to `64·ε·∫|f|` when that is larger.
pub fn integrate<F>(mut f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    cfg.validate()?;
    if a == b {
        return Ok(0.0);
    }
    let whole = gauss(&mut f, a, b)?;
    let mut panels = vec![Panel::new(&mut f, a, b, whole, 0)?];
    loop {
        let estimate: f64 = panels.iter().map(Panel::error).sum();
        let magnitude: f64 = panels.iter().map(|p| p.fine.abs()).sum();
        if estimate <= cfg.abs_tol.max(64.0 * f64::EPSILON * magnitude) {
            return Ok(panels.iter().map(|p| p.fine).sum());
        }
        if !estimate.is_finite() || panels.len() >= MAX_PANELS {
            return Err(Error::ToleranceNotMet { a, b, estimate, tolerance: cfg.abs_tol });
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.depth < cfg.max_depth)
            .max_by(|(_, p), (_, q)| p.error().total_cmp(&q.error()))
            .map(|(i, _)| i);
        let Some(i) = worst else {
            return Err(Error::ToleranceNotMet { a, b, estimate, tolerance: cfg.abs_tol });
        };
        let p = panels.swap_remove(i);
        let m = 0.5 * (p.a + p.b);
        panels.push(Panel::new(&mut f, p.a, m, p.left, p.depth + 1)?);
        panels.push(Panel::new(&mut f, m, p.b, p.right, p.depth + 1)?);
    }
}

/// `H(x) = ∫₀ˣ F⁻¹(s) ds`, so `H(0) = 0` and `H' = F⁻¹`.
///
/// Always integrates numerically, even when the pair carries a closed form
/// for `H`; inverse values come from [`invert_monotone`].
pub fn integrate_inverse(
    pair: &FluxPair,
    x: f64,
    inversion: &InversionConfig,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let range = pair.range();
    for end in [0.0, x] {
        if !(end.is_finite() && range.contains(end)) {
            return Err(Error::OutOfRange {
                pair: pair.name().to_owned(),
                value: end,
                lo: range.lo,
                hi: range.hi,
            });
        }
    }
    integrate(|s| invert_monotone(pair, s, inversion), 0.0, x, cfg)
}

/// The closed-form antiderivative of the cubic inverse,
///
/// `h(x) = −(1/∛1024)·{9x(∛(s − 3x) − ∛(s + 3x)) + s(∛(s − 3x) + ∛(s + 3x))}`,
/// `s = √(9x² + 4)`, with the cube-root arguments formed as in
/// [`cardano_inverse`](crate::inversion::cardano_inverse). Its constant is
/// fixed by `h(0) = −1/2`.
pub fn closed_form_h(x: f64) -> f64 {
    let abs = x.abs();
    let (big, small) = cardano_arguments(abs);
    let s = 0.5 * (big + small);
    let (b, sm) = (big.cbrt(), small.cbrt());
    // ∛big − ∛small without cancellation; 9x(P − Q) = −9|x|·diff for either sign of x
    let diff = 6.0 * abs / (b * b + b * sm + sm * sm);
    (9.0 * abs * diff - s * (b + sm)) / 1024f64.cbrt()
}
