//! Residual sweeps over grids, a finite-difference derivative oracle, and
//! the probes used on the counterexamples.

use rayon::prelude::*;
use serde::Serialize;

use crate::equations::QuasilinearEquation;
use crate::error::{Error, Result};
use crate::solution::{BundleSource, DerivativeBundle, EntireSolution};

/// Default half-width of the band removed around the coordinate axes.
pub const DEFAULT_AXIS_MARGIN: f64 = 0.1;
pub const DEFAULT_ANALYTIC_TOL: f64 = 1e-10;
pub const DEFAULT_FD_TOL: f64 = 1e-5;
const CROSSCHECK_SAMPLES: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exclusion {
    /// Drop nodes with `|x| < margin` or `|y| < margin`.
    AxisMargin(f64),
}

impl Exclusion {
    pub fn excludes(&self, x: f64, y: f64) -> bool {
        match *self {
            Exclusion::AxisMargin(m) => x.abs() < m || y.abs() < m,
        }
    }
}

/// Tensor grid with `x` varying fastest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub exclusion: Option<Exclusion>,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        let grid = Self { x_min, x_max, y_min, y_max, nx, ny, exclusion: None };
        grid.validate()?;
        Ok(grid)
    }

    pub fn square(lo: f64, hi: f64, n: usize) -> Result<Self> {
        Self::new(lo, hi, lo, hi, n, n)
    }

    pub fn excluding(mut self, exclusion: Exclusion) -> Self {
        self.exclusion = Some(exclusion);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ordered = self.x_min < self.x_max && self.y_min < self.y_max;
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max].iter().all(|v| v.is_finite());
        if !ordered || !finite || self.nx < 2 || self.ny < 2 {
            return Err(Error::InvalidConfig(format!("bad grid {self:?}")));
        }
        Ok(())
    }

    fn coord(lo: f64, hi: f64, n: usize, i: usize) -> f64 {
        if i == n - 1 {
            hi
        } else {
            lo + (hi - lo) * (i as f64 / (n - 1) as f64)
        }
    }

    /// All nodes in row-major order (`x` fastest), exclusions ignored.
    pub fn nodes(&self) -> Vec<(f64, f64)> {
        (0..self.ny)
            .flat_map(|j| {
                let y = Self::coord(self.y_min, self.y_max, self.ny, j);
                (0..self.nx).map(move |i| (Self::coord(self.x_min, self.x_max, self.nx, i), y))
            })
            .collect()
    }

    pub fn is_excluded(&self, x: f64, y: f64) -> bool {
        self.exclusion.is_some_and(|e| e.excludes(x, y))
    }

    /// Nodes surviving the exclusion, in row-major order.
    pub fn active_nodes(&self) -> Vec<(f64, f64)> {
        self.nodes().into_iter().filter(|&(x, y)| !self.is_excluded(x, y)).collect()
    }
}

/// Central-difference bundle of a pointwise `u`.
///
/// First derivatives use `h₁ = ε^{1/3}·max(1, |coord|)`, second derivatives
/// `h₂ = ε^{1/4}·max(1, |coord|)`, and `u_xy` the four corners at `(±h₂, ±h₂)`.
/// Any failing evaluation on the stencil is reported as
/// [`Error::StencilOutOfDomain`].
pub fn fd_bundle<F>(u: F, x: f64, y: f64) -> Result<DerivativeBundle>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let at = |px: f64, py: f64| u(px, py).map_err(|_| Error::StencilOutOfDomain { x, y });
    let (sx, sy) = (x.abs().max(1.0), y.abs().max(1.0));
    let (h1x, h1y) = (f64::EPSILON.cbrt() * sx, f64::EPSILON.cbrt() * sy);
    let (h2x, h2y) = (f64::EPSILON.powf(0.25) * sx, f64::EPSILON.powf(0.25) * sy);

    let center = at(x, y)?;
    let ux = (at(x + h1x, y)? - at(x - h1x, y)?) / (2.0 * h1x);
    let uy = (at(x, y + h1y)? - at(x, y - h1y)?) / (2.0 * h1y);
    let uxx = (at(x + h2x, y)? - 2.0 * center + at(x - h2x, y)?) / (h2x * h2x);
    let uyy = (at(x, y + h2y)? - 2.0 * center + at(x, y - h2y)?) / (h2y * h2y);
    let uxy = (at(x + h2x, y + h2y)? - at(x + h2x, y - h2y)? - at(x - h2x, y + h2y)?
        + at(x - h2x, y - h2y)?)
        / (4.0 * h2x * h2y);

    Ok(DerivativeBundle {
        x,
        y,
        u: center,
        ux,
        uy,
        uxx,
        uxy,
        uyy,
        source: BundleSource::FiniteDifference,
    })
}

/// [`fd_bundle`] of a constructed solution.
pub fn fd_bundle_of(sol: &EntireSolution, x: f64, y: f64) -> Result<DerivativeBundle> {
    fd_bundle(|px, py| sol.value(px, py), x, y)
}

/// Max `|analytic − FD|` over the sample nodes, per derivative.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct FdCrosscheck {
    pub ux: f64,
    pub uy: f64,
    pub uxx: f64,
    pub uxy: f64,
    pub uyy: f64,
    pub samples: usize,
}

impl FdCrosscheck {
    fn absorb(&mut self, a: &DerivativeBundle, f: &DerivativeBundle) {
        self.ux = self.ux.max((a.ux - f.ux).abs());
        self.uy = self.uy.max((a.uy - f.uy).abs());
        self.uxx = self.uxx.max((a.uxx - f.uxx).abs());
        self.uxy = self.uxy.max((a.uxy - f.uxy).abs());
        self.uyy = self.uyy.max((a.uyy - f.uyy).abs());
        self.samples += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub equation: String,
    pub solution: String,
    pub grid: Grid,
    pub source: BundleSource,
    pub max_abs_residual: f64,
    pub argmax: (f64, f64),
    pub min_ellipticity_margin: f64,
    /// Nodes whose bundle or residual could not be evaluated to a finite value.
    pub flagged_samples: usize,
    /// Where the flagged samples sit, in node order.
    #[serde(skip)]
    pub flagged_nodes: Vec<(f64, f64)>,
    pub fd_crosscheck: FdCrosscheck,
}

impl VerificationReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_abs_residual <= tol
    }
}

enum NodeOutcome {
    Outside,
    Flagged,
    Ok { residual: f64, margin: f64 },
}

/// Residual sweep of `eq` over the grid nodes inside the solution domain.
///
/// Nodes outside the domain are skipped; nodes whose bundle fails to
/// evaluate or yields a non-finite residual are counted in
/// `flagged_samples`. Reductions run in node order, so the maximum keeps the
/// first node attaining it and the report does not depend on scheduling.
pub fn verify_solution(
    sol: &EntireSolution,
    eq: &QuasilinearEquation,
    grid: &Grid,
    use_fd: bool,
) -> Result<VerificationReport> {
    grid.validate()?;
    let nodes = grid.active_nodes();
    let domain = sol.domain();
    let bundle_at = |x: f64, y: f64| {
        if use_fd {
            fd_bundle_of(sol, x, y)
        } else {
            sol.eval(x, y)
        }
    };

    let outcomes: Vec<NodeOutcome> = nodes
        .par_iter()
        .map(|&(x, y)| {
            if !domain.contains(x, y) {
                return NodeOutcome::Outside;
            }
            match bundle_at(x, y) {
                Ok(b) if b.is_finite() => {
                    let residual = eq.residual(&b);
                    let margin = eq.ellipticity_margin(&b);
                    if residual.is_finite() && !margin.is_nan() {
                        NodeOutcome::Ok { residual, margin }
                    } else {
                        NodeOutcome::Flagged
                    }
                }
                _ => NodeOutcome::Flagged,
            }
        })
        .collect();

    let mut inside = Vec::new();
    let mut flagged_nodes = Vec::new();
    let mut max_abs_residual = 0.0;
    let mut argmax = None;
    let mut min_margin = f64::INFINITY;
    for (&node, outcome) in nodes.iter().zip(&outcomes) {
        match *outcome {
            NodeOutcome::Outside => {}
            NodeOutcome::Flagged => {
                inside.push(node);
                flagged_nodes.push(node);
            }
            NodeOutcome::Ok { residual, margin } => {
                inside.push(node);
                if argmax.is_none() || residual.abs() > max_abs_residual {
                    max_abs_residual = residual.abs();
                    argmax = Some(node);
                }
                min_margin = min_margin.min(margin);
            }
        }
    }
    let Some(argmax) = argmax else {
        return Err(Error::EmptyGrid);
    };

    let mut fd_crosscheck = FdCrosscheck::default();
    let picks: Vec<(f64, f64)> = if inside.len() <= CROSSCHECK_SAMPLES {
        inside.clone()
    } else {
        (0..CROSSCHECK_SAMPLES)
            .map(|k| inside[k * (inside.len() - 1) / (CROSSCHECK_SAMPLES - 1)])
            .collect()
    };
    for (x, y) in picks {
        if let (Ok(a), Ok(f)) = (sol.eval(x, y), fd_bundle_of(sol, x, y)) {
            fd_crosscheck.absorb(&a, &f);
        }
    }

    Ok(VerificationReport {
        equation: eq.name().to_owned(),
        solution: sol.descriptor(),
        grid: *grid,
        source: if use_fd { BundleSource::FiniteDifference } else { BundleSource::Analytic },
        max_abs_residual,
        argmax,
        min_ellipticity_margin: min_margin,
        flagged_samples: flagged_nodes.len(),
        flagged_nodes,
        fd_crosscheck,
    })
}

/// The ray `origin + s·direction`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ray {
    pub origin: (f64, f64),
    pub direction: (f64, f64),
}

impl Ray {
    pub fn x_axis() -> Self {
        Self { origin: (0.0, 0.0), direction: (1.0, 0.0) }
    }

    pub fn at(&self, s: f64) -> (f64, f64) {
        (self.origin.0 + s * self.direction.0, self.origin.1 + s * self.direction.1)
    }
}

/// `u` along a ray, e.g. towards the boundary of a restricted domain.
pub fn blowup_probe(sol: &EntireSolution, ray: &Ray, params: &[f64]) -> Result<Vec<(f64, f64)>> {
    params
        .iter()
        .map(|&s| {
            let (x, y) = ray.at(s);
            sol.value(x, y).map(|u| (s, u))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    X,
    Y,
}

/// Least-squares slope of `log |∇u(P_r) − ∇u(0)|` against `log r`, with
/// `P_r = (r, 0)` and the `u_x` component for [`Axis::X`], `(0, r)` and
/// `u_y` for [`Axis::Y`]. Radii giving a zero difference are dropped.
pub fn holder_exponent(sol: &EntireSolution, axis: Axis, radii: &[f64]) -> Result<f64> {
    let component = |x: f64, y: f64| -> Result<f64> {
        let g = sol.gradient(x, y)?;
        Ok(match axis {
            Axis::X => g.ux,
            Axis::Y => g.uy,
        })
    };
    let base = component(0.0, 0.0)?;
    let mut points = Vec::with_capacity(radii.len());
    for &r in radii {
        if !(r > 0.0) {
            return Err(Error::InvalidConfig(format!("radius {r} is not positive")));
        }
        let (x, y) = match axis {
            Axis::X => (r, 0.0),
            Axis::Y => (0.0, r),
        };
        let d = (component(x, y)? - base).abs();
        if d > 0.0 && d.is_finite() {
            points.push((r.ln(), d.ln()));
        }
    }
    if points.len() < 3 {
        return Err(Error::DegenerateFit { usable: points.len() });
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}
