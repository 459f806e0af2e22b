//! Separable solutions `u(x, y) = X(x) + Y(y)`.
//!
//! Splitting `f₁(u_x)·u_xx + 2B·u_xy + f₂(u_y)·u_yy = 0` with `u_xy ≡ 0`
//! gives `f₁(X')·X'' = c` and `f₂(Y')·Y'' = −c`. Integrating once,
//! `F₁(X') = c·x` and `F₂(Y') = −c·y`, so
//!
//! ```text
//! u_x  = F₁⁻¹(c·x)        u_y  = F₂⁻¹(−c·y)
//! u_xx = c / f₁(u_x)      u_yy = −c / f₂(u_y)      u_xy = 0
//! u    = ∫₀ˣ F₁⁻¹(c·s) ds + ∫₀ʸ F₂⁻¹(−c·s) ds
//! ```
//!
//! anchored at `u(0, 0) = 0`. [`construct`] builds this for any pair of
//! flux pairs; the other constructors return closed forms of the catalog
//! cases, which double as independent checks on the general route.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use serde::Serialize;

use crate::antiderivative::{closed_form_h, integrate_inverse, QuadratureConfig};
use crate::error::{Error, Result};
use crate::flux::{self, FluxPair, Interval, Positivity};
use crate::inversion::{cardano_inverse, invert_monotone, InversionConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionKind {
    GeneralQuadrature,
    CardanoClosedForm,
    Quadratic,
    Cosh,
    ArctanRestricted,
    Aronsson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BundleSource {
    Analytic,
    FiniteDifference,
}

/// Point values of `u` and its partial derivatives up to order two.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeBundle {
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub ux: f64,
    pub uy: f64,
    pub uxx: f64,
    pub uxy: f64,
    pub uyy: f64,
    pub source: BundleSource,
}

impl DerivativeBundle {
    pub fn is_finite(&self) -> bool {
        [self.x, self.y, self.u, self.ux, self.uy, self.uxx, self.uxy, self.uyy]
            .iter()
            .all(|v| v.is_finite())
    }

    /// `(x, y, u, ux, uy, uxx, uxy, uyy)`.
    pub fn as_array(&self) -> [f64; 8] {
        [self.x, self.y, self.u, self.ux, self.uy, self.uxx, self.uxy, self.uyy]
    }
}

/// Open rectangle `x_range × y_range`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Domain {
    pub x: Interval,
    pub y: Interval,
}

impl Domain {
    pub const PLANE: Domain = Domain {
        x: Interval::REAL_LINE,
        y: Interval::REAL_LINE,
    };

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.x.contains(x) && self.y.contains(y)
    }

    pub fn is_plane(&self) -> bool {
        self.x.is_real_line() && self.y.is_real_line()
    }
}

/// `u` with its gradient; defined wherever `u` is `C¹`, including the
/// singular axes of the Aronsson solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gradient {
    pub u: f64,
    pub ux: f64,
    pub uy: f64,
}

type Memo = RwLock<HashMap<u64, f64>>;

pub struct EntireSolution {
    pair1: FluxPair,
    pair2: FluxPair,
    c: f64,
    domain: Domain,
    kind: SolutionKind,
    inversion: InversionConfig,
    quadrature: QuadratureConfig,
    // X(x) and Y(y) by coordinate bit pattern; values are deterministic
    memo_x: Memo,
    memo_y: Memo,
}

impl fmt::Debug for EntireSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EntireSolution")
            .field("pair1", &self.pair1.name())
            .field("pair2", &self.pair2.name())
            .field("c", &self.c)
            .field("domain", &self.domain)
            .field("kind", &self.kind)
            .finish()
    }
}

/// `u(x, y) = ∫₀ˣ F₁⁻¹(c·s) ds + ∫₀ʸ F₂⁻¹(−c·s) ds` with default tolerances.
pub fn construct(pair1: FluxPair, pair2: FluxPair, c: f64) -> EntireSolution {
    construct_with(pair1, pair2, c, InversionConfig::default(), QuadratureConfig::default())
}

pub fn construct_with(
    pair1: FluxPair,
    pair2: FluxPair,
    c: f64,
    inversion: InversionConfig,
    quadrature: QuadratureConfig,
) -> EntireSolution {
    let empty = Interval { lo: 0.0, hi: 0.0 };
    let domain = Domain {
        x: pair1.range().preimage_under_scale(c).unwrap_or(empty),
        y: pair2.range().preimage_under_scale(-c).unwrap_or(empty),
    };
    EntireSolution {
        pair1,
        pair2,
        c,
        domain,
        kind: SolutionKind::GeneralQuadrature,
        inversion,
        quadrature,
        memo_x: Memo::default(),
        memo_y: Memo::default(),
    }
}

fn special(pair: FluxPair, c: f64, kind: SolutionKind) -> EntireSolution {
    let mut sol = construct(pair.clone(), pair, c);
    sol.kind = kind;
    sol
}

/// `u = h(x) − h(y)` with the closed-form `h` of the cubic pair, `c = 1`.
pub fn cardano_solution() -> EntireSolution {
    special(flux::cubic(), 1.0, SolutionKind::CardanoClosedForm)
}

/// `u = x² − y²` (identity pair, `c = 2`).
pub fn quadratic_solution() -> EntireSolution {
    special(flux::identity(), 2.0, SolutionKind::Quadratic)
}

/// `u = cosh x − cosh y` (arsinh pair, `c = 1`).
pub fn cosh_solution() -> EntireSolution {
    special(flux::arsinh(), 1.0, SolutionKind::Cosh)
}

/// `u = ln cos y − ln cos x` on `(−π/2, π/2)²` (arctan pair, `c = 1`).
pub fn arctan_solution() -> EntireSolution {
    special(flux::arctan(), 1.0, SolutionKind::ArctanRestricted)
}

/// `u = (9/4)(|x|^{4/3} − |y|^{4/3})`, the power pair with `c = 9`. `C¹`
/// with a Hölder-1/3 gradient; the coordinate axes are singular lines.
pub fn aronsson_solution() -> EntireSolution {
    special(flux::power(), 9.0, SolutionKind::Aronsson)
}

impl EntireSolution {
    pub fn pair1(&self) -> &FluxPair {
        &self.pair1
    }

    pub fn pair2(&self) -> &FluxPair {
        &self.pair2
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn kind(&self) -> SolutionKind {
        self.kind
    }

    /// True when some `f` vanishes and `c ≠ 0`, so `u` may fail to be `C²`.
    pub fn possibly_sub_c2(&self) -> bool {
        self.c != 0.0
            && (self.pair1.positivity() == Positivity::NonnegativeVanishing
                || self.pair2.positivity() == Positivity::NonnegativeVanishing)
    }

    pub fn descriptor(&self) -> String {
        format!(
            "{:?}({}, {}, c={})",
            self.kind,
            self.pair1.name(),
            self.pair2.name(),
            self.c
        )
    }

    fn check_domain(&self, x: f64, y: f64) -> Result<()> {
        if self.domain.contains(x, y) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { x, y })
        }
    }

    /// `(X, X')` for the x part: `X(x) = ∫₀ˣ F₁⁻¹(c·s) ds`.
    fn part(&self, pair: &FluxPair, k: f64, t: f64, memo: &Memo) -> Result<(f64, f64)> {
        let slope = invert_monotone(pair, k * t, &self.inversion)?;
        if k == 0.0 {
            return Ok((t * slope, slope));
        }
        let key = t.to_bits();
        if let Some(&v) = memo.read().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return Ok((v, slope));
        }
        // ∫₀ᵗ F⁻¹(k·s) ds = H(k·t) / k
        let value = integrate_inverse(pair, k * t, &self.inversion, &self.quadrature)? / k;
        memo.write().unwrap_or_else(|e| e.into_inner()).insert(key, value);
        Ok((value, slope))
    }

    /// `u` and its gradient.
    pub fn gradient(&self, x: f64, y: f64) -> Result<Gradient> {
        self.check_domain(x, y)?;
        let g = match self.kind {
            SolutionKind::GeneralQuadrature => {
                let (ux_part, ux) = self.part(&self.pair1, self.c, x, &self.memo_x)?;
                let (uy_part, uy) = self.part(&self.pair2, -self.c, y, &self.memo_y)?;
                Gradient { u: ux_part + uy_part, ux, uy }
            }
            SolutionKind::CardanoClosedForm => Gradient {
                u: closed_form_h(x) - closed_form_h(y),
                ux: cardano_inverse(x),
                uy: -cardano_inverse(y),
            },
            SolutionKind::Quadratic => Gradient {
                u: x * x - y * y,
                ux: 2.0 * x,
                uy: -2.0 * y,
            },
            SolutionKind::Cosh => Gradient {
                u: x.cosh() - y.cosh(),
                ux: x.sinh(),
                uy: -y.sinh(),
            },
            SolutionKind::ArctanRestricted => Gradient {
                u: y.cos().ln() - x.cos().ln(),
                ux: x.tan(),
                uy: -y.tan(),
            },
            SolutionKind::Aronsson => Gradient {
                u: 2.25 * (x.abs().powf(4.0 / 3.0) - y.abs().powf(4.0 / 3.0)),
                ux: 3.0 * x.cbrt(),
                uy: -3.0 * y.cbrt(),
            },
        };
        Ok(g)
    }

    /// `u` alone.
    pub fn value(&self, x: f64, y: f64) -> Result<f64> {
        self.gradient(x, y).map(|g| g.u)
    }

    /// Full analytic bundle at `(x, y)`.
    pub fn eval(&self, x: f64, y: f64) -> Result<DerivativeBundle> {
        let Gradient { u, ux, uy } = self.gradient(x, y)?;
        let singular = Error::SingularPoint { x, y };
        let (uxx, uyy) = match self.kind {
            SolutionKind::GeneralQuadrature => {
                let second = |pair: &FluxPair, k: f64, p: f64| {
                    if k == 0.0 {
                        return Ok(0.0);
                    }
                    let f = pair.coefficient(p);
                    if f > 0.0 {
                        Ok(k / f)
                    } else {
                        Err(singular.clone())
                    }
                };
                (second(&self.pair1, self.c, ux)?, second(&self.pair2, -self.c, uy)?)
            }
            SolutionKind::CardanoClosedForm => (1.0 / (1.0 + ux * ux), -1.0 / (1.0 + uy * uy)),
            SolutionKind::Quadratic => (2.0, -2.0),
            SolutionKind::Cosh => (x.cosh(), -y.cosh()),
            SolutionKind::ArctanRestricted => (1.0 + ux * ux, -(1.0 + uy * uy)),
            SolutionKind::Aronsson => {
                if x == 0.0 || y == 0.0 {
                    return Err(singular);
                }
                (x.abs().powf(-2.0 / 3.0), -y.abs().powf(-2.0 / 3.0))
            }
        };
        Ok(DerivativeBundle {
            x,
            y,
            u,
            ux,
            uy,
            uxx,
            uxy: 0.0,
            uyy,
            source: BundleSource::Analytic,
        })
    }

    /// True iff `|u_xx|` and `|u_yy|` stay below `1e-12` at every probe
    /// point that can be evaluated. Points that fail to evaluate are skipped;
    /// with none evaluable the answer is `false`.
    pub fn is_affine(&self, probes: &[(f64, f64)]) -> bool {
        let mut seen = false;
        for &(x, y) in probes {
            if let Ok(b) = self.eval(x, y) {
                seen = true;
                if !(b.uxx.abs() < 1e-12 && b.uyy.abs() < 1e-12) {
                    return false;
                }
            }
        }
        seen
    }
}
