//! Second-order equations `A·u_xx + 2B·u_xy + C·u_yy = 0` whose
//! coefficients may depend on the whole derivative bundle.

use std::fmt;
use std::sync::Arc;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flux::{self, FluxPair};
use crate::solution::DerivativeBundle;

/// Coefficient as a function of `(x, y, u, ux, uy, uxx, uxy, uyy)`.
pub type Coefficient = Arc<dyn Fn(&DerivativeBundle) -> f64 + Send + Sync>;

/// A mixed-term coefficient `B`, possibly arbitrary within a bound.
pub type BProvider = Coefficient;

/// Discriminant `A·C − B²` within this multiple of `max(1, |A·C|, B²)`
/// counts as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-14;

#[derive(Clone)]
pub struct QuasilinearEquation {
    name: String,
    a: Coefficient,
    b: Coefficient,
    c: Coefficient,
}

impl fmt::Debug for QuasilinearEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuasilinearEquation").field("name", &self.name).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ellipticity {
    Elliptic,
    Degenerate,
    NonElliptic,
}

impl Ellipticity {
    /// Classifies `margin = A·C − B²`; `scale` is the size of the terms it
    /// was formed from, see [`QuasilinearEquation::classify`].
    pub fn classify(margin: f64, scale: f64) -> Self {
        if margin.abs() <= DEGENERACY_TOL * scale.max(1.0) {
            Ellipticity::Degenerate
        } else if margin > 0.0 {
            Ellipticity::Elliptic
        } else {
            Ellipticity::NonElliptic
        }
    }
}

fn coefficient<F>(f: F) -> Coefficient
where
    F: Fn(&DerivativeBundle) -> f64 + Send + Sync + 'static,
{
    Arc::new(f)
}

fn constant(v: f64) -> Coefficient {
    coefficient(move |_| v)
}

impl QuasilinearEquation {
    pub fn new(name: impl Into<String>, a: Coefficient, b: Coefficient, c: Coefficient) -> Self {
        Self { name: name.into(), a, b, c }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `(A, B, C)` at the bundle.
    pub fn coefficients(&self, bundle: &DerivativeBundle) -> (f64, f64, f64) {
        ((self.a)(bundle), (self.b)(bundle), (self.c)(bundle))
    }

    /// `A·u_xx + 2B·u_xy + C·u_yy`; non-finite coefficients propagate.
    pub fn residual(&self, bundle: &DerivativeBundle) -> f64 {
        let (a, b, c) = self.coefficients(bundle);
        a * bundle.uxx + 2.0 * b * bundle.uxy + c * bundle.uyy
    }

    /// `A·C − B²`; positive means elliptic at this bundle.
    pub fn ellipticity_margin(&self, bundle: &DerivativeBundle) -> f64 {
        let (a, b, c) = self.coefficients(bundle);
        a * c - b * b
    }

    pub fn classify(&self, bundle: &DerivativeBundle) -> Ellipticity {
        let (a, b, c) = self.coefficients(bundle);
        Ellipticity::classify(a * c - b * b, (a * c).abs().max(b * b))
    }
}

/// `(1 + p²)u_xx + 2pq·u_xy + (1 + q²)u_yy`.
pub fn wrong_msa() -> QuasilinearEquation {
    QuasilinearEquation::new(
        "wrong_msa",
        coefficient(|b| 1.0 + b.ux * b.ux),
        coefficient(|b| b.ux * b.uy),
        coefficient(|b| 1.0 + b.uy * b.uy),
    )
}

/// [`wrong_msa`] with the sign of the mixed term flipped.
pub fn wrong_msa_flipped() -> QuasilinearEquation {
    QuasilinearEquation::new(
        "wrong_msa_flipped",
        coefficient(|b| 1.0 + b.ux * b.ux),
        coefficient(|b| -b.ux * b.uy),
        coefficient(|b| 1.0 + b.uy * b.uy),
    )
}

/// `f₁(p)·u_xx + 2B·u_xy + f₂(q)·u_yy`.
pub fn theorem_form(pair1: &FluxPair, pair2: &FluxPair, b: BProvider) -> QuasilinearEquation {
    let (p1, p2) = (pair1.clone(), pair2.clone());
    QuasilinearEquation::new(
        format!("theorem_form[{}, {}]", pair1.name(), pair2.name()),
        coefficient(move |b| p1.coefficient(b.ux)),
        b,
        coefficient(move |b| p2.coefficient(b.uy)),
    )
}

/// `u_xx / f₂(q) + 2B̃·u_xy + u_yy / f₁(p)`.
pub fn corollary_form(pair1: &FluxPair, pair2: &FluxPair, b: BProvider) -> QuasilinearEquation {
    let (p1, p2) = (pair1.clone(), pair2.clone());
    QuasilinearEquation::new(
        format!("corollary_form[{}, {}]", pair1.name(), pair2.name()),
        coefficient(move |b| 1.0 / p2.coefficient(b.uy)),
        b,
        coefficient(move |b| 1.0 / p1.coefficient(b.ux)),
    )
}

/// `u_xx + u_xy + u_yy`, stored with `B = 1/2`.
pub fn example1() -> QuasilinearEquation {
    QuasilinearEquation::new("example1", constant(1.0), constant(0.5), constant(1.0))
}

/// `u_xx/√(1 + p²) + u_yy/√(1 + q²)`.
pub fn example3_sqrt() -> QuasilinearEquation {
    QuasilinearEquation::new(
        "example3_sqrt",
        coefficient(|b| 1.0 / b.ux.hypot(1.0)),
        constant(0.0),
        coefficient(|b| 1.0 / b.uy.hypot(1.0)),
    )
}

/// `√(1 + q²)·u_xx + u_xy + √(1 + p²)·u_yy`.
pub fn example3_swapped() -> QuasilinearEquation {
    example3_swapped_with("example3_swapped", constant(0.5))
}

/// `√(1 + q²)·u_xx + 2B̃·u_xy + √(1 + p²)·u_yy`; elliptic for
/// `|B̃| < ((1 + p²)(1 + q²))^{1/4}`, see [`example3_bound`].
pub fn example3_swapped_b(b: BProvider) -> QuasilinearEquation {
    example3_swapped_with("example3_swapped_b", b)
}

fn example3_swapped_with(name: &str, b: BProvider) -> QuasilinearEquation {
    QuasilinearEquation::new(
        name,
        coefficient(|b| b.uy.hypot(1.0)),
        b,
        coefficient(|b| b.ux.hypot(1.0)),
    )
}

/// `((1 + p²)(1 + q²))^{1/4}`.
pub fn example3_bound(b: &DerivativeBundle) -> f64 {
    (b.ux.hypot(1.0) * b.uy.hypot(1.0)).sqrt()
}

/// `(1 + q²)u_xx − 2pq·u_xy + (1 + p²)u_yy`.
pub fn minimal_surface() -> QuasilinearEquation {
    QuasilinearEquation::new(
        "minimal_surface",
        coefficient(|b| 1.0 + b.uy * b.uy),
        coefficient(|b| -b.ux * b.uy),
        coefficient(|b| 1.0 + b.ux * b.ux),
    )
}

/// `p²u_xx + 2pq·u_xy + q²u_yy`, degenerate everywhere.
pub fn aronsson() -> QuasilinearEquation {
    QuasilinearEquation::new(
        "aronsson",
        coefficient(|b| b.ux * b.ux),
        coefficient(|b| b.ux * b.uy),
        coefficient(|b| b.uy * b.uy),
    )
}

/// `√(f₁(p)·f₂(q))`, the ellipticity bound on `B` in [`theorem_form`].
pub fn theorem_bound(pair1: &FluxPair, pair2: &FluxPair) -> Coefficient {
    let (p1, p2) = (pair1.clone(), pair2.clone());
    coefficient(move |b| (p1.coefficient(b.ux) * p2.coefficient(b.uy)).sqrt())
}

/// `1/√(f₁(p)·f₂(q))`, the ellipticity bound on `B̃` in [`corollary_form`].
pub fn corollary_bound(pair1: &FluxPair, pair2: &FluxPair) -> Coefficient {
    let (p1, p2) = (pair1.clone(), pair2.clone());
    coefficient(move |b| 1.0 / (p1.coefficient(b.ux) * p2.coefficient(b.uy)).sqrt())
}

/// A seeded smooth function of the full bundle with `|B| < bound` wherever
/// `bound > 0`, and `B = 0` where `bound = 0`.
///
/// `B = a·bound·sin(w·v + φ)` with `v = (x, y, u, ux, uy, uxx, uxy, uyy)`,
/// `a ∈ [0.1, 0.9]`, and `w`, `φ` drawn from the seed.
pub fn random_b_provider(seed: u64, bound: Coefficient) -> BProvider {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amplitude: f64 = rng.random_range(0.1..0.9);
    let phase: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let weights: [f64; 8] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
    coefficient(move |b| {
        let arg = weights
            .iter()
            .zip(b.as_array())
            .fold(phase, |acc, (w, v)| acc + w * v);
        amplitude * bound(b) * arg.sin()
    })
}

/// The equations with fixed coefficients, plus the theorem and corollary
/// forms instantiated on the cubic pair with seed-0 providers.
pub fn equation_catalog() -> Vec<QuasilinearEquation> {
    let cubic = flux::cubic();
    let mut all = vec![
        wrong_msa(),
        wrong_msa_flipped(),
        theorem_form(&cubic, &cubic, random_b_provider(0, theorem_bound(&cubic, &cubic))),
        corollary_form(&cubic, &cubic, random_b_provider(0, corollary_bound(&cubic, &cubic))),
        example1(),
        example3_sqrt(),
        example3_swapped(),
        example3_swapped_b(random_b_provider(0, Arc::new(example3_bound))),
        minimal_surface(),
        aronsson(),
    ];
    all[2].name = "theorem_form".into();
    all[3].name = "corollary_form".into();
    all
}

/// Names accepted by [`equation_by_name`].
pub const EQUATION_NAMES: [&str; 10] = [
    "wrong_msa",
    "wrong_msa_flipped",
    "theorem_form",
    "corollary_form",
    "example1",
    "example3_sqrt",
    "example3_swapped",
    "example3_swapped_b",
    "minimal_surface",
    "aronsson",
];

/// Resolves a catalog name; the pair-dependent forms are built on the given
/// pairs, and every pluggable `B` is seeded with `seed`.
pub fn equation_by_name(
    name: &str,
    pair1: &FluxPair,
    pair2: &FluxPair,
    seed: u64,
) -> Result<QuasilinearEquation> {
    let eq = match name {
        "wrong_msa" => wrong_msa(),
        "wrong_msa_flipped" => wrong_msa_flipped(),
        "theorem_form" => theorem_form(pair1, pair2, random_b_provider(seed, theorem_bound(pair1, pair2))),
        "corollary_form" => {
            corollary_form(pair1, pair2, random_b_provider(seed, corollary_bound(pair1, pair2)))
        }
        "example1" => example1(),
        "example3_sqrt" => example3_sqrt(),
        "example3_swapped" => example3_swapped(),
        "example3_swapped_b" => example3_swapped_b(random_b_provider(seed, Arc::new(example3_bound))),
        "minimal_surface" => minimal_surface(),
        "aronsson" => aronsson(),
        other => return Err(Error::UnknownEquation(other.to_owned())),
    };
    Ok(eq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::BundleSource;

    fn bundle(ux: f64, uy: f64, uxx: f64, uxy: f64, uyy: f64) -> DerivativeBundle {
        DerivativeBundle {
            x: 0.3,
            y: -0.7,
            u: 0.1,
            ux,
            uy,
            uxx,
            uxy,
            uyy,
            source: BundleSource::Analytic,
        }
    }

    #[test]
    fn residual_spot_values() {
        assert_eq!(wrong_msa().residual(&bundle(0.0, 0.0, 1.0, 0.0, -1.0)), 0.0);
        assert_eq!(example1().residual(&bundle(0.0, 0.0, 2.0, 0.0, -2.0)), 0.0);
        assert_eq!(example1().residual(&bundle(0.0, 0.0, 0.0, 1.0, 0.0)), 1.0);
        assert_eq!(aronsson().residual(&bundle(3.0, -3.0, 1.0, 0.0, -1.0)), 0.0);
    }

    #[test]
    fn margins() {
        let b = bundle(3.0, 4.0, 0.0, 0.0, 0.0);
        assert_eq!(wrong_msa().ellipticity_margin(&b), 26.0);
        assert_eq!(aronsson().ellipticity_margin(&b), 0.0);
        assert_eq!(aronsson().classify(&b), Ellipticity::Degenerate);
        assert_eq!(example1().ellipticity_margin(&b), 0.75);
        assert_eq!(example1().classify(&b), Ellipticity::Elliptic);
        let hyperbolic = QuasilinearEquation::new("wave", constant(1.0), constant(0.0), constant(-1.0));
        assert_eq!(hyperbolic.classify(&b), Ellipticity::NonElliptic);
    }

    #[test]
    fn zero_bound_gives_zero_b() {
        let provider = random_b_provider(7, constant(0.0));
        assert_eq!(provider(&bundle(1.0, 2.0, 3.0, 4.0, 5.0)), 0.0);
    }

    #[test]
    fn providers_are_deterministic_and_bounded() {
        let a = random_b_provider(42, constant(2.0));
        let b = random_b_provider(42, constant(2.0));
        let other = random_b_provider(43, constant(2.0));
        let mut differs = false;
        for i in 0..100 {
            let t = i as f64 * 0.37 - 18.0;
            let bd = bundle(t, -t * 0.5, t.sin(), t.cos(), 1.0 / (1.0 + t * t));
            assert_eq!(a(&bd).to_bits(), b(&bd).to_bits());
            assert!(a(&bd).abs() < 2.0);
            differs |= a(&bd) != other(&bd);
        }
        assert!(differs);
    }

    #[test]
    fn b_is_irrelevant_without_mixed_derivative() {
        let bd = bundle(0.4, -1.2, 0.9, 0.0, -0.3);
        let cubic = flux::cubic();
        let r0 = theorem_form(&cubic, &cubic, constant(0.0)).residual(&bd);
        for seed in 0..10 {
            let eq = theorem_form(&cubic, &cubic, random_b_provider(seed, theorem_bound(&cubic, &cubic)));
            assert_eq!(eq.residual(&bd).to_bits(), r0.to_bits());
        }
    }

    #[test]
    fn catalog_names_resolve() {
        let names: Vec<_> = equation_catalog().iter().map(|e| e.name().to_owned()).collect();
        assert_eq!(names, EQUATION_NAMES);
        let cubic = flux::cubic();
        for name in EQUATION_NAMES {
            assert_eq!(equation_by_name(name, &cubic, &cubic, 1).unwrap().name().split('[').next(), Some(name));
        }
        assert!(matches!(
            equation_by_name("heat", &cubic, &cubic, 0),
            Err(Error::UnknownEquation(_))
        ));
    }
}
