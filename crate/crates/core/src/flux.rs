//! Flux pairs `(f, F)`: a coefficient `f` together with its primitive `F`.
//!
//! A pair drives the separable construction when `F` is a bijection of the
//! real line with `F' = f > 0`. The built-in catalog also carries the two
//! pairs that break one of those hypotheses, with the broken property
//! recorded in [`FluxPair::range`] and [`FluxPair::positivity`].

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::inversion::cardano_inverse;

/// Real function handle shared by pairs, equations and providers.
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Open interval `(lo, hi)`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const REAL_LINE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo < hi, "empty interval ({lo}, {hi})");
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }

    pub fn is_real_line(&self) -> bool {
        self.lo == f64::NEG_INFINITY && self.hi == f64::INFINITY
    }

    /// Preimage `{x : k·x ∈ self}`. For `k = 0` this is the real line when
    /// `0 ∈ self` and `None` otherwise.
    pub fn preimage_under_scale(&self, k: f64) -> Option<Interval> {
        if k == 0.0 {
            return self.contains(0.0).then_some(Interval::REAL_LINE);
        }
        let (a, b) = (self.lo / k, self.hi / k);
        Some(if k > 0.0 {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Positivity {
    /// `f > 0` everywhere.
    StrictlyPositive,
    /// `f ≥ 0` with isolated zeros; the inverse of `F` loses differentiability there.
    NonnegativeVanishing,
}

#[derive(Clone)]
pub struct FluxPair {
    name: String,
    coefficient: ScalarFn,
    primitive: ScalarFn,
    range: Interval,
    positivity: Positivity,
    inverse: Option<ScalarFn>,
    inverse_antiderivative: Option<ScalarFn>,
}

impl fmt::Debug for FluxPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FluxPair")
            .field("name", &self.name)
            .field("range", &self.range)
            .field("positivity", &self.positivity)
            .field("analytic_inverse", &self.inverse.is_some())
            .field("analytic_inverse_antiderivative", &self.inverse_antiderivative.is_some())
            .finish()
    }
}

impl FluxPair {
    /// A user pair with `F` surjective onto the real line and `f > 0`.
    /// Use the builder methods to override range, positivity or attach
    /// closed forms.
    pub fn new<Fc, Fp>(name: impl Into<String>, coefficient: Fc, primitive: Fp) -> Self
    where
        Fc: Fn(f64) -> f64 + Send + Sync + 'static,
        Fp: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            coefficient: Arc::new(coefficient),
            primitive: Arc::new(primitive),
            range: Interval::REAL_LINE,
            positivity: Positivity::StrictlyPositive,
            inverse: None,
            inverse_antiderivative: None,
        }
    }

    pub fn with_range(mut self, range: Interval) -> Self {
        self.range = range;
        self
    }

    pub fn with_positivity(mut self, positivity: Positivity) -> Self {
        self.positivity = positivity;
        self
    }

    pub fn with_inverse<G>(mut self, inverse: G) -> Self
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.inverse = Some(Arc::new(inverse));
        self
    }

    /// Closed form of `x ↦ ∫₀ˣ F⁻¹(s) ds`.
    pub fn with_inverse_antiderivative<G>(mut self, h: G) -> Self
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.inverse_antiderivative = Some(Arc::new(h));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn range(&self) -> Interval {
        self.range
    }

    pub fn positivity(&self) -> Positivity {
        self.positivity
    }

    pub fn is_bijective(&self) -> bool {
        self.range.is_real_line()
    }

    /// `f(t)`.
    pub fn coefficient(&self, t: f64) -> f64 {
        (self.coefficient)(t)
    }

    /// `F(t)`.
    pub fn primitive(&self, t: f64) -> f64 {
        (self.primitive)(t)
    }

    pub fn analytic_inverse(&self) -> Option<&ScalarFn> {
        self.inverse.as_ref()
    }

    pub fn analytic_inverse_antiderivative(&self) -> Option<&ScalarFn> {
        self.inverse_antiderivative.as_ref()
    }

    /// Sampled consistency checks for a pair whose properties are asserted
    /// rather than proven.
    pub fn validate(&self, samples: &[f64]) -> Validation {
        let mut max_derivative_error = 0.0_f64;
        let mut min_coefficient = f64::INFINITY;
        for &t in samples {
            let h = f64::EPSILON.cbrt() * t.abs().max(1.0);
            let fd = (self.primitive(t + h) - self.primitive(t - h)) / (2.0 * h);
            max_derivative_error = max_derivative_error.max((fd - self.coefficient(t)).abs());
            min_coefficient = min_coefficient.min(self.coefficient(t));
        }

        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        let monotone = sorted
            .windows(2)
            .all(|w| self.primitive(w[0]) <= self.primitive(w[1]));

        let max_round_trip_error = self.inverse.as_ref().map(|inv| {
            samples
                .iter()
                .map(|&t| self.primitive(t))
                .filter(|&x| self.range.contains(x))
                .map(|x| (self.primitive(inv(x)) - x).abs() / x.abs().max(1.0))
                .fold(0.0, f64::max)
        });

        Validation {
            max_derivative_error,
            monotone,
            min_coefficient,
            max_round_trip_error,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Validation {
    /// Max over samples of `|central FD of F − f|`.
    pub max_derivative_error: f64,
    pub monotone: bool,
    pub min_coefficient: f64,
    /// Max relative `|F(F⁻¹(x)) − x|`, when a closed-form inverse exists.
    pub max_round_trip_error: Option<f64>,
}

impl Validation {
    pub fn sampled_positivity(&self) -> Positivity {
        if self.min_coefficient > 0.0 {
            Positivity::StrictlyPositive
        } else {
            Positivity::NonnegativeVanishing
        }
    }
}

/// `f = 1`, `F(t) = t`.
pub fn identity() -> FluxPair {
    FluxPair::new("identity", |_| 1.0, |t| t)
        .with_inverse(|x| x)
        .with_inverse_antiderivative(|x| 0.5 * x * x)
}

/// `f = 1 + t²`, `F(t) = t + t³/3`.
pub fn cubic() -> FluxPair {
    FluxPair::new("cubic", |t| 1.0 + t * t, |t| t + t * t * t / 3.0)
        .with_inverse(cardano_inverse)
        .with_inverse_antiderivative(|x| {
            // ∫₀ˣ F⁻¹ = ∫₀ᵀ t·f(t) dt with T = F⁻¹(x)
            let t2 = cardano_inverse(x).powi(2);
            0.5 * t2 + 0.25 * t2 * t2
        })
}

/// `f = 1/√(1+t²)`, `F = arsinh`.
pub fn arsinh() -> FluxPair {
    FluxPair::new("arsinh", |t| 1.0 / t.hypot(1.0), f64::asinh)
        .with_inverse(f64::sinh)
        .with_inverse_antiderivative(|x| 2.0 * (0.5 * x).sinh().powi(2))
}

/// `f = 1/(1+t²)`, `F = arctan`. `F` maps onto `(−π/2, π/2)` only.
pub fn arctan() -> FluxPair {
    FluxPair::new("arctan", |t| 1.0 / (1.0 + t * t), f64::atan)
        .with_range(Interval::new(-FRAC_PI_2, FRAC_PI_2))
        .with_inverse(f64::tan)
        .with_inverse_antiderivative(|x| -x.cos().ln())
}

/// `f = t²`, `F = t³/3`. `f` vanishes at the origin.
pub fn power() -> FluxPair {
    FluxPair::new("power", |t| t * t, |t| t * t * t / 3.0)
        .with_positivity(Positivity::NonnegativeVanishing)
        .with_inverse(|x| (3.0 * x).cbrt())
        .with_inverse_antiderivative(|x| 0.75 * 3f64.cbrt() * x.abs().powf(4.0 / 3.0))
}

pub fn builtin_catalog() -> Vec<FluxPair> {
    vec![identity(), cubic(), arsinh(), arctan(), power()]
}

pub fn by_name(name: &str) -> Option<FluxPair> {
    builtin_catalog().into_iter().find(|p| p.name == name)
}
