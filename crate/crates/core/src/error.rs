use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{value} lies outside the range ({lo}, {hi}) of the primitive of `{pair}`")]
    OutOfRange {
        pair: String,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("inversion of `{pair}` at {value} did not converge in {iterations} iterations")]
    NoConvergence {
        pair: String,
        value: f64,
        iterations: usize,
    },
    #[error("quadrature on [{a}, {b}] stopped with error estimate {estimate:e} above {tolerance:e}")]
    ToleranceNotMet {
        a: f64,
        b: f64,
        estimate: f64,
        tolerance: f64,
    },
    #[error("point ({x}, {y}) is outside the solution domain")]
    OutOfDomain { x: f64, y: f64 },
    #[error("second derivatives are singular at ({x}, {y})")]
    SingularPoint { x: f64, y: f64 },
    #[error("finite-difference stencil around ({x}, {y}) leaves the domain")]
    StencilOutOfDomain { x: f64, y: f64 },
    #[error("no grid node lies inside the domain and outside the exclusion zone")]
    EmptyGrid,
    #[error("log-log fit needs at least 3 usable radii, got {usable}")]
    DegenerateFit { usable: usize },
    #[error("unknown flux pair `{0}`")]
    UnknownFlux(String),
    #[error("unknown equation `{0}`")]
    UnknownEquation(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
