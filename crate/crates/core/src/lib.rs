//! Separable entire solutions of quasilinear elliptic equations
//! `f₁(u_x)·u_xx + 2B·u_xy + f₂(u_y)·u_yy = 0`.
//!
//! For a flux pair `(f, F)` with `F' = f > 0` and `F` a bijection of the
//! real line, `u(x, y) = ∫₀ˣ F₁⁻¹(c·s) ds + ∫₀ʸ F₂⁻¹(−c·s) ds` solves the
//! equation on the whole plane for every `B`, and is non-affine whenever
//! `c ≠ 0`. With `f = 1 + t²` this yields a non-linear entire solution of
//! `(1 + u_x²)u_xx + 2u_x u_y u_xy + (1 + u_y²)u_yy = 0`.
//!
//! ```
//! use entire::{equations, solution, verify};
//!
//! let sol = solution::construct(entire::flux::cubic(), entire::flux::cubic(), 1.0);
//! let grid = verify::Grid::square(-10.0, 10.0, 21)?;
//! let report = verify::verify_solution(&sol, &equations::wrong_msa(), &grid, false)?;
//! assert!(report.max_abs_residual < 1e-10);
//! # Ok::<(), entire::Error>(())
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod antiderivative;
pub mod cli;
pub mod equations;
mod error;
pub mod flux;
pub mod inversion;
pub mod solution;
pub mod verify;

pub use error::{Error, Result};
