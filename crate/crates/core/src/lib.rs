//! Exact computation of Jack-polynomial generating series of non-oriented
//! constellations.
//!
//! The crate is organised bottom-up:
//! - [`algebra`]: rationals, polynomials and rational functions in the
//!   deformation variable `b` (with `α = b + 1`).
//! - [`partitions`]: integer partitions, hook products, α-contents.
//! - [`symfunc`]: power-sum and monomial bases, the deformed Hall product and
//!   Jack polynomials.
//! - [`series`]: the multi-alphabet series `τ` and `Ψ`, the coefficients `c`
//!   and `h`, marginal sums and structural identities.
//! - [`matchings`]: matchings on `{1, 1̂, …, n, n̂}`, the sets `𝔉`/`𝔉̃` and the
//!   Gelfand-pair counting formula.
//! - [`constellations`]: constellations encoded as tuples of matchings.
//! - [`lassalle`]: power-sum coefficients `θ_μ(λ)` and the rectangular case.
//! - [`verify`]: named verification suites with JSON reports.

pub mod algebra;
pub mod constellations;
pub mod error;
pub mod lassalle;
pub mod matchings;
pub mod partitions;
pub mod series;
pub mod symfunc;
pub mod verify;

pub use algebra::{BPoly, BRatFn, BigRat};
pub use error::{Error, Result};
pub use partitions::Partition;
