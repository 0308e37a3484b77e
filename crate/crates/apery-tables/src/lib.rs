//! Exact-arithmetic construction of the two-dimensional Apéry tables behind
//! the irrationality of zeta(3), together with everything needed to audit
//! them: structural conditions on the defining polynomial pairs, integrality
//! of the table entries, cross-difference identities, a table-internal
//! rigorous enclosure of zeta(3), diagonal asymptotics against the exact
//! eigen-data 17 ± 12√2, the irrationality certificate, and the bridge to the
//! Hurwitz-zeta continued fraction.
//!
//! All table arithmetic is exact over big rationals; approximate quantities
//! live in [`ball::BallReal`], a midpoint-radius fixed-point type whose radii
//! rigorously dominate every rounding step. Independent reference values come
//! from Euler-Maclaurin summation in [`refvalues`].
//!
//! See the `examples/` directory for one runnable walk-through per major
//! capability, and the `apery-tables` binary for batch verification runs.

pub mod asymptotics;
pub mod ball;
pub mod contfrac;
pub mod convergence;
pub mod error;
pub mod integrality;
pub mod poly;
pub mod report;
pub mod refvalues;
pub mod table;

pub use ball::BallReal;
pub use error::{Error, Result};
pub use poly::{preset, PolyPair, Rat};
pub use table::{build, BoundarySpec, RationalTable, TableMode};
