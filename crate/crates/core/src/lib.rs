//! Exact machinery for a three-dimensional eight-vertex model over the
//! two-element field.
//!
//! A vertex of the model carries a 3x3 matrix `A` over the field that maps
//! the three incoming spins of a lattice site to the three outgoing ones.
//! Cubic blocks of side `2^n` compose these local maps into one big linear
//! "block operator"; cyclic boundary conditions pick out its fixed
//! configurations, and spin correlations inside that uniform ensemble are
//! what this crate computes — exactly, with dyadic rational arithmetic
//! end to end.
//!
//! The crate is organised as a pipeline plus an independent referee:
//!
//! * [`gf2`] — bit-packed linear algebra over the two-element field.
//! * [`model`] — the local vertex matrix: minors, the general-position
//!   determinant condition, coupled two-spin systems, eigen-distributions,
//!   and the classification of all 512 matrices.
//! * [`block`] — the composed operator on a `2^n` cube and the
//!   change-of-basis check that splits a doubled block into four
//!   independent vertex copies.
//! * [`transform`] — the ghost transform: ghost spins at level
//!   `n` behave like fresh vertex spins governed by `A` or its transpose
//!   depending on a simple address test.
//! * [`fourier`] — Walsh transforms, subspace summation, and the product
//!   form of the ghost-spin characteristic function.
//! * [`correlations`] — the k-spin correlation engine built on the three
//!   modules above, the closed-form predictor for up to four spins, and
//!   the supporting combinatorial lemmas.
//! * [`oracle`] — brute-force counting over the fixed space, used to
//!   cross-check every probability the engine reports.
//!
//! All public arithmetic is exact: see [`Dyadic`] and [`DyadicProbability`].
//!
//! # Example
//!
//! The probability that the four corners of a half-period square are all
//! zero, computed three independent ways:
//!
//! ```
//! use f2vertex::correlations::{theorem_predictor, CorrelationEngine, CorrelationQuery};
//! use f2vertex::model::VertexModel;
//! use f2vertex::oracle::oracle_probability;
//! # fn main() -> Result<(), f2vertex::error::Error> {
//! let model = VertexModel::from_encoding("011001101")?;
//! let engine = CorrelationEngine::new(&model, 2)?;
//! let query = CorrelationQuery::from_pairs(2, &[(0, 0), (2, 0), (0, 2), (2, 2)])?;
//!
//! let p = engine.probability(&query)?;
//! assert_eq!(p.to_string(), "1/2^3");
//! assert_eq!(p, theorem_predictor(&query)?);
//! assert_eq!(p, oracle_probability(&model, &query)?);
//! # Ok(())
//! # }
//! ```

pub mod block;
pub mod correlations;
pub mod dyadic;
pub mod error;
pub mod fourier;
pub mod gf2;
pub mod model;
pub mod oracle;
pub mod transform;

pub use dyadic::{Dyadic, DyadicProbability};
pub use error::{Error, Result};
