//! Exact analysis of germs of mixed polynomials `f(z, z̄)`.
//!
//! The crate covers the whole pipeline from a text expression to a
//! smoothness certificate for the strict transform of `f⁻¹(0)` under the
//! canonical toric modification:
//!
//! * [`poly`]: mixed polynomials with exact Gaussian-rational coefficients,
//!   parsing, rendering, Wirtinger derivatives.
//! * [`newton`]: radial Newton polyhedron queries, faces, staircase and dual
//!   diagram for two variables.
//! * [`face`]: face functions, radial/polar degrees, face-type verdicts.
//! * [`fan`]: simplicial lattice cones and the canonical regular subdivision.
//! * [`toric`]: chart pull-backs, the factored decomposition, `Λ` and the
//!   smoothness certificate.
//! * [`nondeg`]: exact and sampled Newton non-degeneracy checks.
//! * [`lab`]: numerical probes of the differentiability class of
//!   `u^{r+s} / ū^r`.
//! * [`report`], [`svg`], [`cli`]: the command-line front end.

pub mod cli;
pub mod error;
pub mod face;
pub mod fan;
pub mod gaussian;
pub mod lab;
pub mod lattice;
pub mod newton;
pub mod nondeg;
mod numeric;
pub mod poly;
pub mod report;
pub mod svg;
pub mod toric;

pub use error::{Error, Result};
pub use gaussian::GaussianRational;
pub use lattice::WeightVector;
pub use poly::{ExponentPair, MixedPolynomial, MixedTerm};
