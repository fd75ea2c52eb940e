//! Chaotic maps on the interval and on finite graphs, induced from the
//! symbolic systems `({0,1}^ℕ, S)` and `({0,1}^ℕ, C)` through explicit
//! decompositions, with exact rational arithmetic throughout.
//!
//! - [`symbolic`]: eventually periodic words, `S`, `C`, `R`, valuation, metric.
//! - [`decomposition`]: fibers, condition (*), the induced map `H`.
//! - [`interval`]: tent and baker maps through fibers.
//! - [`graph`]: graph DSL, address codec, the induced map on a finite graph.
//! - [`verifier`]: finite-resolution evidence for the chaos properties.

pub mod decomposition;
pub mod graph;
pub mod interval;
pub mod rational;
pub mod symbolic;
pub mod verifier;

pub use rational::Rational;
