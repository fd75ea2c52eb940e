//! Finite graphs as decompositions of `{0,1}^ℕ`.
//!
//! Arc `i` owns the cylinder of its address prefix and a point at parameter
//! `t` on it is addressed by `prefix · (binary expansion of t)`. A node's
//! fiber collects the `0^∞`/`1^∞` ends of every incident arc.

mod codec;
mod parse;
mod system;

pub use codec::{AddressCodec, GraphCodec, GraphPoint};
pub use parse::{parse_graph, ArcSpec, GraphParseError, GraphSpec};
pub use system::GraphSystem;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error(transparent)]
    Parse(#[from] GraphParseError),
    #[error("no arc `{0}`")]
    UnknownArc(String),
    #[error("arc parameter {0} is outside [0,1]")]
    ParameterOutOfRange(Rational),
    #[error("malformed graph point `{0}`: expected `ARC:p/q` or `node:ID`")]
    MalformedPoint(String),
}
