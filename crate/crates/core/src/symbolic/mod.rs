//! Exact elements of `{0,1}^ℕ` and the symbolic maps acting on them.

mod maps;
mod stream;
mod word;

pub use maps::{
    bits_of, c_map, conjugacy_agreement, periodic_words, periodic_words_with_limit, r_inverse,
    r_map, shift_map, word_metric, word_value, ConjugacySummary,
};
pub use stream::{dense_word, StreamGenerator, StreamWord};
pub use word::{Word, WordError};

use crate::rational::Rational;

/// Default cap on enumeration sizes in bits (`2^24` words).
pub const DEFAULT_MAX_BITS: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolicError {
    #[error("{0} is outside [0,1]")]
    OutOfUnitInterval(Rational),
    #[error("period must be positive")]
    ZeroPeriod,
    #[error("{what} {value} exceeds the configured bound {limit}")]
    BoundExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },
}
