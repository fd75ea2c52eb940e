use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An eventually periodic point of `{0,1}^ℕ`: `pre · period^∞`.
///
/// Always stored in canonical form: the period is primitive and the
/// preperiod cannot be shortened by rolling it into the period. Two words are
/// equal as sequences iff their canonical forms are identical, so the derived
/// `Eq`/`Ord`/`Hash` are semantic. Ordering is lexicographic on
/// `(pre, period)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pre: Vec<u8>,
    period: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("empty period")]
    EmptyPeriod,
    #[error("bit value {0} is not 0 or 1")]
    NotABit(u8),
    #[error("malformed word `{0}`: expected `pre:period` over {{0,1}}")]
    Malformed(String),
}

impl Word {
    pub fn new(pre: Vec<u8>, period: Vec<u8>) -> Result<Self, WordError> {
        if period.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        if let Some(&b) = pre.iter().chain(&period).find(|&&b| b > 1) {
            return Err(WordError::NotABit(b));
        }
        Ok(Self::canonical(pre, period))
    }

    pub fn periodic(period: Vec<u8>) -> Result<Self, WordError> {
        Self::new(Vec::new(), period)
    }

    /// `bit^∞`.
    pub fn constant(bit: u8) -> Self {
        assert!(bit <= 1);
        Word {
            pre: Vec::new(),
            period: vec![bit],
        }
    }

    /// Builds the canonical form from raw parts already known to be bits.
    pub(crate) fn canonical(mut pre: Vec<u8>, period: Vec<u8>) -> Self {
        debug_assert!(!period.is_empty());
        let root = primitive_root_len(&period);
        let mut period = if root < period.len() {
            period[..root].to_vec()
        } else {
            period
        };

        let l = period.len();
        let mut rolled = 0;
        while rolled < pre.len() && pre[pre.len() - 1 - rolled] == period[(l - 1 - rolled % l) % l]
        {
            rolled += 1;
        }
        if rolled > 0 {
            pre.truncate(pre.len() - rolled);
            period.rotate_right(rolled % l);
        }
        Word { pre, period }
    }

    pub fn pre(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn is_periodic(&self) -> bool {
        self.pre.is_empty()
    }

    /// The 1-based `i`-th symbol.
    pub fn bit(&self, i: usize) -> u8 {
        assert!(i >= 1, "words are indexed from 1");
        let j = i - 1;
        if j < self.pre.len() {
            self.pre[j]
        } else {
            self.period[(j - self.pre.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<u8> {
        (1..=n).map(|i| self.bit(i)).collect()
    }

    /// `bits · self`.
    pub fn prepend(&self, bits: &[u8]) -> Word {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        let mut pre = bits.to_vec();
        pre.extend_from_slice(&self.pre);
        Word::canonical(pre, self.period.clone())
    }

    /// Drops the first `n` symbols.
    pub fn drop_prefix(&self, n: usize) -> Word {
        if n <= self.pre.len() {
            return Word {
                pre: self.pre[n..].to_vec(),
                period: self.period.clone(),
            };
        }
        let mut period = self.period.clone();
        let by = (n - self.pre.len()) % period.len();
        period.rotate_left(by);
        Word {
            pre: Vec::new(),
            period,
        }
    }

    /// Bitwise complement of every symbol. Preserves canonical form.
    pub fn complement(&self) -> Word {
        Word {
            pre: self.pre.iter().map(|b| b ^ 1).collect(),
            period: self.period.iter().map(|b| b ^ 1).collect(),
        }
    }

    /// `Some(b)` when the word ends in `b^∞`.
    pub fn constant_tail(&self) -> Option<u8> {
        (self.period.len() == 1).then(|| self.period[0])
    }
}

/// Length of the shortest block whose repetition gives `s`.
fn primitive_root_len(s: &[u8]) -> usize {
    let n = s.len();
    if n <= 1 {
        return n;
    }
    // KMP failure function; the smallest period is n - fail[n-1].
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let p = n - fail[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

fn write_bits(f: &mut fmt::Formatter<'_>, bits: &[u8]) -> fmt::Result {
    for b in bits {
        f.write_str(if *b == 0 { "0" } else { "1" })?;
    }
    Ok(())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(f, &self.pre)?;
        f.write_str(":")?;
        write_bits(f, &self.period)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || WordError::Malformed(s.to_string());
        let (pre, period) = s.trim().split_once(':').ok_or_else(malformed)?;
        let bits = |t: &str| {
            t.bytes()
                .map(|b| match b {
                    b'0' => Ok(0),
                    b'1' => Ok(1),
                    _ => Err(malformed()),
                })
                .collect::<Result<Vec<u8>, _>>()
        };
        let period = bits(period)?;
        if period.is_empty() {
            return Err(malformed());
        }
        Ok(Word::canonical(bits(pre)?, period))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
