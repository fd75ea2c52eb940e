use num_bigint::BigUint;

use crate::rational::Rational;

/// Which infinite sequence a [`StreamWord`] reads from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StreamGenerator {
    /// All finite binary words concatenated, ordered by length and then
    /// lexicographically: `0 1 00 01 10 11 000 …`. Its shift orbit is dense.
    Dense,
}

impl StreamGenerator {
    /// The 1-based `i`-th bit of the raw sequence.
    pub fn bit(self, i: u64) -> u8 {
        match self {
            StreamGenerator::Dense => dense_bit(i),
        }
    }

    /// Whether the raw sequence is eventually periodic. Words of every length
    /// occur in the dense sequence, so it never is.
    pub fn is_eventually_periodic(self) -> bool {
        match self {
            StreamGenerator::Dense => false,
        }
    }
}

fn dense_bit(i: u64) -> u8 {
    assert!(i >= 1, "stream bits are indexed from 1");
    let mut rest = i - 1;
    let mut len = 1u32;
    // block of all words of length `len` occupies len·2^len bits
    loop {
        let block = (len as u64) << len;
        if rest < block {
            break;
        }
        rest -= block;
        len += 1;
    }
    let index = rest / len as u64;
    let pos = (rest % len as u64) as u32;
    ((index >> (len - 1 - pos)) & 1) as u8
}

/// A non-eventually-periodic point of `{0,1}^ℕ`, read lazily.
///
/// `offset` counts applied shifts. `flip` records a pending global
/// complement, which is how iterates of `C` are represented.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StreamWord {
    generator: StreamGenerator,
    offset: u64,
    flip: bool,
}

/// `ψ₀`: the dense sequence at offset 0.
pub fn dense_word() -> StreamWord {
    StreamWord {
        generator: StreamGenerator::Dense,
        offset: 0,
        flip: false,
    }
}

impl StreamWord {
    pub fn generator(&self) -> StreamGenerator {
        self.generator
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn is_complemented(&self) -> bool {
        self.flip
    }

    /// The 1-based `i`-th bit.
    pub fn bit(&self, i: u64) -> u8 {
        self.generator.bit(self.offset + i) ^ self.flip as u8
    }

    /// `S`.
    pub fn shift(&self) -> StreamWord {
        StreamWord {
            offset: self.offset + 1,
            ..self.clone()
        }
    }

    /// `C`: `C(φ)(j) = φ(j+1) XOR φ(1)`, so the pending complement becomes the
    /// raw bit being consumed.
    pub fn c_step(&self) -> StreamWord {
        StreamWord {
            generator: self.generator,
            offset: self.offset + 1,
            flip: self.generator.bit(self.offset + 1) == 1,
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<u8> {
        (1..=n as u64).map(|i| self.bit(i)).collect()
    }

    /// `[lo, lo + 2^-p]` where `lo` is the value of the first `p` bits.
    pub fn value_enclosure(&self, p: u32) -> (Rational, Rational) {
        let lo_num = self
            .prefix(p as usize)
            .iter()
            .fold(BigUint::from(0u32), |acc, &b| (acc << 1usize) + b as u32);
        let scale = BigUint::from(1u32) << p as usize;
        let lo = Rational::new(lo_num.clone(), scale.clone());
        let hi = Rational::new(lo_num + 1u32, scale);
        (lo, hi)
    }
}

impl Iterator for StreamWord {
    type Item = u8;

    /// Yields the first bit and advances by one shift.
    fn next(&mut self) -> Option<u8> {
        let b = self.bit(1);
        self.offset += 1;
        Some(b)
    }
}
