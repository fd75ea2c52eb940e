//! The maps `S`, `C`, `R` on `{0,1}^ℕ`, the binary valuation onto `[0,1]`, and
//! the metric `d(ψ, φ) = Σ |ψ(i) − φ(i)| / 2^i`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{SymbolicError, Word, DEFAULT_MAX_BITS};
use crate::rational::Rational;

/// Shift: `S(w)(i) = w(i+1)`.
pub fn shift_map(w: &Word) -> Word {
    w.drop_prefix(1)
}

/// `C(w)(i) = w(i+1)` if `w(1) = 0`, else `1 − w(i+1)`.
pub fn c_map(w: &Word) -> Word {
    let shifted = w.drop_prefix(1);
    if w.bit(1) == 1 {
        shifted.complement()
    } else {
        shifted
    }
}

/// `R(w)(i) = C^i(w)(1)`, computed through the closed form `w(i) XOR w(i+1)`.
/// The test suite checks the closed form against literal `C` iterates.
pub fn r_map(w: &Word) -> Word {
    let pre = w.pre();
    let period = w.period();
    let l = period.len();
    let mut out_pre = Vec::with_capacity(pre.len());
    for i in 0..pre.len() {
        let next = if i + 1 < pre.len() {
            pre[i + 1]
        } else {
            period[0]
        };
        out_pre.push(pre[i] ^ next);
    }
    let out_period = (0..l).map(|j| period[j] ^ period[(j + 1) % l]).collect();
    Word::canonical(out_pre, out_period)
}

/// The preimage of `w` under [`r_map`] that starts with 0 (cumulative XOR).
///
/// `r_map` identifies a word with its complement, so there are always two
/// preimages; the other one is the complement of the result.
pub fn r_inverse(w: &Word) -> Word {
    let m = w.pre().len();
    let l = w.period().len();
    // The cumulative XOR is periodic from index m+1 with period dividing 2l.
    let total = m + 2 * l;
    let mut bits = Vec::with_capacity(total);
    let mut acc = 0u8;
    for i in 1..=total {
        bits.push(acc);
        acc ^= w.bit(i);
    }
    let period = bits.split_off(m);
    Word::canonical(bits, period)
}

/// Exact value of the binary expansion `Σ w(i)/2^i`.
pub fn word_value(w: &Word) -> Rational {
    let pre = w.pre();
    let period = w.period();
    let m = pre.len();
    let l = period.len();

    if m + l <= 62 {
        let p = bits_to_u64(pre);
        let b = bits_to_u64(period);
        let cycle = (1u64 << l) - 1;
        return Rational::from_u64_parts(p * cycle + b, cycle << m);
    }

    let p = bits_to_biguint(pre);
    if let Some(tail) = w.constant_tail() {
        let numer = p + BigUint::from(tail);
        return Rational::new(numer, BigUint::one() << m);
    }

    // value = (p + a/q) / 2^m with a/q reduced and q odd, so the only common
    // factors of p·q + a and 2^m·q are powers of two.
    let (a, q) = periodic_fraction(period);
    let mut numer = p * &q + a;
    if numer.is_zero() {
        return Rational::zero();
    }
    let tz = (numer.trailing_zeros().unwrap_or(0) as usize).min(m);
    numer >>= tz;
    let denom = q << (m - tz);
    Rational::from_ratio(Ratio::new_raw(numer, denom))
}

fn bits_to_u64(bits: &[u8]) -> u64 {
    bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
}

fn bits_to_biguint(bits: &[u8]) -> BigUint {
    let mut bytes = Vec::with_capacity(bits.len().div_ceil(8));
    let lead = bits.len() % 8;
    let (head, rest) = bits.split_at(lead);
    if !head.is_empty() {
        bytes.push(bits_to_u64(head) as u8);
    }
    bytes.extend(rest.chunks(8).map(|c| bits_to_u64(c) as u8));
    BigUint::from_bytes_be(&bytes)
}

/// `(a, q)` in lowest terms with `a/q = B/(2^l − 1)` where `B` is the period
/// read as a binary integer. `q` is always odd.
fn periodic_fraction(period: &[u8]) -> (BigUint, BigUint) {
    if period.len() > 4096 {
        if let Some((a, q)) = small_denominator_fraction(period) {
            return (BigUint::from(a), BigUint::from(q));
        }
    }
    let b = bits_to_biguint(period);
    let cycle = (BigUint::one() << period.len()) - 1u32;
    let g = b.gcd(&cycle);
    (b / &g, cycle / g)
}

/// Recovers `a/q` for long periods when `q < 2^62`, avoiding a gcd on
/// numbers with as many bits as the period.
///
/// A fraction with `q < 2^59` is a convergent of any approximation closer than
/// `1/(2q²)`; each candidate is then confirmed by regenerating the full period
/// with long division, so a wrong candidate is never accepted.
fn small_denominator_fraction(period: &[u8]) -> Option<(u64, u64)> {
    const APPROX_BITS: usize = 120;
    let l = period.len();
    let x: u128 = (0..APPROX_BITS).fold(0u128, |acc, j| (acc << 1) | period[j % l] as u128);
    let scale: u128 = 1 << APPROX_BITS;

    // Continued-fraction convergents of x / 2^120.
    let (mut num, mut den) = (x, scale);
    let (mut h_prev, mut h) = (0u128, 1u128);
    let (mut k_prev, mut k) = (1u128, 0u128);
    while den != 0 {
        let a = num / den;
        (num, den) = (den, num - a * den);
        (h_prev, h) = (h, a.checked_mul(h)?.checked_add(h_prev)?);
        (k_prev, k) = (k, a.checked_mul(k)?.checked_add(k_prev)?);
        if k >= 1 << 59 {
            break;
        }
        if k % 2 == 1 && expands_to(h as u64, k as u64, period) {
            return Some((h as u64, k as u64));
        }
    }
    None
}

/// True when `a/q` (q odd) has purely periodic expansion `period^∞`.
fn expands_to(a: u64, q: u64, period: &[u8]) -> bool {
    if a > q {
        return false;
    }
    let mut r = a as u128;
    let q = q as u128;
    for &bit in period {
        r <<= 1;
        let digit = (r >= q) as u8;
        if digit != bit {
            return false;
        }
        if digit == 1 {
            r -= q;
        }
    }
    // For a = q the digits are all 1 and the remainder stays q.
    r == a as u128
}

/// `d(a, b)`, exact.
pub fn word_metric(a: &Word, b: &Word) -> Rational {
    if a == b {
        return Rational::zero();
    }
    word_value(&xor_words(a, b))
}

fn xor_words(a: &Word, b: &Word) -> Word {
    let m = a.pre().len().max(b.pre().len());
    let l = a.period().len().lcm(&b.period().len());
    let bits: Vec<u8> = (1..=m + l).map(|i| a.bit(i) ^ b.bit(i)).collect();
    let (pre, period) = bits.split_at(m);
    Word::canonical(pre.to_vec(), period.to_vec())
}

/// All binary expansions of `t ∈ [0,1]`.
///
/// Dyadic `t` strictly inside the interval has two, ordered `[⋯10^∞, ⋯01^∞]`;
/// every other value has exactly one.
pub fn bits_of(t: &Rational) -> Result<Vec<Word>, SymbolicError> {
    if !t.is_unit_interval() {
        return Err(SymbolicError::OutOfUnitInterval(t.clone()));
    }
    if t.is_zero() {
        return Ok(vec![Word::constant(0)]);
    }
    if t.is_one() {
        return Ok(vec![Word::constant(1)]);
    }
    if t.is_dyadic() {
        let n = t.denom().trailing_zeros().unwrap_or(0) as usize;
        let high = to_bits(t.numer(), n);
        let low = to_bits(&(t.numer() - 1u32), n);
        return Ok(vec![
            Word::canonical(high, vec![0]),
            Word::canonical(low, vec![1]),
        ]);
    }
    Ok(vec![long_division(t)])
}

fn to_bits(x: &BigUint, width: usize) -> Vec<u8> {
    (0..width).rev().map(|j| x.bit(j as u64) as u8).collect()
}

/// Greedy expansion of a non-dyadic rational: `v2(q)` preperiod digits, then
/// one full cycle of the remainder sequence.
fn long_division(t: &Rational) -> Word {
    let v = t.denom().trailing_zeros().unwrap_or(0) as usize;
    if let Some((a, q)) = t.to_u64_parts().filter(|&(_, q)| q < 1 << 62) {
        let q = q as u128;
        let mut r = a as u128;
        let digit = |r: &mut u128| {
            *r <<= 1;
            let d = (*r >= q) as u8;
            if d == 1 {
                *r -= q;
            }
            d
        };
        let pre: Vec<u8> = (0..v).map(|_| digit(&mut r)).collect();
        let start = r;
        let mut period = Vec::new();
        loop {
            period.push(digit(&mut r));
            if r == start {
                break;
            }
        }
        return Word::canonical(pre, period);
    }

    let q = t.denom().clone();
    let mut r = t.numer().clone();
    let step = |r: &mut BigUint| {
        *r <<= 1;
        if *r >= q {
            *r -= &q;
            1
        } else {
            0
        }
    };
    let pre: Vec<u8> = (0..v).map(|_| step(&mut r)).collect();
    let start = r.clone();
    let mut period = Vec::new();
    loop {
        period.push(step(&mut r));
        if r == start {
            break;
        }
    }
    Word::canonical(pre, period)
}

/// Every word fixed by `S^n`: the purely periodic words whose primitive period
/// divides `n`. There are exactly `2^n`, listed in seed order.
pub fn periodic_words(n: u32) -> Result<Vec<Word>, SymbolicError> {
    periodic_words_with_limit(n, DEFAULT_MAX_BITS)
}

pub fn periodic_words_with_limit(n: u32, limit: u32) -> Result<Vec<Word>, SymbolicError> {
    if n == 0 {
        return Err(SymbolicError::ZeroPeriod);
    }
    if n > limit {
        return Err(SymbolicError::BoundExceeded {
            what: "period",
            value: n as u64,
            limit: limit as u64,
        });
    }
    Ok((0..1u64 << n)
        .map(|seed| {
            let period = (0..n).rev().map(|j| ((seed >> j) & 1) as u8).collect();
            Word::canonical(Vec::new(), period)
        })
        .collect())
}

/// Outcome of comparing `S∘R` with `R∘C` over all prefixes of one length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacySummary {
    pub length: u32,
    pub prefixes: u64,
    pub compared_bits: usize,
    pub agreeing: u64,
    pub first_disagreement: Option<Word>,
}

impl ConjugacySummary {
    pub fn holds(&self) -> bool {
        self.agreeing == self.prefixes
    }
}

/// Checks `S(R(w)) = R(C(w))` on the first `length − 1` bits for every
/// `w = u·0^∞` with `|u| = length`.
pub fn conjugacy_agreement(length: u32, limit: u32) -> Result<ConjugacySummary, SymbolicError> {
    if length < 2 {
        return Err(SymbolicError::BoundExceeded {
            what: "conjugacy length (minimum 2)",
            value: length as u64,
            limit: 2,
        });
    }
    if length > limit {
        return Err(SymbolicError::BoundExceeded {
            what: "conjugacy length",
            value: length as u64,
            limit: limit as u64,
        });
    }
    let compared = length as usize - 1;
    let mut agreeing = 0u64;
    let mut first_disagreement = None;
    for seed in 0..1u64 << length {
        let prefix: Vec<u8> = (0..length).rev().map(|j| ((seed >> j) & 1) as u8).collect();
        let w = Word::canonical(prefix, vec![0]);
        let lhs = shift_map(&r_map(&w));
        let rhs = r_map(&c_map(&w));
        if lhs.prefix(compared) == rhs.prefix(compared) {
            agreeing += 1;
        } else if first_disagreement.is_none() {
            first_disagreement = Some(w);
        }
    }
    Ok(ConjugacySummary {
        length,
        prefixes: 1 << length,
        compared_bits: compared,
        agreeing,
        first_disagreement,
    })
}
