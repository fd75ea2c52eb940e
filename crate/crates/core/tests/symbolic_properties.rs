mod common;

use std::collections::BTreeSet;

use common::{random_rationals, SEED};
use proptest::prelude::*;
use symchaos_core::symbolic::{
    bits_of, c_map, periodic_words, r_inverse, r_map, shift_map, word_metric, word_value, Word,
};
use symchaos_core::Rational;

fn arbitrary_word() -> impl Strategy<Value = Word> {
    (
        prop::collection::vec(0u8..=1, 0..=16),
        prop::collection::vec(0u8..=1, 1..=16),
    )
        .prop_map(|(pre, period)| Word::new(pre, period).unwrap())
}

/// `C` on an explicit finite prefix, straight from its definition.
fn oracle_c(bits: &[u8]) -> Vec<u8> {
    bits[1..].iter().map(|b| b ^ bits[0]).collect()
}

/// Exact value of a finite prefix, `Σ b_i 2^-i`.
fn prefix_value(bits: &[u8]) -> Rational {
    let n = bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
    Rational::from_u64_parts(n, 1 << bits.len())
}

#[test]
fn value_inverts_expansion_on_random_rationals() {
    for t in random_rationals(1000, 1_000_000, SEED) {
        let expansions = bits_of(&t).unwrap();
        assert!(!expansions.is_empty() && expansions.len() <= 2);
        assert_eq!(
            expansions.len() == 2,
            t.is_dyadic() && !t.is_zero() && !t.is_one()
        );
        for w in &expansions {
            assert_eq!(word_value(w), t, "expansion {w} of {t}");
        }
    }
}

#[test]
fn r_closed_form_matches_literal_c_iteration() {
    // R(ψ)(i) = C^i(ψ)(1), over every 16-bit prefix followed by 0^∞.
    let len = 16;
    for seed in 0..1u32 << len {
        let u: Vec<u8> = (0..len).rev().map(|j| ((seed >> j) & 1) as u8).collect();
        let w = Word::new(u, vec![0]).unwrap();
        let r = r_map(&w);
        let mut cur = w.prefix(len + 1);
        for i in 1..=len {
            cur = oracle_c(&cur);
            assert_eq!(r.bit(i), cur[0], "seed {seed:b}, bit {i}");
        }
    }
}

#[test]
fn periodic_words_are_exactly_the_shift_periodic_ones() {
    for n in 1..=10u32 {
        let words = periodic_words(n).unwrap();
        assert_eq!(words.len(), 1 << n);
        let distinct: BTreeSet<_> = words.iter().cloned().collect();
        assert_eq!(distinct.len(), words.len());
        for w in &words {
            assert!(w.is_periodic());
            assert_eq!(n as usize % w.period().len(), 0);
            let back = (0..n).fold(w.clone(), |x, _| shift_map(&x));
            assert_eq!(&back, w);
        }
    }
}

proptest! {
    #[test]
    fn shift_and_c_match_their_definitions(w in arbitrary_word()) {
        let n = 40;
        let bits = w.prefix(n + 1);
        prop_assert_eq!(shift_map(&w).prefix(n), bits[1..].to_vec());
        prop_assert_eq!(c_map(&w).prefix(n), oracle_c(&bits));
    }

    #[test]
    fn metric_axioms(a in arbitrary_word(), b in arbitrary_word(), c in arbitrary_word()) {
        let ab = word_metric(&a, &b);
        prop_assert!(word_metric(&a, &a).is_zero());
        prop_assert_eq!(ab.is_zero(), a == b);
        prop_assert_eq!(&ab, &word_metric(&b, &a));
        prop_assert!(ab <= &word_metric(&a, &c) + &word_metric(&c, &b));
        prop_assert!(ab <= Rational::one());
    }

    #[test]
    fn metric_matches_partial_sums(a in arbitrary_word(), b in arbitrary_word()) {
        // |d - d_n| ≤ 2^-n for the n-bit truncation.
        let n = 48;
        let diff: Vec<u8> = (1..=n).map(|i| a.bit(i) ^ b.bit(i)).collect();
        let partial = prefix_value(&diff);
        let d = word_metric(&a, &b);
        prop_assert!(partial <= d);
        prop_assert!(d <= &partial + &Rational::dyadic_unit(n as u32));
    }

    #[test]
    fn value_matches_partial_sums(w in arbitrary_word()) {
        let n = 48;
        let partial = prefix_value(&w.prefix(n));
        let v = word_value(&w);
        prop_assert!(partial <= v);
        prop_assert!(v <= &partial + &Rational::dyadic_unit(n as u32));
    }

    #[test]
    fn r_is_two_to_one(w in arbitrary_word()) {
        let pre = r_inverse(&w);
        prop_assert_eq!(pre.bit(1), 0);
        prop_assert_eq!(r_map(&pre), w.clone());
        prop_assert_eq!(r_map(&pre.complement()), w);
    }

    #[test]
    fn r_intertwines_shift_and_c(w in arbitrary_word()) {
        prop_assert_eq!(shift_map(&r_map(&w)), r_map(&c_map(&w)));
    }

    #[test]
    fn expansion_round_trip(a in 0u64..5000, extra in 0u64..5000) {
        let b = a + extra + 1;
        let t = Rational::from_u64_parts(a.min(b), b);
        for w in bits_of(&t).unwrap() {
            prop_assert_eq!(word_value(&w), t.clone());
        }
    }
}
