//! Maps induced on a decomposition of `{0,1}^ℕ` by a symbolic map.
//!
//! A decomposition is never stored: a [`Codec`] produces the fiber `f⁻¹(y)`
//! of any space point on demand and decodes a word back to its point. An
//! [`InducedSystem`] pushes fibers through `S` or `C` and patches the result
//! wherever the image is not a single fiber.

use std::collections::BTreeSet;
use std::fmt::{self, Debug, Display};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::symbolic::{c_map, shift_map, StreamWord, Word};

/// One decomposition element: a nonempty finite set of words, sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fiber {
    members: Vec<Word>,
}

impl Fiber {
    pub fn new(words: impl IntoIterator<Item = Word>) -> Result<Self, DecompositionError> {
        let mut members: Vec<Word> = words.into_iter().collect();
        if members.is_empty() {
            return Err(DecompositionError::EmptyFiber);
        }
        members.sort();
        members.dedup();
        Ok(Fiber { members })
    }

    pub fn singleton(word: Word) -> Self {
        Fiber {
            members: vec![word],
        }
    }

    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.binary_search(w).is_ok()
    }

    pub fn first(&self) -> &Word {
        &self.members[0]
    }
}

impl Debug for Fiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompositionError {
    #[error("a fiber must have at least one member")]
    EmptyFiber,
    #[error(
        "fiber is not a decomposition element: {word} decodes to {found}, expected {expected}"
    )]
    InconsistentFiber {
        word: Word,
        expected: String,
        found: String,
    },
}

/// The symbolic map `G` that induces `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymbolicMap {
    /// `S`, the shift.
    Shift,
    /// `C`, shift followed by complement when the dropped bit is 1.
    C,
}

impl SymbolicMap {
    pub fn apply(self, w: &Word) -> Word {
        match self {
            SymbolicMap::Shift => shift_map(w),
            SymbolicMap::C => c_map(w),
        }
    }

    pub fn apply_stream(self, sw: &StreamWord) -> StreamWord {
        match self {
            SymbolicMap::Shift => sw.shift(),
            SymbolicMap::C => sw.c_step(),
        }
    }
}

/// Maps space points to fibers and words back to points.
pub trait Codec {
    type Point: Clone + Eq + Ord + Debug + Display + Send + Sync;

    /// `f⁻¹(p)`.
    fn fiber(&self, p: &Self::Point) -> Fiber;

    /// `f(w)`.
    fn decode(&self, w: &Word) -> Self::Point;

    /// A finite set of points outside of which `S` and `C` send every fiber
    /// into a single fiber. Only multi-member fibers can split, and for the
    /// codecs here those sit at finitely many seams.
    fn seam_candidates(&self) -> Vec<Self::Point>;
}

/// How `H` is patched on the exceptional set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Override<P> {
    /// `H(D) = D`.
    Identity,
    /// `H(D) = f⁻¹(p)` for a fixed point `p`.
    Designated(P),
}

/// Result of testing condition (*) on one fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarOutcome<P> {
    /// Every image decodes to `point`; `target` is its full fiber.
    SingleFiber {
        target: Fiber,
        point: P,
        images: Vec<(Word, P)>,
    },
    /// The images decode to at least two distinct points.
    Violation { images: Vec<(Word, P)> },
}

impl<P> StarOutcome<P> {
    pub fn is_violation(&self) -> bool {
        matches!(self, StarOutcome::Violation { .. })
    }

    pub fn images(&self) -> &[(Word, P)] {
        match self {
            StarOutcome::SingleFiber { images, .. } | StarOutcome::Violation { images } => images,
        }
    }
}

impl<P: Display> Serialize for StarOutcome<P> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Image {
            word: String,
            point: String,
        }
        let images: Vec<Image> = self
            .images()
            .iter()
            .map(|(w, p)| Image {
                word: w.to_string(),
                point: p.to_string(),
            })
            .collect();
        let mut s = serializer.serialize_struct("StarOutcome", 2)?;
        s.serialize_field(
            "kind",
            if self.is_violation() {
                "violation"
            } else {
                "single"
            },
        )?;
        s.serialize_field("images", &images)?;
        s.end()
    }
}

/// `H` on the decomposition given by `codec`, induced by `map` and patched by
/// `policy` on fibers that violate (*) or that are pinned.
#[derive(Debug, Clone)]
pub struct InducedSystem<C: Codec> {
    map: SymbolicMap,
    codec: C,
    policy: Override<C::Point>,
    pinned: BTreeSet<C::Point>,
}

impl<C: Codec> InducedSystem<C> {
    pub fn new(map: SymbolicMap, codec: C, policy: Override<C::Point>) -> Self {
        InducedSystem {
            map,
            codec,
            policy,
            pinned: BTreeSet::new(),
        }
    }

    /// Points whose fibers are overridden regardless of (*).
    pub fn with_pinned(mut self, points: impl IntoIterator<Item = C::Point>) -> Self {
        self.pinned.extend(points);
        self
    }

    pub fn map(&self) -> SymbolicMap {
        self.map
    }

    pub fn codec(&self) -> &C {
        &self.codec
    }

    pub fn policy(&self) -> &Override<C::Point> {
        &self.policy
    }

    pub fn pinned(&self) -> &BTreeSet<C::Point> {
        &self.pinned
    }

    /// Decodes every member and checks they agree.
    fn fiber_point(&self, fib: &Fiber) -> Result<C::Point, DecompositionError> {
        let point = self.codec.decode(fib.first());
        for w in &fib.members()[1..] {
            let other = self.codec.decode(w);
            if other != point {
                return Err(DecompositionError::InconsistentFiber {
                    word: w.clone(),
                    expected: point.to_string(),
                    found: other.to_string(),
                });
            }
        }
        Ok(point)
    }

    pub fn star_check(&self, fib: &Fiber) -> Result<StarOutcome<C::Point>, DecompositionError> {
        self.fiber_point(fib)?;
        let images: Vec<(Word, C::Point)> = fib
            .members()
            .iter()
            .map(|w| {
                let img = self.map.apply(w);
                let p = self.codec.decode(&img);
                (img, p)
            })
            .collect();
        let point = &images[0].1;
        if images.iter().all(|(_, p)| p == point) {
            let point = point.clone();
            Ok(StarOutcome::SingleFiber {
                target: self.codec.fiber(&point),
                point,
                images,
            })
        } else {
            Ok(StarOutcome::Violation { images })
        }
    }

    fn patched(&self, fib: &Fiber) -> Fiber {
        match &self.policy {
            Override::Identity => fib.clone(),
            Override::Designated(p) => self.codec.fiber(p),
        }
    }

    /// `H(D)`.
    pub fn induced_apply(&self, fib: &Fiber) -> Result<Fiber, DecompositionError> {
        let point = self.fiber_point(fib)?;
        if self.pinned.contains(&point) {
            return Ok(self.patched(fib));
        }
        Ok(match self.star_check(fib)? {
            StarOutcome::SingleFiber { target, .. } => target,
            StarOutcome::Violation { .. } => self.patched(fib),
        })
    }

    /// `F = h⁻¹ ∘ H ∘ h` on space points.
    pub fn apply_point(&self, p: &C::Point) -> C::Point {
        let image = self
            .induced_apply(&self.codec.fiber(p))
            .expect("codec produced an inconsistent fiber");
        self.codec.decode(image.first())
    }

    /// `H(π(w)) = π(G(w))`.
    pub fn semiconjugacy_check(&self, w: &Word) -> bool {
        let fib = self.codec.fiber(&self.codec.decode(w));
        let lhs = self
            .induced_apply(&fib)
            .expect("codec produced an inconsistent fiber");
        let rhs = self.codec.fiber(&self.codec.decode(&self.map.apply(w)));
        lhs == rhs
    }

    /// Points whose fibers `H` does not send to their `G`-image: the pinned
    /// points and the seam candidates that actually violate (*).
    pub fn special_points(&self) -> Vec<C::Point> {
        let mut out: BTreeSet<C::Point> = self.pinned.clone();
        for p in self.codec.seam_candidates() {
            let fib = self.codec.fiber(&p);
            if self
                .star_check(&fib)
                .map(|o| o.is_violation())
                .unwrap_or(true)
            {
                out.insert(p);
            }
        }
        out.into_iter().collect()
    }

    /// `H(π(ψ)) = π(G(ψ))` for a stream word, certified by exhibiting, within
    /// the first `max_bits` symbols, a position where `ψ` differs from every
    /// member of every special fiber. Off those fibers `H` is the `G`-image.
    pub fn semiconjugacy_check_stream(&self, sw: &StreamWord, max_bits: u64) -> bool {
        self.special_points()
            .iter()
            .flat_map(|p| self.codec.fiber(p).members)
            .all(|w| (1..=max_bits).any(|i| sw.bit(i) != w.bit(i as usize)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fiber_sorts_and_dedups() {
        let a: Word = "1:0".parse().unwrap();
        let b: Word = "0:1".parse().unwrap();
        let f = Fiber::new([a.clone(), b.clone(), a.clone()]).unwrap();
        assert_eq!(f.members(), &[b.clone(), a.clone()]);
        assert!(f.contains(&a));
        assert_eq!(Fiber::new([]), Err(DecompositionError::EmptyFiber));
    }

    #[test]
    fn star_outcome_json_shape() {
        let w: Word = ":0".parse().unwrap();
        let v: StarOutcome<String> = StarOutcome::Violation {
            images: vec![
                (w.clone(), "0/1".into()),
                (":1".parse().unwrap(), "1/1".into()),
            ],
        };
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["kind"], "violation");
        assert_eq!(json["images"][0]["word"], ":0");
        assert_eq!(json["images"][1]["point"], "1/1");
    }
}
