//! The closed interval as a decomposition of `{0,1}^ℕ`: the fiber of `y` is
//! the set of binary expansions of `y`. `C` induces the tent map; `S`
//! induces the baker map once the split fiber of `1/2` is sent to `f⁻¹(1)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decomposition::{Codec, Fiber, InducedSystem, Override, SymbolicMap};
use crate::rational::{ParseRationalError, Rational};
use crate::symbolic::{bits_of, r_map, word_value};

/// A rational point of `[0,1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Rational", into = "Rational")]
pub struct UnitPoint(Rational);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("{0} is outside [0,1]")]
    OutOfRange(Rational),
    #[error(transparent)]
    Parse(#[from] ParseRationalError),
}

impl UnitPoint {
    pub fn new(value: Rational) -> Result<Self, IntervalError> {
        if value.is_unit_interval() {
            Ok(UnitPoint(value))
        } else {
            Err(IntervalError::OutOfRange(value))
        }
    }

    pub fn zero() -> Self {
        UnitPoint(Rational::zero())
    }

    pub fn one() -> Self {
        UnitPoint(Rational::one())
    }

    pub fn half() -> Self {
        UnitPoint(Rational::half())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_value(self) -> Rational {
        self.0
    }
}

impl TryFrom<Rational> for UnitPoint {
    type Error = IntervalError;
    fn try_from(value: Rational) -> Result<Self, Self::Error> {
        UnitPoint::new(value)
    }
}

impl From<UnitPoint> for Rational {
    fn from(p: UnitPoint) -> Rational {
        p.0
    }
}

impl FromStr for UnitPoint {
    type Err = IntervalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        UnitPoint::new(s.parse()?)
    }
}

impl fmt::Display for UnitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for UnitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// `y ↦ {binary expansions of y}`, `w ↦ Σ w(i)/2^i`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntervalCodec;

impl Codec for IntervalCodec {
    type Point = UnitPoint;

    fn fiber(&self, p: &UnitPoint) -> Fiber {
        interval_fiber(p)
    }

    fn decode(&self, w: &crate::symbolic::Word) -> UnitPoint {
        UnitPoint(word_value(w))
    }

    /// Dyadic fibers `{u10^∞, u01^∞}` keep both members on the same dyadic
    /// after dropping a bit of a nonempty `u`; only `u = ε` can split.
    fn seam_candidates(&self) -> Vec<UnitPoint> {
        vec![UnitPoint::half()]
    }
}

pub fn interval_fiber(y: &UnitPoint) -> Fiber {
    Fiber::new(bits_of(&y.0).expect("unit point lies in [0,1]")).expect("at least one expansion")
}

/// `T(x) = 2x` on `[0,1/2]`, `2(1−x)` on `[1/2,1]`.
pub fn tent(y: &UnitPoint) -> UnitPoint {
    if y.0 <= Rational::half() {
        UnitPoint(y.0.double())
    } else {
        UnitPoint(y.0.complement().double())
    }
}

/// `B(x) = 2x` on `[0,1/2]`, `2x−1` on `(1/2,1]`.
pub fn baker(y: &UnitPoint) -> UnitPoint {
    if y.0 <= Rational::half() {
        UnitPoint(y.0.double())
    } else {
        UnitPoint(
            y.0.double()
                .checked_sub(&Rational::one())
                .expect("2x - 1 >= 0 for x > 1/2"),
        )
    }
}

/// `H` induced by `C`. Condition (*) holds everywhere, so no patching occurs.
pub fn tent_system() -> InducedSystem<IntervalCodec> {
    InducedSystem::new(SymbolicMap::C, IntervalCodec, Override::Identity)
}

/// `H'` induced by `S`, with `f⁻¹(1/2) ↦ f⁻¹(1)`.
pub fn baker_system() -> InducedSystem<IntervalCodec> {
    InducedSystem::new(
        SymbolicMap::Shift,
        IntervalCodec,
        Override::Designated(UnitPoint::one()),
    )
}

/// The tent map computed through fibers: `h⁻¹ ∘ H ∘ h`.
pub fn induced_tent(y: &UnitPoint) -> UnitPoint {
    let out = tent_system().apply_point(y);
    debug_assert_eq!(
        out,
        tent(y),
        "fiber route disagrees with the tent formula at {y}"
    );
    out
}

/// The baker map computed through fibers: `h⁻¹ ∘ H' ∘ h`.
pub fn induced_baker(y: &UnitPoint) -> UnitPoint {
    let out = baker_system().apply_point(y);
    debug_assert_eq!(
        out,
        baker(y),
        "fiber route disagrees with the baker formula at {y}"
    );
    out
}

/// Value of `R` applied to the first listed expansion of `y` (`⋯10^∞` for
/// dyadics). The two expansions of a dyadic have different `R`-images, so the
/// choice matters there.
pub fn conjugate_via_r(y: &UnitPoint) -> UnitPoint {
    let expansions = bits_of(&y.0).expect("unit point lies in [0,1]");
    UnitPoint(word_value(&r_map(&expansions[0])))
}
