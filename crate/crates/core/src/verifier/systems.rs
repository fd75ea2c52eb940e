use std::fmt::{Debug, Display};

use crate::decomposition::{Codec, InducedSystem, SymbolicMap};
use crate::graph::{GraphPoint, GraphSystem};
use crate::interval::{baker_system, tent_system, IntervalCodec, UnitPoint};
use crate::rational::Rational;
use crate::symbolic::{word_value, StreamWord, Word};

/// What the checks need from a dynamical system on a finite union of arcs,
/// each parametrized by `[0,1]`.
pub trait ChaosSystem: Sync {
    type Point: Clone + Eq + Ord + Debug + Display + Send + Sync;

    fn name(&self) -> String;

    /// `F`.
    fn step(&self, x: &Self::Point) -> Self::Point;

    fn distance(&self, x: &Self::Point, y: &Self::Point) -> Rational;

    /// The point addressed by `w`.
    fn project(&self, w: &Word) -> Self::Point;

    fn arc_count(&self) -> usize {
        1
    }

    /// The point at parameter `t` of `arc` (1-based).
    fn point_at(&self, arc: usize, t: Rational) -> Self::Point;

    /// Every `(arc, t)` naming `x`. A node appears once per incident arc end.
    fn coordinates(&self, x: &Self::Point) -> Vec<(usize, Rational)>;

    /// The symbolic map whose iterates of `ψ₀` give the orbit used for the
    /// dense-orbit and Lemma-6 stream checks. `None` for the negative controls.
    fn symbolic_map(&self) -> Option<SymbolicMap> {
        None
    }

    /// The arc addressed by `sw` and the next `bits` parameter bits.
    fn stream_address(&self, sw: &StreamWord, bits: u32) -> (usize, Vec<u8>) {
        (1, sw.prefix(bits as usize))
    }

    fn semiconjugacy(&self, _w: &Word) -> Option<bool> {
        None
    }

    fn semiconjugacy_stream(&self, _sw: &StreamWord, _max_bits: u64) -> Option<bool> {
        None
    }

    /// Fibers that must not contain periodic words for the Lemma-6 route.
    fn periodic_free_fibers(&self) -> Vec<(String, Vec<Word>)> {
        Vec::new()
    }

    /// The points patched by construction and the points where (*) actually
    /// fails, for reporting.
    fn patch_sets(&self) -> (Vec<String>, Vec<String>) {
        (Vec::new(), Vec::new())
    }
}

fn display_all<P: Display>(points: impl IntoIterator<Item = P>) -> Vec<String> {
    points.into_iter().map(|p| p.to_string()).collect()
}

/// The tent or baker map, computed through fibers.
#[derive(Debug, Clone)]
pub struct IntervalChaos {
    name: &'static str,
    induced: InducedSystem<IntervalCodec>,
}

impl IntervalChaos {
    pub fn tent() -> Self {
        IntervalChaos {
            name: "tent",
            induced: tent_system(),
        }
    }

    pub fn baker() -> Self {
        IntervalChaos {
            name: "baker",
            induced: baker_system(),
        }
    }

    pub fn induced(&self) -> &InducedSystem<IntervalCodec> {
        &self.induced
    }
}

fn unit(t: Rational) -> UnitPoint {
    UnitPoint::new(t).expect("arc parameter lies in [0,1]")
}

impl ChaosSystem for IntervalChaos {
    type Point = UnitPoint;

    fn name(&self) -> String {
        self.name.to_string()
    }

    fn step(&self, x: &UnitPoint) -> UnitPoint {
        self.induced.apply_point(x)
    }

    fn distance(&self, x: &UnitPoint, y: &UnitPoint) -> Rational {
        x.value().abs_diff(y.value())
    }

    fn project(&self, w: &Word) -> UnitPoint {
        self.induced.codec().decode(w)
    }

    fn point_at(&self, _arc: usize, t: Rational) -> UnitPoint {
        unit(t)
    }

    fn coordinates(&self, x: &UnitPoint) -> Vec<(usize, Rational)> {
        vec![(1, x.value().clone())]
    }

    fn symbolic_map(&self) -> Option<SymbolicMap> {
        Some(self.induced.map())
    }

    fn semiconjugacy(&self, w: &Word) -> Option<bool> {
        Some(self.induced.semiconjugacy_check(w))
    }

    fn semiconjugacy_stream(&self, sw: &StreamWord, max_bits: u64) -> Option<bool> {
        Some(self.induced.semiconjugacy_check_stream(sw, max_bits))
    }

    fn periodic_free_fibers(&self) -> Vec<(String, Vec<Word>)> {
        let codec = self.induced.codec();
        self.induced
            .special_points()
            .into_iter()
            .map(|p| (p.to_string(), codec.fiber(&p).members().to_vec()))
            .collect()
    }

    fn patch_sets(&self) -> (Vec<String>, Vec<String>) {
        (
            display_all(self.induced.pinned()),
            display_all(self.induced.special_points()),
        )
    }
}

impl ChaosSystem for GraphSystem {
    type Point = GraphPoint;

    fn name(&self) -> String {
        format!(
            "graph({} nodes, {} arcs)",
            self.spec().nodes().len(),
            self.spec().arc_count()
        )
    }

    fn step(&self, x: &GraphPoint) -> GraphPoint {
        self.graph_map(x)
    }

    fn distance(&self, x: &GraphPoint, y: &GraphPoint) -> Rational {
        self.graph_metric(x, y)
    }

    fn project(&self, w: &Word) -> GraphPoint {
        self.decode_word(w)
    }

    fn arc_count(&self) -> usize {
        self.spec().arc_count()
    }

    fn point_at(&self, arc: usize, t: Rational) -> GraphPoint {
        self.codec().point_on_arc(arc, t)
    }

    fn coordinates(&self, x: &GraphPoint) -> Vec<(usize, Rational)> {
        match x {
            GraphPoint::Interior { arc, t } => vec![(*arc, t.clone())],
            GraphPoint::Node(id) => {
                let v = self.spec().node_index(id).expect("known node");
                let mut out = Vec::new();
                for (i, a) in self.spec().arcs().iter().enumerate() {
                    if a.tail == v {
                        out.push((i + 1, Rational::zero()));
                    }
                    if a.head == v {
                        out.push((i + 1, Rational::one()));
                    }
                }
                out
            }
        }
    }

    fn symbolic_map(&self) -> Option<SymbolicMap> {
        Some(SymbolicMap::Shift)
    }

    fn stream_address(&self, sw: &StreamWord, bits: u32) -> (usize, Vec<u8>) {
        let r = self.spec().arc_count();
        let ones = (1..r as u64).take_while(|&i| sw.bit(i) == 1).count();
        let arc = ones + 1;
        let skip = self.codec().address().prefix(arc).len() as u64;
        let tail = (1..=bits as u64).map(|i| sw.bit(skip + i)).collect();
        (arc, tail)
    }

    fn semiconjugacy(&self, w: &Word) -> Option<bool> {
        Some(self.induced().semiconjugacy_check(w))
    }

    fn semiconjugacy_stream(&self, sw: &StreamWord, max_bits: u64) -> Option<bool> {
        Some(self.induced().semiconjugacy_check_stream(sw, max_bits))
    }

    fn patch_sets(&self) -> (Vec<String>, Vec<String>) {
        let seams = self.codec().seam_candidates();
        (
            display_all(self.exceptional_points()),
            display_all(self.violations(&seams)),
        )
    }
}

/// Interval maps that are not chaotic, used to show the checks can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    /// `x ↦ 1/2`.
    Constant,
    Identity,
    /// `x ↦ x + 1/3 mod 1`, with `1` read as `0`.
    RotationThird,
}

impl ChaosSystem for Control {
    type Point = UnitPoint;

    fn name(&self) -> String {
        match self {
            Control::Constant => "control:constant",
            Control::Identity => "control:identity",
            Control::RotationThird => "control:rotation-1/3",
        }
        .to_string()
    }

    fn step(&self, x: &UnitPoint) -> UnitPoint {
        match self {
            Control::Constant => UnitPoint::half(),
            Control::Identity => x.clone(),
            Control::RotationThird => {
                let third = Rational::from_u64_parts(1, 3);
                let base = if x.value().is_one() {
                    Rational::zero()
                } else {
                    x.value().clone()
                };
                let sum = &base + &third;
                unit(sum.checked_sub(&Rational::one()).unwrap_or(sum))
            }
        }
    }

    fn distance(&self, x: &UnitPoint, y: &UnitPoint) -> Rational {
        x.value().abs_diff(y.value())
    }

    fn project(&self, w: &Word) -> UnitPoint {
        unit(word_value(w))
    }

    fn point_at(&self, _arc: usize, t: Rational) -> UnitPoint {
        unit(t)
    }

    fn coordinates(&self, x: &UnitPoint) -> Vec<(usize, Rational)> {
        vec![(1, x.value().clone())]
    }
}
