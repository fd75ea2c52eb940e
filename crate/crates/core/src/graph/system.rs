use crate::decomposition::{Codec, Fiber, InducedSystem, Override, StarOutcome, SymbolicMap};
use crate::rational::Rational;
use crate::symbolic::{word_metric, Word};

use super::{GraphCodec, GraphError, GraphPoint, GraphSpec};

/// The chaotic map `F = h⁻¹ ∘ H ∘ h` on a finite graph, with `H` induced by
/// the shift and fixed pointwise on the exceptional set `D′`.
#[derive(Debug, Clone)]
pub struct GraphSystem {
    induced: InducedSystem<GraphCodec>,
    exceptional: Vec<GraphPoint>,
}

impl GraphSystem {
    pub fn new(spec: GraphSpec) -> Self {
        let exceptional = exceptional_set(&spec);
        let induced = InducedSystem::new(
            SymbolicMap::Shift,
            GraphCodec::new(spec),
            Override::Identity,
        )
        .with_pinned(exceptional.iter().cloned());
        GraphSystem {
            induced,
            exceptional,
        }
    }

    pub fn spec(&self) -> &GraphSpec {
        self.induced.codec().spec()
    }

    pub fn codec(&self) -> &GraphCodec {
        self.induced.codec()
    }

    pub fn induced(&self) -> &InducedSystem<GraphCodec> {
        &self.induced
    }

    /// Validated constructor for a point on an arc (1-based index).
    pub fn point(&self, arc: usize, t: Rational) -> Result<GraphPoint, GraphError> {
        if arc == 0 || arc > self.spec().arc_count() {
            return Err(GraphError::UnknownArc(arc.to_string()));
        }
        if !t.is_unit_interval() {
            return Err(GraphError::ParameterOutOfRange(t));
        }
        Ok(self.codec().point_on_arc(arc, t))
    }

    /// Parses `ARC:p/q` (arc id or 1-based index) or `node:ID`.
    pub fn parse_point(&self, s: &str) -> Result<GraphPoint, GraphError> {
        let (head, rest) = s
            .split_once(':')
            .ok_or_else(|| GraphError::MalformedPoint(s.to_string()))?;
        if head == "node" && self.spec().node_index(rest).is_some() {
            return Ok(GraphPoint::Node(rest.to_string()));
        }
        let arc = self
            .spec()
            .resolve_arc(head)
            .ok_or_else(|| GraphError::UnknownArc(head.to_string()))?;
        let t: Rational = rest
            .parse()
            .map_err(|_| GraphError::MalformedPoint(s.to_string()))?;
        self.point(arc, t)
    }

    pub fn encode_point(&self, p: &GraphPoint) -> Fiber {
        self.codec().fiber(p)
    }

    pub fn decode_word(&self, w: &Word) -> GraphPoint {
        self.codec().decode(w)
    }

    /// `F`.
    pub fn graph_map(&self, p: &GraphPoint) -> GraphPoint {
        self.induced.apply_point(p)
    }

    /// `D′`: every node, the midpoints of arcs 1 and r, listed nodes first.
    pub fn exceptional_points(&self) -> &[GraphPoint] {
        &self.exceptional
    }

    pub fn star_check(&self, p: &GraphPoint) -> StarOutcome<GraphPoint> {
        self.induced
            .star_check(&self.encode_point(p))
            .expect("codec fibers are consistent")
    }

    /// The points among `candidates` where `S` violates (*).
    pub fn violations<'a>(
        &self,
        candidates: impl IntoIterator<Item = &'a GraphPoint>,
    ) -> Vec<GraphPoint> {
        candidates
            .into_iter()
            .filter(|p| self.star_check(p).is_violation())
            .cloned()
            .collect()
    }

    /// `[p, F(p), …, F^n(p)]`.
    pub fn graph_orbit(&self, p: &GraphPoint, n: usize) -> Vec<GraphPoint> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(p.clone());
        for _ in 0..n {
            let next = self.graph_map(out.last().expect("nonempty"));
            out.push(next);
        }
        out
    }

    /// Hausdorff distance, under the symbolic metric `d`, between the fibers
    /// of `p` and `q`.
    pub fn graph_metric(&self, p: &GraphPoint, q: &GraphPoint) -> Rational {
        if p == q {
            return Rational::zero();
        }
        let a = self.encode_point(p);
        let b = self.encode_point(q);
        let directed = |from: &Fiber, to: &Fiber| {
            from.members()
                .iter()
                .map(|x| {
                    to.members()
                        .iter()
                        .map(|y| word_metric(x, y))
                        .min()
                        .expect("fibers are nonempty")
                })
                .max()
                .expect("fibers are nonempty")
        };
        directed(&a, &b).max(directed(&b, &a))
    }
}

fn exceptional_set(spec: &GraphSpec) -> Vec<GraphPoint> {
    let r = spec.arc_count();
    let mut out: Vec<GraphPoint> = spec
        .nodes()
        .iter()
        .map(|id| GraphPoint::Node(id.clone()))
        .collect();
    let midpoint = |arc| GraphPoint::Interior {
        arc,
        t: Rational::half(),
    };
    if r >= 2 {
        out.push(midpoint(1));
        out.push(midpoint(r));
    } else if !spec.arc(1).is_loop() {
        // A single segment: 1/2 splits onto both endpoints. On a loop the
        // midpoint fiber maps onto the node fiber and (*) holds.
        out.push(midpoint(1));
    }
    out
}
