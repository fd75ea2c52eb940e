use std::fmt;

use crate::decomposition::{Codec, Fiber};
use crate::rational::Rational;
use crate::symbolic::{bits_of, word_value, Word};

use super::GraphSpec;

/// A point of the graph: strictly inside arc `arc` (1-based) at parameter
/// `t ∈ (0,1)`, or a node. Endpoint parameters are always normalized to the
/// node they name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphPoint {
    Interior { arc: usize, t: Rational },
    Node(String),
}

impl GraphPoint {
    pub fn node(id: impl Into<String>) -> Self {
        GraphPoint::Node(id.into())
    }

    pub fn is_node(&self) -> bool {
        matches!(self, GraphPoint::Node(_))
    }
}

impl fmt::Display for GraphPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphPoint::Interior { arc, t } => write!(f, "{arc}:{t}"),
            GraphPoint::Node(id) => write!(f, "node:{id}"),
        }
    }
}

impl fmt::Debug for GraphPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Symbolic address of each arc: `P(i) = 1^(i−1)·0` for `i < r` and
/// `P(r) = 1^(r−1)`. The cylinders of these prefixes partition `{0,1}^ℕ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddressCodec {
    prefixes: Vec<Vec<u8>>,
}

impl AddressCodec {
    pub fn new(arc_count: usize) -> Self {
        assert!(arc_count >= 1);
        let prefixes = (1..=arc_count)
            .map(|i| {
                let mut p = vec![1u8; i - 1];
                if i < arc_count {
                    p.push(0);
                }
                p
            })
            .collect();
        AddressCodec { prefixes }
    }

    pub fn arc_count(&self) -> usize {
        self.prefixes.len()
    }

    /// `P(i)`, 1-based.
    pub fn prefix(&self, arc: usize) -> &[u8] {
        &self.prefixes[arc - 1]
    }

    /// Splits `w = P(i)·tail`.
    pub fn split(&self, w: &Word) -> (usize, Word) {
        let r = self.arc_count();
        let ones = (1..r).take_while(|&i| w.bit(i) == 1).count();
        let arc = ones + 1;
        (arc, w.drop_prefix(self.prefix(arc).len()))
    }
}

/// The decomposition of `{0,1}^ℕ` homeomorphic to a finite graph.
#[derive(Debug, Clone)]
pub struct GraphCodec {
    spec: GraphSpec,
    address: AddressCodec,
}

impl GraphCodec {
    pub fn new(spec: GraphSpec) -> Self {
        let address = AddressCodec::new(spec.arc_count());
        GraphCodec { spec, address }
    }

    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn address(&self) -> &AddressCodec {
        &self.address
    }

    /// `h_arc(t)`, with `t ∈ {0, 1}` collapsed onto the endpoint node.
    pub fn point_on_arc(&self, arc: usize, t: Rational) -> GraphPoint {
        let a = self.spec.arc(arc);
        if t.is_zero() {
            GraphPoint::Node(self.spec.node_id(a.tail).to_string())
        } else if t.is_one() {
            GraphPoint::Node(self.spec.node_id(a.head).to_string())
        } else {
            GraphPoint::Interior { arc, t }
        }
    }
}

impl Codec for GraphCodec {
    type Point = GraphPoint;

    fn fiber(&self, p: &GraphPoint) -> Fiber {
        let words: Vec<Word> = match p {
            GraphPoint::Interior { arc, t } => bits_of(t)
                .expect("interior parameter lies in (0,1)")
                .iter()
                .map(|e| e.prepend(self.address.prefix(*arc)))
                .collect(),
            GraphPoint::Node(id) => {
                let v = self
                    .spec
                    .node_index(id)
                    .unwrap_or_else(|| panic!("unknown node `{id}`"));
                let mut words = Vec::new();
                for (i, a) in self.spec.arcs().iter().enumerate() {
                    let prefix = self.address.prefix(i + 1);
                    if a.tail == v {
                        words.push(Word::constant(0).prepend(prefix));
                    }
                    if a.head == v {
                        words.push(Word::constant(1).prepend(prefix));
                    }
                }
                words
            }
        };
        Fiber::new(words).expect("every node is an arc endpoint")
    }

    fn decode(&self, w: &Word) -> GraphPoint {
        let (arc, tail) = self.address.split(w);
        self.point_on_arc(arc, word_value(&tail))
    }

    /// Nodes, the midpoint of arc r, and on arc 1 the dyadics `1 − 2^−k`
    /// (`k < r`): these are the only multi-member fibers whose `S`-images can
    /// straddle two arc cylinders.
    fn seam_candidates(&self) -> Vec<GraphPoint> {
        let r = self.spec.arc_count();
        let mut out: Vec<GraphPoint> = self
            .spec
            .nodes()
            .iter()
            .map(|id| GraphPoint::Node(id.clone()))
            .collect();
        for k in 1..r.max(2) {
            let t = Rational::one()
                .checked_sub(&Rational::dyadic_unit(k as u32))
                .expect("1 - 2^-k >= 0");
            out.push(GraphPoint::Interior { arc: 1, t });
        }
        out.push(GraphPoint::Interior {
            arc: r,
            t: Rational::half(),
        });
        out.sort();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_table() {
        let c = AddressCodec::new(3);
        assert_eq!(c.prefix(1), &[0]);
        assert_eq!(c.prefix(2), &[1, 0]);
        assert_eq!(c.prefix(3), &[1, 1]);
        assert!(AddressCodec::new(1).prefix(1).is_empty());
        let two = AddressCodec::new(2);
        assert_eq!(two.prefix(1), &[0]);
        assert_eq!(two.prefix(2), &[1]);
    }

    #[test]
    fn prefixes_form_a_complete_prefix_free_code() {
        for r in 1..=6 {
            let c = AddressCodec::new(r);
            // Kraft sum = 1 and no prefix of another.
            let kraft: f64 = (1..=r).map(|i| 0.5f64.powi(c.prefix(i).len() as i32)).sum();
            assert!((kraft - 1.0).abs() < 1e-12, "r = {r}");
            for i in 1..=r {
                for j in 1..=r {
                    if i != j {
                        assert!(!c.prefix(j).starts_with(c.prefix(i)));
                    }
                }
            }
        }
    }

    #[test]
    fn split_handles_all_ones() {
        let c = AddressCodec::new(3);
        let (arc, tail) = c.split(&Word::constant(1));
        assert_eq!(arc, 3);
        assert_eq!(tail, Word::constant(1));
    }
}
