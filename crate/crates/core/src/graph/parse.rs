use std::collections::HashMap;
use std::str::FromStr;

/// One arc `E_i`, parametrized from `tail = h_i(0)` to `head = h_i(1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSpec {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

impl ArcSpec {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// A finite graph as a union of arcs. Arcs are indexed `1..=r` in file order,
/// which fixes their symbolic addresses. Connectedness is not required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    nodes: Vec<String>,
    arcs: Vec<ArcSpec>,
    node_index: HashMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate node id `{id}`")]
    DuplicateNode { line: usize, id: String },
    #[error("line {line}: duplicate arc id `{id}`")]
    DuplicateArc { line: usize, id: String },
    #[error("line {line}: arc `{arc}` names undeclared node `{node}`")]
    UnknownNode {
        line: usize,
        arc: String,
        node: String,
    },
    #[error("graph has no arcs")]
    Empty,
    #[error("node `{0}` is not an endpoint of any arc")]
    IsolatedNode(String),
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Parses the line-oriented graph DSL:
///
/// ```text
/// # triangle
/// node a
/// node b
/// arc E1 a b
/// ```
pub fn parse_graph(text: &str) -> Result<GraphSpec, GraphParseError> {
    let mut nodes = Vec::new();
    let mut node_index = HashMap::new();
    let mut arcs: Vec<ArcSpec> = Vec::new();
    let mut arc_ids = HashMap::new();

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let syntax = |message: String| GraphParseError::Syntax { line, message };
        for f in &fields[1..] {
            if !valid_id(f) {
                return Err(syntax(format!("invalid identifier `{f}`")));
            }
        }
        match fields[0] {
            "node" => {
                let [_, id] = fields[..] else {
                    return Err(syntax("expected `node <id>`".into()));
                };
                if node_index.insert(id.to_string(), nodes.len()).is_some() {
                    return Err(GraphParseError::DuplicateNode {
                        line,
                        id: id.into(),
                    });
                }
                nodes.push(id.to_string());
            }
            "arc" => {
                let [_, id, tail, head] = fields[..] else {
                    return Err(syntax("expected `arc <id> <tail> <head>`".into()));
                };
                if arc_ids.insert(id.to_string(), arcs.len()).is_some() {
                    return Err(GraphParseError::DuplicateArc {
                        line,
                        id: id.into(),
                    });
                }
                let lookup = |node: &str| {
                    node_index
                        .get(node)
                        .copied()
                        .ok_or_else(|| GraphParseError::UnknownNode {
                            line,
                            arc: id.into(),
                            node: node.into(),
                        })
                };
                arcs.push(ArcSpec {
                    id: id.into(),
                    tail: lookup(tail)?,
                    head: lookup(head)?,
                });
            }
            other => return Err(syntax(format!("unknown directive `{other}`"))),
        }
    }

    if arcs.is_empty() {
        return Err(GraphParseError::Empty);
    }
    // Every point of the graph must lie on some arc to have an address.
    let mut touched = vec![false; nodes.len()];
    for a in &arcs {
        touched[a.tail] = true;
        touched[a.head] = true;
    }
    if let Some(i) = touched.iter().position(|t| !t) {
        return Err(GraphParseError::IsolatedNode(nodes[i].clone()));
    }

    Ok(GraphSpec {
        nodes,
        arcs,
        node_index,
    })
}

impl FromStr for GraphSpec {
    type Err = GraphParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_graph(s)
    }
}

impl GraphSpec {
    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[ArcSpec] {
        &self.arcs
    }

    /// `r`.
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arc by 1-based index.
    pub fn arc(&self, index: usize) -> &ArcSpec {
        &self.arcs[index - 1]
    }

    pub fn node_id(&self, index: usize) -> &str {
        &self.nodes[index]
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.node_index.get(id).copied()
    }

    /// 1-based index of the arc with this id, or of a literal index.
    pub fn resolve_arc(&self, key: &str) -> Option<usize> {
        if let Some(i) = self.arcs.iter().position(|a| a.id == key) {
            return Some(i + 1);
        }
        key.parse::<usize>()
            .ok()
            .filter(|&i| (1..=self.arcs.len()).contains(&i))
    }

    /// Number of connected components (arcs join their endpoints).
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for a in &self.arcs {
            let (x, y) = (find(&mut parent, a.tail), find(&mut parent, a.head));
            parent[x] = y;
        }
        (0..self.nodes.len())
            .filter(|&i| find(&mut parent, i) == i)
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arc() {
        let g = parse_graph("node a\nnode b\narc E1 a b").unwrap();
        assert_eq!(g.arc_count(), 1);
        assert!(!g.arc(1).is_loop());
    }

    #[test]
    fn triangle_in_file_order() {
        let g = parse_graph(
            "# K3\nnode a\nnode b\nnode c\narc E1 a b\narc E2 b c  # second\narc E3 c a\n",
        )
        .unwrap();
        assert_eq!(g.arc_count(), 3);
        assert_eq!(g.arc(2).id, "E2");
        assert_eq!(g.node_id(g.arc(3).head), "a");
        assert_eq!(g.resolve_arc("E3"), Some(3));
        assert_eq!(g.resolve_arc("2"), Some(2));
        assert_eq!(g.resolve_arc("4"), None);
        assert_eq!(g.component_count(), 1);
    }

    #[test]
    fn loops_and_disconnected_graphs_are_fine() {
        let g = parse_graph("node a\narc E1 a a").unwrap();
        assert!(g.arc(1).is_loop());
        let g = parse_graph("node a\nnode b\nnode c\nnode d\narc E1 a b\narc E2 c d").unwrap();
        assert_eq!(g.component_count(), 2);
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_graph("node a\nnode a"),
            Err(GraphParseError::DuplicateNode {
                line: 2,
                id: "a".into()
            })
        );
        assert!(matches!(
            parse_graph("node a\narc E a a\narc E a a"),
            Err(GraphParseError::DuplicateArc { line: 3, .. })
        ));
        assert!(matches!(
            parse_graph("node a\narc E1 a b"),
            Err(GraphParseError::UnknownNode { line: 2, .. })
        ));
        assert_eq!(
            parse_graph("# nothing\n\nnode a"),
            Err(GraphParseError::Empty)
        );
        assert_eq!(parse_graph(""), Err(GraphParseError::Empty));
        assert!(matches!(
            parse_graph("node a\nedge x a a"),
            Err(GraphParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("node a-b"),
            Err(GraphParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("node a\narc E1 a"),
            Err(GraphParseError::Syntax { line: 2, .. })
        ));
        assert_eq!(
            parse_graph("node a\nnode b\narc E1 a a"),
            Err(GraphParseError::IsolatedNode("b".into()))
        );
    }
}
