//! Pointed multigraphs: finite connected multigraphs with a basepoint and,
//! in holomorph mode, a distinguished special vertex that may coincide with
//! the basepoint.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Placement of the special vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Special {
    /// The special vertex coincides with the basepoint.
    Basepoint,
    /// The special vertex is a vertex distinct from the basepoint.
    Vertex(usize),
    /// No special vertex (plain automorphism-group mode).
    Absent,
}

/// Which family of quotient complexes is being built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Holomorph,
    Aut,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Holomorph => "holomorph",
            Mode::Aut => "aut",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "holomorph" => Ok(Mode::Holomorph),
            "aut" => Ok(Mode::Aut),
            other => Err(format!("unknown mode `{other}` (expected holomorph|aut)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("edge endpoint {0} out of range (vertex count {1})")]
    EndpointOutOfRange(usize, usize),
    #[error("basepoint {0} out of range (vertex count {1})")]
    BasepointOutOfRange(usize, usize),
    #[error("special vertex {0} out of range (vertex count {1})")]
    SpecialOutOfRange(usize, usize),
    #[error("special vertex equals the basepoint; use Special::Basepoint")]
    SpecialIsBasepoint,
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("genus must be at least 1")]
    GenusTooSmall,
    #[error("unknown special marker `{0}` (expected a vertex index, \"basepoint\", or null)")]
    BadSpecialMarker(String),
    #[error("invalid graph: {0:?}")]
    Invalid(Vec<Violation>),
}

/// A single validity violation, as reported by [`PointedGraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Disconnected,
    /// Removing this edge disconnects the graph.
    SeparatingEdge { edge: usize },
    ValenceTooLow { vertex: usize, valence: usize, floor: usize },
    GenusZero,
}

/// A finite multigraph with basepoint and optional special vertex.
///
/// Edges are unordered pairs; loops and parallel edges are allowed. The edge
/// list is kept normalized (each pair sorted, list sorted), so structural
/// equality is labeled-graph equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    basepoint: usize,
    special: Special,
}

impl PointedGraph {
    pub fn new(
        vertices: usize,
        edges: Vec<(usize, usize)>,
        basepoint: usize,
        special: Special,
    ) -> Result<Self, GraphError> {
        if vertices == 0 {
            return Err(GraphError::Empty);
        }
        if basepoint >= vertices {
            return Err(GraphError::BasepointOutOfRange(basepoint, vertices));
        }
        match special {
            Special::Vertex(s) if s >= vertices => {
                return Err(GraphError::SpecialOutOfRange(s, vertices));
            }
            Special::Vertex(s) if s == basepoint => return Err(GraphError::SpecialIsBasepoint),
            _ => {}
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= vertices {
                return Err(GraphError::EndpointOutOfRange(u, vertices));
            }
            if v >= vertices {
                return Err(GraphError::EndpointOutOfRange(v, vertices));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        Ok(PointedGraph { vertices, edges: norm, basepoint, special })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn special(&self) -> Special {
        self.special
    }

    pub fn mode(&self) -> Mode {
        match self.special {
            Special::Absent => Mode::Aut,
            _ => Mode::Holomorph,
        }
    }

    /// The special vertex as an index, if it is a vertex distinct from the basepoint.
    pub fn special_vertex(&self) -> Option<usize> {
        match self.special {
            Special::Vertex(s) => Some(s),
            _ => None,
        }
    }

    /// Number of edge ends at `v`; a loop contributes 2.
    pub fn valence(&self, v: usize) -> usize {
        assert!(v < self.vertices, "vertex index out of range");
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Valence, augmented by one at the special vertex.
    ///
    /// When the special vertex coincides with the basepoint the augmented
    /// value is reported there as well; degree sums skip the basepoint, so
    /// that value only participates in identity checks.
    pub fn augmented_valence(&self, v: usize) -> usize {
        let val = self.valence(v);
        match self.special {
            Special::Vertex(s) if s == v => val + 1,
            Special::Basepoint if v == self.basepoint => val + 1,
            _ => val,
        }
    }

    /// First Betti number E - V + 1. Requires a connected graph.
    pub fn genus(&self) -> Result<usize, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(self.edges.len() + 1 - self.vertices)
    }

    /// Sum of (augmented valence - 2) over all non-basepoint vertices.
    ///
    /// Returned as a signed integer; it is nonnegative exactly on graphs
    /// satisfying the valence floors.
    pub fn degree(&self) -> i64 {
        (0..self.vertices)
            .filter(|&v| v != self.basepoint)
            .map(|v| self.augmented_valence(v) as i64 - 2)
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![self.basepoint];
        seen[self.basepoint] = true;
        let adj = self.adjacency();
        while let Some(u) = stack.pop() {
            for &(w, _) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for (eid, &(u, v)) in self.edges.iter().enumerate() {
            if u == v {
                continue;
            }
            adj[u].push((v, eid));
            adj[v].push((u, eid));
        }
        adj
    }

    /// Indices of edges whose removal disconnects the graph.
    pub fn separating_edges(&self) -> Vec<usize> {
        let n = self.vertices;
        let adj = self.adjacency();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut bridges = Vec::new();
        let mut timer = 0usize;

        // Iterative DFS with explicit stack; entry edge id breaks parallel-edge ties.
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while !stack.is_empty() {
                let top = stack.len() - 1;
                let (u, pedge, it) = stack[top];
                if it < adj[u].len() {
                    stack[top].2 += 1;
                    let (w, eid) = adj[u][it];
                    if eid == pedge {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, eid, 0));
                    } else {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[u]);
                        if low[u] > disc[p] {
                            bridges.push(pedge);
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }

    /// Check connectivity, valence floors, separating edges, and genus.
    /// Returns every violation found; an empty list means the graph is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let connected = self.is_connected();
        if !connected {
            out.push(Violation::Disconnected);
        }
        for v in 0..self.vertices {
            let floor = if v == self.basepoint {
                0
            } else if self.special_vertex() == Some(v) {
                2
            } else {
                3
            };
            let val = self.valence(v);
            if val < floor {
                out.push(Violation::ValenceTooLow { vertex: v, valence: val, floor });
            }
        }
        for edge in self.separating_edges() {
            out.push(Violation::SeparatingEdge { edge });
        }
        if connected && self.edges.len() + 1 == self.vertices {
            out.push(Violation::GenusZero);
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Same graph with one extra loop at the basepoint.
    pub fn with_loop_at_basepoint(&self) -> PointedGraph {
        let mut edges = self.edges.clone();
        edges.push((self.basepoint, self.basepoint));
        PointedGraph::new(self.vertices, edges, self.basepoint, self.special)
            .expect("adding a loop preserves well-formedness")
    }

    /// Relabel vertices by `label` (old index -> new index). The basepoint and
    /// special vertex move along.
    pub fn relabeled(&self, label: &[usize]) -> PointedGraph {
        assert_eq!(label.len(), self.vertices);
        let edges = self.edges.iter().map(|&(u, v)| (label[u], label[v])).collect();
        let special = match self.special {
            Special::Vertex(s) => Special::Vertex(label[s]),
            other => other,
        };
        PointedGraph::new(self.vertices, edges, label[self.basepoint], special)
            .expect("relabeling preserves well-formedness")
    }
}

/// JSON form of a pointed graph:
/// `{"vertices": V, "basepoint": i, "special": j | "basepoint" | null, "edges": [[u,v], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub basepoint: usize,
    pub special: Option<SpecialJson>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecialJson {
    Index(usize),
    Tag(String),
}

impl From<&PointedGraph> for GraphJson {
    fn from(g: &PointedGraph) -> Self {
        let special = match g.special() {
            Special::Basepoint => Some(SpecialJson::Tag("basepoint".into())),
            Special::Vertex(s) => Some(SpecialJson::Index(s)),
            Special::Absent => None,
        };
        GraphJson {
            vertices: g.vertex_count(),
            basepoint: g.basepoint(),
            special,
            edges: g.edges().to_vec(),
        }
    }
}

impl TryFrom<&GraphJson> for PointedGraph {
    type Error = GraphError;
    fn try_from(j: &GraphJson) -> Result<Self, GraphError> {
        let special = match &j.special {
            None => Special::Absent,
            Some(SpecialJson::Index(s)) if *s == j.basepoint => Special::Basepoint,
            Some(SpecialJson::Index(s)) => Special::Vertex(*s),
            Some(SpecialJson::Tag(t)) if t == "basepoint" => Special::Basepoint,
            Some(SpecialJson::Tag(t)) => return Err(GraphError::BadSpecialMarker(t.clone())),
        };
        PointedGraph::new(j.vertices, j.edges.clone(), j.basepoint, special)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn rose(n: usize) -> PointedGraph {
        PointedGraph::new(1, vec![(0, 0); n], 0, Special::Basepoint).unwrap()
    }

    /// The five-edge graph on vertices *, o, x, y used throughout the tests:
    /// edges o-x, o-y, x-y, *-x, *-y.
    pub(crate) fn gamma_prime() -> PointedGraph {
        PointedGraph::new(
            4,
            vec![(1, 2), (1, 3), (2, 3), (0, 2), (0, 3)],
            0,
            Special::Vertex(1),
        )
        .unwrap()
    }

    #[test]
    fn genus_examples() {
        assert_eq!(rose(3).genus().unwrap(), 3);
        assert_eq!(gamma_prime().genus().unwrap(), 2);
        let single = PointedGraph::new(1, vec![], 0, Special::Basepoint).unwrap();
        assert_eq!(single.genus().unwrap(), 0);
    }

    #[test]
    fn genus_rejects_disconnected() {
        let g = PointedGraph::new(2, vec![(0, 0), (1, 1)], 0, Special::Basepoint).unwrap();
        assert!(matches!(g.genus(), Err(GraphError::Disconnected)));
    }

    #[test]
    fn augmented_valence_examples() {
        let g = gamma_prime();
        assert_eq!(g.augmented_valence(2), 3); // x: edges a, c, d
        assert_eq!(g.augmented_valence(1), 3); // special vertex: 2 + 1
        assert_eq!(rose(1).valence(0), 2); // loop counts twice
        assert_eq!(rose(1).augmented_valence(0), 3);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(rose(4).degree(), 0);
        assert_eq!(gamma_prime().degree(), 3);
        let mut with_loops = gamma_prime();
        for _ in 0..3 {
            with_loops = with_loops.with_loop_at_basepoint();
        }
        assert_eq!(with_loops.degree(), 3);
        // single loop subdivided by the special vertex: two parallel edges
        let circle = PointedGraph::new(2, vec![(0, 1), (0, 1)], 0, Special::Vertex(1)).unwrap();
        assert_eq!(circle.degree(), 1);
    }

    #[test]
    fn validate_examples() {
        assert!(gamma_prime().is_valid());

        // valence-1 vertex hangs off a loop: its edge separates
        let g = PointedGraph::new(2, vec![(0, 0), (0, 1)], 0, Special::Basepoint).unwrap();
        let violations = g.validate();
        assert!(violations.iter().any(|v| matches!(v, Violation::SeparatingEdge { .. })));
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::ValenceTooLow { vertex: 1, .. })));

        let disconnected =
            PointedGraph::new(2, vec![(0, 0), (1, 1)], 0, Special::Basepoint).unwrap();
        assert!(disconnected.validate().contains(&Violation::Disconnected));

        let tree = PointedGraph::new(2, vec![(0, 1), (0, 1)], 0, Special::Absent).unwrap();
        assert!(!tree.validate().contains(&Violation::GenusZero));
        let single = PointedGraph::new(1, vec![], 0, Special::Absent).unwrap();
        assert!(single.validate().contains(&Violation::GenusZero));
    }

    #[test]
    fn degree_identity_on_gamma_prime() {
        // degree = 2n - |*| + [special distinct]
        let g = gamma_prime();
        let n = g.genus().unwrap() as i64;
        assert_eq!(g.degree(), 2 * n - g.valence(g.basepoint()) as i64 + 1);
    }

    #[test]
    fn separating_edges_on_theta() {
        let theta = PointedGraph::new(2, vec![(0, 1); 3], 0, Special::Vertex(1)).unwrap();
        assert!(theta.separating_edges().is_empty());
    }

    #[test]
    fn graph_json_round_trip() {
        let g = gamma_prime();
        let j = GraphJson::from(&g);
        let back = PointedGraph::try_from(&j).unwrap();
        assert_eq!(g, back);

        let parsed: GraphJson = serde_json::from_str(
            r#"{"vertices":2,"basepoint":0,"special":"basepoint","edges":[[0,1],[1,0]]}"#,
        )
        .unwrap();
        let g2 = PointedGraph::try_from(&parsed).unwrap();
        assert_eq!(g2.special(), Special::Basepoint);
        assert_eq!(g2.edges(), &[(0, 1), (0, 1)]);

        let parsed: GraphJson = serde_json::from_str(
            r#"{"vertices":1,"basepoint":0,"special":null,"edges":[[0,0]]}"#,
        )
        .unwrap();
        assert_eq!(PointedGraph::try_from(&parsed).unwrap().special(), Special::Absent);
    }
}
