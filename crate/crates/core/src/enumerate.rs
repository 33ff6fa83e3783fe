//! Enumeration of all graph classes of a given genus and bounded degree.
//!
//! Graphs are generated by (vertex count, edge count) profile. The degree
//! identity deg = 2n - |*| + [special distinct] pins the basepoint valence
//! range, and every non-basepoint vertex contributes at least 1 to the
//! degree, so V <= k + 1. Candidates are produced by assigning edge
//! multiplicities pair by pair with valence and degree pruning, filtered for
//! validity, and bucketed by canonical encoding.

use std::collections::BTreeMap;

use crate::canon::{canonicalize, wedge_summands, GraphClass, WedgeSummand};
use crate::graph::{GraphError, Mode, PointedGraph, Special};

/// One representative per isomorphism class of valid graphs with genus `n`
/// and degree at most `k`, sorted by encoding.
pub fn enumerate_graph_classes(
    n: usize,
    k: usize,
    mode: Mode,
) -> Result<Vec<GraphClass>, GraphError> {
    if n < 1 {
        return Err(GraphError::GenusTooSmall);
    }
    let mut classes: BTreeMap<String, GraphClass> = BTreeMap::new();
    let specials: &[Special] = match mode {
        Mode::Holomorph => &[Special::Basepoint, Special::Vertex(1)],
        Mode::Aut => &[Special::Absent],
    };
    for &special in specials {
        let min_v = if matches!(special, Special::Vertex(_)) { 2 } else { 1 };
        for vcount in min_v..=k + 1 {
            let ecount = vcount + n - 1;
            Generator::new(vcount, ecount, special, n, k).run(&mut |g| {
                if g.is_connected() && g.separating_edges().is_empty() {
                    let deg = g.degree();
                    if deg >= 0 && deg as usize <= k {
                        let class = canonicalize(&g).expect("generated graph is valid");
                        classes.entry(class.encoding().to_string()).or_insert(class);
                    }
                }
            });
        }
    }
    Ok(classes.into_values().collect())
}

/// The same graph with an extra loop at the basepoint: genus goes up by one,
/// degree is unchanged.
pub fn add_loop(class: &GraphClass) -> GraphClass {
    canonicalize(&class.graph().with_loop_at_basepoint())
        .expect("a loop at the basepoint preserves validity")
}

/// Class counts bucketed by exact degree 0..=k.
pub fn counts_by_degree(classes: &[GraphClass], k: usize) -> Vec<usize> {
    let mut counts = vec![0usize; k + 1];
    for c in classes {
        counts[c.degree()] += 1;
    }
    counts
}

struct Generator {
    vcount: usize,
    ecount: usize,
    special: Special,
    pairs: Vec<(usize, usize)>,
    val: Vec<usize>,
    edges: Vec<(usize, usize)>,
    cap: Vec<usize>,
    floor: Vec<usize>,
    max_degree: usize,
}

impl Generator {
    fn new(vcount: usize, ecount: usize, special: Special, n: usize, k: usize) -> Generator {
        let mut pairs = Vec::new();
        for u in 0..vcount {
            for w in u..vcount {
                pairs.push((u, w));
            }
        }
        let ind = matches!(special, Special::Vertex(_)) as usize;
        let base_cap = 2 * n + ind;
        let mut cap = vec![0usize; vcount];
        let mut floor = vec![0usize; vcount];
        for v in 0..vcount {
            if v == 0 {
                cap[v] = base_cap;
                floor[v] = if vcount > 1 { 1 } else { 0 }.max(base_cap.saturating_sub(k));
            } else if ind == 1 && v == 1 {
                cap[v] = k + 1;
                floor[v] = 2;
            } else {
                cap[v] = k + 2;
                floor[v] = 3;
            }
        }
        Generator {
            vcount,
            ecount,
            special,
            pairs,
            val: vec![0; vcount],
            edges: Vec::with_capacity(ecount),
            cap,
            floor,
            max_degree: k,
        }
    }

    fn run(&mut self, sink: &mut impl FnMut(PointedGraph)) {
        self.rec(0, self.ecount, sink);
    }

    fn ind_of(&self, v: usize) -> usize {
        (matches!(self.special, Special::Vertex(s) if s == v)) as usize
    }

    fn rec(&mut self, idx: usize, remaining: usize, sink: &mut impl FnMut(PointedGraph)) {
        // a vertex is finished once the cursor passes its last incident pair
        if idx > 0 {
            let (u, w) = self.pairs[idx - 1];
            if w == self.vcount - 1 && self.val[u] < self.floor[u] {
                return;
            }
        }
        // lower bound on the final degree, counting floors of unfinished vertices
        let mut deg_lb = 0usize;
        for v in 1..self.vcount {
            deg_lb += (self.val[v] + self.ind_of(v)).max(3) - 2;
        }
        if deg_lb > self.max_degree {
            return;
        }
        if idx == self.pairs.len() {
            if remaining == 0 {
                let g = PointedGraph::new(self.vcount, self.edges.clone(), 0, self.special)
                    .expect("generator emits well-formed graphs");
                sink(g);
            }
            return;
        }
        // remaining valence deficits must fit in the remaining edge ends
        let deficit: usize = (0..self.vcount)
            .filter(|&v| {
                // still unfinished: last incident pair (v, vcount-1) not yet passed
                self.pair_pos(v) >= idx
            })
            .map(|v| self.floor[v].saturating_sub(self.val[v]))
            .sum();
        if deficit > 2 * remaining {
            return;
        }

        let (u, w) = self.pairs[idx];
        let m_max = if u == w {
            remaining.min((self.cap[u] - self.val[u]) / 2)
        } else {
            remaining
                .min(self.cap[u] - self.val[u])
                .min(self.cap[w] - self.val[w])
        };
        for m in 0..=m_max {
            if m > 0 {
                self.edges.push((u, w));
                if u == w {
                    self.val[u] += 2;
                } else {
                    self.val[u] += 1;
                    self.val[w] += 1;
                }
            }
            self.rec(idx + 1, remaining - m, sink);
        }
        // undo all m_max pushes
        for _ in 0..m_max {
            self.edges.pop();
            if u == w {
                self.val[u] -= 2;
            } else {
                self.val[u] -= 1;
                self.val[w] -= 1;
            }
        }
    }

    fn pair_pos(&self, v: usize) -> usize {
        // index of pair (v, vcount-1) in the lexicographic pair list
        let mut pos = 0;
        for a in 0..v {
            pos += self.vcount - a;
        }
        pos + (self.vcount - 1 - v)
    }
}

/// Result of auditing the low-degree wedge structure over an enumeration.
#[derive(Debug, Default)]
pub struct WedgeAudit {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl WedgeAudit {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check the low-degree structure of every class: graphs of degree k and
/// genus n have a loop summand when k < n/2, a loop or theta summand when
/// k < 2n/3, and split as a nontrivial wedge when k < n - 1.
pub fn wedge_audit(classes: &[GraphClass]) -> WedgeAudit {
    let mut audit = WedgeAudit::default();
    for class in classes {
        audit.checked += 1;
        let n = class.genus();
        let k = class.degree();
        let summands = wedge_summands(class.graph()).expect("class representative is valid");
        let has_loop = summands.contains(&WedgeSummand::LoopAtBasepoint);
        let has_theta = summands.contains(&WedgeSummand::Theta2);
        if 2 * k < n && !has_loop {
            audit
                .failures
                .push(format!("{}: degree {k} < {n}/2 but no loop summand", class.encoding()));
        }
        if 3 * k < 2 * n && !(has_loop || has_theta) {
            audit.failures.push(format!(
                "{}: degree {k} < 2*{n}/3 but no loop or theta summand",
                class.encoding()
            ));
        }
        if k + 1 < n && summands.len() < 2 {
            audit.failures.push(format!(
                "{}: degree {k} < {n} - 1 but the graph does not split at the basepoint",
                class.encoding()
            ));
        }
    }
    audit
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_max_degree_two_holomorph() {
        let classes = enumerate_graph_classes(1, 2, Mode::Holomorph).unwrap();
        assert_eq!(classes.len(), 2);
        let degrees: Vec<usize> = classes.iter().map(|c| c.degree()).collect();
        assert!(degrees.contains(&0)); // rose with special vertex at the basepoint
        assert!(degrees.contains(&1)); // circle subdivided by the special vertex
    }

    #[test]
    fn degree_zero_forces_rose() {
        let classes = enumerate_graph_classes(1, 0, Mode::Holomorph).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].graph().vertex_count(), 1);

        let classes = enumerate_graph_classes(2, 0, Mode::Aut).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].graph().edge_count(), 2);
    }

    #[test]
    fn genus_zero_rejected() {
        assert!(enumerate_graph_classes(0, 2, Mode::Aut).is_err());
    }

    #[test]
    fn degree_identity_holds_on_enumerations() {
        for (n, k, mode) in [
            (1, 2, Mode::Holomorph),
            (2, 2, Mode::Holomorph),
            (2, 3, Mode::Holomorph),
            (2, 2, Mode::Aut),
            (3, 2, Mode::Aut),
        ] {
            for class in enumerate_graph_classes(n, k, mode).unwrap() {
                let g = class.graph();
                let ind = g.special_vertex().is_some() as i64;
                assert_eq!(
                    class.degree() as i64,
                    2 * class.genus() as i64 - g.valence(g.basepoint()) as i64 + ind,
                    "degree identity failed for {}",
                    class.encoding()
                );
            }
        }
    }

    #[test]
    fn wedge_audit_passes_on_samples() {
        for (n, k, mode) in [(3, 2, Mode::Holomorph), (4, 2, Mode::Aut), (3, 3, Mode::Holomorph)] {
            let classes = enumerate_graph_classes(n, k, mode).unwrap();
            let audit = wedge_audit(&classes);
            assert!(audit.passed(), "{:?}", audit.failures);
        }
    }

    #[test]
    fn add_loop_examples() {
        let classes = enumerate_graph_classes(1, 2, Mode::Holomorph).unwrap();
        for class in &classes {
            let lifted = add_loop(class);
            assert_eq!(lifted.genus(), class.genus() + 1);
            assert_eq!(lifted.degree(), class.degree());
        }
        // distinct classes stay distinct
        let lifted: std::collections::BTreeSet<String> =
            classes.iter().map(|c| add_loop(c).encoding().to_string()).collect();
        assert_eq!(lifted.len(), classes.len());
    }

    #[test]
    fn add_loop_is_a_bijection_in_the_stable_range() {
        // for n >= 2k every graph of genus n+1 and degree <= k has a loop at
        // the basepoint, so adding one is onto
        for (n, k, mode) in [(4, 2, Mode::Holomorph), (4, 2, Mode::Aut)] {
            let source = enumerate_graph_classes(n, k, mode).unwrap();
            let target = enumerate_graph_classes(n + 1, k, mode).unwrap();
            let image: std::collections::BTreeSet<String> =
                source.iter().map(|c| add_loop(c).encoding().to_string()).collect();
            let expected: std::collections::BTreeSet<String> =
                target.iter().map(|c| c.encoding().to_string()).collect();
            assert_eq!(image, expected, "n={n} k={k} {mode:?}");
        }
    }
}
