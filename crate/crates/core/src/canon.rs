//! Canonical forms, isomorphism classes, automorphisms, and wedge
//! decompositions of pointed graphs.
//!
//! The canonical form is the lexicographically minimal edge list over all
//! vertex labelings that fix the basepoint (label 0) and the special vertex
//! (label 1 when distinct). Graphs at this scale are small, so a direct
//! backtracking search over labelings is used.

use crate::graph::{GraphError, Mode, PointedGraph, Special};

/// An isomorphism class of pointed graphs.
///
/// Two graphs get the same encoding exactly when an isomorphism between them
/// fixes the basepoint and the special vertex.
#[derive(Clone, Debug)]
pub struct GraphClass {
    encoding: String,
    graph: PointedGraph,
    genus: usize,
    degree: usize,
    aut_count: u64,
}

impl PartialEq for GraphClass {
    fn eq(&self, other: &Self) -> bool {
        self.encoding == other.encoding
    }
}
impl Eq for GraphClass {}
impl PartialOrd for GraphClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for GraphClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.encoding.cmp(&other.encoding)
    }
}

impl GraphClass {
    pub fn encoding(&self) -> &str {
        &self.encoding
    }

    /// Canonical representative: basepoint is vertex 0, the special vertex
    /// (when distinct) is vertex 1, and the edge list is minimal.
    pub fn graph(&self) -> &PointedGraph {
        &self.graph
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Order of the automorphism group fixing basepoint and special vertex,
    /// counting edge permutations within parallel classes and loop flips.
    pub fn aut_count(&self) -> u64 {
        self.aut_count
    }

    pub fn mode(&self) -> Mode {
        self.graph.mode()
    }
}

/// Compute the canonical class of a valid pointed graph.
pub fn canonicalize(g: &PointedGraph) -> Result<GraphClass, GraphError> {
    Ok(canonicalize_with_labeling(g)?.0)
}

/// Canonicalize, also returning the labeling (old vertex -> canonical label)
/// that realizes the canonical representative.
pub fn canonicalize_with_labeling(
    g: &PointedGraph,
) -> Result<(GraphClass, Vec<usize>), GraphError> {
    let violations = g.validate();
    if !violations.is_empty() {
        return Err(GraphError::Invalid(violations));
    }
    let (canon_edges, labelings) = minimal_labelings(g);
    let labeling = labelings[0].clone();
    let rep = g.relabeled(&labeling);
    debug_assert_eq!(rep.edges(), canon_edges.as_slice());
    let encoding = encoding_string(&rep);
    let genus = rep.genus().expect("validated graph is connected");
    let degree = rep.degree();
    debug_assert!(degree >= 0);
    let aut_count = labelings.len() as u64 * edge_symmetry_count(&rep);
    Ok((
        GraphClass {
            encoding,
            graph: rep,
            genus,
            degree: degree as usize,
            aut_count,
        },
        labeling,
    ))
}

fn encoding_string(rep: &PointedGraph) -> String {
    let kind = match rep.special() {
        Special::Basepoint => 'b',
        Special::Vertex(_) => 's',
        Special::Absent => 'a',
    };
    let mut s = format!("{kind}{}:", rep.vertex_count());
    for (i, (u, v)) in rep.edges().iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&format!("{u}-{v}"));
    }
    s
}

/// Number of edge-level symmetries over a fixed vertex map: permutations
/// within each parallel class times orientation flips of loops.
fn edge_symmetry_count(g: &PointedGraph) -> u64 {
    let mut count = 1u64;
    let mut i = 0;
    let edges = g.edges();
    while i < edges.len() {
        let mut j = i;
        while j < edges.len() && edges[j] == edges[i] {
            j += 1;
        }
        let mult = (j - i) as u64;
        count *= factorial(mult);
        if edges[i].0 == edges[i].1 {
            count <<= mult; // each loop copy can flip
        }
        i = j;
    }
    count
}

fn factorial(n: u64) -> u64 {
    (1..=n).product::<u64>().max(1)
}

/// All labelings achieving the minimal edge list, plus that edge list.
/// Labelings map original vertices to canonical labels; the basepoint gets 0
/// and a distinct special vertex gets 1.
fn minimal_labelings(g: &PointedGraph) -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    label[g.basepoint()] = 0;
    let mut next = 1;
    if let Some(s) = g.special_vertex() {
        label[s] = 1;
        next = 2;
    }
    let free: Vec<usize> = (0..n).filter(|&v| label[v] == usize::MAX).collect();

    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut ties: Vec<Vec<usize>> = Vec::new();
    let mut assigned: Vec<usize> = Vec::new();

    fn rec(
        g: &PointedGraph,
        free: &[usize],
        label: &mut Vec<usize>,
        assigned: &mut Vec<usize>,
        next: usize,
        best: &mut Option<Vec<(usize, usize)>>,
        ties: &mut Vec<Vec<usize>>,
    ) {
        if assigned.len() == free.len() {
            let mut coded: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (label[u], label[v]);
                    (a.min(b), a.max(b))
                })
                .collect();
            coded.sort_unstable();
            match best {
                Some(b) => match coded.cmp(b) {
                    std::cmp::Ordering::Less => {
                        *best = Some(coded);
                        ties.clear();
                        ties.push(label.clone());
                    }
                    std::cmp::Ordering::Equal => ties.push(label.clone()),
                    std::cmp::Ordering::Greater => {}
                },
                None => {
                    *best = Some(coded);
                    ties.push(label.clone());
                }
            }
            return;
        }
        for &v in free {
            if label[v] != usize::MAX {
                continue;
            }
            label[v] = next;
            assigned.push(v);
            rec(g, free, label, assigned, next + 1, best, ties);
            assigned.pop();
            label[v] = usize::MAX;
        }
    }

    rec(g, &free, &mut label, &mut assigned, next, &mut best, &mut ties);
    (best.expect("at least one labeling exists"), ties)
}

/// Vertex maps of all automorphisms of `g` fixing basepoint and special
/// vertex. The identity comes first for a canonical representative.
pub fn vertex_automorphisms(g: &PointedGraph) -> Vec<Vec<usize>> {
    let (_, ties) = minimal_labelings(g);
    let pi0 = &ties[0];
    let mut inv0 = vec![0usize; pi0.len()];
    for (v, &l) in pi0.iter().enumerate() {
        inv0[l] = v;
    }
    let mut autos: Vec<Vec<usize>> = ties
        .iter()
        .map(|rho| (0..g.vertex_count()).map(|v| inv0[rho[v]]).collect())
        .collect();
    autos.sort_unstable();
    autos
}

/// A graph automorphism: a vertex map together with a compatible bijection
/// of edge indices and an orientation flip bit for each loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub loop_flip: Vec<bool>,
}

impl Automorphism {
    /// `other` after `self`.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        let vertex_map = self.vertex_map.iter().map(|&v| other.vertex_map[v]).collect();
        let edge_map: Vec<usize> = self.edge_map.iter().map(|&e| other.edge_map[e]).collect();
        let loop_flip = self
            .loop_flip
            .iter()
            .enumerate()
            .map(|(e, &f)| f ^ other.loop_flip[self.edge_map[e]])
            .collect();
        Automorphism { vertex_map, edge_map, loop_flip }
    }
}

/// Every automorphism of `g` fixing basepoint and special vertex, including
/// edge permutations within parallel classes and loop flips. Intended for
/// desk-scale graphs; the list is closed under composition.
pub fn automorphisms(g: &PointedGraph) -> Result<Vec<Automorphism>, GraphError> {
    let violations = g.validate();
    if !violations.is_empty() {
        return Err(GraphError::Invalid(violations));
    }
    let vmaps = vertex_automorphisms(g);
    let edges = g.edges();

    // group edge ids by endpoint pair
    let mut groups: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (eid, &(u, v)) in edges.iter().enumerate() {
        match groups.last_mut() {
            Some((a, b, ids)) if (*a, *b) == (u, v) => ids.push(eid),
            _ => groups.push((u, v, vec![eid])),
        }
    }
    let find_group = |u: usize, v: usize| -> usize {
        groups
            .iter()
            .position(|&(a, b, _)| (a, b) == (u.min(v), u.max(v)))
            .expect("image pair exists for an automorphism")
    };
    let loop_ids: Vec<usize> =
        edges.iter().enumerate().filter(|(_, &(u, v))| u == v).map(|(e, _)| e).collect();

    let mut out = Vec::new();
    for vm in &vmaps {
        // per-group target and all bijections group -> target
        let mut edge_maps: Vec<Vec<usize>> = vec![vec![usize::MAX; edges.len()]];
        for (u, v, ids) in &groups {
            let target = &groups[find_group(vm[*u], vm[*v])].2;
            let mut extended = Vec::new();
            for em in &edge_maps {
                for perm in permutations(target) {
                    let mut em2 = em.clone();
                    for (i, &src) in ids.iter().enumerate() {
                        em2[src] = perm[i];
                    }
                    extended.push(em2);
                }
            }
            edge_maps = extended;
        }
        for em in edge_maps {
            // every subset of loops may flip
            for bits in 0..(1u32 << loop_ids.len()) {
                let mut flip = vec![false; edges.len()];
                for (i, &e) in loop_ids.iter().enumerate() {
                    flip[e] = bits >> i & 1 == 1;
                }
                out.push(Automorphism {
                    vertex_map: vm.clone(),
                    edge_map: em.clone(),
                    loop_flip: flip,
                });
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest: Vec<usize> = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// A wedge summand attached at the basepoint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum WedgeSummand {
    /// A single loop at the basepoint.
    LoopAtBasepoint,
    /// Three parallel edges to a non-special trivalent vertex.
    Theta2,
    /// Anything else, identified by its canonical encoding.
    Other(String),
}

/// Decompose a valid graph at the basepoint into wedge summands.
pub fn wedge_summands(g: &PointedGraph) -> Result<Vec<WedgeSummand>, GraphError> {
    let violations = g.validate();
    if !violations.is_empty() {
        return Err(GraphError::Invalid(violations));
    }
    let base = g.basepoint();
    let n = g.vertex_count();

    // components of the graph minus the basepoint
    let mut comp = vec![usize::MAX; n];
    let mut ncomp = 0;
    for start in 0..n {
        if start == base || comp[start] != usize::MAX {
            continue;
        }
        let id = ncomp;
        ncomp += 1;
        let mut stack = vec![start];
        comp[start] = id;
        while let Some(u) = stack.pop() {
            for &(a, b) in g.edges() {
                if a == base || b == base {
                    continue;
                }
                for (x, y) in [(a, b), (b, a)] {
                    if x == u && comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
        }
    }

    let mut out = Vec::new();
    for &(u, v) in g.edges() {
        if u == base && v == base {
            out.push(WedgeSummand::LoopAtBasepoint);
        }
    }
    for id in 0..ncomp {
        let verts: Vec<usize> = (0..n).filter(|&v| comp[v] == id).collect();
        let edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| {
                (u != base && comp[u] == id) || (v != base && comp[v] == id)
            })
            .collect();
        let is_theta2 = verts.len() == 1
            && edges.len() == 3
            && g.special_vertex() != Some(verts[0])
            && edges.iter().all(|&(u, v)| (u == base) ^ (v == base));
        if is_theta2 {
            out.push(WedgeSummand::Theta2);
            continue;
        }
        // rebuild the summand as its own pointed graph
        let mut relabel = vec![usize::MAX; n];
        relabel[base] = 0;
        for (i, &v) in verts.iter().enumerate() {
            relabel[v] = i + 1;
        }
        let sub_edges: Vec<(usize, usize)> =
            edges.iter().map(|&(u, v)| (relabel[u], relabel[v])).collect();
        let special = match g.special() {
            Special::Basepoint => Special::Basepoint,
            Special::Vertex(s) if comp[s] == id => Special::Vertex(relabel[s]),
            Special::Vertex(_) => Special::Absent,
            Special::Absent => Special::Absent,
        };
        let sub = PointedGraph::new(verts.len() + 1, sub_edges, 0, special)
            .expect("summand is well-formed");
        let class = canonicalize(&sub)?;
        out.push(WedgeSummand::Other(class.encoding().to_string()));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rose(n: usize) -> PointedGraph {
        PointedGraph::new(1, vec![(0, 0); n], 0, Special::Basepoint).unwrap()
    }

    fn gamma_prime() -> PointedGraph {
        PointedGraph::new(
            4,
            vec![(1, 2), (1, 3), (2, 3), (0, 2), (0, 3)],
            0,
            Special::Vertex(1),
        )
        .unwrap()
    }

    #[test]
    fn relabeled_gamma_prime_has_same_encoding() {
        let g = gamma_prime();
        // swap x and y (vertices 2 and 3)
        let swapped = g.relabeled(&[0, 1, 3, 2]);
        assert_eq!(
            canonicalize(&g).unwrap().encoding(),
            canonicalize(&swapped).unwrap().encoding()
        );
    }

    #[test]
    fn rose_edge_order_is_immaterial() {
        let a = PointedGraph::new(1, vec![(0, 0), (0, 0)], 0, Special::Basepoint).unwrap();
        let b = PointedGraph::new(1, vec![(0, 0), (0, 0)], 0, Special::Basepoint).unwrap();
        assert_eq!(canonicalize(&a).unwrap().encoding(), canonicalize(&b).unwrap().encoding());
    }

    #[test]
    fn canonicalize_rejects_invalid() {
        let g = PointedGraph::new(2, vec![(0, 0), (0, 1)], 0, Special::Basepoint).unwrap();
        assert!(matches!(canonicalize(&g), Err(GraphError::Invalid(_))));
    }

    #[test]
    fn gamma_prime_automorphisms() {
        let autos = automorphisms(&gamma_prime()).unwrap();
        assert_eq!(autos.len(), 2);
        let cls = canonicalize(&gamma_prime()).unwrap();
        assert_eq!(cls.aut_count(), 2);
    }

    #[test]
    fn rose2_automorphisms() {
        let autos = automorphisms(&rose(2)).unwrap();
        assert_eq!(autos.len(), 8); // 2! loop swaps x 2^2 flips
        assert_eq!(canonicalize(&rose(2)).unwrap().aut_count(), 8);
    }

    #[test]
    fn theta2_automorphisms() {
        let theta = PointedGraph::new(2, vec![(0, 1); 3], 0, Special::Vertex(1)).unwrap();
        let autos = automorphisms(&theta).unwrap();
        assert_eq!(autos.len(), 6); // all permutations of the three edges
        assert_eq!(canonicalize(&theta).unwrap().aut_count(), 6);
    }

    #[test]
    fn automorphisms_closed_under_composition() {
        for g in [gamma_prime(), rose(2)] {
            let autos = automorphisms(&g).unwrap();
            let set: std::collections::HashSet<_> = autos.iter().cloned().collect();
            for a in &autos {
                for b in &autos {
                    assert!(set.contains(&a.then(b)));
                }
            }
            // identity present
            let id = Automorphism {
                vertex_map: (0..g.vertex_count()).collect(),
                edge_map: (0..g.edge_count()).collect(),
                loop_flip: vec![false; g.edge_count()],
            };
            assert!(set.contains(&id));
        }
    }

    #[test]
    fn wedge_summand_examples() {
        assert_eq!(
            wedge_summands(&rose(3)).unwrap(),
            vec![
                WedgeSummand::LoopAtBasepoint,
                WedgeSummand::LoopAtBasepoint,
                WedgeSummand::LoopAtBasepoint
            ]
        );

        let gp_loop = gamma_prime().with_loop_at_basepoint();
        let summands = wedge_summands(&gp_loop).unwrap();
        assert_eq!(summands.len(), 2);
        assert_eq!(summands[0], WedgeSummand::LoopAtBasepoint);
        assert!(matches!(summands[1], WedgeSummand::Other(_)));

        // one loop plus a theta piece, special vertex at the basepoint
        let wedge = PointedGraph::new(
            2,
            vec![(0, 0), (0, 1), (0, 1), (0, 1)],
            0,
            Special::Basepoint,
        )
        .unwrap();
        assert_eq!(
            wedge_summands(&wedge).unwrap(),
            vec![WedgeSummand::LoopAtBasepoint, WedgeSummand::Theta2]
        );
    }
}
