//! Forests in a graph representative and forest collapse.
//!
//! Cell bookkeeping works with parallel classes rather than raw edge
//! indices: a forest never contains a loop or two parallel copies, so a
//! forest is exactly an acyclic set of non-loop parallel classes, and the
//! edge-swap automorphisms that permute parallel copies act trivially on it.

use thiserror::Error;

use crate::canon::{canonicalize_with_labeling, vertex_automorphisms, GraphClass};
use crate::graph::PointedGraph;

#[derive(Debug, Error)]
pub enum ForestError {
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("edge {0} is a loop and cannot belong to a forest")]
    LoopEdge(usize),
    #[error("edges {0} and {1} are parallel and together close a cycle")]
    ParallelPair(usize, usize),
    #[error("edge subset contains a cycle")]
    Cyclic,
}

/// A set of parallel classes, stored as a bitmask over class indices.
pub type ForestMask = u32;

/// Non-loop parallel classes of a graph: distinct endpoint pairs, sorted.
#[derive(Clone, Debug)]
pub struct ClassStructure {
    pub pairs: Vec<(usize, usize)>,
    pub mult: Vec<usize>,
    /// Index of the first edge copy of each class in the graph's edge list.
    pub first_edge: Vec<usize>,
    /// Per edge index: its class, or None for loops.
    pub edge_class: Vec<Option<usize>>,
}

impl ClassStructure {
    pub fn of(g: &PointedGraph) -> ClassStructure {
        let mut pairs = Vec::new();
        let mut mult = Vec::new();
        let mut first_edge = Vec::new();
        let mut edge_class = vec![None; g.edge_count()];
        for (eid, &(u, v)) in g.edges().iter().enumerate() {
            if u == v {
                continue;
            }
            match pairs.last() {
                Some(&p) if p == (u, v) => {
                    *mult.last_mut().unwrap() += 1;
                }
                _ => {
                    pairs.push((u, v));
                    mult.push(1);
                    first_edge.push(eid);
                }
            }
            edge_class[eid] = Some(pairs.len() - 1);
        }
        assert!(pairs.len() <= ForestMask::BITS as usize, "too many parallel classes");
        ClassStructure { pairs, mult, first_edge, edge_class }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn class_of_pair(&self, u: usize, v: usize) -> Option<usize> {
        let p = (u.min(v), u.max(v));
        self.pairs.binary_search(&p).ok()
    }

    /// Whether the classes in `mask` form a forest (acyclic; loops are
    /// excluded by construction).
    pub fn is_forest(&self, vcount: usize, mask: ForestMask) -> bool {
        let mut uf = UnionFind::new(vcount);
        for c in bits(mask) {
            let (u, v) = self.pairs[c];
            if !uf.union(u, v) {
                return false;
            }
        }
        true
    }

    /// Every nonempty forest, as a sorted list of class masks.
    pub fn forest_masks(&self, vcount: usize) -> Vec<ForestMask> {
        let mut out = Vec::new();
        let mut uf = UnionFind::new(vcount);
        self.extend_forests(0, 0, &mut uf, &mut out);
        out.sort_unstable();
        out
    }

    fn extend_forests(
        &self,
        mask: ForestMask,
        from: usize,
        uf: &mut UnionFind,
        out: &mut Vec<ForestMask>,
    ) {
        for c in from..self.len() {
            let (u, v) = self.pairs[c];
            if uf.find(u) == uf.find(v) {
                continue;
            }
            let snapshot = uf.clone();
            uf.union(u, v);
            let next = mask | (1 << c);
            out.push(next);
            self.extend_forests(next, c + 1, uf, out);
            *uf = snapshot;
        }
    }

    /// Convert a set of edge indices to a class mask, rejecting loops,
    /// parallel pairs, and cycles.
    pub fn mask_of_edges(
        &self,
        g: &PointedGraph,
        edges: &[usize],
    ) -> Result<ForestMask, ForestError> {
        let mut mask: ForestMask = 0;
        for &e in edges {
            if e >= g.edge_count() {
                return Err(ForestError::EdgeOutOfRange(e));
            }
            let c = self.edge_class[e].ok_or(ForestError::LoopEdge(e))?;
            if mask & (1 << c) != 0 {
                let other = edges
                    .iter()
                    .copied()
                    .find(|&f| f != e && self.edge_class[f] == Some(c))
                    .unwrap_or(e);
                return Err(ForestError::ParallelPair(other, e));
            }
            mask |= 1 << c;
        }
        if !self.is_forest(g.vertex_count(), mask) {
            return Err(ForestError::Cyclic);
        }
        Ok(mask)
    }
}

/// Bit indices of a mask, ascending.
pub fn bits(mask: ForestMask) -> impl Iterator<Item = usize> {
    (0..ForestMask::BITS as usize).filter(move |&i| mask >> i & 1 == 1)
}

/// All nonempty forests of the canonical representative, as raw edge-index
/// subsets. Parallel copies give distinct forests here; the complex layers
/// identify them through the automorphism action.
pub fn enumerate_forests(class: &GraphClass) -> Vec<Vec<usize>> {
    let g = class.graph();
    let cs = ClassStructure::of(g);
    let mut out = Vec::new();
    for mask in cs.forest_masks(g.vertex_count()) {
        // expand each class into its parallel copies
        let classes: Vec<usize> = bits(mask).collect();
        let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
        for &c in &classes {
            let ids: Vec<usize> = (cs.first_edge[c]..cs.first_edge[c] + cs.mult[c]).collect();
            let mut next = Vec::new();
            for base in &choices {
                for &e in &ids {
                    let mut v = base.clone();
                    v.push(e);
                    next.push(v);
                }
            }
            choices = next;
        }
        for mut forest in choices {
            forest.sort_unstable();
            out.push(forest);
        }
    }
    out.sort();
    out
}

/// Contract the forest `mask` in the class representative. The basepoint
/// absorbs merged vertices; the special vertex absorbs merged non-basepoint
/// vertices; if basepoint and special vertex merge the result has the
/// special vertex at the basepoint. Returns the collapsed class together
/// with the induced map of parallel classes (None for collapsed classes and
/// classes that become loops).
pub fn collapse_mask(
    class: &GraphClass,
    cs: &ClassStructure,
    mask: ForestMask,
) -> (GraphClass, Vec<Option<usize>>) {
    let g = class.graph();
    let vcount = g.vertex_count();
    let mut uf = UnionFind::new(vcount);
    for c in bits(mask) {
        let (u, v) = cs.pairs[c];
        uf.union(u, v);
    }
    // compress roots to consecutive ids
    let mut root_id = vec![usize::MAX; vcount];
    let mut nroots = 0;
    let mut vmap = vec![0usize; vcount];
    for v in 0..vcount {
        let r = uf.find(v);
        if root_id[r] == usize::MAX {
            root_id[r] = nroots;
            nroots += 1;
        }
        vmap[v] = root_id[r];
    }

    let mut edges = Vec::with_capacity(g.edge_count());
    for (eid, &(u, v)) in g.edges().iter().enumerate() {
        if let Some(c) = cs.edge_class[eid] {
            if mask & (1 << c) != 0 && eid == cs.first_edge[c] {
                continue; // the contracted copy
            }
        }
        edges.push((vmap[u], vmap[v]));
    }
    let new_base = vmap[g.basepoint()];
    let special = match g.special_vertex() {
        Some(s) if vmap[s] == new_base => crate::graph::Special::Basepoint,
        Some(s) => crate::graph::Special::Vertex(vmap[s]),
        None => match g.special() {
            crate::graph::Special::Basepoint => crate::graph::Special::Basepoint,
            _ => crate::graph::Special::Absent,
        },
    };
    let collapsed = PointedGraph::new(nroots, edges, new_base, special)
        .expect("collapse produces a well-formed graph");
    let (new_class, labeling) =
        canonicalize_with_labeling(&collapsed).expect("collapse preserves validity");
    let new_cs = ClassStructure::of(new_class.graph());

    let class_map: Vec<Option<usize>> = (0..cs.len())
        .map(|c| {
            if mask & (1 << c) != 0 {
                return None;
            }
            let (u, v) = cs.pairs[c];
            let (a, b) = (labeling[vmap[u]], labeling[vmap[v]]);
            if a == b {
                return None; // became a loop
            }
            Some(
                new_cs
                    .class_of_pair(a, b)
                    .expect("image of a surviving class is a class"),
            )
        })
        .collect();
    (new_class, class_map)
}

/// Contract the given forest (edge indices of the canonical representative).
pub fn collapse(class: &GraphClass, forest_edges: &[usize]) -> Result<GraphClass, ForestError> {
    let cs = ClassStructure::of(class.graph());
    let mask = cs.mask_of_edges(class.graph(), forest_edges)?;
    Ok(collapse_mask(class, &cs, mask).0)
}

/// Automorphism action on parallel classes: one permutation of class
/// indices per distinct induced action, deduplicated and sorted.
pub fn class_permutations(g: &PointedGraph, cs: &ClassStructure) -> Vec<Vec<usize>> {
    let mut perms: Vec<Vec<usize>> = vertex_automorphisms(g)
        .iter()
        .map(|vm| {
            cs.pairs
                .iter()
                .map(|&(u, v)| {
                    cs.class_of_pair(vm[u], vm[v])
                        .expect("automorphism permutes parallel classes")
                })
                .collect()
        })
        .collect();
    perms.sort_unstable();
    perms.dedup();
    perms
}

/// Apply a class permutation to a mask.
pub fn apply_perm(perm: &[usize], mask: ForestMask) -> ForestMask {
    bits(mask).fold(0, |acc, b| acc | (1 << perm[b]))
}

/// Everything the complex builders need per graph class: parallel classes,
/// the forest list, the automorphism action on classes, and the forest
/// inclusion order.
#[derive(Clone, Debug)]
pub struct ClassCombinatorics {
    pub cs: ClassStructure,
    pub forests: Vec<ForestMask>,
    pub perms: Vec<Vec<usize>>,
    /// For each forest index, indices of its proper superset forests.
    pub supersets: Vec<Vec<usize>>,
}

impl ClassCombinatorics {
    pub fn of(class: &GraphClass) -> ClassCombinatorics {
        let g = class.graph();
        let cs = ClassStructure::of(g);
        let forests = cs.forest_masks(g.vertex_count());
        let perms = class_permutations(g, &cs);
        let supersets = forests
            .iter()
            .map(|&f| {
                forests
                    .iter()
                    .enumerate()
                    .filter(|&(_, &s)| s != f && s & f == f)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        ClassCombinatorics { cs, forests, perms, supersets }
    }

    /// Minimal image of a flag of nested forests under the class action.
    pub fn canonical_flag(&self, flag: &[ForestMask]) -> Vec<ForestMask> {
        self.perms
            .iter()
            .map(|p| flag.iter().map(|&m| apply_perm(p, m)).collect::<Vec<_>>())
            .min()
            .expect("the identity permutation is always present")
    }

    /// Minimal image of a single forest, along with a permutation realizing it.
    pub fn canonical_mask(&self, mask: ForestMask) -> (ForestMask, &[usize]) {
        let mut best = ForestMask::MAX;
        let mut best_perm: &[usize] = &self.perms[0];
        for p in &self.perms {
            let image = apply_perm(p, mask);
            if image < best {
                best = image;
                best_perm = p;
            }
        }
        (best, best_perm)
    }

    /// Whether some automorphism fixes `mask` setwise while permuting its
    /// members oddly. Such a cube carries no orientation class.
    pub fn mask_is_orientable(&self, mask: ForestMask) -> bool {
        for p in &self.perms {
            if apply_perm(p, mask) == mask {
                let images: Vec<usize> = bits(mask).map(|b| p[b]).collect();
                if permutation_is_odd(&images) {
                    return false;
                }
            }
        }
        true
    }
}

/// Parity of the permutation sending position i to the rank of `seq[i]`
/// among the sorted values. Entries must be distinct.
pub fn permutation_is_odd(seq: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

#[derive(Clone)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `x` and `y` were already joined.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent[rx.max(ry)] = rx.min(ry);
        true
    }
}
