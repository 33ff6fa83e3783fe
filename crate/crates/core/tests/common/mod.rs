//! Independent oracles: naive enumeration, brute-force isomorphism, and
//! exhaustive automorphism counting. These deliberately avoid the library's
//! canonical-form machinery so the two routes check each other.

use auterq_core::graph::{Mode, PointedGraph, Special};

/// Every permutation of 0..n, by simple recursion.
fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: &mut Vec<usize>, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining.is_empty() {
            out.push(current.clone());
            return;
        }
        for i in 0..remaining.len() {
            let x = remaining.remove(i);
            current.push(x);
            rec(remaining, current, out);
            current.pop();
            remaining.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// All vertex bijections of 0..n fixing the required indices.
fn permutations_fixing(n: usize, fixed: &[usize]) -> Vec<Vec<usize>> {
    all_permutations(n)
        .into_iter()
        .filter(|p| fixed.iter().all(|&f| p[f] == f))
        .collect()
}

fn marked_fixed(g: &PointedGraph) -> Vec<usize> {
    let mut fixed = vec![g.basepoint()];
    if let Some(s) = g.special_vertex() {
        fixed.push(s);
    }
    fixed
}

fn edge_multiset(g: &PointedGraph, perm: &[usize]) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (perm[u], perm[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    edges
}

/// Brute-force marked isomorphism test: some vertex bijection carrying
/// basepoint to basepoint and special vertex to special vertex matches the
/// edge multisets.
pub fn isomorphic(g1: &PointedGraph, g2: &PointedGraph) -> bool {
    if g1.vertex_count() != g2.vertex_count()
        || g1.edge_count() != g2.edge_count()
        || std::mem::discriminant(&g1.special()) != std::mem::discriminant(&g2.special())
    {
        return false;
    }
    let n = g1.vertex_count();
    let target = edge_multiset(g2, &(0..n).collect::<Vec<_>>());
    // bijections sending g1's marks onto g2's marks
    all_permutations(n)
        .into_iter()
        .filter(|perm| perm[g1.basepoint()] == g2.basepoint())
        .filter(|perm| match (g1.special_vertex(), g2.special_vertex()) {
            (Some(s1), Some(s2)) => perm[s1] == s2,
            (None, None) => true,
            _ => false,
        })
        .any(|perm| edge_multiset(g1, &perm) == target)
}

/// All labeled multigraphs with the given vertex count and edge count:
/// every multiset of endpoint pairs.
fn all_edge_multisets(vcount: usize, ecount: usize) -> Vec<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for u in 0..vcount {
        for w in u..vcount {
            pairs.push((u, w));
        }
    }
    let mut out = Vec::new();
    fn rec(
        pairs: &[(usize, usize)],
        idx: usize,
        remaining: usize,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if idx == pairs.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        for m in 0..=remaining {
            for _ in 0..m {
                current.push(pairs[idx]);
            }
            rec(pairs, idx + 1, remaining - m, current, out);
            for _ in 0..m {
                current.pop();
            }
        }
    }
    rec(&pairs, 0, ecount, &mut Vec::new(), &mut out);
    out
}

/// Naive enumeration: every labeled multigraph, validity by the public
/// checks, isomorphism reduction by brute force. Returns representatives.
pub fn naive_classes(n: usize, k: usize, mode: Mode) -> Vec<PointedGraph> {
    let mut reps: Vec<PointedGraph> = Vec::new();
    let specials: &[Special] = match mode {
        Mode::Holomorph => &[Special::Basepoint, Special::Vertex(1)],
        Mode::Aut => &[Special::Absent],
    };
    for &special in specials {
        let min_v = if matches!(special, Special::Vertex(_)) { 2 } else { 1 };
        for vcount in min_v..=k + 1 {
            let ecount = vcount + n - 1;
            for edges in all_edge_multisets(vcount, ecount) {
                let Ok(g) = PointedGraph::new(vcount, edges, 0, special) else { continue };
                if !g.is_valid() {
                    continue;
                }
                let deg = g.degree();
                if deg < 0 || deg as usize > k {
                    continue;
                }
                if !reps.iter().any(|r| isomorphic(r, &g)) {
                    reps.push(g);
                }
            }
        }
    }
    reps
}

/// Exhaustive automorphism count: all (vertex bijection, edge bijection)
/// pairs preserving incidence, times loop orientation flips.
pub fn naive_automorphism_count(g: &PointedGraph) -> u64 {
    let n = g.vertex_count();
    let e = g.edge_count();
    let loops = g.edges().iter().filter(|&&(u, v)| u == v).count() as u32;
    let mut count = 0u64;
    for vperm in permutations_fixing(n, &marked_fixed(g)) {
        'edge: for eperm in permutations_fixing(e, &[]) {
            for (i, &(u, v)) in g.edges().iter().enumerate() {
                let (a, b) = (vperm[u], vperm[v]);
                let img = g.edges()[eperm[i]];
                if (a.min(b), a.max(b)) != img {
                    continue 'edge;
                }
            }
            count += 1;
        }
    }
    count << loops
}
