//! The cube structure on the quotient, valid with rational coefficients: a
//! dimension-r generator is an orbit of pairs (graph class, r-edge forest)
//! whose setwise stabilizer permutes the forest evenly. Orbits with an odd
//! stabilizer element carry no orientation class and are dropped.
//!
//! With the forest edges ordered by the canonical representative's class
//! indices, the boundary of (graph, {e_1 < ... < e_r}) is
//!   sum_j (-1)^j [ (graph, F \ e_j) - (graph/e_j, F/e_j) ],
//! each face re-canonicalized with the sign of the induced permutation of
//! its forest edges, and zero when the face is non-orientable.

use std::collections::{BTreeSet, HashMap};

use crate::canon::GraphClass;
use crate::enumerate::enumerate_graph_classes;
use crate::forest::{
    bits, collapse_mask, permutation_is_odd, ClassCombinatorics, ForestMask,
};
use crate::graph::{GraphError, Mode};
use crate::matrix::SparseIntMatrix;

/// One orientable cube orbit: class index plus canonical forest mask.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeCell {
    pub class: usize,
    pub forest: ForestMask,
}

#[derive(Clone, Debug)]
pub struct CubicalComplex {
    pub mode: Mode,
    pub genus: usize,
    pub max_degree: usize,
    pub built_dim: usize,
    pub classes: Vec<GraphClass>,
    /// Orientable cube orbits by dimension.
    pub cells: Vec<Vec<CubeCell>>,
    /// Non-orientable orbit counts by dimension (dropped generators).
    pub dropped: Vec<usize>,
    /// boundaries[r-1] is the signed matrix from dimension r to r-1.
    pub boundaries: Vec<SparseIntMatrix>,
    class_data: Vec<ClassCombinatorics>,
}

pub fn build_cubical_complex(
    mode: Mode,
    genus: usize,
    max_degree: usize,
    max_dim: usize,
) -> Result<CubicalComplex, GraphError> {
    let classes = enumerate_graph_classes(genus, max_degree, mode)?;
    Ok(build_cubical_from_classes(mode, genus, max_degree, max_dim, classes))
}

pub fn build_cubical_from_classes(
    mode: Mode,
    genus: usize,
    max_degree: usize,
    max_dim: usize,
    classes: Vec<GraphClass>,
) -> CubicalComplex {
    let built_dim = max_dim.min(max_degree);
    let class_data: Vec<ClassCombinatorics> =
        classes.iter().map(ClassCombinatorics::of).collect();
    let class_by_encoding: HashMap<String, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.encoding().to_string(), i))
        .collect();

    let mut keep: Vec<BTreeSet<CubeCell>> = vec![BTreeSet::new(); built_dim + 1];
    let mut drop: Vec<BTreeSet<CubeCell>> = vec![BTreeSet::new(); built_dim + 1];
    for (ci, data) in class_data.iter().enumerate() {
        keep[0].insert(CubeCell { class: ci, forest: 0 });
        for &forest in &data.forests {
            let dim = forest.count_ones() as usize;
            if dim > built_dim {
                continue;
            }
            let (canon, _) = data.canonical_mask(forest);
            if canon != forest {
                continue; // not the orbit representative
            }
            let cell = CubeCell { class: ci, forest };
            if data.mask_is_orientable(forest) {
                keep[dim].insert(cell);
            } else {
                drop[dim].insert(cell);
            }
        }
    }
    let cells: Vec<Vec<CubeCell>> = keep.into_iter().map(|s| s.into_iter().collect()).collect();
    let dropped: Vec<usize> = drop.iter().map(|s| s.len()).collect();

    let index: Vec<HashMap<&CubeCell, usize>> = cells
        .iter()
        .map(|layer| layer.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();

    let mut collapse_cache: HashMap<(usize, ForestMask), (usize, Vec<Option<usize>>)> =
        HashMap::new();
    let mut boundaries = Vec::with_capacity(built_dim);
    for r in 1..=built_dim {
        let mut m = SparseIntMatrix::new(cells[r - 1].len(), cells[r].len());
        for (col, cube) in cells[r].iter().enumerate() {
            let data = &class_data[cube.class];
            let edges: Vec<usize> = bits(cube.forest).collect();
            for (j0, &ej) in edges.iter().enumerate() {
                let outer = if (j0 + 1) % 2 == 1 { -1i64 } else { 1 };
                let sub = cube.forest & !(1 << ej);
                let induced: Vec<usize> = edges.iter().copied().filter(|&b| b != ej).collect();

                // face keeping the graph, dropping e_j from the forest
                let (canon, perm) = data.canonical_mask(sub);
                let key = CubeCell { class: cube.class, forest: canon };
                if let Some(&row) = index[r - 1].get(&key) {
                    let images: Vec<usize> = induced.iter().map(|&b| perm[b]).collect();
                    let sign = if permutation_is_odd(&images) { -1 } else { 1 };
                    m.add(row, col, outer * sign);
                }

                // face collapsing e_j
                let (tclass, map) = collapse_cache
                    .entry((cube.class, 1 << ej))
                    .or_insert_with(|| {
                        let (collapsed, map) =
                            collapse_mask(&classes[cube.class], &data.cs, 1 << ej);
                        (class_by_encoding[collapsed.encoding()], map)
                    })
                    .clone();
                let mapped: Vec<usize> = induced
                    .iter()
                    .map(|&b| map[b].expect("forest classes survive a forest collapse"))
                    .collect();
                let tdata = &class_data[tclass];
                let tmask: ForestMask = mapped.iter().fold(0, |acc, &b| acc | (1 << b));
                let (canon, perm) = tdata.canonical_mask(tmask);
                let key = CubeCell { class: tclass, forest: canon };
                if let Some(&row) = index[r - 1].get(&key) {
                    let images: Vec<usize> = mapped.iter().map(|&b| perm[b]).collect();
                    let sign = if permutation_is_odd(&images) { -1 } else { 1 };
                    m.add(row, col, -outer * sign);
                }
            }
        }
        boundaries.push(m);
    }

    CubicalComplex {
        mode,
        genus,
        max_degree,
        built_dim,
        classes,
        cells,
        dropped,
        boundaries,
        class_data,
    }
}

impl CubicalComplex {
    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(|layer| layer.len()).collect()
    }

    pub fn top_dim(&self) -> usize {
        (0..=self.built_dim).rev().find(|&r| !self.cells[r].is_empty()).unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.built_dim >= self.max_degree
            || (self.cells[self.built_dim].is_empty() && self.dropped[self.built_dim] == 0)
    }

    /// Alternating sum of orientable generator counts; equals the rational
    /// Euler characteristic of the quotient for a complete skeleton.
    pub fn euler_characteristic(&self) -> Option<i64> {
        self.is_complete().then(|| {
            self.cell_counts()
                .iter()
                .enumerate()
                .map(|(r, &n)| if r % 2 == 0 { n as i64 } else { -(n as i64) })
                .sum()
        })
    }

    pub fn boundary(&self, r: usize) -> &SparseIntMatrix {
        &self.boundaries[r - 1]
    }

    pub fn class_data(&self, ci: usize) -> &ClassCombinatorics {
        &self.class_data[ci]
    }
}

/// Whether the cube (class, forest given by edge indices of the canonical
/// representative) is orientable.
pub fn cube_orientable(
    class: &GraphClass,
    forest_edges: &[usize],
) -> Result<bool, crate::forest::ForestError> {
    let data = ClassCombinatorics::of(class);
    let mask = data.cs.mask_of_edges(class.graph(), forest_edges)?;
    Ok(data.mask_is_orientable(mask))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonicalize;
    use crate::graph::{PointedGraph, Special};

    fn gamma_prime_class() -> GraphClass {
        canonicalize(
            &PointedGraph::new(
                4,
                vec![(1, 2), (1, 3), (2, 3), (0, 2), (0, 3)],
                0,
                Special::Vertex(1),
            )
            .unwrap(),
        )
        .unwrap()
    }

    /// Map the construction-order edges {a,b,c,d,e} of the five-edge graph to
    /// edge indices of its canonical representative.
    fn gp_edges() -> (GraphClass, [usize; 5]) {
        let g = PointedGraph::new(
            4,
            vec![(1, 2), (1, 3), (2, 3), (0, 2), (0, 3)],
            0,
            Special::Vertex(1),
        )
        .unwrap();
        let (class, labeling) = crate::canon::canonicalize_with_labeling(&g).unwrap();
        let rep_edges = class.graph().edges();
        let named = [(1, 2), (1, 3), (2, 3), (0, 2), (0, 3)];
        let mut out = [usize::MAX; 5];
        let mut used = vec![false; rep_edges.len()];
        for (i, &(u, v)) in named.iter().enumerate() {
            let (a, b) = (labeling[u].min(labeling[v]), labeling[u].max(labeling[v]));
            let idx = rep_edges
                .iter()
                .enumerate()
                .position(|(e, &p)| p == (a, b) && !used[e])
                .unwrap();
            used[idx] = true;
            out[i] = idx;
        }
        (class, out)
    }

    #[test]
    fn folded_and_embedded_cubes() {
        let (class, [a, b, _c, d, _e]) = gp_edges();
        // the x<->y symmetry swaps a and b, so {a,b} folds
        assert!(!cube_orientable(&class, &[a, b]).unwrap());
        // {a,b,d} is preserved by no nontrivial automorphism
        assert!(cube_orientable(&class, &[a, b, d]).unwrap());
    }

    #[test]
    fn rose_is_the_unique_zero_cube() {
        let cx = build_cubical_complex(Mode::Holomorph, 1, 0, 0).unwrap();
        assert_eq!(cx.cell_counts(), vec![1]);
        assert_eq!(cx.classes[0].graph().edge_count(), 1);
        assert_eq!(cx.euler_characteristic(), Some(1));
    }

    #[test]
    fn interval_complex_matches_delta() {
        let cx = build_cubical_complex(Mode::Holomorph, 1, 2, 2).unwrap();
        assert_eq!(cx.cell_counts(), vec![2, 1, 0]);
        let d1 = cx.boundary(1);
        let entries: Vec<i64> = (0..2).map(|r| d1.get(r, 0)).collect();
        let mut sorted = entries;
        sorted.sort();
        assert_eq!(sorted, vec![-1, 1]);
    }

    #[test]
    fn boundary_composites_vanish() {
        for (mode, n, k) in [
            (Mode::Holomorph, 2, 2),
            (Mode::Holomorph, 2, 3),
            (Mode::Holomorph, 3, 2),
            (Mode::Aut, 2, 3),
        ] {
            let cx = build_cubical_complex(mode, n, k, k).unwrap();
            for r in 2..=cx.built_dim {
                let composite = cx.boundary(r - 1).multiply(cx.boundary(r));
                assert!(
                    composite.is_zero(),
                    "cubical boundary composite nonzero at dim {r} for {mode:?} n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn sphere_instance_euler_characteristic() {
        let cx = build_cubical_complex(Mode::Holomorph, 2, 2, 2).unwrap();
        assert!(cx.is_complete());
        assert_eq!(cx.euler_characteristic(), Some(2));
        let _ = gamma_prime_class();
    }
}
