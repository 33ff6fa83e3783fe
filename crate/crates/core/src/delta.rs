//! The quotient cell structure with simplex cells: a dimension-r cell is an
//! orbit of pairs (graph class, strictly nested chain of nonempty forests
//! F_1 c F_2 c ... c F_r) under isomorphisms fixing the marked vertices.
//!
//! The r+1 faces of a cell drop one element of the underlying poset chain
//! graph > graph/F_1 > ... > graph/F_r:
//!   face i, i < r : delete F_{r-i} from the flag (i = 0 drops the most
//!                   collapsed end, i = r-1 deletes F_1);
//!   face r        : collapse F_1 and replace the flag by the images F_i/F_1.
//! Faces are re-canonicalized; distinct faces of one cell may coincide and
//! then each occurrence keeps its own sign in the boundary.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::canon::GraphClass;
use crate::enumerate::enumerate_graph_classes;
use crate::forest::{bits, collapse_mask, ClassCombinatorics, ForestMask};
use crate::graph::{GraphError, Mode};
use crate::matrix::SparseIntMatrix;

/// One cell: a class index plus its canonical flag of forest masks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaCell {
    pub class: usize,
    pub flag: Vec<ForestMask>,
}

impl DeltaCell {
    pub fn dim(&self) -> usize {
        self.flag.len()
    }
}

/// Cells by dimension plus face maps, for one (mode, genus, max degree)
/// quotient complex truncated at `built_dim`.
#[derive(Clone, Debug)]
pub struct DeltaSkeleton {
    pub mode: Mode,
    pub genus: usize,
    pub max_degree: usize,
    pub built_dim: usize,
    pub classes: Vec<GraphClass>,
    pub cells: Vec<Vec<DeltaCell>>,
    /// faces[r][cell] lists the r+1 faces in order; empty for r = 0.
    pub faces: Vec<Vec<Vec<usize>>>,
    class_data: Vec<ClassCombinatorics>,
}

/// Build the quotient complex with cells up to dimension `max_dim`.
/// Dimensions above `max_degree` cannot carry cells, so the built dimension
/// is capped there.
pub fn build_delta_complex(
    mode: Mode,
    genus: usize,
    max_degree: usize,
    max_dim: usize,
) -> Result<DeltaSkeleton, GraphError> {
    let classes = enumerate_graph_classes(genus, max_degree, mode)?;
    Ok(build_delta_from_classes(mode, genus, max_degree, max_dim, classes))
}

pub fn build_delta_from_classes(
    mode: Mode,
    genus: usize,
    max_degree: usize,
    max_dim: usize,
    classes: Vec<GraphClass>,
) -> DeltaSkeleton {
    let built_dim = max_dim.min(max_degree);
    let class_data: Vec<ClassCombinatorics> =
        classes.iter().map(ClassCombinatorics::of).collect();
    let class_by_encoding: HashMap<String, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.encoding().to_string(), i))
        .collect();

    // raw chains per class, bucketed by length
    let mut cells: Vec<Vec<DeltaCell>> = Vec::with_capacity(built_dim + 1);
    cells.push((0..classes.len()).map(|ci| DeltaCell { class: ci, flag: vec![] }).collect());

    let mut canonical_sets: Vec<BTreeSet<DeltaCell>> = vec![BTreeSet::new(); built_dim + 1];
    for (ci, data) in class_data.iter().enumerate() {
        let mut chain: Vec<usize> = Vec::new();
        collect_chains(ci, data, &mut chain, built_dim, &mut canonical_sets);
    }
    for r in 1..=built_dim {
        cells.push(canonical_sets[r].iter().cloned().collect());
    }

    // face maps
    let index: Vec<HashMap<&DeltaCell, usize>> = cells
        .iter()
        .map(|layer| layer.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let mut collapse_cache: HashMap<(usize, ForestMask), (usize, Vec<Option<usize>>)> =
        HashMap::new();
    let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); built_dim + 1];
    faces[0] = vec![Vec::new(); cells[0].len()];
    for r in 1..=built_dim {
        let mut layer_faces = Vec::with_capacity(cells[r].len());
        for cell in &cells[r] {
            let data = &class_data[cell.class];
            let mut cell_faces = Vec::with_capacity(r + 1);
            for i in 0..r {
                // delete F_{r-i}, the (r-1-i)-th flag entry
                let mut sub = cell.flag.clone();
                sub.remove(r - 1 - i);
                let face = DeltaCell { class: cell.class, flag: data.canonical_flag(&sub) };
                cell_faces.push(index[r - 1][&face]);
            }
            // collapse F_1, push the rest of the flag forward
            let (tclass, map) = collapse_cache
                .entry((cell.class, cell.flag[0]))
                .or_insert_with(|| {
                    let (collapsed, map) =
                        collapse_mask(&classes[cell.class], &data.cs, cell.flag[0]);
                    let t = class_by_encoding[collapsed.encoding()];
                    (t, map)
                })
                .clone();
            let pushed: Vec<ForestMask> = cell.flag[1..]
                .iter()
                .map(|&f| {
                    bits(f & !cell.flag[0]).fold(0, |acc, b| {
                        acc | (1 << map[b].expect("forest classes survive the collapse"))
                    })
                })
                .collect();
            let face = DeltaCell {
                class: tclass,
                flag: class_data[tclass].canonical_flag(&pushed),
            };
            cell_faces.push(index[r - 1][&face]);
            layer_faces.push(cell_faces);
        }
        faces[r] = layer_faces;
    }

    DeltaSkeleton {
        mode,
        genus,
        max_degree,
        built_dim,
        classes,
        cells,
        faces,
        class_data,
    }
}

fn collect_chains(
    ci: usize,
    data: &ClassCombinatorics,
    chain: &mut Vec<usize>,
    max_len: usize,
    out: &mut [BTreeSet<DeltaCell>],
) {
    if chain.len() == max_len {
        return;
    }
    let candidates: Vec<usize> = match chain.last() {
        Some(&last) => data.supersets[last].clone(),
        None => (0..data.forests.len()).collect(),
    };
    for next in candidates {
        chain.push(next);
        let flag: Vec<ForestMask> = chain.iter().map(|&fi| data.forests[fi]).collect();
        out[chain.len()].insert(DeltaCell { class: ci, flag: data.canonical_flag(&flag) });
        collect_chains(ci, data, chain, max_len, out);
        chain.pop();
    }
}

impl DeltaSkeleton {
    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(|layer| layer.len()).collect()
    }

    /// Largest dimension that actually carries cells.
    pub fn top_dim(&self) -> usize {
        (0..=self.built_dim).rev().find(|&r| !self.cells[r].is_empty()).unwrap_or(0)
    }

    /// True when no cells exist above `built_dim`, so the skeleton is the
    /// whole complex.
    pub fn is_complete(&self) -> bool {
        self.built_dim >= self.max_degree || self.cells[self.built_dim].is_empty()
    }

    /// Alternating sum of cell counts. Requires a complete skeleton.
    pub fn euler_characteristic(&self) -> Option<i64> {
        self.is_complete().then(|| {
            self.cell_counts()
                .iter()
                .enumerate()
                .map(|(r, &n)| if r % 2 == 0 { n as i64 } else { -(n as i64) })
                .sum()
        })
    }

    /// Boundary matrix from dimension r to r-1, with the alternating-sign
    /// face sum. Faces may repeat; each occurrence contributes.
    pub fn boundary(&self, r: usize) -> SparseIntMatrix {
        assert!(r >= 1 && r <= self.built_dim, "boundary dimension out of range");
        let mut m = SparseIntMatrix::new(self.cells[r - 1].len(), self.cells[r].len());
        for (col, cell_faces) in self.faces[r].iter().enumerate() {
            for (i, &row) in cell_faces.iter().enumerate() {
                m.add(row, col, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }

    pub fn class_data(&self, ci: usize) -> &ClassCombinatorics {
        &self.class_data[ci]
    }

    /// Degree of the top graph of a cell.
    pub fn cell_degree(&self, r: usize, idx: usize) -> usize {
        self.classes[self.cells[r][idx].class].degree()
    }
}

/// JSON form of a skeleton: cells as (encoding, flag of edge-index lists),
/// plus face incidence records.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SkeletonJson {
    pub mode: Mode,
    pub genus: usize,
    pub max_degree: usize,
    pub built_dim: usize,
    pub complete: bool,
    pub cells: Vec<Vec<CellJson>>,
    pub faces: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellJson {
    pub graph: String,
    pub flag: Vec<Vec<usize>>,
}

impl From<&DeltaSkeleton> for SkeletonJson {
    fn from(s: &DeltaSkeleton) -> SkeletonJson {
        let cells = s
            .cells
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|cell| CellJson {
                        graph: s.classes[cell.class].encoding().to_string(),
                        flag: cell
                            .flag
                            .iter()
                            .map(|&mask| {
                                bits(mask)
                                    .map(|c| s.class_data[cell.class].cs.first_edge[c])
                                    .collect()
                            })
                            .collect(),
                    })
                    .collect()
            })
            .collect();
        SkeletonJson {
            mode: s.mode,
            genus: s.genus,
            max_degree: s.max_degree,
            built_dim: s.built_dim,
            complete: s.is_complete(),
            cells,
            faces: s.faces.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_complex_cell_counts() {
        let s = build_delta_complex(Mode::Holomorph, 1, 2, 2).unwrap();
        assert_eq!(s.cell_counts(), vec![2, 1, 0]);
        assert!(s.is_complete());
        assert_eq!(s.euler_characteristic(), Some(1));
        // the single edge joins the two vertex classes
        let d1 = s.boundary(1);
        let entries: Vec<i64> = (0..2).map(|r| d1.get(r, 0)).collect();
        let mut sorted = entries.clone();
        sorted.sort();
        assert_eq!(sorted, vec![-1, 1]);
    }

    #[test]
    fn face_identities_on_small_complexes() {
        // d_i d_j = d_{j-1} d_i for i < j, checked through the matrices
        for (mode, n, k) in [(Mode::Holomorph, 2, 2), (Mode::Holomorph, 2, 3), (Mode::Aut, 2, 2)]
        {
            let s = build_delta_complex(mode, n, k, k).unwrap();
            for r in 2..=s.built_dim {
                if s.cells[r].is_empty() {
                    continue;
                }
                let composite = s.boundary(r - 1).multiply(&s.boundary(r));
                assert!(composite.is_zero(), "boundary composite nonzero at dim {r}");
            }
        }
    }

    #[test]
    fn gamma_prime_flag_faces() {
        // the cell (five-edge graph; {a} c {a,b,d}) has faces:
        // drop-top (collapse a), drop-middle {a,b,d}, drop-bottom {a}
        let s = build_delta_complex(Mode::Holomorph, 2, 3, 3).unwrap();
        let gp = s
            .classes
            .iter()
            .position(|c| c.degree() == 3 && c.graph().vertex_count() == 4)
            .expect("the four-vertex degree-3 class exists");
        let data = s.class_data(gp);
        // a spanning forest of size 3 and a nested single edge
        let f3 = data.forests.iter().copied().find(|m| m.count_ones() == 3).unwrap();
        let f1 = 1 << bits(f3).next().unwrap();
        let flag = data.canonical_flag(&[f1, f3]);
        let idx = s.cells[2].iter().position(|c| c.class == gp && c.flag == flag).unwrap();
        let faces = &s.faces[2][idx];
        assert_eq!(faces.len(), 3);
        // drop-bottom keeps the single-forest flag on the same class
        let bottom = &s.cells[1][faces[0]];
        assert_eq!(bottom.class, gp);
        assert_eq!(bottom.flag[0].count_ones(), 1);
        // drop-middle keeps the size-3 forest on the same class
        let middle = &s.cells[1][faces[1]];
        assert_eq!(middle.class, gp);
        assert_eq!(middle.flag[0].count_ones(), 3);
        // drop-top lands on a collapsed class with one fewer vertex
        let top = &s.cells[1][faces[2]];
        assert_ne!(top.class, gp);
        assert_eq!(s.classes[top.class].graph().vertex_count(), 3);
        assert_eq!(top.flag[0].count_ones(), 2);
    }

    #[test]
    fn low_degree_subskeleton_is_face_closed() {
        let s = build_delta_complex(Mode::Holomorph, 2, 3, 3).unwrap();
        for r in 1..=s.built_dim {
            for (idx, cell_faces) in s.faces[r].iter().enumerate() {
                let deg = s.cell_degree(r, idx);
                for &f in cell_faces {
                    assert!(
                        s.cell_degree(r - 1, f) <= deg,
                        "face of a degree-{deg} cell has larger degree"
                    );
                }
            }
        }
    }
}
