//! Property tests: canonical-form invariance, elimination route agreement,
//! and Smith form permutation invariance.

use auterq_core::canon::canonicalize;
use auterq_core::enumerate::enumerate_graph_classes;
use auterq_core::graph::Mode;
use auterq_core::matrix::SparseIntMatrix;
use auterq_core::rank::{
    kernel_basis_mod_p, kernel_basis_rational, rank_fraction_free, rank_mod_p,
};
use auterq_core::snf::smith_normal_form;
use proptest::prelude::*;

fn class_pool() -> Vec<auterq_core::canon::GraphClass> {
    let mut pool = enumerate_graph_classes(2, 2, Mode::Holomorph).unwrap();
    pool.extend(enumerate_graph_classes(2, 3, Mode::Holomorph).unwrap());
    pool.extend(enumerate_graph_classes(3, 2, Mode::Aut).unwrap());
    pool
}

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    // small deterministic shuffle
    let mut perm: Vec<usize> = (0..n).collect();
    let mut state = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(1);
    for i in (1..n).rev() {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let j = (state >> 33) as usize % (i + 1);
        perm.swap(i, j);
    }
    perm
}

proptest! {
    #[test]
    fn canonical_form_is_relabeling_invariant(idx in 0usize..24, seed in any::<u64>()) {
        let pool = class_pool();
        let class = &pool[idx % pool.len()];
        let g = class.graph();
        let relabeled = g.relabeled(&permutation(g.vertex_count(), seed));
        let again = canonicalize(&relabeled).unwrap();
        prop_assert_eq!(again.encoding(), class.encoding());
        prop_assert_eq!(again.aut_count(), class.aut_count());
        // idempotence
        let twice = canonicalize(again.graph()).unwrap();
        prop_assert_eq!(twice.encoding(), class.encoding());
    }

    #[test]
    fn rank_routes_agree(entries in proptest::collection::vec(-9i64..=9, 12)) {
        let m = SparseIntMatrix::from_triplets(
            3, 4,
            entries.iter().enumerate().map(|(i, &v)| (i / 4, i % 4, v)),
        );
        let rank = rank_fraction_free(&m);
        prop_assert_eq!(rank, m.cols() - kernel_basis_rational(&m).len());
        let rank5 = rank_mod_p(&m, 5);
        prop_assert_eq!(rank5, m.cols() - kernel_basis_mod_p(&m, 5).len());
        prop_assert!(rank5 <= rank);
    }

    #[test]
    fn smith_form_is_permutation_invariant(
        entries in proptest::collection::vec(-6i64..=6, 9),
        seed in any::<u64>(),
    ) {
        let m = SparseIntMatrix::from_triplets(
            3, 3,
            entries.iter().enumerate().map(|(i, &v)| (i / 3, i % 3, v)),
        );
        let rows = permutation(3, seed);
        let cols = permutation(3, seed.wrapping_add(17));
        let shuffled = SparseIntMatrix::from_triplets(
            3, 3,
            m.iter().map(|(r, c, v)| (rows[r], cols[c], v)),
        );
        let d = smith_normal_form(&m);
        prop_assert_eq!(&d, &smith_normal_form(&shuffled));
        for w in d.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        prop_assert_eq!(d.len(), rank_fraction_free(&m));
    }
}
