//! Cross-structure validation one size beyond the acceptance instances:
//! cube and simplex cells must give the same rational homology, integral
//! free ranks must match rational Betti numbers, and odd-prime Betti
//! numbers dominate the rational ones.

use auterq_core::cubical::build_cubical_complex;
use auterq_core::delta::build_delta_complex;
use auterq_core::graph::Mode;
use auterq_core::homology::{ChainComplex, Coefficients};

#[test]
fn structures_agree_at_degree_four() {
    for (mode, n, k) in [
        (Mode::Holomorph, 2usize, 4usize),
        (Mode::Holomorph, 3, 4),
        (Mode::Aut, 3, 3),
        (Mode::Aut, 4, 3),
    ] {
        let skel = build_delta_complex(mode, n, k, k).unwrap();
        let dcx = ChainComplex::from_delta(&skel).unwrap();
        let dq = dcx.homology(Coefficients::Rational, k).unwrap();
        let cube = build_cubical_complex(mode, n, k, k).unwrap();
        let ccx = ChainComplex::from_cubical(&cube).unwrap();
        let cq = ccx.homology(Coefficients::Rational, k).unwrap();
        assert_eq!(dq.betti, cq.betti, "cube/simplex disagreement at {mode:?} n={n} k={k}");

        let dz = dcx.homology(Coefficients::Integer, k).unwrap();
        let dp = dcx.homology(Coefficients::PrimeField(3), k).unwrap();
        for (r, &b) in dq.betti.iter().enumerate() {
            assert!(dp.betti[r] >= b, "{mode:?} n={n} k={k} dim {r}");
            assert_eq!(dz.betti[r], b, "{mode:?} n={n} k={k} dim {r}");
        }
    }
}

#[test]
fn known_torsion_class_is_seen_only_integrally() {
    // the degree-4 truncation at genus 3 carries 2-torsion in dimension 3;
    // odd-prime and rational coefficients agree there, so only the integral
    // route detects it
    let skel = build_delta_complex(Mode::Holomorph, 3, 4, 4).unwrap();
    let cx = ChainComplex::from_delta(&skel).unwrap();
    let z = cx.homology(Coefficients::Integer, 4).unwrap();
    assert_eq!(z.torsion.as_ref().unwrap()[3], vec![2]);
    assert_eq!(z.betti[3], 0);
    let p3 = cx.homology(Coefficients::PrimeField(3), 4).unwrap();
    assert_eq!(p3.betti[3], 0);
}
