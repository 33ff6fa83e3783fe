//! Fixtures shared by the criterion benches.

use auterq_core::cubical::{build_cubical_complex, CubicalComplex};
use auterq_core::graph::Mode;
use auterq_core::matrix::SparseIntMatrix;

/// A mid-sized quotient complex: holomorph mode, genus 3, degree cap 4.
pub fn mid_complex() -> CubicalComplex {
    build_cubical_complex(Mode::Holomorph, 3, 4, 4).expect("valid configuration")
}

/// Its largest boundary matrix, a realistic elimination workload.
pub fn mid_boundary() -> SparseIntMatrix {
    let cx = mid_complex();
    cx.boundary(3).clone()
}
