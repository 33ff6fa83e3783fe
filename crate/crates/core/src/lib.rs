//! Enumeration of pointed multigraphs, quotient cell complexes built from
//! forest collapses, and exact homology over the rationals, odd prime
//! fields, and the integers.

pub mod canon;
pub mod cubical;
pub mod delta;
pub mod enumerate;
pub mod forest;
pub mod graph;
pub mod homology;
pub mod matrix;
pub mod rank;
pub mod snf;
pub mod twisted;
pub mod verify;

pub use canon::{
    automorphisms, canonicalize, wedge_summands, Automorphism, GraphClass, WedgeSummand,
};
pub use cubical::{build_cubical_complex, build_cubical_from_classes, cube_orientable, CubeCell, CubicalComplex};
pub use delta::{build_delta_complex, build_delta_from_classes, DeltaCell, DeltaSkeleton, SkeletonJson};
pub use enumerate::{add_loop, enumerate_graph_classes, wedge_audit};
pub use forest::{collapse, enumerate_forests, ForestMask};
pub use graph::{GraphError, GraphJson, Mode, PointedGraph, Special, Violation};
pub use homology::{
    relative_homology, ChainComplex, Coefficients, ComplexKind, HomologyError, HomologyReport,
    RelativeReport, SurjectivityCheck,
};
pub use matrix::SparseIntMatrix;
pub use rank::{rank_over_field, FieldSpec};
pub use snf::smith_normal_form;
pub use twisted::{aut_rational_betti, twisted_table, HolomorphBetti, Provenance, TwistedEntry, TwistedValue};
pub use verify::{run_verification, Check};
