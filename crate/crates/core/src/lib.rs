//! Combinatorial 0/1/2-complexes, their morphisms, sphere maps, and the
//! analysis objects built on top of them: contiguity graphs and estimating
//! 2-complexes.
//!
//! The data model is fully combinatorial. Edges attach through two named
//! vertex slots (the attached 0-sphere); faces attach through a chosen
//! boundary walk of the attaching circle. On top of that sit:
//!
//! - recognition of circles, closed surfaces, spheres and discs, and
//!   coherent orientation ([`surface`]);
//! - paths, cycles, arcs, and their classifications ([`path`]);
//! - maps in the sense of sphere-with-removed-faces, spherical closures,
//!   submaps, arc classification, and cut-out ([`map`]);
//! - contiguity graphs with the planar edge bound, and estimating
//!   2-complexes of arc systems ([`analysis`]);
//! - seeded sphere generators for fixtures and property suites ([`gen`]);
//! - a line-oriented text format plus DOT export ([`fmt`]).

pub mod analysis;
pub mod complex;
pub mod error;
pub mod fmt;
pub mod gen;
pub mod map;
pub mod morphism;
pub mod path;
pub mod surface;
mod util;

pub use analysis::{
    check_planar_bound, contiguity_graph, estimating_complex, factor_boundary,
    validate_arc_system, ArcSystem, BoundaryFactorization, ContiguityResult, EstimatingResult,
    PlanarBoundReport,
};
pub use complex::{
    Complex2, ComplexBuilder, Dim, EdgeDir, EdgeId, EdgeRec, FaceId, FaceRec, OrientedEdge,
    ValidationReport, VertexId, Violation,
};
pub use error::{Error, ParseError, Result};
pub use gen::{polygon_double, random_sphere, replay, split_face, subdivide_edge, tetrahedron, GenLog, GenOp};
pub use map::{
    find_map_isomorphism, make_map, verify_pasting, ArcClassification, ClosureResult, MapFlags,
    MapKind, MapStruct, Selection,
};
pub use morphism::{compose, find_isomorphism, CircleIso, Morphism, SlotMatching};
pub use path::{
    classify_cycle, classify_path, covers_cycle, maximal_arcs, simple_cycles, subpath_of_cycle,
    ArcRec, CycleClass, CycleFlags, PathFlags, PathSeq,
};
pub use surface::{
    boundary_cycle, find_coherent_orientation, is_coherent, is_combinatorial_circle,
    is_combinatorial_disc, is_combinatorial_sphere, is_closed_surface, is_surface, OrientFlag,
    OrientationChoice, OrientedFace,
};
