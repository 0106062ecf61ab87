//! Exact metric dimension and distinguishing number for small graphs, the
//! resolving-set to distinguishing-coloring construction, twin graphs, and
//! exhaustive checks of the characterizations of graphs whose distinguishing
//! number is close to their order.

pub mod catalog;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod metric;
pub mod symmetry;
pub mod twins;
pub mod verify;

pub use catalog::{
    classify_graph, in_family_f, instantiate_families, ClassificationReport, FamilyAlias,
    FamilyInstance, TheoremId,
};
pub use enumerate::{enumerate_graphs, enumerate_orders, ENUMERATION_MAX_ORDER};
pub use error::{Error, Result};
pub use family::{dimension_gap_graph, FamilySpec};
pub use graph::{DistanceMatrix, Graph, Part, PartKind, MAX_ORDER};
pub use graph6::{parse_graph6, parse_graph6_lines, write_graph6};
pub use iso::{are_isomorphic, canonical_form, relabel, CanonicalForm, Permutation};
pub use metric::{is_resolving, metric_dimension, ResolvingWitness};
pub use symmetry::{
    automorphism_group, coloring_from_resolving_set, distinguishing_number, is_distinguishing,
    vertex_orbits, AutomorphismGroup, Coloring,
};
pub use twins::{
    core_graph, is_almost_asymmetric, twin_classes, twin_graph, ClassType, TwinStructure,
};
pub use verify::{
    verify_bound, verify_construction, verify_theorem, Counterexample, Verdict, VerifyReport,
};
