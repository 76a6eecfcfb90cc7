//! Vertex-facet assignments of polytopes given by their incidences.
//!
//! A vertex-facet assignment matches vertices to non-incident facets so that
//! every vertex or every facet is used. This crate builds face lattices from
//! incidence matrices, decides assignment existence by bipartite matching,
//! certifies failures with Hall witnesses, and cross-checks the verdict
//! against face-level criteria.
//!
//! ```
//! use polyassign::{parse_construction, decide_assignment, Outcome};
//!
//! let join = parse_construction("join(cube(3),cross(3))").unwrap();
//! assert_eq!(decide_assignment(join.matrix()).outcome, Outcome::NoAssignment);
//! ```

pub mod bitset;
pub mod check;
pub mod constructions;
pub mod corpus;
pub mod document;
pub mod dot;
pub mod error;
pub mod expr;
pub mod isomorphism;
pub mod lattice;
pub mod matching;
pub mod theorems;

pub use bitset::BitSet;
pub use constructions::PolytopeSpec;
pub use document::PolytopeDocument;
pub use error::{Error, Result};
pub use expr::{parse_construction, Expr};
pub use lattice::{Face, FaceLattice, IncidenceMatrix};
pub use matching::{
    decide_assignment, decide_incident_assignment, maximum_matching, non_neighborhood,
    CoveredSide, GraphMode, HallWitness, MatchingCertificate, Outcome, Side, VertexFacetGraph,
};
pub use theorems::{full_report, TheoremReport};
