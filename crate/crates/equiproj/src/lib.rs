//! Exact rational geometry for equiprojective 3-polytopes.
//!
//! A 3-polytope is k-equiprojective when its orthogonal shadow on every
//! admissible plane (one not orthogonal to a facet) is a polygon with exactly
//! k vertices. This crate decides equiprojectivity by two independent
//! criteria, computes the shadow size κ, predicts κ across Minkowski sums,
//! constructs k-equiprojective witnesses for every k ≥ 6, and enumerates
//! oriented-matroid covectors of small generator sets.
//!
//! All computation is exact: vertex coordinates are arbitrary-precision
//! rationals and every geometric decision reduces to an integer sign.

pub mod arith;
pub mod check;
pub mod cones;
pub mod geom;
pub mod io;
pub mod minkowski;
pub mod omatroid;
pub mod report;
pub mod vec3;

pub mod cli;

pub use check::{
    check_aggregated, check_hasan_lubiw, compensates, lemma_pairing, oracle_equiprojective,
    shadow_histogram, shadow_vertex_count, CompensationPairing, DirectionCase,
    EdgeFacetIncidence, EquiprojectivityReport,
};
pub use cones::{
    aggregated_cone, cone_is_partition_with_opposite, edge_directions, kappa, multiplicity,
    AggregatedCone, Arc, EdgeDirection, Multiplicity,
};
pub use geom::{face_lattice_isomorphic, hull3, orientation, Face, Polytope3};
pub use minkowski::{
    face_summand_maps, generic_triangle, kappa_of_sum, minkowski_sum, odd_equiprojective,
    sum_equiprojective, zonotope, FaceDecomposition, GeneratorSet, MinkowskiSum,
    SharedDirectionCase, SumCertificate,
};
pub use omatroid::{covectors, om_equivalent, type_census, zonotope_type_equal, CovectorSet, SignVector};
pub use vec3::{IVec3, Vec3};

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("input must contain at least one point")]
    EmptyInput,
    #[error("expected a 3-dimensional polytope, got dimension {0}")]
    NotThreeDimensional(usize),
    #[error("{0} is not an edge direction of the polytope")]
    NotAnEdgeDirection(String),
    #[error("direction {direction} is inadmissible: orthogonal to the normal of facet {facet}")]
    InadmissibleDirection { direction: String, facet: usize },
    #[error("resource budget exceeded: {0}")]
    ResourceBudget(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("3-dimensional summand fails the equiprojectivity check")]
    SummandNotEquiprojective,
    #[error("Minkowski sum fails the shared-direction compatibility test")]
    SumIncompatible,
    #[error("an incidence cannot be paired with itself")]
    InvalidIncidencePair,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
