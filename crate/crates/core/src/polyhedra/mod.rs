//! Polyhedral cones, their unions, bases and boundaries.

pub mod base;
pub mod boundary;
pub mod cone;
pub mod dd;
pub mod region;

pub use base::{
    base_polytope, check_normlike, classify_base, in_k_amp, in_k_plus, in_k_sharp,
    k_amp_violation, BaseClassification, BaseKind, BasePolytope,
};
pub use boundary::boundary_cone;
pub use cone::{ConeUnion, ConvexConePiece, InteriorVerdict, LinealityReport, MAX_GENERATORS};
pub use dd::{
    cone_from_inequalities, double_description, vertex_enumeration, ConeFacets, ConeGenerators,
    MAX_DIM,
};
pub use region::{difference_witness, Region};
