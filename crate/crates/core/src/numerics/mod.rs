//! Exact rational arithmetic, linear algebra and linear programming.

pub mod hull;
pub mod linalg;
pub mod lp;
pub mod scalar;
pub mod vector;

pub use hull::{
    convex_weights, hull_intersection, point_in_hull, separate_polytopes, HullMembership,
    PolytopeSeparation, SeparationMode,
};
pub use linalg::{nullspace_basis, rank, rref, solve};
pub use lp::{solve_lp, Constraint, LinearProgram, LpOutcome, Relation, Sense};
pub use scalar::Scalar;
pub use vector::{Functional, Vector};
