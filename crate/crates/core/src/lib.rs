pub mod augdual;
pub mod bundled;
pub mod error;
pub mod io;
pub mod numerics;
pub mod polyhedra;
pub mod random;
pub mod report;
pub mod seminorms;
pub mod separation;
pub mod svg;

pub use augdual::{AugDualClass, AugmentedFunctional, Verdict};
pub use error::{Error, Result};
pub use numerics::{Functional, Scalar, Vector};
pub use polyhedra::{ConeUnion, ConvexConePiece};
pub use seminorms::{PolyhedralSeminorm, SublinearFunction};
pub use separation::{SeparationCertificate, SeparationClass, SeparationProblem, Variant};
