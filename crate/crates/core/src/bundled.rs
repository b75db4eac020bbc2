//! Built-in instances: three sectors of the positive quadrant and small
//! orthant fixtures.

use crate::error::Result;
use crate::numerics::{Scalar, Vector};
use crate::polyhedra::{ConeUnion, ConvexConePiece};
use crate::seminorms::PolyhedralSeminorm;
use crate::separation::{SeparationProblem, Variant};

/// `x(λ) = (1 − λ, λ)`.
pub fn segment_point(lambda: &Scalar) -> Vector {
    Vector::new(vec![Scalar::one() - lambda, lambda.clone()])
}

fn sector(lo: i64, hi: i64) -> ConvexConePiece {
    let a = segment_point(&Scalar::ratio(lo, 5));
    let b = segment_point(&Scalar::ratio(hi, 5));
    ConvexConePiece::from_generators(&[a, b], 2).expect("planar sector")
}

/// `R₊·[x(0), x(1/5)]`, `R₊·[x(2/5), x(3/5)]`, `R₊·[x(4/5), x(1)]`.
pub fn sectors() -> [ConvexConePiece; 3] {
    [sector(0, 1), sector(2, 3), sector(4, 5)]
}

pub fn default_gauge() -> PolyhedralSeminorm {
    PolyhedralSeminorm::regular_polygon_norm(8).expect("order 8 is valid")
}

#[derive(Clone, Debug)]
pub struct BundledInstance {
    pub name: &'static str,
    pub description: &'static str,
    pub problem: SeparationProblem,
}

/// `K = -(Ω¹ ∪ Ω³)`, `A = Ω²`: `-K` nonconvex, hulls meet.
pub fn sectors_nonconvex(psi: &PolyhedralSeminorm, variant: Variant) -> Result<SeparationProblem> {
    let [o1, o2, o3] = sectors();
    let k = ConeUnion::new(vec![o1.neg(), o3.neg()])?;
    let a = ConeUnion::convex(o2);
    SeparationProblem::new(k, a, psi.clone(), variant)
}

/// `K = -Ω²`, `A = Ω¹ ∪ Ω³`: `-K` convex, hulls disjoint.
pub fn sectors_convex(psi: &PolyhedralSeminorm, variant: Variant) -> Result<SeparationProblem> {
    let [o1, o2, o3] = sectors();
    let k = ConeUnion::convex(o2.neg());
    let a = ConeUnion::new(vec![o1, o3])?;
    SeparationProblem::new(k, a, psi.clone(), variant)
}

pub fn orthant_strict() -> Result<SeparationProblem> {
    SeparationProblem::new(
        ConeUnion::convex(ConvexConePiece::orthant(2)),
        ConeUnion::from_generator_lists(&[vec![Vector::from_ints(&[2, -1])]], 2)?,
        PolyhedralSeminorm::linf(2),
        Variant::Strict,
    )
}

pub fn orthant_weak() -> Result<SeparationProblem> {
    SeparationProblem::new(
        ConeUnion::convex(ConvexConePiece::orthant(2)),
        ConeUnion::from_generator_lists(&[vec![Vector::from_ints(&[0, 1])]], 2)?,
        PolyhedralSeminorm::linf(2),
        Variant::Weak,
    )
}

pub fn all(psi: &PolyhedralSeminorm) -> Result<Vec<BundledInstance>> {
    Ok(vec![
        BundledInstance {
            name: "sectors-convex",
            description: "-K = Ω², A = Ω¹ ∪ Ω³; strict separation holds",
            problem: sectors_convex(psi, Variant::Strict)?,
        },
        BundledInstance {
            name: "sectors-nonconvex",
            description: "-K = Ω¹ ∪ Ω³, A = Ω²; hulls meet although A ∩ cor(-K) = ∅",
            problem: sectors_nonconvex(psi, Variant::Strict)?,
        },
        BundledInstance {
            name: "orthant-strict",
            description: "K = R²₊, A = cone{(2,-1)}, ℓ∞",
            problem: orthant_strict()?,
        },
        BundledInstance {
            name: "orthant-weak",
            description: "K = R²₊, A = cone{(0,1)}, ℓ∞",
            problem: orthant_weak()?,
        },
    ])
}
