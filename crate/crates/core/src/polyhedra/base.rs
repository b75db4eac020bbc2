//! Bases of cones under a seminorm and the dual sets `K⁺`, `K^#`, `K^&`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{Functional, Scalar, Vector};
use crate::seminorms::PolyhedralSeminorm;

use super::cone::{ConeUnion, ConvexConePiece};
use super::dd::vertex_enumeration;
use super::region::{difference_witness, Region};

/// Vertex set of `conv{x ∈ K : ψ(x) = 1}`, optionally with the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasePolytope {
    /// Points with `ψ = 1`, sorted.
    pub vertices: Vec<Vector>,
    pub includes_origin: bool,
}

impl BasePolytope {
    /// Every hull point, the origin included when flagged.
    pub fn points(&self) -> Vec<Vector> {
        let mut p = self.vertices.clone();
        if self.includes_origin {
            if let Some(first) = self.vertices.first() {
                p.push(Vector::zeros(first.dim()));
            }
        }
        p
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `min f` over the `ψ = 1` vertices with the attaining vertex.
    pub fn min_of(&self, f: &Functional) -> Option<(Scalar, Vector)> {
        f.min_over(&self.vertices)
            .map(|(v, i)| (v, self.vertices[i].clone()))
    }

    /// `max f` over the `ψ = 1` vertices with the attaining vertex.
    pub fn max_of(&self, f: &Functional) -> Option<(Scalar, Vector)> {
        f.max_over(&self.vertices)
            .map(|(v, i)| (v, self.vertices[i].clone()))
    }
}

/// A nonzero point of `piece` on which `ψ` vanishes.
fn kernel_point(piece: &ConvexConePiece, psi: &PolyhedralSeminorm) -> Result<Option<Vector>> {
    let kernel = psi.kernel();
    if kernel.is_empty() || piece.is_zero() {
        return Ok(None);
    }
    piece.meets_span(&kernel)
}

/// Fails with `NotNormlike` unless `ψ > 0` on `K ∖ {0}`.
pub fn check_normlike(k: &ConeUnion, psi: &PolyhedralSeminorm) -> Result<()> {
    if psi.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: psi.dim(),
        });
    }
    for p in k.pieces() {
        if let Some(w) = kernel_point(p, psi)? {
            return Err(Error::NotNormlike(w));
        }
    }
    Ok(())
}

/// Vertices of `piece ∩ {ψ ≤ 1}` lying on `ψ = 1`.
pub fn piece_base_vertices(piece: &ConvexConePiece, psi: &PolyhedralSeminorm) -> Result<Vec<Vector>> {
    if piece.is_zero() {
        return Ok(Vec::new());
    }
    let mut cons: Vec<(Vector, Scalar)> = piece
        .constraint_rows()
        .into_iter()
        .map(|f| (f.neg(), Scalar::zero()))
        .collect();
    cons.extend(
        psi.generators()
            .iter()
            .map(|c| (c.coeffs().clone(), Scalar::one())),
    );
    let vs = vertex_enumeration(&cons, piece.dim())?;
    Ok(vs
        .into_iter()
        .filter(|v| psi.value(v) == Scalar::one())
        .collect())
}

/// `S_K = conv(B_K)`, or `conv(B_K ∪ {0})` when `augment_origin` is set.
pub fn base_polytope(
    k: &ConeUnion,
    psi: &PolyhedralSeminorm,
    augment_origin: bool,
) -> Result<BasePolytope> {
    check_normlike(k, psi)?;
    let mut vertices = Vec::new();
    for p in k.pieces() {
        vertices.extend(piece_base_vertices(p, psi)?);
    }
    vertices.sort();
    vertices.dedup();
    Ok(BasePolytope {
        vertices,
        includes_origin: augment_origin,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseKind {
    NormBase,
    NormlikeBase,
    SeminormBase,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseClassification {
    pub kind: BaseKind,
    /// `K ∩ {ψ = 0}` for a seminorm-base.
    pub degenerate_part: Option<ConeUnion>,
}

pub fn classify_base(k: &ConeUnion, psi: &PolyhedralSeminorm) -> Result<BaseClassification> {
    if k.is_zero() {
        return Ok(BaseClassification {
            kind: BaseKind::None,
            degenerate_part: None,
        });
    }
    if psi.is_norm() {
        return Ok(BaseClassification {
            kind: BaseKind::NormBase,
            degenerate_part: None,
        });
    }
    let kernel = psi.kernel();
    let complement = crate::numerics::nullspace_basis(&kernel, k.dim());
    let ker_cone = ConvexConePiece::from_facets(&complement, &[], k.dim())?;
    let mut parts = Vec::new();
    for p in k.pieces() {
        let q = p.intersect(&ker_cone)?;
        if !q.is_zero() {
            parts.push(q);
        }
    }
    if parts.is_empty() {
        return Ok(BaseClassification {
            kind: BaseKind::NormlikeBase,
            degenerate_part: None,
        });
    }
    Ok(BaseClassification {
        kind: BaseKind::SeminormBase,
        degenerate_part: Some(ConeUnion::new(parts)?),
    })
}

/// `x* ≥ 0` on every generator of `K`.
pub fn in_k_plus(k: &ConeUnion, x_star: &Functional) -> bool {
    k.all_generators().iter().all(|g| !x_star.apply(g).is_negative())
}

/// `x* > 0` on `K ∖ {0}`, decided on the base polytope vertices.
pub fn in_k_sharp(k: &ConeUnion, psi: &PolyhedralSeminorm, x_star: &Functional) -> Result<bool> {
    let s = base_polytope(k, psi, false)?;
    Ok(match s.min_of(x_star) {
        Some((m, _)) => m.is_positive(),
        None => true,
    })
}

/// `x* > 0` on `K ∖ ℓ(K)`, decided exactly by a region difference. Returns
/// a violating point when membership fails.
pub fn k_amp_violation(k: &ConeUnion, x_star: &Functional) -> Result<Option<Vector>> {
    let lin = k.lineality()?;
    let dim = k.dim();
    for p in k.pieces() {
        let bad = Region::from_piece(p).with_closed(x_star.neg().into_coeffs());
        if let Some(w) = difference_witness(&bad, lin.cone.pieces(), dim)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn in_k_amp(k: &ConeUnion, psi: &PolyhedralSeminorm, x_star: &Functional) -> Result<bool> {
    check_normlike(k, psi)?;
    Ok(k_amp_violation(k, x_star)?.is_none())
}
