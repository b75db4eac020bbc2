//! Boundary of a solid union of convex cones, as a union of facet cones.

use crate::error::{Error, Result};
use crate::numerics::Vector;

use super::cone::{ConeUnion, ConvexConePiece};
use super::region::{difference_witness, Region};

/// Does `piece` contain `z + εd` for all small `ε > 0`?
fn contains_nudged(piece: &ConvexConePiece, z: &Vector, d: &Vector) -> bool {
    piece.constraint_rows().iter().all(|g| {
        let gz = g.dot(z);
        gz.is_positive() || (gz.is_zero() && !g.dot(d).is_negative())
    })
}

/// Is `P ∩ Q` a face of `P`?
fn meets_in_face(p: &ConvexConePiece, q: &ConvexConePiece) -> Result<bool> {
    let inter = p.intersect(q)?;
    let gens = inter.generators();
    let tight: Vec<Vector> = p
        .inequalities()
        .iter()
        .filter(|f| gens.iter().all(|g| f.dot(g).is_zero()))
        .cloned()
        .collect();
    let mut eq = p.equalities().to_vec();
    eq.extend(tight);
    let face = ConvexConePiece::from_facets(&eq, p.inequalities(), p.dim())?;
    Ok(face == inter)
}

/// Facet cones of `piece`, with facets that are lines in the plane split
/// into their two rays.
fn facet_cones(piece: &ConvexConePiece) -> Result<Vec<(ConvexConePiece, Vector)>> {
    let dim = piece.dim();
    let mut out = Vec::new();
    for f in piece.inequalities() {
        let face = piece.face(&crate::numerics::Functional::new(f.clone()))?;
        if dim == 2 && !face.lineality_basis().is_empty() {
            let l = &face.lineality_basis()[0];
            for r in [l.clone(), l.neg()] {
                out.push((ConvexConePiece::from_generators(&[r], dim)?, f.clone()));
            }
        } else {
            out.push((face, f.clone()));
        }
    }
    Ok(out)
}

fn interior_point(face: &ConvexConePiece) -> Vector {
    face.lineality_basis()
        .iter()
        .fold(face.relative_interior_point(), |acc, l| acc.add(l))
}

/// `bd A` for a solid union `A`.
///
/// Exact in the plane. In higher dimension the full-dimensional pieces must
/// pairwise meet in common faces.
pub fn boundary_cone(a: &ConeUnion) -> Result<ConeUnion> {
    let dim = a.dim();
    let full: Vec<&ConvexConePiece> = a.pieces().iter().filter(|p| p.is_full_dim()).collect();
    if full.is_empty() {
        return Err(Error::NotSolid);
    }
    if dim >= 3 {
        for (i, p) in full.iter().enumerate() {
            for q in full.iter().skip(i + 1) {
                if !meets_in_face(p, q)? || !meets_in_face(q, p)? {
                    return Err(Error::UnsupportedOverlap(
                        "pieces overlap outside a common face".into(),
                    ));
                }
            }
        }
    }
    let full_owned: Vec<ConvexConePiece> = full.iter().map(|p| (*p).clone()).collect();
    for p in a.pieces().iter().filter(|p| !p.is_full_dim()) {
        let sticks_out = difference_witness(&Region::from_piece(p), &full_owned, dim)?;
        if sticks_out.is_some() {
            return Err(Error::UnsupportedOverlap(
                "a lower-dimensional piece leaves the solid part".into(),
            ));
        }
    }

    let mut pieces: Vec<ConvexConePiece> = Vec::new();
    for (i, p) in full.iter().enumerate() {
        for (face, f) in facet_cones(p)? {
            let z = interior_point(&face);
            let outward = f.neg();
            let covered = full
                .iter()
                .enumerate()
                .any(|(j, q)| j != i && contains_nudged(q, &z, &outward));
            if !covered && !pieces.contains(&face) {
                pieces.push(face);
            }
        }
    }
    if pieces.is_empty() {
        return Err(Error::NontrivialityViolated(
            "the cone has empty boundary".into(),
        ));
    }
    pieces.sort_by_key(|p| p.generators());
    ConeUnion::new(pieces)
}
