use serde::Serialize;

use crate::error::Result;
use crate::numerics::Vector;
use crate::polyhedra::{ConeUnion, ConvexConePiece, Region};

use super::SeparationClass;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationByConesVerdict {
    pub weak: bool,
    pub proper: bool,
    pub strict: bool,
    pub achieved: SeparationClass,
    /// Named points explaining failed or satisfied clauses.
    pub witnesses: Vec<(String, Vector)>,
}

/// A nonzero point of `piece` in the interior of `c`.
fn meets_interior(piece: &ConvexConePiece, c: &ConvexConePiece) -> Result<Option<Vector>> {
    if c.is_whole_space() {
        return Ok(piece.generators().into_iter().next());
    }
    if !c.is_full_dim() {
        return Ok(None);
    }
    let mut region = Region::from_piece(piece);
    for f in c.inequalities() {
        region = region.with_strict(f.clone());
    }
    region.witness(c.dim())
}

/// A nonzero point of `piece` outside `int c`.
fn leaves_interior(piece: &ConvexConePiece, c: &ConvexConePiece) -> Result<Option<Vector>> {
    if c.is_whole_space() {
        return Ok(None);
    }
    if !c.is_full_dim() {
        return Ok(piece.generators().into_iter().next());
    }
    for f in c.inequalities() {
        let region = Region::from_piece(piece).with_closed(f.neg());
        if let Some(w) = region.witness(c.dim())? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// A nonzero point of `piece ∩ c`.
fn meets(piece: &ConvexConePiece, c: &ConvexConePiece) -> Result<Option<Vector>> {
    let mut region = Region::from_piece(piece);
    region.equalities.extend(c.equalities().iter().cloned());
    region.closed.extend(c.inequalities().iter().cloned());
    region.witness(c.dim())
}

/// How the closed convex cone `c` separates `omega1` (inside) from
/// `omega2` (outside).
pub fn classify_separation(
    omega1: &ConeUnion,
    omega2: &ConeUnion,
    c: &ConvexConePiece,
) -> Result<SeparationByConesVerdict> {
    let mut witnesses = Vec::new();

    let outside_c = omega1
        .pieces()
        .iter()
        .flat_map(|p| p.generators())
        .find(|g| !c.contains(g));
    let mut into_interior = None;
    if c.is_whole_space() {
        into_interior = Some(Vector::zeros(c.dim()));
    } else {
        for q in omega2.pieces() {
            if let Some(w) = meets_interior(q, c)? {
                into_interior = Some(w);
                break;
            }
        }
    }
    let weak = outside_c.is_none() && into_interior.is_none();
    if let Some(w) = outside_c {
        witnesses.push(("omega1_outside_c".to_string(), w));
    }
    if let Some(w) = into_interior {
        witnesses.push(("omega2_in_interior".to_string(), w));
    }

    let mut off_boundary = None;
    for p in omega1.pieces().iter().chain(omega2.pieces()) {
        if let Some(g) = p.generators().into_iter().find(|g| !c.contains(g)) {
            off_boundary = Some(g);
            break;
        }
        if let Some(w) = meets_interior(p, c)? {
            off_boundary = Some(w);
            break;
        }
    }
    let proper = weak && off_boundary.is_some();
    if let Some(w) = off_boundary {
        witnesses.push(("off_boundary".to_string(), w));
    }

    let mut strict_fail = None;
    for p in omega1.pieces() {
        if let Some(w) = leaves_interior(p, c)? {
            strict_fail = Some(("omega1_not_interior".to_string(), w));
            break;
        }
    }
    if strict_fail.is_none() {
        for q in omega2.pieces() {
            if let Some(w) = meets(q, c)? {
                strict_fail = Some(("omega2_meets_c".to_string(), w));
                break;
            }
        }
    }
    let strict = proper && strict_fail.is_none();
    witnesses.extend(strict_fail);

    let achieved = if strict {
        SeparationClass::Strict
    } else if proper {
        SeparationClass::Proper
    } else if weak {
        SeparationClass::Weak
    } else {
        SeparationClass::None
    };
    Ok(SeparationByConesVerdict {
        weak,
        proper,
        strict,
        achieved,
        witnesses,
    })
}
