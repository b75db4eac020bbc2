//! Exact set differences of polyhedral cones.
//!
//! A region is `{x : e·x = 0, a·x ≥ 0, s·x > 0}`. The difference of a region
//! and a union of closed convex cones is split into regions by branching on
//! the first violated constraint of each removed piece; empty branches are
//! pruned by a linear program.

use crate::error::Result;
use crate::numerics::{LinearProgram, LpOutcome, Relation, Scalar, Sense, Vector};

use super::cone::ConvexConePiece;

#[derive(Clone, Debug, Default)]
pub struct Region {
    pub equalities: Vec<Vector>,
    pub closed: Vec<Vector>,
    pub strict: Vec<Vector>,
}

impl Region {
    pub fn from_piece(piece: &ConvexConePiece) -> Self {
        Region {
            equalities: piece.equalities().to_vec(),
            closed: piece.inequalities().to_vec(),
            strict: Vec::new(),
        }
    }

    pub fn with_closed(mut self, row: Vector) -> Self {
        self.closed.push(row);
        self
    }

    pub fn with_strict(mut self, row: Vector) -> Self {
        self.strict.push(row);
        self
    }

    /// A nonzero point of the region, if one exists.
    pub fn witness(&self, dim: usize) -> Result<Option<Vector>> {
        if self.strict.is_empty() {
            let piece = ConvexConePiece::from_facets(&self.equalities, &self.closed, dim)?;
            return Ok(piece.generators().into_iter().next());
        }
        // max t with s·x ≥ t, t ≤ 1
        let nv = dim + 1;
        let mut lp = LinearProgram::new(nv, Sense::Max);
        lp.set_all_free();
        lp.set_objective(Vector::unit(nv, dim));
        let widen = |r: &Vector, t: i64| {
            let mut c = r.coords().to_vec();
            c.push(Scalar::from_int(t));
            Vector::new(c)
        };
        for e in &self.equalities {
            lp.add(widen(e, 0), Relation::Eq, Scalar::zero());
        }
        for a in &self.closed {
            lp.add(widen(a, 0), Relation::Ge, Scalar::zero());
        }
        for s in &self.strict {
            lp.add(widen(s, -1), Relation::Ge, Scalar::zero());
        }
        lp.add(Vector::unit(nv, dim), Relation::Le, Scalar::one());
        match lp.solve() {
            LpOutcome::Optimal { x, value, .. } if value.is_positive() => Ok(Some(Vector::new(
                x.coords()[..dim].to_vec(),
            ))),
            _ => Ok(None),
        }
    }
}

/// A nonzero point of `region` outside every piece, if one exists.
pub fn difference_witness(
    region: &Region,
    remove: &[ConvexConePiece],
    dim: usize,
) -> Result<Option<Vector>> {
    let Some(seed) = region.witness(dim)? else {
        return Ok(None);
    };
    let Some((piece, rest)) = remove.split_first() else {
        return Ok(Some(seed));
    };
    if !piece.contains(&seed) && rest.iter().all(|p| !p.contains(&seed)) {
        return Ok(Some(seed));
    }
    let rows = piece.constraint_rows();
    let mut base = region.clone();
    for f in rows {
        let branch = base.clone().with_strict(f.neg());
        if let Some(w) = difference_witness(&branch, rest, dim)? {
            return Ok(Some(w));
        }
        base = base.with_closed(f);
    }
    Ok(None)
}
