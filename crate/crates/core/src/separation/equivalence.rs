use serde::Serialize;

use crate::augdual::Verdict;
use crate::error::{Error, Result};
use crate::numerics::{hull_intersection, point_in_hull, Vector};
use crate::polyhedra::{ConeUnion, ConvexConePiece, Region};

use super::drivers::{separate_proper, separate_strict};
use super::hypotheses::check_hypotheses;
use super::{SeparationProblem, Variant};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub label: String,
    pub statement: String,
    pub value: Verdict,
    pub witness: Option<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub from: String,
    pub to: String,
    /// False only when `from` holds and `to` fails.
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceBlock {
    pub name: String,
    /// Standing assumptions of the block are met.
    pub applicable: bool,
    pub convex: bool,
    pub assertions: Vec<Assertion>,
    pub implications: Vec<Implication>,
}

impl EquivalenceBlock {
    fn new(name: &str, applicable: bool, convex: bool, assertions: Vec<Assertion>) -> Self {
        let mut implications = Vec::new();
        for a in &assertions {
            for b in &assertions {
                if a.label != b.label {
                    implications.push(Implication {
                        from: a.label.clone(),
                        to: b.label.clone(),
                        holds: !(a.value == Verdict::Yes && b.value == Verdict::No),
                    });
                }
            }
        }
        EquivalenceBlock {
            name: name.into(),
            applicable,
            convex,
            assertions,
            implications,
        }
    }

    pub fn value(&self, label: &str) -> Option<Verdict> {
        self.assertions.iter().find(|a| a.label == label).map(|a| a.value)
    }

    /// Every assertion has the same definite value.
    pub fn all_agree(&self) -> bool {
        let first = self.assertions.first().map(|a| a.value);
        first != Some(Verdict::Unsupported) && self.assertions.iter().all(|a| Some(a.value) == first)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub strict: EquivalenceBlock,
    pub proper: EquivalenceBlock,
}

fn assertion(label: &str, statement: &str, value: Verdict, witness: Option<Vector>) -> Assertion {
    Assertion {
        label: label.into(),
        statement: statement.into(),
        value,
        witness,
    }
}

/// A nonzero point of `A ∩ (-K)`.
fn cones_meet(a: &ConeUnion, minus_k: &ConeUnion) -> Result<Option<Vector>> {
    for p in a.pieces() {
        for q in minus_k.pieces() {
            let mut region = Region::from_piece(p);
            region.equalities.extend(q.equalities().iter().cloned());
            region.closed.extend(q.inequalities().iter().cloned());
            if let Some(w) = region.witness(a.dim())? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// A point of `A` interior to some full-dimensional piece of `-K`.
fn meets_piece_interiors(a: &ConeUnion, minus_k: &ConeUnion) -> Result<Option<Vector>> {
    for q in minus_k.pieces().iter().filter(|q| q.is_full_dim()) {
        for p in a.pieces() {
            let mut region = Region::from_piece(p);
            for f in q.inequalities() {
                region = region.with_strict(f.clone());
            }
            if let Some(w) = region.witness(a.dim())? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// The interior of the union is the union of the piece interiors when
/// full-dimensional pieces meet in codimension at least two.
fn interior_is_piecewise(u: &ConeUnion) -> Result<bool> {
    let full: Vec<&ConvexConePiece> = u.pieces().iter().filter(|p| p.is_full_dim()).collect();
    for (i, p) in full.iter().enumerate() {
        for q in full.iter().skip(i + 1) {
            if p.intersect(q)?.span_dim() + 2 > u.dim() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn strict_block(problem: &SeparationProblem, convex: bool) -> Result<EquivalenceBlock> {
    let p = problem.with_variant(Variant::Strict);
    let sa = p.s_a0()?;
    let sk = p.s_minus_k()?;
    let pointed = p.k.is_pointed()?;

    let meet = hull_intersection(&sa, &sk);
    let a1 = assertion(
        "1°",
        "cl S_A^0 ∩ cl S_{-K} = ∅",
        Verdict::from_bool(meet.is_none()),
        meet.map(|m| m.0),
    );

    let a2 = match separate_strict(&p) {
        Ok(cert) => assertion(
            "2°",
            "(x*, α) ∈ K^{a#} with α > 0 separates strictly",
            Verdict::from_bool(cert.verification.passed),
            None,
        ),
        Err(Error::HypothesisFailed(_)) | Err(Error::NotPointed(_)) => assertion(
            "2°",
            "(x*, α) ∈ K^{a#} with α > 0 separates strictly",
            Verdict::No,
            None,
        ),
        Err(e) => return Err(e),
    };

    let common = cones_meet(&p.a, &p.minus_k())?;
    let origin_in = point_in_hull(&sk, &Vector::zeros(p.dim()))?.is_member();
    let a3 = assertion(
        "3°",
        "A ∩ (-K ∖ {0}) = ∅ and 0 ∉ cl S_{-K}",
        Verdict::from_bool(common.is_none() && !origin_in),
        common,
    );
    Ok(EquivalenceBlock::new("strict", pointed, convex, vec![a1, a2, a3]))
}

fn proper_block(problem: &SeparationProblem, convex: bool) -> Result<EquivalenceBlock> {
    let p = problem.with_variant(Variant::Proper);
    let report = check_hypotheses(&p)?;
    let applicable = report.k_solid && report.s_minus_k_solid;
    let minus_k = p.minus_k();

    let f1 = report.deciding();
    let a1 = assertion(
        "1°",
        "S_A^0 ∩ cor S_{-K} = ∅",
        if report.s_minus_k_solid {
            Verdict::from_bool(f1.disjoint)
        } else {
            Verdict::Unsupported
        },
        f1.common_point.as_ref().map(|c| c.point.clone()),
    );

    let (v2, w2) = if minus_k.is_convex()? {
        let hull = ConeUnion::convex(minus_k.convex_hull()?);
        let w = meets_piece_interiors(&p.a, &hull)?;
        (Verdict::from_bool(w.is_none()), w)
    } else {
        match meets_piece_interiors(&p.a, &minus_k)? {
            Some(w) => (Verdict::No, Some(w)),
            None if interior_is_piecewise(&minus_k)? => (Verdict::Yes, None),
            None => (Verdict::Unsupported, None),
        }
    };
    let a2 = assertion("2°", "A ∩ cor(-K) = ∅", v2, w2);

    let mut rows = p.a.all_generators();
    rows.extend(p.k.all_generators());
    let dual = ConvexConePiece::from_inequalities(&rows, p.dim())?;
    let x3 = dual.generators().into_iter().next();
    let a3 = assertion(
        "3°",
        "x' ∈ K⁺ ∖ {0} with x' ≥ 0 on A and x' < 0 on cor(-K)",
        Verdict::from_bool(x3.is_some() && report.k_solid),
        x3.clone(),
    );

    let constructed = if applicable {
        match separate_proper(&p) {
            Ok(cert) => cert.verification.passed,
            Err(Error::HypothesisFailed(_)) | Err(Error::NotSolid) => false,
            Err(e) => return Err(e),
        }
    } else {
        false
    };
    let v4 = if constructed || a3.value == Verdict::Yes {
        Verdict::Yes
    } else if convex || v2 == Verdict::No {
        Verdict::No
    } else {
        Verdict::Unsupported
    };
    let a4 = assertion(
        "4°",
        "(x', α) ∈ K^{a◦} with φ ≥ 0 on A and φ < 0 on cor(-K)",
        v4,
        None,
    );
    Ok(EquivalenceBlock::new("proper", applicable, convex, vec![a1, a2, a3, a4]))
}

pub fn equivalence_report(problem: &SeparationProblem) -> Result<EquivalenceReport> {
    let convex = problem.k.is_convex()? && problem.a.is_convex()?;
    Ok(EquivalenceReport {
        strict: strict_block(problem, convex)?,
        proper: proper_block(problem, convex)?,
    })
}
