use serde::Serialize;

use crate::error::Result;
use crate::numerics::{
    hull_intersection, point_in_hull, separate_polytopes, Functional, PolytopeSeparation, Scalar,
    SeparationMode, Vector,
};

use super::{affine_dim, SeparationProblem, Variant};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    pub f: Functional,
    pub beta: Scalar,
    pub gamma: Scalar,
}

/// A point of both hulls with convex weights for each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommonPoint {
    pub point: Vector,
    pub a_weights: Vec<Scalar>,
    pub k_weights: Vec<Scalar>,
    /// Smallest weight; positive means the point is relatively interior
    /// to both hulls.
    pub min_weight: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub name: String,
    pub applicable: bool,
    pub disjoint: bool,
    pub separator: Option<Hyperplane>,
    pub common_point: Option<CommonPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub variant: Variant,
    pub s_a0: Vec<Vector>,
    pub s_minus_k: Vec<Vector>,
    pub k_solid: bool,
    pub s_minus_k_solid: bool,
    pub s_a0_solid: bool,
    pub k_pointed: bool,
    pub lineality_witness: Option<Vector>,
    pub origin_in_s_minus_k: bool,
    pub findings: Vec<Finding>,
    /// Bases of polyhedral cones under a normlike gauge are compact, so the
    /// compactness clauses always hold.
    pub compact: bool,
    pub holds: bool,
}

impl HypothesisReport {
    pub fn finding(&self, name: &str) -> Option<&Finding> {
        self.findings.iter().find(|f| f.name == name)
    }

    /// The finding that decides the variant.
    pub fn deciding(&self) -> &Finding {
        let name = match self.variant {
            Variant::Weak => "icor_vs_icor",
            Variant::Proper => "sa0_vs_cor_s_minus_k",
            Variant::Strict | Variant::StrictBoundary => "closed_hulls",
        };
        self.finding(name).expect("all findings are recorded")
    }
}

fn separator(sa: &[Vector], sk: &[Vector], mode: SeparationMode) -> Result<Option<Hyperplane>> {
    Ok(match separate_polytopes(sa, sk, mode)? {
        PolytopeSeparation::Separated { f, beta, gamma, .. } => Some(Hyperplane { f, beta, gamma }),
        PolytopeSeparation::Inseparable { .. } => None,
    })
}

pub fn check_hypotheses(problem: &SeparationProblem) -> Result<HypothesisReport> {
    let n = problem.dim();
    let sa = problem.s_a0()?;
    let sk = problem.s_minus_k()?;
    let s_a0_solid = affine_dim(&sa) == n;
    let s_minus_k_solid = affine_dim(&sk) == n;
    let k_solid = problem.k.is_solid();
    let lineality_witness = problem.k.lineality_witness()?;
    let origin_in_s_minus_k = point_in_hull(&sk, &Vector::zeros(n))?.is_member();

    let common = hull_intersection(&sa, &sk).map(|(point, a_weights, k_weights, min_weight)| {
        CommonPoint {
            point,
            a_weights,
            k_weights,
            min_weight,
        }
    });
    let ri_meet = common.as_ref().filter(|c| c.min_weight.is_positive()).cloned();
    let weak_sep = if ri_meet.is_none() {
        separator(&sa, &sk, SeparationMode::Weak)?
    } else {
        None
    };
    let strict_sep = if common.is_none() {
        separator(&sa, &sk, SeparationMode::Strict)?
    } else {
        None
    };

    // With one hull solid, meeting its interior is the same as meeting
    // relative interiors.
    let ri_finding = |name: &str, applicable: bool| Finding {
        name: name.into(),
        applicable,
        disjoint: ri_meet.is_none(),
        separator: weak_sep.clone(),
        common_point: ri_meet.clone(),
    };
    let findings = vec![
        ri_finding("sa0_vs_cor_s_minus_k", s_minus_k_solid),
        ri_finding("cor_sa0_vs_s_minus_k", s_a0_solid),
        ri_finding("icor_vs_icor", true),
        Finding {
            name: "closed_hulls".into(),
            applicable: true,
            disjoint: common.is_none(),
            separator: strict_sep,
            common_point: common,
        },
    ];
    let k_pointed = lineality_witness.is_none();
    let mut report = HypothesisReport {
        variant: problem.variant,
        s_a0: sa,
        s_minus_k: sk,
        k_solid,
        s_minus_k_solid,
        s_a0_solid,
        k_pointed,
        lineality_witness,
        origin_in_s_minus_k,
        findings,
        compact: true,
        holds: false,
    };
    let decided = report.deciding().disjoint;
    report.holds = match problem.variant {
        Variant::Weak => decided,
        Variant::Proper => k_solid && s_minus_k_solid && decided,
        Variant::Strict | Variant::StrictBoundary => k_pointed && decided,
    };
    Ok(report)
}
