//! Nonlinear separation of two cones by `{x : x*(x) + αψ(x) = 0}`.

mod classify;
mod drivers;
mod equivalence;
mod hypotheses;
mod verify;

pub use classify::{classify_separation, SeparationByConesVerdict};
pub use drivers::{separate, separate_proper, separate_strict, separate_strict_boundary, separate_weak};
pub use equivalence::{equivalence_report, Assertion, EquivalenceBlock, EquivalenceReport, Implication};
pub use hypotheses::{check_hypotheses, CommonPoint, Finding, HypothesisReport, Hyperplane};
pub use verify::{verify_certificate, Check, VerificationReport};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::augdual::{AugDualClass, AugmentedFunctional};
use crate::error::{Error, Result};
use crate::numerics::{Scalar, Vector};
use crate::polyhedra::{base_polytope, boundary_cone, check_normlike, ConeUnion};
use crate::seminorms::PolyhedralSeminorm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Weak,
    Proper,
    Strict,
    StrictBoundary,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(Variant::Weak),
            "proper" => Ok(Variant::Proper),
            "strict" => Ok(Variant::Strict),
            "strict-boundary" | "strict_boundary" => Ok(Variant::StrictBoundary),
            other => Err(Error::parse("variant", format!("unknown variant `{other}`"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Weak => "weak",
            Variant::Proper => "proper",
            Variant::Strict => "strict",
            Variant::StrictBoundary => "strict-boundary",
        }
    }

    /// Separation class a certificate of this variant must reach.
    pub fn target(self) -> SeparationClass {
        match self {
            Variant::Weak => SeparationClass::Weak,
            Variant::Proper => SeparationClass::Proper,
            Variant::Strict | Variant::StrictBoundary => SeparationClass::Strict,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeparationClass {
    #[default]
    None,
    Weak,
    Proper,
    Strict,
}

/// Cones `K`, `A` and the gauge `ψ`; the pair `-K`, `A` is to be separated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationProblem {
    pub k: ConeUnion,
    pub a: ConeUnion,
    pub psi: PolyhedralSeminorm,
    pub variant: Variant,
}

impl SeparationProblem {
    pub fn new(k: ConeUnion, a: ConeUnion, psi: PolyhedralSeminorm, variant: Variant) -> Result<Self> {
        for found in [a.dim(), psi.dim()] {
            if found != k.dim() {
                return Err(Error::DimensionMismatch {
                    expected: k.dim(),
                    found,
                });
            }
        }
        k.check_nontrivial("K")?;
        a.check_nontrivial("A")?;
        check_normlike(&k, &psi)?;
        check_normlike(&a, &psi)?;
        Ok(SeparationProblem { k, a, psi, variant })
    }

    pub fn dim(&self) -> usize {
        self.k.dim()
    }

    pub fn with_variant(&self, variant: Variant) -> Self {
        SeparationProblem {
            variant,
            ..self.clone()
        }
    }

    /// `A`, or `bd A` for the boundary variant.
    pub fn separated_cone(&self) -> Result<ConeUnion> {
        match self.variant {
            Variant::StrictBoundary => {
                let b = boundary_cone(&self.a)?;
                b.check_nontrivial("bd A")?;
                Ok(b)
            }
            _ => Ok(self.a.clone()),
        }
    }

    /// `-K`.
    pub fn minus_k(&self) -> ConeUnion {
        self.k.neg()
    }

    /// Vertices of `S_{-K} = conv(-B_K)`.
    pub fn s_minus_k(&self) -> Result<Vec<Vector>> {
        let mut v: Vec<Vector> = base_polytope(&self.k, &self.psi, false)?
            .vertices
            .iter()
            .map(Vector::neg)
            .collect();
        v.sort();
        Ok(v)
    }

    /// Points spanning `S_A^0 = conv(B_A ∪ {0})`, the origin last.
    pub fn s_a0(&self) -> Result<Vec<Vector>> {
        let a = self.separated_cone()?;
        Ok(base_polytope(&a, &self.psi, true)?.points())
    }
}

/// `f ≥ β` on `S_A^0`, `f ≤ γ` on `S_{-K}`, and the chosen level `δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparatingHyperplane {
    pub f: crate::numerics::Functional,
    pub beta: Scalar,
    pub gamma: Scalar,
    pub delta: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationCertificate {
    pub variant: Variant,
    pub aug: AugmentedFunctional,
    pub aug_class: AugDualClass,
    pub hyperplane: SeparatingHyperplane,
    pub verification: VerificationReport,
    pub achieved: SeparationClass,
    /// `α = 0`: the surface is a hyperplane.
    pub linear: bool,
}

/// Dimension of the affine hull of a point set.
pub(crate) fn affine_dim(points: &[Vector]) -> usize {
    let Some(p0) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vector> = points.iter().map(|p| p.sub(p0)).collect();
    crate::numerics::rank(&diffs, p0.dim())
}
