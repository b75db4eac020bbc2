use crate::augdual::{classify_augmented, AugmentedFunctional};
use crate::error::{Error, Result};
use crate::numerics::Scalar;

use super::hypotheses::{check_hypotheses, Hyperplane, HypothesisReport};
use super::verify::{verify_certificate, VerificationReport};
use super::{SeparatingHyperplane, SeparationCertificate, SeparationClass, SeparationProblem, Variant};

pub fn separate(problem: &SeparationProblem) -> Result<SeparationCertificate> {
    match problem.variant {
        Variant::Weak => separate_weak(problem),
        Variant::Proper => separate_proper(problem),
        Variant::Strict => separate_strict(problem),
        Variant::StrictBoundary => separate_strict_boundary(problem),
    }
}

fn failed(report: HypothesisReport) -> Error {
    Error::HypothesisFailed(Box::new(report))
}

/// `(f, -δ)` with `δ` the midpoint of `[γ, β]`, then verified.
fn certify(problem: &SeparationProblem, hp: Hyperplane) -> Result<SeparationCertificate> {
    let delta = (&hp.beta + &hp.gamma) / Scalar::from_int(2);
    let alpha = -&delta;
    let aug = AugmentedFunctional::new(hp.f.clone(), alpha)?;
    let aug_class = classify_augmented(&problem.k, &problem.psi, &aug)?;
    let linear = aug.alpha.is_zero();
    let mut cert = SeparationCertificate {
        variant: problem.variant,
        aug,
        aug_class,
        hyperplane: SeparatingHyperplane {
            f: hp.f,
            beta: hp.beta,
            gamma: hp.gamma,
            delta,
        },
        verification: VerificationReport::default(),
        achieved: SeparationClass::None,
        linear,
    };
    cert.verification = verify_certificate(problem, &cert);
    cert.achieved = cert.verification.achieved;
    Ok(cert)
}

fn run(problem: &SeparationProblem) -> Result<SeparationCertificate> {
    let report = check_hypotheses(problem)?;
    if !report.holds {
        return Err(failed(report));
    }
    let hp = report
        .deciding()
        .separator
        .clone()
        .expect("disjoint findings carry a separator");
    certify(problem, hp)
}

pub fn separate_weak(problem: &SeparationProblem) -> Result<SeparationCertificate> {
    run(&problem.with_variant(Variant::Weak))
}

pub fn separate_proper(problem: &SeparationProblem) -> Result<SeparationCertificate> {
    let problem = problem.with_variant(Variant::Proper);
    let report = check_hypotheses(&problem)?;
    if !report.k_solid || !report.s_minus_k_solid {
        return Err(Error::NotSolid);
    }
    if !report.holds {
        return Err(failed(report));
    }
    let hp = report.deciding().separator.clone().expect("disjoint");
    certify(&problem, hp)
}

fn strict_like(problem: &SeparationProblem) -> Result<SeparationCertificate> {
    if let Some(w) = problem.k.lineality_witness()? {
        return Err(Error::NotPointed(w));
    }
    run(problem)
}

pub fn separate_strict(problem: &SeparationProblem) -> Result<SeparationCertificate> {
    strict_like(&problem.with_variant(Variant::Strict))
}

pub fn separate_strict_boundary(problem: &SeparationProblem) -> Result<SeparationCertificate> {
    strict_like(&problem.with_variant(Variant::StrictBoundary))
}
