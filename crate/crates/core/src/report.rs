//! Cone analysis reports and the expected-verdict suite over the bundled
//! instances.

use serde::Serialize;
use serde_json::{json, Value};

use crate::augdual::{origin_exclusion_report, Verdict};
use crate::bundled;
use crate::error::{Error, Result};
use crate::io::{Instance, SeminormSpec};
use crate::numerics::Vector;
use crate::polyhedra::{classify_base, ConeUnion};
use crate::seminorms::PolyhedralSeminorm;
use crate::separation::{check_hypotheses, equivalence_report, separate, SeparationClass, Variant};

pub fn cone_analysis(c: &ConeUnion, psi: &PolyhedralSeminorm) -> Result<Value> {
    let lin = c.lineality()?;
    let dual = c.dual_cone()?;
    let base = classify_base(c, psi)?;
    let origin = if lin.pointed {
        serde_json::to_value(origin_exclusion_report(c, psi)?).expect("report serializes")
    } else {
        Value::Null
    };
    Ok(json!({
        "pieces": c.pieces().len(),
        "pointed": lin.pointed,
        "solid": c.is_solid(),
        "convex": c.is_convex()?,
        "lineality_generators": lin.cone.all_generators(),
        "lineality_is_subspace": lin.is_subspace,
        "dual_generators": dual.generators(),
        "base_kind": base.kind,
        "origin_exclusion": origin,
    }))
}

pub fn analyze(instance: &Instance) -> Result<Value> {
    let p = &instance.problem;
    Ok(json!({
        "dimension": p.dim(),
        "seminorm": instance.seminorm.to_json(),
        "seminorm_is_norm": p.psi.is_norm(),
        "cone_K": cone_analysis(&p.k, &p.psi)?,
        "cone_A": cone_analysis(&p.a, &p.psi)?,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    /// The gauge is too coarse for the instance to keep its solidity.
    DegenerateGauge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedVerdict {
    pub instance: String,
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub outcome: Outcome,
    pub witness: Option<Vector>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seminorm: Value,
    pub checks: Vec<ExpectedVerdict>,
    pub passed: bool,
    pub degenerate: bool,
}

fn entry(instance: &str, check: &str, expected: impl ToString, actual: impl ToString) -> ExpectedVerdict {
    let expected = expected.to_string();
    let actual = actual.to_string();
    let outcome = if expected == actual { Outcome::Pass } else { Outcome::Fail };
    ExpectedVerdict {
        instance: instance.into(),
        check: check.into(),
        expected,
        actual,
        outcome,
        witness: None,
        note: None,
    }
}

/// Outcome label of a driver run: the achieved class, or the error kind.
pub fn driver_outcome(problem: &crate::separation::SeparationProblem) -> (String, Option<Vector>) {
    match separate(problem) {
        Ok(c) if c.verification.passed => (format!("{:?}", c.achieved).to_lowercase(), None),
        Ok(_) => ("verification-failed".into(), None),
        Err(Error::HypothesisFailed(r)) => (
            "hypothesis-failed".into(),
            r.deciding().common_point.as_ref().map(|c| c.point.clone()),
        ),
        Err(Error::NotPointed(w)) => ("not-pointed".into(), Some(w)),
        Err(Error::NotSolid) => ("not-solid".into(), None),
        Err(e) => (format!("error: {e}"), None),
    }
}

fn verdict(v: Option<Verdict>) -> String {
    match v {
        Some(Verdict::Yes) => "yes".into(),
        Some(Verdict::No) => "no".into(),
        Some(Verdict::Unsupported) => "unsupported".into(),
        None => "missing".into(),
    }
}

/// Runs every expected verdict of the bundled instances under `seminorm`
/// (applied to the sector instances; orthant fixtures keep ℓ∞).
pub fn expected_verdict_suite(seminorm: &SeminormSpec) -> Result<SuiteReport> {
    let psi = seminorm.build(2)?;
    let mut checks = Vec::new();

    let name = "sectors-nonconvex";
    let p = bundled::sectors_nonconvex(&psi, Variant::Strict)?;
    let hyp = check_hypotheses(&p.with_variant(Variant::Proper))?;
    if !hyp.s_minus_k_solid {
        let mut e = entry(name, "s_minus_k_solid", true, false);
        e.outcome = Outcome::DegenerateGauge;
        e.note = Some("degenerate gauge: solidity hypothesis fails, S_{-K} is flat".into());
        checks.push(e);
    } else {
        let eq = equivalence_report(&p)?;
        let mut e = entry(name, "a_meets_cor_minus_k", "no", match eq.proper.value("2°") {
            Some(Verdict::Yes) => "no".to_string(),
            Some(Verdict::No) => "yes".to_string(),
            v => verdict(v),
        });
        e.witness = eq.proper.assertions[1].witness.clone();
        checks.push(e);
        let f = hyp.deciding();
        let mut e = entry(name, "sa0_meets_cor_s_minus_k", true, !f.disjoint);
        e.witness = f.common_point.as_ref().map(|c| c.point.clone());
        checks.push(e);
        let (out, w) = driver_outcome(&p);
        let mut e = entry(name, "strict_driver", "hypothesis-failed", out);
        e.witness = w;
        checks.push(e);
    }

    let name = "sectors-convex";
    let p = bundled::sectors_convex(&psi, Variant::Strict)?;
    match separate(&p) {
        Ok(c) => {
            checks.push(entry(name, "strict_driver", "strict", format!("{:?}", c.achieved).to_lowercase()));
            checks.push(entry(name, "alpha_positive", true, c.aug.alpha.is_positive()));
            checks.push(entry(name, "aug_a_sharp", "yes", verdict(Some(c.aug_class.a_sharp))));
            checks.push(entry(name, "verification", true, c.verification.passed));
        }
        Err(e) => checks.push(entry(name, "strict_driver", "strict", format!("error: {e}"))),
    }

    let name = "orthant-strict";
    let p = bundled::orthant_strict()?;
    checks.push(entry(name, "strict_driver", "strict", driver_outcome(&p).0));
    let eq = equivalence_report(&p)?;
    checks.push(entry(name, "strict_equivalence_all_yes", true, eq.strict.all_agree() && eq.strict.value("1°") == Some(Verdict::Yes)));

    let name = "orthant-weak";
    let p = bundled::orthant_weak()?;
    let (out, _) = driver_outcome(&p);
    let reached = matches!(out.as_str(), "weak" | "proper" | "strict");
    checks.push(entry(name, "weak_driver", true, reached));
    checks.push(entry(name, "proper_driver", "proper-or-better", match driver_outcome(&p.with_variant(Variant::Proper)).0.as_str() {
        "proper" | "strict" => "proper-or-better".to_string(),
        other => other.to_string(),
    }));
    checks.push(entry(name, "strict_driver", "strict", driver_outcome(&p.with_variant(Variant::Strict)).0));

    let degenerate = checks.iter().any(|c| c.outcome == Outcome::DegenerateGauge);
    let passed = checks.iter().all(|c| c.outcome == Outcome::Pass);
    Ok(SuiteReport {
        seminorm: seminorm.to_json(),
        checks,
        passed,
        degenerate,
    })
}

/// The achieved class as a lowercase word.
pub fn class_name(c: SeparationClass) -> &'static str {
    match c {
        SeparationClass::None => "none",
        SeparationClass::Weak => "weak",
        SeparationClass::Proper => "proper",
        SeparationClass::Strict => "strict",
    }
}
