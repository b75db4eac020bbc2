use serde::Serialize;

use crate::augdual::{bp_class, classify_augmented, lower_level_cone, BPCone, Verdict};
use crate::error::Result;
use crate::numerics::{hull_intersection, Scalar, Vector};
use crate::polyhedra::{base_polytope, in_k_plus, ConeUnion, Region};

use super::classify::{classify_separation, SeparationByConesVerdict};
use super::{affine_dim, SeparationCertificate, SeparationClass, SeparationProblem};

/// One exact check. `level` is the weakest class that needs it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub level: SeparationClass,
    pub passed: bool,
    pub value: Option<Scalar>,
    pub witness: Option<Vector>,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub cone_verdict: Option<SeparationByConesVerdict>,
    pub achieved: SeparationClass,
    pub passed: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Builder {
    checks: Vec<Check>,
}

impl Builder {
    fn push(&mut self, name: &str, level: SeparationClass, passed: bool) -> &mut Check {
        self.checks.push(Check {
            name: name.into(),
            level,
            passed,
            value: None,
            witness: None,
            detail: None,
        });
        self.checks.last_mut().expect("just pushed")
    }

    fn error(&mut self, name: &str, level: SeparationClass, e: crate::error::Error) {
        self.push(name, level, false).detail = Some(e.to_string());
    }

    fn ok_at(&self, level: SeparationClass) -> bool {
        self.checks
            .iter()
            .filter(|c| c.level == SeparationClass::Weak || c.level == level)
            .all(|c| c.passed)
    }
}

/// A point in the interior of a full-dimensional piece of `-K` where
/// `φ ≥ 0`.
fn interior_nonnegative(
    minus_k: &ConeUnion,
    cert: &SeparationCertificate,
    problem: &SeparationProblem,
) -> Result<Option<Vector>> {
    let aug = &cert.aug;
    let rows: Vec<Vector> = if aug.alpha.is_zero() {
        vec![aug.x_star.coeffs().clone()]
    } else {
        problem
            .psi
            .generators()
            .iter()
            .map(|c| aug.x_star.add(&c.scale(&aug.alpha)).into_coeffs())
            .collect()
    };
    for p in minus_k.pieces().iter().filter(|p| p.is_full_dim()) {
        for r in &rows {
            let mut region = Region::default().with_closed(r.clone());
            for f in p.inequalities() {
                region = region.with_strict(f.clone());
            }
            if let Some(w) = region.witness(problem.dim())? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Recomputes every defining inequality of the certificate from the
/// problem data. Never fails; errors become failed checks.
pub fn verify_certificate(problem: &SeparationProblem, cert: &SeparationCertificate) -> VerificationReport {
    use SeparationClass::{Proper, Strict, Weak};
    let mut b = Builder { checks: Vec::new() };
    let x = &cert.aug.x_star;
    let alpha = &cert.aug.alpha;
    let psi = &problem.psi;

    b.push("nonzero_functional", Weak, !x.is_zero());
    b.push("alpha_nonnegative", Weak, !alpha.is_negative());
    b.push("dimension", Weak, x.dim() == problem.dim());
    if x.dim() != problem.dim() {
        return finish(b, None);
    }
    b.push("functional_in_dual_cone", Weak, in_k_plus(&problem.k, x));

    let a = match problem.separated_cone() {
        Ok(a) => a,
        Err(e) => {
            b.error("separated_cone", Weak, e);
            return finish(b, None);
        }
    };
    let minus_k = problem.minus_k();
    let (a_base, sk) = match (base_polytope(&a, psi, false), problem.s_minus_k()) {
        (Ok(ab), Ok(sk)) => (ab.vertices, sk),
        (Err(e), _) | (_, Err(e)) => {
            b.error("base_polytopes", Weak, e);
            return finish(b, None);
        }
    };

    // φ = x* + α on both normlike bases.
    let a_min = x.min_over(&a_base).map(|(v, i)| (v + alpha, a_base[i].clone()));
    let k_max = x.max_over(&sk).map(|(v, i)| (v + alpha, sk[i].clone()));
    if let Some((m, w)) = &a_min {
        let c = b.push("phi_nonnegative_on_a", Weak, !m.is_negative());
        c.value = Some(m.clone());
        c.witness = Some(w.clone());
        let c = b.push("phi_positive_on_a", Strict, m.is_positive());
        c.value = Some(m.clone());
        c.witness = Some(w.clone());
    }
    if let Some((m, w)) = &k_max {
        let c = b.push("phi_nonpositive_on_minus_k", Weak, !m.is_positive());
        c.value = Some(m.clone());
        c.witness = Some(w.clone());
        let c = b.push("phi_negative_on_minus_k", Strict, m.is_negative());
        c.value = Some(m.clone());
        c.witness = Some(w.clone());
    }

    let hp = &cert.hyperplane;
    let consistent = hp.f == *x && hp.delta == -alpha && hp.beta >= hp.delta && hp.delta >= hp.gamma;
    b.push("hyperplane_consistent", Weak, consistent);

    match classify_augmented(&problem.k, psi, &cert.aug) {
        Ok(class) => {
            b.push("aug_a_plus", Weak, class.a_plus.is_yes());
            let c = b.push("aug_a_circ", Proper, class.a_circ != Verdict::No);
            c.witness = class.circ_witness.clone();
            b.push("aug_a_sharp", Strict, class.a_sharp.is_yes());
        }
        Err(e) => b.error("aug_class", Weak, e),
    }

    // Proper: φ < 0 on cor(-K).
    b.push("k_solid", Proper, problem.k.is_solid());
    let sk_solid = affine_dim(&sk) == problem.dim();
    let cor_s = sk_solid
        && !x.is_zero()
        && k_max.as_ref().map_or(false, |(m, _)| !m.is_positive());
    b.push("phi_negative_on_cor_s_minus_k", Proper, cor_s);
    match interior_nonnegative(&minus_k, cert, problem) {
        Ok(w) => {
            let ok = w.is_none();
            b.push("phi_negative_on_piece_interiors", Proper, ok).witness = w;
        }
        Err(e) => b.error("phi_negative_on_piece_interiors", Proper, e),
    }

    // Strict.
    b.push("alpha_positive", Strict, alpha.is_positive());
    let mut cone_verdict = None;
    if alpha.is_positive() {
        let scaled = x.scale(&alpha.recip());
        match bp_class(&problem.k, psi, &scaled) {
            Ok(c) => {
                b.push("bishop_phelps_sharp", Strict, c.bp_sharp.is_yes());
            }
            Err(e) => b.error("bishop_phelps_sharp", Strict, e),
        }
        let identity = lower_level_cone(&cert.aug, psi).and_then(|low| {
            let bp = BPCone::new(&scaled.neg(), psi)?.piece()?;
            Ok(low == bp)
        });
        match identity {
            Ok(same) => {
                b.push("level_set_is_bishop_phelps", Strict, same);
            }
            Err(e) => b.error("level_set_is_bishop_phelps", Strict, e),
        }
    }
    match lower_level_cone(&cert.aug, psi).and_then(|c| classify_separation(&minus_k, &a, &c)) {
        Ok(v) => {
            let strict = v.achieved == Strict;
            b.push("level_set_separates_strictly", Strict, strict);
            cone_verdict = Some(v);
        }
        Err(e) => b.error("level_set_separates_strictly", Strict, e),
    }
    match problem.s_a0() {
        Ok(sa) => {
            let meet = hull_intersection(&sa, &sk);
            let c = b.push("hulls_disjoint", Strict, meet.is_none());
            c.witness = meet.map(|m| m.0);
        }
        Err(e) => b.error("hulls_disjoint", Strict, e),
    }

    let mut report = finish(b, cone_verdict);
    report.passed = report.achieved >= cert.variant.target();
    report
}

fn finish(b: Builder, cone_verdict: Option<SeparationByConesVerdict>) -> VerificationReport {
    let achieved = if !b.ok_at(SeparationClass::Weak) {
        SeparationClass::None
    } else if b.ok_at(SeparationClass::Strict) {
        SeparationClass::Strict
    } else if b.ok_at(SeparationClass::Proper) {
        SeparationClass::Proper
    } else {
        SeparationClass::Weak
    };
    VerificationReport {
        checks: b.checks,
        cone_verdict,
        achieved,
        passed: false,
    }
}

impl SeparationCertificate {
    /// Re-runs verification and checks the requested class is reached.
    pub fn reverify(&self, problem: &SeparationProblem) -> bool {
        let r = verify_certificate(problem, self);
        r.achieved >= self.variant.target()
    }
}
