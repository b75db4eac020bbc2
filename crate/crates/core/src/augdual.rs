//! Augmented dual cones `K^{a+}`, `K^{a#}`, `K^{a&}`, `K^{a◦}`, Bishop-Phelps
//! cones and the level-set cones of `x*(·) + αψ(·)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{point_in_hull, Functional, HullMembership, Scalar, Vector};
use crate::polyhedra::{
    base_polytope, check_normlike, difference_witness, in_k_plus, ConeUnion, ConvexConePiece,
    Region,
};
use crate::seminorms::PolyhedralSeminorm;

/// A pair `(x*, α)` with `α ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AugmentedFunctional {
    pub x_star: Functional,
    pub alpha: Scalar,
}

impl AugmentedFunctional {
    pub fn new(x_star: Functional, alpha: Scalar) -> Result<Self> {
        if alpha.is_negative() {
            return Err(Error::DegenerateInput(format!("alpha = {alpha} is negative")));
        }
        Ok(AugmentedFunctional { x_star, alpha })
    }

    pub fn dim(&self) -> usize {
        self.x_star.dim()
    }

    /// `φ(x) = x*(x) + αψ(x)`.
    pub fn phi(&self, psi: &PolyhedralSeminorm, x: &Vector) -> Result<Scalar> {
        let lin = self.x_star.try_apply(x)?;
        Ok(lin + &self.alpha * psi.evaluate(x)?)
    }

    /// `x*(x) − αψ(x)`.
    pub fn residual(&self, psi: &PolyhedralSeminorm, x: &Vector) -> Scalar {
        self.x_star.apply(x) - &self.alpha * psi.value(x)
    }

    pub fn add(&self, other: &Self) -> Self {
        AugmentedFunctional {
            x_star: self.x_star.add(&other.x_star),
            alpha: &self.alpha + &other.alpha,
        }
    }

    pub fn scale(&self, t: &Scalar) -> Self {
        AugmentedFunctional {
            x_star: self.x_star.scale(t),
            alpha: &self.alpha * t,
        }
    }
}

pub fn phi_eval(aug: &AugmentedFunctional, psi: &PolyhedralSeminorm, x: &Vector) -> Result<Scalar> {
    aug.phi(psi, x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unsupported,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

/// Membership of `(x*, α)` in the four augmented dual sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AugDualClass {
    pub a_plus: Verdict,
    pub a_sharp: Verdict,
    pub a_amp: Verdict,
    pub a_circ: Verdict,
    /// `min x*` over the base vertices, absent for `K = {0}`.
    pub vertex_min: Option<Scalar>,
    pub argmin: Option<Vector>,
    /// A point of `K ∖ ℓ(K)` where `x* − αψ ≤ 0`.
    pub amp_witness: Option<Vector>,
    /// A point of `icor K` where `x* − αψ ≤ 0`.
    pub circ_witness: Option<Vector>,
}

/// Is `K` the whole space?
fn covers_space(k: &ConeUnion) -> Result<bool> {
    Ok(difference_witness(&Region::default(), k.pieces(), k.dim())?.is_none())
}

/// Rows `αc_j − x*`; `y` with some row `≥ 0` has `x*(y) − αψ(y) ≤ 0`.
fn failure_rows(psi: &PolyhedralSeminorm, aug: &AugmentedFunctional) -> Vec<Vector> {
    let neg = aug.x_star.neg().into_coeffs();
    if aug.alpha.is_zero() {
        return vec![neg];
    }
    let mut rows: Vec<Vector> = psi
        .generators()
        .iter()
        .map(|c| c.coeffs().scale(&aug.alpha).add(&neg))
        .collect();
    rows.sort();
    rows.dedup();
    rows
}

fn amp_violation(
    k: &ConeUnion,
    psi: &PolyhedralSeminorm,
    aug: &AugmentedFunctional,
) -> Result<Option<Vector>> {
    let lin = k.lineality()?;
    let rows = failure_rows(psi, aug);
    for p in k.pieces() {
        for r in &rows {
            let bad = Region::from_piece(p).with_closed(r.clone());
            if let Some(w) = difference_witness(&bad, lin.cone.pieces(), k.dim())? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// A point in the interior of a full-dimensional piece where the residual
/// is `≤ 0`.
fn interior_violation(
    k: &ConeUnion,
    psi: &PolyhedralSeminorm,
    aug: &AugmentedFunctional,
) -> Result<Option<Vector>> {
    let rows = failure_rows(psi, aug);
    for p in k.pieces().iter().filter(|p| p.is_full_dim()) {
        for r in &rows {
            let mut region = Region::default().with_closed(r.clone());
            for f in p.inequalities() {
                region = region.with_strict(f.clone());
            }
            if let Some(w) = region.witness(k.dim())? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

pub fn classify_augmented(
    k: &ConeUnion,
    psi: &PolyhedralSeminorm,
    aug: &AugmentedFunctional,
) -> Result<AugDualClass> {
    if aug.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            found: aug.dim(),
        });
    }
    let base = base_polytope(k, psi, false)?;
    let kplus = in_k_plus(k, &aug.x_star);
    let min = base.min_of(&aug.x_star);
    let (a_plus, a_sharp) = match &min {
        Some((m, _)) => (kplus && *m >= aug.alpha, kplus && *m > aug.alpha),
        None => (true, true),
    };

    let mut amp_witness = None;
    let a_amp = if a_sharp {
        true
    } else if !kplus {
        false
    } else {
        amp_witness = amp_violation(k, psi, aug)?;
        amp_witness.is_none()
    };

    let mut circ_witness = None;
    let a_circ = if k.is_convex()? {
        let z = k.convex_hull()?.relative_interior_point();
        if a_plus && aug.residual(psi, &z).is_positive() {
            Verdict::Yes
        } else {
            circ_witness = Some(z);
            Verdict::No
        }
    } else if k.is_solid() {
        if let Some(w) = interior_violation(k, psi, aug)? {
            circ_witness = Some(w);
            Verdict::No
        } else if a_sharp && !covers_space(k)? {
            Verdict::Yes
        } else {
            Verdict::Unsupported
        }
    } else if a_sharp && k.is_pointed()? {
        Verdict::Yes
    } else {
        Verdict::Unsupported
    };

    let (vertex_min, argmin) = match min {
        Some((m, v)) => (Some(m), Some(v)),
        None => (None, None),
    };
    Ok(AugDualClass {
        a_plus: Verdict::from_bool(a_plus),
        a_sharp: Verdict::from_bool(a_sharp),
        a_amp: Verdict::from_bool(a_amp),
        a_circ,
        vertex_min,
        argmin,
        amp_witness,
        circ_witness,
    })
}

/// `(x*, c)` with `c = min x*` over the base, which must be positive.
pub fn witness_a_plus(
    k: &ConeUnion,
    psi: &PolyhedralSeminorm,
    x_star: &Functional,
) -> Result<AugmentedFunctional> {
    let base = base_polytope(k, psi, false)?;
    let (m, v) = base
        .min_of(x_star)
        .ok_or_else(|| Error::DegenerateInput("the cone has an empty base".into()))?;
    if !m.is_positive() {
        return Err(Error::NoPositiveInfimum {
            minimum: m,
            argmin: v,
        });
    }
    AugmentedFunctional::new(x_star.clone(), m)
}

/// `(x*, α − ε)` for `0 < ε ≤ α`.
pub fn shrink_to_sharp(aug: &AugmentedFunctional, epsilon: &Scalar) -> Result<AugmentedFunctional> {
    if !epsilon.is_positive() || *epsilon > aug.alpha {
        return Err(Error::BadEpsilon {
            epsilon: epsilon.clone(),
            alpha: aug.alpha.clone(),
        });
    }
    AugmentedFunctional::new(aug.x_star.clone(), &aug.alpha - epsilon)
}

/// `C(x*) = {x : x*(x) ≥ ψ(x)}` with facets `x* − c_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BPCone {
    pub x_star: Functional,
    pub psi: PolyhedralSeminorm,
    pub facets: Vec<Functional>,
}

impl BPCone {
    pub fn new(x_star: &Functional, psi: &PolyhedralSeminorm) -> Result<Self> {
        if x_star.dim() != psi.dim() {
            return Err(Error::DimensionMismatch {
                expected: psi.dim(),
                found: x_star.dim(),
            });
        }
        let facets = psi.generators().iter().map(|c| x_star.sub(c)).collect();
        Ok(BPCone {
            x_star: x_star.clone(),
            psi: psi.clone(),
            facets,
        })
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.x_star.apply(x) >= self.psi.value(x)
    }

    /// `x ∈ C_>(x*)`.
    pub fn strictly_contains(&self, x: &Vector) -> bool {
        (self.x_star.apply(x) - self.psi.value(x)).is_positive()
    }

    pub fn piece(&self) -> Result<ConvexConePiece> {
        let rows: Vec<Vector> = self.facets.iter().map(|f| f.coeffs().clone()).collect();
        ConvexConePiece::from_inequalities(&rows, self.psi.dim())
    }
}

pub fn bp_cone(x_star: &Functional, psi: &PolyhedralSeminorm) -> Result<BPCone> {
    BPCone::new(x_star, psi)
}

/// `C^≤ = {x : x*(x) + αψ(x) ≤ 0}`.
pub fn lower_level_cone(aug: &AugmentedFunctional, psi: &PolyhedralSeminorm) -> Result<ConvexConePiece> {
    let mut rows: Vec<Vector> = if aug.alpha.is_zero() {
        vec![aug.x_star.neg().into_coeffs()]
    } else {
        psi.generators()
            .iter()
            .map(|c| aug.x_star.add(&c.scale(&aug.alpha)).neg().into_coeffs())
            .collect()
    };
    rows.retain(|r| !r.is_zero());
    ConvexConePiece::from_inequalities(&rows, psi.dim())
}

/// `x ∈ C^< = {x : x*(x) + αψ(x) < 0}`.
pub fn strict_lower_level_contains(
    aug: &AugmentedFunctional,
    psi: &PolyhedralSeminorm,
    x: &Vector,
) -> bool {
    (aug.x_star.apply(x) + &aug.alpha * psi.value(x)).is_negative()
}

/// The Bishop-Phelps dual sets at `α = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BpClass {
    pub bp_plus: Verdict,
    pub bp_sharp: Verdict,
    pub bp_amp: Verdict,
    pub bp_circ: Verdict,
}

pub fn bp_class(k: &ConeUnion, psi: &PolyhedralSeminorm, x_star: &Functional) -> Result<BpClass> {
    let c = classify_augmented(k, psi, &AugmentedFunctional::new(x_star.clone(), Scalar::one())?)?;
    Ok(BpClass {
        bp_plus: c.a_plus,
        bp_sharp: c.a_sharp,
        bp_amp: c.a_amp,
        bp_circ: c.a_circ,
    })
}

/// `K ∖ {0} ⊆ C_>(x*)`.
pub fn is_dilating(k: &ConeUnion, psi: &PolyhedralSeminorm, x_star: &Functional) -> Result<bool> {
    if let Some(w) = k.lineality_witness()? {
        return Err(Error::NotPointed(w));
    }
    check_normlike(k, psi)?;
    let base = base_polytope(k, psi, false)?;
    Ok(match base.min_of(x_star) {
        Some((m, _)) => m > Scalar::one(),
        None => true,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OriginExclusionReport {
    pub origin_in_hull: bool,
    /// Convex weights on the base vertices expressing the origin.
    pub weights: Option<Vec<Scalar>>,
    pub vertices: Vec<Vector>,
    /// Element of `K^#` with minimum 1 over the base.
    pub k_sharp_witness: Option<Functional>,
    /// Element of `K^{a#}` with `α > 0`.
    pub cor_aplus_witness: Option<AugmentedFunctional>,
}

pub fn origin_exclusion_report(k: &ConeUnion, psi: &PolyhedralSeminorm) -> Result<OriginExclusionReport> {
    let base = base_polytope(k, psi, false)?;
    let origin = Vector::zeros(k.dim());
    match point_in_hull(&base.vertices, &origin)? {
        HullMembership::Member { weights } => Ok(OriginExclusionReport {
            origin_in_hull: true,
            weights: Some(weights),
            vertices: base.vertices,
            k_sharp_witness: None,
            cor_aplus_witness: None,
        }),
        HullMembership::Outside { f, c } => {
            let f = f.scale(&c.recip());
            let aug = AugmentedFunctional::new(f.clone(), Scalar::ratio(1, 2))?;
            Ok(OriginExclusionReport {
                origin_in_hull: false,
                weights: None,
                vertices: base.vertices,
                k_sharp_witness: Some(f),
                cor_aplus_witness: Some(aug),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    fn f(c: &[i64]) -> Functional {
        Functional::from_ints(c)
    }

    fn aug(c: &[i64], a: (i64, i64)) -> AugmentedFunctional {
        AugmentedFunctional::new(f(c), Scalar::ratio(a.0, a.1)).unwrap()
    }

    fn orthant() -> ConeUnion {
        ConeUnion::convex(ConvexConePiece::orthant(2))
    }

    #[test]
    fn phi_values() {
        let linf = PolyhedralSeminorm::linf(2);
        assert_eq!(aug(&[1, 1], (1, 2)).phi(&linf, &v(&[-1, 0])).unwrap(), Scalar::ratio(-1, 2));
        assert_eq!(aug(&[1, 1], (1, 2)).phi(&linf, &v(&[0, 0])).unwrap(), Scalar::zero());
        assert_eq!(aug(&[0, 0], (1, 1)).phi(&linf, &v(&[2, -3])).unwrap(), Scalar::from_int(3));
        assert!(AugmentedFunctional::new(f(&[1, 0]), Scalar::from_int(-1)).is_err());
    }

    #[test]
    fn orthant_classification() {
        let linf = PolyhedralSeminorm::linf(2);
        let c = classify_augmented(&orthant(), &linf, &aug(&[1, 1], (1, 1))).unwrap();
        assert_eq!((c.a_plus, c.a_sharp), (Verdict::Yes, Verdict::No));
        assert_eq!(c.vertex_min, Some(Scalar::one()));
        let c = classify_augmented(&orthant(), &linf, &aug(&[1, 1], (1, 2))).unwrap();
        assert!(c.a_plus.is_yes() && c.a_sharp.is_yes() && c.a_circ.is_yes() && c.a_amp.is_yes());
        let c = classify_augmented(&orthant(), &linf, &aug(&[0, 0], (0, 1))).unwrap();
        assert!(c.a_plus.is_yes());
        assert_eq!(c.a_circ, Verdict::No);
    }

    #[test]
    fn a_plus_witnesses() {
        let linf = PolyhedralSeminorm::linf(2);
        assert_eq!(witness_a_plus(&orthant(), &linf, &f(&[1, 1])).unwrap(), aug(&[1, 1], (1, 1)));
        let ray = ConeUnion::from_generator_lists(&[vec![v(&[1, 1])]], 2).unwrap();
        assert_eq!(witness_a_plus(&ray, &linf, &f(&[1, 0])).unwrap(), aug(&[1, 0], (1, 1)));
        match witness_a_plus(&orthant(), &linf, &f(&[1, 0])) {
            Err(Error::NoPositiveInfimum { minimum, argmin }) => {
                assert_eq!(minimum, Scalar::zero());
                assert_eq!(argmin, v(&[0, 1]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shrinking() {
        let linf = PolyhedralSeminorm::linf(2);
        let a = aug(&[1, 1], (1, 1));
        let s = shrink_to_sharp(&a, &Scalar::ratio(1, 2)).unwrap();
        assert_eq!(s, aug(&[1, 1], (1, 2)));
        assert!(classify_augmented(&orthant(), &linf, &s).unwrap().a_sharp.is_yes());
        assert_eq!(shrink_to_sharp(&a, &Scalar::one()).unwrap().alpha, Scalar::zero());
        assert!(matches!(
            shrink_to_sharp(&a, &Scalar::from_int(2)),
            Err(Error::BadEpsilon { .. })
        ));
    }

    #[test]
    fn bp_cone_facets() {
        let linf = PolyhedralSeminorm::linf(2);
        let c = bp_cone(&f(&[2, 2]), &linf).unwrap();
        let mut got: Vec<Functional> = c.facets.clone();
        got.sort();
        let mut want = vec![f(&[1, 2]), f(&[3, 2]), f(&[2, 1]), f(&[2, 3])];
        want.sort();
        assert_eq!(got, want);
        let c = bp_cone(&f(&[1, 0]), &linf).unwrap();
        assert!(c.facets.contains(&f(&[0, 0])));
        let p = c.piece().unwrap();
        assert_eq!(p.rays(), &[v(&[1, -1]), v(&[1, 1])]);
        let zero = bp_cone(&f(&[0, 0]), &linf).unwrap().piece().unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn level_set_identity() {
        let linf = PolyhedralSeminorm::linf(2);
        let a = aug(&[1, 1], (1, 2));
        let low = lower_level_cone(&a, &linf).unwrap();
        let x = a.x_star.scale(&a.alpha.recip()).neg();
        assert_eq!(low, bp_cone(&x, &linf).unwrap().piece().unwrap());
        assert!(strict_lower_level_contains(&a, &linf, &v(&[-1, -1])));
        assert!(!strict_lower_level_contains(&a, &linf, &v(&[0, 0])));
    }

    #[test]
    fn bp_and_dilating() {
        let linf = PolyhedralSeminorm::linf(2);
        let l1 = PolyhedralSeminorm::l1(2);
        assert!(bp_class(&orthant(), &linf, &f(&[2, 2])).unwrap().bp_sharp.is_yes());
        let b = bp_class(&orthant(), &l1, &f(&[1, 1])).unwrap();
        assert_eq!((b.bp_plus, b.bp_sharp), (Verdict::Yes, Verdict::No));
        let b = bp_class(&orthant(), &linf, &f(&[0, 0])).unwrap();
        assert_eq!((b.bp_plus, b.bp_sharp, b.bp_amp, b.bp_circ), (Verdict::No, Verdict::No, Verdict::No, Verdict::No));
        assert!(is_dilating(&orthant(), &linf, &f(&[2, 2])).unwrap());
        assert!(!is_dilating(&orthant(), &linf, &f(&[1, 1])).unwrap());
        let ray = ConeUnion::from_generator_lists(&[vec![v(&[1, 1])]], 2).unwrap();
        assert!(!is_dilating(&ray, &linf, &f(&[1, 0])).unwrap());
        let line = ConeUnion::new(vec![ConvexConePiece::orthant(2), ConvexConePiece::orthant(2).neg()]).unwrap();
        assert!(matches!(is_dilating(&line, &linf, &f(&[1, 1])), Err(Error::NotPointed(_))));
    }

    #[test]
    fn origin_exclusion() {
        let linf = PolyhedralSeminorm::linf(2);
        let r = origin_exclusion_report(&orthant(), &linf).unwrap();
        assert!(!r.origin_in_hull);
        assert_eq!(r.k_sharp_witness, Some(f(&[1, 1])));
        let w = r.cor_aplus_witness.unwrap();
        assert!(classify_augmented(&orthant(), &linf, &w).unwrap().a_sharp.is_yes());

        let both = ConeUnion::new(vec![ConvexConePiece::orthant(2), ConvexConePiece::orthant(2).neg()]).unwrap();
        let r = origin_exclusion_report(&both, &linf).unwrap();
        assert!(r.origin_in_hull && r.k_sharp_witness.is_none());
        assert!(!both.is_pointed().unwrap());

        let ray = ConeUnion::from_generator_lists(&[vec![v(&[1, 1])]], 2).unwrap();
        assert!(origin_exclusion_report(&ray, &linf).unwrap().k_sharp_witness.is_some());
    }

    #[test]
    fn amp_on_nonconvex_union() {
        let linf = PolyhedralSeminorm::linf(2);
        let up = ConvexConePiece::from_generators(&[v(&[1, 0]), v(&[-1, 0]), v(&[0, 1])], 2).unwrap();
        let wedge = ConvexConePiece::from_generators(&[v(&[-1, 0]), v(&[-1, -1])], 2).unwrap();
        let k = ConeUnion::new(vec![up, wedge]).unwrap();
        let c = classify_augmented(&k, &linf, &aug(&[0, 1], (0, 1))).unwrap();
        assert_eq!(c.a_amp, Verdict::No);
        let c = classify_augmented(&k, &linf, &aug(&[-1, 1], (0, 1))).unwrap();
        assert_eq!(c.a_plus, Verdict::No);
    }
}
