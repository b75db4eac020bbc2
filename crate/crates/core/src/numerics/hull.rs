//! Convex hull membership and separation of finite point sets.

use super::linalg::nullspace_basis;
use super::lp::{LinearProgram, LpOutcome, Relation, Sense};
use super::scalar::Scalar;
use super::vector::{Functional, Vector};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HullMembership {
    /// Convex weights expressing the point.
    Member { weights: Vec<Scalar> },
    /// `f(p) < c = min_i f(p_i)` with `‖f‖∞ ≤ 1`.
    Outside { f: Functional, c: Scalar },
}

impl HullMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, HullMembership::Member { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparationMode {
    /// `min_P f > max_Q f`.
    Strict,
    /// `min_P f ≥ max_Q f` with `f ≠ 0`.
    Weak,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolytopeSeparation {
    /// `f ≥ beta` on `P`, `f ≤ gamma` on `Q`. `proper` is set when `f` is not
    /// constant on `P ∪ Q`.
    Separated {
        f: Functional,
        beta: Scalar,
        gamma: Scalar,
        proper: bool,
    },
    /// A common point of `conv P` and `conv Q` (relative interiors in weak mode).
    Inseparable {
        witness: Vector,
        p_weights: Vec<Scalar>,
        q_weights: Vec<Scalar>,
    },
}

fn check_points(points: &[Vector], dim: usize) -> Result<()> {
    if points.is_empty() {
        return Err(Error::DegenerateInput("empty point set".into()));
    }
    points.iter().try_for_each(|p| p.check_dim(dim))
}

fn unit_bounds(lp: &mut LinearProgram, dim: usize) {
    let nv = lp.num_vars();
    for j in 0..dim {
        let e = Vector::unit(nv, j);
        lp.add(e.clone(), Relation::Le, Scalar::one());
        lp.add(e, Relation::Ge, Scalar::from_int(-1));
    }
}

fn split(x: &Vector, at: usize) -> (Vector, Vec<Scalar>) {
    let c = x.coords();
    (Vector::new(c[..at].to_vec()), c[at..].to_vec())
}

/// Decide `p ∈ conv(points)` exactly.
pub fn point_in_hull(points: &[Vector], p: &Vector) -> Result<HullMembership> {
    let n = p.dim();
    check_points(points, n)?;
    // max c - f(p) over f in the unit box, f(p_i) >= c.
    let mut lp = LinearProgram::new(n + 1, Sense::Max);
    lp.set_all_free();
    let mut obj = p.neg().into_coords();
    obj.push(Scalar::one());
    lp.set_objective(Vector::new(obj));
    for q in points {
        let mut row = q.coords().to_vec();
        row.push(Scalar::from_int(-1));
        lp.add(Vector::new(row), Relation::Ge, Scalar::zero());
    }
    unit_bounds(&mut lp, n);
    let LpOutcome::Optimal { x, value, .. } = lp.solve() else {
        unreachable!("bounded feasible program");
    };
    if value.is_positive() {
        let (f, _) = split(&x, n);
        let f = Functional::new(f);
        let (c, _) = f.min_over(points).expect("nonempty");
        return Ok(HullMembership::Outside { f, c });
    }
    let weights = convex_weights(points, p).expect("member by duality");
    Ok(HullMembership::Member { weights })
}

/// Convex weights `w` with `Σ w_i p_i = target`, if any.
pub fn convex_weights(points: &[Vector], target: &Vector) -> Option<Vec<Scalar>> {
    let n = target.dim();
    let k = points.len();
    let mut lp = LinearProgram::new(k, Sense::Min);
    for j in 0..n {
        let row = Vector::new(points.iter().map(|p| p[j].clone()).collect());
        lp.add(row, Relation::Eq, target[j].clone());
    }
    lp.add(Vector::new(vec![Scalar::one(); k]), Relation::Eq, Scalar::one());
    match lp.solve() {
        LpOutcome::Optimal { x, .. } => Some(x.into_coords()),
        _ => None,
    }
}

/// Common point of `conv P` and `conv Q` maximizing the smallest weight.
///
/// Returns the point, the weights and the smallest weight `t`; `t > 0` means
/// the relative interiors meet.
pub fn hull_intersection(
    p: &[Vector],
    q: &[Vector],
) -> Option<(Vector, Vec<Scalar>, Vec<Scalar>, Scalar)> {
    let n = p[0].dim();
    let (kp, kq) = (p.len(), q.len());
    let nv = kp + kq + 1;
    let mut lp = LinearProgram::new(nv, Sense::Max);
    lp.set_objective(Vector::unit(nv, nv - 1));
    for j in 0..n {
        let mut row = Vec::with_capacity(nv);
        row.extend(p.iter().map(|v| v[j].clone()));
        row.extend(q.iter().map(|v| -&v[j]));
        row.push(Scalar::zero());
        lp.add(Vector::new(row), Relation::Eq, Scalar::zero());
    }
    let mut sum_p = vec![Scalar::zero(); nv];
    let mut sum_q = vec![Scalar::zero(); nv];
    for s in sum_p.iter_mut().take(kp) {
        *s = Scalar::one();
    }
    for s in sum_q.iter_mut().skip(kp).take(kq) {
        *s = Scalar::one();
    }
    lp.add(Vector::new(sum_p), Relation::Eq, Scalar::one());
    lp.add(Vector::new(sum_q), Relation::Eq, Scalar::one());
    for i in 0..kp + kq {
        let mut row = Vector::unit(nv, i);
        row[nv - 1] = Scalar::from_int(-1);
        lp.add(row, Relation::Ge, Scalar::zero());
    }
    lp.add(Vector::unit(nv, nv - 1), Relation::Le, Scalar::one());
    let LpOutcome::Optimal { x, value, .. } = lp.solve() else {
        return None;
    };
    let c = x.into_coords();
    let pw = c[..kp].to_vec();
    let qw = c[kp..kp + kq].to_vec();
    let witness = Vector::combination(&pw, p, n);
    Some((witness, pw, qw, value))
}

/// Largest `min_P f - max_Q f` over the unit box, with the attaining `f`.
fn max_gap(p: &[Vector], q: &[Vector]) -> (Functional, Scalar) {
    let n = p[0].dim();
    // variables f (n), beta, gamma
    let nv = n + 2;
    let mut lp = LinearProgram::new(nv, Sense::Max);
    lp.set_all_free();
    let mut obj = Vector::zeros(nv);
    obj[n] = Scalar::one();
    obj[n + 1] = Scalar::from_int(-1);
    lp.set_objective(obj);
    for v in p {
        let mut row = v.coords().to_vec();
        row.extend([Scalar::from_int(-1), Scalar::zero()]);
        lp.add(Vector::new(row), Relation::Ge, Scalar::zero());
    }
    for v in q {
        let mut row = v.coords().to_vec();
        row.extend([Scalar::zero(), Scalar::from_int(-1)]);
        lp.add(Vector::new(row), Relation::Le, Scalar::zero());
    }
    unit_bounds(&mut lp, n);
    let LpOutcome::Optimal { x, value, .. } = lp.solve() else {
        unreachable!("bounded feasible program");
    };
    (Functional::new(split(&x, n).0), value)
}

fn separated(f: Functional, p: &[Vector], q: &[Vector]) -> PolytopeSeparation {
    let beta = f.min_over(p).expect("nonempty").0;
    let gamma = f.max_over(q).expect("nonempty").0;
    let lo = beta.clone().min(f.min_over(q).expect("nonempty").0);
    let hi = gamma.clone().max(f.max_over(p).expect("nonempty").0);
    PolytopeSeparation::Separated {
        f,
        beta,
        gamma,
        proper: lo != hi,
    }
}

/// Separate `conv P` from `conv Q` by a hyperplane.
pub fn separate_polytopes(
    p: &[Vector],
    q: &[Vector],
    mode: SeparationMode,
) -> Result<PolytopeSeparation> {
    let n = p.first().map(Vector::dim).unwrap_or(0);
    check_points(p, n)?;
    check_points(q, n)?;
    let (f, gap) = max_gap(p, q);
    if gap.is_positive() {
        return Ok(separated(f, p, q));
    }
    if mode == SeparationMode::Strict {
        let (witness, p_weights, q_weights, _) =
            hull_intersection(p, q).expect("hulls meet when no strict gap exists");
        return Ok(PolytopeSeparation::Inseparable {
            witness,
            p_weights,
            q_weights,
        });
    }
    if let Some(f) = proper_separator(p, q) {
        return Ok(separated(f, p, q));
    }
    // No proper separation: the relative interiors meet. A functional
    // constant on the affine hull still separates weakly.
    let p0 = &p[0];
    let diffs: Vec<Vector> = p.iter().chain(q).map(|v| v.sub(p0)).collect();
    if let Some(f) = nullspace_basis(&diffs, n).into_iter().next() {
        return Ok(separated(Functional::new(f), p, q));
    }
    let (witness, p_weights, q_weights, _) =
        hull_intersection(p, q).expect("relative interiors meet");
    Ok(PolytopeSeparation::Inseparable {
        witness,
        p_weights,
        q_weights,
    })
}

/// `f ≥ β` on `P`, `f ≤ β` on `Q`, with total slack 1 so `f` is not constant.
fn proper_separator(p: &[Vector], q: &[Vector]) -> Option<Functional> {
    let n = p[0].dim();
    let nv = n + 1;
    let mut lp = LinearProgram::new(nv, Sense::Min);
    lp.set_all_free();
    let mut total = Vector::zeros(nv);
    for v in p {
        let mut row = v.coords().to_vec();
        row.push(Scalar::from_int(-1));
        let row = Vector::new(row);
        total = total.add(&row);
        lp.add(row, Relation::Ge, Scalar::zero());
    }
    for v in q {
        let mut row = v.coords().to_vec();
        row.push(Scalar::from_int(-1));
        let row = Vector::new(row);
        total = total.sub(&row);
        lp.add(row, Relation::Le, Scalar::zero());
    }
    lp.add(total, Relation::Eq, Scalar::one());
    match lp.solve() {
        LpOutcome::Optimal { x, .. } => Some(Functional::new(split(&x, n).0)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<Vector> {
        v.iter().map(|c| Vector::from_ints(c)).collect()
    }

    #[test]
    fn origin_outside_simplex_edge() {
        let out = point_in_hull(&pts(&[&[1, 0], &[0, 1]]), &Vector::from_ints(&[0, 0])).unwrap();
        assert_eq!(
            out,
            HullMembership::Outside {
                f: Functional::from_ints(&[1, 1]),
                c: Scalar::one()
            }
        );
    }

    #[test]
    fn midpoint_is_member() {
        let out =
            point_in_hull(&pts(&[&[2, 0], &[0, 2]]), &Vector::from_ints(&[1, 1])).unwrap();
        assert_eq!(
            out,
            HullMembership::Member {
                weights: vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]
            }
        );
    }

    #[test]
    fn strict_separation_of_disjoint_segments() {
        let p = pts(&[&[2, 0], &[2, 1]]);
        let q = pts(&[&[0, 0], &[0, 1]]);
        match separate_polytopes(&p, &q, SeparationMode::Strict).unwrap() {
            PolytopeSeparation::Separated { beta, gamma, .. } => assert!(beta > gamma),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn touching_segments_separate_weakly_only() {
        let p = pts(&[&[1, 0], &[1, 1]]);
        let q = pts(&[&[0, 0], &[1, 0]]);
        assert!(matches!(
            separate_polytopes(&p, &q, SeparationMode::Strict).unwrap(),
            PolytopeSeparation::Inseparable { .. }
        ));
        match separate_polytopes(&p, &q, SeparationMode::Weak).unwrap() {
            PolytopeSeparation::Separated {
                beta, gamma, proper, ..
            } => {
                assert!(beta >= gamma);
                assert!(proper);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn crossing_segments_are_inseparable() {
        let p = pts(&[&[-1, 0], &[1, 0]]);
        let q = pts(&[&[0, -1], &[0, 1]]);
        match separate_polytopes(&p, &q, SeparationMode::Weak).unwrap() {
            PolytopeSeparation::Inseparable { witness, .. } => {
                assert_eq!(witness, Vector::from_ints(&[0, 0]))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn collinear_overlap_is_weakly_separated_by_a_constant_functional() {
        let p = pts(&[&[-1, 0], &[1, 0]]);
        let q = pts(&[&[0, 0], &[2, 0]]);
        match separate_polytopes(&p, &q, SeparationMode::Weak).unwrap() {
            PolytopeSeparation::Separated { f, proper, .. } => {
                assert!(!proper);
                assert!(!f.is_zero());
            }
            other => panic!("{other:?}"),
        }
    }
}
