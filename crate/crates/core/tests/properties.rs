//! Property tests against the independent oracles.

mod oracle;

use proptest::prelude::*;

use conesep::io::{parse_instance, Instance, SeminormSpec};
use conesep::numerics::{point_in_hull, HullMembership, LinearProgram, LpOutcome, Relation, Sense};
use conesep::polyhedra::base_polytope;
use conesep::seminorms::regular_polygon_vertices;
use conesep::separation::{check_hypotheses, Variant};
use conesep::{ConeUnion, ConvexConePiece, PolyhedralSeminorm, Scalar, SeparationProblem, Vector};

use oracle::{base_points, dot, hull_2d, is_convex_combination, locate_2d, s, solve_square, Gauge};

fn rational() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| Scalar::ratio(p, q))
}

fn vector(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(rational(), n).prop_map(Vector::new)
}

fn int_vector(n: usize, bound: i64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-bound..=bound, n).prop_map(|v| Vector::from_ints(&v))
}

/// A planar pointed sector spanned by two independent integer rays.
fn sector() -> impl Strategy<Value = ConvexConePiece> {
    (int_vector(2, 4), int_vector(2, 4))
        .prop_filter("independent rays", |(a, b)| {
            let (a, b) = (a.coords(), b.coords());
            !(&a[0] * &b[1] - &a[1] * &b[0]).is_zero()
        })
        .prop_map(|(a, b)| ConvexConePiece::from_generators(&[a, b], 2).unwrap())
}

fn constraint() -> impl Strategy<Value = (Vector, bool, Scalar)> {
    (int_vector(2, 5), any::<bool>(), -6i64..=12).prop_map(|(a, le, b)| (a, le, s(b)))
}

fn satisfies(rows: &[(Vector, bool, Scalar)], x: &[Scalar]) -> bool {
    x.iter().all(|v| !v.is_negative())
        && rows.iter().all(|(a, le, b)| {
            let v = dot(a.coords(), x);
            if *le {
                v <= *b
            } else {
                v >= *b
            }
        })
}

/// Feasible vertices of `{x ≥ 0} ∩ rows` in the plane.
fn lp_vertices(rows: &[(Vector, bool, Scalar)]) -> Vec<Vec<Scalar>> {
    let mut lines: Vec<(Vec<Scalar>, Scalar)> = vec![(vec![s(1), s(0)], s(0)), (vec![s(0), s(1)], s(0))];
    lines.extend(rows.iter().map(|(a, _, b)| (a.coords().to_vec(), b.clone())));
    let mut out = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let a = vec![lines[i].0.clone(), lines[j].0.clone()];
            if let Some(x) = solve_square(a, vec![lines[i].1.clone(), lines[j].1.clone()]) {
                if satisfies(rows, &x) {
                    out.push(x);
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lp_agrees_with_vertex_enumeration(
        rows in prop::collection::vec(constraint(), 1..5),
        c in int_vector(2, 4),
    ) {
        let mut lp = LinearProgram::new(2, Sense::Max);
        lp.set_objective(c.clone());
        for (a, le, b) in &rows {
            lp.add(a.clone(), if *le { Relation::Le } else { Relation::Ge }, b.clone());
        }
        let verts = lp_vertices(&rows);
        match lp.solve() {
            LpOutcome::Optimal { x, value, .. } => {
                prop_assert!(satisfies(&rows, x.coords()));
                prop_assert_eq!(dot(c.coords(), x.coords()), value.clone());
                let best = verts.iter().map(|v| dot(c.coords(), v)).max().unwrap();
                prop_assert_eq!(best, value);
            }
            LpOutcome::Infeasible { .. } => prop_assert!(verts.is_empty()),
            LpOutcome::Unbounded { x, ray } => {
                prop_assert!(satisfies(&rows, x.coords()));
                prop_assert!(ray.coords().iter().all(|r| !r.is_negative()));
                prop_assert!(dot(c.coords(), ray.coords()).is_positive());
                for (a, le, _) in &rows {
                    let v = dot(a.coords(), ray.coords());
                    let ok = if *le { !v.is_positive() } else { !v.is_negative() };
                    prop_assert!(ok);
                }
            }
        }
    }

    #[test]
    fn polygon_gauge_matches_edge_normals(order in 2usize..7, x in vector(2), y in vector(2), t in rational()) {
        let psi = PolyhedralSeminorm::regular_polygon_norm(order).unwrap();
        let gauge = Gauge::polygon(&regular_polygon_vertices(order).unwrap());
        prop_assert_eq!(psi.value(&x), gauge.at(&x));
        prop_assert!(psi.value(&x.add(&y)) <= psi.value(&x) + psi.value(&y));
        prop_assert_eq!(psi.value(&x.scale(&t)), t.abs() * psi.value(&x));
        prop_assert_eq!(psi.value(&x).is_zero(), x.is_zero());
    }

    #[test]
    fn hull_membership_certificates(
        pts in prop::collection::vec(int_vector(2, 5), 3..7),
        target in vector(2),
    ) {
        let hull = hull_2d(&pts);
        match point_in_hull(&pts, &target).unwrap() {
            HullMembership::Member { weights } => {
                prop_assert!(is_convex_combination(&weights, &pts, &target));
                if hull.len() >= 3 {
                    prop_assert!(locate_2d(&hull, &target).is_some());
                }
            }
            HullMembership::Outside { f, c } => {
                prop_assert!(f.apply(&target) < c);
                prop_assert!(pts.iter().all(|p| f.apply(p) >= c));
            }
        }
    }

    #[test]
    fn planar_base_hull_matches_oracle(piece in sector(), order in 2usize..6) {
        let psi = PolyhedralSeminorm::regular_polygon_norm(order).unwrap();
        let gauge = Gauge::polygon(&regular_polygon_vertices(order).unwrap());
        let base = base_polytope(&ConeUnion::convex(piece.clone()), &psi, false).unwrap();
        let expected = base_points(&piece.generators(), &gauge);
        prop_assert_eq!(hull_2d(&base.vertices), hull_2d(&expected));
    }

    #[test]
    fn hull_verdicts_ignore_generator_scaling(
        k in prop::collection::vec(sector(), 1..3),
        a in prop::collection::vec(sector(), 1..3),
        factors in prop::collection::vec(1i64..=5, 8),
    ) {
        let rescale = |pieces: &[ConvexConePiece], offset: usize| -> ConeUnion {
            let scaled = pieces
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let g: Vec<Vector> = p
                        .generators()
                        .iter()
                        .enumerate()
                        .map(|(j, v)| v.scale(&s(factors[(offset + 2 * i + j) % factors.len()])))
                        .collect();
                    ConvexConePiece::from_generators(&g, 2).unwrap()
                })
                .collect();
            ConeUnion::new(scaled).unwrap()
        };
        let psi = PolyhedralSeminorm::linf(2);
        let p = SeparationProblem::new(ConeUnion::new(k.clone()).unwrap(), ConeUnion::new(a.clone()).unwrap(), psi.clone(), Variant::Strict);
        let q = SeparationProblem::new(rescale(&k, 0), rescale(&a, 4), psi, Variant::Strict);
        let (Ok(p), Ok(q)) = (p, q) else { return Ok(()) };
        let (rp, rq) = (check_hypotheses(&p).unwrap(), check_hypotheses(&q).unwrap());
        for (f, g) in rp.findings.iter().zip(&rq.findings) {
            prop_assert_eq!(&f.name, &g.name);
            prop_assert_eq!(f.disjoint, g.disjoint);
        }
    }

    #[test]
    fn instance_json_round_trips(
        k in prop::collection::vec(sector(), 1..3),
        a in prop::collection::vec(sector(), 1..3),
        order in 2usize..5,
        strict in any::<bool>(),
    ) {
        let spec = SeminormSpec::Polygon(order);
        let variant = if strict { Variant::Strict } else { Variant::Weak };
        let p = SeparationProblem::new(ConeUnion::new(k).unwrap(), ConeUnion::new(a).unwrap(), spec.build(2).unwrap(), variant).unwrap();
        let text = Instance::new(p, spec).to_json_string();
        let back = parse_instance(&text, None).unwrap();
        prop_assert_eq!(back.to_json_string(), text);
    }
}
