//! SVG pictures of planar instances: the pieces of `-K` and `A`, the base
//! polytopes `S_{-K}` and `S_A^0`, and the curve `{φ = 0}` of a certificate.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::numerics::{Functional, Vector};
use crate::polyhedra::{ConeUnion, ConvexConePiece};
use crate::seminorms::PolyhedralSeminorm;
use crate::separation::{SeparationCertificate, SeparationProblem};

pub const VIEW_BOX: &str = "-1.6 -1.6 3.2 3.2";
const REACH: f64 = 1.5;

fn fmt_point(out: &mut String, cmd: char, p: [f64; 2]) {
    let _ = write!(out, "{cmd} {:.4} {:.4} ", p[0], p[1]);
}

fn to_reach(v: &Vector) -> [f64; 2] {
    let f = v.to_f64();
    let m = f[0].abs().max(f[1].abs());
    [f[0] / m * REACH, f[1] / m * REACH]
}

fn angle(p: [f64; 2]) -> f64 {
    p[1].atan2(p[0])
}

/// Outline of a planar convex cone clipped to the drawing square.
fn piece_path(piece: &ConvexConePiece) -> String {
    let mut d = String::new();
    if piece.is_whole_space() {
        let r = REACH;
        fmt_point(&mut d, 'M', [-r, -r]);
        for p in [[r, -r], [r, r], [-r, r]] {
            fmt_point(&mut d, 'L', p);
        }
        d.push('Z');
        return d;
    }
    let mut pts: Vec<[f64; 2]> = piece.generators().iter().map(to_reach).collect();
    match pts.len() {
        0 => fmt_point(&mut d, 'M', [0.0, 0.0]),
        1 => {
            fmt_point(&mut d, 'M', [0.0, 0.0]);
            fmt_point(&mut d, 'L', pts[0]);
        }
        _ if piece.span_dim() == 1 && !piece.is_pointed() => {
            fmt_point(&mut d, 'M', pts[0]);
            fmt_point(&mut d, 'L', pts[1]);
        }
        _ => {
            pts.sort_by(|a, b| angle(*a).total_cmp(&angle(*b)));
            // Start right after the widest angular gap, which lies outside.
            let n = pts.len();
            let gap = |i: usize| {
                let g = angle(pts[(i + 1) % n]) - angle(pts[i]);
                if g <= 0.0 {
                    g + std::f64::consts::TAU
                } else {
                    g
                }
            };
            let widest = (0..n).max_by(|&i, &j| gap(i).total_cmp(&gap(j))).unwrap_or(0);
            fmt_point(&mut d, 'M', [0.0, 0.0]);
            for k in 1..=n {
                fmt_point(&mut d, 'L', pts[(widest + k) % n]);
            }
            d.push('Z');
        }
    }
    d.trim_end().to_string()
}

/// Convex hull outline of a planar point set (monotone chain).
fn hull_path(points: &[Vector]) -> String {
    let mut pts: Vec<[f64; 2]> = points
        .iter()
        .map(|p| {
            let f = p.to_f64();
            [f[0], f[1]]
        })
        .collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut hull: Vec<[f64; 2]> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 1e-12 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.is_empty() {
        hull = pts;
    }
    let mut d = String::new();
    for (i, p) in hull.iter().enumerate() {
        fmt_point(&mut d, if i == 0 { 'M' } else { 'L' }, *p);
    }
    if hull.len() > 2 {
        d.push('Z');
    }
    d.trim_end().to_string()
}

/// Exact rays of `{x : x*(x) + αψ(x) = 0}` in the plane.
pub fn zero_level_rays(x_star: &Functional, alpha: &crate::numerics::Scalar, psi: &PolyhedralSeminorm) -> Vec<Vector> {
    let phi = |v: &Vector| x_star.apply(v) + alpha * &psi.value(v);
    let mut rows = vec![x_star.coeffs().clone()];
    rows.extend(psi.generators().iter().map(|c| x_star.add(&c.scale(alpha)).into_coeffs()));
    let mut rays: Vec<Vector> = Vec::new();
    for r in rows.iter().filter(|r| !r.is_zero()) {
        let c = r.coords();
        let perp = Vector::new(vec![-c[1].clone(), c[0].clone()]).primitive();
        for d in [perp.clone(), perp.neg()] {
            if phi(&d).is_zero() && !rays.contains(&d) {
                rays.push(d);
            }
        }
    }
    rays.sort();
    rays
}

fn cone_paths(out: &mut String, cone: &ConeUnion, class: &str, fill: &str) {
    for (i, p) in cone.pieces().iter().enumerate() {
        let _ = writeln!(
            out,
            r#"    <path id="{class}-{i}" class="{class}" d="{}" fill="{fill}" fill-opacity="0.3" stroke="{fill}" stroke-width="0.01"/>"#,
            piece_path(p)
        );
    }
}

/// Renders a planar instance, with the level curve when a certificate is
/// given.
pub fn render(problem: &SeparationProblem, cert: Option<&SeparationCertificate>) -> Result<String> {
    if problem.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: problem.dim(),
        });
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{VIEW_BOX}" width="480" height="480">"#
    );
    out.push_str("  <g transform=\"scale(1,-1)\">\n");
    let _ = writeln!(
        out,
        r#"    <path class="axes" d="M -1.5 0 L 1.5 0 M 0 -1.5 L 0 1.5" stroke="gray" stroke-width="0.005"/>"#
    );
    cone_paths(&mut out, &problem.minus_k(), "minus-k", "steelblue");
    cone_paths(&mut out, &problem.separated_cone()?, "a", "darkorange");
    let _ = writeln!(
        out,
        r#"    <path id="s-minus-k" class="base" d="{}" fill="none" stroke="navy" stroke-width="0.015"/>"#,
        hull_path(&problem.s_minus_k()?)
    );
    let _ = writeln!(
        out,
        r#"    <path id="s-a0" class="base" d="{}" fill="none" stroke="saddlebrown" stroke-width="0.015"/>"#,
        hull_path(&problem.s_a0()?)
    );
    if let Some(c) = cert {
        let mut d = String::new();
        for r in zero_level_rays(&c.aug.x_star, &c.aug.alpha, &problem.psi) {
            fmt_point(&mut d, 'M', [0.0, 0.0]);
            fmt_point(&mut d, 'L', to_reach(&r));
        }
        if d.is_empty() {
            fmt_point(&mut d, 'M', [0.0, 0.0]);
        }
        let _ = writeln!(
            out,
            r#"    <path id="level-curve" class="level-curve" d="{}" fill="none" stroke="crimson" stroke-width="0.02"/>"#,
            d.trim_end()
        );
    }
    out.push_str("  </g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::numerics::Scalar;
    use crate::separation::{separate_strict, Variant};

    #[test]
    fn level_rays_of_orthant_certificate() {
        let psi = PolyhedralSeminorm::linf(2);
        let rays = zero_level_rays(&Functional::from_ints(&[1, 1]), &Scalar::ratio(1, 2), &psi);
        for r in &rays {
            assert!((Functional::from_ints(&[1, 1]).apply(r) + Scalar::ratio(1, 2) * psi.value(r)).is_zero());
        }
        assert_eq!(rays, vec![Vector::from_ints(&[-2, 1]), Vector::from_ints(&[1, -2])]);
    }

    #[test]
    fn picture_has_one_path_per_part() {
        let p = bundled::sectors_convex(&bundled::default_gauge(), Variant::Strict).unwrap();
        let cert = separate_strict(&p).unwrap();
        let svg = render(&p, Some(&cert)).unwrap();
        assert_eq!(svg.matches("class=\"minus-k\"").count(), 1);
        assert_eq!(svg.matches("class=\"a\"").count(), 2);
        assert_eq!(svg.matches("class=\"base\"").count(), 2);
        assert_eq!(svg.matches("class=\"level-curve\"").count(), 1);
        assert!(svg.contains(VIEW_BOX));
    }

    #[test]
    fn whole_plane_and_halfplane_outlines() {
        assert!(piece_path(&ConvexConePiece::whole_space(2)).ends_with('Z'));
        let h = ConvexConePiece::from_generators(
            &[Vector::from_ints(&[1, 0]), Vector::from_ints(&[-1, 0]), Vector::from_ints(&[0, 1])],
            2,
        )
        .unwrap();
        assert_eq!(piece_path(&h).matches('L').count(), 3);
    }
}
