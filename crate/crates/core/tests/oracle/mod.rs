//! Independent exact oracles for the integration suites. Only field
//! arithmetic on `Scalar` is shared with the library.
#![allow(dead_code)]

use conesep::{Scalar, Vector};

pub fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn combo(weights: &[Scalar], points: &[Vector], dim: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); dim];
    for (w, p) in weights.iter().zip(points) {
        for (o, c) in out.iter_mut().zip(p.coords()) {
            *o = o.clone() + w * c;
        }
    }
    out
}

/// Unique solution of a square system by Gaussian elimination.
pub fn solve_square(mut a: Vec<Vec<Scalar>>, mut b: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let v = &a[col][c] * &f;
                    a[r][c] = a[r][c].clone() - v;
                }
                let v = &b[col] * &f;
                b[r] = b[r].clone() - v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// A polyhedral gauge `max_j rows_j · x`.
#[derive(Clone, Debug)]
pub struct Gauge {
    pub rows: Vec<Vec<Scalar>>,
}

impl Gauge {
    pub fn linf(n: usize) -> Self {
        let mut rows = Vec::new();
        for i in 0..n {
            for sign in [1, -1] {
                let mut r = vec![s(0); n];
                r[i] = s(sign);
                rows.push(r);
            }
        }
        Gauge { rows }
    }

    /// Gauge of a centrally symmetric planar polygon, from its edge normals.
    pub fn polygon(vertices: &[Vector]) -> Self {
        let mut v: Vec<Vector> = vertices.to_vec();
        v.sort_by(|a, b| {
            let fa = a.to_f64();
            let fb = b.to_f64();
            fa[1].atan2(fa[0]).total_cmp(&fb[1].atan2(fb[0]))
        });
        let rows = (0..v.len())
            .map(|i| {
                let p = v[i].coords();
                let q = v[(i + 1) % v.len()].coords();
                solve_square(
                    vec![p.to_vec(), q.to_vec()],
                    vec![s(1), s(1)],
                )
                .expect("adjacent vertices are independent")
            })
            .collect();
        Gauge { rows }
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        self.rows.iter().map(|r| dot(r, x)).max().expect("rows")
    }

    pub fn at(&self, x: &Vector) -> Scalar {
        self.eval(x.coords())
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Images of the vertices of `{λ ≥ 0 : ψ(Gλ) ≤ 1}`: a point set whose hull
/// is `cone(G) ∩ {ψ ≤ 1}`. Includes the origin.
pub fn truncation_points(gens: &[Vector], gauge: &Gauge) -> Vec<Vector> {
    let m = gens.len();
    let dim = gens[0].dim();
    // Row form of each constraint `a·λ ≤ b` in λ-space.
    let mut rows: Vec<(Vec<Scalar>, Scalar)> = Vec::new();
    for i in 0..m {
        let mut r = vec![s(0); m];
        r[i] = s(-1);
        rows.push((r, s(0)));
    }
    for c in &gauge.rows {
        rows.push((gens.iter().map(|g| dot(c, g.coords())).collect(), s(1)));
    }
    let mut out: Vec<Vector> = Vec::new();
    for sub in subsets(rows.len(), m) {
        let a = sub.iter().map(|&i| rows[i].0.clone()).collect();
        let b = sub.iter().map(|&i| rows[i].1.clone()).collect();
        let Some(lambda) = solve_square(a, b) else { continue };
        if rows.iter().all(|(r, b)| dot(r, &lambda) <= *b) {
            let p = Vector::new(combo(&lambda, gens, dim));
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// Points of the truncation with `ψ = 1`; their hull is the hull of the base.
pub fn base_points(gens: &[Vector], gauge: &Gauge) -> Vec<Vector> {
    truncation_points(gens, gauge)
        .into_iter()
        .filter(|p| gauge.at(p) == s(1))
        .collect()
}

pub fn cross(o: &Vector, a: &Vector, b: &Vector) -> Scalar {
    let (o, a, b) = (o.coords(), a.coords(), b.coords());
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Counter-clockwise hull of planar points, collinear points dropped.
pub fn hull_2d(points: &[Vector]) -> Vec<Vector> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vector> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vector> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// `Some(true)` strictly inside, `Some(false)` on the boundary, `None`
/// outside; the hull must be two-dimensional.
pub fn locate_2d(hull: &[Vector], p: &Vector) -> Option<bool> {
    let mut strict = true;
    for i in 0..hull.len() {
        let c = cross(&hull[i], &hull[(i + 1) % hull.len()], p);
        if c.is_negative() {
            return None;
        }
        if c.is_zero() {
            strict = false;
        }
    }
    Some(strict)
}

/// Exact check of a convex-combination certificate.
pub fn is_convex_combination(weights: &[Scalar], points: &[Vector], target: &Vector) -> bool {
    weights.len() == points.len()
        && weights.iter().all(|w| !w.is_negative())
        && weights.iter().fold(s(0), |a, w| a + w) == s(1)
        && combo(weights, points, target.dim()) == target.coords()
}
