//! Polyhedral seminorms and sublinear functions `ψ(x) = max_j c_j(x)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::linalg::{nullspace_basis, rank};
use crate::numerics::{point_in_hull, Functional, LinearProgram, LpOutcome, Relation, Scalar, Sense, Vector};
use crate::polyhedra::dd::vertex_enumeration;

fn check_generators(generators: &[Functional]) -> Result<usize> {
    let first = generators
        .first()
        .ok_or_else(|| Error::DegenerateInput("generator list is empty".into()))?;
    let dim = first.dim();
    for g in generators {
        g.coeffs().check_dim(dim)?;
    }
    Ok(dim)
}

fn max_value(generators: &[Functional], x: &Vector) -> Scalar {
    generators
        .iter()
        .map(|c| c.apply(x))
        .max()
        .expect("nonempty generator list")
}

/// Drop duplicates and generators inside the hull of the others.
/// Normals `c` with `c·p = c·q = 1 ≥ c·v` for all ball vertices `v`: the
/// edges of a planar ball, which are exactly the vertices of its polar.
fn planar_edge_normals(vertices: &[Vector]) -> Vec<Functional> {
    let mut out: Vec<Functional> = Vec::new();
    for (i, p) in vertices.iter().enumerate() {
        for q in &vertices[i + 1..] {
            let (p, q) = (p.coords(), q.coords());
            let det = &p[0] * &q[1] - &p[1] * &q[0];
            if det.is_zero() {
                continue;
            }
            let c = Vector::new(vec![(&q[1] - &p[1]) / &det, (&p[0] - &q[0]) / &det]);
            if vertices.iter().all(|v| c.dot(v) <= Scalar::one()) {
                out.push(Functional::new(c));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn prune(mut generators: Vec<Functional>) -> Vec<Functional> {
    generators.sort();
    generators.dedup();
    let mut kept = generators.clone();
    let mut i = 0;
    while i < kept.len() && kept.len() > 1 {
        let others: Vec<Vector> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.coeffs().clone())
            .collect();
        let inside = point_in_hull(&others, kept[i].coeffs())
            .map(|m| m.is_member())
            .unwrap_or(false);
        if inside {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    kept
}

/// `ψ(x) = max_j c_j(x)`: positively homogeneous and subadditive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublinearFunction {
    dim: usize,
    generators: Vec<Functional>,
}

impl SublinearFunction {
    pub fn new(generators: Vec<Functional>) -> Result<Self> {
        let dim = check_generators(&generators)?;
        Ok(SublinearFunction {
            dim,
            generators: prune(generators),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Functional] {
        &self.generators
    }

    pub fn evaluate(&self, x: &Vector) -> Result<Scalar> {
        x.check_dim(self.dim)?;
        Ok(self.value(x))
    }

    /// Unchecked evaluation.
    pub fn value(&self, x: &Vector) -> Scalar {
        max_value(&self.generators, x)
    }
}

/// A symmetric polyhedral gauge: `c` is a generator iff `-c` is.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyhedralSeminorm {
    dim: usize,
    generators: Vec<Functional>,
}

impl PolyhedralSeminorm {
    /// From an explicit symmetric generator set. Non-extreme generators are
    /// dropped.
    pub fn new(generators: Vec<Functional>) -> Result<Self> {
        let dim = check_generators(&generators)?;
        let generators = prune(generators);
        for g in &generators {
            if !generators.contains(&g.neg()) {
                return Err(Error::NotSymmetric(g.coeffs().clone()));
            }
        }
        Ok(PolyhedralSeminorm { dim, generators })
    }

    fn symmetrized(generators: Vec<Functional>) -> Self {
        let dim = generators[0].dim();
        let mut all = generators.clone();
        all.extend(generators.iter().map(Functional::neg));
        PolyhedralSeminorm {
            dim,
            generators: prune(all),
        }
    }

    /// `max_i |x_i|`
    pub fn linf(dim: usize) -> Self {
        let gens = (0..dim)
            .map(|i| Functional::new(Vector::unit(dim, i)))
            .collect();
        Self::symmetrized(gens)
    }

    /// `Σ |x_i|`, generated by all sign vectors.
    pub fn l1(dim: usize) -> Self {
        let gens = (0..1u32 << dim)
            .map(|mask| {
                Functional::new(Vector::from_ints(
                    &(0..dim)
                        .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                        .collect::<Vec<_>>(),
                ))
            })
            .collect::<Vec<_>>();
        let mut generators = gens;
        generators.sort();
        PolyhedralSeminorm { dim, generators }
    }

    /// `|x*(x)|`
    pub fn abs_functional(x_star: &Functional) -> Result<Self> {
        if x_star.is_zero() {
            return Err(Error::ZeroFunctional);
        }
        Ok(Self::symmetrized(vec![x_star.clone()]))
    }

    /// Gauge of the symmetric polytope `conv(ball_vertices)`; its generators
    /// are the vertices of the polar polytope.
    pub fn minkowski_norm_from_ball(ball_vertices: &[Vector]) -> Result<Self> {
        let dim = ball_vertices
            .first()
            .ok_or_else(|| Error::DegenerateInput("empty ball".into()))?
            .dim();
        for v in ball_vertices {
            v.check_dim(dim)?;
            if !ball_vertices.contains(&v.neg()) {
                return Err(Error::NotSymmetric(v.clone()));
            }
        }
        // A symmetric set has the origin in the interior of its hull iff it
        // spans the space.
        if rank(ball_vertices, dim) < dim {
            return Err(Error::OriginNotInterior);
        }
        if dim == 2 {
            return Ok(PolyhedralSeminorm {
                dim,
                generators: planar_edge_normals(ball_vertices),
            });
        }
        let polar: Vec<(Vector, Scalar)> = ball_vertices
            .iter()
            .map(|v| (v.clone(), Scalar::one()))
            .collect();
        let gens = vertex_enumeration(&polar, dim)?
            .into_iter()
            .map(Functional::new)
            .collect();
        Ok(PolyhedralSeminorm {
            dim,
            generators: prune(gens),
        })
    }

    /// `ψ_max(y) = max(ψ(y), ψ(-y))`
    pub fn psi_max(psi: &SublinearFunction) -> Self {
        Self::symmetrized(psi.generators.clone())
    }

    /// Pointwise maximum of a finite family.
    pub fn sup_family(family: &[PolyhedralSeminorm]) -> Result<Self> {
        let first = family.first().ok_or(Error::EmptyFamily)?;
        let mut gens = Vec::new();
        for s in family {
            if s.dim != first.dim {
                return Err(Error::DimensionMismatch {
                    expected: first.dim,
                    found: s.dim,
                });
            }
            gens.extend(s.generators.iter().cloned());
        }
        Ok(PolyhedralSeminorm {
            dim: first.dim,
            generators: prune(gens),
        })
    }

    /// Gauge of a rational `2m`-gon inscribed in the unit circle.
    pub fn regular_polygon_norm(m: usize) -> Result<Self> {
        Self::minkowski_norm_from_ball(&regular_polygon_vertices(m)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Functional] {
        &self.generators
    }

    pub fn evaluate(&self, x: &Vector) -> Result<Scalar> {
        x.check_dim(self.dim)?;
        Ok(self.value(x))
    }

    /// Unchecked evaluation.
    pub fn value(&self, x: &Vector) -> Scalar {
        max_value(&self.generators, x)
    }

    /// Basis of `{x : ψ(x) = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let rows: Vec<Vector> = self.generators.iter().map(|g| g.coeffs().clone()).collect();
        nullspace_basis(&rows, self.dim)
    }

    pub fn is_norm(&self) -> bool {
        self.kernel().is_empty()
    }

    /// Scale `x ≠ 0` to `ψ = 1`; `None` when `ψ(x) = 0`.
    pub fn normalize(&self, x: &Vector) -> Option<Vector> {
        let v = self.value(x);
        if v.is_zero() {
            None
        } else {
            Some(x.scale(&v.recip()))
        }
    }

    pub fn as_sublinear(&self) -> SublinearFunction {
        SublinearFunction {
            dim: self.dim,
            generators: self.generators.clone(),
        }
    }
}

/// Vertices of the rational `2m`-gon: points `((1-t²)/(1+t²), 2t/(1+t²))`
/// for `t ≈ tan(kπ/2m)`, `k = 0..m`, and their negatives.
pub fn regular_polygon_vertices(m: usize) -> Result<Vec<Vector>> {
    if m < 2 {
        return Err(Error::BadOrder(m));
    }
    let mut out = Vec::with_capacity(2 * m);
    for k in 0..m {
        let t = Scalar::approximate((k as f64 * PI / (2 * m) as f64).tan(), 64);
        let t2 = &t * &t;
        let d = Scalar::one() + &t2;
        let p = Vector::new(vec![(Scalar::one() - &t2) / &d, (Scalar::from_int(2) * &t) / &d]);
        out.push(p.neg());
        out.push(p);
    }
    Ok(out)
}

/// `ψ(x) = max_i a_i(x)` for `-K = {x : a_i(x) ≤ 0}`; requires `-K` solid.
pub fn gerstewitz_from_solid_cone(minus_k_facets: &[Functional]) -> Result<SublinearFunction> {
    let dim = check_generators(minus_k_facets)?;
    // max t subject to a_i(x) + t ≤ 0, t ≤ 1
    let mut lp = LinearProgram::new(dim + 1, Sense::Max);
    lp.set_all_free();
    lp.set_objective(Vector::unit(dim + 1, dim));
    for a in minus_k_facets {
        let mut row = a.coeffs().coords().to_vec();
        row.push(Scalar::one());
        lp.add(Vector::new(row), Relation::Le, Scalar::zero());
    }
    lp.add(Vector::unit(dim + 1, dim), Relation::Le, Scalar::one());
    match lp.solve() {
        LpOutcome::Optimal { value, .. } if value.is_positive() => {}
        _ => return Err(Error::NotSolid),
    }
    SublinearFunction::new(minus_k_facets.to_vec())
}
