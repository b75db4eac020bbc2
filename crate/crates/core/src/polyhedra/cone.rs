//! Convex polyhedral cones and finite unions of them.

use crate::error::{Error, Result};
use crate::numerics::linalg::{nullspace_basis, project_orthogonal};
use crate::numerics::{Functional, Vector};

use super::dd::{check_dim, cone_from_inequalities, double_description};
use super::region::{difference_witness, Region};

pub const MAX_GENERATORS: usize = 16;

/// A convex polyhedral cone `L + cone(R)` held in both representations.
///
/// The representation is canonical: the lineality basis is in reduced
/// echelon form, rays are primitive integer vectors orthogonal to the
/// lineality space, and facets are irredundant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvexConePiece {
    dim: usize,
    lineality: Vec<Vector>,
    rays: Vec<Vector>,
    equalities: Vec<Vector>,
    inequalities: Vec<Vector>,
}

impl ConvexConePiece {
    /// `R₊`-hull of the given generators.
    pub fn from_generators(generators: &[Vector], dim: usize) -> Result<Self> {
        check_dim(dim)?;
        generators.iter().try_for_each(|g| g.check_dim(dim))?;
        if generators.len() > MAX_GENERATORS {
            return Err(Error::TooManyGenerators {
                count: generators.len(),
                max: MAX_GENERATORS,
            });
        }
        let nonzero: Vec<Vector> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
        if nonzero.is_empty() {
            return Ok(Self::zero(dim));
        }
        let h = double_description(&nonzero, dim)?;
        Self::from_facets(&h.equalities, &h.inequalities, dim)
    }

    /// `{x : e·x = 0, a·x ≥ 0}`.
    pub fn from_facets(equalities: &[Vector], inequalities: &[Vector], dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let mut rows: Vec<Vector> = inequalities.to_vec();
        for e in equalities {
            rows.push(e.clone());
            rows.push(e.neg());
        }
        let v = cone_from_inequalities(&rows, dim)?;
        let mut gens = v.rays.clone();
        for l in &v.lineality {
            gens.push(l.clone());
            gens.push(l.neg());
        }
        if gens.is_empty() {
            return Ok(Self::zero(dim));
        }
        let h = double_description(&gens, dim)?;
        Ok(ConvexConePiece {
            dim,
            lineality: v.lineality,
            rays: v.rays,
            equalities: h.equalities,
            inequalities: h.inequalities,
        })
    }

    pub fn from_inequalities(inequalities: &[Vector], dim: usize) -> Result<Self> {
        Self::from_facets(&[], inequalities, dim)
    }

    pub fn zero(dim: usize) -> Self {
        ConvexConePiece {
            dim,
            lineality: Vec::new(),
            rays: Vec::new(),
            equalities: (0..dim).map(|i| Vector::unit(dim, i)).collect(),
            inequalities: Vec::new(),
        }
    }

    pub fn whole_space(dim: usize) -> Self {
        ConvexConePiece {
            dim,
            lineality: (0..dim).map(|i| Vector::unit(dim, i)).collect(),
            rays: Vec::new(),
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    /// `R^n_+`
    pub fn orthant(dim: usize) -> Self {
        let units: Vec<Vector> = (0..dim).map(|i| Vector::unit(dim, i)).collect();
        Self::from_generators(&units, dim).expect("valid orthant")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lineality_basis(&self) -> &[Vector] {
        &self.lineality
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn equalities(&self) -> &[Vector] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[Vector] {
        &self.inequalities
    }

    /// Rays plus both orientations of each lineality basis vector.
    pub fn generators(&self) -> Vec<Vector> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.neg());
        }
        g
    }

    /// Functionals `f` with `x ∈ piece ⟺ f(x) ≥ 0 for all f`.
    pub fn facets(&self) -> Vec<Functional> {
        let mut f: Vec<Functional> = self.inequalities.iter().cloned().map(Functional::new).collect();
        for e in &self.equalities {
            f.push(Functional::new(e.clone()));
            f.push(Functional::new(e.neg()));
        }
        f
    }

    /// All constraint rows `≥ 0`, equalities doubled.
    pub fn constraint_rows(&self) -> Vec<Vector> {
        self.facets().into_iter().map(Functional::into_coeffs).collect()
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.equalities.iter().all(|e| e.dot(x).is_zero())
            && self.inequalities.iter().all(|a| !a.dot(x).is_negative())
    }

    pub fn interior_contains(&self, x: &Vector) -> bool {
        self.equalities.is_empty() && self.inequalities.iter().all(|a| a.dot(x).is_positive())
    }

    pub fn relative_interior_contains(&self, x: &Vector) -> bool {
        self.equalities.iter().all(|e| e.dot(x).is_zero())
            && self.inequalities.iter().all(|a| a.dot(x).is_positive())
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dim(&self) -> bool {
        self.equalities.is_empty()
    }

    pub fn is_whole_space(&self) -> bool {
        self.lineality.len() == self.dim
    }

    /// Dimension of the linear span.
    pub fn span_dim(&self) -> usize {
        self.dim - self.equalities.len()
    }

    /// A point in the relative interior (sum of the extreme rays).
    pub fn relative_interior_point(&self) -> Vector {
        self.rays
            .iter()
            .fold(Vector::zeros(self.dim), |acc, r| acc.add(r))
    }

    pub fn neg(&self) -> Self {
        let mut rays: Vec<Vector> = self.rays.iter().map(Vector::neg).collect();
        rays.sort();
        let mut inequalities: Vec<Vector> = self.inequalities.iter().map(Vector::neg).collect();
        inequalities.sort();
        ConvexConePiece {
            dim: self.dim,
            lineality: self.lineality.clone(),
            rays,
            equalities: self.equalities.clone(),
            inequalities,
        }
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        let mut eq = self.equalities.clone();
        eq.extend(other.equalities.iter().cloned());
        let mut ineq = self.inequalities.clone();
        ineq.extend(other.inequalities.iter().cloned());
        Self::from_facets(&eq, &ineq, self.dim)
    }

    /// `{y : y(g) ≥ 0 for all g in the piece}`.
    pub fn dual(&self) -> Result<Self> {
        Self::from_facets(&self.lineality, &self.rays, self.dim)
    }

    /// Intersection with `{x : f(x) = 0}`.
    pub fn face(&self, f: &Functional) -> Result<Self> {
        let mut eq = self.equalities.clone();
        eq.push(f.coeffs().clone());
        Self::from_facets(&eq, &self.inequalities, self.dim)
    }

    pub fn contains_piece(&self, other: &Self) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// Nonzero element of the piece inside `span(basis)`, if any.
    pub fn meets_span(&self, basis: &[Vector]) -> Result<Option<Vector>> {
        let rows: Vec<Vector> = basis.to_vec();
        let complement = nullspace_basis(&rows, self.dim);
        let sub = self.intersect(&Self::from_facets(&complement, &[], self.dim)?)?;
        Ok(sub.generators().into_iter().next())
    }

    /// Lineality component removed: `x` projected orthogonally to `L`.
    pub fn project_out_lineality(&self, x: &Vector) -> Vector {
        project_orthogonal(x, &self.lineality)
    }
}

/// A possibly nonconvex cone: a nonempty finite union of convex pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeUnion {
    dim: usize,
    pieces: Vec<ConvexConePiece>,
}

/// Per-piece interior test; for several pieces a negative answer may miss
/// points interior only to the union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorVerdict {
    pub inside: bool,
    pub under_approximation: bool,
}

impl ConeUnion {
    pub fn new(pieces: Vec<ConvexConePiece>) -> Result<Self> {
        let dim = pieces
            .first()
            .ok_or_else(|| Error::DegenerateInput("cone union needs a piece".into()))?
            .dim;
        for p in &pieces {
            if p.dim != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim,
                });
            }
        }
        let mut pieces = pieces;
        pieces.dedup();
        Ok(ConeUnion { dim, pieces })
    }

    pub fn convex(piece: ConvexConePiece) -> Self {
        ConeUnion {
            dim: piece.dim,
            pieces: vec![piece],
        }
    }

    pub fn from_generator_lists(lists: &[Vec<Vector>], dim: usize) -> Result<Self> {
        let pieces = lists
            .iter()
            .map(|g| ConvexConePiece::from_generators(g, dim))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pieces)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[ConvexConePiece] {
        &self.pieces
    }

    pub fn all_generators(&self) -> Vec<Vector> {
        let mut g: Vec<Vector> = self.pieces.iter().flat_map(|p| p.generators()).collect();
        g.sort();
        g.dedup();
        g
    }

    pub fn neg(&self) -> Self {
        ConeUnion {
            dim: self.dim,
            pieces: self.pieces.iter().map(ConvexConePiece::neg).collect(),
        }
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(ConvexConePiece::is_zero)
    }

    pub fn is_solid(&self) -> bool {
        self.pieces.iter().any(ConvexConePiece::is_full_dim)
    }

    pub fn interior_membership(&self, x: &Vector) -> InteriorVerdict {
        InteriorVerdict {
            inside: self.pieces.iter().any(|p| p.interior_contains(x)),
            under_approximation: self.pieces.len() > 1,
        }
    }

    /// `{0} ≠ K ≠ E`, required wherever nontrivial cones are assumed.
    pub fn check_nontrivial(&self, name: &str) -> Result<()> {
        if self.is_zero() {
            return Err(Error::NontrivialityViolated(format!("{name} is {{0}}")));
        }
        if self.pieces.iter().any(ConvexConePiece::is_whole_space) {
            return Err(Error::NontrivialityViolated(format!(
                "{name} is the whole space"
            )));
        }
        Ok(())
    }

    /// `K⁺`, the intersection of the pieces' duals.
    pub fn dual_cone(&self) -> Result<ConvexConePiece> {
        let gens = self.all_generators();
        if gens.is_empty() {
            return Ok(ConvexConePiece::whole_space(self.dim));
        }
        ConvexConePiece::from_inequalities(&gens, self.dim)
    }

    /// `K ∩ (-K)` as the union of all `P_i ∩ (-P_j)`.
    pub fn lineality(&self) -> Result<LinealityReport> {
        let mut pieces = Vec::new();
        for p in &self.pieces {
            for q in &self.pieces {
                let r = p.intersect(&q.neg())?;
                if !pieces.contains(&r) {
                    pieces.push(r);
                }
            }
        }
        pieces.sort_by(|a: &ConvexConePiece, b| a.generators().cmp(&b.generators()));
        let cone = ConeUnion::new(pieces)?;
        let pointed = cone.is_zero();
        let hull = cone.convex_hull()?;
        let is_subspace = hull.rays().is_empty() && cone.is_convex()?;
        Ok(LinealityReport {
            cone,
            pointed,
            is_subspace,
        })
    }

    /// `conv K`, the cone generated by every piece.
    pub fn convex_hull(&self) -> Result<ConvexConePiece> {
        ConvexConePiece::from_generators(&self.all_generators(), self.dim)
    }

    /// Exact convexity test: `conv K ∖ K` is empty.
    pub fn is_convex(&self) -> Result<bool> {
        if self.pieces.len() == 1 {
            return Ok(true);
        }
        let hull = self.convex_hull()?;
        Ok(difference_witness(&Region::from_piece(&hull), &self.pieces, self.dim)?.is_none())
    }

    pub fn is_pointed(&self) -> Result<bool> {
        Ok(self.lineality()?.pointed)
    }

    /// Nonzero element of `K ∩ (-K)`, if any.
    pub fn lineality_witness(&self) -> Result<Option<Vector>> {
        let l = self.lineality()?;
        Ok(l.cone.all_generators().into_iter().next())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinealityReport {
    pub cone: ConeUnion,
    pub pointed: bool,
    pub is_subspace: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    #[test]
    fn orthant_is_self_dual() {
        let k = ConvexConePiece::orthant(2);
        assert_eq!(k.dual().unwrap(), k);
        assert!(k.interior_contains(&v(&[1, 1])));
        assert!(!k.interior_contains(&v(&[1, 0])));
    }

    #[test]
    fn dual_of_two_generator_cone() {
        let k = ConvexConePiece::from_generators(&[v(&[1, 0]), v(&[1, 1])], 2).unwrap();
        let d = ConeUnion::convex(k).dual_cone().unwrap();
        assert_eq!(d.rays(), &[v(&[0, 1]), v(&[1, -1])]);
    }

    #[test]
    fn opposite_orthants() {
        let k = ConvexConePiece::orthant(2);
        let u = ConeUnion::new(vec![k.clone(), k.neg()]).unwrap();
        assert!(u.dual_cone().unwrap().is_zero());
        let l = u.lineality().unwrap();
        assert!(!l.pointed);
        assert!(l.cone.contains(&v(&[1, 1])));
        assert!(l.cone.contains(&v(&[-1, -2])));
        assert!(!l.cone.contains(&v(&[1, -1])));
    }

    #[test]
    fn halfplane_lineality_is_axis() {
        let h = ConvexConePiece::from_generators(&[v(&[1, 0]), v(&[-1, 0]), v(&[0, 1])], 2).unwrap();
        assert_eq!(h.lineality_basis(), &[v(&[1, 0])]);
        let l = ConeUnion::convex(h).lineality().unwrap();
        assert!(!l.pointed);
        assert_eq!(l.cone.pieces().len(), 1);
        assert_eq!(l.cone.pieces()[0].lineality_basis(), &[v(&[1, 0])]);
        assert!(l.cone.pieces()[0].rays().is_empty());
    }

    #[test]
    fn two_halfplanes_interior_is_under_approximated() {
        let up = ConvexConePiece::from_inequalities(&[v(&[0, 1])], 2).unwrap();
        let u = ConeUnion::new(vec![up.clone(), up.neg()]).unwrap();
        let verdict = u.interior_membership(&v(&[1, 0]));
        assert!(!verdict.inside);
        assert!(verdict.under_approximation);
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let k = ConvexConePiece::from_generators(&[v(&[1, 0]), v(&[2, 1]), v(&[0, 1]), v(&[3, 0])], 2)
            .unwrap();
        assert_eq!(k.rays(), &[v(&[0, 1]), v(&[1, 0])]);
    }
}
