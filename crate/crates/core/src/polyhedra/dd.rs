//! Double description: conversion between inequality and generator
//! representations of polyhedral cones, and vertex enumeration of polytopes.

use crate::error::{Error, Result};
use crate::numerics::linalg::{project_orthogonal, span_basis};
use crate::numerics::{Scalar, Vector};

pub const MAX_DIM: usize = 8;

/// Generator form `L + cone(R)` of a polyhedral cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeGenerators {
    /// Basis of the lineality space.
    pub lineality: Vec<Vector>,
    /// Extreme rays modulo the lineality space, orthogonal to it.
    pub rays: Vec<Vector>,
}

/// Inequality form `{x : e·x = 0, a·x ≥ 0}` of a polyhedral cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeFacets {
    pub equalities: Vec<Vector>,
    pub inequalities: Vec<Vector>,
}

pub fn check_dim(dim: usize) -> Result<()> {
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge { dim, max: MAX_DIM });
    }
    if dim == 0 {
        return Err(Error::DegenerateInput("dimension must be positive".into()));
    }
    Ok(())
}

fn zero_set(v: &Vector, rows: &[Vector]) -> Vec<bool> {
    rows.iter().map(|a| a.dot(v).is_zero()).collect()
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(x, y)| !*x || *y)
}

/// Generators of `{x : a·x ≥ 0 for every row a}` (Motzkin's method).
pub fn cone_from_inequalities(rows: &[Vector], dim: usize) -> Result<ConeGenerators> {
    check_dim(dim)?;
    rows.iter().try_for_each(|r| r.check_dim(dim))?;
    Ok(motzkin(rows, dim))
}

fn motzkin(rows: &[Vector], dim: usize) -> ConeGenerators {
    let mut lin: Vec<Vector> = (0..dim).map(|i| Vector::unit(dim, i)).collect();
    let mut rays: Vec<Vector> = Vec::new();
    let mut done: Vec<Vector> = Vec::new();

    for a in rows.iter().filter(|a| !a.is_zero()) {
        if let Some(k) = lin.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l0 = lin.remove(k);
            if a.dot(&l0).is_negative() {
                l0 = l0.neg();
            }
            let al0 = a.dot(&l0);
            for v in lin.iter_mut().chain(rays.iter_mut()) {
                let f = a.dot(v) / &al0;
                if !f.is_zero() {
                    *v = v.add_scaled(&-f, &l0).primitive();
                }
            }
            rays.push(l0.primitive());
            done.push(a.clone());
            continue;
        }

        let vals: Vec<Scalar> = rays.iter().map(|r| a.dot(r)).collect();
        let zs: Vec<Vec<bool>> = rays.iter().map(|r| zero_set(r, &done)).collect();
        let mut next = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if !vals[i].is_negative() {
                next.push(r.clone());
            }
        }
        for p in (0..rays.len()).filter(|&i| vals[i].is_positive()) {
            for n in (0..rays.len()).filter(|&i| vals[i].is_negative()) {
                let common: Vec<bool> = zs[p].iter().zip(&zs[n]).map(|(x, y)| *x && *y).collect();
                let adjacent = (0..rays.len())
                    .filter(|&r| r != p && r != n)
                    .all(|r| !subset(&common, &zs[r]));
                if adjacent {
                    let v = rays[n].scale(&vals[p]).sub(&rays[p].scale(&vals[n]));
                    next.push(v.primitive());
                }
            }
        }
        rays = next;
        done.push(a.clone());
    }

    let lineality = span_basis(&lin, dim);
    let mut canon: Vec<Vector> = rays
        .iter()
        .map(|r| project_orthogonal(r, &lineality).primitive())
        .filter(|r| !r.is_zero())
        .collect();
    canon.sort();
    canon.dedup();
    ConeGenerators {
        lineality,
        rays: canon,
    }
}

/// Irredundant inequality description of `cone(generators)`.
pub fn double_description(generators: &[Vector], dim: usize) -> Result<ConeFacets> {
    let dual = cone_from_inequalities(generators, dim)?;
    Ok(ConeFacets {
        equalities: dual.lineality,
        inequalities: dual.rays,
    })
}

/// Vertices of `{x : a_i·x ≤ b_i}`; empty when the system is infeasible.
pub fn vertex_enumeration(constraints: &[(Vector, Scalar)], dim: usize) -> Result<Vec<Vector>> {
    check_dim(dim)?;
    constraints.iter().try_for_each(|(a, _)| a.check_dim(dim))?;
    // b t - a·x ≥ 0 and t ≥ 0 over (x, t).
    let mut rows: Vec<Vector> = constraints
        .iter()
        .map(|(a, b)| {
            let mut c = a.neg().into_coords();
            c.push(b.clone());
            Vector::new(c)
        })
        .collect();
    rows.push(Vector::unit(dim + 1, dim));
    let gens = motzkin(&rows, dim + 1);
    let mut vertices: Vec<Vector> = gens
        .rays
        .iter()
        .filter(|r| r[dim].is_positive())
        .map(|r| {
            let t = r[dim].clone();
            Vector::new(r.coords()[..dim].iter().map(|c| c / &t).collect())
        })
        .collect();
    if vertices.is_empty() {
        return Ok(vertices);
    }
    let recedes = !gens.lineality.is_empty() || gens.rays.iter().any(|r| r[dim].is_zero());
    if recedes {
        return Err(Error::UnboundedPolyhedron);
    }
    vertices.sort();
    vertices.dedup();
    Ok(vertices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    #[test]
    fn facets_of_two_generator_cone() {
        let f = double_description(&[v(&[1, 0]), v(&[1, 1])], 2).unwrap();
        assert!(f.equalities.is_empty());
        assert_eq!(f.inequalities, vec![v(&[0, 1]), v(&[1, -1])]);
    }

    #[test]
    fn facets_of_orthant_and_plane() {
        let f = double_description(&[v(&[1, 0]), v(&[0, 1])], 2).unwrap();
        assert_eq!(f.inequalities, vec![v(&[0, 1]), v(&[1, 0])]);
        let f = double_description(&[v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])], 2).unwrap();
        assert!(f.inequalities.is_empty() && f.equalities.is_empty());
    }

    #[test]
    fn halfplane_has_lineality() {
        let g = cone_from_inequalities(&[v(&[0, 1])], 2).unwrap();
        assert_eq!(g.lineality, vec![v(&[1, 0])]);
        assert_eq!(g.rays, vec![v(&[0, 1])]);
    }

    #[test]
    fn square_and_simplex_vertices() {
        let s = |n| Scalar::from_int(n);
        let square = [
            (v(&[1, 0]), s(1)),
            (v(&[-1, 0]), s(0)),
            (v(&[0, 1]), s(1)),
            (v(&[0, -1]), s(0)),
        ];
        assert_eq!(
            vertex_enumeration(&square, 2).unwrap(),
            vec![v(&[0, 0]), v(&[0, 1]), v(&[1, 0]), v(&[1, 1])]
        );
        let simplex = [(v(&[-1, 0]), s(0)), (v(&[0, -1]), s(0)), (v(&[1, 1]), s(1))];
        assert_eq!(
            vertex_enumeration(&simplex, 2).unwrap(),
            vec![v(&[0, 0]), v(&[0, 1]), v(&[1, 0])]
        );
    }

    #[test]
    fn unbounded_and_empty() {
        let s = |n| Scalar::from_int(n);
        let strip = [(v(&[0, 1]), s(1)), (v(&[0, -1]), s(0))];
        assert!(matches!(
            vertex_enumeration(&strip, 2),
            Err(Error::UnboundedPolyhedron)
        ));
        let empty = [(v(&[1]), s(-1)), (v(&[-1]), s(-1))];
        assert!(vertex_enumeration(&empty, 1).unwrap().is_empty());
    }

    #[test]
    fn dimension_cap() {
        assert!(matches!(
            double_description(&[Vector::zeros(9)], 9),
            Err(Error::DimensionTooLarge { dim: 9, max: 8 })
        ));
    }
}
