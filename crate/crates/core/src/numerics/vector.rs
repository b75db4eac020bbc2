use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{gcd_of_numerators, lcm_of_denominators, Scalar};
use crate::error::{Error, Result};

/// A point or direction in `Q^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Vector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    /// Build from `(numerator, denominator)` pairs.
    pub fn from_ratios(coords: &[(i64, i64)]) -> Self {
        Vector(coords.iter().map(|&(p, q)| Scalar::ratio(p, q)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Scalar::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v.0[i] = Scalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: &Scalar, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + s * b).collect())
    }

    pub fn max_abs(&self) -> Scalar {
        self.0
            .iter()
            .map(Scalar::abs)
            .fold(Scalar::zero(), Scalar::max)
    }

    /// Positive multiple with coprime integer coordinates. Zero stays zero.
    pub fn primitive(&self) -> Vector {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = lcm_of_denominators(&self.0);
        let ints: Vec<Scalar> = self.0.iter().map(|c| c * Scalar::from(lcm.clone())).collect();
        let g = gcd_of_numerators(&ints).abs();
        let g = if g.is_zero() { BigInt::from(1) } else { g };
        let g = Scalar::from(g);
        Vector(ints.iter().map(|c| c / &g).collect())
    }

    /// Scale so that the first nonzero coordinate is positive (direction of a line).
    pub fn orient(&self) -> Vector {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(Scalar::to_f64).collect()
    }

    /// `Σ w_i v_i`
    pub fn combination(weights: &[Scalar], vectors: &[Vector], dim: usize) -> Vector {
        let mut out = Vector::zeros(dim);
        for (w, v) in weights.iter().zip(vectors) {
            if !w.is_zero() {
                out = out.add_scaled(w, v);
            }
        }
        out
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<Scalar>> for Vector {
    fn from(v: Vec<Scalar>) -> Self {
        Vector(v)
    }
}

/// A linear functional on `Q^n`, applied as a dot product.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Functional(Vector);

impl Functional {
    pub fn new(coeffs: Vector) -> Self {
        Functional(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Functional(Vector::from_ints(coeffs))
    }

    pub fn zero(dim: usize) -> Self {
        Functional(Vector::zeros(dim))
    }

    pub fn coeffs(&self) -> &Vector {
        &self.0
    }

    pub fn into_coeffs(self) -> Vector {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn apply(&self, x: &Vector) -> Scalar {
        self.0.dot(x)
    }

    pub fn try_apply(&self, x: &Vector) -> Result<Scalar> {
        x.check_dim(self.dim())?;
        Ok(self.apply(x))
    }

    pub fn neg(&self) -> Functional {
        Functional(self.0.neg())
    }

    pub fn add(&self, other: &Functional) -> Functional {
        Functional(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Functional) -> Functional {
        Functional(self.0.sub(&other.0))
    }

    pub fn scale(&self, s: &Scalar) -> Functional {
        Functional(self.0.scale(s))
    }

    pub fn primitive(&self) -> Functional {
        Functional(self.0.primitive())
    }

    /// Minimum over a nonempty point list, with the first point attaining it.
    pub fn min_over(&self, points: &[Vector]) -> Option<(Scalar, usize)> {
        let mut best: Option<(Scalar, usize)> = None;
        for (i, p) in points.iter().enumerate() {
            let v = self.apply(p);
            if best.as_ref().map_or(true, |(b, _)| v < *b) {
                best = Some((v, i));
            }
        }
        best
    }

    /// Maximum over a nonempty point list, with the first point attaining it.
    pub fn max_over(&self, points: &[Vector]) -> Option<(Scalar, usize)> {
        let mut best: Option<(Scalar, usize)> = None;
        for (i, p) in points.iter().enumerate() {
            let v = self.apply(p);
            if best.as_ref().map_or(true, |(b, _)| v > *b) {
                best = Some((v, i));
            }
        }
        best
    }
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{:?}", self.0)
    }
}

impl From<Vector> for Functional {
    fn from(v: Vector) -> Self {
        Functional(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_clears_denominators() {
        let v = Vector::from_ratios(&[(1, 2), (-3, 4), (0, 1)]);
        assert_eq!(v.primitive(), Vector::from_ints(&[2, -3, 0]));
        assert_eq!(Vector::from_ints(&[4, 6]).primitive(), Vector::from_ints(&[2, 3]));
    }

    #[test]
    fn functional_is_linear() {
        let f = Functional::from_ints(&[2, -1]);
        let u = Vector::from_ints(&[1, 3]);
        let v = Vector::from_ratios(&[(1, 2), (-2, 3)]);
        let (l, m) = (Scalar::ratio(3, 5), Scalar::from_int(-2));
        let lhs = f.apply(&u.scale(&l).add(&v.scale(&m)));
        let rhs = &l * f.apply(&u) + &m * f.apply(&v);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dimension_check() {
        let f = Functional::from_ints(&[1, 1]);
        assert!(matches!(
            f.try_apply(&Vector::from_ints(&[1, 2, 3])),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }
}
