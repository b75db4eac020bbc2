//! Exact Gaussian elimination over the rationals.

use super::scalar::Scalar;
use super::vector::Vector;

/// Reduced row echelon form of `rows` (each of length `ncols`).
///
/// Returns the nonzero reduced rows and, for each, its pivot column.
pub fn rref(rows: &[Vector], ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vec<Scalar>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let d = &f * &m[r][j];
                    m[i][j] -= &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m.into_iter().map(Vector::new).collect(), pivots)
}

pub fn rank(vectors: &[Vector], dim: usize) -> usize {
    rref(vectors, dim).1.len()
}

/// Basis of `{x : a·x = 0 for every row a}`.
///
/// Basis vectors are primitive integer vectors whose first nonzero coordinate
/// is positive.
pub fn nullspace_basis(rows: &[Vector], dim: usize) -> Vec<Vector> {
    let (r, pivots) = rref(rows, dim);
    let mut basis = Vec::new();
    for free in (0..dim).filter(|c| !pivots.contains(c)) {
        let mut x = Vector::zeros(dim);
        x[free] = Scalar::one();
        for (row, &p) in r.iter().zip(&pivots) {
            x[p] = -&row[free];
        }
        basis.push(x.primitive().orient());
    }
    basis
}

/// Canonical basis of the span: RREF rows scaled to primitive integers.
pub fn span_basis(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    rref(vectors, dim)
        .0
        .into_iter()
        .map(|v| v.primitive())
        .collect()
}

pub fn in_span(basis: &[Vector], v: &Vector, dim: usize) -> bool {
    let mut all = basis.to_vec();
    all.push(v.clone());
    rank(&all, dim) == rank(basis, dim)
}

/// Some solution of `A x = b` (rows of `A` given), or `None` if inconsistent.
pub fn solve(a: &[Vector], b: &[Scalar], dim: usize) -> Option<Vector> {
    let aug: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut c = row.coords().to_vec();
            c.push(bi.clone());
            Vector::new(c)
        })
        .collect();
    let (r, pivots) = rref(&aug, dim + 1);
    if pivots.last() == Some(&dim) {
        return None;
    }
    let mut x = Vector::zeros(dim);
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[dim].clone();
    }
    Some(x)
}

/// Component of `v` orthogonal to the span of `basis`.
pub fn project_orthogonal(v: &Vector, basis: &[Vector]) -> Vector {
    if basis.is_empty() {
        return v.clone();
    }
    let k = basis.len();
    let gram: Vec<Vector> = basis
        .iter()
        .map(|a| Vector::new(basis.iter().map(|b| a.dot(b)).collect()))
        .collect();
    let rhs: Vec<Scalar> = basis.iter().map(|a| a.dot(v)).collect();
    let c = solve(&gram, &rhs, k).expect("Gram system is consistent");
    let mut out = v.clone();
    for (ci, b) in c.iter().zip(basis) {
        out = out.add_scaled(&-ci, b);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_diagonal_functional() {
        let ns = nullspace_basis(&[Vector::from_ints(&[1, 1])], 2);
        assert_eq!(ns, vec![Vector::from_ints(&[1, -1])]);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let rows = vec![Vector::from_ints(&[1, 2, 3, 4]), Vector::from_ints(&[2, 4, 7, 1])];
        let ns = nullspace_basis(&rows, 4);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for r in &rows {
                assert!(r.dot(x).is_zero());
            }
        }
        assert_eq!(rank(&ns, 4), 2);
    }

    #[test]
    fn solve_and_inconsistency() {
        let a = vec![Vector::from_ints(&[1, 1]), Vector::from_ints(&[1, -1])];
        let x = solve(&a, &[Scalar::from_int(3), Scalar::from_int(1)], 2).unwrap();
        assert_eq!(x, Vector::from_ints(&[2, 1]));
        let a = vec![Vector::from_ints(&[1, 1]), Vector::from_ints(&[2, 2])];
        assert!(solve(&a, &[Scalar::one(), Scalar::one()], 2).is_none());
    }

    #[test]
    fn orthogonal_projection() {
        let p = project_orthogonal(&Vector::from_ints(&[3, 1]), &[Vector::from_ints(&[1, 1])]);
        assert_eq!(p, Vector::from_ints(&[1, -1]));
    }
}
