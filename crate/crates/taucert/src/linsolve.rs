//! Exact linear algebra: Gaussian elimination with particular solution and
//! kernel basis, over any [`Field`].
//!
//! This realizes the linear conditions on telescoper constants and on the
//! numerator coefficients of rational solutions; everything downstream
//! depends on the arithmetic being exact.

use crate::error::{Error, Result};
use crate::field::Field;

/// A linear system  matrix * solution = rhs.
#[derive(Clone, Debug)]
pub struct LinSystem<K> {
    pub matrix: Vec<Vec<K>>,
    pub rhs: Vec<K>,
}

/// One particular solution plus a basis of the homogeneous kernel.
#[derive(Clone, Debug)]
pub struct LinSolution<K> {
    pub particular: Vec<K>,
    pub kernel: Vec<Vec<K>>,
}

impl<K: Field> LinSystem<K> {
    pub fn new(matrix: Vec<Vec<K>>, rhs: Vec<K>) -> Result<Self> {
        let cols = matrix.first().map_or(0, Vec::len);
        if matrix.iter().any(|row| row.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix".into()));
        }
        if matrix.len() != rhs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} rows vs {} rhs entries",
                matrix.len(),
                rhs.len()
            )));
        }
        Ok(LinSystem { matrix, rhs })
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }
}

/// Solve the system exactly. `Ok(None)` means inconsistent; otherwise the
/// result carries one particular solution and a kernel basis.
pub fn linsolve<K: Field>(sys: &LinSystem<K>) -> Result<Option<LinSolution<K>>> {
    let rows = sys.rows();
    let cols = sys.cols();
    let mut m: Vec<Vec<K>> = sys
        .matrix
        .iter()
        .zip(&sys.rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let inv = m[rank][col].inv();
        for entry in m[rank].iter_mut() {
            *entry = entry.mul(&inv);
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=cols {
                    let delta = factor.mul(&m[rank][c]);
                    m[r][c] = m[r][c].sub(&delta);
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }

    // Inconsistent iff a zero row has nonzero rhs.
    for row in m.iter().skip(rank) {
        if !row[cols].is_zero() {
            return Ok(None);
        }
    }

    let mut particular = vec![K::zero(); cols];
    for (r, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = m[r][cols].clone();
    }

    let mut kernel = Vec::new();
    let pivot_set: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![K::zero(); cols];
        v[free] = K::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = m[r][free].neg();
        }
        kernel.push(v);
    }

    Ok(Some(LinSolution { particular, kernel }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::GaussRat;

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<GaussRat>> {
        rows.iter().map(|r| r.iter().map(|&v| g(v)).collect()).collect()
    }

    #[test]
    fn identity_system() {
        let sys = LinSystem::new(mat(&[&[1, 0], &[0, 1]]), vec![g(3), g(-2)]).unwrap();
        let sol = linsolve(&sys).unwrap().unwrap();
        assert_eq!(sol.particular, vec![g(3), g(-2)]);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn underdetermined_symmetry() {
        // [1, 1] alpha = 0 -> particular 0, kernel spanned by (1, -1)
        let sys = LinSystem::new(mat(&[&[1, 1]]), vec![g(0)]).unwrap();
        let sol = linsolve(&sys).unwrap().unwrap();
        assert_eq!(sol.particular, vec![g(0), g(0)]);
        assert_eq!(sol.kernel.len(), 1);
        let k = &sol.kernel[0];
        // proportional to (1, -1)
        assert_eq!(k[0].add(&k[1]), g(0));
        assert!(!k[0].is_zero());
    }

    #[test]
    fn inconsistent() {
        let sys = LinSystem::new(mat(&[&[0]]), vec![g(1)]).unwrap();
        assert!(linsolve(&sys).unwrap().is_none());
    }

    #[test]
    fn dimension_mismatch() {
        assert!(LinSystem::new(mat(&[&[1, 0], &[1]]), vec![g(0), g(0)]).is_err());
        assert!(LinSystem::new(mat(&[&[1]]), vec![g(0), g(0)]).is_err());
    }

    #[test]
    fn solution_satisfies_system() {
        let sys = LinSystem::new(
            mat(&[&[2, 1, -1], &[1, -1, 2], &[3, 0, 1]]),
            vec![g(1), g(4), g(5)],
        )
        .unwrap();
        let sol = linsolve(&sys).unwrap().unwrap();
        for (row, b) in sys.matrix.iter().zip(&sys.rhs) {
            let mut acc = g(0);
            for (a, x) in row.iter().zip(&sol.particular) {
                acc = acc.add(&a.mul(x));
            }
            assert_eq!(acc, *b);
        }
    }
}
