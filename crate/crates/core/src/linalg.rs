//! Exact linear algebra over the rationals: row reduction, rank, kernels.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let f = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = self.get(i, j) - &f * self.get(r, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Canonical basis of the right kernel: the vectors are assembled from
    /// the RREF free columns and then row-reduced again, so the result is
    /// unique for a given matrix.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![BigRational::zero(); self.cols];
            v[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m.get(i, f).clone();
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return basis;
        }
        let mut k = QMat::from_rows(basis);
        k.rref();
        (0..k.rows).map(|i| k.row(i).to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn mat(rows: &[&[i64]]) -> QMat {
        QMat::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    #[test]
    fn rank_and_rref() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let id = mat(&[&[1, 0], &[0, 1]]);
        assert_eq!(id.rank(), 2);
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        // x + y + z = 0, x - z = 0  =>  kernel spanned by (1, -2, 1)
        let m = mat(&[&[1, 1, 1], &[1, 0, -1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        for v in &k {
            for i in 0..m.rows {
                let dot: BigRational =
                    (0..3).map(|j| m.get(i, j) * &v[j]).sum();
                assert!(dot.is_zero());
            }
        }
        assert_eq!(k[0], vec![q(1), q(-2), q(1)]);
    }

    #[test]
    fn kernel_is_canonical_under_row_permutation() {
        let a = mat(&[&[1, 2, 3], &[0, 1, 1]]);
        let b = mat(&[&[0, 1, 1], &[1, 2, 3]]);
        assert_eq!(a.kernel_basis(), b.kernel_basis());
    }
}
