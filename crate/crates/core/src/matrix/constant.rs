//! Exact linear algebra over the rationals.

use num_traits::{One, Zero};

use super::{ConstMatrix, Matrix};
use crate::error::{Error, Result};
use crate::scalar::Rat;

/// Reduced row-echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: ConstMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.reduced.cols()).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Kernel vector with a one in free column `free` and zeros in the other free columns.
    pub fn kernel_vector(&self, free: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.reduced.cols()];
        v[free] = Rat::one();
        for (r, &p) in self.pivots.iter().enumerate() {
            v[p] = -self.reduced[(r, free)].clone();
        }
        v
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        self.free_columns().into_iter().map(|f| self.kernel_vector(f)).collect()
    }
}

impl ConstMatrix {
    pub fn rref(&self) -> Rref {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols() {
            if r == a.rows() {
                break;
            }
            let Some(p) = (r..a.rows()).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a[(r, c)].recip();
            for j in c..a.cols() {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
            for i in 0..a.rows() {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols() {
                    let t = &a[(i, j)] - &(&f * &a[(r, j)]);
                    a[(i, j)] = t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    pub fn inverse(&self) -> Option<ConstMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows();
        let aug = self.hstack(&Matrix::identity(n)).rref();
        (aug.pivots.len() >= n && aug.pivots[n - 1] == n - 1).then(|| aug.reduced.block(0, n, n, 2 * n))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.entries()
            .iter()
            .map(|c| crate::scalar::rat::to_f64(c).abs())
            .fold(0.0, f64::max)
    }
}

/// `A = L * diag(d) * L^T` with `L` unit lower-triangular; requires every
/// leading principal minor of the symmetric `A` to be positive.
pub fn ldl(a: &ConstMatrix) -> Result<(ConstMatrix, Vec<Rat>)> {
    if !a.is_square() || !a.is_symmetric() {
        return Err(Error::Dimension("LDL^T needs a square symmetric matrix".into()));
    }
    let n = a.rows();
    let mut l: ConstMatrix = Matrix::identity(n);
    let mut d = vec![Rat::zero(); n];
    for j in 0..n {
        let mut dj = a[(j, j)].clone();
        for k in 0..j {
            dj -= &l[(j, k)] * &l[(j, k)] * &d[k];
        }
        if dj <= Rat::zero() {
            return Err(Error::NotPositiveDefinite(j + 1));
        }
        for i in j + 1..n {
            let mut s = a[(i, j)].clone();
            for k in 0..j {
                s -= &l[(i, k)] * &l[(j, k)] * &d[k];
            }
            l[(i, j)] = s / &dj;
        }
        d[j] = dj;
    }
    Ok((l, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat::{int, rat};

    #[test]
    fn kernel_of_singular_hc() {
        // [[-1/2, -9/4], [1/2, 9/4]] has kernel spanned by [9, -2]
        let a = Matrix::from_vec(2, 2, vec![rat(-1, 2), rat(-9, 4), rat(1, 2), rat(9, 4)]);
        let r = a.rref();
        assert_eq!(r.rank(), 1);
        assert_eq!(r.free_columns(), vec![1]);
        let v = r.kernel_vector(1);
        assert_eq!(v, vec![rat(-9, 2), int(1)]);
    }

    #[test]
    fn ldl_of_constant_terminal_matrix() {
        let a = ConstMatrix::from_vec(2, 2, vec![rat(1, 4), int(-1), int(-1), int(5)]);
        let (l, d) = ldl(&a).unwrap();
        assert_eq!(d, vec![rat(1, 4), int(1)]);
        assert_eq!(l[(1, 0)], int(-4));
        let back = &(&l * &Matrix::diagonal(&d)) * &l.transpose();
        assert_eq!(back, a);
        let bad = ConstMatrix::from_ints(2, 2, &[1, 2, 2, 1]);
        assert_eq!(ldl(&bad), Err(Error::NotPositiveDefinite(2)));
    }

    #[test]
    fn inverse_exact() {
        let a = ConstMatrix::from_ints(2, 2, &[2, 1, 1, 1]);
        assert_eq!(a.inverse().unwrap(), ConstMatrix::from_ints(2, 2, &[1, -1, -1, 2]));
        assert!(ConstMatrix::from_ints(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }
}
