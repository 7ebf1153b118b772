//! Dense matrices over the exact scalar rings.

mod constant;
mod degree;
mod lattice;
mod predicates;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::ring::Ring;
use crate::scalar::{rat, LPoly, Poly, Rat, RatFun};

pub use constant::{ldl, Rref};
pub use degree::{hc_matrix, hr_matrix, lc_matrix, lr_matrix, DegreeProfile};
pub use lattice::{lll, short_basis};
pub use predicates::{is_l_unimodular, is_para_hermitian, is_para_unitary, is_spectrum, SpectrumReport};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type PolyMatrix = Matrix<Poly>;
pub type LPolyMatrix = Matrix<LPoly>;
pub type RatMatrix = Matrix<RatFun>;
pub type ConstMatrix = Matrix<Rat>;

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data does not match {rows}x{cols}");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Matrix::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(d: &[T]) -> Self {
        let n = d.len();
        Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    pub fn diag(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn column_is_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self[(i, j)].is_zero())
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(T::is_zero)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn checked_mul(&self, o: &Self) -> Option<Self> {
        if self.cols != o.rows {
            return None;
        }
        Some(Matrix::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                let b = &o[(k, j)];
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        }))
    }

    /// Determinant by fraction-free (Bareiss) elimination; every division is exact.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign_flip = false;
        let mut prev = T::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign_flip = !sign_flip;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[(i, j)].mul(&a[(k, k)]).sub(&a[(i, k)].mul(&a[(k, j)]));
                    a[(i, j)] = t.exact_div(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign_flip {
            d.neg()
        } else {
            d
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, o: &Matrix<T>) -> Matrix<T> {
        self.checked_mul(o)
            .unwrap_or_else(|| panic!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, o.rows, o.cols))
    }
}

impl<T: Ring> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), o.shape());
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].add(&o[(i, j)]))
    }
}

impl<T: Ring> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), o.shape());
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].sub(&o[(i, j)]))
    }
}

impl<T: Ring> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| x.neg())
    }
}

/// Entrywise `f(1/z)`.
pub trait Star {
    fn star(&self) -> Self;
}

impl Star for Rat {
    fn star(&self) -> Self {
        self.clone()
    }
}

impl Star for LPoly {
    fn star(&self) -> Self {
        LPoly::star(self)
    }
}

impl Star for RatFun {
    fn star(&self) -> Self {
        RatFun::star(self)
    }
}

impl<T: Star + Clone> Matrix<T> {
    /// `G^T(1/z)`.
    pub fn star(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].star())
    }

    /// `G(1/z)` without transposition.
    pub fn substitute_inverse(&self) -> Self {
        self.map(Star::star)
    }
}

/// Double-precision evaluation of exact entries.
pub trait EvalC64 {
    fn eval_c64(&self, z: Complex64) -> Complex64;
}

impl EvalC64 for Rat {
    fn eval_c64(&self, _: Complex64) -> Complex64 {
        Complex64::new(rat::to_f64(self), 0.0)
    }
}

impl EvalC64 for Poly {
    fn eval_c64(&self, z: Complex64) -> Complex64 {
        Poly::eval_c64(self, z)
    }
}

impl EvalC64 for LPoly {
    fn eval_c64(&self, z: Complex64) -> Complex64 {
        LPoly::eval_c64(self, z)
    }
}

impl EvalC64 for RatFun {
    fn eval_c64(&self, z: Complex64) -> Complex64 {
        RatFun::eval_c64(self, z)
    }
}

impl<T: EvalC64> Matrix<T> {
    pub fn eval_c64(&self, z: Complex64) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].eval_c64(z))
    }
}

impl ConstMatrix {
    pub fn from_ints(rows: usize, cols: usize, v: &[i64]) -> Self {
        Matrix::from_vec(rows, cols, v.iter().map(|&x| rat::int(x)).collect())
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| rat::to_f64(&self[(i, j)]))
    }

    pub fn to_ratfun(&self) -> RatMatrix {
        self.map(|c| RatFun::constant(c.clone()))
    }

    pub fn to_poly(&self) -> PolyMatrix {
        self.map(|c| Poly::constant(c.clone()))
    }

    pub fn to_lpoly(&self) -> LPolyMatrix {
        self.map(|c| LPoly::constant(c.clone()))
    }
}

impl PolyMatrix {
    pub fn to_ratfun(&self) -> RatMatrix {
        self.map(|p| RatFun::from_poly(p.clone()))
    }

    pub fn to_lpoly(&self) -> LPolyMatrix {
        self.map(LPoly::from_poly)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.data.iter().filter_map(Poly::degree).max()
    }

    /// Constant matrix when every entry has degree zero.
    pub fn to_const(&self) -> Option<ConstMatrix> {
        self.try_map(|p| if p.is_constant() { Ok(p.coeff(0)) } else { Err(()) })
            .ok()
    }
}

impl LPolyMatrix {
    pub fn to_ratfun(&self) -> RatMatrix {
        self.map(RatFun::from_lpoly)
    }

    pub fn to_const(&self) -> Option<ConstMatrix> {
        self.try_map(|p| if p.is_constant() { Ok(p.coeff(0)) } else { Err(()) })
            .ok()
    }

    /// Polynomial matrix when no negative powers occur.
    pub fn to_poly(&self) -> Option<PolyMatrix> {
        self.try_map(|p| p.to_poly().ok_or(())).ok()
    }

    /// Coefficient of `z^k` in every entry.
    pub fn coefficient(&self, k: i64) -> ConstMatrix {
        self.map(|p| p.coeff(k))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(LPoly::max_abs).fold(0.0, f64::max)
    }
}

impl RatMatrix {
    /// Entries are Laurent polynomials.
    pub fn to_lpoly(&self) -> Option<LPolyMatrix> {
        self.try_map(|f| f.to_lpoly().ok_or(())).ok()
    }

    pub fn to_poly(&self) -> Option<PolyMatrix> {
        self.try_map(|f| {
            if f.is_polynomial() {
                Ok(f.num().clone())
            } else {
                Err(())
            }
        })
        .ok()
    }

    pub fn to_const(&self) -> Option<ConstMatrix> {
        self.try_map(|f| f.as_constant().ok_or(())).ok()
    }

    /// Monic least common multiple of all denominators.
    pub fn common_denominator(&self) -> Poly {
        self.data.iter().fold(Poly::one(), |acc, f| acc.lcm(f.den()))
    }

    /// Inverse over the rational-function field via Gauss–Jordan elimination.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.hstack(&Matrix::identity(n));
        for k in 0..n {
            let p = (k..n).find(|&i| !a[(i, k)].is_zero())?;
            a.swap_rows(p, k);
            let inv = a[(k, k)].recip().unwrap();
            for j in 0..2 * n {
                a[(k, j)] = &a[(k, j)] * &inv;
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].clone();
                for j in 0..2 * n {
                    let t = &a[(i, j)] - &(&f * &a[(k, j)]);
                    a[(i, j)] = t;
                }
            }
        }
        Some(a.block(0, n, n, 2 * n))
    }

    /// Normal rank, by elimination over the rational-function field.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut r = 0;
        for c in 0..a.cols {
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            for i in r + 1..a.rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = &a[(i, c)] / &a[(r, c)];
                for j in c..a.cols {
                    let t = &a[(i, j)] - &(&f * &a[(r, j)]);
                    a[(i, j)] = t;
                }
            }
            r += 1;
            if r == a.rows {
                break;
            }
        }
        r
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat::int;
    use proptest::prelude::*;

    fn pm(rows: usize, cols: usize, c: &[&[i64]]) -> PolyMatrix {
        Matrix::from_vec(rows, cols, c.iter().map(|x| Poly::from_ints(x)).collect())
    }

    #[test]
    fn star_of_scalar_z() {
        let g = Matrix::from_vec(1, 1, vec![LPoly::monomial(int(1), 1)]);
        assert_eq!(g.star()[(0, 0)], LPoly::monomial(int(1), -1));
        let i: LPolyMatrix = Matrix::identity(3);
        assert_eq!(i.star(), i);
    }

    #[test]
    fn bareiss_determinant() {
        // [[z, 1], [1, z]] -> z^2 - 1
        let g = pm(2, 2, &[&[0, 1], &[1], &[1], &[0, 1]]);
        assert_eq!(g.det(), Poly::from_ints(&[-1, 0, 1]));
        let z = pm(2, 2, &[&[0], &[1], &[0], &[2]]);
        assert!(z.det().is_zero());
        // needs a row swap
        let s = pm(2, 2, &[&[], &[1], &[1], &[]]);
        assert_eq!(s.det(), Poly::from_ints(&[-1]));
    }

    #[test]
    fn ratfun_inverse_round_trip() {
        let g = pm(2, 2, &[&[0, 1], &[1], &[1], &[0, 1]]).to_ratfun();
        let inv = g.inverse().unwrap();
        assert!((&g * &inv).is_identity());
        assert_eq!(g.rank(), 2);
        let singular = pm(2, 2, &[&[0, 1], &[0, 1], &[1], &[1]]).to_ratfun();
        assert!(singular.inverse().is_none());
        assert_eq!(singular.rank(), 1);
    }

    fn poly_matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, 0..3), n * n)
            .prop_map(move |v| Matrix::from_vec(n, n, v.iter().map(|c| Poly::from_ints(c)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn det_is_multiplicative(g in poly_matrix(3), h in poly_matrix(3)) {
            prop_assert_eq!((&g * &h).det(), &g.det() * &h.det());
        }

        #[test]
        fn star_is_involution(v in prop::collection::vec((-3i64..3, prop::collection::vec(-3i64..=3, 0..3)), 6)) {
            let g = Matrix::from_vec(2, 3, v.iter().map(|(m, c)| {
                LPoly::new(*m, c.iter().map(|&x| int(x)).collect())
            }).collect());
            prop_assert_eq!(g.star().star(), g);
        }
    }
}
