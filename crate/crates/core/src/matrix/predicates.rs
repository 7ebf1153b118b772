//! Structural predicates: para-Hermitian, para-unitary, L-unimodular, spectrum.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{EvalC64, LPolyMatrix, Matrix, RatMatrix, Star};
use crate::ring::Ring;

const MAX_EIGEN_SWEEPS: usize = 10_000;

pub fn is_para_hermitian<T: Ring + Star>(g: &Matrix<T>) -> bool {
    g.is_square() && g.star() == *g
}

pub fn is_para_unitary(g: &RatMatrix) -> bool {
    if !g.is_square() {
        return false;
    }
    let s = g.star();
    (&s * g).is_identity() && (g * &s).is_identity()
}

/// Determinant is a nonzero monomial `c z^k`.
pub fn is_l_unimodular(g: &LPolyMatrix) -> bool {
    g.is_square() && g.det().as_monomial().is_some()
}

/// Outcome of the sampled positive-semidefiniteness test.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub para_hermitian: bool,
    pub samples: usize,
    /// Grid points skipped because an entry has a pole there.
    pub skipped: Vec<usize>,
    pub min_eigenvalue: f64,
    /// `(k, lambda_min)` for every sample `w_k = 2 pi k / grid` below `-tol`.
    pub failing: Vec<(usize, f64)>,
}

impl SpectrumReport {
    pub const CERTIFICATION: &'static str = "sampled, not certified";

    pub fn passed(&self) -> bool {
        self.para_hermitian && self.failing.is_empty()
    }
}

/// Pole proximity below which a grid point is treated as undefined.
const POLE_GUARD: f64 = 1e-10;

pub fn is_spectrum(phi: &RatMatrix, grid: usize, tol: f64) -> SpectrumReport {
    let para_hermitian = is_para_hermitian(phi);
    let mut report = SpectrumReport {
        para_hermitian,
        samples: grid,
        skipped: Vec::new(),
        min_eigenvalue: f64::INFINITY,
        failing: Vec::new(),
    };
    if !para_hermitian {
        return report;
    }
    for k in 0..grid {
        let w = 2.0 * PI * k as f64 / grid as f64;
        let z = Complex64::from_polar(1.0, w);
        if phi.entries().iter().any(|f| f.den_scale_at(z) < POLE_GUARD) {
            report.skipped.push(k);
            continue;
        }
        let lam = min_hermitian_eigenvalue(phi, z);
        let scale = phi.entries().iter().map(|f| f.eval_c64(z).norm()).fold(1.0, f64::max);
        report.min_eigenvalue = report.min_eigenvalue.min(lam);
        if lam < -tol * scale {
            report.failing.push((k, lam));
        }
    }
    report
}

pub(crate) fn min_hermitian_eigenvalue<T: EvalC64>(g: &Matrix<T>, z: Complex64) -> f64 {
    let a = g.eval_c64(z);
    let h = (&a + a.adjoint()) * Complex64::new(0.5, 0.0);
    let min = |v: &[f64]| v.iter().cloned().fold(f64::INFINITY, f64::min);
    if let Some(e) = h.clone().try_symmetric_eigen(f64::EPSILON, MAX_EIGEN_SWEEPS) {
        return min(e.eigenvalues.as_slice());
    }
    // the complex sweep stalled; [[Re, -Im], [Im, Re]] has the same spectrum, doubled
    let n = h.nrows();
    let real = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let x = h[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => x.re,
            (true, false) => -x.im,
            (false, true) => x.im,
        }
    });
    min(real.symmetric_eigenvalues().as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat::int;
    use crate::scalar::{LPoly, Poly, RatFun};

    fn lmono(c: i64, k: i64) -> LPoly {
        LPoly::monomial(int(c), k)
    }

    #[test]
    fn para_unitary_examples() {
        let g = Matrix::diagonal(&[RatFun::monomial(int(1), -1), RatFun::one()]);
        assert!(is_para_unitary(&g));
        assert!(!is_para_unitary(&Matrix::diagonal(&[RatFun::constant(int(2))])));
    }

    #[test]
    fn l_unimodular_examples() {
        assert!(is_l_unimodular(&Matrix::diagonal(&[lmono(1, 1), LPoly::one()])));
        let zm1 = LPoly::from_poly(&Poly::from_ints(&[-1, 1]));
        assert!(!is_l_unimodular(&Matrix::diagonal(&[zm1, LPoly::one()])));
    }

    #[test]
    fn spectrum_rejections() {
        let neg = Matrix::diagonal(&[RatFun::constant(int(-1))]);
        let r = is_spectrum(&neg, 64, 1e-9);
        assert!(r.para_hermitian && !r.passed());
        let z = Matrix::diagonal(&[RatFun::monomial(int(1), 1)]);
        assert!(!is_spectrum(&z, 64, 1e-9).passed());
        // 5 - 2z - 2/z = |2 - z|^2 on the circle
        let phi = Matrix::diagonal(&[RatFun::from_lpoly(&LPoly::new(-1, vec![int(-2), int(5), int(-2)]))]);
        let ok = is_spectrum(&phi, 512, 1e-9);
        assert!(ok.passed());
        assert!((ok.min_eigenvalue - 1.0).abs() < 1e-9);
    }
}
