#![allow(dead_code)]

use specfact::scalar::rat::{int, rat};
use specfact::{LPoly, Matrix, Poly, Rat, RatFun, RatMatrix};

pub fn q(n: i64, d: i64) -> Rat {
    rat(n, d)
}

pub fn poly(c: &[Rat]) -> Poly {
    Poly::new(c.to_vec())
}

pub fn ipoly(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

pub fn lp(minpow: i64, c: &[i64]) -> LPoly {
    LPoly::new(minpow, c.iter().map(|&x| int(x)).collect())
}

pub fn rf(num: &[i64], den: &[i64]) -> RatFun {
    RatFun::new(ipoly(num), ipoly(den))
}

pub fn l(minpow: i64, c: &[i64]) -> RatFun {
    RatFun::from_lpoly(&lp(minpow, c))
}

/// The three-channel spectrum of the worked example.
pub fn phi_example() -> RatMatrix {
    let a = rf(&[-2, 6, -2], &[-2, 5, -2]);
    let b = l(0, &[-1, 1]);
    let bs = l(-1, &[1, -1]);
    let c = l(-1, &[-1, 2, -1]);
    Matrix::from_rows(vec![
        vec![a, b.clone(), b],
        vec![bs.clone(), c.clone(), c.clone()],
        vec![bs, c.clone(), c],
    ])
}

/// Published spectral factor of the worked example.
pub fn w_example() -> RatMatrix {
    let a = l(-1, &[-1]);
    let b = l(-1, &[1, -1]);
    let c = rf(&[1], &[-1, 2]);
    Matrix::from_rows(vec![vec![a, b.clone(), b], vec![c, RatFun::zero(), RatFun::zero()]])
}

/// Published unimodular factor `P`.
pub fn p_example() -> Matrix<Poly> {
    let p11 = poly(&[q(1, 2), int(-1)]);
    // -(z/4)(18z^2 - 55z + 39)
    let p12 = poly(&[int(0), q(-39, 4), q(55, 4), q(-18, 4)]);
    let p21 = poly(&[int(0), q(1, 2)]);
    // (1/4)(9z^3 - 23z^2 + 8z + 4)
    let p22 = poly(&[int(1), int(2), q(-23, 4), q(9, 4)]);
    Matrix::from_rows(vec![vec![p11, p12], vec![p21, p22]])
}

/// Random generator seeded per test for reproducible corpora.
pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// Worked-example Smith–McMillan witnesses recovered from the published
/// `P` and `W`: `F = D+^{-1} P^{-1} W` and `C = Phi F^{-R} D^{-1}`.
pub fn example_witnesses() -> specfact::SmithMcMillan {
    use specfact::canonical::{smith_mcmillan, unimodular_right_inverse, SmithMcMillan};
    use specfact::regions::{split_diagonal, RegionPair, RegionSpec};
    let phi = phi_example();
    let d = smith_mcmillan(&phi).d;
    let split = split_diagonal(&d, &RegionPair::new(RegionSpec::outside(), RegionSpec::inside()), 1e-9).unwrap();
    let dp_inv = Matrix::diagonal(&split.d_plus().iter().map(|x| x.recip().unwrap()).collect::<Vec<_>>());
    let p_inv = p_example().to_ratfun().inverse().unwrap();
    let f = (&(&dp_inv * &p_inv) * &w_example()).to_poly().expect("F is polynomial");
    let f_r = unimodular_right_inverse(&f).unwrap().to_ratfun();
    let d_inv = Matrix::diagonal(&d.iter().map(|x| x.recip().unwrap()).collect::<Vec<_>>());
    let c = (&(&phi * &f_r) * &d_inv).to_poly().expect("C is polynomial");
    SmithMcMillan::from_parts(&phi, c, d, f).unwrap()
}
