//! Laurent polynomials: finite sums of `c_k z^k` with `k` of either sign.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::poly::{write_terms, Poly};
use super::rat::{self, Rat};

/// `coeffs[i]` is the coefficient of `z^(minpow + i)`. Nonzero values have
/// nonzero first and last coefficients; zero is the empty sequence.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LPoly {
    minpow: i64,
    coeffs: Vec<Rat>,
}

impl LPoly {
    pub fn new(minpow: i64, mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return LPoly::zero();
        }
        coeffs.drain(..lead);
        LPoly {
            minpow: minpow + lead as i64,
            coeffs,
        }
    }

    pub fn zero() -> Self {
        LPoly {
            minpow: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        LPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        LPoly::new(0, vec![c])
    }

    pub fn monomial(c: Rat, k: i64) -> Self {
        LPoly::new(k, vec![c])
    }

    pub fn from_poly(p: &Poly) -> Self {
        LPoly::new(0, p.coeffs().to_vec())
    }

    /// Builds from `(power, coefficient)` pairs; repeated powers are summed.
    pub fn from_terms(terms: &[(i64, Rat)]) -> Self {
        if terms.is_empty() {
            return LPoly::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut v = vec![Rat::zero(); (hi - lo + 1) as usize];
        for (k, c) in terms {
            v[(k - lo) as usize] += c;
        }
        LPoly::new(lo, v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.minpow == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn minpow(&self) -> i64 {
        self.minpow
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn min_deg(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.minpow)
    }

    pub fn max_deg(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.minpow + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, k: i64) -> Rat {
        let i = k - self.minpow;
        if i < 0 {
            return Rat::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(Rat::zero)
    }

    /// `Some((c, k))` when `self = c z^k` with `c != 0`.
    pub fn as_monomial(&self) -> Option<(Rat, i64)> {
        (self.coeffs.len() == 1).then(|| (self.coeffs[0].clone(), self.minpow))
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.coeffs.len() == 1 && self.minpow == 0)
    }

    /// `p(1/z)`.
    pub fn star(&self) -> LPoly {
        match self.max_deg() {
            None => LPoly::zero(),
            Some(top) => {
                let mut v = self.coeffs.clone();
                v.reverse();
                LPoly {
                    minpow: -top,
                    coeffs: v,
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> LPoly {
        if c.is_zero() {
            return LPoly::zero();
        }
        LPoly {
            minpow: self.minpow,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i64) -> LPoly {
        if self.is_zero() {
            return LPoly::zero();
        }
        LPoly {
            minpow: self.minpow + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Splits as `z^minpow * p(z)` with `p(0) != 0`.
    pub fn to_shifted_poly(&self) -> (i64, Poly) {
        (self.minpow, Poly::new(self.coeffs.clone()))
    }

    /// The polynomial itself when no negative powers occur.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        (self.minpow >= 0).then(|| Poly::new(self.coeffs.clone()).shift(self.minpow as usize))
    }

    /// Division in the Laurent ring, where every monomial is a unit.
    pub fn exact_div(&self, d: &LPoly) -> Option<LPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LPoly::zero());
        }
        let (ma, a) = self.to_shifted_poly();
        let (mb, b) = d.to_shifted_poly();
        let q = a.exact_div(&b)?;
        Some(LPoly::new(ma - mb, q.into_coeffs()))
    }

    pub fn eval_c64(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat::to_f64(c);
        }
        acc * x.powi(self.minpow as i32)
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| rat::to_f64(c).abs()).fold(0.0, f64::max)
    }

    /// Maps every coefficient, renormalising afterwards.
    pub fn map_coeffs(&self, f: impl Fn(&Rat) -> Rat) -> LPoly {
        LPoly::new(self.minpow, self.coeffs.iter().map(f).collect())
    }
}

impl<'a> Add<&'a LPoly> for &'a LPoly {
    type Output = LPoly;
    fn add(self, o: &LPoly) -> LPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.minpow.min(o.minpow);
        let hi = self.max_deg().unwrap().max(o.max_deg().unwrap());
        LPoly::new(lo, (lo..=hi).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a LPoly> for &'a LPoly {
    type Output = LPoly;
    fn sub(self, o: &LPoly) -> LPoly {
        self + &(-o)
    }
}

impl<'a> Mul<&'a LPoly> for &'a LPoly {
    type Output = LPoly;
    fn mul(self, o: &LPoly) -> LPoly {
        if self.is_zero() || o.is_zero() {
            return LPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        LPoly::new(self.minpow + o.minpow, v)
    }
}

impl Neg for &LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        LPoly {
            minpow: self.minpow,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for LPoly {
    type Output = LPoly;
    fn add(self, o: LPoly) -> LPoly {
        &self + &o
    }
}

impl Sub for LPoly {
    type Output = LPoly;
    fn sub(self, o: LPoly) -> LPoly {
        &self - &o
    }
}

impl Mul for LPoly {
    type Output = LPoly;
    fn mul(self, o: LPoly) -> LPoly {
        &self * &o
    }
}

impl Neg for LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        -&self
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, self.minpow, "z")
    }
}

impl fmt::Debug for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat::int;

    fn lp(minpow: i64, c: &[i64]) -> LPoly {
        LPoly::new(minpow, c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn star_examples() {
        assert_eq!(lp(1, &[1]).star(), lp(-1, &[1]));
        let sym = lp(-1, &[-2, 5, -2]);
        assert_eq!(sym.star(), sym);
        assert_eq!(LPoly::zero().star(), LPoly::zero());
    }

    #[test]
    fn normalisation_trims_both_ends() {
        let p = lp(-2, &[0, 0, 3, 0]);
        assert_eq!(p.min_deg(), Some(0));
        assert_eq!(p.max_deg(), Some(0));
        assert!(lp(4, &[0, 0]).is_zero());
    }

    #[test]
    fn laurent_division() {
        // (z - 2)(z^-1 - 3) / (z^-1 - 3) = z - 2
        let a = lp(0, &[-2, 1]);
        let b = lp(-1, &[1, -3]);
        assert_eq!((&a * &b).exact_div(&b), Some(a.clone()));
        // monomials are units
        assert_eq!(a.exact_div(&lp(5, &[2])).unwrap().min_deg(), Some(-5));
        assert!(lp(0, &[1, 1]).exact_div(&lp(0, &[-1, 1])).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(lp(-1, &[-2, 5, -2]).to_string(), "-2*z + 5 - 2*z^-1");
    }
}
