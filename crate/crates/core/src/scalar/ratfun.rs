//! Reduced rational functions `num/den` with a monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::lpoly::LPoly;
use super::poly::Poly;
use super::rat::Rat;

/// Point at which a valuation is taken.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RootPoint {
    Finite(Rat),
    Infinity,
}

impl RootPoint {
    pub fn zero() -> Self {
        RootPoint::Finite(Rat::zero())
    }
}

/// Valuation of a rational function: an integer, or `+inf` for the zero function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    PosInfinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::PosInfinity => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Reduces `num/den`; panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFun::zero();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc = d.lc();
        if !lc.is_one() {
            let inv = lc.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFun { num: n, den: d }
    }

    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFun {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_lpoly(p: &LPoly) -> Self {
        if p.is_zero() {
            return RatFun::zero();
        }
        let (k, q) = p.to_shifted_poly();
        if k >= 0 {
            RatFun::from_poly(q.shift(k as usize))
        } else {
            RatFun {
                num: q,
                den: Poly::monomial(Rat::one(), (-k) as usize),
            }
        }
    }

    /// `c z^k`
    pub fn monomial(c: Rat, k: i64) -> Self {
        RatFun::from_lpoly(&LPoly::monomial(c, k))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    /// The Laurent polynomial itself when the denominator is a power of `z`.
    pub fn to_lpoly(&self) -> Option<LPoly> {
        let dd = self.den.degree().unwrap();
        if self.den != Poly::monomial(Rat::one(), dd) {
            return None;
        }
        Some(LPoly::new(-(dd as i64), self.num.coeffs().to_vec()))
    }

    pub fn recip(&self) -> Option<RatFun> {
        (!self.is_zero()).then(|| RatFun::new(self.den.clone(), self.num.clone()))
    }

    pub fn exact_div(&self, o: &RatFun) -> Option<RatFun> {
        Some(self * &o.recip()?)
    }

    pub fn scale(&self, c: &Rat) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `f(1/z)`.
    pub fn star(&self) -> RatFun {
        if self.is_zero() {
            return RatFun::zero();
        }
        let dn = self.num.deg_i64();
        let dd = self.den.deg_i64();
        // num(1/z)/den(1/z) = z^(dd-dn) rev(num)/rev(den)
        let (mut n, mut d) = (self.num.reverse(), self.den.reverse());
        if dd >= dn {
            n = n.shift((dd - dn) as usize);
        } else {
            d = d.shift((dn - dd) as usize);
        }
        RatFun::new(n, d)
    }

    pub fn valuation(&self, at: &RootPoint) -> Valuation {
        if self.is_zero() {
            return Valuation::PosInfinity;
        }
        match at {
            RootPoint::Infinity => Valuation::Finite(self.den.deg_i64() - self.num.deg_i64()),
            RootPoint::Finite(a) => {
                let (zn, _) = self.num.split_at_point(a);
                let (zd, _) = self.den.split_at_point(a);
                Valuation::Finite(zn as i64 - zd as i64)
            }
        }
    }

    /// Valuation at the roots of an irreducible factor `f`.
    pub fn factor_valuation(&self, f: &Poly) -> Valuation {
        if self.is_zero() {
            return Valuation::PosInfinity;
        }
        let (zn, _) = self.num.split_factor(f);
        let (zd, _) = self.den.split_factor(f);
        Valuation::Finite(zn as i64 - zd as i64)
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn eval_c64(&self, x: Complex64) -> Complex64 {
        self.num.eval_c64(x) / self.den.eval_c64(x)
    }

    /// Relative size of the denominator at `x`; small values flag proximity to a pole.
    pub fn den_scale_at(&self, x: Complex64) -> f64 {
        let norm: f64 = self.den.to_f64().iter().map(|c| c.abs()).sum();
        self.den.eval_c64(x).norm() / norm.max(f64::MIN_POSITIVE)
    }

    /// `f(1/z)` evaluated as a substitution `z -> 1/lambda`; identical to `star`.
    pub fn invert_variable(&self) -> RatFun {
        self.star()
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFun::new(&self.num + &o.num, self.den.clone());
        }
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFun::new(n, &self.den * &o.den)
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFun::from_poly(&self.num * &o.num);
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = o.den.exact_div(&g1).unwrap();
        let n2 = o.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        RatFun::new(&n1 * &n2, &d1 * &d2)
    }
}

impl<'a> Div<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    // multiplication by the reciprocal
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &RatFun) -> RatFun {
        self * &o.recip().expect("division by the zero rational function")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, o: RatFun) -> RatFun {
        &self + &o
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, o: RatFun) -> RatFun {
        &self - &o
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, o: RatFun) -> RatFun {
        &self * &o
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

impl From<&LPoly> for RatFun {
    fn from(p: &LPoly) -> Self {
        RatFun::from_lpoly(p)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(lp) = self.to_lpoly() {
            return write!(f, "{lp}");
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}
