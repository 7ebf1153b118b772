//! Arbitrary-precision rationals.
//!
//! `Rat` is `num_rational::BigRational`, which already keeps the reduced
//! form with a positive denominator. This module adds parsing, printing and
//! the few numeric helpers the rest of the crate needs.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` with optional sign.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Huge numerator and denominator: scale both down before dividing.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = (nb.max(db) - 900).max(0) as usize;
    let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
    n / d
}

/// Bits kept by the rounded arithmetic that stands in for irrational roots.
pub const PRECISION_BITS: i64 = 512;

/// Rough base-2 exponent of `|x|`, exact to within one.
pub fn log2_magnitude(x: &Rat) -> i64 {
    if x.is_zero() {
        return i64::MIN / 4;
    }
    x.numer().bits() as i64 - x.denom().bits() as i64
}

/// Nearest integer multiple of `2^e`.
pub fn round_to_power_of_two(x: &Rat, e: i64) -> Rat {
    let two = BigInt::from(2);
    let scaled = if e >= 0 {
        x / Rat::from_integer(two.pow(e as u32))
    } else {
        x * Rat::from_integer(two.pow((-e) as u32))
    };
    let n = Rat::from_integer(scaled.round().to_integer());
    if e >= 0 {
        n * Rat::from_integer(two.pow(e as u32))
    } else {
        n / Rat::from_integer(two.pow((-e) as u32))
    }
}

/// Exact rational value of a finite double.
pub fn from_f64(x: f64) -> Rat {
    Rat::from_float(x).unwrap_or_else(Rat::zero)
}

/// Best rational approximation with denominator at most `max_den`
/// (continued-fraction convergents).
pub fn approximate(x: f64, max_den: u64) -> Rat {
    if !x.is_finite() {
        return Rat::zero();
    }
    let neg = x < 0.0;
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let max_den = BigInt::from(max_den);
    for _ in 0..64 {
        let a = v.floor();
        let ai = BigInt::from(a as u64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > max_den {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - a;
        if frac < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1.is_zero() {
        return Rat::zero();
    }
    let r = Rat::new(p1, q1);
    if neg {
        -r
    } else {
        r
    }
}

/// Exact square root when `r` is the square of a rational.
pub fn exact_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Rational approximation of `sqrt(r)` with absolute error below `10^-digits`.
pub fn sqrt_approx(r: &Rat, digits: u32) -> Rat {
    if let Some(s) = exact_sqrt(r) {
        return s;
    }
    let scale = BigInt::from(10u32).pow(digits + 1);
    // sqrt(n/d) = sqrt(n*d)/d
    let nd = r.numer() * r.denom() * &scale * &scale;
    let root = nd.sqrt();
    Rat::new(root, r.denom() * scale)
}

/// `(a, b)` with `a^2 + b^2 = r`, or `None` when no such rationals exist or
/// the factorization of `r` is out of reach.
pub fn sum_of_two_squares(r: &Rat) -> Option<(Rat, Rat)> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some((Rat::zero(), Rat::zero()));
    }
    // n/d = (n d) / d^2
    let n = (r.numer() * r.denom()).to_biguint()?;
    if n.bits() > MAX_FACTOR_BITS {
        return None;
    }
    let (x, y) = integer_two_squares(n)?;
    let d = r.denom();
    Some((Rat::new(x, d.clone()), Rat::new(y, d.clone())))
}

/// Larger integers are not worth factoring: their cofactors are out of reach.
const MAX_FACTOR_BITS: u64 = 256;

/// Pollard rho budget: seeded runs per cofactor and iterations per call.
const RHO_TRIALS: u64 = 8;
const RHO_ITERATIONS: usize = 1 << 18;
const TRIAL_DIVISION_LIMIT: u64 = 1 << 16;

/// Prime factorization within a fixed deterministic budget; `None` when
/// some cofactor resists it.
fn bounded_factors(n: BigUint) -> Option<BTreeMap<BigUint, usize>> {
    let mut out = BTreeMap::new();
    let mut rest = n;
    for p in num_prime::nt_funcs::primes(TRIAL_DIVISION_LIMIT) {
        let p = BigUint::from(p);
        while (&rest % &p).is_zero() {
            rest /= &p;
            *out.entry(p.clone()).or_insert(0) += 1;
        }
    }
    let mut budget = RHO_ITERATIONS;
    let mut todo = vec![(rest, 1usize)];
    while let Some((m, e)) = todo.pop() {
        if m.is_one() {
            continue;
        }
        if num_prime::nt_funcs::is_prime(&m, None).probably() {
            *out.entry(m).or_insert(0) += e;
            continue;
        }
        let r = m.sqrt();
        if &r * &r == m {
            todo.push((r, 2 * e));
            continue;
        }
        let d = (1..=RHO_TRIALS).find_map(|seed| {
            let start = BigUint::from(seed + 1) % &m;
            let offset = BigUint::from(2 * seed + 1) % &m;
            let (d, used) = num_prime::factor::pollard_rho(&m, start, offset, budget / RHO_TRIALS as usize);
            budget = budget.saturating_sub(used);
            d.filter(|d| !d.is_one() && *d != m)
        })?;
        let q = &m / &d;
        todo.push((d, e));
        todo.push((q, e));
    }
    Some(out)
}

fn integer_two_squares(n: BigUint) -> Option<(BigInt, BigInt)> {
    let primes = bounded_factors(n)?;
    // product of Gaussian integers
    let mut acc = (BigInt::one(), BigInt::zero());
    let four = BigUint::from(4u32);
    for (p, e) in primes {
        let residue = (&p % &four).to_u32().unwrap();
        let g = match residue {
            3 if e % 2 == 1 => return None,
            3 => (BigInt::from(p).pow(e as u32 / 2), BigInt::zero()),
            _ => {
                let (a, b) = prime_two_squares(&p)?;
                let mut g = (BigInt::one(), BigInt::zero());
                for _ in 0..e {
                    g = gauss_mul(&g, &(a.clone(), b.clone()));
                }
                g
            }
        };
        acc = gauss_mul(&acc, &g);
    }
    Some((acc.0.abs(), acc.1.abs()))
}

fn gauss_mul(x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&x.0 * &y.0 - &x.1 * &y.1, &x.0 * &y.1 + &x.1 * &y.0)
}

/// Cornacchia's method for a prime `p = 2` or `p = 1 mod 4`.
fn prime_two_squares(p: &BigUint) -> Option<(BigInt, BigInt)> {
    if *p == BigUint::from(2u32) {
        return Some((BigInt::one(), BigInt::one()));
    }
    let one = BigUint::one();
    let minus_one = p - &one;
    let half = &minus_one >> 1;
    let quarter = &minus_one >> 2;
    let mut c = BigUint::from(2u32);
    let root = loop {
        if c >= *p {
            return None;
        }
        if c.modpow(&half, p) == minus_one {
            break c.modpow(&quarter, p);
        }
        c += &one;
    };
    let (mut a, mut b) = (p.clone(), root);
    while &b * &b > *p {
        let t = &a % &b;
        a = b;
        b = t;
    }
    let rest = p - &b * &b;
    let s = rest.sqrt();
    (&s * &s == rest).then(|| (BigInt::from(b), BigInt::from(s)))
}

/// Primitive integer vector proportional to `v`, with positive first nonzero entry.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<Rat> {
    let mut den = BigInt::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rat::from_integer(den.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.sign())
        .unwrap_or(Sign::Plus);
    ints.into_iter()
        .map(|x| {
            let q = x / &g;
            Rat::from_integer(if sign == Sign::Minus { -q } else { q })
        })
        .collect()
}

/// Positive divisors of `|n|` by trial division, or `None` when `n` is too
/// large to enumerate cheaply.
pub fn small_divisors(n: &BigInt, limit: u64) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if d > limit {
            return None;
        }
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d != n / d {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out.sort();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_to_powers_of_two() {
        assert_eq!(round_to_power_of_two(&rat(1, 3), -4), rat(5, 16));
        assert_eq!(round_to_power_of_two(&rat(-7, 1), 1), int(-8));
        assert_eq!(round_to_power_of_two(&rat(3, 8), -3), rat(3, 8));
        assert_eq!(log2_magnitude(&rat(1, 1024)), -10);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_rat(" 7 "), Some(int(7)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
        assert_eq!(format_rat(&rat(4, -6)), "-2/3");
        assert_eq!(format_rat(&int(5)), "5");
    }

    #[test]
    fn sqrt_helpers() {
        assert_eq!(exact_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(exact_sqrt(&int(2)), None);
        for r in [
            rat(13, 1),
            rat(25, 1),
            rat(5, 9),
            rat(1, 2),
            rat(6889, 1053 * 13),
            rat(0, 1),
        ] {
            let (a, b) = sum_of_two_squares(&r).unwrap();
            assert_eq!(&a * &a + &b * &b, r);
        }
        assert_eq!(sum_of_two_squares(&int(3)), None);
        assert_eq!(sum_of_two_squares(&rat(21, 4)), None);
        let s = sqrt_approx(&int(2), 30);
        let err = &s * &s - int(2);
        assert!(to_f64(&err).abs() < 1e-29);
    }

    #[test]
    fn convergents() {
        assert_eq!(approximate(0.5, 100), rat(1, 2));
        assert_eq!(approximate(-2.0 / 3.0, 100), rat(-2, 3));
        assert_eq!(approximate(std::f64::consts::PI, 1000), rat(355, 113));
    }

    #[test]
    fn primitive_vector() {
        let v = primitive_integer_vector(&[rat(-9, 2), int(1)]);
        assert_eq!(v, vec![int(9), int(-2)]);
    }

    #[test]
    fn divisors() {
        let d = small_divisors(&BigInt::from(12), 1000).unwrap();
        assert_eq!(d.len(), 6);
    }
}
