//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{self, Rat};

const MAX_QR_SWEEPS: usize = 10_000;
/// Cap on rational Newton steps; convergence from a double estimate takes a handful.
const NEWTON_ITERATIONS: usize = 64;
const ABERTH_ITERATIONS: usize = 500;

/// Simultaneous root iteration for a monic polynomial with ascending
/// coefficients `c` (leading 1 implied); used when the QR sweeps stall.
fn aberth(c: &[f64]) -> Vec<Complex64> {
    let n = c.len();
    let eval = |z: Complex64| {
        let mut f = Complex64::new(1.0, 0.0);
        let mut fp = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            fp = fp * z + f;
            f = f * z + a;
        }
        (f, fp)
    };
    let radius = 1.0 + c.iter().map(|a| a.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|i| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * i as f64 / n as f64))
        .collect();
    for _ in 0..ABERTH_ITERATIONS {
        let mut moved: f64 = 0.0;
        for i in 0..n {
            let (f, fp) = eval(z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / fp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Polynomial in `z`; `coeffs[i]` is the coefficient of `z^i`.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| rat::int(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// `c z^k`
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn z() -> Self {
        Poly::monomial(Rat::one(), 1)
    }

    /// Monic linear factor `z - a`.
    pub fn linear(a: &Rat) -> Self {
        Poly::new(vec![-a.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn trailing_power(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rat::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut out = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_c64(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat::to_f64(c);
        }
        acc
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(rat::to_f64).collect()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat::int(i as i64))
                .collect(),
        )
    }

    /// `z^deg p(1/z)`: coefficients reversed.
    pub fn reverse(&self) -> Poly {
        let mut v = self.coeffs.clone();
        v.reverse();
        Poly::new(v)
    }

    /// Monic polynomial whose roots are the reciprocals of the roots of `self`.
    /// Requires `self(0) != 0`.
    pub fn reciprocal_monic(&self) -> Poly {
        self.reverse().monic()
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        if self.deg_i64() < dd as i64 {
            return (Poly::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.div_rem(self).1.is_zero()
    }

    /// Integer coefficients with unit content, positive leading coefficient.
    pub fn primitive_int(&self) -> Vec<BigInt> {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &scaled {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return scaled;
        }
        if scaled.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        scaled.into_iter().map(|c| c / &g).collect()
    }

    fn from_bigints(v: &[BigInt]) -> Poly {
        Poly::new(v.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    /// Monic GCD via the subresultant pseudo-remainder sequence over the integers.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        let (a, b) = if self.degree() >= other.degree() {
            (self.primitive_int(), other.primitive_int())
        } else {
            (other.primitive_int(), self.primitive_int())
        };
        Poly::from_bigints(&subresultant_gcd(a, b)).monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        (self * &other.exact_div(&g).unwrap()).monic()
    }

    /// Writes `self = (z - a)^nu * cofactor` with `cofactor(a) != 0`.
    pub fn split_at_point(&self, a: &Rat) -> (usize, Poly) {
        assert!(!self.is_zero(), "split_at_point on the zero polynomial");
        let lin = Poly::linear(a);
        let mut nu = 0;
        let mut cur = self.clone();
        loop {
            if cur.eval(a) != Rat::zero() {
                return (nu, cur);
            }
            cur = cur.exact_div(&lin).expect("root implies exact division");
            nu += 1;
        }
    }

    /// Multiplicity of the (nonconstant) factor `f` in `self`, and the cofactor.
    pub fn split_factor(&self, f: &Poly) -> (usize, Poly) {
        assert!(!f.is_constant(), "split_factor needs a nonconstant factor");
        let mut nu = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(f) {
            if cur.is_zero() {
                break;
            }
            cur = q;
            nu += 1;
        }
        (nu, cur)
    }

    /// Yun's square-free decomposition of a monic polynomial:
    /// `self = prod_i factors[i].0 ^ factors[i].1`, each factor square-free and monic.
    pub fn squarefree(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.exact_div(&a).unwrap();
        let mut c = df.exact_div(&a).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if !g.is_one() {
                out.push((g.clone(), i));
            }
            b = b.exact_div(&g).unwrap();
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&g).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Monic square root when `self` is the square of a polynomial.
    pub fn sqrt(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let mut root = Poly::one();
        for (f, m) in self.monic().squarefree() {
            if m % 2 != 0 {
                return None;
            }
            root = &root * &f.pow(m / 2);
        }
        let lc = rat::exact_sqrt(&self.lc())?;
        let root = root.scale(&lc);
        (&root * &root == *self).then_some(root)
    }

    /// Distinct rational roots, found with the rational-root theorem when the
    /// extreme coefficients are small, otherwise from refined numeric roots.
    /// Every returned root is verified exactly.
    pub fn rational_roots(&self) -> Vec<Rat> {
        let mut roots = Vec::new();
        if self.is_constant() {
            return roots;
        }
        let mut p = self.clone();
        if let Some(k) = p.trailing_power() {
            if k > 0 {
                roots.push(Rat::zero());
                p = Poly::new(p.coeffs[k..].to_vec());
            }
        }
        if p.is_constant() {
            return roots;
        }
        let ints = p.primitive_int();
        let a0 = ints.first().unwrap().clone();
        let an = ints.last().unwrap().clone();
        let candidates: Vec<Rat> = match (rat::small_divisors(&a0, 2_000_000), rat::small_divisors(&an, 2_000_000)) {
            (Some(ps), Some(qs)) if ps.len() * qs.len() <= 20_000 => {
                let mut c = Vec::new();
                for q in &qs {
                    for pnum in &ps {
                        let r = Rat::new(pnum.clone(), q.clone());
                        c.push(r.clone());
                        c.push(-r);
                    }
                }
                c
            }
            _ => {
                let sf = p.squarefree_part();
                sf.numeric_roots()
                    .into_iter()
                    .filter(|r| r.im.abs() <= 1e-8 * (1.0 + r.re.abs()))
                    .map(|r| rat::approximate(r.re, 1_000_000_000_000))
                    .collect()
            }
        };
        for c in candidates {
            if !roots.contains(&c) && p.eval(&c).is_zero() {
                roots.push(c);
            }
        }
        roots.sort();
        roots
    }

    pub fn squarefree_part(&self) -> Poly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).unwrap().monic()
    }

    /// Complex roots from companion-matrix eigenvalues, polished by Newton steps.
    /// Accuracy degrades for repeated roots; callers pass square-free input.
    pub fn numeric_roots(&self) -> Vec<Complex64> {
        let n = match self.degree() {
            Some(n) if n > 0 => n,
            _ => return Vec::new(),
        };
        // exact zero roots would make the companion matrix nilpotent
        let k = self.trailing_power().unwrap_or(0);
        let mut roots = vec![Complex64::new(0.0, 0.0); k];
        if k == n {
            return roots;
        }
        let core = Poly::new(self.coeffs[k..].to_vec());
        let c = core.monic().to_f64();
        let m = n - k;
        if m == 1 {
            roots.push(Complex64::new(-c[0], 0.0));
            return roots;
        }
        let mut comp = DMatrix::<f64>::zeros(m, m);
        for i in 1..m {
            comp[(i, i - 1)] = 1.0;
        }
        for i in 0..m {
            comp[(i, m - 1)] = -c[i];
        }
        let eig = match Schur::try_new(comp, f64::EPSILON, MAX_QR_SWEEPS) {
            Some(schur) => schur.complex_eigenvalues().iter().copied().collect(),
            None => aberth(&c),
        };
        let dp = core.derivative();
        roots.extend(eig.into_iter().map(|r0| {
            let mut r = r0;
            for _ in 0..8 {
                let f = core.eval_c64(r);
                let fp = dp.eval_c64(r);
                if fp.norm() == 0.0 {
                    break;
                }
                let step = f / fp;
                if !step.re.is_finite() || !step.im.is_finite() {
                    break;
                }
                r -= step;
                if step.norm() <= 1e-17 * (1.0 + r.norm()) {
                    break;
                }
            }
            r
        }));
        roots
    }
}

/// `x` rounded to `bits` bits below its magnitude, or below `2^floor` when larger.
fn round_relative(x: &Rat, bits: i64, floor: i64) -> Rat {
    rat::round_to_power_of_two(x, (rat::log2_magnitude(x) - bits).max(floor))
}

impl Poly {
    fn eval_complex(&self, z: &Complex<Rat>) -> Complex<Rat> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(Rat::zero(), Rat::zero()), |acc, c| {
                acc * z.clone() + Complex::new(c.clone(), Rat::zero())
            })
    }

    /// Newton refinement of a simple root from a double-precision estimate,
    /// in rational arithmetic rounded to `bits` bits. A real estimate stays real.
    pub fn refine_root(&self, z0: Complex64, bits: i64) -> Complex<Rat> {
        let dp = self.derivative();
        let floor = -bits;
        let round =
            |c: Complex<Rat>| Complex::new(round_relative(&c.re, bits, floor), round_relative(&c.im, bits, floor));
        let mut z = Complex::new(rat::from_f64(z0.re), rat::from_f64(z0.im));
        let scale = z0.norm().max(1.0).log2().ceil() as i64;
        let target = Rat::new(BigInt::one(), BigInt::from(2).pow((bits - scale - 8).max(1) as u32));
        for _ in 0..NEWTON_ITERATIONS {
            let d = dp.eval_complex(&z);
            if d.re.is_zero() && d.im.is_zero() {
                break;
            }
            let step = round(self.eval_complex(&z) / d);
            z = round(z - step.clone());
            if step.re.abs() <= target && step.im.abs() <= target {
                break;
            }
        }
        z
    }
}

fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    // lc(b)^(deg a - deg b + 1) * a  mod  b
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.to_vec();
    let mut e = a.len() as i64 - b.len() as i64 + 1;
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x *= &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
        e -= 1;
    }
    if e > 0 {
        let f = num_traits::pow(lb, e as usize);
        for x in r.iter_mut() {
            *x *= &f;
        }
    }
    r
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn subresultant_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    let ca = content(&a);
    let cb = content(&b);
    a.iter_mut().for_each(|x| *x /= &ca);
    b.iter_mut().for_each(|x| *x /= &cb);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.len() - b.len();
        let r = int_prem(&a, &b);
        if r.is_empty() {
            let c = content(&b);
            return b.into_iter().map(|x| x / &c).collect();
        }
        if r.len() == 1 {
            return vec![BigInt::one()];
        }
        a = b;
        let denom = &g * num_traits::pow(h.clone(), delta);
        b = r.into_iter().map(|x| x / &denom).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
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
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Writes a sum of terms in `var` with the given power offset.
pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: &[Rat], minpow: i64, var: &str) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let k = minpow + i as i64;
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let cs = rat::format_rat(&a);
        match k {
            0 => write!(f, "{cs}")?,
            _ => {
                if !a.is_one() {
                    write!(f, "{cs}*")?;
                }
                if k == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{k}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, 0, "z")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
