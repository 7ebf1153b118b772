//! Pole/zero regions closed under the orbit pairing `a <-> 1/a`, and the
//! splitting of a canonic diagonal into unit-circle, region-selected and
//! monomial parts.

use num_complex::Complex64;
use num_traits::{One, Signed};

use crate::canonical::RootDescriptor;
use crate::error::{Error, Result};
use crate::scalar::{rat, LPoly, Poly, Rat, RatFun, RootPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// The region contains `0` and the open unit disk, up to flips.
    Inside,
    /// The region contains `infinity` and the exterior of the closed disk, up to flips.
    Outside,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Inside => Side::Outside,
            Side::Outside => Side::Inside,
        }
    }
}

/// A region `A` with `A` and `A* = {1/a : a in A}` partitioning the plane off
/// the unit circle. Orbits are keyed by their inside-disk representative; a
/// flip factor reverses the default assignment for each of its roots' orbits.
/// The polynomial `z` keys the orbit `{0, infinity}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSpec {
    pub default_side: Side,
    /// Whether the unit circle is included (the weak variant).
    pub closed: bool,
    pub flips: Vec<Poly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    InRegion,
    InStar,
    OnCircle,
}

impl RegionSpec {
    pub fn new(default_side: Side, closed: bool, flips: Vec<Poly>) -> Result<Self> {
        let flips: Vec<Poly> = flips.into_iter().map(|f| f.monic()).collect();
        for (i, f) in flips.iter().enumerate() {
            if f.is_constant() {
                return Err(Error::InvalidRegion("flip factor must be nonconstant".into()));
            }
            if f.squarefree_part().degree() != f.degree() {
                return Err(Error::InvalidRegion(format!("flip factor {f} has repeated roots")));
            }
            if !roots_strictly_inside(f) {
                return Err(Error::InvalidRegion(format!(
                    "flip factor {f} has a root outside the open unit disk"
                )));
            }
            if flips[..i].iter().any(|g| !g.gcd(f).is_one()) {
                return Err(Error::InvalidRegion(format!("flip factor {f} repeats an orbit")));
            }
        }
        Ok(RegionSpec {
            default_side,
            closed,
            flips,
        })
    }

    pub fn outside() -> Self {
        RegionSpec {
            default_side: Side::Outside,
            closed: false,
            flips: Vec::new(),
        }
    }

    pub fn inside() -> Self {
        RegionSpec {
            default_side: Side::Inside,
            closed: false,
            flips: Vec::new(),
        }
    }

    pub fn with_closed(mut self, closed: bool) -> Self {
        self.closed = closed;
        self
    }

    pub fn with_flip(self, f: Poly) -> Result<Self> {
        let mut flips = self.flips;
        flips.push(f);
        RegionSpec::new(self.default_side, self.closed, flips)
    }

    fn rep_flipped(&self, rep: &Poly) -> bool {
        self.flips.iter().any(|f| !f.gcd(rep).is_one())
    }

    fn root_flipped(&self, r: Complex64) -> bool {
        self.flips.iter().any(|f| {
            let scale: f64 = f.to_f64().iter().map(|c| c.abs()).sum();
            f.eval_c64(r).norm() <= 1e-7 * scale
        })
    }

    /// Whether the inside-disk representative of an orbit belongs to the region.
    fn inside_rep_in_region(&self, flipped: bool) -> bool {
        (self.default_side == Side::Inside) != flipped
    }

    pub fn contains_zero(&self) -> bool {
        self.inside_rep_in_region(self.rep_flipped(&Poly::z()))
    }

    pub fn contains_infinity(&self) -> bool {
        !self.contains_zero()
    }

    pub fn membership(&self, point: &RootDescriptor) -> Result<Membership> {
        let (pos, rep) = match point {
            RootDescriptor::Infinity => (Position::Outside, Poly::z()),
            RootDescriptor::Point(a) => {
                let m = a.abs();
                if m.is_one() {
                    (Position::On, Poly::one())
                } else if m < Rat::one() {
                    (Position::Inside, Poly::linear(a))
                } else {
                    (Position::Outside, Poly::linear(&a.recip()))
                }
            }
            RootDescriptor::Factor(f) => factor_position(f)?,
        };
        let in_region = match pos {
            Position::On => {
                return if self.closed {
                    Ok(Membership::OnCircle)
                } else {
                    Err(Error::OnCircleAmbiguous)
                };
            }
            Position::Inside => self.inside_rep_in_region(self.rep_flipped(&rep)),
            Position::Outside => !self.inside_rep_in_region(self.rep_flipped(&rep)),
        };
        Ok(if in_region {
            Membership::InRegion
        } else {
            Membership::InStar
        })
    }

    /// Membership of a numerically located point.
    pub fn contains_numeric(&self, r: Complex64, tol: f64) -> Option<bool> {
        let m = r.norm();
        if (m - 1.0).abs() <= tol {
            return self.closed.then_some(true);
        }
        if m < 1.0 {
            Some(self.inside_rep_in_region(self.root_flipped(r)))
        } else {
            Some(!self.inside_rep_in_region(self.root_flipped(r.inv())))
        }
    }
}

/// Pole region and zero region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionPair {
    pub poles: RegionSpec,
    pub zeros: RegionSpec,
}

impl RegionPair {
    pub fn new(poles: RegionSpec, zeros: RegionSpec) -> Self {
        RegionPair { poles, zeros }
    }

    /// Poles and zeroes both kept out of the exterior of the disk.
    pub fn outer() -> Self {
        RegionPair {
            poles: RegionSpec::outside(),
            zeros: RegionSpec::outside(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Position {
    Inside,
    On,
    Outside,
}

fn factor_position(f: &Poly) -> Result<(Position, Poly)> {
    let f = f.monic();
    match f.degree() {
        Some(1) => {
            let a = -f.coeff(0);
            let m = a.abs();
            Ok(if m.is_one() {
                (Position::On, f)
            } else if m < Rat::one() {
                (Position::Inside, f)
            } else {
                (Position::Outside, Poly::linear(&a.recip()))
            })
        }
        Some(2) if f.coeff(1) * f.coeff(1) < f.coeff(0) * rat::int(4) => {
            // complex pair with squared modulus c0
            let c0 = f.coeff(0);
            Ok(if c0.is_one() {
                (Position::On, f)
            } else if c0 < Rat::one() {
                (Position::Inside, f.clone())
            } else {
                (Position::Outside, f.reciprocal_monic())
            })
        }
        _ => {
            let roots = f.numeric_roots();
            let inside = roots.iter().all(|r| r.norm() < 1.0 - 1e-12);
            let outside = roots.iter().all(|r| r.norm() > 1.0 + 1e-12);
            if inside {
                Ok((Position::Inside, f))
            } else if outside {
                Ok((Position::Outside, f.reciprocal_monic()))
            } else {
                Err(Error::InvalidRegion(format!(
                    "factor {f} does not determine a single side"
                )))
            }
        }
    }
}

fn roots_strictly_inside(f: &Poly) -> bool {
    match f.degree() {
        Some(1) => f.coeff(0).abs() < Rat::one(),
        Some(2) if f.coeff(1) * f.coeff(1) < f.coeff(0) * rat::int(4) => f.coeff(0) < Rat::one(),
        _ => {
            let rr = f.rational_roots();
            rr.iter().all(|r| r.abs() < Rat::one()) && f.numeric_roots().iter().all(|r| r.norm() < 1.0 - 1e-9)
        }
    }
}

/// `p = inside * on * outside`, each monic, by root modulus.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleSplit {
    pub inside: Poly,
    pub on: Poly,
    pub outside: Poly,
    /// Some factor was rebuilt from numeric roots and holds only approximately.
    pub approximate: bool,
}

const RATIONALIZE_DENOMINATORS: [u64; 4] = [1_000, 1_000_000, 1_000_000_000, 1_000_000_000_000];
const APPROX_DENOMINATOR: u64 = 1_000_000_000_000_000;

/// Real monic polynomial with the given conjugate-closed roots, in double precision.
fn real_poly_from_roots(roots: &[Complex64]) -> Vec<f64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r;
        }
        c = next;
    }
    c.into_iter().map(|x| x.re).collect()
}

/// Rational monic factor of `p` matching the given roots, if one exists with small denominators.
fn exact_factor_from_roots(p: &Poly, roots: &[Complex64]) -> Option<Poly> {
    if roots.is_empty() {
        return Some(Poly::one());
    }
    let c = real_poly_from_roots(roots);
    RATIONALIZE_DENOMINATORS.iter().find_map(|&den| {
        let cand = Poly::new(c.iter().map(|&x| rat::approximate(x, den)).collect());
        (cand.degree() == Some(roots.len()) && cand.divides(p)).then_some(cand)
    })
}

fn approx_factor_from_roots(roots: &[Complex64]) -> Poly {
    Poly::new(
        real_poly_from_roots(roots)
            .iter()
            .map(|&x| rat::approximate(x, APPROX_DENOMINATOR))
            .collect(),
    )
}

/// Real monic polynomial whose roots are the given roots of the square-free
/// `s` (each replaced by its reciprocal when flagged), refined to high
/// precision. Falls back to double precision when the roots are not closed
/// under conjugation.
fn precise_factor(s: &Poly, roots: &[(Complex64, bool)]) -> Poly {
    let is_real = |z: &Complex64| z.im.abs() <= 1e-12 * (1.0 + z.norm());
    let upper = roots.iter().filter(|(z, _)| !is_real(z) && z.im > 0.0).count();
    let lower = roots.iter().filter(|(z, _)| !is_real(z) && z.im < 0.0).count();
    if upper != lower {
        let plain: Vec<Complex64> = roots.iter().map(|&(z, inv)| if inv { z.inv() } else { z }).collect();
        return approx_factor_from_roots(&plain);
    }
    let bits = rat::PRECISION_BITS;
    let mut out = Poly::one();
    for &(z, invert) in roots {
        if is_real(&z) {
            let r = s.refine_root(Complex64::new(z.re, 0.0), bits).re;
            let r = if invert { r.recip() } else { r };
            out = &out * &Poly::linear(&r);
        } else if z.im > 0.0 {
            let w = s.refine_root(z, bits);
            let norm = &w.re * &w.re + &w.im * &w.im;
            // 1/w = conj(w) / |w|^2
            let (re, norm) = if invert {
                (&w.re / &norm, norm.recip())
            } else {
                (w.re, norm)
            };
            out = &out * &Poly::new(vec![norm, -(re * Rat::from_integer(2.into())), Rat::one()]);
        }
    }
    let top = out.coeffs().iter().map(rat::log2_magnitude).max().unwrap_or(0);
    Poly::new(
        out.coeffs()
            .iter()
            .map(|c| rat::round_to_power_of_two(c, top - bits))
            .collect(),
    )
}

pub fn split_circle(p: &Poly, tol: f64) -> Result<CircleSplit> {
    assert!(!p.is_zero(), "split_circle on the zero polynomial");
    let p = p.monic();
    let mut inside = Poly::one();
    let mut on = Poly::one();
    let mut outside = Poly::one();
    let mut approximate = false;
    let mut rest = p.clone();
    for r in p.rational_roots() {
        let (nu, cof) = rest.split_at_point(&r);
        rest = cof;
        let f = Poly::linear(&r).pow(nu);
        let m = r.abs();
        if m < Rat::one() {
            inside = &inside * &f;
        } else if m.is_one() {
            on = &on * &f;
        } else {
            outside = &outside * &f;
        }
    }
    for (s, mult) in rest.squarefree() {
        let roots = s.numeric_roots();
        let near: Vec<Complex64> = roots
            .iter()
            .copied()
            .filter(|r| (r.norm() - 1.0).abs() < tol.max(1e-7))
            .collect();
        let s_on = if near.is_empty() {
            Poly::one()
        } else {
            exact_factor_from_roots(&s, &near).ok_or(Error::UnresolvableCircleProximity {
                modulus: near[0].norm(),
            })?
        };
        let s_off = s.exact_div(&s_on).unwrap();
        let ins: Vec<Complex64> = roots
            .iter()
            .copied()
            .filter(|r| r.norm() < 1.0 - tol.max(1e-7))
            .collect();
        let (s_in, s_out) = match exact_factor_from_roots(&s_off, &ins) {
            Some(f) => {
                let o = s_off.exact_div(&f).unwrap();
                (f, o)
            }
            None => {
                approximate = true;
                let outs: Vec<Complex64> = roots
                    .iter()
                    .copied()
                    .filter(|r| r.norm() > 1.0 + tol.max(1e-7))
                    .collect();
                let tag = |rs: Vec<Complex64>| rs.into_iter().map(|z| (z, false)).collect::<Vec<_>>();
                (precise_factor(&s_off, &tag(ins)), precise_factor(&s_off, &tag(outs)))
            }
        };
        inside = &inside * &s_in.pow(mult);
        on = &on * &s_on.pow(mult);
        outside = &outside * &s_out.pow(mult);
    }
    Ok(CircleSplit {
        inside,
        on,
        outside,
        approximate,
    })
}

/// `D = Sigma * Lambda^* * Theta^* * Theta * Lambda` on the diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitDecomposition {
    /// Monomials `c z^k`.
    pub sigma: Vec<LPoly>,
    pub lambda: Vec<RatFun>,
    pub theta: Vec<RatFun>,
    pub approximate: bool,
}

impl SplitDecomposition {
    /// `Theta * Lambda`, entrywise.
    pub fn d_plus(&self) -> Vec<RatFun> {
        self.theta.iter().zip(&self.lambda).map(|(t, l)| t * l).collect()
    }

    pub fn reassemble(&self) -> Vec<RatFun> {
        (0..self.sigma.len())
            .map(|k| {
                let s = RatFun::from_lpoly(&self.sigma[k]);
                let l = &self.lambda[k];
                let t = &self.theta[k];
                &(&(&(&s * &l.star()) * &t.star()) * t) * l
            })
            .collect()
    }
}

/// Orbit representatives not in `region`, given the inside-disk part `p_in` of a
/// numerator or denominator (roots nonzero).
fn representatives(p_in: &Poly, approximate: bool, region: &RegionSpec) -> Poly {
    if p_in.is_one() {
        return Poly::one();
    }
    let pick = |part: &Poly, flipped: bool| {
        if part.is_one() {
            Poly::one()
        } else if region.inside_rep_in_region(flipped) {
            part.reciprocal_monic()
        } else {
            part.clone()
        }
    };
    if !approximate {
        let mut flipped = Poly::one();
        let mut rest = p_in.clone();
        for f in &region.flips {
            let (nu, cof) = rest.split_factor(f);
            if nu > 0 {
                flipped = &flipped * &f.pow(nu);
                rest = cof;
            }
        }
        // a flip factor may share only some roots with the representative
        for f in &region.flips {
            loop {
                let g = rest.gcd(f);
                if g.is_one() {
                    break;
                }
                flipped = &flipped * &g;
                rest = rest.exact_div(&g).unwrap();
            }
        }
        return &pick(&flipped, true) * &pick(&rest, false);
    }
    let mut out = Poly::one();
    for (s, mult) in p_in.squarefree() {
        let roots = s.numeric_roots();
        let (fl, keep): (Vec<Complex64>, Vec<Complex64>) = roots.into_iter().partition(|r| region.root_flipped(*r));
        let chosen: Vec<(Complex64, bool)> = [(fl, true), (keep, false)]
            .into_iter()
            .flat_map(|(rs, flipped)| {
                let recip = region.inside_rep_in_region(flipped);
                rs.into_iter().map(move |r| (r, recip))
            })
            .collect();
        out = &out * &precise_factor(&s, &chosen).pow(mult);
    }
    out
}

fn trailing_coefficient(f: &RatFun) -> Rat {
    let lead = |p: &Poly| p.coeff(p.trailing_power().unwrap());
    lead(f.num()) / lead(f.den())
}

/// Splits each canonic diagonal entry `eps/psi` per the region pair.
pub fn split_diagonal(d: &[RatFun], regions: &RegionPair, tol: f64) -> Result<SplitDecomposition> {
    let mut out = SplitDecomposition {
        sigma: Vec::new(),
        lambda: Vec::new(),
        theta: Vec::new(),
        approximate: false,
    };
    let zero_in_poles = regions.poles.contains_zero();
    let zero_in_zeros = regions.zeros.contains_zero();
    for (k, dk) in d.iter().enumerate() {
        if dk.is_zero() {
            return Err(Error::Internal(format!("diagonal entry {k} is zero")));
        }
        let h = dk.valuation(&RootPoint::zero()).finite().unwrap();
        let strip = |p: &Poly| {
            let t = p.trailing_power().unwrap();
            Poly::new(p.coeffs()[t..].to_vec())
        };
        let num = split_circle(&strip(dk.num()), tol)?;
        let den = split_circle(&strip(dk.den()), tol)?;
        if regions.zeros.closed && !(num.on.is_one() && den.on.is_one()) {
            return Err(Error::OnCircleForbidden(if num.on.is_one() { "pole" } else { "zero" }));
        }
        if regions.poles.closed && !den.on.is_one() {
            return Err(Error::OnCircleForbidden("pole"));
        }
        let theta_num = num.on.sqrt().ok_or(Error::OddOnCircleMultiplicity(k))?;
        let theta_den = den.on.sqrt().ok_or(Error::OddOnCircleMultiplicity(k))?;
        let theta = RatFun::new(theta_num, theta_den);
        let lam_num = representatives(&num.inside, num.approximate, &regions.zeros);
        let lam_den = representatives(&den.inside, den.approximate, &regions.poles);
        let mut lambda = RatFun::new(lam_num, lam_den);
        if (h < 0 && !zero_in_poles) || (h > 0 && !zero_in_zeros) {
            lambda = &lambda * &RatFun::monomial(Rat::one(), h);
        }
        let approximate = num.approximate || den.approximate;
        let rebuilt = &(&(&lambda.star() * &theta.star()) * &theta) * &lambda;
        let sigma = if approximate {
            let e = h - rebuilt.valuation(&RootPoint::zero()).finite().unwrap();
            LPoly::monomial(trailing_coefficient(dk) / trailing_coefficient(&rebuilt), e)
        } else {
            let s = dk / &rebuilt;
            match s.to_lpoly().filter(|p| p.as_monomial().is_some()) {
                Some(m) => m,
                None => {
                    return Err(Error::NotASpectrum(format!(
                        "diagonal entry {k} lacks the reciprocal pole/zero pairing of a spectrum"
                    )))
                }
            }
        };
        out.approximate |= approximate;
        out.sigma.push(sigma);
        out.lambda.push(lambda);
        out.theta.push(theta);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat::{int, rat};

    #[test]
    fn membership_default_and_flip() {
        let out = RegionSpec::outside();
        assert_eq!(out.membership(&RootDescriptor::Infinity).unwrap(), Membership::InRegion);
        assert_eq!(
            out.membership(&RootDescriptor::Point(int(0))).unwrap(),
            Membership::InStar
        );
        let flipped = out.with_flip(Poly::linear(&rat(1, 2))).unwrap();
        assert_eq!(
            flipped.membership(&RootDescriptor::Point(rat(1, 2))).unwrap(),
            Membership::InRegion
        );
        assert_eq!(
            flipped.membership(&RootDescriptor::Point(int(2))).unwrap(),
            Membership::InStar
        );
        assert_eq!(
            flipped.membership(&RootDescriptor::Point(int(-3))).unwrap(),
            Membership::InRegion
        );
        assert_eq!(
            flipped.membership(&RootDescriptor::Point(int(1))),
            Err(Error::OnCircleAmbiguous)
        );
        let closed = RegionSpec::inside().with_closed(true);
        assert_eq!(
            closed.membership(&RootDescriptor::Point(int(-1))).unwrap(),
            Membership::OnCircle
        );
    }

    #[test]
    fn complex_pair_membership() {
        // z^2 + 1/4 has roots +-i/2
        let f = Poly::new(vec![rat(1, 4), int(0), int(1)]);
        let spec = RegionSpec::inside();
        assert_eq!(
            spec.membership(&RootDescriptor::Factor(f.clone())).unwrap(),
            Membership::InRegion
        );
        assert_eq!(
            spec.membership(&RootDescriptor::Factor(f.reciprocal_monic())).unwrap(),
            Membership::InStar
        );
        let flipped = spec.with_flip(f.clone()).unwrap();
        assert_eq!(
            flipped.membership(&RootDescriptor::Factor(f)).unwrap(),
            Membership::InStar
        );
    }

    #[test]
    fn invalid_flips() {
        assert!(RegionSpec::outside().with_flip(Poly::from_ints(&[-2, 1])).is_err());
        assert!(RegionSpec::outside().with_flip(Poly::from_ints(&[1, 0, 1])).is_err());
        let twice = RegionSpec::outside().with_flip(Poly::linear(&rat(1, 3))).unwrap();
        assert!(twice.with_flip(Poly::linear(&rat(1, 3))).is_err());
    }

    #[test]
    fn split_circle_examples() {
        let p = &(&Poly::z() * &Poly::linear(&int(2))) * &Poly::linear(&rat(1, 2));
        let s = split_circle(&p, 1e-9).unwrap();
        assert_eq!(s.inside, &Poly::z() * &Poly::linear(&rat(1, 2)));
        assert!(s.on.is_one());
        assert_eq!(s.outside, Poly::linear(&int(2)));
        let sq = Poly::linear(&int(1)).pow(2);
        let s = split_circle(&sq, 1e-9).unwrap();
        assert_eq!((s.inside.is_one(), &s.on, s.outside.is_one()), (true, &sq, true));
        let s = split_circle(&Poly::one(), 1e-9).unwrap();
        assert!(s.inside.is_one() && s.on.is_one() && s.outside.is_one() && !s.approximate);
    }

    #[test]
    fn split_circle_irrational_on_circle_pair() {
        // (z^2 - z + 1)^2 (z^2 + 1/9): roots e^{+-i pi/3} twice, +-i/3
        let on = Poly::from_ints(&[1, -1, 1]);
        let ins = Poly::new(vec![rat(1, 9), int(0), int(1)]);
        let s = split_circle(&(&on.pow(2) * &ins), 1e-9).unwrap();
        assert_eq!(s.on, on.pow(2));
        assert_eq!(s.inside, ins);
        assert!(!s.approximate);
    }

    #[test]
    fn split_circle_irrational_reciprocal_pair_is_approximate() {
        // z^2 - 3z + 1 has roots (3 +- sqrt 5)/2
        let s = split_circle(&Poly::from_ints(&[1, -3, 1]), 1e-9).unwrap();
        assert!(s.approximate);
        assert!((rat::to_f64(&s.inside.coeff(0)) + 0.381966011250105).abs() < 1e-12);
    }

    #[test]
    fn split_squared_circle_factor() {
        let d = vec![RatFun::from_poly(Poly::linear(&int(1)).pow(2))];
        let s = split_diagonal(&d, &RegionPair::new(RegionSpec::outside(), RegionSpec::outside()), 1e-9).unwrap();
        assert_eq!(s.theta, vec![RatFun::from_poly(Poly::linear(&int(1)))]);
        assert_eq!(s.lambda, vec![RatFun::one()]);
        assert_eq!(s.sigma, vec![LPoly::monomial(int(-1), 1)]);
        assert_eq!(s.reassemble(), d);
    }

    #[test]
    fn odd_on_circle_multiplicity_rejected() {
        let d = vec![RatFun::from_poly(Poly::linear(&int(1)))];
        let e = split_diagonal(&d, &RegionPair::outer(), 1e-9);
        assert_eq!(e, Err(Error::OddOnCircleMultiplicity(0)));
    }

    #[test]
    fn identity_splits_trivially() {
        let d = vec![RatFun::one(); 3];
        let s = split_diagonal(&d, &RegionPair::outer(), 1e-9).unwrap();
        assert!(s.sigma.iter().all(LPoly::is_one));
        assert!(s.lambda.iter().all(RatFun::is_one) && s.theta.iter().all(RatFun::is_one));
    }
}
