//! Postcondition checks for a candidate spectral factor.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::canonical::{mcmillan_degree, smith_mcmillan, structural_indices, RootDescriptor};
use crate::matrix::RatMatrix;
use crate::regions::{Membership, RegionPair, RegionSpec};
use crate::scalar::{rat, Poly, Rat, RatFun};

/// A pole or zero location.
#[derive(Clone, Debug, PartialEq)]
pub enum RootSite {
    Exact(Rat),
    Numeric(Complex64),
    Infinity,
}

impl RootSite {
    pub fn modulus(&self) -> f64 {
        match self {
            RootSite::Exact(a) => rat::to_f64(a).abs(),
            RootSite::Numeric(z) => z.norm(),
            RootSite::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for RootSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootSite::Exact(a) => write!(f, "{}", rat::format_rat(a)),
            RootSite::Numeric(z) if z.im == 0.0 => write!(f, "{:.12}", z.re),
            RootSite::Numeric(z) => write!(f, "{:.12}{:+.12}i", z.re, z.im),
            RootSite::Infinity => write!(f, "inf"),
        }
    }
}

/// A root with its multiplicity (largest structural index magnitude).
#[derive(Clone, Debug, PartialEq)]
pub struct Site {
    pub root: RootSite,
    pub multiplicity: usize,
}

/// Roots of `p` with multiplicities: rational roots exactly, the rest numerically.
pub fn root_sites(p: &Poly) -> Vec<Site> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let mut rest = p.clone();
    for r in p.rational_roots() {
        let (nu, cof) = rest.split_at_point(&r);
        rest = cof;
        out.push(Site {
            root: RootSite::Exact(r),
            multiplicity: nu,
        });
    }
    for (s, mult) in rest.squarefree() {
        for z in s.numeric_roots() {
            out.push(Site {
                root: RootSite::Numeric(z),
                multiplicity: mult,
            });
        }
    }
    out
}

/// Whether `site` lies in `region` (the circle only for closed regions).
fn lies_in(region: &RegionSpec, site: &RootSite, tol: f64) -> bool {
    match site {
        RootSite::Exact(a) => matches!(
            region.membership(&RootDescriptor::Point(a.clone())),
            Ok(Membership::InRegion | Membership::OnCircle)
        ),
        RootSite::Infinity => region.contains_infinity(),
        RootSite::Numeric(z) => region.contains_numeric(*z, tol).unwrap_or(false),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    /// `Phi - W* W` vanishes identically.
    pub residual_exact: bool,
    /// Largest entry of `Phi - W* W` over the circle grid, relative to `max(1, |Phi|)`.
    pub residual_sampled: f64,
    pub poles: Vec<Site>,
    pub zeros: Vec<Site>,
    pub pole_violations: Vec<Site>,
    pub zero_violations: Vec<Site>,
    pub degree_phi: usize,
    pub degree_w: usize,
    pub tol: f64,
}

impl VerificationReport {
    pub fn residual_ok(&self) -> bool {
        self.residual_exact || self.residual_sampled <= self.tol
    }

    pub fn minimal(&self) -> bool {
        2 * self.degree_w == self.degree_phi
    }

    pub fn regions_ok(&self) -> bool {
        self.pole_violations.is_empty() && self.zero_violations.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.residual_ok() && self.minimal() && self.regions_ok()
    }

    /// Human-readable failing checks.
    pub fn failures(&self) -> Vec<String> {
        let mut f = Vec::new();
        if !self.residual_ok() {
            f.push(format!(
                "residual {:e} exceeds tolerance {:e}",
                self.residual_sampled, self.tol
            ));
        }
        if !self.minimal() {
            f.push(format!(
                "McMillan degrees {} and {} are not in ratio 2:1",
                self.degree_phi, self.degree_w
            ));
        }
        for s in &self.pole_violations {
            f.push(format!("pole at {} lies in the pole region", s.root));
        }
        for s in &self.zero_violations {
            f.push(format!("zero at {} lies in the zero region", s.root));
        }
        f
    }
}

/// Largest entry of `Phi(z) - W(z)^H W(z)` on the circle grid, relative to `max(1, |Phi|)`.
pub fn sampled_residual(phi: &RatMatrix, w: &RatMatrix, grid: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for k in 0..grid {
        let z = Complex64::from_polar(1.0, 2.0 * PI * (k as f64 + 0.5) / grid as f64);
        let pv = phi.eval_c64(z);
        let wv = w.eval_c64(z);
        if pv.iter().chain(wv.iter()).any(|x| !x.is_finite()) {
            continue;
        }
        let scale = pv.iter().map(|x| x.norm()).fold(1.0, f64::max);
        let d = &pv - wv.adjoint() * &wv;
        worst = worst.max(d.iter().map(|x| x.norm()).fold(0.0, f64::max) / scale);
    }
    worst
}

/// Poles and zeroes of `g`, counting infinity, with their largest multiplicities.
pub fn poles_and_zeros(g: &RatMatrix) -> (Vec<Site>, Vec<Site>) {
    let (p, z, _) = structure(g);
    (p, z)
}

/// Poles, zeroes and McMillan degree from one decomposition.
fn structure(g: &RatMatrix) -> (Vec<Site>, Vec<Site>, usize) {
    if g.is_zero() {
        return (Vec::new(), Vec::new(), 0);
    }
    let smm = smith_mcmillan(g);
    let mut poles = root_sites(&smm.psi[0]);
    let mut zeros = root_sites(smm.eps.last().unwrap());
    let inf = structural_indices(&smm, &RootDescriptor::Infinity);
    let pole_inf = inf.first().map_or(0, |&v| (-v).max(0) as usize);
    let zero_inf = inf.last().map_or(0, |&v| v.max(0) as usize);
    if pole_inf > 0 {
        poles.push(Site {
            root: RootSite::Infinity,
            multiplicity: pole_inf,
        });
    }
    if zero_inf > 0 {
        zeros.push(Site {
            root: RootSite::Infinity,
            multiplicity: zero_inf,
        });
    }
    let pole_sum: i64 = inf.iter().filter(|&&v| v < 0).map(|v| -v).sum();
    let degree = smm.psi.iter().map(|p| p.degree().unwrap()).sum::<usize>() + pole_sum as usize;
    (poles, zeros, degree)
}

/// Coefficients of `g(1/w)` around `w = 0`: the lowest power and `count`
/// consecutive coefficient matrices from it.
fn expansion_at_infinity(g: &RatMatrix, count: usize) -> (i64, Vec<DMatrix<f64>>) {
    let offset = |f: &RatFun| f.den().deg_i64() - f.num().deg_i64();
    let lo = g
        .entries()
        .iter()
        .filter(|f| !f.is_zero())
        .map(offset)
        .min()
        .unwrap_or(0);
    let mut blocks = vec![DMatrix::zeros(g.rows(), g.cols()); count];
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            let f = &g[(i, j)];
            if f.is_zero() {
                continue;
            }
            // g(1/w) = w^offset rev(num)(w) / rev(den)(w)
            let num: Vec<f64> = f.num().to_f64().into_iter().rev().collect();
            let den: Vec<f64> = f.den().to_f64().into_iter().rev().collect();
            let start = (offset(f) - lo) as usize;
            let mut series: Vec<f64> = Vec::new();
            for k in 0..count.saturating_sub(start) {
                let acc = (1..=k.min(den.len() - 1))
                    .fold(num.get(k).copied().unwrap_or(0.0), |a, m| a - den[m] * series[k - m]);
                series.push(acc / den[0]);
                blocks[start + k][(i, j)] = series[k];
            }
        }
    }
    (lo, blocks)
}

fn numeric_rank(m: &DMatrix<f64>, cut: f64) -> usize {
    m.clone().singular_values().iter().filter(|&&s| s > cut).count()
}

/// Structural indices at infinity from ranks of the block Toeplitz matrices of
/// the expansion, with singular values below `cut` treated as zero.
fn numeric_indices_at_infinity(g: &RatMatrix, cut: f64, span: usize) -> Vec<i64> {
    let (r, n) = g.shape();
    let (lo, blocks) = expansion_at_infinity(g, span);
    let mut indices = Vec::new();
    let mut prev = 0;
    for t in 0..span {
        let size = t + 1;
        let toeplitz = DMatrix::from_fn(size * r, size * n, |a, b| {
            let (bi, bj) = (a / r, b / n);
            if bi >= bj {
                blocks[bi - bj][(a % r, b % n)]
            } else {
                0.0
            }
        });
        let rank = numeric_rank(&toeplitz, cut);
        // rank increments count the indices not exceeding lo + t
        let below = rank - prev;
        prev = rank;
        while indices.len() < below.min(r) {
            indices.push(lo + t as i64);
        }
        if indices.len() == r {
            break;
        }
    }
    indices
}

/// Poles, zeroes and McMillan degree of `w = P D+ F` with `P` unimodular and
/// `F` of full row rank at every finite point: the finite structure is that
/// of `D+`, and infinity is resolved numerically since rounding leaves
/// negligible terms there.
fn numeric_structure(
    w: &RatMatrix,
    d_plus: &[RatFun],
    tol: f64,
    grid: usize,
    degree_phi: usize,
) -> (Vec<Site>, Vec<Site>, usize) {
    let lcm = |ps: Vec<&Poly>| ps.into_iter().fold(Poly::one(), |acc, p| acc.lcm(p));
    let mut poles = root_sites(&lcm(d_plus.iter().map(RatFun::den).collect()));
    let mut zeros = root_sites(&lcm(d_plus.iter().map(RatFun::num).collect()));
    let finite: usize = d_plus.iter().map(|d| d.den().degree().unwrap_or(0)).sum();
    let scale = (0..grid)
        .map(|k| {
            let z = Complex64::from_polar(1.0, 2.0 * PI * (k as f64 + 0.5) / grid as f64);
            w.eval_c64(z)
                .iter()
                .map(|x| x.norm())
                .filter(|x| x.is_finite())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    let lo = w
        .entries()
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| f.den().deg_i64() - f.num().deg_i64())
        .min()
        .unwrap_or(0);
    let span = ((-lo).max(0) as usize) + degree_phi + 2;
    let inf = numeric_indices_at_infinity(w, tol.sqrt() * scale.max(f64::MIN_POSITIVE), span);
    let pole_inf = inf.first().map_or(0, |&v| (-v).max(0) as usize);
    let zero_inf = inf.last().map_or(0, |&v| v.max(0) as usize);
    if pole_inf > 0 {
        poles.push(Site {
            root: RootSite::Infinity,
            multiplicity: pole_inf,
        });
    }
    if zero_inf > 0 {
        zeros.push(Site {
            root: RootSite::Infinity,
            multiplicity: zero_inf,
        });
    }
    let pole_sum: i64 = inf.iter().filter(|&&v| v < 0).map(|v| -v).sum();
    (poles, zeros, finite + pole_sum as usize)
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn verify_with_degree(
    phi: &RatMatrix,
    w: &RatMatrix,
    regions: &RegionPair,
    tol: f64,
    grid: usize,
    degree_phi: usize,
    residual_exact: bool,
    d_plus: Option<&[RatFun]>,
) -> VerificationReport {
    let residual_sampled = if residual_exact {
        0.0
    } else {
        sampled_residual(phi, w, grid)
    };
    let (poles, zeros, degree_w) = match d_plus {
        Some(d) => numeric_structure(w, d, tol, grid, degree_phi),
        None => structure(w),
    };
    let pole_violations = poles
        .iter()
        .filter(|s| lies_in(&regions.poles, &s.root, tol))
        .cloned()
        .collect();
    let zero_violations = zeros
        .iter()
        .filter(|s| lies_in(&regions.zeros, &s.root, tol))
        .cloned()
        .collect();
    VerificationReport {
        residual_exact,
        residual_sampled,
        poles,
        zeros,
        pole_violations,
        zero_violations,
        degree_phi,
        degree_w,
        tol,
    }
}

/// Checks `Phi = W* W`, pole/zero placement against `regions`, and `2 deg W = deg Phi`.
pub fn verify(phi: &RatMatrix, w: &RatMatrix, regions: &RegionPair, tol: f64, grid: usize) -> VerificationReport {
    if phi.shape() != (w.cols(), w.cols()) {
        return VerificationReport {
            residual_exact: false,
            residual_sampled: f64::INFINITY,
            poles: Vec::new(),
            zeros: Vec::new(),
            pole_violations: Vec::new(),
            zero_violations: Vec::new(),
            degree_phi: mcmillan_degree(phi),
            degree_w: 0,
            tol,
        };
    }
    let exact = (&w.star() * w) == *phi;
    verify_with_degree(phi, w, regions, tol, grid, mcmillan_degree(phi), exact, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::scalar::rat::{int, rat};

    #[test]
    fn negligible_terms_leave_no_pole_at_infinity() {
        // 1/(z - 1/2) plus a z^2 term far below any sensible tolerance
        let tiny = Rat::new(1.into(), num_bigint::BigInt::from(2).pow(300));
        let base = RatFun::new(Poly::one(), Poly::linear(&rat(1, 2)));
        let noisy = &base + &RatFun::from_poly(Poly::monomial(tiny, 2));
        let g = Matrix::from_vec(1, 1, vec![noisy]);
        assert_eq!(structure(&g).2, 3);
        assert_eq!(numeric_indices_at_infinity(&g, 1e-9, 6), vec![1]);
        let (poles, zeros, degree) = numeric_structure(&g, &[base], 1e-9, 64, 2);
        assert_eq!(degree, 1);
        assert_eq!(
            poles,
            vec![Site {
                root: RootSite::Exact(rat(1, 2)),
                multiplicity: 1
            }]
        );
        assert_eq!(
            zeros,
            vec![Site {
                root: RootSite::Infinity,
                multiplicity: 1
            }]
        );
    }

    #[test]
    fn indices_at_infinity_of_a_polynomial_pair() {
        // diag(z^2, 1/z): pole of order 2 and zero of order 1 at infinity
        let g = Matrix::from_vec(
            2,
            2,
            vec![
                RatFun::from_poly(Poly::monomial(int(1), 2)),
                RatFun::zero(),
                RatFun::zero(),
                RatFun::monomial(int(1), -1),
            ],
        );
        assert_eq!(numeric_indices_at_infinity(&g, 1e-9, 6), vec![-2, 1]);
    }
}
