//! End-to-end spectral factorization and its corollaries.
//!
//! `factorize` chains the canonical decomposition, the region split, the
//! degree reduction and the final assembly `W = P D+ F`, then re-checks the
//! result from scratch.

mod verify;

pub use verify::{poles_and_zeros, root_sites, sampled_residual, verify, RootSite, Site, VerificationReport};

use crate::canonical::{mcmillan_degree_of, smith_mcmillan, SmithMcMillan};
use crate::error::{Error, Result};
use crate::matrix::{
    is_para_unitary, is_spectrum, short_basis, ConstMatrix, LPolyMatrix, Matrix, PolyMatrix, RatMatrix, SpectrumReport,
};
use crate::reduction::{build_psi, reduce, ReductionOptions, ReductionTrace};
use crate::regions::{split_circle, split_diagonal, RegionPair, SplitDecomposition};
use crate::scalar::{Poly, Rat, RatFun};

#[derive(Clone, Debug)]
pub struct FactorizeOptions {
    /// Tolerance for sampled checks and near-circle root classification.
    pub tol: f64,
    /// Number of unit-circle sample points.
    pub grid: usize,
    pub reduction: ReductionOptions,
    /// Witnesses to use instead of computing the Smith–McMillan form.
    pub decomposition: Option<SmithMcMillan>,
}

impl Default for FactorizeOptions {
    fn default() -> Self {
        FactorizeOptions {
            tol: 1e-9,
            grid: 512,
            reduction: ReductionOptions::default(),
            decomposition: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpectralFactorization {
    pub w: RatMatrix,
    /// `C Omega_{last} ... Omega_1`.
    pub p: PolyMatrix,
    /// Diagonal of `D+ = Theta Lambda`.
    pub d_plus: Vec<RatFun>,
    pub regions: RegionPair,
    pub decomposition: SmithMcMillan,
    pub split: SplitDecomposition,
    pub trace: ReductionTrace,
    /// `Phi = W* W` holds identically.
    pub exact: bool,
    /// Some on-circle or region roots were located numerically.
    pub approximate: bool,
    pub spectrum: SpectrumReport,
    pub report: VerificationReport,
}

impl SpectralFactorization {
    /// `(Q D+ F, Dc)` with `(Q D+ F)* diag(Dc) (Q D+ F) = Phi`.
    pub fn certificate(&self) -> (RatMatrix, Vec<Rat>) {
        let q = self.trace.certificate_q();
        let b = &(&q.to_ratfun() * &Matrix::diagonal(&self.d_plus)) * &self.decomposition.f.to_ratfun();
        (b, self.trace.dc.clone())
    }

    /// Checks the certificate identity exactly.
    pub fn certificate_holds(&self) -> bool {
        let (b, dc) = self.certificate();
        let dc = Matrix::diagonal(&dc.into_iter().map(RatFun::constant).collect::<Vec<_>>());
        &(&b.star() * &dc) * &b == *self.decomposition.source()
    }

    /// `W^{-R} = F^{-R} D+^{-1} P^{-1}`.
    pub fn right_inverse(&self) -> RatMatrix {
        let inv: Vec<RatFun> = self.d_plus.iter().map(|d| d.recip().unwrap()).collect();
        let p_inv = self.p.to_ratfun().inverse().expect("P is unimodular");
        &(&self.decomposition.f_right_inv.to_ratfun() * &Matrix::diagonal(&inv)) * &p_inv
    }
}

/// Rows of `y` over a common denominator, flattened to coefficient vectors.
fn coefficient_rows(y: &RatMatrix) -> ConstMatrix {
    let den = y.entries().iter().fold(Poly::one(), |acc, f| acc.lcm(f.den()));
    let nums = y.map(|f| f.num() * &den.exact_div(f.den()).expect("lcm"));
    let width = nums.entries().iter().filter_map(Poly::degree).max().unwrap_or(0) + 1;
    let cols = y.cols() * width;
    ConstMatrix::from_fn(y.rows(), cols, |i, c| nums[(i, c / width)].coeff(c % width))
}

/// Factors `phi = W* W` with the poles of `W` outside `regions.poles` and its
/// zeroes outside `regions.zeros`.
pub fn factorize(phi: &RatMatrix, regions: &RegionPair, opts: &FactorizeOptions) -> Result<SpectralFactorization> {
    if !phi.is_square() {
        return Err(Error::Dimension(format!(
            "spectrum must be square, got {}x{}",
            phi.rows(),
            phi.cols()
        )));
    }
    if phi.is_zero() {
        return Err(Error::RankZero);
    }
    let spectrum = is_spectrum(phi, opts.grid, opts.tol);
    if !spectrum.para_hermitian {
        return Err(Error::NotASpectrum("not para-Hermitian".into()));
    }
    if !spectrum.passed() {
        return Err(Error::NotASpectrum(format!(
            "negative eigenvalue {:e} on the unit circle ({})",
            spectrum.min_eigenvalue,
            SpectrumReport::CERTIFICATION
        )));
    }
    let smm = match &opts.decomposition {
        Some(s) if s.source() == phi => s.clone(),
        Some(_) => {
            return Err(Error::InvalidDecomposition(
                "supplied decomposition is for another matrix".into(),
            ))
        }
        None => smith_mcmillan(phi),
    };
    let degree_phi = mcmillan_degree_of(&smm);
    if !degree_phi.is_multiple_of(2) {
        return Err(Error::NotASpectrum(format!("odd McMillan degree {degree_phi}")));
    }
    let split = split_diagonal(&smm.d, regions, opts.tol)?;
    let mut ropts = opts.reduction;
    ropts.numeric |= split.approximate;
    let psi = build_psi(&smm, &split, ropts.numeric)?;
    let mut trace = reduce(&psi, &ropts)?;
    let d_plus = split.d_plus();
    if !trace.c_exact && !split.approximate {
        // rows of L^T Omega D+ F are the factor up to C; a reduced basis of
        // their coefficient lattice undoes the growth from the witnesses
        let y = &(&(&trace.l.transpose().to_poly() * &trace.omega_product()).to_ratfun() * &Matrix::diagonal(&d_plus))
            * &smm.f.to_ratfun();
        if let Some(t) = short_basis(&coefficient_rows(&y)) {
            trace.refine_sqrt(&t);
        }
    }
    let p = trace.assemble_p();
    let w = &(&p.to_ratfun() * &Matrix::diagonal(&d_plus)) * &smm.f.to_ratfun();
    let approximate = split.approximate;
    // roots rebuilt from floating point rule out an identity
    let exact = !approximate && &w.star() * &w == *phi;
    let structure_from = approximate.then_some(d_plus.as_slice());
    let report = verify::verify_with_degree(phi, &w, regions, opts.tol, opts.grid, degree_phi, exact, structure_from);
    let out = SpectralFactorization {
        w,
        p,
        d_plus,
        regions: regions.clone(),
        decomposition: smm,
        split,
        trace,
        exact,
        approximate,
        spectrum,
        report,
    };
    if !exact {
        if !approximate && !out.certificate_holds() {
            return Err(Error::Internal("certificate identity fails".into()));
        }
        if out.report.residual_sampled > opts.tol {
            return Err(Error::NumericFallbackExceededTolerance {
                residual: out.report.residual_sampled,
                tol: opts.tol,
            });
        }
    }
    if !approximate && !out.report.passed() {
        return Err(Error::Internal(out.report.failures().join("; ")));
    }
    Ok(out)
}

/// Outer-type factorization: poles and zeroes of `W` kept out of `|z| > 1`,
/// extended to the circle when `phi` has no poles (and no rank drop) there.
pub fn factorize_youla(phi: &RatMatrix, opts: &FactorizeOptions) -> Result<SpectralFactorization> {
    if !phi.is_square() || phi.is_zero() {
        return factorize(phi, &RegionPair::outer(), opts);
    }
    let smm = match &opts.decomposition {
        Some(s) => s.clone(),
        None => smith_mcmillan(phi),
    };
    let clear = |ps: &[Poly]| -> Result<bool> {
        for p in ps {
            if !split_circle(&strip_z(p), opts.tol)?.on.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let analytic = clear(&smm.psi)?;
    let constant_rank = analytic && clear(&smm.eps)?;
    let mut regions = RegionPair::outer();
    regions.poles.closed = analytic;
    regions.zeros.closed = constant_rank;
    let opts = FactorizeOptions {
        decomposition: Some(smm),
        ..opts.clone()
    };
    factorize(phi, &regions, &opts)
}

fn strip_z(p: &Poly) -> Poly {
    let t = p.trailing_power().unwrap_or(0);
    Poly::new(p.coeffs()[t..].to_vec())
}

/// `T = W1 W2^{-R}` when it is a constant orthogonal matrix with `W1 = T W2`;
/// exact when possible, else within `tol`.
pub fn orthogonal_relator(w1: &RatMatrix, w2: &RatMatrix, tol: f64) -> Option<ConstMatrix> {
    if w1.shape() != w2.shape() || w2.is_zero() {
        return None;
    }
    let smm = smith_mcmillan(w2);
    if smm.rank != w2.rows() {
        return None;
    }
    let d_inv: Vec<RatFun> = smm.d.iter().map(|d| d.recip().unwrap()).collect();
    let right_inv = &(&smm.f_right_inv.to_ratfun() * &Matrix::diagonal(&d_inv)) * &smm.c_left_inv.to_ratfun();
    let t = (w1 * &right_inv).to_const()?;
    let gram = &t.transpose() * &t;
    let rebuilt = &t.to_ratfun() * w2;
    if gram.is_identity() && rebuilt == *w1 {
        return Some(t);
    }
    let off_identity = (&gram - &Matrix::identity(t.rows())).max_abs_f64();
    let residual = sampled_difference(&rebuilt, w1, 64);
    (off_identity <= tol && residual <= tol).then_some(t)
}

fn sampled_difference(a: &RatMatrix, b: &RatMatrix, grid: usize) -> f64 {
    use num_complex::Complex64;
    let mut worst: f64 = 0.0;
    for k in 0..grid {
        let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / grid as f64);
        let d = a.eval_c64(z) - b.eval_c64(z);
        worst = worst.max(d.iter().map(|x| x.norm()).fold(0.0, f64::max));
    }
    worst
}

/// `L = V [I_r; 0] W` for a para-unitary `V`; `L* L = W* W`.
pub fn compose_parametrization(w: &RatMatrix, v: &RatMatrix) -> Result<RatMatrix> {
    let r = w.rows();
    if !v.is_square() || v.rows() < r {
        return Err(Error::Dimension(format!(
            "need a square V with at least {r} rows, got {}x{}",
            v.rows(),
            v.cols()
        )));
    }
    if !is_para_unitary(v) {
        return Err(Error::NotParaUnitary);
    }
    Ok(&v.block(0, v.rows(), 0, r) * w)
}

/// `W` with `phi = W W*`, from the factorization of `phi^T`.
pub fn dual_factorize(phi: &RatMatrix, regions: &RegionPair, opts: &FactorizeOptions) -> Result<RatMatrix> {
    let opts = FactorizeOptions {
        decomposition: None,
        ..opts.clone()
    };
    Ok(factorize(&phi.transpose(), regions, &opts)?.w.transpose())
}

/// For a Laurent-polynomial `phi`: `W` is polynomial in `1/z` when infinity is
/// in the pole region, and polynomial in `z` when zero is.
pub fn lpoly_specialization_check(phi: &LPolyMatrix, result: &SpectralFactorization) -> bool {
    if phi.to_ratfun() != *result.decomposition.source() {
        return false;
    }
    let w = &result.w;
    let poles = &result.regions.poles;
    let in_inverse = || {
        w.entries()
            .iter()
            .all(|f| f.to_lpoly().is_some_and(|p| p.max_deg().is_none_or(|d| d <= 0)))
    };
    let in_z = || w.entries().iter().all(RatFun::is_polynomial);
    (!poles.contains_infinity() || in_inverse()) && (!poles.contains_zero() || in_z())
}
