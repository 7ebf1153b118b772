//! Construction of the para-Hermitian L-unimodular middle factor `Psi` and
//! its degree reduction to a constant matrix, yielding `Psi = P* P`.

use num_traits::{One, Signed, Zero};

use crate::canonical::SmithMcMillan;
use crate::error::{Error, Result};
use crate::matrix::{hc_matrix, is_para_hermitian, ldl, ConstMatrix, DegreeProfile, LPolyMatrix, Matrix, PolyMatrix};
use crate::regions::SplitDecomposition;
use crate::scalar::{rat, LPoly, Poly, Rat, RatFun};

/// Which free column of the reduced echelon form seeds the kernel vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum KernelChoice {
    #[default]
    FirstFree,
    LastFree,
}

/// Which index of the highest-degree active set becomes the pivot.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    #[default]
    Largest,
    Smallest,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ReductionOptions {
    pub kernel: KernelChoice,
    pub pivot: PivotRule,
    /// Rounded arithmetic for inputs rebuilt from numeric roots.
    pub numeric: bool,
}

/// One degree-reduction step.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionStep {
    /// Primitive integer kernel vector of the highest-column-degree matrix.
    pub kernel_vector: Vec<Rat>,
    pub pivot: usize,
    pub omega: PolyMatrix,
    pub omega_inv: PolyMatrix,
    /// Column max-degrees before the step.
    pub degrees_before: Vec<i64>,
    pub degrees_after: Vec<i64>,
}

#[derive(Clone, Debug)]
pub enum StepOutcome {
    Constant(ConstMatrix),
    Reduced { step: ReductionStep, next: LPolyMatrix },
}

#[derive(Clone, Debug)]
pub struct ReductionTrace {
    /// `Psi_1, ..., Psi_final`.
    pub psi_sequence: Vec<LPolyMatrix>,
    pub steps: Vec<ReductionStep>,
    pub psi_final: ConstMatrix,
    pub l: ConstMatrix,
    pub dc: Vec<Rat>,
    /// `sqrt(Dc) L^T`; a rational approximation when some `Dc` entry is not a square.
    pub c: ConstMatrix,
    pub c_exact: bool,
    /// `det Psi_h`, the same for every `h` on the exact path.
    pub det: Rat,
    /// `sum_i K_i(Psi_1)`, the bound on the number of steps.
    pub degree_bound: i64,
}

impl ReductionTrace {
    /// Retries the exact square root of the terminal matrix in the basis
    /// `t`: with `t^-T Dc t^-1 = L' D' L'^T`, the root is `G' L'^T t L^T`.
    /// A basis in which the factor rows are short keeps `D'` small enough
    /// to factor.
    pub fn refine_sqrt(&mut self, t: &ConstMatrix) -> bool {
        let Some(ti) = t.inverse() else {
            return false;
        };
        let q = &(&ti.transpose() * &Matrix::diagonal(&self.dc)) * &ti;
        let Ok((l2, d2)) = ldl(&q) else {
            return false;
        };
        let Some(g) = rational_gram(&d2) else {
            return false;
        };
        self.c = &(&(&g * &l2.transpose()) * t) * &self.l.transpose();
        self.c_exact = true;
        true
    }

    /// `Omega_{last} ... Omega_1`.
    pub fn omega_product(&self) -> PolyMatrix {
        let r = self.psi_final.rows();
        self.steps.iter().fold(Matrix::identity(r), |acc, s| &s.omega * &acc)
    }

    /// `P = C Omega_{last} ... Omega_1`.
    pub fn assemble_p(&self) -> PolyMatrix {
        &self.c.to_poly() * &self.omega_product()
    }

    /// `Q = L^T Omega_{last} ... Omega_1`, with `Q* diag(Dc) Q = Psi_1`.
    pub fn certificate_q(&self) -> PolyMatrix {
        &self.l.transpose().to_poly() * &self.omega_product()
    }

    pub fn iterations(&self) -> usize {
        self.steps.len()
    }
}

/// Decimal digits kept by rational square-root approximations.
pub const SQRT_DIGITS: u32 = 40;

/// `Psi = Sigma* D+ Xi D+^{-1}` with `D+ = Theta Lambda` and `Xi = C* F^{-R}`.
pub fn build_psi(smm: &SmithMcMillan, split: &SplitDecomposition, numeric: bool) -> Result<LPolyMatrix> {
    let r = smm.rank;
    let xi = &smm.c.to_ratfun().star() * &smm.f_right_inv.to_ratfun();
    let dp = split.d_plus();
    let mut entries = Vec::with_capacity(r * r);
    for i in 0..r {
        let left = &RatFun::from_lpoly(&split.sigma[i].star()) * &dp[i];
        for j in 0..r {
            let x = &(&left * &xi[(i, j)]) / &dp[j];
            let e = if numeric {
                approximate_lpoly(&x).ok_or_else(|| {
                    Error::DivisionNotExact(format!("entry ({i}, {j}) is not close to a Laurent polynomial"))
                })?
            } else {
                x.to_lpoly()
                    .ok_or_else(|| Error::DivisionNotExact(format!("entry ({i}, {j}) is {x}")))?
            };
            entries.push(e);
        }
    }
    let psi = Matrix::from_vec(r, r, entries);
    if !numeric {
        return Ok(psi);
    }
    let psi = symmetrize(&psi);
    let peak = psi.max_abs();
    Ok(clean(&psi, peak))
}

/// Bits below the peak magnitude at which rounded coefficients count as zero.
const NEGLIGIBLE_BITS: i32 = (rat::PRECISION_BITS / 2) as i32;
/// Bits below the peak magnitude that a discarded term may reach before the
/// rounded arithmetic is judged to have failed.
const CHECK_BITS: i32 = (rat::PRECISION_BITS / 4) as i32;

/// Laurent quotient of `num/den` when the remainder is negligible.
fn approximate_lpoly(x: &RatFun) -> Option<LPoly> {
    if let Some(l) = x.to_lpoly() {
        return Some(l);
    }
    let den = x.den();
    let t = den.trailing_power().unwrap();
    let core = Poly::new(den.coeffs()[t..].to_vec());
    let (q, rem) = x.num().div_rem(&core);
    let scale = x.num().to_f64().iter().fold(0.0f64, |a, c| a.max(c.abs()));
    let rem_size = rem.to_f64().iter().fold(0.0f64, |a, c| a.max(c.abs()));
    (rem_size <= 2f64.powi(-CHECK_BITS) * scale.max(1.0)).then(|| LPoly::new(-(t as i64), q.into_coeffs()))
}

fn symmetrize(m: &LPolyMatrix) -> LPolyMatrix {
    let half = rat::rat(1, 2);
    (m + &m.star()).map(|p| p.scale(&half))
}

/// Rounds coefficients to the working precision below `peak` and drops
/// those negligible against it.
fn clean(m: &LPolyMatrix, peak: f64) -> LPolyMatrix {
    let peak = peak.max(f64::MIN_POSITIVE);
    let cut = peak * 2f64.powi(-NEGLIGIBLE_BITS);
    let quantum = peak.log2().floor() as i64 - rat::PRECISION_BITS;
    m.map(|p| {
        p.map_coeffs(|c| {
            if rat::to_f64(c).abs() < cut {
                Rat::zero()
            } else {
                rat::round_to_power_of_two(c, quantum)
            }
        })
    })
}

/// Entries restricted to the powers `[-k_i, k_j]`, with the largest dropped coefficient.
fn band(m: &LPolyMatrix, k: &[i64]) -> (LPolyMatrix, f64) {
    let mut dropped = 0.0f64;
    let out = Matrix::from_fn(m.rows(), m.cols(), |i, j| {
        let p = &m[(i, j)];
        let terms: Vec<(i64, Rat)> = (p.minpow()..p.minpow() + p.coeffs().len() as i64)
            .zip(p.coeffs())
            .filter(|(e, c)| {
                let keep = (-k[i]..=k[j]).contains(e);
                if !keep {
                    dropped = dropped.max(rat::to_f64(c).abs());
                }
                keep
            })
            .map(|(e, c)| (e, c.clone()))
            .collect();
        LPoly::from_terms(&terms)
    });
    (out, dropped)
}

fn column_degrees(psi: &LPolyMatrix) -> Result<Vec<i64>> {
    let prof = DegreeProfile::of(psi);
    prof.column_max
        .into_iter()
        .enumerate()
        .map(|(j, k)| k.ok_or_else(|| Error::DegreeNotReduced(format!("column {j} vanished"))))
        .collect()
}

/// Kernel vector of `hc` by elimination with full pivoting, where entries
/// negligible against the largest one end the elimination. A non-constant
/// L-unimodular matrix always has a singular highest-column-degree matrix, so
/// the rounded `hc` is singular up to that cut.
fn numeric_kernel(hc: &ConstMatrix, choice: KernelChoice) -> Option<Vec<Rat>> {
    let (rows, n) = hc.shape();
    let size = |x: &Rat| rat::to_f64(x).abs();
    let largest = hc.entries().iter().map(size).fold(0.0, f64::max);
    let cut = largest * 2f64.powi(-NEGLIGIBLE_BITS);
    let mut a = hc.clone();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    while rank < rows.min(n) {
        let (pi, pj, best) = (rank..rows)
            .flat_map(|i| (rank..n).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, size(&a[(i, j)])))
            .fold((rank, rank, -1.0), |b, c| if c.2 > b.2 { c } else { b });
        if best <= cut {
            break;
        }
        a.swap_rows(rank, pi);
        for i in 0..rows {
            let t = a[(i, rank)].clone();
            a[(i, rank)] = a[(i, pj)].clone();
            a[(i, pj)] = t;
        }
        cols.swap(rank, pj);
        for i in rank + 1..rows {
            let f = &a[(i, rank)] / &a[(rank, rank)];
            for j in rank..n {
                let d = &f * &a[(rank, j)];
                a[(i, j)] -= d;
            }
        }
        rank += 1;
    }
    if rank == n {
        return None;
    }
    let free = match choice {
        KernelChoice::FirstFree => (rank..n).min_by_key(|&k| cols[k]),
        KernelChoice::LastFree => (rank..n).max_by_key(|&k| cols[k]),
    }?;
    let mut x = vec![Rat::zero(); n];
    x[free] = Rat::one();
    for k in (0..rank).rev() {
        let s = (k + 1..n).fold(Rat::zero(), |acc, j| acc + &a[(k, j)] * &x[j]);
        x[k] = -s / &a[(k, k)];
    }
    let big = x.iter().map(size).fold(0.0, f64::max);
    let mut v = vec![Rat::zero(); n];
    for (k, xk) in x.into_iter().enumerate() {
        if size(&xk) >= big * 2f64.powi(-NEGLIGIBLE_BITS) {
            v[cols[k]] = xk;
        }
    }
    Some(v)
}

/// One step of the loop: either `Psi` is constant, or a kernel vector of its
/// highest-column-degree matrix gives a unimodular `Omega` lowering the pivot column's degree.
pub fn reduce_step(psi: &LPolyMatrix, opts: &ReductionOptions) -> Result<StepOutcome> {
    step_with_peak(psi, opts, psi.max_abs())
}

/// One step; on the numeric path, coefficients are negligible against
/// `peak`, the largest magnitude met so far, since rounding errors carry over.
fn step_with_peak(psi: &LPolyMatrix, opts: &ReductionOptions, peak: f64) -> Result<StepOutcome> {
    let r = psi.rows();
    if let Some(c) = psi.to_const() {
        return Ok(StepOutcome::Constant(c));
    }
    let k = column_degrees(psi)?;
    let hc = hc_matrix(psi)?;
    let v = if opts.numeric {
        numeric_kernel(&hc, opts.kernel)
    } else {
        let rr = hc.rref();
        let free = rr.free_columns();
        match opts.kernel {
            KernelChoice::FirstFree => free.first().map(|&f| rr.kernel_vector(f)),
            KernelChoice::LastFree => free.last().map(|&f| rr.kernel_vector(f)),
        }
    };
    let Some(v) = v else {
        return Err(Error::DegreeNotReduced(
            "highest-column-degree matrix is nonsingular but the matrix is not constant".into(),
        ));
    };
    let v = rat::primitive_integer_vector(&v);
    let active: Vec<usize> = (0..r).filter(|&i| !v[i].is_zero()).collect();
    let top = active.iter().map(|&i| k[i]).max().unwrap();
    let highest: Vec<usize> = active.iter().copied().filter(|&i| k[i] == top).collect();
    let p = match opts.pivot {
        PivotRule::Largest => *highest.last().unwrap(),
        PivotRule::Smallest => highest[0],
    };
    let mut omega_inv: PolyMatrix = Matrix::identity(r);
    let mut omega: PolyMatrix = Matrix::identity(r);
    for &i in &active {
        if i == p {
            continue;
        }
        let shift = k[p] - k[i];
        if shift < 0 {
            return Err(Error::Internal("active index exceeds the pivot degree".into()));
        }
        let e = Poly::monomial(&v[i] / &v[p], shift as usize);
        omega[(i, p)] = -&e;
        omega_inv[(i, p)] = e;
    }
    let oi = omega_inv.to_lpoly();
    let mut next = &(&oi.star() * psi) * &oi;
    if opts.numeric {
        // the step lowers the pivot column and raises no other, so entry
        // (i, j) lies in the powers [-k_i, k_j] of the new degrees
        let mut bound = k.clone();
        bound[p] -= 1;
        let peak = peak.max(next.max_abs());
        let (banded, dropped) = band(&symmetrize(&next), &bound);
        if dropped > 2f64.powi(-CHECK_BITS) * peak {
            return Err(Error::DegreeNotReduced(format!(
                "pivot {p} leaves a coefficient of size {dropped:e} above degree bounds {bound:?}"
            )));
        }
        next = clean(&banded, peak);
    }
    let k_next = column_degrees(&next)?;
    if k_next[p] >= k[p] || (0..r).any(|i| k_next[i] > k[i]) {
        return Err(Error::DegreeNotReduced(format!(
            "column degrees {k:?} became {k_next:?} at pivot {p}"
        )));
    }
    let step = ReductionStep {
        kernel_vector: v,
        pivot: p,
        omega,
        omega_inv,
        degrees_before: k,
        degrees_after: k_next,
    };
    Ok(StepOutcome::Reduced { step, next })
}

/// `L Dc L^T` of the terminal constant matrix and `C` with `C^T C = Psi_final`:
/// `sqrt(Dc) L^T` when every `Dc` entry is a square, else `G L^T` with a rational
/// `G^T G = diag(Dc)` when one is found, else a high-precision approximation.
pub fn ldl_and_sqrt(psi_final: &ConstMatrix) -> Result<(ConstMatrix, Vec<Rat>, ConstMatrix, bool)> {
    let (l, dc) = ldl(psi_final)?;
    let lt = l.transpose();
    if let Some(g) = rational_gram(&dc) {
        return Ok((l, dc, &g * &lt, true));
    }
    let roots: Vec<Rat> = dc.iter().map(|d| rat::sqrt_approx(d, SQRT_DIGITS)).collect();
    let c = Matrix::from_fn(lt.rows(), lt.cols(), |i, j| &roots[i] * &lt[(i, j)]);
    Ok((l, dc, c, false))
}

/// Rational `G` with `G^T G = diag(d)`. Squares are taken directly; the other
/// entries are paired as `d_i, d_j = d_i t^2` with `d_i = a^2 + b^2`, giving the
/// block `[[a, -b t], [b, a t]]`.
fn rational_gram(d: &[Rat]) -> Option<ConstMatrix> {
    let n = d.len();
    let mut g = Matrix::zeros(n, n);
    let mut open: Vec<usize> = Vec::new();
    for (i, x) in d.iter().enumerate() {
        match rat::exact_sqrt(x) {
            Some(s) => g[(i, i)] = s,
            None => open.push(i),
        }
    }
    while let Some(i) = open.pop() {
        let k = open.iter().position(|&j| rat::exact_sqrt(&(&d[i] * &d[j])).is_some())?;
        let j = open.remove(k);
        // the pair shares a square class, so represent the smaller one
        let size = |x: &Rat| x.numer().bits() + x.denom().bits();
        let (i, j) = if size(&d[j]) < size(&d[i]) { (j, i) } else { (i, j) };
        let t = rat::exact_sqrt(&(&d[j] / &d[i]))?;
        let (a, b) = rat::sum_of_two_squares(&d[i])?;
        g[(i, i)] = a.clone();
        g[(j, i)] = b.clone();
        g[(i, j)] = -(&b * &t);
        g[(j, j)] = a * t;
    }
    Some(g)
}

fn det_constant(psi: &LPolyMatrix) -> Result<Rat> {
    let d = psi.det();
    match d.as_monomial() {
        Some((c, 0)) => Ok(c),
        _ => Err(Error::NotASpectrum(format!(
            "middle factor has determinant {d}, not a nonzero constant"
        ))),
    }
}

/// Runs the loop from `psi` to a constant matrix, checking the invariants at every step.
pub fn reduce(psi: &LPolyMatrix, opts: &ReductionOptions) -> Result<ReductionTrace> {
    if !is_para_hermitian(psi) {
        return Err(Error::Internal("middle factor is not para-Hermitian".into()));
    }
    let exact = !opts.numeric;
    let det = if exact { det_constant(psi)? } else { Rat::zero() };
    let bound = column_degrees(psi)?.iter().sum::<i64>();
    let mut seq = vec![psi.clone()];
    let mut steps = Vec::new();
    let mut peak = psi.max_abs();
    let psi_final = loop {
        let cur = seq.last().unwrap();
        peak = peak.max(cur.max_abs());
        match step_with_peak(cur, opts, peak)? {
            StepOutcome::Constant(c) => break c,
            StepOutcome::Reduced { step, next } => {
                if exact {
                    if !is_para_hermitian(&next) {
                        return Err(Error::Internal("reduction broke para-Hermitian symmetry".into()));
                    }
                    if det_constant(&next)? != det {
                        return Err(Error::DegreeNotReduced("determinant changed".into()));
                    }
                }
                steps.push(step);
                seq.push(next);
                if steps.len() as i64 > bound {
                    return Err(Error::DegreeNotReduced(format!("more than {bound} steps")));
                }
            }
        }
    };
    if psi_final.rows() > 0 && exact && !psi_final.is_symmetric() {
        return Err(Error::Internal("terminal matrix is not symmetric".into()));
    }
    let (l, dc, c, c_exact) = ldl_and_sqrt(&psi_final)?;
    let det = if exact {
        det
    } else {
        dc.iter().fold(Rat::one(), |a, d| a * d)
    };
    Ok(ReductionTrace {
        psi_sequence: seq,
        steps,
        psi_final,
        l,
        dc,
        c,
        c_exact,
        det,
        degree_bound: bound,
    })
}

/// Largest absolute entry of `C^T C - Psi_final`.
pub fn sqrt_residual(trace: &ReductionTrace) -> f64 {
    let d = &(&trace.c.transpose() * &trace.c) - &trace.psi_final;
    d.entries().iter().map(|x| rat::to_f64(&x.abs())).fold(0.0, f64::max)
}
