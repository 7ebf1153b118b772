//! Smith and Smith–McMillan canonical forms with unimodular witnesses.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, PolyMatrix, RatMatrix};
use crate::scalar::{Poly, Rat, RatFun, RootPoint, Valuation};

/// `U * G * V = S`, with `S` diagonal (padded by zeros) and the witnesses'
/// inverses tracked alongside.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: PolyMatrix,
    pub u_inv: PolyMatrix,
    pub s: PolyMatrix,
    pub v: PolyMatrix,
    pub v_inv: PolyMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// Monic invariant factors `s_1 | s_2 | ... | s_r`.
    pub fn invariant_factors(&self) -> Vec<Poly> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

struct Elim {
    a: PolyMatrix,
    u: PolyMatrix,
    u_inv: PolyMatrix,
    v: PolyMatrix,
    v_inv: PolyMatrix,
}

impl Elim {
    /// row_i -= q * row_k
    fn row_sub(&mut self, i: usize, k: usize, q: &Poly) {
        for j in 0..self.a.cols() {
            let t = &self.a[(i, j)] - &(q * &self.a[(k, j)]);
            self.a[(i, j)] = t;
        }
        for j in 0..self.u.cols() {
            let t = &self.u[(i, j)] - &(q * &self.u[(k, j)]);
            self.u[(i, j)] = t;
        }
        for r in 0..self.u_inv.rows() {
            let t = &self.u_inv[(r, k)] + &(q * &self.u_inv[(r, i)]);
            self.u_inv[(r, k)] = t;
        }
    }

    /// col_j -= q * col_k
    fn col_sub(&mut self, j: usize, k: usize, q: &Poly) {
        for i in 0..self.a.rows() {
            let t = &self.a[(i, j)] - &(q * &self.a[(i, k)]);
            self.a[(i, j)] = t;
        }
        for i in 0..self.v.rows() {
            let t = &self.v[(i, j)] - &(q * &self.v[(i, k)]);
            self.v[(i, j)] = t;
        }
        for c in 0..self.v_inv.cols() {
            let t = &self.v_inv[(k, c)] + &(q * &self.v_inv[(j, c)]);
            self.v_inv[(k, c)] = t;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.a.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.a.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn scale_row(&mut self, k: usize, c: &Rat) {
        let inv = c.recip();
        for j in 0..self.a.cols() {
            self.a[(k, j)] = self.a[(k, j)].scale(c);
        }
        for j in 0..self.u.cols() {
            self.u[(k, j)] = self.u[(k, j)].scale(c);
        }
        for r in 0..self.u_inv.rows() {
            self.u_inv[(r, k)] = self.u_inv[(r, k)].scale(&inv);
        }
    }

    /// Nonzero entry of least degree in the trailing block; ties go to the lowest row, then column.
    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..self.a.rows() {
            for j in k..self.a.cols() {
                if let Some(d) = self.a[(i, j)].degree() {
                    if best.is_none_or(|b| d < b.0) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

pub fn smith_form(g: &PolyMatrix) -> SmithForm {
    let (m, n) = g.shape();
    let mut e = Elim {
        a: g.clone(),
        u: Matrix::identity(m),
        u_inv: Matrix::identity(m),
        v: Matrix::identity(n),
        v_inv: Matrix::identity(n),
    };
    let mut k = 0;
    'outer: while k < m.min(n) {
        loop {
            let Some((pi, pj)) = e.pivot(k) else {
                break 'outer;
            };
            e.swap_rows(k, pi);
            e.swap_cols(k, pj);
            let piv = e.a[(k, k)].clone();
            let mut clean = true;
            for i in k + 1..m {
                if e.a[(i, k)].is_zero() {
                    continue;
                }
                let (q, r) = e.a[(i, k)].div_rem(&piv);
                e.row_sub(i, k, &q);
                clean &= r.is_zero();
            }
            for j in k + 1..n {
                if e.a[(k, j)].is_zero() {
                    continue;
                }
                let (q, r) = e.a[(k, j)].div_rem(&piv);
                e.col_sub(j, k, &q);
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (k + 1..m)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !e.a[(i, j)].div_rem(&piv).1.is_zero());
            match offender {
                // row_k += row_i brings the offending entry into the pivot row
                Some((i, _)) => e.row_sub(k, i, &-Poly::one()),
                None => break,
            }
        }
        let lc = e.a[(k, k)].lc();
        e.scale_row(k, &lc.recip());
        k += 1;
    }
    SmithForm {
        u: e.u,
        u_inv: e.u_inv,
        s: e.a,
        v: e.v,
        v_inv: e.v_inv,
        rank: k,
    }
}

/// `G = C * diag(eps_i / psi_i) * F` with `C` (m x r) and `F` (r x n)
/// polynomial and admitting polynomial one-sided inverses.
#[derive(Clone, Debug)]
pub struct SmithMcMillan {
    pub c: PolyMatrix,
    pub d: Vec<RatFun>,
    pub f: PolyMatrix,
    pub eps: Vec<Poly>,
    pub psi: Vec<Poly>,
    pub rank: usize,
    /// `C^{-L} C = I_r`
    pub c_left_inv: PolyMatrix,
    /// `F F^{-R} = I_r`
    pub f_right_inv: PolyMatrix,
    source: RatMatrix,
}

impl SmithMcMillan {
    pub fn d_matrix(&self) -> RatMatrix {
        Matrix::diagonal(&self.d)
    }

    pub fn source(&self) -> &RatMatrix {
        &self.source
    }

    /// `C * D * F`.
    pub fn reassemble(&self) -> RatMatrix {
        &(&self.c.to_ratfun() * &self.d_matrix()) * &self.f.to_ratfun()
    }

    /// Adopts caller-supplied witnesses after checking `C D F = G` exactly,
    /// that `D` is canonic and that `C`, `F` have polynomial one-sided inverses.
    pub fn from_parts(g: &RatMatrix, c: PolyMatrix, d: Vec<RatFun>, f: PolyMatrix) -> Result<Self> {
        let r = d.len();
        if c.shape() != (g.rows(), r) || f.shape() != (r, g.cols()) {
            return Err(Error::InvalidDecomposition("witness shapes do not match".into()));
        }
        let eps: Vec<Poly> = d.iter().map(|x| x.num().clone()).collect();
        let psi: Vec<Poly> = d.iter().map(|x| x.den().clone()).collect();
        let canonic = eps.iter().all(|e| !e.is_zero() && e.is_monic())
            && (1..r).all(|i| eps[i - 1].divides(&eps[i]) && psi[i].divides(&psi[i - 1]));
        if !canonic {
            return Err(Error::InvalidDecomposition("diagonal is not canonic".into()));
        }
        let smm = SmithMcMillan {
            c_left_inv: unimodular_left_inverse(&c)?,
            f_right_inv: unimodular_right_inverse(&f)?,
            c,
            d,
            f,
            eps,
            psi,
            rank: r,
            source: g.clone(),
        };
        if smm.reassemble() != *g {
            return Err(Error::InvalidDecomposition("C * D * F differs from the input".into()));
        }
        Ok(smm)
    }
}

pub fn smith_mcmillan(g: &RatMatrix) -> SmithMcMillan {
    let den = g.common_denominator();
    let dr = RatFun::from_poly(den.clone());
    let num = (g.scale(&dr)).to_poly().expect("cleared denominators");
    let sf = smith_form(&num);
    let r = sf.rank;
    let d: Vec<RatFun> = (0..r).map(|i| RatFun::new(sf.s[(i, i)].clone(), den.clone())).collect();
    SmithMcMillan {
        c: sf.u_inv.block(0, g.rows(), 0, r),
        f: sf.v_inv.block(0, r, 0, g.cols()),
        c_left_inv: sf.u.block(0, r, 0, g.rows()),
        f_right_inv: sf.v.block(0, g.cols(), 0, r),
        eps: d.iter().map(|x| x.num().clone()).collect(),
        psi: d.iter().map(|x| x.den().clone()).collect(),
        d,
        rank: r,
        source: g.clone(),
    }
}

/// Where structural indices are taken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootDescriptor {
    Point(Rat),
    /// Roots of a monic irreducible real factor.
    Factor(Poly),
    Infinity,
}

/// Nondecreasing structural indices of the decomposed matrix at `at`.
pub fn structural_indices(smm: &SmithMcMillan, at: &RootDescriptor) -> Vec<i64> {
    let vals: Vec<Valuation> = match at {
        RootDescriptor::Point(a) => smm
            .d
            .iter()
            .map(|x| x.valuation(&RootPoint::Finite(a.clone())))
            .collect(),
        RootDescriptor::Factor(f) => smm.d.iter().map(|x| x.factor_valuation(f)).collect(),
        RootDescriptor::Infinity => {
            let inv = smith_mcmillan(&smm.source.substitute_inverse());
            inv.d.iter().map(|x| x.valuation(&RootPoint::zero())).collect()
        }
    };
    let mut v: Vec<i64> = vals
        .into_iter()
        .map(|x| x.finite().expect("diagonal entries are nonzero"))
        .collect();
    v.sort_unstable();
    v
}

/// Pole degree at infinity: the sum of the negative structural indices there.
pub fn infinity_pole_degree(g: &RatMatrix) -> usize {
    if g.is_zero() {
        return 0;
    }
    let inv = smith_mcmillan(&g.substitute_inverse());
    inv.d
        .iter()
        .map(|x| x.valuation(&RootPoint::zero()).finite().unwrap())
        .filter(|&v| v < 0)
        .map(|v| (-v) as usize)
        .sum()
}

/// McMillan degree, counting the pole at infinity.
pub fn mcmillan_degree(g: &RatMatrix) -> usize {
    if g.is_zero() {
        return 0;
    }
    mcmillan_degree_of(&smith_mcmillan(g))
}

/// McMillan degree of the matrix behind an existing decomposition.
pub fn mcmillan_degree_of(smm: &SmithMcMillan) -> usize {
    let finite: usize = smm.psi.iter().map(|p| p.degree().unwrap()).sum();
    finite + infinity_pole_degree(&smm.source)
}

/// Polynomial `X` with `F X = I` for a full-row-rank `F` without finite zeroes.
pub fn unimodular_right_inverse(f: &PolyMatrix) -> Result<PolyMatrix> {
    let sf = smith_form(f);
    let r = f.rows();
    if sf.rank < r || (0..r).any(|i| !sf.s[(i, i)].is_one()) {
        return Err(Error::NotUnimodular);
    }
    Ok(&sf.v.block(0, f.cols(), 0, r) * &sf.u)
}

/// Polynomial `X` with `X C = I` for a full-column-rank `C` without finite zeroes.
pub fn unimodular_left_inverse(c: &PolyMatrix) -> Result<PolyMatrix> {
    Ok(unimodular_right_inverse(&c.transpose())?.transpose())
}
