//! Lattice basis reduction for integer row vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ConstMatrix;
use crate::scalar::Rat;

/// Gram–Schmidt coefficients `mu` and squared norms `b*` of the rows.
fn gram_schmidt(b: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let n = b.len();
    let dot = |x: &[Rat], y: &[Rat]| x.iter().zip(y).fold(Rat::zero(), |acc, (a, c)| acc + a * c);
    let mut star: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rat::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = b[i].clone();
        for j in 0..i {
            mu[i][j] = dot(&b[i], &star[j]) / &norms[j];
            for (x, s) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * s;
            }
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    (mu, norms)
}

/// LLL reduction with `delta = 3/4` of linearly independent integer rows.
/// Returns the reduced rows and the unimodular `u` with `reduced = u * rows`.
pub fn lll(rows: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, ConstMatrix) {
    let n = rows.len();
    let mut b: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(Rat::from_integer).collect())
        .collect();
    let mut u = ConstMatrix::identity(n);
    let delta = Rat::new(BigInt::from(3), BigInt::from(4));
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(&b);
            if mu[k][j].abs() > half {
                let q = mu[k][j].round();
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
                for c in 0..n {
                    let v = &u[(j, c)] * &q;
                    u[(k, c)] -= v;
                }
            }
        }
        let (mu, norms) = gram_schmidt(&b);
        let m = &mu[k][k - 1];
        if norms[k] >= (&delta - m * m) * &norms[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            u.swap_rows(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    let out = b
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.to_integer()).collect())
        .collect();
    (out, u)
}

/// Triangular basis of the lattice spanned by integer vectors of length
/// `r`, assuming they span a full-rank lattice.
fn hermite_basis(mut g: Vec<Vec<BigInt>>, r: usize) -> Vec<Vec<BigInt>> {
    for j in 0..r {
        for i in j + 1..g.len() {
            if g[i][j].is_zero() {
                continue;
            }
            // unimodular 2x2 step clearing g[i][j] into the pivot row j
            let (a, b) = (g[j][j].clone(), g[i][j].clone());
            let e = a.extended_gcd(&b);
            let (ra, rb) = (&a / &e.gcd, &b / &e.gcd);
            let (top, bottom): (Vec<BigInt>, Vec<BigInt>) = g[j]
                .iter()
                .zip(&g[i])
                .map(|(x, y)| (&e.x * x + &e.y * y, &ra * y - &rb * x))
                .unzip();
            g[j] = top;
            g[i] = bottom;
        }
    }
    g.truncate(r);
    g
}

/// Basis change `t` such that the rows of `t * rows` form an LLL-reduced
/// basis of the integer vectors in the rational row space of `rows`.
/// `None` when `rows` is not of full row rank.
pub fn short_basis(rows: &ConstMatrix) -> Option<ConstMatrix> {
    let r = rows.rows();
    let echelon = rows.rref();
    if echelon.rank() != r {
        return None;
    }
    let all: Vec<usize> = (0..r).collect();
    let e = rows.submatrix(&all, &echelon.pivots).inverse()?;
    let reduced = &e * rows;
    // x * reduced is integral exactly when x lies in the dual of the lattice
    // spanned by the columns of `reduced`
    let den = reduced
        .entries()
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scale = Rat::from_integer(den.clone());
    let gens = (0..reduced.cols())
        .map(|c| (0..r).map(|i| (&reduced[(i, c)] * &scale).to_integer()).collect())
        .collect();
    let basis = hermite_basis(gens, r);
    let columns = ConstMatrix::from_fn(r, r, |i, j| Rat::new(basis[i][j].clone(), den.clone()));
    let dual = columns.inverse()?.transpose();
    let saturated = &dual * &reduced;
    let ints: Vec<Vec<BigInt>> = (0..r)
        .map(|i| (0..saturated.cols()).map(|c| saturated[(i, c)].to_integer()).collect())
        .collect();
    let (_, u) = lll(&ints);
    Some(&(&u * &dual) * &e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn reduces_skewed_basis() {
        // rows (1, 0) and (1, 1), disguised by a unimodular change
        let rows = vec![ints(&[1001, 1000]), ints(&[1000, 999])];
        let (red, u) = lll(&rows);
        for r in &red {
            assert!(r.iter().all(|x| x.abs() <= BigInt::from(1)));
        }
        assert_eq!(u.det().abs(), Rat::one());
        for (i, r) in red.iter().enumerate() {
            for (c, x) in r.iter().enumerate() {
                let s = (0..2).fold(Rat::zero(), |acc, j| {
                    acc + &u[(i, j)] * Rat::from_integer(rows[j][c].clone())
                });
                assert_eq!(s, Rat::from_integer(x.clone()));
            }
        }
    }

    #[test]
    fn short_basis_recovers_saturated_rows() {
        // small rows mixed by a rational change of basis
        let small = ConstMatrix::from_ints(2, 3, &[1, 2, 3, 0, 1, 1]);
        let mix = ConstMatrix::from_vec(
            2,
            2,
            vec![
                Rat::new(7.into(), 3.into()),
                Rat::from_integer(5.into()),
                Rat::from_integer(11.into()),
                Rat::new(13.into(), 2.into()),
            ],
        );
        let rows = &mix * &small;
        let t = short_basis(&rows).unwrap();
        let out = &t * &rows;
        assert!(out
            .entries()
            .iter()
            .all(|x| x.is_integer() && x.abs() <= Rat::from_integer(3.into())));
        assert!(!t.det().is_zero());
        assert!(short_basis(&ConstMatrix::from_ints(2, 2, &[1, 2, 2, 4])).is_none());
    }
}
