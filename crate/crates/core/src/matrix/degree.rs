//! Column/row degree bookkeeping for Laurent-polynomial matrices.

use super::{ConstMatrix, LPolyMatrix, Matrix};
use crate::error::{Error, Result};

/// Column max-degrees `K_i` and min-degrees, row max/min-degrees; `None` marks a zero column or row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub column_max: Vec<Option<i64>>,
    pub column_min: Vec<Option<i64>>,
    pub row_max: Vec<Option<i64>>,
    pub row_min: Vec<Option<i64>>,
}

impl DegreeProfile {
    pub fn of(g: &LPolyMatrix) -> Self {
        let col = |j: usize, max: bool| {
            let it = (0..g.rows()).filter_map(|i| if max { g[(i, j)].max_deg() } else { g[(i, j)].min_deg() });
            if max {
                it.max()
            } else {
                it.min()
            }
        };
        let row = |i: usize, max: bool| {
            let it = g
                .row(i)
                .iter()
                .filter_map(|p| if max { p.max_deg() } else { p.min_deg() });
            if max {
                it.max()
            } else {
                it.min()
            }
        };
        DegreeProfile {
            column_max: (0..g.cols()).map(|j| col(j, true)).collect(),
            column_min: (0..g.cols()).map(|j| col(j, false)).collect(),
            row_max: (0..g.rows()).map(|i| row(i, true)).collect(),
            row_min: (0..g.rows()).map(|i| row(i, false)).collect(),
        }
    }

    /// `sum K_i` over nonzero columns.
    pub fn column_max_sum(&self) -> i64 {
        self.column_max.iter().flatten().sum()
    }
}

fn column_degrees(g: &LPolyMatrix, max: bool) -> Result<Vec<i64>> {
    let p = DegreeProfile::of(g);
    let v = if max { p.column_max } else { p.column_min };
    v.into_iter()
        .enumerate()
        .map(|(j, d)| d.ok_or(Error::ZeroColumn(j)))
        .collect()
}

fn row_degrees(g: &LPolyMatrix, max: bool) -> Result<Vec<i64>> {
    let p = DegreeProfile::of(g);
    let v = if max { p.row_max } else { p.row_min };
    v.into_iter()
        .enumerate()
        .map(|(i, d)| d.ok_or(Error::ZeroRow(i)))
        .collect()
}

/// Column `j` holds the coefficients of `z^{K_j}`, `K_j` the column's max-degree.
pub fn hc_matrix(g: &LPolyMatrix) -> Result<ConstMatrix> {
    let k = column_degrees(g, true)?;
    Ok(Matrix::from_fn(g.rows(), g.cols(), |i, j| g[(i, j)].coeff(k[j])))
}

/// Column `j` holds the coefficients of the column's min-degree power.
pub fn lc_matrix(g: &LPolyMatrix) -> Result<ConstMatrix> {
    let k = column_degrees(g, false)?;
    Ok(Matrix::from_fn(g.rows(), g.cols(), |i, j| g[(i, j)].coeff(k[j])))
}

pub fn hr_matrix(g: &LPolyMatrix) -> Result<ConstMatrix> {
    let k = row_degrees(g, true)?;
    Ok(Matrix::from_fn(g.rows(), g.cols(), |i, j| g[(i, j)].coeff(k[i])))
}

pub fn lr_matrix(g: &LPolyMatrix) -> Result<ConstMatrix> {
    let k = row_degrees(g, false)?;
    Ok(Matrix::from_fn(g.rows(), g.cols(), |i, j| g[(i, j)].coeff(k[i])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat::int;
    use crate::scalar::LPoly;
    use proptest::prelude::*;

    #[test]
    fn identity_and_zero_column() {
        let i: LPolyMatrix = Matrix::identity(3);
        assert_eq!(hc_matrix(&i).unwrap(), Matrix::identity(3));
        let mut g: LPolyMatrix = Matrix::identity(2);
        g[(1, 1)] = LPoly::zero();
        assert_eq!(hc_matrix(&g), Err(Error::ZeroColumn(1)));
        assert_eq!(lr_matrix(&g), Err(Error::ZeroRow(1)));
    }

    fn lpoly_strategy() -> impl Strategy<Value = LPoly> {
        (-2i64..=1, prop::collection::vec(-3i64..=3, 1..4))
            .prop_map(|(m, c)| LPoly::new(m, c.iter().map(|&x| int(x)).collect()))
            .prop_filter("nonzero", |p| !p.is_zero())
    }

    proptest! {
        #[test]
        fn hc_transposes_to_lr_of_star(v in prop::collection::vec(lpoly_strategy(), 6)) {
            let g = Matrix::from_vec(2, 3, v);
            prop_assert_eq!(hc_matrix(&g).unwrap().transpose(), lr_matrix(&g.star()).unwrap());
        }

        #[test]
        fn para_hermitian_hc_is_lr_transposed(d in prop::collection::vec(lpoly_strategy(), 2), off in lpoly_strategy()) {
            let sym = |p: &LPoly| p + &p.star();
            let g = Matrix::from_vec(2, 2, vec![sym(&d[0]), off.clone(), off.star(), sym(&d[1])]);
            prop_assume!(!g.column_is_zero(0) && !g.column_is_zero(1));
            prop_assert_eq!(hc_matrix(&g).unwrap(), lr_matrix(&g).unwrap().transpose());
        }
    }
}
