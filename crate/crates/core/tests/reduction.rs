mod common;

use common::*;
use specfact::matrix::{hc_matrix, is_l_unimodular, is_para_hermitian};
use specfact::reduction::{build_psi, reduce, ReductionOptions};
use specfact::regions::{split_diagonal, RegionPair, RegionSpec};
use specfact::scalar::rat::int;
use specfact::{ConstMatrix, LPoly, LPolyMatrix, Matrix, Rat};

fn lq(minpow: i64, c: &[(i64, i64)]) -> LPoly {
    LPoly::new(minpow, c.iter().map(|&(n, d)| q(n, d)).collect())
}

fn example_trace() -> specfact::reduction::ReductionTrace {
    let smm = example_witnesses();
    let split = split_diagonal(
        &smm.d,
        &RegionPair::new(RegionSpec::outside(), RegionSpec::inside()),
        1e-9,
    )
    .unwrap();
    let psi = build_psi(&smm, &split, false).unwrap();
    reduce(&psi, &ReductionOptions::default()).unwrap()
}

fn proportional(a: &[Rat], b: &[i64]) -> bool {
    let b: Vec<Rat> = b.iter().map(|&x| int(x)).collect();
    (0..a.len()).all(|i| (0..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

#[test]
fn example_psi_one_matches() {
    let t = example_trace();
    let psi1 = &t.psi_sequence[0];
    assert!(is_para_hermitian(psi1) && is_l_unimodular(psi1));
    assert_eq!(psi1[(0, 0)], lq(-1, &[(-1, 2), (3, 2), (-1, 2)]));
    assert_eq!(psi1[(0, 1)], lq(-1, &[(1, 2), (43, 4), (-43, 2), (25, 2), (-9, 4)]));
    assert_eq!(
        psi1[(1, 1)],
        lq(
            -3,
            &[(9, 4), (341, 8), (-1747, 8), (2780, 8), (-1747, 8), (341, 8), (9, 4)]
        )
    );
    let hc = hc_matrix(psi1).unwrap();
    assert_eq!(
        hc,
        ConstMatrix::from_vec(2, 2, vec![q(-1, 2), q(-9, 4), q(1, 2), q(9, 4)])
    );
}

#[test]
fn example_trace_matches_every_iteration() {
    let t = example_trace();
    assert_eq!(t.iterations(), 4);
    let expected_v = [[9, -2], [23, 2], [-4, 1], [-2, 1]];
    let expected_p = [1, 1, 1, 0];
    for (s, (v, p)) in t.steps.iter().zip(expected_v.iter().zip(expected_p)) {
        assert!(proportional(&s.kernel_vector, v), "{:?} vs {v:?}", s.kernel_vector);
        assert_eq!(s.pivot, p);
    }
    let o1 = &t.steps[0].omega_inv;
    assert_eq!(o1[(0, 1)], poly(&[int(0), int(0), q(-9, 2)]));
    let o4 = &t.steps[3].omega_inv;
    assert_eq!(o4[(1, 0)], poly(&[int(0), q(-1, 2)]));
    let psi3: &LPolyMatrix = &t.psi_sequence[2];
    assert_eq!(psi3[(0, 1)], lq(-1, &[(1, 2), (5, 1), (-2, 1)]));
    assert_eq!(psi3[(1, 1)], lp(-1, &[2, 21, 2]));
    let psi4 = &t.psi_sequence[3];
    assert_eq!(psi4[(0, 1)], lq(-1, &[(5, 2), (-1, 1)]));
    assert_eq!(psi4[(1, 1)], lp(0, &[5]));
    assert_eq!(
        t.psi_final,
        ConstMatrix::from_vec(2, 2, vec![q(1, 4), int(-1), int(-1), int(5)])
    );
    assert!(t.c_exact);
    assert_eq!(t.c, ConstMatrix::from_vec(2, 2, vec![q(1, 2), int(-2), int(0), int(1)]));
    assert_eq!(t.assemble_p(), p_example());
}

#[test]
fn example_certificate_reproduces_psi() {
    let t = example_trace();
    let q = t.certificate_q().to_lpoly();
    let dc = Matrix::diagonal(&t.dc).to_lpoly();
    assert_eq!(&(&q.star() * &dc) * &q, t.psi_sequence[0]);
    let p = t.assemble_p().to_lpoly();
    assert_eq!(&p.star() * &p, t.psi_sequence[0]);
}
