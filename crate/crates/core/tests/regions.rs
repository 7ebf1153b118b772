mod common;

use common::*;
use specfact::canonical::smith_mcmillan;
use specfact::regions::{split_diagonal, RegionPair, RegionSpec};
use specfact::scalar::rat::int;
use specfact::{LPoly, Poly, RatFun};

fn example_regions() -> RegionPair {
    RegionPair::new(RegionSpec::outside(), RegionSpec::inside())
}

#[test]
fn example_split_matches_published_factors() {
    let smm = smith_mcmillan(&phi_example());
    let s = split_diagonal(&smm.d, &example_regions(), 1e-9).unwrap();
    assert!(!s.approximate);
    let lam1 = RatFun::new(Poly::one(), &Poly::z() * &poly(&[q(-1, 2), int(1)]));
    assert_eq!(s.lambda, vec![lam1, RatFun::one()]);
    assert_eq!(s.theta, vec![RatFun::one(), RatFun::from_poly(ipoly(&[-1, 1]))]);
    assert_eq!(
        s.sigma,
        vec![LPoly::monomial(q(-1, 2), -2), LPoly::monomial(int(-1), 2)]
    );
    assert_eq!(s.reassemble(), smm.d);
}

#[test]
fn flipping_an_orbit_moves_only_that_orbit() {
    let smm = smith_mcmillan(&phi_example());
    let flipped = RegionPair::new(
        RegionSpec::outside().with_flip(poly(&[q(-1, 2), int(1)])).unwrap(),
        RegionSpec::inside(),
    );
    let s = split_diagonal(&smm.d, &flipped, 1e-9).unwrap();
    assert_eq!(s.lambda[0], RatFun::new(Poly::one(), &Poly::z() * &ipoly(&[-2, 1])));
    assert_eq!(s.lambda[1], RatFun::one());
    assert_eq!(s.theta[1], RatFun::from_poly(ipoly(&[-1, 1])));
    assert_eq!(s.reassemble(), smm.d);
}

mod properties {
    use proptest::prelude::*;
    use specfact::canonical::smith_mcmillan;
    use specfact::regions::{split_diagonal, RegionPair, RegionSpec};
    use specfact::scalar::rat::{int, rat};
    use specfact::{Matrix, Poly, RatFun, RatMatrix};

    /// `c z^-k prod (z - a)` with rational roots off the unit circle.
    fn entry() -> impl Strategy<Value = RatFun> {
        let root = (-6i64..=6, 1i64..=3)
            .prop_filter("off the circle", |(n, d)| n.abs() != *d)
            .prop_map(|(n, d)| rat(n, d));
        (1i64..=3, prop::collection::vec(root, 0..=2), 0i64..=1).prop_map(|(c, roots, k)| {
            let p = roots
                .iter()
                .fold(Poly::constant(int(c)), |acc, a| &acc * &Poly::linear(a));
            &RatFun::from_poly(p) * &RatFun::monomial(int(1), -k)
        })
    }

    fn spectrum() -> impl Strategy<Value = RatMatrix> {
        (1usize..=2)
            .prop_flat_map(|n| prop::collection::vec(entry(), n * n).prop_map(move |v| Matrix::from_vec(n, n, v)))
            .prop_map(|m: RatMatrix| &m.star() * &m)
            .prop_filter("nonzero", |phi| !phi.is_zero())
    }

    fn pairs() -> Vec<RegionPair> {
        vec![
            RegionPair::outer(),
            RegionPair::new(RegionSpec::outside(), RegionSpec::inside()),
            RegionPair::new(RegionSpec::inside(), RegionSpec::outside()),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn split_reassembles_diagonal(phi in spectrum()) {
            let d = smith_mcmillan(&phi).d;
            for regions in pairs() {
                let split = split_diagonal(&d, &regions, 1e-9).unwrap();
                // irrational roots leave the split approximate
                if !split.approximate {
                    prop_assert_eq!(split.reassemble(), d.clone());
                }
                prop_assert!(split.sigma.iter().all(|s| s.as_monomial().is_some()));
            }
        }
    }
}
