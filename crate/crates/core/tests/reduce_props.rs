mod common;

use common::*;
use isolattice::exactlin::linalg::{det_int, rat, rat_frac, Rat};
use isolattice::exactlin::{min_norm, DEFAULT_NODE_BUDGET};
use isolattice::reduce::{hermite_reduce, lower_bound_iso, peel_off, upper_bound_iso};
use isolattice::GramMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hermite_invariants(g in gram_strategy(5, 20, 9)) {
        let r = hermite_reduce(&g).unwrap();
        let n = g.rank();
        let half = rat_frac(1, 2);
        for i in 0..n {
            for j in i + 1..n {
                prop_assert!(r.c[i][j].abs() <= half);
            }
        }
        for w in r.h.windows(2) {
            prop_assert!(&w[0] / &w[1] <= rat_frac(4, 3));
        }
        let prod: Rat = r.h.iter().product();
        prop_assert_eq!(prod, Rat::from_integer(g.determinant()));
        prop_assert_eq!(det_int(&r.u).abs(), BigInt::one());
        prop_assert_eq!(&GramMatrix::new(g.congruent(&r.u)).unwrap(), &r.gram);
        prop_assert_eq!(&r.h[0], &rat(min_norm(&g, DEFAULT_NODE_BUDGET).unwrap() as i64));
        for i in 0..n {
            prop_assert_eq!(&r.h[i], &trailing_minimum(&r.gram, i));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn peel_reassembles(g in gram_strategy(4, 20, 6)) {
        prop_assume!(min_norm(&g, DEFAULT_NODE_BUDGET).unwrap() >= 2);
        let p = peel_off(&g).unwrap();
        prop_assert_eq!(p.reassemble(), g.rows());
        prop_assert!(min_norm(&p.residual, DEFAULT_NODE_BUDGET).unwrap() >= 2);
        let h = hermite_reduce(&p.residual).unwrap().h;
        prop_assert!(h[h.len() - 1] < rat(4));
        prop_assert!(p.residual.determinant() <= g.determinant());
    }
}

#[test]
fn bounds_bracket_known_values() {
    for n in 1..=6 {
        assert!(Rat::from_integer(lower_bound_iso(n).into()) <= upper_bound_iso(n, None).unwrap());
    }
    for (n, iso) in [(1u64, 3i64), (2, 5), (3, 6)] {
        assert!(lower_bound_iso(n) <= iso);
        assert!(rat(iso) <= upper_bound_iso(n, None).unwrap());
    }
    assert_eq!(upper_bound_iso(7, Some(11)).unwrap() - upper_bound_iso(7, Some(10)).unwrap(), rat(1));
}
