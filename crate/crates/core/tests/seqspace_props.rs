use num_rational::BigRational;
use num_traits::{One, Signed};
use preab_core::linalg::ratio;
use preab_core::seqspace::{banach_closure_witness, make_xn, nuclear_closure_witness, FiniteSeq};
use proptest::prelude::*;

fn sequences() -> impl Strategy<Value = FiniteSeq> {
    prop::collection::vec((1u64..40, -9i64..=9, 1i64..=5), 0..8).prop_map(|v| {
        FiniteSeq::from_entries(v.into_iter().map(|(j, p, q)| (j, ratio(p, q)))).unwrap()
    })
}

proptest! {
    #[test]
    fn witness_sequence_values(n in 1u64..5000) {
        let x = make_xn(n).unwrap();
        prop_assert_eq!(x.sup_norm(), BigRational::new(1.into(), n.into()));
        prop_assert_eq!(x.one_norm(), BigRational::one());
        prop_assert_eq!(x.sum_functional(), -BigRational::one());
        prop_assert_eq!(x.support_size(), n);
    }

    #[test]
    fn banach_witness_is_minimal(p in 1i64..50, q in 1i64..400) {
        let eps = ratio(p, q);
        let c = banach_closure_witness(&eps).unwrap();
        prop_assert!(c.distance <= eps);
        c.verify().unwrap();
        if c.n > 1 {
            let prev = banach_closure_witness(&BigRational::new(1.into(), (c.n - 1).into())).unwrap();
            prop_assert!(prev.distance > eps);
            prop_assert!(prev.distance > c.distance);
        }
    }

    #[test]
    fn nuclear_witness_reverifies(q in 1i64..60, m in 1u32..=8) {
        let c = nuclear_closure_witness(&ratio(1, q), m).unwrap();
        prop_assert_eq!(c.n, q as u64);
        c.verify().unwrap();
    }

    #[test]
    fn seminorm_domination(x in sequences(), m in 1u32..=8) {
        let s = x.s_seminorm(m).unwrap();
        prop_assert!(x.product_seminorm(m).unwrap() <= s);
        prop_assert!(x.sum_functional().abs() <= s);
    }
}
