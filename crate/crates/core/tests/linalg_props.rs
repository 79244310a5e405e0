use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use preab_core::linalg::{
    int_matrix, integer_nullspace, nullspace_basis, rank, rat_matrix, rref, smith_normal_form, solve, solve_integer,
    IntMatrix, RatMatrix,
};
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-4i64..=4, r * c)))
}

fn rat((r, c, e): &(usize, usize, Vec<i64>)) -> RatMatrix {
    rat_matrix(*r, *c, e)
}

fn int((r, c, e): &(usize, usize, Vec<i64>)) -> IntMatrix {
    int_matrix(*r, *c, e)
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in small_matrix()) {
        let once = rref(&rat(&m));
        let twice = rref(&once.matrix);
        prop_assert_eq!(&twice.matrix, &once.matrix);
        prop_assert_eq!(twice.pivots, once.pivots);
    }

    #[test]
    fn rank_of_transpose(m in small_matrix()) {
        let a = rat(&m);
        prop_assert_eq!(rank(&a), rank(&a.transpose()));
    }

    #[test]
    fn nullspace_vectors_are_killed(m in small_matrix()) {
        let a = rat(&m);
        let n = nullspace_basis(&a);
        prop_assert!(a.matmul(&n).is_zero());
        prop_assert_eq!(n.cols() + rank(&a), a.cols());
    }

    #[test]
    fn solve_returns_solutions(m in small_matrix(), x in prop::collection::vec(-3i64..=3, 4)) {
        let a = rat(&m);
        let x: Vec<_> = x[..a.cols()].iter().map(|&v| preab_core::linalg::rat(v)).collect();
        let b = a.mul_vec(&x);
        let y = solve(&a, &b).expect("consistent by construction");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn smith_form_recomposes(m in small_matrix()) {
        let a = int(&m);
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.u_inv.matmul(&snf.s).matmul(&snf.v_inv), a.clone());
        prop_assert_eq!(snf.u.matmul(&a).matmul(&snf.v), snf.s.clone());
        let d = snf.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        prop_assert!(d.iter().all(|x| x >= &BigInt::zero()));
    }

    #[test]
    fn integer_solutions_and_nullspace(m in small_matrix(), x in prop::collection::vec(-3i64..=3, 4)) {
        let a = int(&m);
        let x: Vec<BigInt> = x[..a.cols()].iter().map(|&v| BigInt::from(v)).collect();
        let b = a.mul_vec(&x);
        let y = solve_integer(&a, &b).expect("integral by construction");
        prop_assert_eq!(a.mul_vec(&y), b);
        prop_assert!(a.matmul(&integer_nullspace(&a)).is_zero());
    }
}
