use std::sync::Arc;

use hochcat::corpus::random_category;
use hochcat::hochschild::{HochschildComplex, HochschildSpec};
use hochcat::io::{parse_category, write_category};
use hochcat::linalg::{Matrix, SparseVec};
use hochcat::lincat::{category_algebra, from_algebra, opposite, FinLinCat};
use hochcat::ScalarKind;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: ScalarKind = ScalarKind::Rational;

fn category(seed: u64) -> FinLinCat {
    random_category(&mut ChaCha8Rng::seed_from_u64(seed), Q).unwrap()
}

fn complex(c: FinLinCat, n_max: usize) -> HochschildComplex {
    HochschildComplex::build(&HochschildSpec::diagonal(Arc::new(c), n_max)).unwrap()
}

fn betti(c: FinLinCat, n_max: usize) -> Vec<usize> {
    complex(c, n_max).betti().unwrap().into_iter().take(n_max + 1).collect()
}

fn matrix(rows: usize, cols: usize, vals: &[i64]) -> Matrix {
    let grid: Vec<&[i64]> = (0..rows).map(|i| &vals[i * cols..(i + 1) * cols]).collect();
    Matrix::from_i64(Q, &grid)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn category_files_round_trip(seed in any::<u64>()) {
        let c = category(seed);
        let text = write_category(&c).unwrap();
        let back = parse_category(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(write_category(&back).unwrap(), text);
    }

    #[test]
    fn hochschild_differential_squares_to_zero(seed in any::<u64>()) {
        let h = complex(category(seed), 2);
        prop_assert!(h.complex.d_squared_is_zero());
    }

    #[test]
    fn opposite_category_has_the_same_cohomology(seed in any::<u64>()) {
        let c = category(seed);
        let op = opposite(&c);
        prop_assert!(op.validate().is_ok());
        prop_assert_eq!(betti(op, 2), betti(c, 2));
    }

    #[test]
    fn category_and_its_algebra_have_the_same_cohomology(seed in any::<u64>()) {
        let c = category(seed);
        let a = from_algebra(&category_algebra(&c).unwrap()).unwrap();
        prop_assert_eq!(betti(a, 2), betti(c, 2));
    }

    #[test]
    fn solve_recovers_a_preimage(rows in 1usize..6, cols in 1usize..6, vals in proptest::collection::vec(-3i64..4, 36), x in proptest::collection::vec(-3i64..4, 6)) {
        let m = matrix(rows, cols, &vals);
        let x = SparseVec::from_dense(&x[..cols].iter().map(|&v| Q.from_i64(v)).collect::<Vec<_>>());
        let b = m.apply(&x);
        let y = m.solve(&b).expect("b is in the image");
        prop_assert_eq!(m.apply(&y), b);
    }

    #[test]
    fn kernel_has_full_dimension(rows in 1usize..6, cols in 1usize..6, vals in proptest::collection::vec(-3i64..4, 36)) {
        let m = matrix(rows, cols, &vals);
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len() + m.rank(), cols);
        for v in &kernel {
            prop_assert!(m.apply(v).is_zero());
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }
}
