mod common;

use common::{random_coeffs, shapes};
use nilmetric::frames::pattern_tensor;
use nilmetric::moduli::InnerProduct;
use nilmetric::ricci::{ricci_nilpotent, ricci_of_metric};
use nilmetric::solver::{check_conditions, solve, verify_solution, PrescribedTensor};
use nilmetric::{AlgebraId, Mat5};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn algebra() -> impl Strategy<Value = AlgebraId> {
    (0..AlgebraId::ALL.len()).prop_map(|i| AlgebraId::ALL[i])
}

fn spd() -> impl Strategy<Value = Mat5> {
    prop::collection::vec(-1.0f64..1.0, 25).prop_map(|v| {
        let a = Mat5::from_row_slice(&v);
        a.transpose() * a + Mat5::identity() * 0.3
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ricci_is_homogeneous_of_degree_two(id in algebra(), seed in any::<u64>(), s in 0.1f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for branch in shapes(id) {
            let c = random_coeffs(&mut rng, id, branch);
            let r1 = ricci_nilpotent(&pattern_tensor(&c)).m * (s * s);
            let r2 = ricci_nilpotent(&pattern_tensor(&c.scaled(s))).m;
            prop_assert!((r1 - r2).amax() <= 1e-10 * (1.0 + r1.amax()));
        }
    }

    #[test]
    fn ricci_of_metric_is_symmetric_and_homothety_invariant(id in algebra(), gram in spd(), k in 0.2f64..5.0) {
        let s = InnerProduct::new(gram).unwrap();
        let (a, v, eta) = ricci_of_metric(id, &s).unwrap();
        prop_assert!(a.asymmetry() <= 1e-12);
        prop_assert!((v.transpose() * gram * eta * v - Mat5::identity()).amax() <= 1e-8);
        let (b, _, _) = ricci_of_metric(id, &s.scaled(k).unwrap()).unwrap();
        prop_assert!(a.max_diff(&b) <= 1e-8);
    }

    #[test]
    fn forward_tensors_solve_and_rescale(id in algebra(), seed in any::<u64>(), s in 0.1f64..4.0) {
        prop_assume!(id != AlgebraId::FiveA1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for branch in shapes(id) {
            let t = PrescribedTensor::forward(&random_coeffs(&mut rng, id, branch)).unwrap();
            prop_assert!(check_conditions(&t).satisfied());
            let sol = solve(&t).expect("forward tensor solves");
            prop_assert!(verify_solution(&sol, &t) <= 1e-8);
            prop_assert!(verify_solution(&sol.rescaled(s), &t) <= 1e-8 * s * s.max(1.0));
        }
    }

    #[test]
    fn abelian_tensor_threshold(v in -1e-3f64..1e-3) {
        let mut m = Mat5::zeros();
        m[(0, 0)] = v;
        let accepted = PrescribedTensor::new(AlgebraId::FiveA1, m).ok().and_then(|t| solve(&t)).is_some();
        prop_assert_eq!(accepted, v.abs() <= 1e-10);
    }
}
