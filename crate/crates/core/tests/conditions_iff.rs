mod common;

use common::{random_coeffs, random_pattern_tensor, shapes};
use nilmetric::solver::{check_conditions, solve, sparsity_pattern, PrescribedTensor};
use nilmetric::AlgebraId;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn conditions_match_solver_on_generated_tensors() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for id in AlgebraId::ALL {
        if id == AlgebraId::FiveA1 {
            continue;
        }
        for branch in shapes(id) {
            for _ in 0..50 {
                let c = random_coeffs(&mut rng, id, branch);
                let t = PrescribedTensor::forward(&c).unwrap();
                let rep = check_conditions(&t);
                assert!(rep.satisfied(), "{id} {branch:?} positive fails: {rep:?}");
                let sol = solve(&t).unwrap_or_else(|| panic!("{id} {branch:?} unsolved"));
                assert!(sol.residual <= 1e-8);

                // flip one off-diagonal entry
                let off: Vec<(usize, usize)> = sparsity_pattern(id)
                    .iter()
                    .flat_map(|p| p.entries.iter())
                    .filter(|e| e.0 != e.1 && t.m[(e.0, e.1)].abs() > 1e-6)
                    .map(|e| (e.0, e.1))
                    .collect();
                if !off.is_empty() {
                    let (r, s) = off[rng.gen_range(0..off.len())];
                    let mut m = t.m;
                    m[(r, s)] = -m[(r, s)];
                    m[(s, r)] = -m[(s, r)];
                    let flipped = PrescribedTensor::new(id, m).unwrap();
                    assert_eq!(
                        check_conditions(&flipped).satisfied(),
                        solve(&flipped).is_some(),
                        "{id} {branch:?} flip ({r},{s})"
                    );
                }
            }
            for _ in 0..200 {
                let t = PrescribedTensor::new(id, random_pattern_tensor(&mut rng, id, branch)).unwrap();
                assert_eq!(check_conditions(&t).satisfied(), solve(&t).is_some(), "{id} random");
            }
        }
    }
}
