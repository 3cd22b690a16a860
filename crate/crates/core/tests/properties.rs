use std::f64::consts::FRAC_PI_4;

use approx::assert_abs_diff_eq;
use gate_teleport::bases::{bell_basis, conjugated_pauli_basis, haar_basis, m2_basis};
use gate_teleport::kak::{kak_decompose, kak_reconstruct, nonlocal_part, LATTICE_TOL};
use gate_teleport::linalg::{
    haar_mat2, haar_mat4, haar_state, is_unitary, phase_distance, tensor, tensor_state, HaarDim,
    Mat4,
};
use gate_teleport::separability::{operator_schmidt, tensor_factorize, SEPARABILITY_TOL};
use gate_teleport::simulator::Register;
use gate_teleport::teleport::{
    analyze_gate_teleport, analyze_state_teleport, sufficient_conditions_check, Conclusion,
    ResourceState, PROPORTIONALITY_TOL,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kak_reconstructs_and_lands_in_the_chamber(seed in any::<u64>()) {
        let u = haar_mat4(&mut rng(seed));
        let d = kak_decompose(&u, 1e-9).unwrap();
        prop_assert!(phase_distance(&kak_reconstruct(&d), &u) < 1e-9);
        let [t1, t2, t3] = d.theta;
        prop_assert!(t1 <= FRAC_PI_4 + 1e-9 && t1 + 1e-12 >= t2 && t2 + 1e-12 >= t3.abs());
    }

    #[test]
    fn products_factor_exactly(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (haar_mat2(&mut r), haar_mat2(&mut r));
        let f = tensor_factorize(&tensor(&a, &b), SEPARABILITY_TOL).unwrap();
        prop_assert!(f.separable);
        prop_assert!(phase_distance(&f.reconstruct().unwrap(), &tensor(&a, &b)) < 1e-10);
    }

    #[test]
    fn schmidt_values_ignore_local_dressing(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = haar_mat4(&mut r);
        let dressed = tensor(&haar_mat2(&mut r), &haar_mat2(&mut r)) * w * tensor(&haar_mat2(&mut r), &haar_mat2(&mut r));
        let (s, t) = (operator_schmidt(&w), operator_schmidt(&dressed));
        for i in 0..4 {
            assert_abs_diff_eq!(s[i], t[i], epsilon = 1e-9);
        }
    }

    #[test]
    fn success_is_invariant_under_outer_locals(seed in any::<u64>(), which in 0usize..3) {
        let mut r = rng(seed);
        let u = haar_mat4(&mut r);
        let dressed = tensor(&haar_mat2(&mut r), &haar_mat2(&mut r)) * u;
        let basis = [bell_basis(), m2_basis(), haar_basis(&mut r)][which].clone();
        let a = analyze_gate_teleport(&u, &basis, &Mat4::identity(), SEPARABILITY_TOL).unwrap();
        let b = analyze_gate_teleport(&dressed, &basis, &Mat4::identity(), SEPARABILITY_TOL).unwrap();
        prop_assert_eq!(a.separable_grid(), b.separable_grid());
    }

    #[test]
    fn state_probabilities_sum_to_one(seed in any::<u64>()) {
        let mut r = rng(seed);
        let res = ResourceState::from_state(&haar_state(HaarDim::Four, &mut r)).unwrap();
        let rep = analyze_state_teleport(&res, &haar_mat4(&mut r), &haar_basis(&mut r), PROPORTIONALITY_TOL).unwrap();
        assert_abs_diff_eq!(rep.probabilities().iter().sum::<f64>(), 1.0, epsilon = 1e-9);
        for o in &rep.outcomes {
            if let Some(v) = o.v_matrix {
                prop_assert!(is_unitary(&v, 1e-7));
            }
        }
    }

    #[test]
    fn gates_preserve_register_norm(seed in any::<u64>(), a in 0usize..4, b in 0usize..4) {
        prop_assume!(a != b);
        let mut r = rng(seed);
        let product = tensor_state(&haar_state(HaarDim::Four, &mut r), &haar_state(HaarDim::Four, &mut r));
        let reg = Register::from_state(product).unwrap().apply_gate(&haar_mat4(&mut r), &[1, 2]).unwrap();
        let out = reg.apply_gate(&haar_mat4(&mut r), &[a, b]).unwrap();
        assert_abs_diff_eq!(out.state().norm(), 1.0, epsilon = 1e-12);
        let p = out.pair_probabilities((a, b), &haar_basis(&mut r)).unwrap();
        assert_abs_diff_eq!(p.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn sufficient_conditions_never_overclaim(seed in any::<u64>(), k in prop::array::uniform3(-3i32..=3)) {
        let mut r = rng(seed);
        let u_r = haar_mat2(&mut r);
        let theta = k.map(|x| x as f64 * FRAC_PI_4);
        let u = tensor(&haar_mat2(&mut r), &haar_mat2(&mut r)) * nonlocal_part(theta) * tensor(&u_r, &u_r);
        let basis = conjugated_pauli_basis(&u_r).unwrap();
        let v = sufficient_conditions_check(&u, &basis, LATTICE_TOL).unwrap();
        prop_assert_eq!(v.conclusion, Conclusion::Deterministic);
        let rep = analyze_gate_teleport(&u, &basis, &Mat4::identity(), SEPARABILITY_TOL).unwrap();
        prop_assert!(rep.deterministic);
    }
}
