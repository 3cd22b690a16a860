//! Deterministic single-qubit teleportation through `(H⊗I)·C(π/8)` with a shifted basis,
//! checked against the statevector simulator.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use gate_teleport::bases::shifted_basis;
use gate_teleport::gates::hadamard_c_pi8;
use gate_teleport::linalg::{haar_state, HaarDim};
use gate_teleport::simulator::run_state_teleport;
use gate_teleport::teleport::{analyze_state_teleport, ResourceState, PROPORTIONALITY_TOL};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gate_teleport::error::Result<()> {
    let front = hadamard_c_pi8();
    let basis = shifted_basis(&front, FRAC_PI_4, FRAC_PI_2)?;
    let resource = ResourceState::bell();
    let rep = analyze_state_teleport(&resource, &front, &basis, PROPORTIONALITY_TOL)?;
    println!("deterministic: {}", rep.deterministic);
    for o in &rep.outcomes {
        println!(
            "  outcome {}  p = {:.4}  teleportable = {}",
            o.index, o.probability, o.teleportable
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let corrections = rep.corrections();
    let mut worst: f64 = 1.0;
    for _ in 0..50 {
        let xi = haar_state(HaarDim::Two, &mut rng);
        for o in run_state_teleport(&xi, &resource, &front, &basis, &corrections)? {
            if let Some(f) = o.fidelity {
                worst = worst.min(f);
            }
        }
    }
    println!("worst corrected fidelity over 50 random inputs: {worst:.9}");
    Ok(())
}
