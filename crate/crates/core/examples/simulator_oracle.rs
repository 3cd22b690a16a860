//! Forced and sampled runs of the six-qubit gate-teleportation circuit.

use gate_teleport::bases::m2_basis;
use gate_teleport::gates::t_gate;
use gate_teleport::linalg::{haar_state, HaarDim, Mat4};
use gate_teleport::separability::SEPARABILITY_TOL;
use gate_teleport::simulator::{outcome_distribution, run_gate_teleport, sample_gate_teleport};
use gate_teleport::teleport::analyze_gate_teleport;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gate_teleport::error::Result<()> {
    let u = t_gate(0.449, 0.242);
    let basis = m2_basis();
    let rep = analyze_gate_teleport(&u, &basis, &Mat4::identity(), SEPARABILITY_TOL)?;
    let corrections = rep.corrections();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let input = haar_state(HaarDim::Four, &mut rng);

    let probs = outcome_distribution(&input, &u, &basis, &Mat4::identity())?;
    let forced = run_gate_teleport(&input, &u, &basis, &Mat4::identity(), &corrections)?;
    println!(" j k  separable  probability  fidelity");
    for (i, o) in forced.iter().enumerate() {
        let f = o.fidelity.map_or("-".to_string(), |f| format!("{f:.9}"));
        println!(
            " {} {}  {:<9}  {:<11.6}  {f}",
            i / 4,
            i % 4,
            rep.outcomes[i].separable,
            probs[i]
        );
    }

    let mut hits = [0usize; 16];
    for _ in 0..2000 {
        let (j, k, _, _) = sample_gate_teleport(
            &input,
            &u,
            &basis,
            &Mat4::identity(),
            &corrections,
            &mut rng,
        )?;
        hits[4 * j + k] += 1;
    }
    let worst = (0..16)
        .map(|i| (hits[i] as f64 / 2000.0 - probs[i]).abs())
        .fold(0.0, f64::max);
    println!("largest sampled-frequency deviation over 2000 shots: {worst:.4}");
    Ok(())
}
