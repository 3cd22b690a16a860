//! Canonical decomposition of a few named gates and of a Haar-random one.

use gate_teleport::gates::{cnot, exp_yy, swap, swap_sqrt};
use gate_teleport::kak::{classify_nonlocal, kak_decompose, kak_reconstruct, LATTICE_TOL};
use gate_teleport::linalg::{haar_mat4, phase_distance, Mat4};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gate_teleport::error::Result<()> {
    let random = haar_mat4(&mut ChaCha8Rng::seed_from_u64(11));
    let gates: [(&str, Mat4); 5] = [
        ("CNOT", cnot()),
        ("SWAP", swap()),
        ("SWAP^1/2", swap_sqrt()),
        ("exp(i pi/4 YY)", exp_yy()),
        ("haar(11)", random),
    ];
    println!(
        "{:<16} {:>9} {:>9} {:>9}  lattice  residual",
        "gate", "theta1", "theta2", "theta3"
    );
    for (name, u) in gates {
        let d = kak_decompose(&u, 1e-9)?;
        let class = classify_nonlocal(d.theta, LATTICE_TOL);
        let [t1, t2, t3] = d.theta;
        println!(
            "{name:<16} {t1:>9.6} {t2:>9.6} {t3:>9.6}  {:<7}  {:.1e}",
            if class.is_lattice() { "yes" } else { "no" },
            phase_distance(&kak_reconstruct(&d), &u)
        );
    }
    Ok(())
}
