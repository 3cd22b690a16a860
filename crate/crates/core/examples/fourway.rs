//! Gate teleportation through the four-qubit resource: Clifford versus non-Clifford.

use gate_teleport::bases::bell_basis;
use gate_teleport::fourway::analyze_fourway;
use gate_teleport::gates::{c_pi8, cnot};
use gate_teleport::linalg::{haar_state, HaarDim};
use gate_teleport::separability::SEPARABILITY_TOL;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gate_teleport::error::Result<()> {
    let psi = haar_state(HaarDim::Four, &mut ChaCha8Rng::seed_from_u64(9));
    for (name, u) in [("CNOT", cnot()), ("C_pi/8", c_pi8())] {
        let rep = analyze_fourway(&u, &bell_basis(), &psi, SEPARABILITY_TOL)?;
        let bell = rep
            .outcomes
            .iter()
            .filter(|o| o.bell_state.is_some())
            .count();
        println!(
            "{name:<8} clifford={}  max corrected fidelity {:.6}  bell-state outputs {bell}/16",
            rep.clifford_case, rep.max_corrected_fidelity
        );
    }
    Ok(())
}
