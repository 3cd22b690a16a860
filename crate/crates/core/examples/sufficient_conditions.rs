//! Sufficient-condition check for deterministic gate teleportation, compared with
//! the direct per-outcome analysis.

use gate_teleport::bases::{bell_basis, m1_basis, m2_basis};
use gate_teleport::gates::{c_pi8, cnot, exp_yy, swap};
use gate_teleport::kak::LATTICE_TOL;
use gate_teleport::linalg::Mat4;
use gate_teleport::separability::SEPARABILITY_TOL;
use gate_teleport::teleport::{analyze_gate_teleport, sufficient_conditions_check};

fn main() -> gate_teleport::error::Result<()> {
    let cases = [
        ("CNOT", cnot(), bell_basis()),
        ("SWAP", swap(), m2_basis()),
        ("exp(i pi/4 YY)", exp_yy(), m1_basis()),
        ("C_pi/8", c_pi8(), bell_basis()),
    ];
    println!(
        "{:<16} {:<6} {:<6} {:<6} {:<13} direct",
        "gate", "basis", "cond1", "cond2", "conclusion"
    );
    for (name, u, basis) in cases {
        let v = sufficient_conditions_check(&u, &basis, LATTICE_TOL)?;
        let direct = analyze_gate_teleport(&u, &basis, &Mat4::identity(), SEPARABILITY_TOL)?;
        println!(
            "{name:<16} {:<6} {:<6} {:<6} {:<13} {:.3}",
            basis.name,
            v.condition1_met,
            v.condition2_met,
            format!("{:?}", v.conclusion),
            direct.success_probability
        );
        if let Some(w) = &v.condition1 {
            println!(
                "  frame {}  theta' {:?}  pattern {:?}",
                w.frame, w.theta, w.pattern
            );
        }
    }
    Ok(())
}
