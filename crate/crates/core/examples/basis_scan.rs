//! Basis validation and a success-probability sweep over the β_ab family.

use std::f64::consts::PI;

use gate_teleport::bases::{
    beta_ab_at, beta_nl_basis, computational_basis, m1_basis, validate_basis, ORTHONORMAL_TOL,
};
use gate_teleport::gates::cnot;
use gate_teleport::linalg::Mat4;
use gate_teleport::separability::SEPARABILITY_TOL;
use gate_teleport::teleport::analyze_gate_teleport;

fn main() -> gate_teleport::error::Result<()> {
    for basis in [
        m1_basis(),
        computational_basis(),
        beta_nl_basis(0.3, 0.1, 0.0),
        beta_nl_basis(PI / 4.0, 0.0, 0.0),
    ] {
        let r = validate_basis(&basis, ORTHONORMAL_TOL);
        println!(
            "{:<28} orthonormal={} capable={}",
            r.name, r.orthonormal, r.teleportation_capable
        );
    }

    println!("\nt, CNOT success over beta_ab(t)");
    for i in 0..8 {
        let t = 2.0 * PI * i as f64 / 8.0;
        let rep =
            analyze_gate_teleport(&cnot(), &beta_ab_at(t), &Mat4::identity(), SEPARABILITY_TOL)?;
        println!("{t:.4}, {:.3}", rep.success_probability);
    }
    Ok(())
}
