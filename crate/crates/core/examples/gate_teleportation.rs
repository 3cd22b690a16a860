//! Per-outcome gate-teleportation verdicts, plus the success-probability table.

use gate_teleport::bases::{bell_basis, m2_basis};
use gate_teleport::gates::{cnot, swap_sqrt};
use gate_teleport::linalg::Mat4;
use gate_teleport::separability::SEPARABILITY_TOL;
use gate_teleport::teleport::{
    analyze_gate_teleport, reproduce_success_table, success_table_bases, success_table_gates,
};

fn main() -> gate_teleport::error::Result<()> {
    for (name, u, basis) in [
        ("CNOT", cnot(), bell_basis()),
        ("SWAP^1/2", swap_sqrt(), m2_basis()),
    ] {
        let rep = analyze_gate_teleport(&u, &basis, &Mat4::identity(), SEPARABILITY_TOL)?;
        println!(
            "{name} measured in {}: success {:.3}",
            basis.name, rep.success_probability
        );
        for row in rep.separable_grid() {
            let cells: Vec<&str> = row.iter().map(|&s| if s { "ok" } else { "--" }).collect();
            println!("  {}", cells.join(" "));
        }
    }

    let table = reproduce_success_table()?;
    let names: Vec<String> = success_table_bases()
        .iter()
        .map(|b| b.name.clone())
        .collect();
    println!(
        "\n{:<16} {}",
        "gate",
        names.iter().map(|n| format!("{n:>8}")).collect::<String>()
    );
    for ((name, _), row) in success_table_gates().iter().zip(table) {
        println!(
            "{name:<16} {}",
            row.iter().map(|p| format!("{p:>8.3}")).collect::<String>()
        );
    }
    Ok(())
}
