//! Named two-qubit gates (first qubit is the control where applicable).

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use crate::linalg::{
    cis, diag2, diag4, exp_i_involution, principal_sqrt, real_mat2, real_mat4, tensor, Mat2, Mat4,
    Pauli, PauliPair, I, ONE,
};

pub fn hadamard() -> Mat2 {
    real_mat2([
        [FRAC_1_SQRT_2, FRAC_1_SQRT_2],
        [FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
    ])
}

/// Phase gate `S = diag(1, i)`; also written `P` in the M₂ tables.
pub fn s_gate() -> Mat2 {
    diag2(ONE, I)
}

/// `diag(1, e^{iπ/4})`, conventionally called the π/8 gate.
pub fn pi8_gate() -> Mat2 {
    diag2(ONE, cis(FRAC_PI_4))
}

pub fn cnot() -> Mat4 {
    real_mat4([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ])
}

pub fn cz() -> Mat4 {
    diag4([ONE, ONE, ONE, -ONE])
}

pub fn swap() -> Mat4 {
    real_mat4([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
}

/// Swap-family member exchanging `|00⟩ ↔ |11⟩`.
pub fn q_gate() -> Mat4 {
    real_mat4([
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
    ])
}

/// Swap-family member with the cyclic pattern printed alongside SWAP and Q.
pub fn r_gate() -> Mat4 {
    real_mat4([
        [0.0, 0.0, 1.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 1.0, 0.0, 0.0],
    ])
}

/// Controlled-π/8: `diag(1, 1, 1, e^{iπ/4})`.
pub fn c_pi8() -> Mat4 {
    diag4([ONE, ONE, ONE, cis(FRAC_PI_4)])
}

pub fn cnot_sqrt() -> Mat4 {
    principal_sqrt(&cnot()).expect("CNOT is unitary")
}

pub fn swap_sqrt() -> Mat4 {
    principal_sqrt(&swap()).expect("SWAP is unitary")
}

/// `exp(i·π/4·σ_YY)`.
pub fn exp_yy() -> Mat4 {
    exp_i_involution(FRAC_PI_4, &PauliPair::new(Pauli::Y, Pauli::Y).matrix())
}

/// `(H ⊗ I)·C_{π/8}`, the front unitary of the shifted-basis state example.
pub fn hadamard_c_pi8() -> Mat4 {
    tensor(&hadamard(), &Mat2::identity()) * c_pi8()
}

/// The diagonal family `T(φ, ξ) = diag(i, e^{iφ}, e^{iξ}, i·e^{i(φ+ξ)})`.
pub fn t_gate(phi: f64, xi: f64) -> Mat4 {
    diag4([I, cis(phi), cis(xi), I * cis(phi + xi)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius, is_unitary};

    #[test]
    fn all_named_gates_are_unitary() {
        for g in [
            cnot(),
            cz(),
            swap(),
            q_gate(),
            r_gate(),
            c_pi8(),
            cnot_sqrt(),
            swap_sqrt(),
            exp_yy(),
            hadamard_c_pi8(),
            t_gate(0.3, -1.2),
        ] {
            assert!(is_unitary(&g, 1e-12));
        }
    }

    #[test]
    fn square_roots_square_back() {
        let r = cnot_sqrt();
        assert!(frobenius(&(r * r - cnot())) < 1e-10);
        let r = swap_sqrt();
        assert!(frobenius(&(r * r - swap())) < 1e-10);
    }

    #[test]
    fn hadamard_c_pi8_columns() {
        // U|x0⟩ = (|00⟩ + (−1)^x|10⟩)/√2 and U|x1⟩ = e^{ixπ/4}(|01⟩ + (−1)^x|11⟩)/√2
        let u = hadamard_c_pi8();
        let h = FRAC_1_SQRT_2;
        for x in 0..2usize {
            let sign = if x == 0 { 1.0 } else { -1.0 };
            let col0 = u.column(2 * x);
            assert!(
                (col0[0] - ONE * h).norm() < 1e-15 && (col0[2] - ONE * (sign * h)).norm() < 1e-15
            );
            let ph = cis(FRAC_PI_4 * x as f64);
            let col1 = u.column(2 * x + 1);
            assert!(
                (col1[1] - ph * h).norm() < 1e-15 && (col1[3] - ph * (sign * h)).norm() < 1e-15
            );
        }
    }

    #[test]
    fn t_gate_at_origin() {
        assert_eq!(t_gate(0.0, 0.0), diag4([I, ONE, ONE, I]));
    }
}
