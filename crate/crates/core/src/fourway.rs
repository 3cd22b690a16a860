//! Gate teleportation through the four-qubit resource `|χ⟩`.
//!
//! Register layout: the input pair sits on qubits 0 and 1, `|χ⟩` on 2..=5.
//! Qubits 0 and 2 are measured in `{β_j}`, qubits 1 and 5 in `{β_k}`, and
//! `U_T` acts on the output pair (3, 4). With this wiring the output of
//! outcome `(j, k)` is proportional to
//! `U·(σ_XX + σ_ZZ)·(β_j⊗β_k)|ψ⟩`, where `U = U_T·U₁`: a superposition of two
//! branches that no single local correction undoes unless the branches agree.

use serde::Serialize;

use crate::bases::{bell_basis, gate_betas, MeasurementBasis, ORTHONORMAL_TOL};
use crate::error::{Error, Result};
use crate::kak::is_clifford;
use crate::linalg::{
    apply4, equal_up_to_global_phase, fidelity, is_unitary, phase_distance, tensor, tensor_state,
    unitary_deviation, Mat2, Mat4, Pauli, PauliPair, StateVec, C64, UNITARY_TOL,
};
use crate::separability::tensor_factorize;
use crate::simulator::{Register, ZERO_PROBABILITY};

/// Kets of `|χ⟩` with their signs; every amplitude has magnitude `1/(2√2)`.
const CHI_TERMS: [(usize, f64); 8] = [
    (0b0000, 1.0),
    (0b0011, -1.0),
    (0b0101, -1.0),
    (0b0110, 1.0),
    (0b1001, 1.0),
    (0b1010, 1.0),
    (0b1100, 1.0),
    (0b1111, 1.0),
];

pub fn chi_state() -> StateVec {
    let amp = 1.0 / (2.0 * std::f64::consts::SQRT_2);
    let mut v = StateVec::zeros(16);
    for (idx, sign) in CHI_TERMS {
        v[idx] = C64::from(sign * amp);
    }
    v
}

/// `diag(1, 1, −1, 1)`.
pub fn u1_gate() -> Mat4 {
    Mat4::from_diagonal(&[1.0, 1.0, -1.0, 1.0].map(C64::from).into())
}

/// Eigenvalues (ascending) of each single-qubit reduced density matrix.
pub fn single_qubit_marginals(state: &StateVec) -> Vec<[f64; 2]> {
    let n = state.len().trailing_zeros() as usize;
    (0..n)
        .map(|q| {
            let bit = 1 << (n - 1 - q);
            let mut rho = Mat2::zeros();
            for i in (0..state.len()).filter(|i| i & bit == 0) {
                let (a0, a1) = (state[i], state[i | bit]);
                rho[(0, 0)] += a0 * a0.conj();
                rho[(0, 1)] += a0 * a1.conj();
                rho[(1, 0)] += a1 * a0.conj();
                rho[(1, 1)] += a1 * a1.conj();
            }
            let tr = (rho[(0, 0)] + rho[(1, 1)]).re;
            let gap =
                ((rho[(0, 0)] - rho[(1, 1)]).re.powi(2) + 4.0 * rho[(0, 1)].norm_sqr()).sqrt();
            [(tr - gap) / 2.0, (tr + gap) / 2.0]
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FourwayOutcome {
    pub j: usize,
    pub k: usize,
    pub probability: f64,
    /// Separability of `U·σ_XX·β_jk·U†`.
    pub branch_xx_separable: bool,
    /// Separability of `U·σ_ZZ·β_jk·U†`.
    pub branch_zz_separable: bool,
    /// The branch operators as Pauli pairs, when they are Paulis up to phase.
    pub branch_xx_pauli: Option<String>,
    pub branch_zz_pauli: Option<String>,
    #[serde(with = "crate::cli::format::opt_statevec")]
    pub output_state: Option<StateVec>,
    /// `|⟨U_T ψ|out⟩|²` with no correction.
    pub fidelity: Option<f64>,
    /// Best fidelity to `U_T|ψ⟩` over the identity and the inverses of the
    /// separable branch operators.
    pub corrected_fidelity: Option<f64>,
    /// Distance of the simulated output from the two-branch formula, up to phase.
    pub structure_residual: Option<f64>,
    /// 1-based index of the Bell vector the output equals, if any.
    pub bell_state: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FourwayReport {
    #[serde(with = "crate::cli::format::mat4")]
    pub effective_gate: Mat4,
    pub clifford_case: bool,
    pub outcomes: Vec<FourwayOutcome>,
    pub max_corrected_fidelity: f64,
    pub max_structure_residual: f64,
}

fn pauli_label(op: &Mat4, tol: f64) -> Option<String> {
    PauliPair::all()
        .find(|p| equal_up_to_global_phase(op, &p.matrix(), tol))
        .map(|p| p.to_string())
}

fn is_pauli(m: &Mat2, tol: f64) -> bool {
    Pauli::ALL
        .iter()
        .any(|p| equal_up_to_global_phase(m, &p.matrix(), tol))
}

pub fn analyze_fourway(
    u_t: &Mat4,
    basis: &MeasurementBasis,
    psi_ab: &StateVec,
    tol: f64,
) -> Result<FourwayReport> {
    if !is_unitary(u_t, UNITARY_TOL) {
        return Err(Error::NotUnitary {
            what: "U_T",
            deviation: unitary_deviation(u_t),
        });
    }
    let dev = basis.orthonormality_deviation();
    if dev > ORTHONORMAL_TOL {
        return Err(Error::NotOrthonormal { deviation: dev });
    }
    if psi_ab.len() != 4 {
        return Err(Error::InvalidParameter(format!(
            "input needs 4 amplitudes, got {}",
            psi_ab.len()
        )));
    }
    let norm = psi_ab.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized { norm });
    }

    let u = u_t * u1_gate();
    let betas = gate_betas(basis);
    let (xx, zz) = (
        PauliPair::new(Pauli::X, Pauli::X).matrix(),
        PauliPair::new(Pauli::Z, Pauli::Z).matrix(),
    );
    let clifford_case = is_clifford(&u, 1e-9) && betas.iter().all(|b| is_pauli(b, 1e-9));
    let target = apply4(u_t, psi_ab);
    let bells = bell_basis();

    let register =
        Register::from_state(tensor_state(psi_ab, &chi_state()))?.apply_gate(u_t, &[3, 4])?;

    let mut outcomes = Vec::with_capacity(16);
    for j in 0..4 {
        for k in 0..4 {
            let b = tensor(&betas[j], &betas[k]);
            let branch_xx = u * xx * b * u.adjoint();
            let branch_zz = u * zz * b * u.adjoint();
            let fx = tensor_factorize(&branch_xx, tol)?;
            let fz = tensor_factorize(&branch_zz, tol)?;

            let mut out = FourwayOutcome {
                j: j + 1,
                k: k + 1,
                probability: 0.0,
                branch_xx_separable: fx.separable,
                branch_zz_separable: fz.separable,
                branch_xx_pauli: pauli_label(&branch_xx, 1e-9),
                branch_zz_pauli: pauli_label(&branch_zz, 1e-9),
                output_state: None,
                fidelity: None,
                corrected_fidelity: None,
                structure_residual: None,
                bell_state: None,
            };

            let first = register.pair_probabilities((0, 2), basis)?[j];
            if first > ZERO_PROBABILITY {
                let (p1, r1) = register.measure_pair_forced((0, 2), basis, j)?;
                let p2 = r1.pair_probabilities((1, 5), basis)?[k];
                if p2 > ZERO_PROBABILITY {
                    let (_, r2) = r1.measure_pair_forced((1, 5), basis, k)?;
                    let state = r2.factor_out(&[3, 4])?;
                    out.probability = p1 * p2;

                    let predicted = apply4(&(u * (xx + zz) * b), psi_ab);
                    let pn = predicted.norm();
                    out.structure_residual = Some(if pn > 1e-12 {
                        phase_distance(&(predicted / C64::from(pn)), &state)
                    } else {
                        f64::INFINITY
                    });

                    let mut candidates = vec![Mat4::identity()];
                    candidates.extend(
                        [&fx, &fz]
                            .iter()
                            .filter_map(|f| f.inverse_factors())
                            .map(|(a, b)| tensor(&a, &b)),
                    );
                    out.fidelity = Some(fidelity(&target, &state));
                    out.corrected_fidelity = candidates
                        .iter()
                        .map(|c| fidelity(&target, &apply4(c, &state)))
                        .reduce(f64::max);
                    out.bell_state = bells
                        .vectors
                        .iter()
                        .position(|v| (fidelity(v, &state) - 1.0).abs() < 1e-9)
                        .map(|i| i + 1);
                    out.output_state = Some(state);
                }
            }
            outcomes.push(out);
        }
    }
    let max_corrected_fidelity = outcomes
        .iter()
        .filter_map(|o| o.corrected_fidelity)
        .fold(0.0, f64::max);
    let max_structure_residual = outcomes
        .iter()
        .filter_map(|o| o.structure_residual)
        .fold(0.0, f64::max);
    Ok(FourwayReport {
        effective_gate: u,
        clifford_case,
        outcomes,
        max_corrected_fidelity,
        max_structure_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{basis_from_gate_betas, m2_basis};
    use crate::gates::{c_pi8, cnot};
    use crate::linalg::{basis_state, haar_mat4, haar_state, HaarDim};
    use crate::separability::SEPARABILITY_TOL;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn chi_is_normalized_with_printed_signs() {
        let chi = chi_state();
        assert!((chi.norm() - 1.0).abs() < 1e-15);
        let amp = 1.0 / (2.0 * 2f64.sqrt());
        assert!((chi[0b0011].re + amp).abs() < 1e-15);
        assert_eq!(chi[0b0001].norm(), 0.0);
    }

    #[test]
    fn chi_marginals_are_maximally_mixed() {
        for ev in single_qubit_marginals(&chi_state()) {
            assert!((ev[0] - 0.5).abs() < 1e-12 && (ev[1] - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn u1_is_a_hermitian_involution() {
        let u1 = u1_gate();
        assert_eq!(u1[(2, 2)], C64::from(-1.0));
        assert!(is_unitary(&u1, 1e-15));
        assert_eq!(u1, u1.adjoint());
        assert_eq!(u1 * u1, Mat4::identity());
    }

    #[test]
    fn output_follows_the_two_branch_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..5 {
            let u = haar_mat4(&mut rng);
            let psi = haar_state(HaarDim::Four, &mut rng);
            for basis in [bell_basis(), m2_basis()] {
                let r = analyze_fourway(&u, &basis, &psi, SEPARABILITY_TOL).unwrap();
                assert!(
                    r.max_structure_residual < 1e-9,
                    "{}",
                    r.max_structure_residual
                );
                let total: f64 = r.outcomes.iter().map(|o| o.probability).sum();
                assert!((total - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn generic_gate_cannot_be_corrected() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let psi = haar_state(HaarDim::Four, &mut rng);
        let r = analyze_fourway(&c_pi8(), &bell_basis(), &psi, SEPARABILITY_TOL).unwrap();
        assert!(!r.clifford_case);
        assert!(
            r.max_corrected_fidelity < 1.0 - 1e-3,
            "{}",
            r.max_corrected_fidelity
        );
    }

    #[test]
    fn clifford_bell_case_gives_pauli_branches() {
        let u_t = cnot() * u1_gate().adjoint();
        let u = u_t * u1_gate();
        let psi = apply4(&u.adjoint(), &basis_state(2, 0));
        let r = analyze_fourway(&u_t, &bell_basis(), &psi, SEPARABILITY_TOL).unwrap();
        assert!(r.clifford_case);
        for o in &r.outcomes {
            assert!(o.branch_xx_separable && o.branch_zz_separable);
            assert!(o.branch_xx_pauli.is_some() && o.branch_zz_pauli.is_some());
            if let Some(s) = &o.output_state {
                let nonzero = s.iter().filter(|a| a.norm() > 1e-9).count();
                assert_eq!(nonzero, 2);
                let mags: Vec<f64> = s
                    .iter()
                    .filter(|a| a.norm() > 1e-9)
                    .map(|a| a.norm_sqr())
                    .collect();
                assert!((mags[0] - mags[1]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn relabeled_pauli_basis_counts_as_clifford() {
        let betas = crate::bases::bell_pauli_set();
        let b = basis_from_gate_betas("perm", &[betas[2], betas[0], betas[3], betas[1]]).unwrap();
        let psi = basis_state(2, 1);
        assert!(
            analyze_fourway(&Mat4::identity(), &b, &psi, SEPARABILITY_TOL)
                .unwrap()
                .clifford_case
        );
    }
}
