//! Two-qubit measurement bases and the 2×2 matrices they induce.
//!
//! A basis vector `|β⟩` and a two-qubit gate `U` give a 2×2 matrix of
//! overlaps `⟨β|U|xy⟩`. Two layouts are used:
//!
//! - state form: entry `(r, c) = ⟨β|U|r c⟩`, no scale factor. This is the
//!   layout of single-qubit teleportation, where the measured pair is
//!   (resource half, input qubit).
//! - gate form: entry `(r, c) = √2·⟨β|U|c r⟩`. This is the layout of gate
//!   teleportation, where each measured pair is (input qubit, resource half).
//!
//! A gate-form matrix is unitary exactly when its vector is maximally
//! entangled (`|det| = 1/2` for the 2×2 amplitude reshape).

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kak::nonlocal_part;
use crate::linalg::{
    check_finite, cis, is_unitary, reshape_state, state_from, unitary_deviation, Mat2, Mat4,
    StateVec, C64, I, ONE, UNITARY_TOL, ZERO,
};

/// Orthonormality tolerance for bases built from user input.
pub const ORTHONORMAL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct MeasurementBasis {
    pub name: String,
    #[serde(with = "crate::cli::format::statevec_array4")]
    pub vectors: [StateVec; 4],
}

impl MeasurementBasis {
    /// Build a basis, rejecting non-finite or non-orthonormal vectors.
    pub fn new(name: impl Into<String>, vectors: [StateVec; 4]) -> Result<Self> {
        let basis = Self::new_unchecked(name, vectors)?;
        let dev = basis.orthonormality_deviation();
        if dev > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal { deviation: dev });
        }
        Ok(basis)
    }

    /// Build a basis without the orthonormality check; dimensions and
    /// finiteness are still enforced.
    pub fn new_unchecked(name: impl Into<String>, vectors: [StateVec; 4]) -> Result<Self> {
        for v in &vectors {
            if v.len() != 4 {
                return Err(Error::InvalidParameter(format!(
                    "basis vectors must have 4 amplitudes, got {}",
                    v.len()
                )));
            }
            check_finite(v)?;
        }
        Ok(Self {
            name: name.into(),
            vectors,
        })
    }

    /// Basis from the columns of a 4×4 matrix.
    pub fn from_columns(name: impl Into<String>, m: &Mat4) -> Result<Self> {
        let vectors = [0, 1, 2, 3].map(|j| StateVec::from_iterator(4, m.column(j).iter().copied()));
        Self::new(name, vectors)
    }

    /// Matrix whose columns are the basis vectors.
    pub fn as_matrix(&self) -> Mat4 {
        Mat4::from_fn(|r, c| self.vectors[c][r])
    }

    /// `max_{ij} |⟨β_i|β_j⟩ − δ_ij|`.
    pub fn orthonormality_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let ip = self.vectors[i].dotc(&self.vectors[j]);
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((ip - target).norm());
            }
        }
        worst
    }

    pub fn is_orthonormal(&self, tol: f64) -> bool {
        self.orthonormality_deviation() <= tol
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    StateForm,
    GateForm,
}

#[derive(Clone, Debug, Serialize)]
pub struct BetaMatrices {
    #[serde(with = "crate::cli::format::mat2_array4")]
    pub mats: [Mat2; 4],
    pub convention: Convention,
}

impl BetaMatrices {
    pub fn all_unitary(&self, tol: f64) -> bool {
        self.mats.iter().all(|m| is_unitary(m, tol))
    }

    /// `‖Σ_j β_jβ_j† − 4I‖_F` (gate form) or `‖Σ_j β_jβ_j† − 2I‖_F` (state form).
    pub fn completeness_deviation(&self) -> f64 {
        let target = match self.convention {
            Convention::GateForm => 4.0,
            Convention::StateForm => 2.0,
        };
        let sum: Mat2 = self.mats.iter().map(|m| m * m.adjoint()).sum();
        (sum - Mat2::identity() * C64::from(target)).norm()
    }
}

/// Overlap matrices `⟨β_j|U|xy⟩` in the requested layout.
pub fn beta_matrices(
    basis: &MeasurementBasis,
    u_front: &Mat4,
    convention: Convention,
) -> BetaMatrices {
    let mats = basis.vectors.each_ref().map(|v| {
        // ⟨β|U|xy⟩ = (U†β)*[2x+y]
        let w = u_front.adjoint() * v;
        match convention {
            Convention::StateForm => Mat2::from_fn(|r, c| w[2 * r + c].conj()),
            Convention::GateForm => Mat2::from_fn(|r, c| w[2 * c + r].conj() * SQRT_2),
        }
    });
    BetaMatrices { mats, convention }
}

/// Gate-form matrices with `U = I`.
pub fn gate_betas(basis: &MeasurementBasis) -> [Mat2; 4] {
    beta_matrices(basis, &Mat4::identity(), Convention::GateForm).mats
}

/// Inverse of the gate-form map: the basis whose gate-form matrices (with
/// `U = I`) are the given `β_j`.
pub fn basis_from_gate_betas(
    name: impl Into<String>,
    betas: &[Mat2; 4],
) -> Result<MeasurementBasis> {
    let vectors = betas.each_ref().map(|b| {
        StateVec::from_fn(4, |i, _| {
            let (col, row) = (i / 2, i % 2);
            b[(row, col)].conj() * FRAC_1_SQRT_2
        })
    });
    MeasurementBasis::new(name, vectors)
}

fn real_vectors(name: &str, rows: [[f64; 4]; 4], scale: f64) -> MeasurementBasis {
    let vectors = rows.map(|r| state_from(&r.map(|x| C64::from(x * scale))));
    MeasurementBasis {
        name: name.to_string(),
        vectors,
    }
}

/// `{|00⟩+|11⟩, |01⟩+|10⟩, |00⟩−|11⟩, |01⟩−|10⟩}/√2`.
pub fn bell_basis() -> MeasurementBasis {
    real_vectors(
        "bell",
        [
            [1.0, 0.0, 0.0, 1.0],
            [0.0, 1.0, 1.0, 0.0],
            [1.0, 0.0, 0.0, -1.0],
            [0.0, 1.0, -1.0, 0.0],
        ],
        FRAC_1_SQRT_2,
    )
}

pub fn m1_basis() -> MeasurementBasis {
    real_vectors(
        "m1",
        [
            [-1.0, 1.0, 1.0, 1.0],
            [-1.0, 1.0, -1.0, -1.0],
            [-1.0, -1.0, 1.0, -1.0],
            [1.0, 1.0, 1.0, -1.0],
        ],
        0.5,
    )
}

pub fn m2_basis() -> MeasurementBasis {
    let h = C64::from(FRAC_1_SQRT_2);
    let ih = I * FRAC_1_SQRT_2;
    MeasurementBasis {
        name: "m2".to_string(),
        vectors: [
            state_from(&[ih, ZERO, ZERO, h]),
            state_from(&[ZERO, -ih, ih, ZERO]),
            state_from(&[ZERO, h, h, ZERO]),
            state_from(&[h, ZERO, ZERO, ih]),
        ],
    }
}

/// Computational basis: every vector is a product state.
pub fn computational_basis() -> MeasurementBasis {
    real_vectors(
        "computational",
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
        1.0,
    )
}

/// Real family `{(−a,b,b,a), (−b,a,−a,−b), (−a,−b,b,−a), (b,a,a,−b)}` on the
/// circle `a² + b² = 1/2`.
pub fn beta_ab_basis(a: f64, b: f64) -> Result<MeasurementBasis> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::NonFinite);
    }
    if (a * a + b * b - 0.5).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "beta_ab requires a² + b² = 1/2, got {}",
            a * a + b * b
        )));
    }
    let mut basis = real_vectors(
        "beta_ab",
        [
            [-a, b, b, a],
            [-b, a, -a, -b],
            [-a, -b, b, -a],
            [b, a, a, -b],
        ],
        1.0,
    );
    basis.name = format!("beta_ab:{a},{b}");
    Ok(basis)
}

/// Point on the `β_ab` circle: `(a, b) = (cos t, sin t)/√2`.
pub fn beta_ab_at(t: f64) -> MeasurementBasis {
    let (a, b) = (t.cos() * FRAC_1_SQRT_2, t.sin() * FRAC_1_SQRT_2);
    beta_ab_basis(a, b).expect("on the circle by construction")
}

/// Columns of `exp(i(θ₁σ_XX + θ₂σ_YY + θ₃σ_ZZ))`.
///
/// Always orthonormal; the induced matrices are unitary only when
/// `θ₁ ± θ₂ ≡ π/4 (mod π/2)`.
pub fn beta_nl_basis(theta1: f64, theta2: f64, theta3: f64) -> MeasurementBasis {
    let n = nonlocal_part([theta1, theta2, theta3]);
    MeasurementBasis {
        name: format!("beta_nl:{theta1},{theta2},{theta3}"),
        vectors: [0, 1, 2, 3].map(|j| StateVec::from_iterator(4, n.column(j).iter().copied())),
    }
}

/// The same four vectors with the factors of `i` on the `sin` amplitudes
/// dropped. Orthonormal only on a measure-zero set of angles.
pub fn beta_nl_printed_basis(theta1: f64, theta2: f64, theta3: f64) -> MeasurementBasis {
    let (cm, sm) = ((theta1 - theta2).cos(), (theta1 - theta2).sin());
    let (cp, sp) = ((theta1 + theta2).cos(), (theta1 + theta2).sin());
    let (e, ec) = (cis(theta3), cis(-theta3));
    MeasurementBasis {
        name: format!("beta_nl_printed:{theta1},{theta2},{theta3}"),
        vectors: [
            state_from(&[e * cm, ZERO, ZERO, e * sm]),
            state_from(&[ZERO, ec * cp, ec * sp, ZERO]),
            state_from(&[ZERO, ec * sp, ec * cp, ZERO]),
            state_from(&[e * sm, ZERO, ZERO, e * cm]),
        ],
    }
}

/// Basis whose gate-form matrices are `U_R†σ_jU_R` for `σ_j ∈ {I, X, Z, −iY}`.
pub fn conjugated_pauli_basis(u_r: &Mat2) -> Result<MeasurementBasis> {
    check_finite(u_r)?;
    if !is_unitary(u_r, UNITARY_TOL) {
        return Err(Error::NotUnitary {
            what: "U_R",
            deviation: unitary_deviation(u_r),
        });
    }
    let sigmas = bell_pauli_set();
    let betas = sigmas.map(|s| u_r.adjoint() * s * u_r);
    basis_from_gate_betas("pauli_conj", &betas)
}

/// `{I, X, Z, −iY}`, the gate-form set of the Bell basis in its order.
pub fn bell_pauli_set() -> [Mat2; 4] {
    let minus_iy = Mat2::new(ZERO, -ONE, ONE, ZERO);
    [
        Mat2::identity(),
        crate::linalg::Pauli::X.matrix(),
        crate::linalg::Pauli::Z.matrix(),
        minus_iy,
    ]
}

/// `{(|U₀₀⟩ ± e^{iα}|U₁₁⟩)/√2, (|U₀₁⟩ ± e^{iβ}|U₁₀⟩)/√2}` with `|U_xy⟩ = U|xy⟩`.
pub fn shifted_basis(u: &Mat4, alpha: f64, beta: f64) -> Result<MeasurementBasis> {
    let col = |i: usize| StateVec::from_iterator(4, u.column(i).iter().copied());
    let (u00, u01, u10, u11) = (col(0), col(1), col(2), col(3));
    let (ea, eb) = (cis(alpha), cis(beta));
    let s = C64::from(FRAC_1_SQRT_2);
    MeasurementBasis::new(
        format!("shifted:{alpha},{beta}"),
        [
            (&u00 + &u11 * ea) * s,
            (&u00 - &u11 * ea) * s,
            (&u01 + &u10 * eb) * s,
            (&u01 - &u10 * eb) * s,
        ],
    )
}

/// Basis from the columns of a Haar-random unitary.
pub fn haar_basis<R: rand::Rng + ?Sized>(rng: &mut R) -> MeasurementBasis {
    let u = crate::linalg::haar_mat4(rng);
    MeasurementBasis::from_columns("haar", &u).expect("unitary columns are orthonormal")
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub name: String,
    pub orthonormal: bool,
    pub orthonormality_deviation: f64,
    pub all_beta_unitary: bool,
    /// `|det|` of each vector's 2×2 amplitude reshape; 1/2 is maximal.
    pub per_vector_entanglement: [f64; 4],
    /// Orthonormal with all gate-form matrices unitary; otherwise every
    /// gate-teleportation outcome fails.
    pub teleportation_capable: bool,
}

pub fn validate_basis(basis: &MeasurementBasis, tol: f64) -> BasisReport {
    let dev = basis.orthonormality_deviation();
    let orthonormal = dev <= tol;
    let all_beta_unitary =
        beta_matrices(basis, &Mat4::identity(), Convention::GateForm).all_unitary(tol);
    let per_vector_entanglement = basis.vectors.each_ref().map(|v| {
        let m = reshape_state(v);
        m.determinant().norm()
    });
    BasisReport {
        name: basis.name.clone(),
        orthonormal,
        orthonormality_deviation: dev,
        all_beta_unitary,
        per_vector_entanglement,
        teleportation_capable: orthonormal && all_beta_unitary,
    }
}

/// The `(θ₁, θ₂)` pairs listed as valid for `β_NL`, in units of `π/4`.
pub const BETA_NL_LISTED: [(i32, i32); 26] = [
    (0, 1),
    (0, -1),
    (1, 0),
    (-1, 0),
    (0, 3),
    (0, -3),
    (3, 0),
    (-3, 0),
    (4, 1),
    (1, 4),
    (2, 1),
    (2, -1),
    (-2, 1),
    (-2, -1),
    (1, 2),
    (1, -2),
    (-1, 2),
    (-1, -2),
    (2, 3),
    (2, -3),
    (-2, 3),
    (-2, -3),
    (3, 2),
    (3, -2),
    (-3, 2),
    (-3, -2),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{equal_up_to_global_phase, haar_mat2, Pauli};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_4;

    fn close(a: &Mat2, b: &Mat2) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn builtin_bases_are_orthonormal() {
        for b in [
            bell_basis(),
            m1_basis(),
            m2_basis(),
            computational_basis(),
            beta_ab_basis(0.5, 0.5).unwrap(),
        ] {
            assert!(b.orthonormality_deviation() < 1e-12, "{}", b.name);
        }
    }

    #[test]
    fn bell_gate_form_is_the_pauli_set() {
        let betas = gate_betas(&bell_basis());
        let expected = bell_pauli_set();
        for j in 0..4 {
            assert!(close(&betas[j], &expected[j]), "{j}");
        }
        let rep = validate_basis(&bell_basis(), 1e-9);
        assert!(rep.all_beta_unitary);
        assert!(rep
            .per_vector_entanglement
            .iter()
            .all(|e| (e - 0.5).abs() < 1e-12));
    }

    #[test]
    fn m2_gate_form_set() {
        let betas = gate_betas(&m2_basis());
        let p = crate::gates::s_gate();
        // the third vector (|01⟩+|10⟩)/√2 induces σ_X, not the identity
        let expected = [
            p * (-I),
            Pauli::Y.matrix(),
            Pauli::X.matrix(),
            p * Pauli::Z.matrix(),
        ];
        for j in 0..4 {
            assert!(close(&betas[j], &expected[j]), "{j}: {}", betas[j]);
        }
        assert!(!equal_up_to_global_phase(
            &betas[2],
            &Mat2::identity(),
            1e-6
        ));
    }

    #[test]
    fn m1_is_a_beta_ab_member() {
        let a = beta_ab_basis(0.5, 0.5).unwrap();
        let m1 = m1_basis();
        for j in 0..4 {
            assert!((&a.vectors[j] - &m1.vectors[j]).norm() < 1e-15);
        }
        let rep = validate_basis(&m1, 1e-9);
        assert!(rep.orthonormal && rep.all_beta_unitary);
    }

    #[test]
    fn beta_ab_matrices_match_the_closed_form_up_to_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            let (a, b) = (t.cos() * FRAC_1_SQRT_2, t.sin() * FRAC_1_SQRT_2);
            let betas = gate_betas(&beta_ab_basis(a, b).unwrap());
            let r = |m: [[f64; 2]; 2]| crate::linalg::real_mat2(m) * C64::from(SQRT_2);
            let printed = [
                r([[a, -b], [-b, -a]]),
                r([[b, a], [-a, b]]),
                r([[a, -b], [b, a]]),
                r([[-b, -a], [-a, b]]),
            ];
            for j in 0..4 {
                // the computed layout is the exact negative of the closed form
                assert!(close(&betas[j], &(-printed[j])), "{j}");
                assert!(equal_up_to_global_phase(&betas[j], &printed[j], 1e-10));
            }
        }
    }

    #[test]
    fn beta_ab_edge_point_is_z() {
        let betas = gate_betas(&beta_ab_basis(FRAC_1_SQRT_2, 0.0).unwrap());
        assert!(equal_up_to_global_phase(
            &betas[0],
            &Pauli::Z.matrix(),
            1e-12
        ));
    }

    #[test]
    fn beta_ab_rejects_off_circle() {
        assert!(beta_ab_basis(0.5, 0.2).is_err());
    }

    #[test]
    fn beta_ab_circle_is_unitary() {
        for i in 0..100 {
            let b = beta_ab_at(i as f64 * std::f64::consts::TAU / 100.0);
            let rep = validate_basis(&b, 1e-9);
            assert!(rep.orthonormal && rep.all_beta_unitary, "{i}");
        }
    }

    #[test]
    fn beta_nl_examples() {
        let ok = validate_basis(&beta_nl_basis(0.0, FRAC_PI_4, 0.37), 1e-9);
        assert!(ok.teleportation_capable);
        let ok = validate_basis(&beta_nl_basis(FRAC_PI_4, 2.0 * FRAC_PI_4, 0.0), 1e-9);
        assert!(ok.teleportation_capable);
        let bad = validate_basis(&beta_nl_basis(0.3, 0.1, 0.0), 1e-9);
        assert!(bad.orthonormal && !bad.all_beta_unitary && !bad.teleportation_capable);
    }

    #[test]
    fn beta_nl_listed_pairs_are_valid() {
        let failing: Vec<_> = BETA_NL_LISTED
            .iter()
            .filter(|(p, q)| {
                let b = beta_nl_basis(*p as f64 * FRAC_PI_4, *q as f64 * FRAC_PI_4, 0.37);
                !validate_basis(&b, 1e-9).teleportation_capable
            })
            .collect();
        assert!(failing.is_empty(), "{failing:?}");
    }

    #[test]
    fn beta_nl_without_phases_is_not_a_basis() {
        let b = beta_nl_printed_basis(0.0, FRAC_PI_4, 0.37);
        assert!(b.orthonormality_deviation() > 0.5);
    }

    #[test]
    fn product_vectors_break_unitarity() {
        let rep = validate_basis(&computational_basis(), 1e-9);
        assert!(rep.orthonormal && !rep.all_beta_unitary && !rep.teleportation_capable);
        assert!(rep.per_vector_entanglement.iter().all(|e| *e < 1e-15));
    }

    #[test]
    fn completeness_holds_in_both_layouts() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let basis = haar_basis(&mut rng);
            let u = crate::linalg::haar_mat4(&mut rng);
            assert!(
                beta_matrices(&basis, &u, Convention::GateForm).completeness_deviation() < 1e-9
            );
            assert!(
                beta_matrices(&basis, &u, Convention::StateForm).completeness_deviation() < 1e-9
            );
        }
    }

    #[test]
    fn unitarity_iff_maximal_entanglement() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut bases: Vec<MeasurementBasis> = (0..30).map(|_| haar_basis(&mut rng)).collect();
        bases.extend((0..30).map(|i| beta_ab_at(i as f64 * 0.2)));
        for _ in 0..30 {
            let (t1, t2) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            bases.push(beta_nl_basis(t1, t2, 0.1));
        }
        bases.push(beta_nl_basis(0.0, FRAC_PI_4, 1.0));
        for b in &bases {
            let betas = gate_betas(b);
            let rep = validate_basis(b, 1e-9);
            for (j, beta) in betas.iter().enumerate() {
                let unitary = is_unitary(beta, 1e-9);
                let maximal = (rep.per_vector_entanglement[j] - 0.5).abs() < 1e-9;
                assert_eq!(unitary, maximal, "{} vector {j}", b.name);
            }
        }
    }

    #[test]
    fn conjugated_pauli_round_trip_and_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let bell = conjugated_pauli_basis(&Mat2::identity()).unwrap();
        for j in 0..4 {
            assert!((&bell.vectors[j] - &bell_basis().vectors[j]).norm() < 1e-15);
        }
        for u_r in [
            crate::gates::hadamard(),
            haar_mat2(&mut rng),
            haar_mat2(&mut rng),
        ] {
            let basis = conjugated_pauli_basis(&u_r).unwrap();
            let betas = gate_betas(&basis);
            let sig = bell_pauli_set();
            for j in 0..4 {
                assert!((betas[j] - u_r.adjoint() * sig[j] * u_r).norm() < 1e-10);
            }
            for j in 0..4 {
                for k in 0..4 {
                    let prod = betas[j] * betas[k];
                    assert!(betas
                        .iter()
                        .any(|m| equal_up_to_global_phase(&prod, m, 1e-10)));
                }
            }
        }
    }

    #[test]
    fn shifted_basis_is_orthonormal_for_any_phases() {
        let u = crate::gates::hadamard_c_pi8();
        for (a, b) in [
            (FRAC_PI_4, FRAC_PI_4),
            (FRAC_PI_4, 2.0 * FRAC_PI_4),
            (0.3, -1.2),
        ] {
            assert!(shifted_basis(&u, a, b).is_ok());
        }
    }

    #[test]
    fn rejects_non_orthonormal_input() {
        let v = state_from(&[ONE, ZERO, ZERO, ZERO]);
        let vs = [v.clone(), v.clone(), v.clone(), v];
        assert!(matches!(
            MeasurementBasis::new("x", vs),
            Err(Error::NotOrthonormal { .. })
        ));
    }
}
