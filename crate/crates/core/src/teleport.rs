//! State and gate teleportation analysis.
//!
//! Single-qubit teleportation through a resource `ψ` (2×2 amplitude matrix),
//! a front gate `U` and a basis `{β_j}` leaves `M_j·ξ` on the output qubit,
//! with `M_j = ψ·β_{U,j}` (state form). Outcome `j` occurs with
//! `p_j = tr(M_j†M_j)/2` and is correctable iff `M_j†M_j ∝ I`; then
//! `V_j = M_j/√p_j` is unitary and `V_j†` undoes it.
//!
//! Two-qubit gate teleportation leaves `U_T(β_j⊗β_k)|ψ⟩ = W_jk·U_T|ψ⟩`
//! (gate form), so outcome `(j, k)` is locally correctable exactly when
//! `W_jk = U_T(β_j⊗β_k)U_T†` is a tensor product. The success probability
//! is the fraction of such outcomes.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

use rayon::prelude::*;
use serde::Serialize;

use crate::bases::{
    bell_basis, beta_matrices, gate_betas, m1_basis, m2_basis, Convention, MeasurementBasis,
    ORTHONORMAL_TOL,
};
use crate::error::{Error, Result};
use crate::gates::{c_pi8, cnot, cnot_sqrt, exp_yy, hadamard, s_gate, swap_sqrt};
use crate::kak::{classify_nonlocal, euler_zyz, kak_decompose, nonlocal_part, NonlocalClass};
use crate::linalg::{
    check_finite, equal_up_to_global_phase, frobenius, is_unitary, reshape_state, tensor,
    unitary_deviation, Mat2, Mat4, Pauli, StateVec, C64, I, UNITARY_TOL, ZERO,
};
use crate::separability::{rank_one_defect, tensor_factorize, SEPARABILITY_TOL};

/// Tolerance on `‖M†M − (tr(M†M)/2)·I‖_F`.
pub const PROPORTIONALITY_TOL: f64 = 1e-8;

/// Probabilities at or below this are treated as impossible outcomes.
pub const ZERO_PROBABILITY: f64 = 1e-12;

/// Two-qubit resource state held as its 2×2 amplitude matrix `ψ[x][y]`.
#[derive(Clone, Debug, Serialize)]
pub struct ResourceState {
    #[serde(with = "crate::cli::format::mat2")]
    psi: Mat2,
}

impl ResourceState {
    pub fn new(psi: Mat2) -> Result<Self> {
        check_finite(&psi)?;
        let norm = frobenius(&psi);
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { psi })
    }

    pub fn from_state(v: &StateVec) -> Result<Self> {
        if v.len() != 4 {
            return Err(Error::InvalidParameter(format!(
                "resource needs 4 amplitudes, got {}",
                v.len()
            )));
        }
        Self::new(reshape_state(v))
    }

    /// `(|00⟩ + |11⟩)/√2`.
    pub fn bell() -> Self {
        Self {
            psi: Mat2::identity() * C64::from(FRAC_1_SQRT_2),
        }
    }

    pub fn psi(&self) -> &Mat2 {
        &self.psi
    }

    pub fn to_state(&self) -> StateVec {
        StateVec::from_fn(4, |i, _| self.psi[(i / 2, i % 2)])
    }

    /// `|det ψ|`: 1/2 for maximally entangled, 0 for product resources.
    pub fn entanglement(&self) -> f64 {
        self.psi.determinant().norm()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StateOutcome {
    /// 1-based outcome label.
    pub index: usize,
    pub probability: f64,
    #[serde(with = "crate::cli::format::mat2")]
    pub m_matrix: Mat2,
    pub teleportable: bool,
    /// `V_j = M_j/√p_j`.
    #[serde(with = "crate::cli::format::opt_mat2")]
    pub v_matrix: Option<Mat2>,
    /// `V_j†`, applied to the output qubit.
    #[serde(with = "crate::cli::format::opt_mat2")]
    pub correction: Option<Mat2>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StateTeleportReport {
    pub outcomes: Vec<StateOutcome>,
    /// Every outcome that can occur is correctable.
    pub deterministic: bool,
    pub entanglement: f64,
}

impl StateTeleportReport {
    pub fn probabilities(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|j| self.outcomes[j].probability)
    }

    pub fn corrections(&self) -> [Option<Mat2>; 4] {
        [0, 1, 2, 3].map(|j| self.outcomes[j].correction)
    }
}

fn require_unitary(m: &Mat4, what: &'static str) -> Result<()> {
    check_finite(m)?;
    if !is_unitary(m, UNITARY_TOL) {
        return Err(Error::NotUnitary {
            what,
            deviation: unitary_deviation(m),
        });
    }
    Ok(())
}

fn require_orthonormal(basis: &MeasurementBasis) -> Result<()> {
    let dev = basis.orthonormality_deviation();
    if dev > ORTHONORMAL_TOL {
        return Err(Error::NotOrthonormal { deviation: dev });
    }
    Ok(())
}

pub fn analyze_state_teleport(
    resource: &ResourceState,
    u_front: &Mat4,
    basis: &MeasurementBasis,
    tol: f64,
) -> Result<StateTeleportReport> {
    require_unitary(u_front, "U")?;
    require_orthonormal(basis)?;
    let betas = beta_matrices(basis, u_front, Convention::StateForm);
    let outcomes: Vec<StateOutcome> = betas
        .mats
        .iter()
        .enumerate()
        .map(|(j, beta)| {
            let m = resource.psi * beta;
            let mm = m.adjoint() * m;
            let p = (mm.trace().re / 2.0).max(0.0);
            let proportional = frobenius(&(mm - Mat2::identity() * C64::from(p))) <= tol;
            let teleportable = p > ZERO_PROBABILITY && proportional;
            let v = teleportable.then(|| m / C64::from(p.sqrt()));
            StateOutcome {
                index: j + 1,
                probability: p,
                m_matrix: m,
                teleportable,
                v_matrix: v,
                correction: v.map(|v| v.adjoint()),
            }
        })
        .collect();
    let deterministic = outcomes
        .iter()
        .all(|o| o.teleportable || o.probability <= ZERO_PROBABILITY);
    Ok(StateTeleportReport {
        outcomes,
        deterministic,
        entanglement: resource.entanglement(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GateOutcome {
    /// 1-based labels of the two measurement results.
    pub j: usize,
    pub k: usize,
    #[serde(with = "crate::cli::format::mat4")]
    pub w_matrix: Mat4,
    pub separable: bool,
    pub schmidt_values: [f64; 4],
    /// `(V_j, V_k)` with `W = e^{iφ}·V_j⊗V_k`.
    #[serde(with = "crate::cli::format::opt_mat2_pair")]
    pub factors: Option<(Mat2, Mat2)>,
    pub phase: f64,
    /// `(V_j†, V_k†)`, applied to the two output qubits.
    #[serde(with = "crate::cli::format::opt_mat2_pair")]
    pub corrections: Option<(Mat2, Mat2)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GateTeleportReport {
    pub outcomes: Vec<GateOutcome>,
    pub n_separable: usize,
    pub success_probability: f64,
    pub deterministic: bool,
    /// False when some basis vector is not maximally entangled; then no
    /// outcome is correctable.
    pub all_beta_unitary: bool,
}

impl GateTeleportReport {
    /// Corrections indexed `4(j−1) + (k−1)`, in the layout the simulator takes.
    pub fn corrections(&self) -> [Option<(Mat2, Mat2)>; 16] {
        std::array::from_fn(|i| self.outcomes[i].corrections)
    }

    pub fn separable_grid(&self) -> [[bool; 4]; 4] {
        std::array::from_fn(|j| std::array::from_fn(|k| self.outcomes[4 * j + k].separable))
    }
}

/// Enumerate the 16 outcomes of gate teleportation.
pub fn analyze_gate_teleport(
    u_t: &Mat4,
    basis: &MeasurementBasis,
    u_front: &Mat4,
    tol: f64,
) -> Result<GateTeleportReport> {
    require_unitary(u_t, "U_T")?;
    require_unitary(u_front, "U")?;
    require_orthonormal(basis)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let betas = beta_matrices(basis, u_front, Convention::GateForm);
    let all_beta_unitary = betas.all_unitary(UNITARY_TOL);
    let mut outcomes = Vec::with_capacity(16);
    for j in 0..4 {
        for k in 0..4 {
            let w = u_t * tensor(&betas.mats[j], &betas.mats[k]) * u_t.adjoint();
            let mut out = GateOutcome {
                j: j + 1,
                k: k + 1,
                w_matrix: w,
                separable: false,
                schmidt_values: crate::separability::operator_schmidt(&w),
                factors: None,
                phase: 0.0,
                corrections: None,
            };
            if all_beta_unitary {
                let f = tensor_factorize(&w, tol)?;
                out.separable = f.separable;
                out.schmidt_values = f.schmidt_values;
                out.phase = f.phase;
                out.factors = f.factor_a.zip(f.factor_b);
                out.corrections = f.inverse_factors();
            }
            outcomes.push(out);
        }
    }
    let n_separable = outcomes.iter().filter(|o| o.separable).count();
    Ok(GateTeleportReport {
        outcomes,
        n_separable,
        success_probability: n_separable as f64 / 16.0,
        deterministic: n_separable == 16,
        all_beta_unitary,
    })
}

/// Which Euler angles of the conjugated basis matrices must be multiples of `π`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EulerPattern {
    /// All three (the conjugated matrices are Paulis up to phase).
    All,
    /// Only `λ₂`: diagonal or antidiagonal matrices.
    Middle,
    /// `λ₁` and `λ₃`.
    Outer,
    /// No constraint: the non-local part is itself a tensor product.
    Free,
}

impl EulerPattern {
    fn for_delta(delta: [bool; 3]) -> Self {
        match delta {
            [false, false, false] => Self::Free,
            [true, _, _] | [false, true, true] => Self::All,
            [false, false, true] => Self::Middle,
            [false, true, false] => Self::Outer,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition1Witness {
    /// Name of the right-local frame `(C, D)` the search succeeded in.
    pub frame: String,
    /// Lattice angles `θ'` of the non-local part in that frame.
    pub theta: [f64; 3],
    pub delta: [bool; 3],
    pub k: [i64; 3],
    pub pattern: EulerPattern,
    /// `n_i` with `λ_i = n_i·π` for `C·β_j·C†`, one row per `j`; `None` marks a free angle.
    pub n: [[Option<i64>; 3]; 4],
    /// `m_i` with `ω_i = m_i·π` for `D·β_k·D†`.
    pub m: [[Option<i64>; 3]; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Deterministic,
    NotCovered,
}

#[derive(Clone, Debug, Serialize)]
pub struct SufficientVerdict {
    pub theta: [f64; 3],
    pub class: NonlocalClass,
    pub all_beta_unitary: bool,
    pub condition1_met: bool,
    pub condition1: Option<Condition1Witness>,
    pub condition2_met: bool,
    pub conclusion: Conclusion,
}

fn near_multiple(x: f64, period: f64, tol: f64) -> Option<i64> {
    let n = (x / period).round();
    ((x - n * period).abs() <= tol).then_some(n as i64)
}

/// Integer witnesses for `u = e^{iα}Rz(n₁π)Ry(n₂π)Rz(n₃π)` (or the relaxed
/// patterns), resolving the Euler gauge freedom at `λ₂ ∈ {0, π}`.
fn euler_lattice(u: &Mat2, pattern: EulerPattern, tol: f64) -> Option<[Option<i64>; 3]> {
    if pattern == EulerPattern::Free {
        return Some([None; 3]);
    }
    let e = euler_zyz(u);
    let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
    let v = u * C64::from_polar(1.0, -det.arg() / 2.0);
    let n2 = near_multiple(e.lambda2, PI, tol);
    // with λ₂ ≡ 0 only λ₁+λ₃ is fixed; with λ₂ ≡ π only λ₁−λ₃
    let combined = match n2 {
        Some(n) if n % 2 == 0 => Some(-2.0 * v[(0, 0)].arg()),
        Some(_) => Some(2.0 * v[(1, 0)].arg()),
        None => None,
    };
    match pattern {
        EulerPattern::Middle => n2.map(|n| [None, Some(n), None]),
        EulerPattern::All => {
            let n2 = n2?;
            let n1 = near_multiple(combined?, PI, tol)?;
            Some([Some(n1), Some(n2), Some(0)])
        }
        EulerPattern::Outer => match combined {
            Some(c) => near_multiple(c, PI, tol).map(|n1| [Some(n1), None, Some(0)]),
            None => {
                let n1 = near_multiple(e.lambda1, PI, tol)?;
                let n3 = near_multiple(e.lambda3, PI, tol)?;
                Some([Some(n1), None, Some(n3)])
            }
        },
        EulerPattern::Free => unreachable!(),
    }
}

/// `U_R` with `U_R·β_j·U_R†` a Pauli (up to phase) for every `j`, if the
/// basis matrices form a conjugated Pauli group.
pub fn pauli_frame(betas: &[Mat2; 4]) -> Option<Mat2> {
    let tol = 1e-9;
    // traceless members rescaled to Hermitian involutions
    let hermitian: Vec<Mat2> = betas
        .iter()
        .filter(|b| b.trace().norm() < 1e-9)
        .map(|b| {
            let sq = b * b;
            let phase = sq[(0, 0)].sqrt();
            b / phase
        })
        .filter(|h| (h - h.adjoint()).norm() < tol)
        .collect();
    if hermitian.len() < 2 {
        return None;
    }
    let (ha, hb) = (&hermitian[0], &hermitian[1]);
    let proj = hb + Mat2::identity();
    let col = if proj.column(0).norm() >= proj.column(1).norm() {
        0
    } else {
        1
    };
    let v0 = proj.column(col) / C64::from(proj.column(col).norm());
    let v1 = ha * v0;
    let v = Mat2::from_columns(&[v0, v1]);
    if !is_unitary(&v, 1e-9) {
        return None;
    }
    let u_r = v.adjoint();
    let paulis = Pauli::ALL.map(|p| p.matrix());
    betas
        .iter()
        .all(|b| {
            let c = u_r * b * u_r.adjoint();
            paulis.iter().any(|p| equal_up_to_global_phase(&c, p, 1e-9))
        })
        .then_some(u_r)
}

/// Representatives of the single-qubit Clifford group modulo Paulis, one per
/// permutation of the axes.
fn clifford_cosets() -> [(&'static str, Mat2); 6] {
    let (h, s) = (hadamard(), s_gate());
    [
        ("I", Mat2::identity()),
        ("H", h),
        ("S", s),
        ("HSH", h * s * h),
        ("SH", s * h),
        ("HS", h * s),
    ]
}

/// Triples in `{0, ±π/4}³` with `nonzero` non-zero entries.
fn lattice_offsets(nonzero: usize) -> impl Iterator<Item = [f64; 3]> {
    let vals = [0.0, FRAC_PI_4, -FRAC_PI_4];
    vals.into_iter()
        .flat_map(move |a| {
            vals.into_iter()
                .flat_map(move |b| vals.into_iter().map(move |c| [a, b, c]))
        })
        .filter(move |t| t.iter().filter(|x| **x != 0.0).count() == nonzero)
}

/// Check the sufficient conditions for deterministic gate teleportation.
///
/// Condition 2 is the swap point of the canonical angles. For condition 1 a
/// search runs over candidate right-local frames `(C, D)` (the canonical
/// decomposition's, the identity, and a Pauli frame adapted to the basis,
/// each times Clifford coset representatives on either side) and over lattice angle triples `θ' ∈ {0, ±π/4}³`. A candidate counts only
/// if `U_T·(C⊗D)†·N(θ')†` is verified to be a tensor product, i.e. it is a
/// genuine decomposition of `U_T`, and the Euler pattern demanded by `θ'`
/// holds for every `C·β_j·C†` and `D·β_k·D†`.
pub fn sufficient_conditions_check(
    u_t: &Mat4,
    basis: &MeasurementBasis,
    tol: f64,
) -> Result<SufficientVerdict> {
    require_unitary(u_t, "U_T")?;
    require_orthonormal(basis)?;
    let dec = kak_decompose(u_t, UNITARY_TOL)?;
    let class = classify_nonlocal(dec.theta, tol);
    let betas = gate_betas(basis);
    let all_beta_unitary = betas.iter().all(|b| is_unitary(b, UNITARY_TOL));
    let condition2_met = class.is_swap_point && all_beta_unitary;

    let mut condition1 = None;
    if all_beta_unitary && !class.generic_angle {
        let mut frames: Vec<(String, Mat2, Mat2)> = Vec::with_capacity(3);
        if let Some(u_r) = pauli_frame(&betas) {
            frames.push(("pauli".into(), u_r, u_r));
        }
        frames.push(("kak".into(), dec.c_local, dec.d_local));
        frames.push(("identity".into(), Mat2::identity(), Mat2::identity()));
        let nonzero = class.odd_quarter_pi.iter().filter(|b| **b).count();
        let cosets = clifford_cosets();
        let mut candidates = Vec::with_capacity(frames.len() * 36);
        for (name, c0, d0) in &frames {
            for (ka, a) in &cosets {
                for (kb, b) in &cosets {
                    candidates.push((format!("{name}:{ka},{kb}"), a * c0, b * d0));
                }
            }
        }
        'search: for (name, c, d) in candidates {
            let (c, d) = (&c, &d);
            let cd = tensor(c, d);
            for theta in lattice_offsets(nonzero) {
                let outer = u_t * cd.adjoint() * nonlocal_part(theta).adjoint();
                if rank_one_defect(&outer) > 1e-8
                    || !tensor_factorize(&outer, SEPARABILITY_TOL)?.separable
                {
                    continue;
                }
                let lattice = classify_nonlocal(theta, tol);
                let pattern = EulerPattern::for_delta(lattice.delta);
                let n: Option<Vec<_>> = betas
                    .iter()
                    .map(|b| euler_lattice(&(c * b * c.adjoint()), pattern, tol))
                    .collect();
                let m: Option<Vec<_>> = betas
                    .iter()
                    .map(|b| euler_lattice(&(d * b * d.adjoint()), pattern, tol))
                    .collect();
                if let (Some(n), Some(m)) = (n, m) {
                    condition1 = Some(Condition1Witness {
                        frame: name,
                        theta,
                        delta: lattice.delta,
                        k: lattice.k,
                        pattern,
                        n: n.try_into().expect("four rows"),
                        m: m.try_into().expect("four rows"),
                    });
                    break 'search;
                }
            }
        }
    }
    let condition1_met = condition1.is_some();
    Ok(SufficientVerdict {
        theta: dec.theta,
        class,
        all_beta_unitary,
        condition1_met,
        condition1,
        condition2_met,
        conclusion: if condition1_met || condition2_met {
            Conclusion::Deterministic
        } else {
            Conclusion::NotCovered
        },
    })
}

/// `V_a = [[0, −i·e^{−ia}], [i·e^{ia}, 0]]`.
pub fn v_matrix(a: f64) -> Mat2 {
    Mat2::new(
        ZERO,
        -I * C64::from_polar(1.0, -a),
        I * C64::from_polar(1.0, a),
        ZERO,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorTableEntry {
    pub j: usize,
    pub k: usize,
    /// Symbolic `A ⊗ B` with `T(β_j⊗β_k)T† = A⊗B` up to phase.
    pub label: String,
    /// The symbolic entry as listed in the published table.
    pub printed_label: String,
    #[serde(with = "crate::cli::format::mat2")]
    pub factor_a: Mat2,
    #[serde(with = "crate::cli::format::mat2")]
    pub factor_b: Mat2,
}

/// Symbolic factor pairs of `T(φ,ξ)·(β_j⊗β_k)·T(φ,ξ)†` under `M₂`.
///
/// Entry (4, 2) is listed with its two factors in the opposite order; the
/// returned factors are the ones that reproduce the operator.
pub fn t_gate_factor_table(phi: f64, xi: f64) -> Vec<FactorTableEntry> {
    let p = s_gate();
    let (z, y, x) = (Pauli::Z.matrix(), Pauli::Y.matrix(), Pauli::X.matrix());
    let (vp, vx) = (v_matrix(phi), v_matrix(xi));
    let neg = |m: Mat2| -m;
    let i = |m: Mat2| m * I;
    let rows: [(usize, usize, &str, &str, Mat2, Mat2); 16] = [
        (1, 1, "P ⊗ −P", "P ⊗ −P", p, neg(p)),
        (1, 2, "Pσz ⊗ −Vφσz", "Pσz ⊗ −Vφσz", p * z, neg(vp * z)),
        (1, 3, "Pσz ⊗ iVφ", "Pσz ⊗ iVφ", p * z, i(vp)),
        (1, 4, "P ⊗ PσYσX", "P ⊗ PσYσX", p, p * y * x),
        (2, 1, "−Vξσz ⊗ Pσz", "−Vξσz ⊗ Pσz", neg(vx * z), p * z),
        (2, 2, "Vξ ⊗ Vφ", "Vξ ⊗ Vφ", vx, vp),
        (2, 3, "Vξ ⊗ −Vφσz", "Vξ ⊗ −Vφσz", vx, neg(vp * z)),
        (2, 4, "−Vξσz ⊗ iP", "−Vξσz ⊗ iP", neg(vx * z), i(p)),
        (3, 1, "Vξ ⊗ iPσz", "Vξ ⊗ iPσz", vx, i(p * z)),
        (3, 2, "−Vξσz ⊗ iVφ", "−Vξσz ⊗ iVφ", neg(vx * z), i(vp)),
        (3, 3, "Vξσz ⊗ −Vφσz", "Vξσz ⊗ −Vφσz", vx * z, neg(vp * z)),
        (3, 4, "−Vξ ⊗ P", "−Vξ ⊗ P", neg(vx), p),
        (4, 1, "PσYσX ⊗ P", "PσYσX ⊗ P", p * y * x, p),
        (4, 2, "iP ⊗ −Vφσz", "−Vφσz ⊗ iP", i(p), neg(vp * z)),
        (4, 3, "P ⊗ −Vφ", "P ⊗ −Vφ", p, neg(vp)),
        (4, 4, "Pσz ⊗ Pσz", "Pσz ⊗ Pσz", p * z, p * z),
    ];
    rows.into_iter()
        .map(|(j, k, label, printed, a, b)| FactorTableEntry {
            j,
            k,
            label: label.to_string(),
            printed_label: printed.to_string(),
            factor_a: a,
            factor_b: b,
        })
        .collect()
}

/// The five gates and three bases of the success-probability table.
pub fn success_table_gates() -> [(&'static str, Mat4); 5] {
    [
        ("CNOT", cnot()),
        ("C_pi/8", c_pi8()),
        ("CNOT^1/2", cnot_sqrt()),
        ("SWAP^1/2", swap_sqrt()),
        ("exp(i pi/4 YY)", exp_yy()),
    ]
}

pub fn success_table_bases() -> [MeasurementBasis; 3] {
    [bell_basis(), m1_basis(), m2_basis()]
}

pub const SUCCESS_TABLE_EXPECTED: [[f64; 3]; 5] = [
    [1.0, 0.0, 0.5],
    [0.5, 0.0, 0.5],
    [0.5, 0.0, 0.25],
    [0.25, 0.25, 0.25],
    [1.0, 1.0, 0.25],
];

/// Success probabilities, rows = gates, columns = (Bell, M₁, M₂).
pub fn reproduce_success_table() -> Result<[[f64; 3]; 5]> {
    success_table_with_tol(SEPARABILITY_TOL)
}

/// [`reproduce_success_table`] with an explicit separability tolerance.
pub fn success_table_with_tol(tol: f64) -> Result<[[f64; 3]; 5]> {
    let gates = success_table_gates();
    let bases = success_table_bases();
    let cells: Vec<(usize, usize)> = (0..5).flat_map(|g| (0..3).map(move |b| (g, b))).collect();
    let values: Vec<Result<f64>> = cells
        .par_iter()
        .map(|&(g, b)| {
            analyze_gate_teleport(&gates[g].1, &bases[b], &Mat4::identity(), tol)
                .map(|r| r.success_probability)
        })
        .collect();
    let mut table = [[0.0; 3]; 5];
    for (&(g, b), v) in cells.iter().zip(values) {
        table[g][b] = v?;
    }
    Ok(table)
}
