//! Dense statevector oracle for the teleportation circuits.
//!
//! Qubit 0 is the most significant bit of the amplitude index. Registers are
//! immutable: every operation returns a new register.
//!
//! Circuit layouts:
//!
//! - state teleportation (3 qubits): resource on (0, 1), input on 2, `U` on
//!   (1, 2), measurement of (1, 2), output on 0.
//! - gate teleportation (6 qubits): input on (0, 1), `|Φ⁺⟩` pairs on (2, 3)
//!   and (4, 5), `U` on the measured pairs (0, 2) and (1, 4), `U_T` on the
//!   output pair (3, 5). Outcome `(j, k)` leaves `(1/4)·U_T(β_j⊗β_k)|ψ⟩` on
//!   (3, 5), with `β` in gate form.

use rand::Rng;
use serde::Serialize;

use crate::bases::MeasurementBasis;
use crate::error::{Error, Result};
use crate::linalg::{
    check_finite, fidelity, is_unitary, tensor_state, unitary_deviation, Mat2, Mat4, StateVec, C64,
    ONE, UNITARY_TOL, ZERO,
};
use crate::teleport::ResourceState;

pub const MAX_QUBITS: usize = 8;

/// Outcomes below this probability are reported as impossible.
pub const ZERO_PROBABILITY: f64 = 1e-12;

const NORM_TOL: f64 = 1e-9;

/// A 1- or 2-qubit gate matrix.
pub trait GateMatrix {
    const ARITY: usize;
    fn entry(&self, r: usize, c: usize) -> C64;
    fn unitary_deviation(&self) -> f64;
}

impl GateMatrix for Mat2 {
    const ARITY: usize = 1;
    fn entry(&self, r: usize, c: usize) -> C64 {
        self[(r, c)]
    }
    fn unitary_deviation(&self) -> f64 {
        unitary_deviation(self)
    }
}

impl GateMatrix for Mat4 {
    const ARITY: usize = 2;
    fn entry(&self, r: usize, c: usize) -> C64 {
        self[(r, c)]
    }
    fn unitary_deviation(&self) -> f64 {
        unitary_deviation(self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Register {
    n: usize,
    state: StateVec,
}

impl Register {
    /// `|0…0⟩` on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::RegisterTooWide(n));
        }
        let mut state = StateVec::zeros(1 << n);
        state[0] = ONE;
        Ok(Self { n, state })
    }

    pub fn from_state(state: StateVec) -> Result<Self> {
        let len = state.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "state length {len} is not a power of two"
            )));
        }
        let n = len.trailing_zeros() as usize;
        if n > MAX_QUBITS {
            return Err(Error::RegisterTooWide(n));
        }
        check_finite(&state)?;
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { n, state })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn state(&self) -> &StateVec {
        &self.state
    }

    fn bit(&self, q: usize) -> usize {
        self.n - 1 - q
    }

    fn check_targets(&self, targets: &[usize]) -> Result<()> {
        for (i, &q) in targets.iter().enumerate() {
            if q >= self.n {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    n_qubits: self.n,
                });
            }
            if targets[..i].contains(&q) {
                return Err(Error::DuplicateTargets);
            }
        }
        Ok(())
    }

    /// Index with the target bits replaced by the bits of `sub`
    /// (first target = most significant bit of `sub`).
    fn with_bits(&self, base: usize, targets: &[usize], sub: usize) -> usize {
        let k = targets.len();
        let mut idx = base;
        for (i, &q) in targets.iter().enumerate() {
            let b = self.bit(q);
            let v = (sub >> (k - 1 - i)) & 1;
            idx = (idx & !(1 << b)) | (v << b);
        }
        idx
    }

    fn target_mask(&self, targets: &[usize]) -> usize {
        targets.iter().map(|&q| 1 << self.bit(q)).sum()
    }

    /// Apply a unitary on `targets`, identity elsewhere.
    pub fn apply_gate<G: GateMatrix>(&self, gate: &G, targets: &[usize]) -> Result<Register> {
        if targets.len() != G::ARITY {
            return Err(Error::InvalidParameter(format!(
                "gate acts on {} qubits but {} targets were given",
                G::ARITY,
                targets.len()
            )));
        }
        self.check_targets(targets)?;
        let dev = gate.unitary_deviation();
        if dev > UNITARY_TOL {
            return Err(Error::NotUnitary {
                what: "gate",
                deviation: dev,
            });
        }
        let dim = 1 << G::ARITY;
        let mask = self.target_mask(targets);
        let mut out = StateVec::zeros(self.state.len());
        for base in (0..self.state.len()).filter(|i| i & mask == 0) {
            let idx: Vec<usize> = (0..dim).map(|s| self.with_bits(base, targets, s)).collect();
            for r in 0..dim {
                let mut acc = ZERO;
                for (c, &i) in idx.iter().enumerate() {
                    acc += gate.entry(r, c) * self.state[i];
                }
                out[idx[r]] = acc;
            }
        }
        Ok(Register {
            n: self.n,
            state: out,
        })
    }

    /// Probabilities of the four outcomes of measuring `targets` in `basis`.
    pub fn pair_probabilities(
        &self,
        targets: (usize, usize),
        basis: &MeasurementBasis,
    ) -> Result<[f64; 4]> {
        self.check_targets(&[targets.0, targets.1])?;
        Ok([0, 1, 2, 3].map(|j| self.projected(targets, basis, j).1))
    }

    /// Unnormalized projection onto `|β_j⟩` on the target pair and its squared norm.
    fn projected(
        &self,
        targets: (usize, usize),
        basis: &MeasurementBasis,
        j: usize,
    ) -> (StateVec, f64) {
        let t = [targets.0, targets.1];
        let mask = self.target_mask(&t);
        let v = &basis.vectors[j];
        let mut out = StateVec::zeros(self.state.len());
        let mut p = 0.0;
        for base in (0..self.state.len()).filter(|i| i & mask == 0) {
            let mut overlap = ZERO;
            for s in 0..4 {
                overlap += v[s].conj() * self.state[self.with_bits(base, &t, s)];
            }
            p += overlap.norm_sqr();
            for s in 0..4 {
                out[self.with_bits(base, &t, s)] = v[s] * overlap;
            }
        }
        (out, p)
    }

    /// Project the pair onto outcome `j` (0-based) and renormalize.
    pub fn measure_pair_forced(
        &self,
        targets: (usize, usize),
        basis: &MeasurementBasis,
        j: usize,
    ) -> Result<(f64, Register)> {
        self.check_targets(&[targets.0, targets.1])?;
        if j >= 4 {
            return Err(Error::InvalidParameter(format!(
                "outcome index {j} out of range"
            )));
        }
        let (state, p) = self.projected(targets, basis, j);
        if p <= ZERO_PROBABILITY {
            return Err(Error::ZeroProbability { outcome: j + 1 });
        }
        let state = state / C64::from(p.sqrt());
        Ok((p, Register { n: self.n, state }))
    }

    /// Sample an outcome from the caller's generator and collapse onto it.
    pub fn measure_pair_sampled<R: Rng + ?Sized>(
        &self,
        targets: (usize, usize),
        basis: &MeasurementBasis,
        rng: &mut R,
    ) -> Result<(usize, f64, Register)> {
        let probs = self.pair_probabilities(targets, basis)?;
        let total: f64 = probs.iter().sum();
        let mut x = rng.random::<f64>() * total;
        let mut j = 3;
        for (i, p) in probs.iter().enumerate() {
            if x < *p {
                j = i;
                break;
            }
            x -= p;
        }
        while probs[j] <= ZERO_PROBABILITY {
            j -= 1;
        }
        let (p, reg) = self.measure_pair_forced(targets, basis, j)?;
        Ok((j, p, reg))
    }

    /// State of `keep` when it is unentangled with the rest of the register.
    pub fn factor_out(&self, keep: &[usize]) -> Result<StateVec> {
        self.check_targets(keep)?;
        let k = keep.len();
        let mask = self.target_mask(keep);
        let rest: Vec<usize> = (0..self.state.len()).filter(|i| i & mask == 0).collect();
        // columns indexed by the rest of the register
        let column = |base: usize| {
            StateVec::from_fn(1 << k, |s, _| self.state[self.with_bits(base, keep, s)])
        };
        let (best, best_norm) = rest
            .iter()
            .map(|&b| (b, column(b).norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("non-empty register");
        let v = column(best) / C64::from(best_norm);
        let mut residual = 0.0;
        for &b in &rest {
            let col = column(b);
            let proj = v.dotc(&col);
            residual += (col - &v * proj).norm_squared();
        }
        if residual > 1e-18 {
            return Err(Error::NotProduct);
        }
        Ok(v)
    }
}

/// Outcome indices and probabilities collected along a run.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct MeasurementRecord {
    pub outcome_indices: Vec<usize>,
    pub probabilities: Vec<f64>,
}

impl MeasurementRecord {
    pub fn push(&mut self, j: usize, p: f64) {
        self.outcome_indices.push(j);
        self.probabilities.push(p);
    }

    pub fn joint_probability(&self) -> f64 {
        self.probabilities.iter().product()
    }
}

fn check_input(v: &StateVec, dim: usize) -> Result<()> {
    if v.len() != dim {
        return Err(Error::InvalidParameter(format!(
            "expected a {dim}-amplitude state, got {}",
            v.len()
        )));
    }
    check_finite(v)?;
    let norm = v.norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    Ok(())
}

fn check_gate(m: &Mat4, what: &'static str) -> Result<()> {
    check_finite(m)?;
    if !is_unitary(m, UNITARY_TOL) {
        return Err(Error::NotUnitary {
            what,
            deviation: unitary_deviation(m),
        });
    }
    Ok(())
}

/// Per-outcome result of a forced-outcome run.
#[derive(Clone, Debug, Serialize)]
pub struct SimulatedOutcome {
    pub probability: f64,
    /// `|⟨target|out⟩|²` after the correction; absent for impossible outcomes.
    pub fidelity: Option<f64>,
}

/// Single-qubit teleportation, every outcome forced in turn.
pub fn run_state_teleport(
    input_xi: &StateVec,
    resource: &ResourceState,
    u_front: &Mat4,
    basis: &MeasurementBasis,
    corrections: &[Option<Mat2>; 4],
) -> Result<[SimulatedOutcome; 4]> {
    check_input(input_xi, 2)?;
    check_gate(u_front, "U")?;
    let reg = Register::from_state(tensor_state(&resource.to_state(), input_xi))?
        .apply_gate(u_front, &[1, 2])?;
    let mut out = Vec::with_capacity(4);
    for (j, correction) in corrections.iter().enumerate() {
        let p = reg.projected((1, 2), basis, j).1;
        if p <= ZERO_PROBABILITY {
            out.push(SimulatedOutcome {
                probability: p,
                fidelity: None,
            });
            continue;
        }
        let (_, mut post) = reg.measure_pair_forced((1, 2), basis, j)?;
        if let Some(c) = correction {
            post = post.apply_gate(c, &[0])?;
        }
        let q = post.factor_out(&[0])?;
        out.push(SimulatedOutcome {
            probability: p,
            fidelity: Some(fidelity(input_xi, &q)),
        });
    }
    Ok(out.try_into().expect("four outcomes"))
}

/// Sampled single-qubit teleportation: one outcome drawn from `rng`.
pub fn sample_state_teleport<R: Rng + ?Sized>(
    input_xi: &StateVec,
    resource: &ResourceState,
    u_front: &Mat4,
    basis: &MeasurementBasis,
    corrections: &[Option<Mat2>; 4],
    rng: &mut R,
) -> Result<(usize, f64)> {
    check_input(input_xi, 2)?;
    check_gate(u_front, "U")?;
    let reg = Register::from_state(tensor_state(&resource.to_state(), input_xi))?
        .apply_gate(u_front, &[1, 2])?;
    let (j, _, mut post) = reg.measure_pair_sampled((1, 2), basis, rng)?;
    if let Some(c) = &corrections[j] {
        post = post.apply_gate(c, &[0])?;
    }
    Ok((j, fidelity(input_xi, &post.factor_out(&[0])?)))
}

fn bell_pair() -> StateVec {
    let h = C64::from(std::f64::consts::FRAC_1_SQRT_2);
    StateVec::from_vec(vec![h, ZERO, ZERO, h])
}

/// The 6-qubit register just before the two measurements.
fn gate_register(input_ab: &StateVec, u_t: &Mat4, u_front: &Mat4) -> Result<Register> {
    check_input(input_ab, 4)?;
    check_gate(u_t, "U_T")?;
    check_gate(u_front, "U")?;
    let state = tensor_state(&tensor_state(input_ab, &bell_pair()), &bell_pair());
    Register::from_state(state)?
        .apply_gate(u_front, &[0, 2])?
        .apply_gate(u_front, &[1, 4])?
        .apply_gate(u_t, &[3, 5])
}

/// Output pair for outcome `(j, k)` and its probability, or `None` when the
/// outcome cannot occur.
pub fn gate_teleport_branch(
    input_ab: &StateVec,
    u_t: &Mat4,
    basis: &MeasurementBasis,
    u_front: &Mat4,
    j: usize,
    k: usize,
) -> Result<Option<(f64, StateVec)>> {
    let reg = gate_register(input_ab, u_t, u_front)?;
    branch_of(&reg, basis, j, k)
}

fn branch_of(
    reg: &Register,
    basis: &MeasurementBasis,
    j: usize,
    k: usize,
) -> Result<Option<(f64, StateVec)>> {
    let p1 = reg.projected((0, 2), basis, j).1;
    if p1 <= ZERO_PROBABILITY {
        return Ok(None);
    }
    let (_, r1) = reg.measure_pair_forced((0, 2), basis, j)?;
    let p2 = r1.projected((1, 4), basis, k).1;
    if p2 <= ZERO_PROBABILITY {
        return Ok(None);
    }
    let (_, r2) = r1.measure_pair_forced((1, 4), basis, k)?;
    Ok(Some((p1 * p2, r2.factor_out(&[3, 5])?)))
}

/// Two-qubit gate teleportation, all 16 outcomes forced in turn; outcome
/// `(j, k)` is at index `4j + k`.
pub fn run_gate_teleport(
    input_ab: &StateVec,
    u_t: &Mat4,
    basis: &MeasurementBasis,
    u_front: &Mat4,
    corrections: &[Option<(Mat2, Mat2)>; 16],
) -> Result<[SimulatedOutcome; 16]> {
    let reg = gate_register(input_ab, u_t, u_front)?;
    let target = crate::linalg::apply4(u_t, input_ab);
    let mut out = Vec::with_capacity(16);
    for j in 0..4 {
        for k in 0..4 {
            match branch_of(&reg, basis, j, k)? {
                None => out.push(SimulatedOutcome {
                    probability: 0.0,
                    fidelity: None,
                }),
                Some((p, state)) => {
                    let state = match &corrections[4 * j + k] {
                        Some((a, b)) => crate::linalg::apply4(&crate::linalg::tensor(a, b), &state),
                        None => state,
                    };
                    out.push(SimulatedOutcome {
                        probability: p,
                        fidelity: Some(fidelity(&target, &state)),
                    });
                }
            }
        }
    }
    Ok(out.try_into().expect("sixteen outcomes"))
}

/// Sampled gate teleportation: `(j, k)` drawn from `rng`, fidelity after correction.
pub fn sample_gate_teleport<R: Rng + ?Sized>(
    input_ab: &StateVec,
    u_t: &Mat4,
    basis: &MeasurementBasis,
    u_front: &Mat4,
    corrections: &[Option<(Mat2, Mat2)>; 16],
    rng: &mut R,
) -> Result<(usize, usize, MeasurementRecord, f64)> {
    let reg = gate_register(input_ab, u_t, u_front)?;
    let mut record = MeasurementRecord::default();
    let (j, p1, r1) = reg.measure_pair_sampled((0, 2), basis, rng)?;
    record.push(j, p1);
    let (k, p2, r2) = r1.measure_pair_sampled((1, 4), basis, rng)?;
    record.push(k, p2);
    let mut state = r2.factor_out(&[3, 5])?;
    if let Some((a, b)) = &corrections[4 * j + k] {
        state = crate::linalg::apply4(&crate::linalg::tensor(a, b), &state);
    }
    Ok((
        j,
        k,
        record,
        fidelity(&crate::linalg::apply4(u_t, input_ab), &state),
    ))
}

/// Exact probabilities of the 16 outcomes, index `4j + k`.
pub fn outcome_distribution(
    input_ab: &StateVec,
    u_t: &Mat4,
    basis: &MeasurementBasis,
    u_front: &Mat4,
) -> Result<[f64; 16]> {
    let reg = gate_register(input_ab, u_t, u_front)?;
    let mut probs = [0.0; 16];
    let first = reg.pair_probabilities((0, 2), basis)?;
    for j in 0..4 {
        if first[j] <= ZERO_PROBABILITY {
            continue;
        }
        let (_, r1) = reg.measure_pair_forced((0, 2), basis, j)?;
        let second = r1.pair_probabilities((1, 4), basis)?;
        for k in 0..4 {
            probs[4 * j + k] = first[j] * second[k];
        }
    }
    Ok(probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{bell_basis, m2_basis};
    use crate::gates::cnot;
    use crate::linalg::{basis_state, haar_mat4, haar_state, state_from, HaarDim, Pauli};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn x_flips_a_qubit() {
        let r = Register::zero(1)
            .unwrap()
            .apply_gate(&Pauli::X.matrix(), &[0])
            .unwrap();
        assert_eq!(r.state(), &basis_state(1, 1));
    }

    #[test]
    fn cnot_control_is_the_first_target() {
        let r = Register::from_state(basis_state(2, 2)).unwrap();
        assert_eq!(
            r.apply_gate(&cnot(), &[0, 1]).unwrap().state(),
            &basis_state(2, 3)
        );
        // reversed targets: qubit 1 controls
        let r = Register::from_state(basis_state(2, 1)).unwrap();
        assert_eq!(
            r.apply_gate(&cnot(), &[1, 0]).unwrap().state(),
            &basis_state(2, 3)
        );
    }

    #[test]
    fn product_gate_equals_sequential_singles() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (a, b) = (
            crate::linalg::haar_mat2(&mut rng),
            crate::linalg::haar_mat2(&mut rng),
        );
        let reg = Register::from_state(haar_state(HaarDim::Four, &mut rng))
            .unwrap()
            .apply_gate(&haar_mat4(&mut rng), &[0, 1])
            .unwrap();
        let reg3 = Register::from_state(tensor_state(reg.state(), &basis_state(1, 0))).unwrap();
        let joint = reg3
            .apply_gate(&crate::linalg::tensor(&a, &b), &[2, 0])
            .unwrap();
        let seq = reg3
            .apply_gate(&a, &[2])
            .unwrap()
            .apply_gate(&b, &[0])
            .unwrap();
        assert!((joint.state() - seq.state()).norm() < 1e-12);
        assert!((joint.state().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_targets() {
        let r = Register::zero(3).unwrap();
        assert!(matches!(
            r.apply_gate(&cnot(), &[0, 3]),
            Err(Error::QubitOutOfRange { .. })
        ));
        assert!(matches!(
            r.apply_gate(&cnot(), &[1, 1]),
            Err(Error::DuplicateTargets)
        ));
        assert!(r.apply_gate(&cnot(), &[1]).is_err());
        assert!(matches!(Register::zero(9), Err(Error::RegisterTooWide(9))));
    }

    #[test]
    fn bell_measurement_of_zero_zero() {
        let r = Register::zero(2).unwrap();
        let p = r.pair_probabilities((0, 1), &bell_basis()).unwrap();
        let expected = [0.5, 0.0, 0.5, 0.0];
        for j in 0..4 {
            assert!((p[j] - expected[j]).abs() < 1e-12);
        }
        assert!(matches!(
            r.measure_pair_forced((0, 1), &bell_basis(), 1),
            Err(Error::ZeroProbability { outcome: 2 })
        ));
    }

    #[test]
    fn sampling_is_seeded() {
        let r = Register::zero(2).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20)
                .map(|_| {
                    r.measure_pair_sampled((0, 1), &bell_basis(), &mut rng)
                        .unwrap()
                        .0
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(4), draw(4));
        assert!(draw(4).iter().all(|j| *j == 0 || *j == 2));
    }

    #[test]
    fn probabilities_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = Register::from_state(haar_state(HaarDim::Four, &mut rng)).unwrap();
        let b = crate::bases::haar_basis(&mut rng);
        let s: f64 = r.pair_probabilities((1, 0), &b).unwrap().iter().sum();
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn factor_out_detects_entanglement() {
        let bell = Register::from_state(bell_pair()).unwrap();
        assert!(matches!(bell.factor_out(&[0]), Err(Error::NotProduct)));
        let prod = Register::from_state(state_from(&[ZERO, ONE, ZERO, ZERO])).unwrap();
        assert_eq!(prod.factor_out(&[1]).unwrap(), basis_state(1, 1));
    }

    #[test]
    fn distributions_are_uniform_for_valid_bases() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for basis in [bell_basis(), m2_basis()] {
            let psi = haar_state(HaarDim::Four, &mut rng);
            let d = outcome_distribution(&psi, &cnot(), &basis, &Mat4::identity()).unwrap();
            assert!(d.iter().all(|p| (p - 1.0 / 16.0).abs() < 1e-9), "{d:?}");
        }
    }
}
