//! Tensor-product structure of two-qubit operators.
//!
//! A 4×4 operator `W` is realigned into `R[(2a+c),(2b+d)] = W[(2a+b),(2c+d)]`,
//! which maps every product `A⊗B` to the rank-one matrix `vec(A)·vec(B)ᵀ`. The
//! singular values of `R` are the operator Schmidt coefficients of `W`, and
//! `W` is a tensor product exactly when only the first one survives.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    exp_i_involution, frobenius, is_unitary, svd, tensor, unitary_deviation, Mat2, Mat4, Pauli,
    PauliPair, C64, UNITARY_TOL,
};

/// Threshold on the second normalized Schmidt coefficient.
pub const SEPARABILITY_TOL: f64 = 1e-7;

/// Zero threshold for the closed-form predicate.
pub const WITNESS_FORMULA_TOL: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct TensorFactorization {
    pub separable: bool,
    #[serde(with = "crate::cli::format::opt_mat2")]
    pub factor_a: Option<Mat2>,
    #[serde(with = "crate::cli::format::opt_mat2")]
    pub factor_b: Option<Mat2>,
    /// Global phase `φ` with `w = e^{iφ}·(factor_a ⊗ factor_b)`.
    pub phase: f64,
    pub schmidt_values: [f64; 4],
}

impl TensorFactorization {
    /// `e^{iφ}·(A⊗B)`, when separable.
    pub fn reconstruct(&self) -> Option<Mat4> {
        let (a, b) = (self.factor_a?, self.factor_b?);
        Some(tensor(&a, &b) * C64::from_polar(1.0, self.phase))
    }

    /// Inverses of the two factors: the local corrections undoing `w`.
    pub fn inverse_factors(&self) -> Option<(Mat2, Mat2)> {
        Some((self.factor_a?.adjoint(), self.factor_b?.adjoint()))
    }
}

/// Realignment `R[(2a+c),(2b+d)] = W[(2a+b),(2c+d)]`.
pub fn realign(w: &Mat4) -> Mat4 {
    let mut r = Mat4::zeros();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    r[(2 * a + c, 2 * b + d)] = w[(2 * a + b, 2 * c + d)];
                }
            }
        }
    }
    r
}

/// Operator Schmidt coefficients, scaled so their squares sum to one.
pub fn operator_schmidt(w: &Mat4) -> [f64; 4] {
    let s = svd(&realign(w)).singular_values;
    let norm = frobenius(w);
    if norm == 0.0 {
        return s;
    }
    s.map(|x| x / norm)
}

/// First entry (column-major) within rounding of the largest magnitude, so
/// that ties between equal-magnitude entries break deterministically.
fn gauge_entry(m: &Mat2) -> C64 {
    let max = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    *m.iter()
        .find(|z| z.norm() >= max - 1e-9)
        .expect("non-empty")
}

/// Split a unitary `w` into `e^{iφ}·(A⊗B)` if it is a tensor product.
///
/// Both factors are normalized so their largest-magnitude entry is real and
/// positive; the leftover phase is reported separately.
/// `1 − Σσ⁴/(Σσ²)²` over the operator Schmidt values, without an SVD.
///
/// Zero exactly for tensor products and at least `σ₂²/Σσ²` otherwise, so it
/// rejects clearly entangling operators cheaply.
pub fn rank_one_defect(w: &Mat4) -> f64 {
    let r = realign(w);
    let m = r * r.adjoint();
    let t = m.trace().re;
    if t <= 0.0 {
        return 0.0;
    }
    let t2 = (m * m).trace().re;
    (1.0 - t2 / (t * t)).max(0.0)
}

pub fn tensor_factorize(w: &Mat4, tol: f64) -> Result<TensorFactorization> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    crate::linalg::check_finite(w)?;
    if !is_unitary(w, UNITARY_TOL) {
        return Err(Error::NotUnitary {
            what: "operator",
            deviation: unitary_deviation(w),
        });
    }
    let dec = svd(&realign(w));
    let norm = frobenius(w);
    let schmidt_values = dec.singular_values.map(|x| x / norm);
    if schmidt_values[1] > tol {
        return Ok(TensorFactorization {
            separable: false,
            factor_a: None,
            factor_b: None,
            phase: 0.0,
            schmidt_values,
        });
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    // W ≈ s₀·u₀·v₀†, with s₀ = ‖W‖_F = 2 for unitaries
    let scale = (dec.singular_values[0] / 2.0).sqrt();
    let a = Mat2::from_fn(|k, l| dec.u[(2 * k + l, 0)] * (sqrt2 * scale));
    let b = Mat2::from_fn(|k, l| dec.v_adjoint[(0, 2 * k + l)] * (sqrt2 * scale));
    let alpha = gauge_entry(&a).arg();
    let beta = gauge_entry(&b).arg();
    let a = a * C64::from_polar(1.0, -alpha);
    let b = b * C64::from_polar(1.0, -beta);
    Ok(TensorFactorization {
        separable: true,
        factor_a: Some(a),
        factor_b: Some(b),
        phase: alpha + beta,
        schmidt_values,
    })
}

/// Which of the four conjugated single-axis exponentials to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessKind {
    /// `e^{iθσ_μμ}·e^{−i(λ/2)σ_ZI}·e^{−iθσ_μμ}`, `μ ∈ {X, Y}`.
    W1,
    /// `e^{iθσ_μμ}·e^{−i(λ/2)σ_IZ}·e^{−iθσ_μμ}`, `μ ∈ {X, Y}`.
    W2,
    /// `e^{iθσ_νν}·e^{−i(λ/2)σ_YI}·e^{−iθσ_νν}`, `ν ∈ {X, Z}`.
    W3,
    /// `e^{iθσ_νν}·e^{−i(λ/2)σ_IY}·e^{−iθσ_νν}`, `ν ∈ {X, Z}`.
    W4,
}

impl WitnessKind {
    pub const ALL: [WitnessKind; 4] = [
        WitnessKind::W1,
        WitnessKind::W2,
        WitnessKind::W3,
        WitnessKind::W4,
    ];

    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            1 => Ok(WitnessKind::W1),
            2 => Ok(WitnessKind::W2),
            3 => Ok(WitnessKind::W3),
            4 => Ok(WitnessKind::W4),
            _ => Err(Error::InvalidParameter(format!(
                "witness kind must be 1..=4, got {k}"
            ))),
        }
    }

    /// The admissible conjugating labels.
    pub fn labels(self) -> [Pauli; 2] {
        match self {
            WitnessKind::W1 | WitnessKind::W2 => [Pauli::X, Pauli::Y],
            WitnessKind::W3 | WitnessKind::W4 => [Pauli::X, Pauli::Z],
        }
    }

    fn middle(self) -> PauliPair {
        match self {
            WitnessKind::W1 => PauliPair::new(Pauli::Z, Pauli::I),
            WitnessKind::W2 => PauliPair::new(Pauli::I, Pauli::Z),
            WitnessKind::W3 => PauliPair::new(Pauli::Y, Pauli::I),
            WitnessKind::W4 => PauliPair::new(Pauli::I, Pauli::Y),
        }
    }
}

/// Build one of the four separability witnesses for a single non-local angle.
pub fn w_witness(kind: WitnessKind, theta: f64, lambda: f64, label: Pauli) -> Result<Mat4> {
    if !kind.labels().contains(&label) {
        return Err(Error::InvalidParameter(format!(
            "label {label:?} not admissible for {kind:?} (expected one of {:?})",
            kind.labels()
        )));
    }
    let outer = PauliPair::new(label, label).matrix();
    let middle = exp_i_involution(-lambda / 2.0, &kind.middle().matrix());
    Ok(exp_i_involution(theta, &outer) * middle * exp_i_involution(-theta, &outer))
}

/// Magnitude of `sin(λ/2)·sin(2θ)·(e^{iλ/2}sin²θ + e^{−iλ/2}cos²θ)`.
pub fn witness_formula_residual(theta: f64, lambda: f64) -> f64 {
    let half = lambda / 2.0;
    let (s, c) = theta.sin_cos();
    let bracket = C64::from_polar(s * s, half) + C64::from_polar(c * c, -half);
    (half.sin() * (2.0 * theta).sin()).abs() * bracket.norm()
}

/// Closed-form separability predicate for the single-angle witnesses.
pub fn witness_formula_separable(theta: f64, lambda: f64) -> bool {
    witness_formula_residual(theta, lambda) <= WITNESS_FORMULA_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{cnot, swap};
    use crate::linalg::{frobenius, haar_mat2, ONE};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

    fn close(a: [f64; 4], b: [f64; 4], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn schmidt_examples() {
        assert!(close(
            operator_schmidt(&Mat4::identity()),
            [1.0, 0.0, 0.0, 0.0],
            1e-12
        ));
        assert!(close(operator_schmidt(&swap()), [0.5; 4], 1e-12));
        assert!(close(
            operator_schmidt(&cnot()),
            [FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0],
            1e-12
        ));
    }

    #[test]
    fn factorize_pauli_product() {
        let w = PauliPair::new(Pauli::X, Pauli::Z).matrix();
        let f = tensor_factorize(&w, SEPARABILITY_TOL).unwrap();
        assert!(f.separable);
        let a = f.factor_a.unwrap();
        let b = f.factor_b.unwrap();
        assert!(crate::linalg::equal_up_to_global_phase(
            &a,
            &Pauli::X.matrix(),
            1e-12
        ));
        assert!(crate::linalg::equal_up_to_global_phase(
            &b,
            &Pauli::Z.matrix(),
            1e-12
        ));
        assert!(frobenius(&(f.reconstruct().unwrap() - w)) < 1e-12);
    }

    #[test]
    fn cnot_is_not_separable() {
        let f = tensor_factorize(&cnot(), SEPARABILITY_TOL).unwrap();
        assert!(!f.separable);
        assert!(f.factor_a.is_none() && f.factor_b.is_none());
    }

    #[test]
    fn factorize_random_products_with_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let a = haar_mat2(&mut rng);
            let b = haar_mat2(&mut rng);
            let phi: f64 = rng.random_range(-PI..PI);
            let w = tensor(&a, &b) * C64::from_polar(1.0, phi);
            let f = tensor_factorize(&w, SEPARABILITY_TOL).unwrap();
            assert!(f.separable);
            assert!(frobenius(&(f.reconstruct().unwrap() - w)) < 1e-9);
            assert!(is_unitary(&f.factor_a.unwrap(), 1e-9));
            assert!(is_unitary(&f.factor_b.unwrap(), 1e-9));
        }
    }

    #[test]
    fn factorize_rejects_bad_input() {
        assert!(tensor_factorize(&(Mat4::identity() * (ONE * 2.0)), 1e-7).is_err());
        assert!(tensor_factorize(&Mat4::identity(), 0.0).is_err());
    }

    #[test]
    fn global_phase_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let w = tensor(&haar_mat2(&mut rng), &haar_mat2(&mut rng));
        let f0 = tensor_factorize(&w, SEPARABILITY_TOL).unwrap();
        let f1 = tensor_factorize(&(w * C64::from_polar(1.0, 1.1)), SEPARABILITY_TOL).unwrap();
        assert_eq!(f0.separable, f1.separable);
        assert!(frobenius(&(f0.factor_a.unwrap() - f1.factor_a.unwrap())) < 1e-10);
        assert!(frobenius(&(f0.factor_b.unwrap() - f1.factor_b.unwrap())) < 1e-10);
        let nonsep = cnot() * C64::from_polar(1.0, 0.4);
        assert!(
            !tensor_factorize(&nonsep, SEPARABILITY_TOL)
                .unwrap()
                .separable
        );
    }

    #[test]
    fn witness_examples() {
        let lambda = 0.83;
        let w = w_witness(WitnessKind::W1, 0.0, lambda, Pauli::X).unwrap();
        let expected =
            exp_i_involution(-lambda / 2.0, &PauliPair::new(Pauli::Z, Pauli::I).matrix());
        assert!(frobenius(&(w - expected)) < 1e-14);
        let w = w_witness(WitnessKind::W1, 0.6, 0.0, Pauli::Y).unwrap();
        assert!(frobenius(&(w - Mat4::identity())) < 1e-14);
        let w = w_witness(WitnessKind::W1, FRAC_PI_4, PI, Pauli::X).unwrap();
        assert!(tensor_factorize(&w, SEPARABILITY_TOL).unwrap().separable);
        assert!(w_witness(WitnessKind::W3, 0.1, 0.2, Pauli::Y).is_err());
        for kind in WitnessKind::ALL {
            for label in kind.labels() {
                assert!(is_unitary(
                    &w_witness(kind, 0.37, -2.1, label).unwrap(),
                    1e-12
                ));
            }
        }
    }

    #[test]
    fn witness_formula_examples() {
        assert!(witness_formula_separable(FRAC_PI_2, 1.234));
        assert!(witness_formula_separable(0.7, 0.0));
        assert!(!witness_formula_separable(FRAC_PI_4, PI / 3.0));
        let w = w_witness(WitnessKind::W1, FRAC_PI_4, PI / 3.0, Pauli::X).unwrap();
        assert!(!tensor_factorize(&w, SEPARABILITY_TOL).unwrap().separable);
    }

    #[test]
    fn pauli_commutators_vanish() {
        let pair = |a, b| PauliPair::new(a, b).matrix();
        let comm = |a: Mat4, b: Mat4| frobenius(&(a * b - b * a));
        for mu in [Pauli::X, Pauli::Y, Pauli::Z] {
            for nu in [Pauli::X, Pauli::Y, Pauli::Z] {
                assert!(comm(pair(mu, mu), pair(nu, nu)) < 1e-15);
                assert!(comm(pair(mu, Pauli::I), pair(Pauli::I, nu)) < 1e-15);
                assert!(comm(pair(Pauli::I, mu), pair(nu, Pauli::I)) < 1e-15);
            }
            assert!(comm(pair(mu, mu), pair(Pauli::I, mu)) < 1e-15);
            assert!(comm(pair(mu, mu), pair(mu, Pauli::I)) < 1e-15);
        }
    }

    #[test]
    fn schmidt_values_are_local_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let w = crate::linalg::haar_mat4(&mut rng);
            let l = tensor(&haar_mat2(&mut rng), &haar_mat2(&mut rng));
            let r = tensor(&haar_mat2(&mut rng), &haar_mat2(&mut rng));
            let s0 = operator_schmidt(&w);
            let s1 = operator_schmidt(&(l * w * r));
            assert!(close(s0, s1, 1e-9), "{s0:?} vs {s1:?}");
            let _: f64 = rng.random();
        }
    }
}
