//! Dense complex kernels for 2×2 / 4×4 operators and small statevectors.
//!
//! Ordering convention: the leftmost ket factor is the most significant bit of
//! an amplitude index, so `|xy⟩` lives at index `2x + y`. Kronecker products
//! follow the same rule: `tensor(a, b)[(2i+k, 2j+l)] = a[(i,j)] * b[(k,l)]`.

use nalgebra::{DVector, Dim, Matrix, Matrix2, Matrix4, RawStorage, Schur};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;
pub type Mat4 = Matrix4<C64>;
pub type StateVec = DVector<C64>;

/// Default tolerance for unitarity and orthonormality checks.
pub const UNITARY_TOL: f64 = 1e-9;
/// Default tolerance for reconstruction checks.
pub const RECONSTRUCTION_TOL: f64 = 1e-10;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

pub fn mat2(rows: [[C64; 2]; 2]) -> Mat2 {
    Mat2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
}

pub fn mat4(rows: [[C64; 4]; 4]) -> Mat4 {
    Mat4::from_fn(|r, c| rows[r][c])
}

pub fn real_mat2(rows: [[f64; 2]; 2]) -> Mat2 {
    Mat2::from_fn(|r, c| C64::from(rows[r][c]))
}

pub fn real_mat4(rows: [[f64; 4]; 4]) -> Mat4 {
    Mat4::from_fn(|r, c| C64::from(rows[r][c]))
}

pub fn diag2(a: C64, b: C64) -> Mat2 {
    Mat2::new(a, ZERO, ZERO, b)
}

pub fn diag4(d: [C64; 4]) -> Mat4 {
    Mat4::from_fn(|r, c| if r == c { d[r] } else { ZERO })
}

/// Single-qubit Pauli label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> Mat2 {
        match self {
            Pauli::I => Mat2::identity(),
            Pauli::X => real_mat2([[0.0, 1.0], [1.0, 0.0]]),
            Pauli::Y => mat2([[ZERO, -I], [I, ZERO]]),
            Pauli::Z => real_mat2([[1.0, 0.0], [0.0, -1.0]]),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// `σ_first ⊗ σ_second`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PauliPair {
    pub first: Pauli,
    pub second: Pauli,
}

impl PauliPair {
    pub const fn new(first: Pauli, second: Pauli) -> Self {
        Self { first, second }
    }

    /// All 16 pairs in lexicographic order, starting with `II`.
    pub fn all() -> impl Iterator<Item = PauliPair> {
        Pauli::ALL
            .into_iter()
            .flat_map(|a| Pauli::ALL.into_iter().map(move |b| PauliPair::new(a, b)))
    }

    pub fn matrix(self) -> Mat4 {
        tensor(&self.first.matrix(), &self.second.matrix())
    }

    pub fn is_identity(self) -> bool {
        self.first == Pauli::I && self.second == Pauli::I
    }
}

impl fmt::Display for PauliPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.first.symbol(), self.second.symbol())
    }
}

/// Kronecker product of two single-qubit operators.
pub fn tensor(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

/// Kronecker product of two statevectors (first factor most significant).
pub fn tensor_state(a: &StateVec, b: &StateVec) -> StateVec {
    let nb = b.len();
    StateVec::from_fn(a.len() * nb, |i, _| a[i / nb] * b[i % nb])
}

/// `‖m†m − I‖_F ≤ tol` for any square matrix.
pub fn is_unitary<R: Dim, S: RawStorage<C64, R, R>>(m: &Matrix<C64, R, R, S>, tol: f64) -> bool {
    unitary_deviation(m) <= tol
}

/// Returns the unit-modulus `c` aligning `b` to `a` at the largest-magnitude
/// entry of `b`, or `None` when `b` vanishes there.
pub fn phase_alignment<R: Dim, C: Dim, S1, S2>(
    a: &Matrix<C64, R, C, S1>,
    b: &Matrix<C64, R, C, S2>,
) -> Option<C64>
where
    S1: RawStorage<C64, R, C>,
    S2: RawStorage<C64, R, C>,
{
    let (idx, bmax) = b
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))?;
    if bmax.norm() == 0.0 {
        return None;
    }
    let ratio = a.iter().nth(idx)? / bmax;
    if ratio.norm() == 0.0 {
        return None;
    }
    Some(ratio / ratio.norm())
}

/// Frobenius distance between `a` and `c·b` with `c` from [`phase_alignment`].
pub fn phase_distance<R: Dim, C: Dim, S1, S2>(
    a: &Matrix<C64, R, C, S1>,
    b: &Matrix<C64, R, C, S2>,
) -> f64
where
    S1: RawStorage<C64, R, C>,
    S2: RawStorage<C64, R, C>,
{
    match phase_alignment(a, b) {
        Some(ph) => a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| (x - ph * y).norm_sqr())
            .sum::<f64>()
            .sqrt(),
        None => {
            // b vanishes (or a vanishes at the pivot): compare directly
            a.iter()
                .zip(b.iter())
                .map(|(x, y)| (x - y).norm_sqr())
                .sum::<f64>()
                .sqrt()
        }
    }
}

/// True iff `a ≈ c·b` for some unit-modulus `c`.
pub fn equal_up_to_global_phase<R: Dim, C: Dim, S1, S2>(
    a: &Matrix<C64, R, C, S1>,
    b: &Matrix<C64, R, C, S2>,
    tol: f64,
) -> bool
where
    S1: RawStorage<C64, R, C>,
    S2: RawStorage<C64, R, C>,
{
    phase_distance(a, b) <= tol
}

pub fn frobenius<R: Dim, C: Dim, S: RawStorage<C64, R, C>>(m: &Matrix<C64, R, C, S>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Singular value decomposition with singular values sorted descending.
pub struct Svd4 {
    pub u: Mat4,
    pub singular_values: [f64; 4],
    pub v_adjoint: Mat4,
}

impl Svd4 {
    pub fn reconstruct(&self) -> Mat4 {
        let s = diag4(self.singular_values.map(C64::from));
        self.u * s * self.v_adjoint
    }
}

/// One-sided (Hestenes) Jacobi SVD.
///
/// nalgebra's bidiagonal SVD loses accuracy on some rank-deficient complex
/// matrices, which are exactly the realigned operators we care about; the
/// Jacobi sweep keeps small singular values at the rounding floor.
pub fn svd(m: &Mat4) -> Svd4 {
    let mut a = *m;
    let mut v = Mat4::identity();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..4 {
            for q in (p + 1)..4 {
                let alpha: f64 = a.column(p).iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = a.column(q).iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = a
                    .column(p)
                    .iter()
                    .zip(a.column(q).iter())
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let g = gamma.norm();
                if g <= 1e-15 * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                let ph = (gamma / g).conj();
                for mat in [&mut a, &mut v] {
                    for r in 0..4 {
                        let (xp, xq) = (mat[(r, p)], mat[(r, q)] * ph);
                        mat[(r, p)] = xp * cs - xq * sn;
                        mat[(r, q)] = xp * sn + xq * cs;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms = [0, 1, 2, 3].map(|j| a.column(j).norm());
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));
    let singular_values = order.map(|j| norms[j]);
    let scale = singular_values[0].max(f64::MIN_POSITIVE);
    let mut u = Mat4::zeros();
    let mut filled = 0;
    for (c, &j) in order.iter().enumerate() {
        if norms[j] > 1e-300 && norms[j] > 1e-15 * scale {
            u.set_column(c, &(a.column(j) / C64::from(norms[j])));
            filled += 1;
        }
    }
    // complete the left basis for vanishing singular values
    let mut e = 0;
    while filled < 4 {
        let mut cand = nalgebra::Vector4::<C64>::zeros();
        cand[e] = ONE;
        e += 1;
        for k in 0..filled {
            let proj = u.column(k).dotc(&cand);
            cand -= u.column(k) * proj;
        }
        let n = cand.norm();
        if n > 1e-6 {
            u.set_column(filled, &(cand / C64::from(n)));
            filled += 1;
        }
    }
    let v_adjoint = Mat4::from_fn(|r, c| v[(c, order[r])].conj());
    Svd4 {
        u,
        singular_values,
        v_adjoint,
    }
}

/// Eigen-decomposition of a 4×4 unitary as `(Q, phases)` with `m = Q·diag(e^{iθ})·Q†`.
/// Phases lie on the principal branch `(−π, π]`.
pub fn unitary_eigen(m: &Mat4, tol: f64) -> Result<(Mat4, [f64; 4])> {
    if !is_unitary(m, tol) {
        return Err(Error::NotUnitary {
            what: "matrix",
            deviation: unitary_deviation(m),
        });
    }
    let schur = Schur::new(*m);
    let (q, t) = schur.unpack();
    let phases = [0, 1, 2, 3].map(|i| principal_arg(t[(i, i)]));
    Ok((q, phases))
}

/// Argument on `(−π, π]`, folding a numerically negative `−π` onto `π`.
pub fn principal_arg(z: C64) -> f64 {
    let a = z.arg();
    if a <= -std::f64::consts::PI + 1e-12 {
        a + 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

/// Principal square root of a unitary: eigenphases halved from `(−π, π]`.
pub fn principal_sqrt(m: &Mat4) -> Result<Mat4> {
    let (q, phases) = unitary_eigen(m, UNITARY_TOL)?;
    let d = diag4(phases.map(|p| cis(p / 2.0)));
    Ok(q * d * q.adjoint())
}

/// `‖m†m − I‖_F`.
pub fn unitary_deviation<R: Dim, S: RawStorage<C64, R, R>>(m: &Matrix<C64, R, R, S>) -> f64 {
    let (n, _) = m.shape();
    let mut err = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut acc = ZERO;
            for k in 0..n {
                acc += m[(k, i)].conj() * m[(k, j)];
            }
            if i == j {
                acc -= ONE;
            }
            err += acc.norm_sqr();
        }
    }
    err.sqrt()
}

/// `exp(i·θ·P)` for an involutory `P` (`P² = I`): `cos θ·I + i sin θ·P`.
pub fn exp_i_involution(theta: f64, p: &Mat4) -> Mat4 {
    Mat4::identity() * C64::from(theta.cos()) + p * (I * theta.sin())
}

/// `exp(−i(λ/2)σ)` for a single-qubit Pauli `σ`.
pub fn pauli_rotation(pauli: Pauli, lambda: f64) -> Mat2 {
    let half = lambda / 2.0;
    Mat2::identity() * C64::from(half.cos()) - pauli.matrix() * (I * half.sin())
}

/// Unitary `exp(i·H)` for Hermitian `H`, via Hermitian eigen-decomposition.
pub fn exp_i_hermitian(h: &Mat4) -> Mat4 {
    let eig = nalgebra::SymmetricEigen::new(*h);
    let d = diag4([0, 1, 2, 3].map(|i| cis(eig.eigenvalues[i])));
    eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

pub fn exp_i_hermitian2(h: &Mat2) -> Mat2 {
    let eig = nalgebra::SymmetricEigen::new(*h);
    let d = diag2(cis(eig.eigenvalues[0]), cis(eig.eigenvalues[1]));
    eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

/// Dimension selector for [`haar_random_unitary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HaarDim {
    Two,
    Four,
}

/// Haar-distributed unitary from a complex Ginibre matrix, QR-factorized with
/// the phases of `R`'s diagonal pushed back into `Q`.
pub fn haar_random_unitary(dim: HaarDim, seed: u64) -> nalgebra::DMatrix<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_from_rng(dim, &mut rng)
}

pub fn haar_from_rng<R: rand::Rng + ?Sized>(dim: HaarDim, rng: &mut R) -> nalgebra::DMatrix<C64> {
    let n = match dim {
        HaarDim::Two => 2,
        HaarDim::Four => 4,
    };
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let g = nalgebra::DMatrix::<C64>::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        c(re * scale, im * scale)
    });
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    q
}

pub fn haar_mat2<R: rand::Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let m = haar_from_rng(HaarDim::Two, rng);
    Mat2::from_fn(|r, c| m[(r, c)])
}

pub fn haar_mat4<R: rand::Rng + ?Sized>(rng: &mut R) -> Mat4 {
    let m = haar_from_rng(HaarDim::Four, rng);
    Mat4::from_fn(|r, c| m[(r, c)])
}

/// Haar-random pure state: first column of a Haar unitary.
pub fn haar_state<R: rand::Rng + ?Sized>(dim: HaarDim, rng: &mut R) -> StateVec {
    let m = haar_from_rng(dim, rng);
    m.column(0).into_owned()
}

/// Reshape a two-qubit state into its 2×2 coefficient matrix `ψ[x][y] = ⟨xy|ψ⟩`.
pub fn reshape_state(v: &StateVec) -> Mat2 {
    debug_assert_eq!(v.len(), 4);
    Mat2::new(v[0], v[1], v[2], v[3])
}

pub fn basis_state(n_qubits: usize, index: usize) -> StateVec {
    let mut v = StateVec::zeros(1 << n_qubits);
    v[index] = ONE;
    v
}

pub fn state_from(amps: &[C64]) -> StateVec {
    StateVec::from_column_slice(amps)
}

/// `m·v` for a two-qubit operator and a 4-amplitude state.
pub fn apply4(m: &Mat4, v: &StateVec) -> StateVec {
    assert_eq!(v.len(), 4, "apply4 needs a two-qubit state");
    StateVec::from_fn(4, |i, _| (0..4).map(|k| m[(i, k)] * v[k]).sum())
}

/// `|⟨a|b⟩|²`.
pub fn fidelity(a: &StateVec, b: &StateVec) -> f64 {
    a.dotc(b).norm_sqr()
}

pub fn check_finite<R: Dim, C: Dim, S: RawStorage<C64, R, C>>(
    m: &Matrix<C64, R, C, S>,
) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}
