//! Cartan (KAK) decomposition of two-qubit unitaries.
//!
//! Every `U ∈ U(4)` factors as
//! `e^{iφ}·(A⊗B)·exp(i(θ₁σ_XX + θ₂σ_YY + θ₃σ_ZZ))·(C⊗D)`.
//! The decomposition here goes through the magic basis, where local gates
//! become real orthogonal matrices and the non-local core is diagonal, and is
//! then folded into the Weyl chamber `π/4 ≥ θ₁ ≥ θ₂ ≥ |θ₃|` (with `θ₃ ≥ 0`
//! when `θ₁ = π/4`) by moves that push Pauli and Clifford factors into the
//! local gates.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

use nalgebra::{Matrix4, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::{hadamard, s_gate};
use crate::linalg::{
    check_finite, equal_up_to_global_phase, exp_i_involution, is_unitary, mat4, pauli_rotation,
    phase_alignment, phase_distance, tensor, unitary_deviation, Mat2, Mat4, Pauli, PauliPair, C64,
    I, ZERO,
};
use crate::separability::{tensor_factorize, SEPARABILITY_TOL};

/// Absolute tolerance for placing angles on the `π/4` lattice.
pub const LATTICE_TOL: f64 = 1e-8;

/// Slack used when deciding chamber boundary cases.
const CHAMBER_TOL: f64 = 1e-9;

/// Eigenvalues of `σ_XX`, `σ_YY`, `σ_ZZ` on the four magic-basis vectors.
const MAGIC_SIGNS: [[f64; 4]; 3] = [
    [1.0, -1.0, 1.0, -1.0],
    [-1.0, 1.0, 1.0, -1.0],
    [1.0, 1.0, -1.0, -1.0],
];

#[derive(Clone, Debug, Serialize)]
pub struct KakDecomposition {
    pub global_phase: f64,
    #[serde(with = "crate::cli::format::mat2")]
    pub a_local: Mat2,
    #[serde(with = "crate::cli::format::mat2")]
    pub b_local: Mat2,
    pub theta: [f64; 3],
    #[serde(with = "crate::cli::format::mat2")]
    pub c_local: Mat2,
    #[serde(with = "crate::cli::format::mat2")]
    pub d_local: Mat2,
}

impl KakDecomposition {
    /// `A⊗B`, the local layer applied after the non-local core.
    pub fn outer_locals(&self) -> Mat4 {
        tensor(&self.a_local, &self.b_local)
    }

    /// `C⊗D`, the local layer applied before the non-local core.
    pub fn inner_locals(&self) -> Mat4 {
        tensor(&self.c_local, &self.d_local)
    }

    pub fn nonlocal_part(&self) -> Mat4 {
        nonlocal_part(self.theta)
    }
}

/// Euler angles of a single-qubit unitary,
/// `u = e^{i·phase}·Rz(λ₁)·Ry(λ₂)·Rz(λ₃)` with `R_σ(λ) = exp(−iλσ/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocalEulerAngles {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub phase: f64,
}

impl LocalEulerAngles {
    pub fn reconstruct(&self) -> Mat2 {
        pauli_rotation(Pauli::Z, self.lambda1)
            * pauli_rotation(Pauli::Y, self.lambda2)
            * pauli_rotation(Pauli::Z, self.lambda3)
            * C64::from_polar(1.0, self.phase)
    }
}

/// Lattice classification of a canonical angle triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NonlocalClass {
    /// `δ_w`: the angle is not a multiple of `π/2`.
    pub delta: [bool; 3],
    /// The angle is an odd multiple of `π/4`.
    pub odd_quarter_pi: [bool; 3],
    pub is_swap_point: bool,
    /// Some angle sits on neither lattice.
    pub generic_angle: bool,
    /// `k_w` with `θ_w = (2k_w+1)π/4` where `odd_quarter_pi` holds, else 0.
    pub k: [i64; 3],
}

impl NonlocalClass {
    pub fn is_lattice(&self) -> bool {
        !self.generic_angle
    }
}

fn magic_basis() -> Mat4 {
    let h = C64::from(FRAC_1_SQRT_2);
    let ih = I * FRAC_1_SQRT_2;
    mat4([
        [h, ih, ZERO, ZERO],
        [ZERO, ZERO, ih, h],
        [ZERO, ZERO, ih, -h],
        [h, -ih, ZERO, ZERO],
    ])
}

/// `exp(i(θ₁σ_XX + θ₂σ_YY + θ₃σ_ZZ))`, built from commuting factors.
pub fn nonlocal_part(theta: [f64; 3]) -> Mat4 {
    let [xx, yy, zz] = [Pauli::X, Pauli::Y, Pauli::Z].map(|p| PauliPair::new(p, p).matrix());
    exp_i_involution(theta[0], &xx)
        * exp_i_involution(theta[1], &yy)
        * exp_i_involution(theta[2], &zz)
}

/// `e^{iφ}·(A⊗B)·N(θ)·(C⊗D)`.
pub fn kak_reconstruct(d: &KakDecomposition) -> Mat4 {
    d.outer_locals()
        * nonlocal_part(d.theta)
        * d.inner_locals()
        * C64::from_polar(1.0, d.global_phase)
}

/// Real orthogonal `P` with `PᵀMP` diagonal, for a symmetric unitary `M`.
///
/// The real and imaginary parts of `M` commute, so a generic real combination
/// of them shares `M`'s eigenvectors. Several combinations are tried and the
/// one with the smallest off-diagonal residue kept.
fn real_diagonalizer(m: &Mat4) -> Matrix4<f64> {
    let re = m.map(|z| z.re);
    let im = m.map(|z| z.im);
    let mut best: Option<(f64, Matrix4<f64>)> = None;
    for coef in [
        1.0,
        0.618_033_988_749_894_9,
        std::f64::consts::E,
        0.314_159_265_358_979_3,
        std::f64::consts::SQRT_2,
        -1.732_050_807_568_877_2,
    ] {
        let sym = re + im * coef;
        let sym = (sym + sym.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym);
        let p = gram_schmidt(&eig.eigenvectors);
        let pc = p.map(C64::from);
        let dm = pc.transpose() * m * pc;
        let off: f64 = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| dm[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if best.as_ref().is_none_or(|(b, _)| off < *b) {
            best = Some((off, p));
        }
        if off < 1e-13 {
            break;
        }
    }
    let mut p = best.expect("at least one candidate").1;
    if p.determinant() < 0.0 {
        p.column_mut(0).neg_mut();
    }
    p
}

/// Real Gram–Schmidt pass over the columns.
fn gram_schmidt(m: &Matrix4<f64>) -> Matrix4<f64> {
    let mut q = *m;
    for j in 0..4 {
        let mut v = q.column(j).into_owned();
        for k in 0..j {
            let proj = q.column(k).dot(&v);
            v -= q.column(k) * proj;
        }
        let n = v.norm();
        q.set_column(j, &(v / n));
    }
    q
}

/// Nearest real orthogonal matrix (polar factor), with determinant `+1`.
fn nearest_special_orthogonal(m: &Matrix4<f64>) -> Matrix4<f64> {
    let svd = nalgebra::SVD::new(*m, true, true);
    let (u, vt) = (svd.u.expect("U"), svd.v_t.expect("Vᵀ"));
    let mut o = u * vt;
    if o.determinant() < 0.0 {
        let mut u = u;
        u.column_mut(3).neg_mut();
        o = u * vt;
    }
    o
}

/// Working state of the chamber folding: `U ∝ L·N(θ)·R`.
struct Folding {
    left: Mat4,
    theta: [f64; 3],
    right: Mat4,
}

impl Folding {
    fn axis(w: usize) -> Mat4 {
        let p = [Pauli::X, Pauli::Y, Pauli::Z][w];
        PauliPair::new(p, p).matrix()
    }

    /// `θ_w ← θ_w − kπ/2`, absorbing `exp(ikπ/2·σ_ww)` on the right.
    fn shift(&mut self, w: usize, k: i64) {
        if k == 0 {
            return;
        }
        let angle = k as f64 * FRAC_PI_2;
        self.theta[w] -= angle;
        self.right = exp_i_involution(angle, &Self::axis(w)) * self.right;
    }

    /// Conjugation by `σ⊗I` negates the two angles whose axes anticommute with it.
    fn flip(&mut self, pair: (usize, usize)) {
        let p = match pair {
            (0, 1) | (1, 0) => Pauli::Z,
            (1, 2) | (2, 1) => Pauli::X,
            _ => Pauli::Y,
        };
        let g = PauliPair::new(p, Pauli::I).matrix();
        self.left *= g;
        self.right = g * self.right;
        self.theta[pair.0] = -self.theta[pair.0];
        self.theta[pair.1] = -self.theta[pair.1];
    }

    /// `N(θ) = (G⊗G)·N(θ with i↔j)·(G⊗G)†` for the Clifford `G` exchanging the axes.
    fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let g = match (i.min(j), i.max(j)) {
            (0, 1) => s_gate(),
            (0, 2) => hadamard(),
            _ => pauli_rotation(Pauli::X, FRAC_PI_2),
        };
        let gg = tensor(&g, &g);
        self.left *= gg;
        self.right = gg.adjoint() * self.right;
        self.theta.swap(i, j);
    }

    fn canonicalize(&mut self) {
        for w in 0..3 {
            let k = (self.theta[w] / FRAC_PI_2).round() as i64;
            self.shift(w, k);
            if self.theta[w] <= -FRAC_PI_4 + CHAMBER_TOL {
                self.shift(w, -1);
            }
        }
        // order by magnitude
        for _ in 0..3 {
            for w in 0..2 {
                if self.theta[w].abs() + CHAMBER_TOL < self.theta[w + 1].abs() {
                    self.swap(w, w + 1);
                }
            }
        }
        match (self.theta[0] < 0.0, self.theta[1] < 0.0) {
            (true, true) => self.flip((0, 1)),
            (true, false) => self.flip((0, 2)),
            (false, true) => self.flip((1, 2)),
            (false, false) => {}
        }
        if self.theta[0] >= FRAC_PI_4 - CHAMBER_TOL && self.theta[2] < -CHAMBER_TOL {
            self.shift(0, 1);
            self.flip((0, 2));
        }
    }
}

/// Cartan decomposition folded into the Weyl chamber.
pub fn kak_decompose(u: &Mat4, tol: f64) -> Result<KakDecomposition> {
    check_finite(u)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if !is_unitary(u, tol) {
        return Err(Error::NotUnitary {
            what: "gate",
            deviation: unitary_deviation(u),
        });
    }
    let det = u.determinant();
    let normalized = u * C64::from_polar(1.0, -det.arg() / 4.0);
    let b = magic_basis();
    let um = b.adjoint() * normalized * b;
    let m = um.transpose() * um;
    let p = real_diagonalizer(&m);
    let pc = p.map(C64::from);
    let d = pc.transpose() * m * pc;
    let mut phi = [0, 1, 2, 3].map(|k| d[(k, k)].arg() / 2.0);
    let x = um * pc * crate::linalg::diag4(phi.map(|f| C64::from_polar(1.0, -f)));
    let mut x_real = nearest_special_orthogonal(&x.map(|z| z.re));
    if (x_real.map(C64::from) - x).norm() > 1e-6 {
        // determinant −1 branch: move a π into the first phase
        phi[0] += PI;
        let x = um * pc * crate::linalg::diag4(phi.map(|f| C64::from_polar(1.0, -f)));
        x_real = nearest_special_orthogonal(&x.map(|z| z.re));
    }
    let theta = [0, 1, 2].map(|w| 0.25 * (0..4).map(|k| MAGIC_SIGNS[w][k] * phi[k]).sum::<f64>());

    let mut fold = Folding {
        left: b * x_real.map(C64::from) * b.adjoint(),
        theta,
        right: b * pc.transpose() * b.adjoint(),
    };
    fold.canonicalize();

    let split = |m: &Mat4| -> Result<(Mat2, Mat2)> {
        let f = tensor_factorize(m, SEPARABILITY_TOL)?;
        match (f.factor_a, f.factor_b) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::Numerical(format!(
                "local factor is not a tensor product (Schmidt values {:?})",
                f.schmidt_values
            ))),
        }
    };
    let (a_local, b_local) = split(&fold.left)?;
    let (c_local, d_local) = split(&fold.right)?;
    let mut dec = KakDecomposition {
        global_phase: 0.0,
        a_local,
        b_local,
        theta: fold.theta,
        c_local,
        d_local,
    };
    let core = kak_reconstruct(&dec);
    let phase = phase_alignment(u, &core)
        .ok_or_else(|| Error::Numerical("vanishing reconstruction".into()))?;
    dec.global_phase = phase.arg();
    let err = phase_distance(u, &core);
    if err > 1e-6 {
        return Err(Error::Numerical(format!("reconstruction error {err:.3e}")));
    }
    Ok(dec)
}

/// Distance from `x` to the nearest multiple of `period`.
fn lattice_distance(x: f64, period: f64) -> f64 {
    (x - (x / period).round() * period).abs()
}

/// Place a canonical angle triple on the `{0, π/4}` lattice modulo `π/2`.
pub fn classify_nonlocal(theta: [f64; 3], tol: f64) -> NonlocalClass {
    let mut delta = [false; 3];
    let mut odd = [false; 3];
    let mut k = [0i64; 3];
    let mut generic = false;
    for w in 0..3 {
        let zero = lattice_distance(theta[w], FRAC_PI_2) <= tol;
        let quarter = lattice_distance(theta[w] - FRAC_PI_4, FRAC_PI_2) <= tol;
        delta[w] = !zero;
        odd[w] = quarter;
        if quarter {
            k[w] = ((theta[w] / FRAC_PI_4 - 1.0) / 2.0).round() as i64;
        }
        generic |= !zero && !quarter;
    }
    NonlocalClass {
        delta,
        odd_quarter_pi: odd,
        is_swap_point: odd.iter().all(|&b| b),
        generic_angle: generic,
        k,
    }
}

/// ZYZ Euler angles with `λ₂ ∈ [0, π]`.
///
/// When `λ₂` is 0 or `π` only `λ₁ ± λ₃` is determined; then `λ₃ = 0`.
pub fn euler_zyz(u: &Mat2) -> LocalEulerAngles {
    let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
    let v = u * C64::from_polar(1.0, -det.arg() / 2.0);
    let (cos, sin) = (v[(0, 0)].norm(), v[(1, 0)].norm());
    let lambda2 = 2.0 * sin.atan2(cos);
    const EPS: f64 = 1e-12;
    // v00 = e^{−i(λ₁+λ₃)/2}·cos, v10 = e^{i(λ₁−λ₃)/2}·sin
    let (lambda1, lambda3) = if sin < EPS {
        (-2.0 * v[(0, 0)].arg(), 0.0)
    } else if cos < EPS {
        (2.0 * v[(1, 0)].arg(), 0.0)
    } else {
        let sum = -2.0 * v[(0, 0)].arg();
        let diff = 2.0 * v[(1, 0)].arg();
        ((sum + diff) / 2.0, (sum - diff) / 2.0)
    };
    let mut angles = LocalEulerAngles {
        lambda1,
        lambda2,
        lambda3,
        phase: 0.0,
    };
    let rec = angles.reconstruct();
    angles.phase = phase_alignment(u, &rec).map_or(0.0, |p| p.arg());
    angles
}

/// Conjugation maps every Pauli pair to a Pauli pair up to phase.
pub fn is_clifford(u: &Mat4, tol: f64) -> bool {
    let paulis: Vec<Mat4> = PauliPair::all().map(|p| p.matrix()).collect();
    PauliPair::all().filter(|p| !p.is_identity()).all(|p| {
        let conj = u * p.matrix() * u.adjoint();
        paulis
            .iter()
            .any(|q| equal_up_to_global_phase(&conj, q, tol))
    })
}

/// `(θ, class)` of a gate: convenience for callers that only need the angles.
pub fn nonlocal_class(u: &Mat4, tol: f64) -> Result<([f64; 3], NonlocalClass)> {
    let d = kak_decompose(u, tol)?;
    Ok((d.theta, classify_nonlocal(d.theta, LATTICE_TOL)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{cnot, cz, swap, t_gate};
    use crate::linalg::{haar_mat2, haar_mat4, UNITARY_TOL};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn assert_close3(a: [f64; 3], b: [f64; 3], tol: f64) {
        for w in 0..3 {
            assert!((a[w] - b[w]).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    fn in_chamber(t: [f64; 3]) -> bool {
        let e = 1e-9;
        FRAC_PI_4 + e >= t[0]
            && t[0] + e >= t[1]
            && t[1] + e >= t[2].abs()
            && !(t[0] > FRAC_PI_4 - e && t[2] < -e)
    }

    fn check(u: &Mat4) -> KakDecomposition {
        let d = kak_decompose(u, UNITARY_TOL).unwrap();
        for m in [d.a_local, d.b_local, d.c_local, d.d_local] {
            assert!(is_unitary(&m, 1e-10));
        }
        let err = (kak_reconstruct(&d) - u).norm();
        assert!(err <= 1e-9, "reconstruction error {err}");
        assert!(in_chamber(d.theta), "{:?}", d.theta);
        d
    }

    #[test]
    fn magic_signs_match_the_basis() {
        let b = magic_basis();
        assert!(is_unitary(&b, 1e-14));
        for (w, p) in [Pauli::X, Pauli::Y, Pauli::Z].into_iter().enumerate() {
            let m = PauliPair::new(p, p).matrix();
            let diag = b.adjoint() * m * b;
            for k in 0..4 {
                assert!((diag[(k, k)] - C64::from(MAGIC_SIGNS[w][k])).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn local_gates_have_zero_angles() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let u = tensor(&haar_mat2(&mut rng), &haar_mat2(&mut rng));
            let d = check(&u);
            assert_close3(d.theta, [0.0; 3], 1e-9);
        }
    }

    #[test]
    fn named_gate_angles() {
        let q = FRAC_PI_4;
        assert_close3(check(&swap()).theta, [q, q, q], 1e-9);
        assert_close3(check(&cnot()).theta, [q, 0.0, 0.0], 1e-9);
        assert_close3(check(&cz()).theta, [q, 0.0, 0.0], 1e-9);
        assert_close3(check(&Mat4::identity()).theta, [0.0; 3], 1e-12);
    }

    #[test]
    fn reconstruct_pure_core() {
        let d = KakDecomposition {
            global_phase: 0.0,
            a_local: Mat2::identity(),
            b_local: Mat2::identity(),
            theta: [FRAC_PI_4, 0.0, 0.0],
            c_local: Mat2::identity(),
            d_local: Mat2::identity(),
        };
        let xx = PauliPair::new(Pauli::X, Pauli::X).matrix();
        let expected = crate::linalg::exp_i_hermitian(&(xx * C64::from(FRAC_PI_4)));
        assert!((kak_reconstruct(&d) - expected).norm() < 1e-12);
    }

    #[test]
    fn haar_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            check(&haar_mat4(&mut rng));
        }
    }

    #[test]
    fn canonical_triples_are_fixed_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 0..200 {
            let t1 = rng.random_range(0.0..FRAC_PI_4);
            let t2 = rng.random_range(0.0..=t1);
            let t3 = rng.random_range(-t2..=t2);
            let theta = match i % 4 {
                0 => [t1, t2, t3],
                1 => [FRAC_PI_4, t2, t3.abs()],
                2 => [t1, t1, t3],
                _ => [t1, t2, t2],
            };
            let d = check(&nonlocal_part(theta));
            assert_close3(d.theta, theta, 1e-8);
        }
    }

    #[test]
    fn angles_are_local_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let u = haar_mat4(&mut rng);
            let dressed = tensor(&haar_mat2(&mut rng), &haar_mat2(&mut rng))
                * u
                * tensor(&haar_mat2(&mut rng), &haar_mat2(&mut rng));
            assert_close3(check(&dressed).theta, check(&u).theta, 1e-8);
        }
    }

    #[test]
    fn degenerate_spectra_still_decompose() {
        let q = FRAC_PI_4;
        for theta in [
            [q, q, q],
            [q, q, 0.0],
            [q, q, -q],
            [0.3, 0.3, 0.3],
            [0.3, 0.3, -0.3],
            [q, 0.2, -0.2],
        ] {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            let u = tensor(&haar_mat2(&mut rng), &haar_mat2(&mut rng))
                * nonlocal_part(theta)
                * tensor(&haar_mat2(&mut rng), &haar_mat2(&mut rng));
            check(&u);
        }
    }

    #[test]
    fn clifford_gates_sit_on_the_quarter_lattice() {
        let h_cnot_s =
            tensor(&hadamard(), &Mat2::identity()) * cnot() * tensor(&Mat2::identity(), &s_gate());
        let mut counterexamples = Vec::new();
        for (name, g) in [
            ("cnot", cnot()),
            ("swap", swap()),
            ("cz", cz()),
            ("h-cnot-s", h_cnot_s),
        ] {
            assert!(is_clifford(&g, 1e-9), "{name}");
            let theta = check(&g).theta;
            for t in theta {
                let zero = lattice_distance(t, FRAC_PI_2) <= 1e-8;
                let odd = lattice_distance(t - FRAC_PI_4, FRAC_PI_2) <= 1e-8;
                if !zero && !odd {
                    counterexamples.push((name, theta));
                }
            }
        }
        assert!(counterexamples.is_empty(), "{counterexamples:?}");
    }

    #[test]
    fn classification() {
        let q = FRAC_PI_4;
        let swap_class = classify_nonlocal([q, q, q], LATTICE_TOL);
        assert!(swap_class.is_swap_point && !swap_class.generic_angle);
        let zero = classify_nonlocal([0.0; 3], LATTICE_TOL);
        assert_eq!(zero.delta, [false; 3]);
        let cnot_class = classify_nonlocal(check(&cnot()).theta, LATTICE_TOL);
        assert_eq!(cnot_class.odd_quarter_pi, [true, false, false]);
        assert_eq!(cnot_class.delta, [true, false, false]);
        assert!(classify_nonlocal([0.3, 0.0, 0.0], LATTICE_TOL).generic_angle);
        assert_eq!(
            classify_nonlocal([-3.0 * q, 0.0, 0.0], LATTICE_TOL).k,
            [-2, 0, 0]
        );
    }

    #[test]
    fn euler_examples() {
        let id = euler_zyz(&Mat2::identity());
        assert!(id.lambda1.abs() < 1e-12 && id.lambda2.abs() < 1e-12 && id.lambda3.abs() < 1e-12);
        let rz = euler_zyz(&pauli_rotation(Pauli::Z, 0.8));
        assert!((rz.lambda1 - 0.8).abs() < 1e-12 && rz.lambda2.abs() < 1e-12 && rz.lambda3 == 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..500 {
            let u = haar_mat2(&mut rng);
            let e = euler_zyz(&u);
            assert!((0.0..=PI).contains(&e.lambda2));
            assert!((e.reconstruct() - u).norm() < 1e-10);
        }
        for u in [Pauli::X.matrix(), Pauli::Y.matrix(), hadamard(), s_gate()] {
            assert!((euler_zyz(&u).reconstruct() - u).norm() < 1e-10);
        }
    }

    #[test]
    fn clifford_membership() {
        assert!(is_clifford(&cnot(), 1e-9));
        assert!(is_clifford(
            &PauliPair::new(Pauli::Z, Pauli::I).matrix(),
            1e-9
        ));
        assert!(!is_clifford(
            &t_gate(std::f64::consts::PI / 8.0, std::f64::consts::PI / 8.0),
            1e-9
        ));
        assert!(!is_clifford(&crate::gates::c_pi8(), 1e-9));
    }

    #[test]
    fn rejects_non_unitary() {
        let m = Mat4::identity() * C64::from(2.0);
        assert!(matches!(
            kak_decompose(&m, 1e-9),
            Err(Error::NotUnitary { .. })
        ));
    }
}
