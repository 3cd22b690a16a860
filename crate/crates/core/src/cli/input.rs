//! Parsing of gate, basis and resource arguments.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::path::Path;

use crate::bases::{
    bell_basis, beta_ab_basis, beta_nl_basis, computational_basis, conjugated_pauli_basis,
    m1_basis, m2_basis, shifted_basis, MeasurementBasis, ORTHONORMAL_TOL,
};
use crate::cli::format::{BasisDocument, GateDocument};
use crate::cli::CliError;
use crate::gates;
use crate::kak::nonlocal_part;
use crate::linalg::{
    is_unitary, state_from, unitary_deviation, Mat2, Mat4, Pauli, StateVec, C64, UNITARY_TOL,
};
use crate::teleport::ResourceState;

/// Parse an angle: a plain number or a multiple of `pi` such as `pi/8`,
/// `-3pi/4` or `2*pi`.
pub fn parse_angle(s: &str) -> Result<f64, CliError> {
    let t: String = s
        .trim()
        .to_ascii_lowercase()
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .collect();
    let bad = || CliError::Usage(format!("cannot parse angle '{s}'"));
    let Some(pos) = t.find("pi") else {
        return t.parse::<f64>().map_err(|_| bad());
    };
    let (coef, rest) = (&t[..pos], &t[pos + 2..]);
    let coef = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let den = match rest {
        "" => 1.0,
        r => r
            .strip_prefix('/')
            .ok_or_else(bad)?
            .parse::<f64>()
            .map_err(|_| bad())?,
    };
    Ok(coef * PI / den)
}

fn parse_angles<const N: usize>(args: &str, what: &str) -> Result<[f64; N], CliError> {
    let parts: Vec<&str> = args.split(',').collect();
    if parts.len() != N {
        return Err(CliError::Usage(format!(
            "{what} takes {N} comma-separated values, got '{args}'"
        )));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = parse_angle(p)?;
    }
    Ok(out)
}

fn read_document(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read '{path}': {e}")))
}

fn looks_like_document(s: &str) -> bool {
    s.trim_start().starts_with('{')
}

/// A resolved two-qubit gate.
#[derive(Clone, Debug)]
pub struct GateArg {
    pub label: String,
    pub matrix: Mat4,
}

impl GateArg {
    /// Named gate, `t:φ,ξ`, `kak:θ₁,θ₂,θ₃`, an inline gate document or a
    /// path to one.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let (head, args) = match s.split_once(':') {
            Some((h, a)) => (h.trim().to_ascii_lowercase(), Some(a)),
            None => (s.trim().to_ascii_lowercase(), None),
        };
        let named = match (head.as_str(), args) {
            ("identity" | "id" | "i", None) => Some(Mat4::identity()),
            ("cnot", None) => Some(gates::cnot()),
            ("cz", None) => Some(gates::cz()),
            ("swap", None) => Some(gates::swap()),
            ("q", None) => Some(gates::q_gate()),
            ("r", None) => Some(gates::r_gate()),
            ("c_pi8", None) => Some(gates::c_pi8()),
            ("h_c_pi8", None) => Some(gates::hadamard_c_pi8()),
            ("cnot_sqrt", None) => Some(gates::cnot_sqrt()),
            ("swap_sqrt", None) => Some(gates::swap_sqrt()),
            ("exp_yy", None) => Some(gates::exp_yy()),
            ("t", Some(a)) => {
                let [phi, xi] = parse_angles::<2>(a, "t")?;
                Some(gates::t_gate(phi, xi))
            }
            ("kak", Some(a)) => Some(nonlocal_part(parse_angles::<3>(a, "kak")?)),
            _ => None,
        };
        let (label, matrix) = match named {
            Some(m) => (s.trim().to_string(), m),
            None => {
                let text = if looks_like_document(s) {
                    s.to_string()
                } else if Path::new(s).is_file() {
                    read_document(s)?
                } else {
                    return Err(CliError::Usage(format!("unknown gate '{s}'")));
                };
                let doc = GateDocument::parse(&text).map_err(|e| CliError::Usage(e.to_string()))?;
                (
                    doc.name.clone().unwrap_or_else(|| s.trim().to_string()),
                    doc.to_matrix(),
                )
            }
        };
        if !matrix.iter().all(|z| z.re.is_finite() && z.im.is_finite())
            || !is_unitary(&matrix, UNITARY_TOL)
        {
            return Err(CliError::Validation(format!(
                "gate '{label}' is not unitary (deviation {:.3e})",
                unitary_deviation(&matrix)
            )));
        }
        Ok(Self { label, matrix })
    }
}

fn named_single_qubit(s: &str) -> Option<Mat2> {
    Some(match s {
        "i" | "identity" => Mat2::identity(),
        "h" => gates::hadamard(),
        "s" => gates::s_gate(),
        "t" | "pi8" => gates::pi8_gate(),
        "x" => Pauli::X.matrix(),
        "y" => Pauli::Y.matrix(),
        "z" => Pauli::Z.matrix(),
        _ => return None,
    })
}

/// `[[[re,im],[re,im]],[[re,im],[re,im]]]` or a named single-qubit gate.
fn parse_mat2(s: &str) -> Result<Mat2, CliError> {
    if let Some(m) = named_single_qubit(&s.trim().to_ascii_lowercase()) {
        return Ok(m);
    }
    let rows: [[[f64; 2]; 2]; 2] = serde_json::from_str(s)
        .map_err(|e| CliError::Usage(format!("cannot parse 2×2 matrix '{s}': {e}")))?;
    Ok(Mat2::from_fn(|r, c| C64::new(rows[r][c][0], rows[r][c][1])))
}

/// A resolved measurement basis.
#[derive(Clone, Debug)]
pub struct BasisArg {
    pub basis: MeasurementBasis,
}

impl BasisArg {
    /// Parse and require orthonormality.
    pub fn parse(s: &str, front: &Mat4) -> Result<Self, CliError> {
        let parsed = Self::parse_unchecked(s, front)?;
        let dev = parsed.basis.orthonormality_deviation();
        if dev > ORTHONORMAL_TOL {
            return Err(CliError::Validation(format!(
                "basis '{}' is not orthonormal (deviation {dev:.3e})",
                parsed.basis.name
            )));
        }
        Ok(parsed)
    }

    /// Parse without the orthonormality check, for reporting on invalid bases.
    ///
    /// `shifted:α,β` builds the shifted basis on the columns of `front`.
    pub fn parse_unchecked(s: &str, front: &Mat4) -> Result<Self, CliError> {
        let (head, args) = match s.split_once(':') {
            Some((h, a)) => (h.trim().to_ascii_lowercase(), Some(a)),
            None => (s.trim().to_ascii_lowercase(), None),
        };
        let basis = match (head.as_str(), args) {
            ("bell", None) => bell_basis(),
            ("m1", None) => m1_basis(),
            ("m2", None) => m2_basis(),
            ("computational", None) => computational_basis(),
            ("beta_ab", Some(a)) => {
                let parts: Vec<&str> = a.split(',').collect();
                let (a, b) = match parts.as_slice() {
                    [a] => {
                        let a = parse_angle(a)?;
                        if a.abs() > FRAC_1_SQRT_2 + 1e-12 {
                            return Err(CliError::Usage(format!(
                                "beta_ab needs |a| ≤ 1/√2, got {a}"
                            )));
                        }
                        (a, (0.5 - a * a).max(0.0).sqrt())
                    }
                    [a, b] => (parse_angle(a)?, parse_angle(b)?),
                    _ => {
                        return Err(CliError::Usage(format!(
                            "beta_ab takes a or a,b, got '{a}'"
                        )))
                    }
                };
                beta_ab_basis(a, b)?
            }
            ("beta_nl", Some(a)) => {
                let [t1, t2, t3] = parse_angles::<3>(a, "beta_nl")?;
                beta_nl_basis(t1, t2, t3)
            }
            ("pauli_conj", Some(a)) => conjugated_pauli_basis(&parse_mat2(a)?)?,
            ("shifted", Some(a)) => {
                let [alpha, beta] = parse_angles::<2>(a, "shifted")?;
                shifted_basis(front, alpha, beta)?
            }
            _ => {
                let text = if looks_like_document(s) {
                    s.to_string()
                } else if Path::new(s).is_file() {
                    read_document(s)?
                } else {
                    return Err(CliError::Usage(format!("unknown basis '{s}'")));
                };
                let doc =
                    BasisDocument::parse(&text).map_err(|e| CliError::Usage(e.to_string()))?;
                let name = doc.name.clone().unwrap_or_else(|| s.trim().to_string());
                MeasurementBasis::new_unchecked(name, doc.to_vectors())?
            }
        };
        Ok(Self { basis })
    }
}

/// `bell` or a JSON list of four `[re, im]` amplitudes.
pub fn parse_resource(s: &str) -> Result<ResourceState, CliError> {
    if s.trim().eq_ignore_ascii_case("bell") {
        return Ok(ResourceState::bell());
    }
    let amps: [[f64; 2]; 4] = serde_json::from_str(s)
        .map_err(|e| CliError::Usage(format!("cannot parse resource '{s}': {e}")))?;
    let v: StateVec = state_from(&amps.map(|[re, im]| C64::new(re, im)));
    Ok(ResourceState::from_state(&v)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert!((parse_angle("pi/8").unwrap() - PI / 8.0).abs() < 1e-15);
        assert!((parse_angle("-3pi/4").unwrap() + 0.75 * PI).abs() < 1e-15);
        assert!((parse_angle("2*pi").unwrap() - 2.0 * PI).abs() < 1e-15);
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("x").is_err());
    }

    #[test]
    fn named_gates_resolve() {
        for name in [
            "cnot",
            "swap",
            "q",
            "r",
            "cz",
            "c_pi8",
            "cnot_sqrt",
            "swap_sqrt",
            "exp_yy",
            "t:pi/8,pi/8",
            "kak:0.1,0.2,0.3",
        ] {
            assert!(GateArg::parse(name).is_ok(), "{name}");
        }
        assert!(matches!(GateArg::parse("nope"), Err(CliError::Usage(_))));
        assert!(matches!(GateArg::parse("t:1"), Err(CliError::Usage(_))));
    }

    #[test]
    fn non_unitary_document_is_a_validation_error() {
        let doc = GateDocument::from_matrix(None, &(Mat4::identity() * C64::from(2.0))).write();
        assert!(matches!(GateArg::parse(&doc), Err(CliError::Validation(_))));
    }

    #[test]
    fn named_bases_resolve() {
        let id = Mat4::identity();
        for name in [
            "bell",
            "m1",
            "m2",
            "beta_ab:0.5",
            "beta_ab:0.6,0.3741657386773941",
            "beta_nl:pi/4,0,0",
            "pauli_conj:h",
            "shifted:pi/4,pi/2",
        ] {
            assert!(BasisArg::parse(name, &id).is_ok(), "{name}");
        }
        assert!(BasisArg::parse("pauli_conj:[[[1,0],[0,0]],[[0,0],[0,1]]]", &id).is_ok());
        assert!(matches!(
            BasisArg::parse("beta_ab:0.9", &id),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn resources() {
        assert!(parse_resource("bell").is_ok());
        assert!(parse_resource("[[1,0],[0,0],[0,0],[0,0]]").is_ok());
        assert!(matches!(
            parse_resource("[[1,0],[1,0],[0,0],[0,0]]"),
            Err(CliError::Validation(_))
        ));
    }
}
