//! Three-qubit Pauli operators in binary-symplectic form.
//!
//! An operator is `i^phase · σ₁ ⊗ σ₂ ⊗ σ₃` where each factor is the Hermitian
//! `I, X, Y, Z` selected by one `(x, z)` bit pair (`Y` for `(1, 1)`, so
//! `Y = i X Z`). Masks use state-index bit order: qubit 1 is the leftmost tensor
//! factor and the most significant bit of a basis-state index.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::gf8::FieldElement;
use crate::phasespace::{is_subgroup_row, Point, COLUMNS};
use crate::{Error, Result};

pub const QUBITS: usize = 3;
pub const DIM: usize = 1 << QUBITS;

/// Mask bit for qubit `q` (0-based, leftmost first).
fn qubit_bit(q: usize) -> u8 {
    1 << (QUBITS - 1 - q)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PauliOp {
    x: u8,
    z: u8,
    /// Exponent of `i`, mod 4.
    phase: u8,
}

/// Exponent of `i` picked up when multiplying single-qubit Hermitian Paulis
/// `σ(x1,z1) · σ(x2,z2)`.
fn product_phase(x1: bool, z1: bool, x2: bool, z2: bool) -> i32 {
    let (x2i, z2i) = (x2 as i32, z2 as i32);
    match (x1, z1) {
        (false, false) => 0,
        (true, true) => z2i - x2i,
        (true, false) => z2i * (2 * x2i - 1),
        (false, true) => x2i * (1 - 2 * z2i),
    }
}

impl PauliOp {
    pub const IDENTITY: PauliOp = PauliOp {
        x: 0,
        z: 0,
        phase: 0,
    };

    pub fn new(x: u8, z: u8, phase: u8) -> Self {
        PauliOp {
            x: x & 0b111,
            z: z & 0b111,
            phase: phase % 4,
        }
    }

    pub fn x_mask(self) -> u8 {
        self.x
    }

    pub fn z_mask(self) -> u8 {
        self.z
    }

    pub fn phase(self) -> u8 {
        self.phase
    }

    /// The same Pauli label with phase 0.
    pub fn unsigned(self) -> PauliOp {
        PauliOp { phase: 0, ..self }
    }

    pub fn is_identity_up_to_phase(self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Hermitian iff the overall phase is real.
    pub fn is_hermitian(self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// Single-qubit factor of qubit `q` as one of `I, X, Y, Z`.
    pub fn factor(self, q: usize) -> char {
        let bit = qubit_bit(q);
        match (self.x & bit != 0, self.z & bit != 0) {
            (false, false) => 'I',
            (true, false) => 'X',
            (true, true) => 'Y',
            (false, true) => 'Z',
        }
    }

    pub fn multiply(self, rhs: PauliOp) -> PauliOp {
        let mut phase = self.phase as i32 + rhs.phase as i32;
        for q in 0..QUBITS {
            let bit = qubit_bit(q);
            phase += product_phase(
                self.x & bit != 0,
                self.z & bit != 0,
                rhs.x & bit != 0,
                rhs.z & bit != 0,
            );
        }
        PauliOp {
            x: self.x ^ rhs.x,
            z: self.z ^ rhs.z,
            phase: phase.rem_euclid(4) as u8,
        }
    }

    /// Symplectic test: `Σ xᵢ z'ᵢ + x'ᵢ zᵢ = 0` over GF(2).
    pub fn commutes_with(self, other: PauliOp) -> bool {
        ((self.x & other.z) ^ (other.x & self.z))
            .count_ones()
            .is_multiple_of(2)
    }

    /// Applies the operator to a state vector.
    pub fn apply(self, psi: &[Complex64; DIM]) -> [Complex64; DIM] {
        // X and Z masks act as a signed permutation; each Y adds a factor i.
        let ys = (self.x & self.z).count_ones();
        let global = i_pow(self.phase as u32 + ys);
        let mut out = [Complex64::new(0.0, 0.0); DIM];
        for (k, &amp) in psi.iter().enumerate() {
            let sign = if (k as u8 & self.z).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out[k ^ self.x as usize] += amp * global * sign;
        }
        out
    }

    /// Dense 8×8 matrix, `matrix[row][col]`.
    pub fn to_matrix(self) -> [[Complex64; DIM]; DIM] {
        let mut m = [[Complex64::new(0.0, 0.0); DIM]; DIM];
        for col in 0..DIM {
            let mut e = [Complex64::new(0.0, 0.0); DIM];
            e[col] = Complex64::new(1.0, 0.0);
            let v = self.apply(&e);
            for row in 0..DIM {
                m[row][col] = v[row];
            }
        }
        m
    }
}

pub(crate) fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl std::ops::Mul for PauliOp {
    type Output = PauliOp;
    fn mul(self, rhs: PauliOp) -> PauliOp {
        self.multiply(rhs)
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["", "+i", "-", "-i"][self.phase as usize])?;
        for q in 0..QUBITS {
            write!(f, "{}", self.factor(q))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PauliOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else {
            (0, s)
        };
        if body.chars().count() != QUBITS {
            return Err(Error::InvalidInput(format!(
                "{s:?} is not a 3-qubit Pauli string"
            )));
        }
        let (mut x, mut z) = (0, 0);
        for (q, ch) in body.chars().enumerate() {
            let bit = qubit_bit(q);
            match ch {
                'I' => {}
                'X' => x |= bit,
                'Y' => {
                    x |= bit;
                    z |= bit;
                }
                'Z' => z |= bit,
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "{ch:?} is not one of I, X, Y, Z"
                    )))
                }
            }
        }
        Ok(PauliOp::new(x, z, phase))
    }
}

fn coords_mask(x: FieldElement) -> u8 {
    x.self_dual_coords()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_one())
        .fold(0, |acc, (q, _)| acc | qubit_bit(q))
}

/// Operator of a phase-space point: qubit `i` carries `X^{xᵢ} Z^{zᵢ}` (as
/// Hermitian `Y` when both are set), with `x` and `z` the self-dual
/// coordinates of `a` and `b`.
pub fn point_to_pauli(p: Point) -> PauliOp {
    PauliOp::new(coords_mask(p.a), coords_mask(p.b), 0)
}

/// Inverse of [`point_to_pauli`] on the phase-free labels.
pub fn pauli_to_point(op: PauliOp) -> Point {
    let coords = |mask: u8| {
        let bits = [0, 1, 2].map(|q| crate::Bit::new(mask & qubit_bit(q) != 0));
        FieldElement::from_coords(bits)
    };
    Point::new(coords(op.x), coords(op.z))
}

/// Seven pairwise-commuting operators of one table row.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OperatorClass {
    pub ops: [PauliOp; COLUMNS],
    /// Indices of the three independent generators (the row's first columns).
    pub generators: [usize; 3],
}

impl OperatorClass {
    pub fn generator_ops(&self) -> [PauliOp; 3] {
        self.generators.map(|i| self.ops[i])
    }
}

pub fn class_from_row(row: &[Point; COLUMNS]) -> Result<OperatorClass> {
    let ops = row.map(point_to_pauli);
    for i in 0..COLUMNS {
        for j in i + 1..COLUMNS {
            if !ops[i].commutes_with(ops[j]) {
                return Err(Error::Anticommuting(ops[i].to_string(), ops[j].to_string()));
            }
        }
    }
    if !is_subgroup_row(row) {
        return Err(Error::InvalidTable(
            "row is not a 3-dimensional subgroup".into(),
        ));
    }
    Ok(OperatorClass {
        ops,
        generators: [0, 1, 2],
    })
}
