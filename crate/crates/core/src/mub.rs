//! Eigenbases of the nine operator classes and their numerical checks.
//!
//! Each class has three independent commuting generators `G₁, G₂, G₃`; for a
//! sign pattern `s ∈ {±1}³` the product `Π (I + sⱼGⱼ)/2` is a rank-one
//! projector, and the eight patterns give an orthonormal basis. Bases from
//! different rows of a valid table are mutually unbiased:
//! `|⟨ψ|φ⟩|² = 1/8` for every cross pair.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::pauli::{class_from_row, OperatorClass, DIM, QUBITS};
use crate::phasespace::{validate_table, StriationTable};
use crate::{Error, Result};

/// Orthonormality and unbiasedness tolerance.
pub const TOLERANCE: f64 = 1e-10;
/// Tolerance for calling a single-qubit reduced state pure.
pub const PURITY_TOLERANCE: f64 = 1e-9;
/// Column norm threshold when extracting a projector's range vector.
const COLUMN_THRESHOLD: f64 = 1e-8;

/// The four separability structures a complete three-qubit MUB set can have.
pub const KNOWN_STRUCTURES: [Structure; 4] = [
    Structure::new(3, 0, 6),
    Structure::new(2, 3, 4),
    Structure::new(1, 6, 2),
    Structure::new(0, 9, 0),
];

pub type StateVector = [Complex64; DIM];

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeparabilityLabel {
    Triseparable,
    Biseparable,
    Nonseparable,
}

impl fmt::Display for SeparabilityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeparabilityLabel::Triseparable => "triseparable",
            SeparabilityLabel::Biseparable => "biseparable",
            SeparabilityLabel::Nonseparable => "nonseparable",
        })
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Basis {
    pub states: [StateVector; DIM],
    pub label: SeparabilityLabel,
}

impl Basis {
    /// Amplitudes as `[state][component][re, im]`.
    pub fn amplitudes(&self) -> Vec<Vec<[f64; 2]>> {
        self.states
            .iter()
            .map(|s| s.iter().map(|c| [c.re, c.im]).collect())
            .collect()
    }
}

/// `(n_tri, n_bi, n_non)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(from = "[usize; 3]", into = "[usize; 3]")]
pub struct Structure {
    pub triseparable: usize,
    pub biseparable: usize,
    pub nonseparable: usize,
}

impl Structure {
    pub const fn new(triseparable: usize, biseparable: usize, nonseparable: usize) -> Self {
        Structure {
            triseparable,
            biseparable,
            nonseparable,
        }
    }

    pub fn total(&self) -> usize {
        self.triseparable + self.biseparable + self.nonseparable
    }

    pub fn is_known(&self) -> bool {
        KNOWN_STRUCTURES.contains(self)
    }

    fn count(&mut self, label: SeparabilityLabel) {
        match label {
            SeparabilityLabel::Triseparable => self.triseparable += 1,
            SeparabilityLabel::Biseparable => self.biseparable += 1,
            SeparabilityLabel::Nonseparable => self.nonseparable += 1,
        }
    }
}

impl From<[usize; 3]> for Structure {
    fn from([t, b, n]: [usize; 3]) -> Self {
        Structure::new(t, b, n)
    }
}

impl From<Structure> for [usize; 3] {
    fn from(s: Structure) -> Self {
        [s.triseparable, s.biseparable, s.nonseparable]
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{})",
            self.triseparable, self.biseparable, self.nonseparable
        )
    }
}

pub fn inner(a: &StateVector, b: &StateVector) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(v: &StateVector) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Common eigenvectors of the class generators, one per sign pattern.
/// Bit `k` of the pattern index selects eigenvalue −1 for generator `k`.
pub fn eigenvectors(class: &OperatorClass) -> Result<[StateVector; DIM]> {
    let gens = class.generator_ops();
    let zero = Complex64::new(0.0, 0.0);
    let mut states = [[zero; DIM]; DIM];
    for (pattern, state) in states.iter_mut().enumerate() {
        let project = |col: usize| {
            let mut v = [zero; DIM];
            v[col] = Complex64::new(1.0, 0.0);
            for (k, g) in gens.iter().enumerate() {
                let sign = if pattern >> k & 1 == 1 { -1.0 } else { 1.0 };
                let gv = g.apply(&v);
                for (vi, gi) in v.iter_mut().zip(gv) {
                    *vi = (*vi + gi * sign) * 0.5;
                }
            }
            v
        };
        let columns: Vec<StateVector> = (0..DIM).map(project).collect();
        let trace: f64 = columns.iter().enumerate().map(|(c, v)| v[c].re).sum();
        if (trace - 1.0).abs() > 1e-6 {
            return Err(Error::RankDefect(pattern, trace.round().max(0.0) as usize));
        }
        let mut v = *columns
            .iter()
            .find(|v| norm(v) > COLUMN_THRESHOLD)
            .ok_or(Error::RankDefect(pattern, 0))?;
        let n = norm(&v);
        let lead = *v.iter().find(|c| c.norm() > COLUMN_THRESHOLD).unwrap();
        let phase = lead.conj() / lead.norm();
        for c in v.iter_mut() {
            *c = *c * phase / n;
        }
        *state = v;
    }
    Ok(states)
}

pub fn eigenbasis(class: &OperatorClass) -> Result<Basis> {
    let states = eigenvectors(class)?;
    let label = classify_states(&states)?;
    Ok(Basis { states, label })
}

/// `max |⟨ψᵢ|ψⱼ⟩ − δᵢⱼ|`.
pub fn orthonormality_defect(states: &[StateVector; DIM]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((inner(a, b) - target).norm());
        }
    }
    worst
}

/// `max | |⟨ψ|φ⟩|² − 1/8 |` over all 64 cross pairs.
pub fn unbiasedness(b1: &Basis, b2: &Basis) -> f64 {
    let target = 1.0 / DIM as f64;
    b1.states
        .iter()
        .flat_map(|a| {
            b2.states
                .iter()
                .map(move |b| (inner(a, b).norm_sqr() - target).abs())
        })
        .fold(0.0, f64::max)
}

/// Purity `tr ρ²` of each single-qubit reduced state.
pub fn single_qubit_purities(psi: &StateVector) -> [f64; QUBITS] {
    let mut out = [0.0; QUBITS];
    for (q, purity) in out.iter_mut().enumerate() {
        let bit = 1 << (QUBITS - 1 - q);
        let mut rho = [[Complex64::new(0.0, 0.0); 2]; 2];
        for k in 0..DIM {
            if k & bit != 0 {
                continue;
            }
            let pair = [psi[k], psi[k | bit]];
            for r in 0..2 {
                for c in 0..2 {
                    rho[r][c] += pair[r] * pair[c].conj();
                }
            }
        }
        *purity = rho.iter().flatten().map(|x| x.norm_sqr()).sum();
    }
    out
}

fn classify_states(states: &[StateVector; DIM]) -> Result<SeparabilityLabel> {
    let pattern =
        |psi: &StateVector| single_qubit_purities(psi).map(|p| (p - 1.0).abs() < PURITY_TOLERANCE);
    let first = pattern(&states[0]);
    if states.iter().any(|s| pattern(s) != first) {
        return Err(Error::MixedSeparability);
    }
    match first.iter().filter(|&&pure| pure).count() {
        3 => Ok(SeparabilityLabel::Triseparable),
        1 => Ok(SeparabilityLabel::Biseparable),
        0 => Ok(SeparabilityLabel::Nonseparable),
        _ => Err(Error::InvalidInput(
            "two pure qubits with an impure third".into(),
        )),
    }
}

/// Separability label of a basis, recomputed from its states.
pub fn separability(basis: &Basis) -> Result<SeparabilityLabel> {
    classify_states(&basis.states)
}

#[derive(Clone, Debug)]
pub struct MubSet {
    pub bases: Vec<Basis>,
    pub structure: Structure,
}

pub fn mub_set(table: &StriationTable) -> Result<MubSet> {
    let report = validate_table(table);
    if let Some(flag) = report.first_failure() {
        return Err(Error::InvalidTable(format!("{flag} check failed")));
    }
    let bases = table
        .rows
        .iter()
        .map(|row| class_from_row(row).and_then(|c| eigenbasis(&c)))
        .collect::<Result<Vec<_>>>()?;
    let mut structure = Structure::default();
    for b in &bases {
        structure.count(b.label);
    }
    Ok(MubSet { bases, structure })
}

#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct MubReport {
    pub orthonormality_defect: f64,
    pub unbiasedness_defect: f64,
    pub structure: Structure,
    pub pass: bool,
}

impl MubSet {
    pub fn report(&self) -> MubReport {
        let orthonormality_defect = self
            .bases
            .iter()
            .map(|b| orthonormality_defect(&b.states))
            .fold(0.0, f64::max);
        let mut unbiasedness_defect: f64 = 0.0;
        for (i, a) in self.bases.iter().enumerate() {
            for b in &self.bases[i + 1..] {
                unbiasedness_defect = unbiasedness_defect.max(unbiasedness(a, b));
            }
        }
        MubReport {
            orthonormality_defect,
            unbiasedness_defect,
            structure: self.structure,
            pass: orthonormality_defect < TOLERANCE && unbiasedness_defect < TOLERANCE,
        }
    }
}

/// Builds all nine bases of a valid table and checks them.
pub fn verify_mub_set(table: &StriationTable) -> Result<MubReport> {
    mub_set(table).map(|set| set.report())
}

/// Separability structure of a valid table.
pub fn structure(table: &StriationTable) -> Result<Structure> {
    mub_set(table).map(|set| set.structure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliOp;

    fn class(gens: [&str; 3]) -> OperatorClass {
        let g: [PauliOp; 3] = gens.map(|s| s.parse().unwrap());
        let ops = [
            g[0],
            g[1],
            g[2],
            g[0] * g[1],
            g[1] * g[2],
            g[0] * g[1] * g[2],
            g[0] * g[2],
        ];
        OperatorClass {
            ops,
            generators: [0, 1, 2],
        }
    }

    #[test]
    fn computational_basis_from_z_class() {
        let basis = eigenbasis(&class(["ZII", "IZI", "IIZ"])).unwrap();
        let mut seen = [false; DIM];
        for s in &basis.states {
            let k = s.iter().position(|c| (c.re - 1.0).abs() < 1e-12).unwrap();
            assert!(s
                .iter()
                .enumerate()
                .all(|(i, c)| i == k || c.norm() < 1e-12));
            seen[k] = true;
        }
        assert!(seen.iter().all(|&x| x));
        assert_eq!(basis.label, SeparabilityLabel::Triseparable);
    }

    #[test]
    fn x_class_gives_hadamard_product_states() {
        let basis = eigenbasis(&class(["XII", "IXI", "IIX"])).unwrap();
        let amp = 1.0 / 8f64.sqrt();
        for (pattern, s) in basis.states.iter().enumerate() {
            for (k, c) in s.iter().enumerate() {
                // ⟨k| ⊗(|0⟩ ± |1⟩)/√2 with sign (−1)^{popcount(k & pattern')}
                let flips = (0..3)
                    .filter(|&q| pattern >> q & 1 == 1 && k >> (2 - q) & 1 == 1)
                    .count();
                let want = if flips % 2 == 0 { amp } else { -amp };
                assert!((c.re - want).abs() < 1e-12 && c.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn z_and_x_bases_are_unbiased() {
        let z = eigenbasis(&class(["ZII", "IZI", "IIZ"])).unwrap();
        let x = eigenbasis(&class(["XII", "IXI", "IIX"])).unwrap();
        assert!(unbiasedness(&z, &x) < 1e-12);
        assert!((unbiasedness(&z, &z) - 7.0 / 8.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvectors_of_all_class_members() {
        let c = class(["ZII", "IXX", "IZZ"]);
        let basis = eigenbasis(&c).unwrap();
        assert!(orthonormality_defect(&basis.states) < 1e-12);
        for s in &basis.states {
            for op in &c.ops {
                let v = op.apply(s);
                let ev = inner(s, &v);
                assert!((ev.norm() - 1.0).abs() < 1e-12);
                let residual: f64 = v.iter().zip(s).map(|(a, b)| (a - b * ev).norm_sqr()).sum();
                assert!(residual.sqrt() < 1e-10);
            }
        }
    }

    #[test]
    fn separability_labels() {
        let bi = eigenbasis(&class(["ZII", "IXX", "IZZ"])).unwrap();
        assert_eq!(bi.label, SeparabilityLabel::Biseparable);
        for s in &bi.states {
            let p = single_qubit_purities(s);
            assert!((p[0] - 1.0).abs() < 1e-12);
            assert!((p[1] - 0.5).abs() < 1e-12 && (p[2] - 0.5).abs() < 1e-12);
        }
        let ghz = eigenbasis(&class(["XXX", "ZZI", "IZZ"])).unwrap();
        assert_eq!(ghz.label, SeparabilityLabel::Nonseparable);
        assert_eq!(separability(&ghz).unwrap(), SeparabilityLabel::Nonseparable);
    }

    #[test]
    fn dependent_generators_are_rank_defective() {
        let g: [PauliOp; 3] = ["ZII", "IZI", "ZZI"].map(|s| s.parse().unwrap());
        let c = OperatorClass {
            ops: [g[0], g[1], g[2], g[0], g[1], g[2], g[0]],
            generators: [0, 1, 2],
        };
        assert!(matches!(eigenbasis(&c), Err(Error::RankDefect(..))));
    }

    #[test]
    fn mixed_pattern_is_an_error() {
        let z = eigenbasis(&class(["ZII", "IZI", "IIZ"])).unwrap();
        let ghz = eigenbasis(&class(["XXX", "ZZI", "IZZ"])).unwrap();
        let mut states = z.states;
        states[3] = ghz.states[0];
        let frankenstein = Basis {
            states,
            label: SeparabilityLabel::Triseparable,
        };
        assert_eq!(separability(&frankenstein), Err(Error::MixedSeparability));
    }

    #[test]
    fn deterministic() {
        let c = class(["XXX", "ZZI", "IZZ"]);
        let a = eigenvectors(&c).unwrap();
        let b = eigenvectors(&c).unwrap();
        for (x, y) in a.iter().flatten().zip(b.iter().flatten()) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }

    #[test]
    fn structure_json() {
        let s = Structure::new(2, 3, 4);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[2,3,4]");
        assert!(s.is_known());
        assert!(!Structure::new(9, 0, 0).is_known());
    }
}
