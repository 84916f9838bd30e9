//! Exhaustive solution of the twelve trace equations.
//!
//! A seed has twelve parameters `a11, b11, …, a23, b23` (`a_rc`/`b_rc` are
//! the coordinates of row `r`, column `c`). Each scenario fixes some of them
//! and enumerates the rest over GF(8); with at most five unknowns that is at
//! most 8⁵ = 32768 candidates, so brute force is both fast and obviously
//! complete.
//!
//! Solutions are reported in lexicographic order of their free parameters
//! (scenario order, canonical element order) and carry a `valid` flag: the
//! equations alone admit degenerate seeds whose tables overlap or repeat rows.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::gf8::FieldElement;
use crate::phasespace::{
    check_twelve_equations, extend_seed, independent, validate_table, Point, SeedSet,
    StriationTable,
};
use crate::{Error, Result};

/// Largest number of free parameters enumerated without an explicit override.
pub const MAX_FREE: usize = 6;

/// One of the twelve seed parameters, in canonical order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Param {
    A11,
    B11,
    A12,
    B12,
    A13,
    B13,
    A21,
    B21,
    A22,
    B22,
    A23,
    B23,
}

impl Param {
    pub const ALL: [Param; 12] = [
        Param::A11,
        Param::B11,
        Param::A12,
        Param::B12,
        Param::A13,
        Param::B13,
        Param::A21,
        Param::B21,
        Param::A22,
        Param::B22,
        Param::A23,
        Param::B23,
    ];

    /// Position in `SeedSet::params`.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        [
            "a11", "b11", "a12", "b12", "a13", "b13", "a21", "b21", "a22", "b22", "a23", "b23",
        ][self.index()]
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownParameter(s.to_string()))
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Param {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Solution {
    pub seed: SeedSet,
    /// Solved parameters, in the scenario's enumeration order.
    pub free: Vec<(Param, FieldElement)>,
    /// Whether the generated table passes every validation check.
    pub valid: bool,
}

impl Solution {
    fn new(seed: SeedSet, free: Vec<(Param, FieldElement)>) -> Self {
        let valid = validate_table(&extend_seed(&seed)).is_valid();
        Solution { seed, free, valid }
    }

    pub fn table(&self) -> StriationTable {
        extend_seed(&self.seed)
    }

    pub fn free_value(&self, param: Param) -> Option<FieldElement> {
        self.free.iter().find(|(p, _)| *p == param).map(|&(_, v)| v)
    }

    /// Free values only, in order.
    pub fn free_values(&self) -> Vec<FieldElement> {
        self.free.iter().map(|&(_, v)| v).collect()
    }
}

struct FreeMap<'a>(&'a [(Param, FieldElement)]);

impl Serialize for FreeMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (p, v) in self.0 {
            map.serialize_entry(p, v)?;
        }
        map.end()
    }
}

impl Serialize for Solution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("free", &FreeMap(&self.free))?;
        map.serialize_entry("seed", &self.seed)?;
        map.serialize_entry("valid", &self.valid)?;
        map.end()
    }
}

/// Enumerates every assignment of `free` over GF(8) on top of `base`, keeping
/// those that satisfy the twelve equations. Order is lexicographic in `free`
/// regardless of how the work is split across threads.
fn enumerate(base: [FieldElement; 12], free: &[Param]) -> Vec<Solution> {
    let n = free.len() as u32;
    (0..8u64.pow(n))
        .into_par_iter()
        .filter_map(|idx| {
            let mut params = base;
            let mut assigned = Vec::with_capacity(free.len());
            for (k, &p) in free.iter().enumerate() {
                let digit = (idx >> (3 * (n as usize - 1 - k))) & 7;
                let v = FieldElement::from_rank(digit as usize);
                params[p.index()] = v;
                assigned.push((p, v));
            }
            let seed = SeedSet::from_params(params);
            check_twelve_equations(&seed).then(|| Solution::new(seed, assigned))
        })
        .collect()
}

fn independent_values(b: [FieldElement; 3]) -> bool {
    independent(&b.map(|x| Point::new(FieldElement::ZERO, x)))
}

fn require_basis(b: [FieldElement; 3]) -> Result<()> {
    if independent_values(b) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "({}, {}, {}) is not a GF(2) basis of GF(8)",
            b[0], b[1], b[2]
        )))
    }
}

/// The reduced three-axes system: `tr λ₃ = tr(λ₂ + λ₁λ₂)`,
/// `tr(λ₁λ₃) = tr λ₂`, `tr(λ₂λ₃) = tr(λ₁ + λ₁λ₂)`.
pub fn three_axes_equations(l1: FieldElement, l2: FieldElement, l3: FieldElement) -> bool {
    l3.trace() == (l2 + l1 * l2).trace()
        && (l1 * l3).trace() == l2.trace()
        && (l2 * l3).trace() == (l1 + l1 * l2).trace()
}

/// Seed `(0,λ₁),(0,λ₂),(0,λ₃); (λ₁,0),(λ₂,0),(λ₃,0)`.
pub fn three_axes_seed(l1: FieldElement, l2: FieldElement, l3: FieldElement) -> SeedSet {
    let o = FieldElement::ZERO;
    let l = [l1, l2, l3];
    SeedSet::new(l.map(|x| Point::new(o, x)), l.map(|x| Point::new(x, o)))
}

/// Tables whose rows 1 and 2 are the two axes, `λ₁ ≠ λ₂` fixed.
pub fn solve_three_axes(l1: FieldElement, l2: FieldElement) -> Result<Vec<Solution>> {
    if l1.is_zero() || l2.is_zero() || l1 == l2 {
        return Err(Error::InvalidInput(format!(
            "three-axes needs distinct nonzero l1, l2 (got {l1}, {l2})"
        )));
    }
    Ok(FieldElement::all()
        .filter(|&l3| three_axes_equations(l1, l2, l3))
        .map(|l3| {
            Solution::new(
                three_axes_seed(l1, l2, l3),
                vec![(Param::B13, l3), (Param::A23, l3)],
            )
        })
        .collect())
}

/// Row 1 on the α = 0 axis, row 2 on β = 0; solves for `a22, a23`.
pub fn solve_two_axes(b: [FieldElement; 3], a21: FieldElement) -> Result<Vec<Solution>> {
    require_basis(b)?;
    let mut base = [FieldElement::ZERO; 12];
    base[Param::B11.index()] = b[0];
    base[Param::B12.index()] = b[1];
    base[Param::B13.index()] = b[2];
    base[Param::A21.index()] = a21;
    Ok(enumerate(base, &[Param::A22, Param::A23]))
}

/// Row 1 on the α = 0 axis; solves for `b21, a22, a23`.
pub fn solve_one_axis(
    b: [FieldElement; 3],
    a21: FieldElement,
    b22: FieldElement,
    b23: FieldElement,
) -> Result<Vec<Solution>> {
    require_basis(b)?;
    let mut base = [FieldElement::ZERO; 12];
    base[Param::B11.index()] = b[0];
    base[Param::B12.index()] = b[1];
    base[Param::B13.index()] = b[2];
    base[Param::A21.index()] = a21;
    base[Param::B22.index()] = b22;
    base[Param::B23.index()] = b23;
    Ok(enumerate(base, &[Param::B21, Param::A22, Param::A23]))
}

/// No axis constraint; solves for `a12, a13, b21, a22, a23`.
pub fn solve_no_axis(
    a11: FieldElement,
    b1: [FieldElement; 3],
    a21: FieldElement,
    b22: FieldElement,
    b23: FieldElement,
) -> Vec<Solution> {
    let mut base = [FieldElement::ZERO; 12];
    base[Param::A11.index()] = a11;
    base[Param::B11.index()] = b1[0];
    base[Param::B12.index()] = b1[1];
    base[Param::B13.index()] = b1[2];
    base[Param::A21.index()] = a21;
    base[Param::B22.index()] = b22;
    base[Param::B23.index()] = b23;
    enumerate(
        base,
        &[Param::A12, Param::A13, Param::B21, Param::A22, Param::A23],
    )
}

/// Enumerates every parameter not in `fixed`, in canonical order.
pub fn solve_generic(
    fixed: &BTreeMap<Param, FieldElement>,
    allow_large: bool,
) -> Result<Vec<Solution>> {
    let free: Vec<Param> = Param::ALL
        .into_iter()
        .filter(|p| !fixed.contains_key(p))
        .collect();
    if free.len() > MAX_FREE && !allow_large {
        return Err(Error::SearchTooLarge {
            free: free.len(),
            limit: MAX_FREE,
        });
    }
    let mut base = [FieldElement::ZERO; 12];
    for (p, &v) in fixed {
        base[p.index()] = v;
    }
    Ok(enumerate(base, &free))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    ThreeAxes,
    TwoAxes,
    OneAxis,
    NoAxis,
    Generic,
}

impl ScenarioKind {
    /// Parameters the scenario expects in its `fixed` map. For three-axes,
    /// `b11` and `b12` carry λ₁ and λ₂.
    pub fn required(self) -> &'static [Param] {
        use Param::*;
        match self {
            ScenarioKind::ThreeAxes => &[B11, B12],
            ScenarioKind::TwoAxes => &[B11, B12, B13, A21],
            ScenarioKind::OneAxis => &[B11, B12, B13, A21, B22, B23],
            ScenarioKind::NoAxis => &[A11, B11, B12, B13, A21, B22, B23],
            ScenarioKind::Generic => &[],
        }
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "three-axes" => Ok(ScenarioKind::ThreeAxes),
            "two-axes" => Ok(ScenarioKind::TwoAxes),
            "one-axis" => Ok(ScenarioKind::OneAxis),
            "no-axis" => Ok(ScenarioKind::NoAxis),
            "generic" => Ok(ScenarioKind::Generic),
            _ => Err(Error::InvalidInput(format!("unknown scenario kind {s:?}"))),
        }
    }
}

/// A fixing scheme plus its fixed parameter values.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Scenario {
    pub kind: ScenarioKind,
    #[serde(default)]
    pub fixed: BTreeMap<Param, FieldElement>,
}

impl Scenario {
    pub fn new(kind: ScenarioKind) -> Self {
        Scenario {
            kind,
            fixed: BTreeMap::new(),
        }
    }

    pub fn with(mut self, param: Param, value: FieldElement) -> Self {
        self.fixed.insert(param, value);
        self
    }

    fn get(&self, p: Param) -> FieldElement {
        self.fixed[&p]
    }

    /// Checks that exactly the scenario's parameters are fixed.
    pub fn check_shape(&self) -> Result<()> {
        if self.kind == ScenarioKind::Generic {
            return Ok(());
        }
        let required = self.kind.required();
        if let Some(missing) = required.iter().find(|p| !self.fixed.contains_key(p)) {
            return Err(Error::InvalidInput(format!(
                "{:?} scenario is missing {missing}",
                self.kind
            )));
        }
        if let Some(extra) = self.fixed.keys().find(|p| !required.contains(p)) {
            return Err(Error::InvalidInput(format!(
                "{extra} is not a fixed parameter of the {:?} scenario",
                self.kind
            )));
        }
        Ok(())
    }

    pub fn solve(&self, allow_large: bool) -> Result<Vec<Solution>> {
        use Param::*;
        self.check_shape()?;
        let b1 = || [self.get(B11), self.get(B12), self.get(B13)];
        match self.kind {
            ScenarioKind::ThreeAxes => solve_three_axes(self.get(B11), self.get(B12)),
            ScenarioKind::TwoAxes => solve_two_axes(b1(), self.get(A21)),
            ScenarioKind::OneAxis => {
                solve_one_axis(b1(), self.get(A21), self.get(B22), self.get(B23))
            }
            ScenarioKind::NoAxis => Ok(solve_no_axis(
                self.get(A11),
                b1(),
                self.get(A21),
                self.get(B22),
                self.get(B23),
            )),
            ScenarioKind::Generic => solve_generic(&self.fixed, allow_large),
        }
    }
}
