//! Curve equations for striation-generating rows.
//!
//! Every generating curve is a 3-dimensional GF(2)-subspace of GF(8)², so it
//! can be written as `L(β) = M(α)` with linearized polynomials
//! `L(β) = l₀β + l₁β² + l₂β⁴` and `M(α) = m₀α + m₁α² + m₂α⁴`. The parametric
//! form is not unique; [`fit_curve`] picks a canonical one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::gf8::FieldElement;
use crate::phasespace::{Point, COLUMNS};
use crate::{Error, Result};

/// Coefficients of `x, x², x⁴`.
pub type Linearized = [FieldElement; 3];

/// `c₀x + c₁x² + c₂x⁴`.
pub fn eval_linearized(coefs: &Linearized, x: FieldElement) -> FieldElement {
    let x2 = x.square();
    let x4 = x2.square();
    coefs[0] * x + coefs[1] * x2 + coefs[2] * x4
}

const IDENTITY: Linearized = [FieldElement::ONE, FieldElement::ZERO, FieldElement::ZERO];
const ZERO: Linearized = [FieldElement::ZERO; 3];

/// The relation `L(β) = M(α)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CurveRelation {
    /// Coefficients of β, β², β⁴.
    pub l: Linearized,
    /// Coefficients of α, α², α⁴.
    pub m: Linearized,
}

impl CurveRelation {
    pub fn new(l: Linearized, m: Linearized) -> Self {
        CurveRelation { l, m }
    }

    /// `β = M(α)`.
    pub fn beta_of_alpha(m: Linearized) -> Self {
        CurveRelation { l: IDENTITY, m }
    }

    /// `α = L(β)`.
    pub fn alpha_of_beta(l: Linearized) -> Self {
        CurveRelation { l, m: IDENTITY }
    }

    pub fn is_trivial(&self) -> bool {
        self.l == ZERO && self.m == ZERO
    }

    pub fn holds_at(&self, p: Point) -> bool {
        eval_linearized(&self.l, p.b) == eval_linearized(&self.m, p.a)
    }

    /// Number of phase-space points satisfying the relation.
    pub fn solution_count(&self) -> usize {
        Point::all().filter(|&p| self.holds_at(p)).count()
    }

    /// Holds on the row and the origin, and nowhere else.
    pub fn defines(&self, row: &[Point; COLUMNS]) -> bool {
        !self.is_trivial()
            && row.iter().all(|&p| self.holds_at(p))
            && self.solution_count() == COLUMNS + 1
    }
}

fn all_linearized() -> impl Iterator<Item = Linearized> {
    (0..512).map(|i| [i >> 6, (i >> 3) & 7, i & 7].map(FieldElement::from_rank))
}

fn distinct(values: impl Iterator<Item = FieldElement>) -> bool {
    let mut seen = [false; 8];
    values
        .into_iter()
        .all(|v| !std::mem::replace(&mut seen[v.rank()], true))
}

/// Fits a relation through a generating row (plus the origin).
///
/// Preference order: `β = M(α)` when β is a function of α on the curve, then
/// `α = L(β)`, then the implicit relation defining exactly this curve with the
/// lexicographically smallest `(l, m)` under the canonical element order.
pub fn fit_curve(row: &[Point; COLUMNS]) -> Result<CurveRelation> {
    let mut points = row.to_vec();
    points.push(Point::ORIGIN);

    if distinct(points.iter().map(|p| p.a)) {
        return all_linearized()
            .map(CurveRelation::beta_of_alpha)
            .find(|rel| row.iter().all(|&p| rel.holds_at(p)))
            .ok_or(Error::NoCurveRelation);
    }
    if distinct(points.iter().map(|p| p.b)) {
        return all_linearized()
            .map(CurveRelation::alpha_of_beta)
            .find(|rel| row.iter().all(|&p| rel.holds_at(p)))
            .ok_or(Error::NoCurveRelation);
    }
    all_linearized()
        .flat_map(|l| all_linearized().map(move |m| CurveRelation { l, m }))
        .find(|rel| rel.defines(row))
        .ok_or(Error::NoCurveRelation)
}

fn write_side(f: &mut fmt::Formatter<'_>, coefs: &Linearized, var: &str) -> fmt::Result {
    let terms: Vec<String> = coefs
        .iter()
        .zip(["", "^2", "^4"])
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, pow)| {
            if *c == FieldElement::ONE {
                format!("{var}{pow}")
            } else {
                format!("{c}*{var}{pow}")
            }
        })
        .collect();
    if terms.is_empty() {
        f.write_str("0")
    } else {
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Display for CurveRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_side(f, &self.l, "beta")?;
        f.write_str(" = ")?;
        write_side(f, &self.m, "alpha")
    }
}
