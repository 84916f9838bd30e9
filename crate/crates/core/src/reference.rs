//! Worked examples for the four fixing schemes, with their published grids
//! and curve equations.
//!
//! Grids are stored top line first (`β = μ⁶`) with columns in canonical α
//! order; `0` marks the origin. Equations are stored as printed, in the order
//! of the published list.

use crate::curve::{CurveRelation, Linearized};
use crate::gf8::FieldElement;
use crate::phasespace::{Point, SeedSet};
use crate::solver::three_axes_seed;

fn m(k: i64) -> FieldElement {
    FieldElement::mu_pow(k)
}
const O: FieldElement = FieldElement::ZERO;
const ONE: FieldElement = FieldElement::ONE;
const ID: Linearized = [ONE, O, O];
const NIL: Linearized = [O, O, O];

fn beta(m: Linearized) -> CurveRelation {
    CurveRelation::beta_of_alpha(m)
}

fn seed(
    row1: [(FieldElement, FieldElement); 3],
    row2: [(FieldElement, FieldElement); 3],
) -> SeedSet {
    let p = |(a, b)| Point::new(a, b);
    SeedSet::new(row1.map(p), row2.map(p))
}

/// How published equation numbers map to table rows.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EquationNumbering {
    /// Equation `k` describes row `k`.
    ByRow,
    /// The list is not keyed to the grid labels; match by evaluation.
    Unordered,
}

#[derive(Clone, Debug)]
pub struct PublishedTable {
    pub grid: [[u8; 8]; 8],
    pub equations: [CurveRelation; 9],
    pub numbering: EquationNumbering,
}

#[derive(Clone, Debug)]
pub struct WorkedExample {
    /// Short identifier used in check names.
    pub name: &'static str,
    pub seed: SeedSet,
    pub published: Option<PublishedTable>,
}

/// Three axes, λ = (μ², μ⁶, μ³).
pub fn three_axes_first() -> WorkedExample {
    WorkedExample {
        name: "three-axes",
        seed: three_axes_seed(m(2), m(6), m(3)),
        published: Some(PublishedTable {
            grid: [
                [1, 8, 6, 4, 9, 7, 5, 3],
                [1, 6, 4, 9, 7, 5, 3, 8],
                [1, 4, 9, 7, 5, 3, 8, 6],
                [1, 9, 7, 5, 3, 8, 6, 4],
                [1, 7, 5, 3, 8, 6, 4, 9],
                [1, 5, 3, 8, 6, 4, 9, 7],
                [1, 3, 8, 6, 4, 9, 7, 5],
                [0, 2, 2, 2, 2, 2, 2, 2],
            ],
            equations: [
                CurveRelation::new(NIL, ID),
                beta(NIL),
                beta(ID),
                beta([m(1), O, O]),
                beta([m(2), O, O]),
                beta([m(3), O, O]),
                beta([m(4), O, O]),
                beta([m(5), O, O]),
                beta([m(6), O, O]),
            ],
            numbering: EquationNumbering::Unordered,
        }),
    }
}

/// Three axes, λ = (μ², μ⁶, μ⁵). No published table.
pub fn three_axes_second() -> WorkedExample {
    WorkedExample {
        name: "three-axes-alt",
        seed: three_axes_seed(m(2), m(6), m(5)),
        published: None,
    }
}

pub fn two_axes() -> WorkedExample {
    WorkedExample {
        name: "two-axes",
        seed: seed(
            [(O, m(4)), (O, m(3)), (O, m(5))],
            [(ONE, O), (m(2), O), (m(3), O)],
        ),
        published: Some(PublishedTable {
            grid: [
                [1, 6, 7, 5, 4, 8, 9, 3],
                [1, 5, 6, 4, 3, 7, 8, 9],
                [1, 3, 4, 9, 8, 5, 6, 7],
                [1, 4, 5, 3, 9, 6, 7, 8],
                [1, 7, 8, 6, 5, 9, 3, 4],
                [1, 8, 9, 7, 6, 3, 4, 5],
                [1, 9, 3, 8, 7, 4, 5, 6],
                [0, 2, 2, 2, 2, 2, 2, 2],
            ],
            equations: [
                CurveRelation::new(NIL, ID),
                beta(NIL),
                beta([m(2), m(5), m(6)]),
                beta([m(3), O, O]),
                beta([ONE, m(2), m(1)]),
                beta([m(5), m(5), m(6)]),
                beta([m(1), m(2), m(1)]),
                beta([m(4), m(3), m(5)]),
                beta([m(6), m(3), m(5)]),
            ],
            numbering: EquationNumbering::ByRow,
        }),
    }
}

/// One axis, first solution `b21 = μ²`.
pub fn one_axis_first() -> WorkedExample {
    WorkedExample {
        name: "one-axis",
        seed: seed(
            [(O, m(4)), (O, m(3)), (O, m(1))],
            [(ONE, m(2)), (m(6), m(2)), (m(4), m(6))],
        ),
        published: Some(PublishedTable {
            grid: [
                [1, 7, 2, 3, 5, 2, 3, 6],
                [1, 4, 7, 5, 6, 3, 4, 3],
                [1, 5, 6, 7, 4, 9, 9, 4],
                [1, 8, 5, 8, 8, 8, 6, 7],
                [1, 2, 9, 6, 9, 5, 7, 2],
                [1, 3, 3, 9, 7, 6, 5, 9],
                [1, 6, 4, 4, 2, 7, 2, 5],
                [0, 9, 8, 2, 3, 4, 8, 8],
            ],
            equations: [
                CurveRelation::new(NIL, ID),
                beta([m(5), ONE, m(3)]),
                beta([O, m(5), m(6)]),
                beta([ONE, m(6), m(3)]),
                beta([m(2), m(4), m(2)]),
                beta([m(5), m(6), m(3)]),
                beta([m(5), m(5), m(6)]),
                beta([m(6), m(2), m(1)]),
                beta([m(1), m(4), m(2)]),
            ],
            numbering: EquationNumbering::ByRow,
        }),
    }
}

/// One axis, second solution `b21 = μ³`. No published table.
pub fn one_axis_second() -> WorkedExample {
    WorkedExample {
        name: "one-axis-alt",
        seed: seed(
            [(O, m(4)), (O, m(3)), (O, m(1))],
            [(ONE, m(3)), (m(6), m(2)), (m(4), m(6))],
        ),
        published: None,
    }
}

pub fn no_axis() -> WorkedExample {
    WorkedExample {
        name: "no-axis",
        seed: seed(
            [(m(2), m(5)), (ONE, m(3)), (m(3), ONE)],
            [(m(3), m(2)), (m(1), m(2)), (ONE, m(1))],
        ),
        published: Some(PublishedTable {
            grid: [
                [5, 4, 7, 5, 5, 1, 5, 8],
                [8, 6, 4, 1, 3, 3, 6, 7],
                [6, 7, 2, 4, 2, 6, 1, 8],
                [8, 1, 3, 9, 7, 9, 3, 4],
                [8, 3, 2, 3, 2, 7, 4, 1],
                [2, 2, 1, 9, 4, 9, 7, 8],
                [9, 6, 9, 7, 1, 4, 6, 8],
                [0, 2, 9, 5, 5, 6, 5, 3],
            ],
            equations: [
                beta([m(6), m(6), m(3)]),
                CurveRelation::new([m(1), ONE, O], [m(2), m(2), O]),
                beta([O, m(3), m(5)]),
                beta([m(3), m(2), m(1)]),
                CurveRelation::new([m(2), m(3), O], [m(3), m(2), ONE]),
                CurveRelation::new([m(5), m(1), O], [m(3), m(5), ONE]),
                beta([m(6), ONE, ONE]),
                CurveRelation::alpha_of_beta([m(5), m(4), m(2)]),
                CurveRelation::new([m(1), m(1), O], [O, m(2), ONE]),
            ],
            numbering: EquationNumbering::ByRow,
        }),
    }
}

/// The examples whose tables are checked end to end.
pub fn all_examples() -> Vec<WorkedExample> {
    vec![
        three_axes_first(),
        three_axes_second(),
        two_axes(),
        one_axis_first(),
        no_axis(),
    ]
}
