//! The 8×8 discrete phase space GF(8)².
//!
//! A point `(a, b)` labels a three-qubit Pauli operator. Two operators commute
//! exactly when their points satisfy `tr(a₁ b₂) = tr(a₂ b₁)`, so commuting
//! classes are isotropic subspaces of the phase space. A [`StriationTable`]
//! lists nine such subspaces (seven nonzero points each) that together cover
//! every nonzero point once; it is grown from a six-point [`SeedSet`] by two
//! additive recursions.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::gf8::{trace_of_products, FieldElement};
use crate::{Error, Result};

pub const ROWS: usize = 9;
pub const COLUMNS: usize = 7;

/// A point `(a, b)` of the discrete phase space. `a` runs horizontally (α),
/// `b` vertically (β).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "[FieldElement; 2]", into = "[FieldElement; 2]")]
pub struct Point {
    pub a: FieldElement,
    pub b: FieldElement,
}

impl Point {
    pub const ORIGIN: Point = Point {
        a: FieldElement::ZERO,
        b: FieldElement::ZERO,
    };

    pub fn new(a: FieldElement, b: FieldElement) -> Self {
        Point { a, b }
    }

    pub fn is_origin(self) -> bool {
        self == Self::ORIGIN
    }

    /// All 64 points, `a`-major in canonical element order.
    pub fn all() -> impl Iterator<Item = Point> {
        FieldElement::all().flat_map(|a| FieldElement::all().map(move |b| Point { a, b }))
    }

    /// Index in `0..64`, used for bitset bookkeeping.
    pub fn index(self) -> usize {
        (self.a.bits() as usize) << 3 | self.b.bits() as usize
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl From<[FieldElement; 2]> for Point {
    fn from([a, b]: [FieldElement; 2]) -> Self {
        Point { a, b }
    }
}

impl From<Point> for [FieldElement; 2] {
    fn from(p: Point) -> Self {
        [p.a, p.b]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Whether the operators at `p` and `q` commute: `tr(p.a q.b) = tr(q.a p.b)`.
pub fn commutes(p: Point, q: Point) -> bool {
    (p.a * q.b).trace() == (q.a * p.b).trace()
}

/// True when the three points are nonzero and GF(2)-independent, i.e. their
/// seven nonzero combinations are distinct.
pub fn independent(points: &[Point; 3]) -> bool {
    let mut seen = HashSet::with_capacity(7);
    for mask in 1u8..8 {
        let combo = (0..3)
            .filter(|i| mask >> i & 1 == 1)
            .fold(Point::ORIGIN, |acc, i| acc + points[i]);
        if combo.is_origin() || !seen.insert(combo) {
            return false;
        }
    }
    true
}

/// The six input points: columns 1–3 of rows 1 and 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SeedSet {
    pub row1: [Point; 3],
    pub row2: [Point; 3],
}

impl SeedSet {
    pub fn new(row1: [Point; 3], row2: [Point; 3]) -> Self {
        SeedSet { row1, row2 }
    }

    /// Builds a seed from the twelve parameters in canonical order
    /// `a11, b11, a12, b12, a13, b13, a21, b21, a22, b22, a23, b23`.
    pub fn from_params(p: [FieldElement; 12]) -> Self {
        let pt = |i: usize| Point::new(p[2 * i], p[2 * i + 1]);
        SeedSet {
            row1: [pt(0), pt(1), pt(2)],
            row2: [pt(3), pt(4), pt(5)],
        }
    }

    pub fn params(&self) -> [FieldElement; 12] {
        let mut out = [FieldElement::ZERO; 12];
        for (i, p) in self.row1.iter().chain(&self.row2).enumerate() {
            out[2 * i] = p.a;
            out[2 * i + 1] = p.b;
        }
        out
    }

    /// Checks that every seed point is nonzero and each row is independent.
    pub fn check_well_formed(&self) -> Result<()> {
        for (r, row) in [&self.row1, &self.row2].into_iter().enumerate() {
            if let Some(c) = row.iter().position(|p| p.is_origin()) {
                return Err(Error::InvalidInput(format!(
                    "seed point ({}, {}) is the origin",
                    r + 1,
                    c + 1
                )));
            }
            if !independent(row) {
                return Err(Error::InvalidInput(format!(
                    "seed row {} is not GF(2)-independent",
                    r + 1
                )));
            }
        }
        Ok(())
    }

    pub fn is_well_formed(&self) -> bool {
        self.check_well_formed().is_ok()
    }
}

/// Evaluates the twelve trace equations on a seed, in order. Entries 1–6 are
/// commutation within rows 1 and 2; entries 7–12 are commutation among the
/// first three points of rows 3 and 4, expanded in seed coordinates.
pub fn twelve_equations(seed: &SeedSet) -> [bool; 12] {
    let a1 = seed.row1.map(|p| p.a);
    let b1 = seed.row1.map(|p| p.b);
    let a2 = seed.row2.map(|p| p.a);
    let b2 = seed.row2.map(|p| p.b);
    let eq = |lhs: &[(FieldElement, FieldElement)], rhs: &[(FieldElement, FieldElement)]| {
        trace_of_products(lhs) == trace_of_products(rhs)
    };
    [
        eq(&[(a1[0], b1[1])], &[(a1[1], b1[0])]),
        eq(&[(a1[0], b1[2])], &[(a1[2], b1[0])]),
        eq(&[(a1[1], b1[2])], &[(a1[2], b1[1])]),
        eq(&[(a2[0], b2[1])], &[(a2[1], b2[0])]),
        eq(&[(a2[0], b2[2])], &[(a2[2], b2[0])]),
        eq(&[(a2[1], b2[2])], &[(a2[2], b2[1])]),
        eq(
            &[(a2[0], b1[1]), (a1[0], b2[1])],
            &[(a2[1], b1[0]), (a1[1], b2[0])],
        ),
        eq(
            &[(a2[0], b1[2]), (a1[0], b2[2])],
            &[(a2[2], b1[0]), (a1[2], b2[0])],
        ),
        eq(
            &[(a2[1], b1[2]), (a1[1], b2[2])],
            &[(a2[2], b1[1]), (a1[2], b2[1])],
        ),
        eq(
            &[(a2[0], b1[2]), (a1[1], b2[1])],
            &[(a2[1], b1[1]), (a1[2], b2[0])],
        ),
        eq(
            &[(a2[0], b1[0]), (a2[0], b1[1]), (a1[1], b2[2])],
            &[(a2[2], b1[1]), (a1[0], b2[0]), (a1[1], b2[0])],
        ),
        eq(
            &[(a2[1], b1[0]), (a2[1], b1[1]), (a1[2], b2[2])],
            &[(a2[2], b1[2]), (a1[0], b2[1]), (a1[1], b2[1])],
        ),
    ]
}

pub fn check_twelve_equations(seed: &SeedSet) -> bool {
    twelve_equations(seed).iter().all(|&ok| ok)
}

/// 1-based index of the first violated equation, if any.
pub fn first_failing_equation(seed: &SeedSet) -> Option<usize> {
    twelve_equations(seed)
        .iter()
        .position(|&ok| !ok)
        .map(|i| i + 1)
}

/// Nine rows of seven points: the striation-generating curves.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StriationTable {
    pub rows: [[Point; COLUMNS]; ROWS],
}

/// Extends a seed to the full table without checking it.
///
/// Rows 1 and 2 follow `P_c = P_{c-2} + P_{c-3}` for `c = 4..7`. Row `r ≥ 3`
/// has `P^{(r)}_c = P^{(2)}_c + P^{(1)}_{c+r-3}` with the row-1 column reduced
/// into `1..=7`.
pub fn extend_seed(seed: &SeedSet) -> StriationTable {
    let extend = |gen: &[Point; 3]| {
        let mut row = [Point::ORIGIN; COLUMNS];
        row[..3].copy_from_slice(gen);
        for c in 3..COLUMNS {
            row[c] = row[c - 2] + row[c - 3];
        }
        row
    };
    let first = extend(&seed.row1);
    let second = extend(&seed.row2);
    let mut rows = [[Point::ORIGIN; COLUMNS]; ROWS];
    rows[0] = first;
    rows[1] = second;
    for r in 3..=ROWS {
        for c in 1..=COLUMNS {
            rows[r - 1][c - 1] = second[c - 1] + first[wrap_column(c + r - 3) - 1];
        }
    }
    StriationTable { rows }
}

/// Reduces a column index into `1..=7`.
pub fn wrap_column(index: usize) -> usize {
    (index + 6) % COLUMNS + 1
}

/// Builds the table for a well-formed seed.
pub fn build_table(seed: &SeedSet) -> Result<StriationTable> {
    seed.check_well_formed()?;
    Ok(extend_seed(seed))
}

/// Whether every pair of points within every row commutes.
pub fn check_all_striation_conditions(table: &StriationTable) -> bool {
    table.rows.iter().all(row_commutes)
}

fn row_commutes(row: &[Point; COLUMNS]) -> bool {
    row.iter()
        .enumerate()
        .all(|(i, &p)| row[i + 1..].iter().all(|&q| commutes(p, q)))
}

/// Seven distinct nonzero points closed under addition.
pub fn is_subgroup_row(row: &[Point; COLUMNS]) -> bool {
    let set: HashSet<Point> = row.iter().copied().collect();
    if set.len() != COLUMNS || set.contains(&Point::ORIGIN) {
        return false;
    }
    row.iter()
        .enumerate()
        .all(|(i, &p)| row[i + 1..].iter().all(|&q| set.contains(&(p + q))))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub rows_are_subgroups: bool,
    pub rows_disjoint: bool,
    pub covers_all_points: bool,
    pub rows_commute: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.rows_are_subgroups && self.rows_disjoint && self.covers_all_points && self.rows_commute
    }

    /// Name of the first failing flag.
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            (self.rows_are_subgroups, "rows-are-subgroups"),
            (self.rows_disjoint, "rows-disjoint"),
            (self.covers_all_points, "covers-63-points"),
            (self.rows_commute, "all-rows-internally-commuting"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, name)| name)
    }
}

pub fn validate_table(table: &StriationTable) -> ValidationReport {
    let mut counts = [0u8; 64];
    for p in table.rows.iter().flatten() {
        counts[p.index()] += 1;
    }
    let origin = Point::ORIGIN.index();
    ValidationReport {
        rows_are_subgroups: table.rows.iter().all(is_subgroup_row),
        rows_disjoint: table.rows.iter().enumerate().all(|(i, row)| {
            table.rows[i + 1..]
                .iter()
                .all(|other| row.iter().all(|p| !other.contains(p)))
        }),
        covers_all_points: counts[origin] == 0
            && counts
                .iter()
                .enumerate()
                .all(|(i, &n)| i == origin || n == 1),
        rows_commute: check_all_striation_conditions(table),
    }
}

impl StriationTable {
    pub fn row(&self, r: usize) -> &[Point; COLUMNS] {
        &self.rows[r - 1]
    }

    /// Columns 1–3 of rows 1 and 2.
    pub fn seed(&self) -> SeedSet {
        SeedSet {
            row1: [self.rows[0][0], self.rows[0][1], self.rows[0][2]],
            row2: [self.rows[1][0], self.rows[1][1], self.rows[1][2]],
        }
    }

    /// 1-based row containing `p`, or `None` (also for the origin).
    pub fn row_of(&self, p: Point) -> Option<usize> {
        self.rows
            .iter()
            .position(|row| row.contains(&p))
            .map(|r| r + 1)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_table(self)
    }
}

/// Curve membership laid out on the 8×8 lattice.
///
/// `cells[i][j]` is the row index (1–9) of the curve through
/// `(α, β) = (eⱼ, e₇₋ᵢ)` where `e₀ … e₇` is the canonical element order, so the
/// top line is `β = μ⁶` and the bottom line `β = 0`. The origin holds 0.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Grid {
    pub cells: [[u8; 8]; 8],
}

pub fn grid(table: &StriationTable) -> Result<Grid> {
    let mut cells = [[u8::MAX; 8]; 8];
    for (r, row) in table.rows.iter().enumerate() {
        for p in row {
            let cell = &mut cells[7 - p.b.rank()][p.a.rank()];
            if *cell != u8::MAX {
                return Err(Error::InvalidTable(format!("point {p} is assigned twice")));
            }
            *cell = r as u8 + 1;
        }
    }
    if cells[7][0] != u8::MAX {
        return Err(Error::InvalidTable("origin appears in a row".into()));
    }
    cells[7][0] = 0;
    for (i, line) in cells.iter().enumerate() {
        if let Some(j) = line.iter().position(|&c| c == u8::MAX) {
            let p = Point::new(FieldElement::from_rank(j), FieldElement::from_rank(7 - i));
            return Err(Error::InvalidTable(format!("point {p} is not covered")));
        }
    }
    Ok(Grid { cells })
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, line) in self.cells.iter().enumerate() {
            write!(f, "{:>2} |", FieldElement::from_rank(7 - i).token())?;
            for &c in line {
                if c == 0 {
                    f.write_str(" o")?;
                } else {
                    write!(f, " {c}")?;
                }
            }
            writeln!(f)?;
        }
        writeln!(f, "   +----------------")?;
        write!(f, "    ")?;
        for a in FieldElement::all() {
            write!(f, " {a}")?;
        }
        writeln!(f)
    }
}

/// Text rendering of the lattice with axis labels (β down the left, α along
/// the bottom). Fails if the rows do not partition the 63 nonzero points.
pub fn render_grid(table: &StriationTable) -> Result<String> {
    grid(table).map(|g| g.to_string())
}
