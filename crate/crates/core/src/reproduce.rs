//! End-to-end reproduction of the worked examples.
//!
//! Each [`Check`] is one pass/fail line. The solver checks come first so that
//! a broken field layer surfaces at the three-axes solutions before anything
//! downstream.

use serde::Serialize;

use crate::curve::fit_curve;
use crate::gf8::FieldElement;
use crate::mub::{mub_set, TOLERANCE};
use crate::phasespace::{build_table, grid, StriationTable};
use crate::reference::{all_examples, EquationNumbering, PublishedTable, WorkedExample};
use crate::solver::{solve_no_axis, solve_one_axis, solve_three_axes, solve_two_axes};

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

fn m(k: i64) -> FieldElement {
    FieldElement::mu_pow(k)
}

fn fmt_values(v: &[Vec<FieldElement>]) -> String {
    let tuples: Vec<String> = v
        .iter()
        .map(|t| {
            let items: Vec<&str> = t.iter().map(|x| x.token()).collect();
            format!("({})", items.join(","))
        })
        .collect();
    format!("[{}]", tuples.join(" "))
}

fn solver_checks() -> Vec<Check> {
    let one = FieldElement::ONE;
    let mut out = Vec::new();

    let check = match solve_three_axes(m(2), m(6)) {
        Ok(sols) => {
            let got: Vec<Vec<_>> = sols.iter().map(|s| vec![s.free_values()[0]]).collect();
            let want = vec![vec![m(3)], vec![m(5)]];
            let pass = got == want && sols.iter().all(|s| s.valid);
            Check::new(
                "three-axes/solutions",
                pass,
                format!("l3 in {}", fmt_values(&got)),
            )
        }
        Err(e) => Check::new("three-axes/solutions", false, e.to_string()),
    };
    out.push(check);

    let check = match solve_two_axes([m(4), m(3), m(5)], one) {
        Ok(sols) => {
            let got: Vec<_> = sols.iter().map(|s| s.free_values()).collect();
            let pass = got == vec![vec![m(2), m(3)]] && sols[0].valid;
            Check::new(
                "two-axes/solutions",
                pass,
                format!("(a22,a23) in {}", fmt_values(&got)),
            )
        }
        Err(e) => Check::new("two-axes/solutions", false, e.to_string()),
    };
    out.push(check);

    let check = match solve_one_axis([m(4), m(3), m(1)], one, m(2), m(6)) {
        Ok(sols) => {
            let got: Vec<_> = sols.iter().map(|s| s.free_values()).collect();
            let want = vec![vec![m(2), m(6), m(4)], vec![m(3), m(6), m(4)]];
            Check::new(
                "one-axis/solutions",
                got == want,
                format!("(b21,a22,a23) in {}", fmt_values(&got)),
            )
        }
        Err(e) => Check::new("one-axis/solutions", false, e.to_string()),
    };
    out.push(check);

    let sols = solve_no_axis(m(2), [m(5), m(3), one], m(3), m(2), m(1));
    let target = vec![one, m(3), m(2), m(1), one];
    let found = sols.iter().any(|s| s.valid && s.free_values() == target);
    let valid = sols.iter().filter(|s| s.valid).count();
    out.push(Check::new(
        "no-axis/solutions",
        found,
        format!(
            "{} solutions ({valid} valid); (a12,a13,b21,a22,a23) = (1,m3,m2,m,1) {}",
            sols.len(),
            if found { "present" } else { "missing" }
        ),
    ));
    out
}

fn published_checks(name: &str, table: &StriationTable, published: &PublishedTable) -> Vec<Check> {
    let mut out = Vec::new();
    let check = match grid(table) {
        Ok(g) => {
            let mismatches = g
                .cells
                .iter()
                .flatten()
                .zip(published.grid.iter().flatten())
                .filter(|(a, b)| a != b)
                .count();
            Check::new(
                format!("{name}/grid"),
                mismatches == 0,
                format!("{mismatches} of 64 cells differ from the published grid"),
            )
        }
        Err(e) => Check::new(format!("{name}/grid"), false, e.to_string()),
    };
    out.push(check);

    let rows_holding = |k: usize| -> Vec<usize> {
        let rel = published.equations[k];
        (1..=9)
            .filter(|&r| table.row(r).iter().all(|&p| rel.holds_at(p)))
            .collect()
    };
    let mut matched = Vec::new();
    for k in 0..9 {
        let rel = published.equations[k];
        let rows = rows_holding(k);
        let (pass, detail) = match published.numbering {
            EquationNumbering::ByRow => {
                let pass = rows.contains(&(k + 1));
                let detail = if pass {
                    format!("{rel} holds on row {}", k + 1)
                } else {
                    let fitted = fit_curve(table.row(k + 1))
                        .map(|f| f.to_string())
                        .unwrap_or_else(|e| e.to_string());
                    format!("{rel} fails on row {}; row fits {fitted}", k + 1)
                };
                (pass, detail)
            }
            EquationNumbering::Unordered => {
                matched.extend(rows.iter().copied());
                let pass = rows.len() == 1;
                (pass, format!("{rel} holds on rows {rows:?}"))
            }
        };
        out.push(Check::new(
            format!("{name}/equation-{}", k + 1),
            pass,
            detail,
        ));
    }
    if published.numbering == EquationNumbering::Unordered {
        matched.sort_unstable();
        out.push(Check::new(
            format!("{name}/equation-matching"),
            matched == (1..=9).collect::<Vec<_>>(),
            format!("published equations cover rows {matched:?}"),
        ));
    }
    out
}

fn example_checks(example: &WorkedExample) -> Vec<Check> {
    let name = example.name;
    let table = match build_table(&example.seed) {
        Ok(t) => t,
        Err(e) => return vec![Check::new(format!("{name}/table"), false, e.to_string())],
    };
    let report = table.validate();
    let mut out = vec![Check::new(
        format!("{name}/table"),
        report.is_valid(),
        match report.first_failure() {
            None => "9 rows partition the 63 nonzero points into commuting subgroups".into(),
            Some(flag) => format!("{flag} failed"),
        },
    )];

    if let Some(published) = &example.published {
        out.extend(published_checks(name, &table, published));
    }

    let fitted = (1..=9).all(|r| {
        fit_curve(table.row(r))
            .map(|rel| rel.defines(table.row(r)))
            .unwrap_or(false)
    });
    out.push(Check::new(
        format!("{name}/fitted-curves"),
        fitted,
        "each row is exactly the solution set of its fitted relation",
    ));

    match mub_set(&table) {
        Ok(set) => {
            let r = set.report();
            out.push(Check::new(
                format!("{name}/mub"),
                r.pass,
                format!(
                    "orthonormality defect {:.3e}, unbiasedness defect {:.3e} (tolerance {TOLERANCE:e})",
                    r.orthonormality_defect, r.unbiasedness_defect
                ),
            ));
            let s = set.structure;
            out.push(Check::new(
                format!("{name}/structure"),
                s.is_known() && s.total() == 9,
                format!("structure {s}"),
            ));
        }
        Err(e) => out.push(Check::new(format!("{name}/mub"), false, e.to_string())),
    }
    out
}

/// Runs every reproduction check, in order.
pub fn run_all() -> Vec<Check> {
    let mut checks = solver_checks();
    for example in all_examples() {
        checks.extend(example_checks(&example));
    }
    checks
}
