//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so that every line is printed on every
//! run; the process exits nonzero if any criterion fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use mub3::curve::fit_curve;
use mub3::gf8::FieldElement;
use mub3::mub::{mub_set, Structure, KNOWN_STRUCTURES};
use mub3::pauli::point_to_pauli;
use mub3::phasespace::{
    build_table, check_all_striation_conditions, commutes, extend_seed, grid, independent, Point,
    SeedSet, StriationTable,
};
use mub3::reference::{self, EquationNumbering};
use mub3::solver::{solve_no_axis, solve_one_axis, solve_three_axes, solve_two_axes, Solution};

fn m(k: i64) -> FieldElement {
    FieldElement::mu_pow(k)
}
const ONE: FieldElement = FieldElement::ONE;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn values(sols: &[Solution]) -> Vec<Vec<FieldElement>> {
    sols.iter().map(|s| s.free_values()).collect()
}

fn c01_three_axes() -> Outcome {
    let (sols, t) = timed(|| solve_three_axes(m(2), m(6)).unwrap());
    let l3: Vec<_> = sols.iter().map(|s| s.free_values()[0]).collect();
    let pass = l3 == vec![m(3), m(5)] && t < Duration::from_secs(1);
    outcome(pass, format!("l3 = {l3:?} in {t:?} (limit 1 s)"))
}

fn c02_two_axes() -> Outcome {
    let (sols, t) = timed(|| solve_two_axes([m(4), m(3), m(5)], ONE).unwrap());
    let got = values(&sols);
    let pass = got == vec![vec![m(2), m(3)]] && t < Duration::from_secs(1);
    outcome(pass, format!("(a22,a23) = {got:?} in {t:?} (limit 1 s)"))
}

fn c03_one_axis() -> Outcome {
    let (sols, t) = timed(|| solve_one_axis([m(4), m(3), m(1)], ONE, m(2), m(6)).unwrap());
    let got = values(&sols);
    let want = vec![vec![m(2), m(6), m(4)], vec![m(3), m(6), m(4)]];
    let pass = got == want && t < Duration::from_secs(1);
    outcome(
        pass,
        format!("(b21,a22,a23) = {got:?} in {t:?} (limit 1 s)"),
    )
}

fn c04_no_axis() -> Outcome {
    let (sols, t) = timed(|| solve_no_axis(m(2), [m(5), m(3), ONE], m(3), m(2), m(1)));
    let target = vec![ONE, m(3), m(2), m(1), ONE];
    let found = sols.iter().any(|s| s.valid && s.free_values() == target);
    let pass = found && t < Duration::from_secs(5);
    outcome(
        pass,
        format!(
            "{} solutions, {} valid, target present: {found}, in {t:?} (limit 5 s)",
            sols.len(),
            sols.iter().filter(|s| s.valid).count()
        ),
    )
}

fn example_tables() -> Vec<(&'static str, StriationTable)> {
    reference::all_examples()
        .into_iter()
        .map(|ex| (ex.name, build_table(&ex.seed).unwrap()))
        .collect()
}

fn c05a_regenerated_curves() -> Outcome {
    let mut bad = Vec::new();
    for (name, table) in example_tables() {
        for r in 1..=9 {
            let row = table.row(r);
            let ok = fit_curve(row)
                .map(|rel| row.iter().chain([&Point::ORIGIN]).all(|&p| rel.holds_at(p)))
                .unwrap_or(false);
            if !ok {
                bad.push(format!("{name} row {r}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("fitted relations hold at all 8 points of 45 rows; failures: {bad:?}"),
    )
}

fn c05b_published_equations() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for ex in reference::all_examples() {
        let Some(published) = ex.published else {
            continue;
        };
        let table = build_table(&ex.seed).unwrap();
        let holds = |k: usize, r: usize| {
            let rel = published.equations[k];
            table
                .row(r)
                .iter()
                .chain([&Point::ORIGIN])
                .all(|&p| rel.holds_at(p))
        };
        match published.numbering {
            EquationNumbering::ByRow => {
                for k in 0..9 {
                    checked += 1;
                    if !holds(k, k + 1) {
                        bad.push(format!(
                            "{} eq {} ({})",
                            ex.name,
                            k + 1,
                            published.equations[k]
                        ));
                    }
                }
            }
            EquationNumbering::Unordered => {
                let mut rows = Vec::new();
                for k in 0..9 {
                    checked += 1;
                    let matching: Vec<_> = (1..=9).filter(|&r| holds(k, r)).collect();
                    if matching.len() != 1 {
                        bad.push(format!(
                            "{} eq {} matches rows {matching:?}",
                            ex.name,
                            k + 1
                        ));
                    }
                    rows.extend(matching);
                }
                rows.sort_unstable();
                if rows != (1..=9).collect::<Vec<_>>() {
                    bad.push(format!(
                        "{} equations are not a bijection onto rows",
                        ex.name
                    ));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} of {checked} published equations hold on their rows; failing: {bad:?}",
            checked - bad.len()
        ),
    )
}

fn c06_table1_grid() -> Outcome {
    let ex = reference::three_axes_first();
    let table = build_table(&ex.seed).unwrap();
    let g = grid(&table).unwrap();
    let published = ex.published.unwrap().grid;
    let diff = g
        .cells
        .iter()
        .flatten()
        .zip(published.iter().flatten())
        .filter(|(a, b)| a != b)
        .count();
    let origin_ok = g.cells[7][0] == 0;
    outcome(diff == 0 && origin_ok, format!("{diff} of 64 cells differ"))
}

fn criteria_1_to_4_tables() -> Vec<StriationTable> {
    let mut sols = solve_three_axes(m(2), m(6)).unwrap();
    sols.extend(solve_two_axes([m(4), m(3), m(5)], ONE).unwrap());
    sols.extend(solve_one_axis([m(4), m(3), m(1)], ONE, m(2), m(6)).unwrap());
    sols.extend(solve_no_axis(m(2), [m(5), m(3), ONE], m(3), m(2), m(1)));
    sols.into_iter()
        .filter(|s| s.valid)
        .map(|s| s.table())
        .collect()
}

fn c07_mub_verification() -> Outcome {
    let (result, t) = timed(|| {
        let tables = criteria_1_to_4_tables();
        let mut worst_orth: f64 = 0.0;
        let mut worst_unb: f64 = 0.0;
        let mut all_pass = true;
        for table in &tables {
            let r = mub_set(table).unwrap().report();
            worst_orth = worst_orth.max(r.orthonormality_defect);
            worst_unb = worst_unb.max(r.unbiasedness_defect);
            all_pass &= r.orthonormality_defect < 1e-10 && r.unbiasedness_defect < 1e-10;
        }
        (tables.len(), worst_orth, worst_unb, all_pass)
    });
    let (n, orth, unb, all_pass) = result;
    outcome(
        all_pass && t < Duration::from_secs(10),
        format!("{n} tables, max orthonormality defect {orth:.2e}, max unbiasedness defect {unb:.2e} (tol 1e-10), {t:?} (limit 10 s)"),
    )
}

fn c08_structures() -> Outcome {
    let mut seen = Vec::new();
    let mut pass = true;
    for (name, table) in example_tables() {
        let s: Structure = mub_set(&table).unwrap().structure;
        pass &= KNOWN_STRUCTURES.contains(&s) && s.total() == 9;
        seen.push(format!("{name} {s}"));
    }
    outcome(pass, seen.join(", "))
}

/// Ordered GF(2) bases of GF(8).
fn ordered_bases() -> Vec<[FieldElement; 3]> {
    let mut out = Vec::new();
    for x in FieldElement::nonzero() {
        for y in FieldElement::nonzero() {
            for z in FieldElement::nonzero() {
                let pts = [x, y, z].map(|b| Point::new(FieldElement::ZERO, b));
                if independent(&pts) {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

/// Well-formed seeds satisfying the twelve equations, gathered by sweeping
/// the two-axes, one-axis and no-axis fixings.
fn sweep_solutions() -> Vec<Solution> {
    let bases = ordered_bases();
    assert_eq!(bases.len(), 168);
    let mut sols = Vec::new();
    for b in &bases {
        for a21 in FieldElement::all() {
            sols.extend(solve_two_axes(*b, a21).unwrap());
            for b22 in FieldElement::all() {
                for b23 in FieldElement::all() {
                    sols.extend(solve_one_axis(*b, a21, b22, b23).unwrap());
                }
            }
        }
    }
    for (i, b) in bases.iter().enumerate().step_by(21) {
        for a11 in FieldElement::nonzero() {
            let a21 = FieldElement::from_rank(1 + i % 7);
            let b22 = FieldElement::from_rank(i % 8);
            let b23 = FieldElement::from_rank((i + 3) % 8);
            sols.extend(solve_no_axis(a11, *b, a21, b22, b23));
        }
    }
    let mut seen = HashSet::new();
    sols.retain(|s| s.seed.is_well_formed() && seen.insert(s.seed));
    sols
}

fn c09_redundancy(sols: &[Solution]) -> Outcome {
    let counterexamples: Vec<&SeedSet> = sols
        .iter()
        .filter(|s| !check_all_striation_conditions(&extend_seed(&s.seed)))
        .map(|s| &s.seed)
        .collect();
    for seed in &counterexamples {
        println!("    counterexample: {seed:?}");
    }
    let valid = sols.iter().filter(|s| s.valid).count();
    outcome(
        sols.len() >= 10_000 && counterexamples.is_empty(),
        format!(
            "{} well-formed solutions ({valid} with valid partitions), {} counterexamples (need >= 10000 seeds, 0 counterexamples)",
            sols.len(),
            counterexamples.len()
        ),
    )
}

fn c10_symplectic() -> Outcome {
    let (mismatches, t) = timed(|| {
        let mut n = 0;
        for p in Point::all() {
            for q in Point::all() {
                if point_to_pauli(p).commutes_with(point_to_pauli(q)) != commutes(p, q) {
                    n += 1;
                }
            }
        }
        n
    });
    outcome(
        mismatches == 0 && t < Duration::from_secs(1),
        format!("{mismatches} mismatches over 4096 pairs in {t:?} (limit 1 s)"),
    )
}

/// GF(2)[x] multiplication reduced mod x³ + x + 1.
fn poly_mul(a: u8, b: u8) -> u8 {
    let mut prod: u16 = 0;
    for i in 0..3 {
        if b >> i & 1 == 1 {
            prod ^= (a as u16) << i;
        }
    }
    for deg in (3..5).rev() {
        if prod >> deg & 1 == 1 {
            prod ^= 0b1011 << (deg - 3);
        }
    }
    prod as u8
}

fn c11_field_oracle() -> Outcome {
    let mut bad = 0;
    for bits in 0..8u8 {
        let sq = poly_mul(bits, bits);
        let oracle = bits ^ sq ^ poly_mul(sq, sq);
        let x = FieldElement::from_bits(bits).unwrap();
        if x.trace().value() != oracle {
            bad += 1;
        }
    }
    // μ³ = 0b011, μ⁵ = 0b111, μ⁶ = 0b101 in the polynomial basis
    let basis = [0b011u8, 0b111, 0b101];
    let mut dual_bad = 0;
    for i in 0..3 {
        for j in 0..3 {
            let p = poly_mul(basis[i], basis[j]);
            let sq = poly_mul(p, p);
            let tr = p ^ sq ^ poly_mul(sq, sq);
            let lib = (FieldElement::SELF_DUAL_BASIS[i] * FieldElement::SELF_DUAL_BASIS[j]).trace();
            if tr != (i == j) as u8 || lib.value() != tr {
                dual_bad += 1;
            }
        }
        if FieldElement::SELF_DUAL_BASIS[i].bits() != basis[i] {
            dual_bad += 1;
        }
    }
    outcome(
        bad == 0 && dual_bad == 0,
        format!(
            "{bad} trace mismatches over 8 elements, {dual_bad} self-duality failures over 9 pairs"
        ),
    )
}

/// Independent partition check: counts memberships and closure directly.
fn partition_ok(table: &StriationTable) -> bool {
    let mut count = [0u32; 64];
    for p in table.rows.iter().flatten() {
        count[(p.a.bits() as usize) * 8 + p.b.bits() as usize] += 1;
    }
    let covers = count[0] == 0 && count[1..].iter().all(|&c| c == 1);
    let subgroups = table.rows.iter().all(|row| {
        let mut group: Vec<Point> = row.to_vec();
        group.push(Point::ORIGIN);
        group
            .iter()
            .all(|&p| group.iter().all(|&q| group.contains(&(p + q))))
            && group.iter().collect::<HashSet<_>>().len() == 8
    });
    covers && subgroups
}

fn c12_partition(sols: &[Solution]) -> Outcome {
    let mut tables: Vec<StriationTable> = example_tables().into_iter().map(|(_, t)| t).collect();
    tables.extend(criteria_1_to_4_tables());
    tables.extend(sols.iter().filter(|s| s.valid).map(|s| s.table()));
    let bad = tables.iter().filter(|t| !partition_ok(t)).count();
    outcome(
        bad == 0,
        format!(
            "{} valid tables, {bad} violate the partition/subgroup invariant",
            tables.len()
        ),
    )
}

fn supplementary_published_grids() -> Outcome {
    let mut diffs = Vec::new();
    for ex in reference::all_examples() {
        let Some(published) = ex.published else {
            continue;
        };
        let g = grid(&build_table(&ex.seed).unwrap()).unwrap();
        let d = g
            .cells
            .iter()
            .flatten()
            .zip(published.grid.iter().flatten())
            .filter(|(a, b)| a != b)
            .count();
        diffs.push(format!("{} {d}", ex.name));
    }
    let pass = diffs.iter().all(|d| d.ends_with(" 0"));
    outcome(
        pass,
        format!("differing cells per published grid: {}", diffs.join(", ")),
    )
}

fn main() {
    let (sweep, sweep_time) = timed(sweep_solutions);
    println!(
        "sweep: {} distinct well-formed solutions in {sweep_time:?}",
        sweep.len()
    );

    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("1  three-axes solutions", Box::new(c01_three_axes)),
        ("2  two-axes solution", Box::new(c02_two_axes)),
        ("3  one-axis solutions", Box::new(c03_one_axis)),
        ("4  no-axis solution", Box::new(c04_no_axis)),
        (
            "5a regenerated curve equations",
            Box::new(c05a_regenerated_curves),
        ),
        (
            "5b published curve equations",
            Box::new(c05b_published_equations),
        ),
        ("6  three-axes published grid", Box::new(c06_table1_grid)),
        ("7  MUB verification", Box::new(c07_mub_verification)),
        ("8  structure tuples", Box::new(c08_structures)),
        (
            "9  redundancy of the striation conditions",
            Box::new(|| c09_redundancy(&sweep)),
        ),
        ("10 symplectic/trace equivalence", Box::new(c10_symplectic)),
        ("11 field oracle", Box::new(c11_field_oracle)),
        ("12 partition invariant", Box::new(|| c12_partition(&sweep))),
        (
            "+  published grids 2-4",
            Box::new(supplementary_published_grids),
        ),
    ];

    let mut failed = 0;
    for (name, run) in &criteria {
        let o = run();
        println!(
            "[{}] criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
