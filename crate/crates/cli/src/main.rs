use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use mub3::curve::fit_curve;
use mub3::mub::{mub_set, MubReport};
use mub3::phasespace::{build_table, first_failing_equation, grid, SeedSet, StriationTable};
use mub3::reproduce::{run_all, Check};
use mub3::solver::{Param, Scenario, ScenarioKind, Solution};
use mub3::{CurveRelation, FieldElement};

#[derive(Parser)]
#[command(
    name = "mub3",
    version,
    about = "Three-qubit mutually unbiased bases over GF(8)"
)]
struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Emit a human-readable text view of the same data.
    #[arg(long, global = true)]
    pretty: bool,
    /// Read the seed from a JSON file instead of the parameter flags.
    #[arg(long, global = true, value_name = "PATH")]
    seed_file: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the twelve trace equations under a fixing scheme.
    Solve(SolveArgs),
    /// Build a striation table from a seed.
    Table(TableArgs),
    /// Verify that a table yields nine mutually unbiased bases.
    Verify(VerifyArgs),
    /// Report the separability structure of a table.
    Classify(SeedArgs),
    /// Rerun every worked example end to end.
    ReproducePaper,
}

/// The twelve parameters in canonical order.
#[derive(Args, Default)]
struct SeedArgs {
    #[arg(long)]
    a11: Option<FieldElement>,
    #[arg(long)]
    b11: Option<FieldElement>,
    #[arg(long)]
    a12: Option<FieldElement>,
    #[arg(long)]
    b12: Option<FieldElement>,
    #[arg(long)]
    a13: Option<FieldElement>,
    #[arg(long)]
    b13: Option<FieldElement>,
    #[arg(long)]
    a21: Option<FieldElement>,
    #[arg(long)]
    b21: Option<FieldElement>,
    #[arg(long)]
    a22: Option<FieldElement>,
    #[arg(long)]
    b22: Option<FieldElement>,
    #[arg(long)]
    a23: Option<FieldElement>,
    #[arg(long)]
    b23: Option<FieldElement>,
}

impl SeedArgs {
    fn values(&self) -> [Option<FieldElement>; 12] {
        [
            self.a11, self.b11, self.a12, self.b12, self.a13, self.b13, self.a21, self.b21,
            self.a22, self.b22, self.a23, self.b23,
        ]
    }

    fn given(&self) -> impl Iterator<Item = (Param, FieldElement)> {
        Param::ALL
            .into_iter()
            .zip(self.values())
            .filter_map(|(p, v)| v.map(|v| (p, v)))
    }
}

#[derive(Args)]
struct SolveArgs {
    /// three-axes, two-axes, one-axis, no-axis or generic.
    #[arg(long, required_unless_present = "scenario_file")]
    scenario: Option<ScenarioKind>,
    /// Scenario as JSON: {"kind": ..., "fixed": {...}}.
    #[arg(long, value_name = "PATH", conflicts_with = "scenario")]
    scenario_file: Option<PathBuf>,
    /// λ₁ for three-axes (same as --b11).
    #[arg(long, conflicts_with = "b11")]
    l1: Option<FieldElement>,
    /// λ₂ for three-axes (same as --b12).
    #[arg(long, conflicts_with = "b12")]
    l2: Option<FieldElement>,
    /// Allow generic searches over more than six free parameters.
    #[arg(long)]
    allow_large: bool,
    #[command(flatten)]
    fixed: SeedArgs,
}

#[derive(Args)]
struct TableArgs {
    /// Print the lattice with row labels.
    #[arg(long, conflicts_with = "curves")]
    render: bool,
    /// Print the fitted curve relation of each row.
    #[arg(long)]
    curves: bool,
    #[command(flatten)]
    seed: SeedArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Include every basis state's amplitudes.
    #[arg(long)]
    amplitudes: bool,
    #[command(flatten)]
    seed: SeedArgs,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<mub3::Error> for Failure {
    fn from(e: mub3::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<(String, bool), Failure>;

#[derive(Clone, Copy, PartialEq)]
enum Encoding {
    Json,
    Text,
}

struct Ctx {
    encoding: Option<Encoding>,
    seed_file: Option<PathBuf>,
}

impl Ctx {
    fn encoding_or(&self, default: Encoding) -> Encoding {
        self.encoding.unwrap_or(default)
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Rounds to 12 significant digits.
fn round12(x: f64) -> f64 {
    format!("{x:.11e}").parse().expect("formatted float")
}

fn read_seed_file(path: &Path) -> Result<SeedSet, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Domain(format!("{} is not a seed: {e}", path.display())))
}

fn seed(ctx: &Ctx, args: &SeedArgs) -> Result<SeedSet, Failure> {
    let values = args.values();
    if let Some(path) = &ctx.seed_file {
        if values.iter().any(Option::is_some) {
            return Err(Failure::Usage(
                "--seed-file cannot be combined with parameter flags".into(),
            ));
        }
        return read_seed_file(path);
    }
    let mut params = [FieldElement::ZERO; 12];
    for (i, v) in values.into_iter().enumerate() {
        params[i] = v.ok_or_else(|| {
            Failure::Usage(format!(
                "missing --{} (give all twelve parameters or --seed-file)",
                Param::ALL[i]
            ))
        })?;
    }
    Ok(SeedSet::from_params(params))
}

/// Builds a table, naming the first failing equation or validation check.
fn checked_table(seed: &SeedSet) -> Result<StriationTable, Failure> {
    if let Some(k) = first_failing_equation(seed) {
        return Err(Failure::Domain(format!("seed fails trace equation {k}")));
    }
    let table = build_table(seed)?;
    if let Some(flag) = table.validate().first_failure() {
        return Err(Failure::Domain(format!("table fails validation: {flag}")));
    }
    Ok(table)
}

fn solve(ctx: &Ctx, args: &SolveArgs) -> Outcome {
    let scenario = match &args.scenario_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))?;
            let scenario: Scenario = serde_json::from_str(&text).map_err(|e| {
                Failure::Domain(format!("{} is not a scenario: {e}", path.display()))
            })?;
            if args.fixed.given().next().is_some() || args.l1.is_some() || args.l2.is_some() {
                return Err(Failure::Usage(
                    "--scenario-file cannot be combined with parameter flags".into(),
                ));
            }
            scenario
        }
        None => {
            let kind = args.scenario.expect("required by clap");
            if (args.l1.is_some() || args.l2.is_some()) && kind != ScenarioKind::ThreeAxes {
                return Err(Failure::Usage(
                    "--l1 and --l2 apply to three-axes only".into(),
                ));
            }
            let mut scenario = Scenario::new(kind);
            for (p, v) in args.fixed.given() {
                scenario = scenario.with(p, v);
            }
            if let Some(v) = args.l1 {
                scenario = scenario.with(Param::B11, v);
            }
            if let Some(v) = args.l2 {
                scenario = scenario.with(Param::B12, v);
            }
            scenario
        }
    };
    let sols = scenario.solve(args.allow_large)?;
    let out = match ctx.encoding_or(Encoding::Json) {
        Encoding::Json => to_json(&sols),
        Encoding::Text => solutions_text(&sols, &scenario),
    };
    Ok((out, true))
}

fn solutions_text(sols: &[Solution], scenario: &Scenario) -> String {
    let free: Vec<Param> = match sols.first() {
        Some(s) => s.free.iter().map(|&(p, _)| p).collect(),
        None => Param::ALL
            .into_iter()
            .filter(|p| !scenario.fixed.contains_key(p))
            .collect(),
    };
    let mut out = String::from("#");
    for p in &free {
        write!(out, " {p:>3}").unwrap();
    }
    out.push_str(" valid seed\n");
    for (i, s) in sols.iter().enumerate() {
        write!(out, "{}", i + 1).unwrap();
        for v in s.free_values() {
            write!(out, " {:>3}", v.token()).unwrap();
        }
        write!(out, " {:<5}", s.valid).unwrap();
        for p in s.seed.row1 {
            write!(out, " {p}").unwrap();
        }
        out.push_str(" |");
        for p in s.seed.row2 {
            write!(out, " {p}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn table(ctx: &Ctx, args: &TableArgs) -> Outcome {
    let table = checked_table(&seed(ctx, &args.seed)?)?;
    let out = if args.render {
        let g = grid(&table)?;
        match ctx.encoding_or(Encoding::Text) {
            Encoding::Json => to_json(&g.cells),
            Encoding::Text => g.to_string(),
        }
    } else if args.curves {
        let curves = (1..=9)
            .map(|r| fit_curve(table.row(r)))
            .collect::<Result<Vec<_>, _>>()?;
        match ctx.encoding_or(Encoding::Json) {
            Encoding::Json => to_json(&curves),
            Encoding::Text => curves_text(&curves),
        }
    } else {
        match ctx.encoding_or(Encoding::Json) {
            Encoding::Json => to_json(&table),
            Encoding::Text => {
                let mut out = String::new();
                for (r, row) in table.rows.iter().enumerate() {
                    write!(out, "{}", r + 1).unwrap();
                    for p in row {
                        write!(out, " {p}").unwrap();
                    }
                    out.push('\n');
                }
                out
            }
        }
    };
    Ok((out, true))
}

fn curves_text(curves: &[CurveRelation]) -> String {
    let mut out = String::new();
    for (r, c) in curves.iter().enumerate() {
        let tokens = |v: &[FieldElement; 3]| v.map(|x| x.token()).join(" ");
        writeln!(
            out,
            "{}  l: {}  m: {}  {c}",
            r + 1,
            tokens(&c.l),
            tokens(&c.m)
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
struct VerifyOutput {
    #[serde(flatten)]
    report: MubReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    amplitudes: Option<Vec<Vec<Vec<[f64; 2]>>>>,
}

fn verify(ctx: &Ctx, args: &VerifyArgs) -> Outcome {
    let table = checked_table(&seed(ctx, &args.seed)?)?;
    let set = mub_set(&table)?;
    let mut report = set.report();
    report.orthonormality_defect = round12(report.orthonormality_defect);
    report.unbiasedness_defect = round12(report.unbiasedness_defect);
    let amplitudes = args.amplitudes.then(|| {
        set.bases
            .iter()
            .map(|b| {
                b.amplitudes()
                    .into_iter()
                    .map(|s| {
                        s.into_iter()
                            .map(|[re, im]| [round12(re), round12(im)])
                            .collect()
                    })
                    .collect()
            })
            .collect()
    });
    let output = VerifyOutput { report, amplitudes };
    let out = match ctx.encoding_or(Encoding::Json) {
        Encoding::Json => to_json(&output),
        Encoding::Text => verify_text(&output),
    };
    Ok((out, report.pass))
}

fn verify_text(v: &VerifyOutput) -> String {
    let r = &v.report;
    let s = r.structure;
    let mut out = format!(
        "orthonormality_defect {:e}\nunbiasedness_defect {:e}\nstructure {} {} {}\npass {}\n",
        r.orthonormality_defect,
        r.unbiasedness_defect,
        s.triseparable,
        s.biseparable,
        s.nonseparable,
        r.pass
    );
    for (b, basis) in v.amplitudes.iter().flatten().enumerate() {
        for (k, state) in basis.iter().enumerate() {
            write!(out, "amplitudes {} {}", b + 1, k + 1).unwrap();
            for [re, im] in state {
                write!(out, " {re:e},{im:e}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}

fn classify(ctx: &Ctx, args: &SeedArgs) -> Outcome {
    let table = checked_table(&seed(ctx, args)?)?;
    let set = mub_set(&table)?;
    let labels: Vec<_> = set.bases.iter().map(|b| b.label).collect();
    let out = match ctx.encoding_or(Encoding::Json) {
        Encoding::Json => to_json(&json!({ "structure": set.structure, "bases": labels })),
        Encoding::Text => {
            let s = set.structure;
            let mut out = format!(
                "structure {} {} {}\n",
                s.triseparable, s.biseparable, s.nonseparable
            );
            for (i, l) in labels.iter().enumerate() {
                writeln!(out, "basis {} {l}", i + 1).unwrap();
            }
            out
        }
    };
    Ok((out, true))
}

fn reproduce(ctx: &Ctx) -> Outcome {
    let checks = run_all();
    let pass = checks.iter().all(|c| c.pass);
    let out = match ctx.encoding_or(Encoding::Text) {
        Encoding::Json => to_json(&checks),
        Encoding::Text => checks_text(&checks),
    };
    Ok((out, pass))
}

fn checks_text(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        writeln!(out, "{status} {}: {}", c.name, c.detail).unwrap();
    }
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    writeln!(
        out,
        "{} of {} checks passed",
        checks.len() - failed.len(),
        checks.len()
    )
    .unwrap();
    if !failed.is_empty() {
        writeln!(out, "failed: {}", failed.join(", ")).unwrap();
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        encoding: if cli.json {
            Some(Encoding::Json)
        } else if cli.pretty {
            Some(Encoding::Text)
        } else {
            None
        },
        seed_file: cli.seed_file,
    };
    let result = match &cli.command {
        Command::Solve(args) => solve(&ctx, args),
        Command::Table(args) => table(&ctx, args),
        Command::Verify(args) => verify(&ctx, args),
        Command::Classify(args) => classify(&ctx, args),
        Command::ReproducePaper => reproduce(&ctx),
    };
    match result {
        Ok((out, pass)) => {
            print!("{out}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
