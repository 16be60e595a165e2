//! `latwork`: command-line front end for the latticework workbench.
//!
//! Subcommands cover the main library entry points: replaying a scenario,
//! enumerating divisor classes, resolving a cyclic quotient, evaluating a
//! fixed-locus budget, and expanding a Hirzebruch-Jung chain. Every value is
//! printed as an exact integer or rational string; the process exits 0 only
//! when the requested computation succeeds and, for replays, passes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use latticework::exact::{rational_to_string, RationalMatrix};
use latticework::lefschetz::fixed_locus_budget;
use latticework::quotient::hj_chain;
use latticework::scenario::{
    builtin_json, builtin_scenario, parse_scenario, run_scenario, ExactValue, Scenario, World,
};
use latticework::search::SearchProblem;

#[derive(Parser)]
#[command(
    name = "latwork",
    version,
    about = "Exact intersection-theory workbench",
    arg_required_else_help = true
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a scenario, by built-in name or by path to a scenario JSON
    /// file, and report every assertion. Exits 0 only if all pass.
    Replay {
        /// Built-in scenario name or path to a scenario file.
        target: String,
    },
    /// Enumerate divisor classes of the built-in ambient lattice with the
    /// given canonical degree and self-intersection.
    Search {
        /// Required pairing with the canonical class.
        #[arg(long)]
        kd: i64,
        /// Required self-intersection.
        #[arg(long)]
        d2: i64,
    },
    /// Resolve a cyclic quotient described by a JSON file with keys
    /// "curves" (a curve family) and "quotient" (a quotient over it), and
    /// print the derived intersection table.
    Quotient {
        /// Path to the setup file.
        setup: PathBuf,
    },
    /// Evaluate the fixed-locus budget of an involution case described by a
    /// JSON file with keys "trace" and "sign".
    Lefschetz {
        /// Path to the case file.
        case: PathBuf,
    },
    /// Expand the exceptional chain resolving a cyclic quotient singularity
    /// of type 1/n (1, a).
    Hj { n: i64, a: i64 },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Replay { target } => replay(target, cli.format),
        Command::Search { kd, d2 } => search(*kd, *d2, cli.format),
        Command::Quotient { setup } => quotient(setup, cli.format),
        Command::Lefschetz { case } => lefschetz(case, cli.format),
        Command::Hj { n, a } => hj(*n, *a, cli.format),
    };
    match result {
        Ok((output, pass)) => {
            if let Err(message) = deliver(cli.out.as_deref(), &output) {
                eprintln!("error: {message}");
                return ExitCode::from(1);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn deliver(out: Option<&Path>, output: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            fs::write(path, output).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(output.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| format!("cannot write to standard output: {e}"))
        }
    }
}

fn read_json_object(path: &Path) -> Result<serde_json::Map<String, serde_json::Value>, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))?;
    match value {
        serde_json::Value::Object(map) => Ok(map),
        _ => Err(format!("{} must contain a JSON object", path.display())),
    }
}

fn field(
    map: &serde_json::Map<String, serde_json::Value>,
    key: &str,
    path: &Path,
) -> Result<serde_json::Value, String> {
    map.get(key)
        .cloned()
        .ok_or_else(|| format!("{} is missing the {key:?} field", path.display()))
}

fn pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report values serialize");
    text.push('\n');
    text
}

fn replay(target: &str, format: Format) -> Result<(String, bool), String> {
    let scenario = if let Some(json) = builtin_json(target) {
        parse_scenario(json).map_err(|e| e.to_string())?
    } else if Path::new(target).is_file() {
        let text = fs::read_to_string(target).map_err(|e| format!("cannot read {target}: {e}"))?;
        parse_scenario(&text).map_err(|e| format!("cannot parse {target}: {e}"))?
    } else {
        return Err(format!(
            "{target:?} is neither a built-in scenario name nor a scenario file"
        ));
    };
    let report = run_scenario(&scenario).map_err(|e| e.to_string())?;
    let output = match format {
        Format::Text => report.render_text(),
        Format::Json => report.render_json(),
    };
    Ok((output, report.overall_pass()))
}

fn search(kd: i64, d2: i64, format: Format) -> Result<(String, bool), String> {
    // Only the ambient lattice is needed; drop the rest of the built-in
    // scenario before building.
    let mut scenario = builtin_scenario();
    scenario.curves.clear();
    scenario.quotients.clear();
    scenario.involutions.clear();
    scenario.assertions.clear();
    let name = scenario.lattices[0].name.clone();
    let world = World::build(&scenario).map_err(|e| e.to_string())?;
    let lattice = world
        .lattices
        .get(&name)
        .expect("the built-in ambient lattice is present");
    let problem = SearchProblem::new(lattice, kd, d2).map_err(|e| e.to_string())?;
    let solutions = problem.enumerate_classes().map_err(|e| e.to_string())?;
    let output = match format {
        Format::Text => {
            let mut text = format!(
                "canonical degree: {kd}\nself-intersection: {d2}\nsolutions: {}\n",
                solutions.len()
            );
            for solution in &solutions {
                text.push_str(&format!(
                    "  a={}  b={}  c={}  s={}  class={}\n",
                    solution.a,
                    solution.b,
                    solution.c,
                    solution.s,
                    solution.class.coords_display()
                ));
            }
            text
        }
        Format::Json => {
            let solutions: Vec<serde_json::Value> = solutions
                .iter()
                .map(|solution| {
                    serde_json::json!({
                        "a": solution.a.to_string(),
                        "b": solution.b.to_string(),
                        "c": solution.c.to_string(),
                        "s": solution.s.to_string(),
                        "coords": solution
                            .class
                            .coords()
                            .iter()
                            .map(rational_to_string)
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            pretty(&serde_json::json!({
                "canonical_degree": kd,
                "self_intersection": d2,
                "solutions": solutions,
            }))
        }
    };
    Ok((output, true))
}

fn quotient(setup: &Path, format: Format) -> Result<(String, bool), String> {
    let map = read_json_object(setup)?;
    let curves: latticework::scenario::CurveFamilySpec =
        serde_json::from_value(field(&map, "curves", setup)?)
            .map_err(|e| format!("bad \"curves\" entry in {}: {e}", setup.display()))?;
    let spec: latticework::scenario::QuotientSpec =
        serde_json::from_value(field(&map, "quotient", setup)?)
            .map_err(|e| format!("bad \"quotient\" entry in {}: {e}", setup.display()))?;
    let name = spec.name.clone();
    let scenario = Scenario {
        name: name.clone(),
        lattices: Vec::new(),
        curves: vec![curves],
        quotients: vec![spec],
        involutions: Vec::new(),
        assertions: Vec::new(),
    };
    let world = World::build(&scenario).map_err(|e| e.to_string())?;
    let built = world
        .quotients
        .get(&name)
        .expect("the requested quotient is present")
        .as_ref()
        .map_err(|message| message.clone())?;
    let lattice = built.lattice();
    let labels: Vec<&str> = lattice.basis().iter().map(String::as_str).collect();
    let output = match format {
        Format::Text => {
            let mut text = format!("quotient: {name}\ngenerators: {}\n", labels.len());
            text.push_str(&render_table(&labels, lattice.gram()));
            text
        }
        Format::Json => {
            let gram: Vec<Vec<String>> = (0..labels.len())
                .map(|i| {
                    lattice
                        .gram()
                        .row(i)
                        .iter()
                        .map(rational_to_string)
                        .collect()
                })
                .collect();
            pretty(&serde_json::json!({
                "name": name,
                "generators": labels,
                "gram": gram,
            }))
        }
    };
    Ok((output, true))
}

fn lefschetz(case: &Path, format: Format) -> Result<(String, bool), String> {
    let map = read_json_object(case)?;
    let trace: ExactValue = serde_json::from_value(field(&map, "trace", case)?)
        .map_err(|e| format!("bad \"trace\" entry in {}: {e}", case.display()))?;
    let trace = trace.to_rational("trace").map_err(|e| e.to_string())?;
    let sign = field(&map, "sign", case)?
        .as_i64()
        .ok_or_else(|| format!("the \"sign\" entry in {} must be 1 or -1", case.display()))?;
    let budget = fixed_locus_budget(&trace, sign).map_err(|e| e.to_string())?;
    let output = match format {
        Format::Text => format!(
            "trace: {}\nsign: {}\neuler: {}\ntotal square: {}\ncanonical offset: {}\n",
            rational_to_string(&trace),
            sign,
            rational_to_string(&budget.euler),
            rational_to_string(&budget.total_square),
            rational_to_string(&budget.canonical_offset),
        ),
        Format::Json => pretty(&serde_json::json!({
            "trace": rational_to_string(&trace),
            "sign": sign,
            "euler": rational_to_string(&budget.euler),
            "total_square": rational_to_string(&budget.total_square),
            "canonical_offset": rational_to_string(&budget.canonical_offset),
        })),
    };
    Ok((output, true))
}

fn hj(n: i64, a: i64, format: Format) -> Result<(String, bool), String> {
    let chain = hj_chain(n, a).map_err(|e| e.to_string())?;
    let self_intersections: Vec<i64> = chain.coefficients.iter().map(|b| -b).collect();
    let determinant = chain.determinant();
    let discrepancies = chain.discrepancies();
    let output = match format {
        Format::Text => {
            let listed: Vec<String> = self_intersections.iter().map(|v| v.to_string()).collect();
            let gaps: Vec<String> = discrepancies.iter().map(rational_to_string).collect();
            format!(
                "singularity: 1/{n} (1, {a})\nchain: [{}]\ndeterminant: {}\ndiscrepancies: [{}]\n",
                listed.join(", "),
                rational_to_string(&determinant),
                gaps.join(", "),
            )
        }
        Format::Json => pretty(&serde_json::json!({
            "n": n,
            "a": a,
            "chain": self_intersections,
            "determinant": rational_to_string(&determinant),
            "discrepancies": discrepancies
                .iter()
                .map(rational_to_string)
                .collect::<Vec<_>>(),
        })),
    };
    Ok((output, true))
}

/// Renders a labelled symmetric table with right-aligned entries.
fn render_table(labels: &[&str], gram: &RationalMatrix) -> String {
    let n = labels.len();
    let entries: Vec<Vec<String>> = (0..n)
        .map(|i| gram.row(i).iter().map(rational_to_string).collect())
        .collect();
    let head_width = labels.iter().map(|l| l.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..n)
        .map(|j| {
            entries
                .iter()
                .map(|row| row[j].len())
                .chain(std::iter::once(labels[j].len()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut text = String::new();
    text.push_str(&" ".repeat(head_width));
    for (label, width) in labels.iter().zip(&widths) {
        text.push_str(&format!("  {label:>width$}"));
    }
    text.push('\n');
    for (label, row) in labels.iter().zip(&entries) {
        text.push_str(&format!("{label:<head_width$}"));
        for (entry, width) in row.iter().zip(&widths) {
            text.push_str(&format!("  {entry:>width$}"));
        }
        text.push('\n');
    }
    text
}
