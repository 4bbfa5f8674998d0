use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use pastebox::nerve::segal_check;
use pastebox::structure::{
    check_covering, enumerate_vertebrae, filtration_for, is_composable_with, is_locally_composable_with,
    verify_vertebra_union, Admitter, Decomposition, Filtration, PieceCert, Verdict,
};
use pastebox::toolkit::fixtures::{fixture, fixture_names};
use pastebox::toolkit::suite::{levels_up_to, run_suite, CheckVerdict, SuiteConfig};
use pastebox::toolkit::{read_shape, render_svg, serialize_shape};
use pastebox::{detect_grid, nerve_level, GridWitness, PastingShape};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "pastebox", version, about = "Pasting shapes on the integer lattice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(multiple = false)]
struct CheckKind {
    /// Detect a grid and print its witness.
    #[arg(long)]
    grid: bool,
    /// Search for a decomposition and print its filtration.
    #[arg(long)]
    admittable: bool,
    /// Check composability (the default).
    #[arg(long)]
    composable: bool,
    #[arg(long)]
    locally_composable: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property of a shape. Exit 0 = yes, 1 = no, 2 = inconclusive.
    Check {
        /// A shape document, or the name of a built-in fixture.
        file: String,
        #[command(flatten)]
        kind: CheckKind,
    },
    /// List the k-vertebrae of a shape.
    Vertebrae {
        file: String,
        #[arg(long)]
        k: usize,
    },
    /// Compute one level of the nerve.
    Nerve {
        file: String,
        /// Comma separated, one entry per direction.
        #[arg(long, value_delimiter = ',', required = true)]
        level: Vec<usize>,
        #[arg(long, conflicts_with = "list")]
        count: bool,
        #[arg(long)]
        list: bool,
    },
    /// Check the Segal condition at every level of total size at most S.
    Segal {
        file: String,
        #[arg(long = "max-level")]
        max_level: usize,
    },
    /// Check whether the given subshapes cover a shape.
    Cover {
        file: String,
        /// Comma separated files or fixture names.
        #[arg(long)]
        parts: String,
    },
    /// Compare a shape with the union of its vertebrae.
    PasteVerify { file: String },
    /// Draw a 2- or 3-dimensional shape as SVG.
    Render {
        file: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Run the built-in check suite.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        skip_slow: bool,
        /// Directory whose `<NAME>.jsonl` files override built-in fixtures.
        #[arg(long)]
        fixture_dir: Option<PathBuf>,
        /// Run only checks whose name starts with one of these prefixes.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Write a built-in fixture as a shape document.
    Fixture {
        /// Fixture name, or `list` to print all names.
        name: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

fn load(spec: &str) -> anyhow::Result<PastingShape> {
    let path = Path::new(spec);
    if path.exists() {
        return read_shape(path).with_context(|| format!("reading {spec}"));
    }
    fixture(spec).with_context(|| format!("{spec} is neither a file nor a fixture"))
}

/// Splits on commas outside parentheses, so `SQ(2,2)` stays whole.
fn split_top_level(list: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in list.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&list[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&list[start..]);
    out.into_iter().filter(|s| !s.is_empty()).collect()
}

fn emit(value: Value) {
    let mut value = value;
    value.as_object_mut().expect("object").insert("schema".into(), json!(SCHEMA));
    print_text(&format!("{}\n", serde_json::to_string_pretty(&value).expect("json")));
}

fn print_text(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn write_out(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print_text(text);
            Ok(())
        }
    }
}

fn boxes_json(shape: &PastingShape) -> Value {
    json!(shape.boxes().iter().map(|b| json!([b.lo.coords(), b.hi.coords()])).collect::<Vec<_>>())
}

fn witness_json(w: &GridWitness) -> Value {
    json!({ "lines": w.lines, "closed": w.closed })
}

fn decomposition_json(d: &Decomposition) -> Value {
    let pieces: Vec<Value> = d
        .pieces
        .iter()
        .map(|p| {
            let cert = match &p.cert {
                PieceCert::Cell(w) => json!({ "cell": witness_json(w) }),
                PieceCert::Split(inner) => json!({ "split": decomposition_json(inner) }),
            };
            json!({ "window": p.window, "cert": cert })
        })
        .collect();
    json!({ "base": witness_json(&d.witness), "height": d.height(), "pieces": pieces })
}

fn filtration_json(f: &Filtration) -> Value {
    let steps: Vec<Value> = f.steps.iter().map(|s| json!({ "witness": witness_json(&s.witness), "boxes": boxes_json(&s.grid) })).collect();
    json!({ "base": witness_json(&f.base_witness), "steps": steps })
}

fn verdict_code(label: &str) -> ExitCode {
    match label {
        "yes" => ExitCode::SUCCESS,
        "inconclusive" => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn check(shape: &PastingShape, kind: &CheckKind) -> ExitCode {
    if kind.grid {
        let w = detect_grid(shape);
        let label = if w.is_some() { "yes" } else { "no" };
        emit(json!({ "check": "grid", "verdict": label, "witness": w.as_ref().map(witness_json) }));
        return verdict_code(label);
    }
    let mut adm = Admitter::from_env(false);
    if kind.admittable {
        let v = adm.decompose(shape);
        let label = v.label();
        let cert = match &v {
            Verdict::Yes(d) => json!({ "decomposition": decomposition_json(d), "filtration": filtration_json(&filtration_for(shape, d)) }),
            _ => Value::Null,
        };
        emit(json!({ "check": "admittable", "verdict": label, "certificate": cert, "nodes": adm.nodes_used() }));
        return verdict_code(label);
    }
    let (name, report) = if kind.locally_composable {
        match is_locally_composable_with(shape, &mut adm) {
            Ok(r) => ("locally-composable", r),
            Err(e) => {
                emit(json!({ "check": "locally-composable", "verdict": "no", "reason": e.to_string() }));
                return ExitCode::from(1);
            }
        }
    } else {
        ("composable", is_composable_with(shape, &mut adm))
    };
    let cert = if report.is_yes() && name == "composable" {
        adm.decompose(shape).yes().map(|d| decomposition_json(&d))
    } else {
        None
    };
    emit(json!({
        "check": name,
        "verdict": report.verdict,
        "failing_window": report.failing_window,
        "reason": report.reason,
        "certificate": cert,
    }));
    verdict_code(report.verdict)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Check { file, kind } => Ok(check(&load(&file)?, &kind)),
        Command::Vertebrae { file, k } => {
            let shape = load(&file)?;
            if k > shape.dim() {
                bail!("k = {k} exceeds the dimension {}", shape.dim());
            }
            let vs: Vec<Value> = enumerate_vertebrae(&shape, k)
                .into_iter()
                .map(|(_, w)| json!({ "window": w.window, "closed": w.closed, "open": w.open }))
                .collect();
            emit(json!({ "k": k, "count": vs.len(), "vertebrae": vs }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Nerve { file, level, count: _, list } => {
            let shape = load(&file)?;
            if level.len() != shape.dim() {
                bail!("level has {} entries, shape has dimension {}", level.len(), shape.dim());
            }
            let n = nerve_level(&shape, &level);
            let mut out = json!({ "level": level, "count": n.len(), "nondegenerate": n.nondegenerate_count() });
            if list {
                out["simplices"] = json!(n.simplices.iter().map(|s| &s.maps).collect::<Vec<_>>());
            }
            emit(out);
            Ok(ExitCode::SUCCESS)
        }
        Command::Segal { file, max_level } => {
            let shape = load(&file)?;
            let failures: Vec<Vec<usize>> = levels_up_to(shape.dim(), max_level).into_iter().filter(|l| !segal_check(&shape, l)).collect();
            let ok = failures.is_empty();
            emit(json!({ "max_level": max_level, "verdict": ok, "failing_levels": failures }));
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Cover { file, parts } => {
            let shape = load(&file)?;
            let parts = split_top_level(&parts).into_iter().map(load).collect::<anyhow::Result<Vec<_>>>()?;
            let report = check_covering(&shape, &parts)?;
            let ok = report.verdict;
            emit(json!({ "verdict": ok, "violations": report.violations }));
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::PasteVerify { file } => {
            let report = verify_vertebra_union(&load(&file)?);
            let ok = report.equal;
            emit(json!({ "verdict": ok, "mode": report.mode, "residual": report.residual }));
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Render { file, output } => {
            let svg = render_svg(&load(&file)?)?;
            write_out(output.as_deref(), &svg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Suite { seed, json, skip_slow, fixture_dir, only } => {
            let report = run_suite(&SuiteConfig { seed, skip_slow, fixture_dir, only });
            if json {
                print_text(&format!("{}\n", serde_json::to_string_pretty(&report)?));
            } else {
                for c in &report.checks {
                    let tag = match c.verdict {
                        CheckVerdict::Pass => "PASS",
                        CheckVerdict::Fail => "FAIL",
                        CheckVerdict::Skipped => "SKIP",
                    };
                    print_text(&format!("{tag} {:<28} {:>8} ms  {}\n", c.name, c.elapsed_ms, c.detail));
                }
            }
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Fixture { name, output } => {
            if name == "list" {
                write_out(output.as_deref(), &fixture_names().iter().map(|n| format!("{n}\n")).collect::<String>())?;
                return Ok(ExitCode::SUCCESS);
            }
            let shape = fixture(&name)?;
            write_out(output.as_deref(), &serialize_shape(&shape, Some(&name)))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
