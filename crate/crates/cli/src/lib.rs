//! The `proofdiag` command line: each subcommand reads its inputs, calls one
//! kernel operation and reports a JSON result.
//!
//! Exit status: 0 success, 1 negative verdict, 2 input error, 3 budget
//! exhausted.

mod dot;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use proofdiag::json::{diagram_from_json, diagram_to_value};
use proofdiag::logic::{check_correct, check_derivation, compile, end_sequent, parse_derivation, sequentialize, Mode};
use proofdiag::polygraph::{
    cut_eliminate, diagram_formulas, instantiate_closed, normalize, twist_equivalent, Equivalence,
    NormalizeOutcome, PolygraphName, Strategy,
};
use proofdiag::{canonical_perm_diagram, Diagram, Formula, GateKind, Label, Permutation};
use serde_json::{json, Value};

pub use dot::export_dot;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "proofdiag", version, about = "Proof diagrams for multiplicative linear logic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Rewrite steps allowed (equivalence search: diagrams expanded)
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Output format for commands that produce a diagram
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the rewrite trace as JSON to this file
    #[arg(long, global = true)]
    pub trace: Option<PathBuf>,
    /// Seed for a random rewriting strategy (default: leftmost-innermost)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Plain,
    Control,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a diagram is a correct control diagram
    Check { file: PathBuf },
    /// Compile an s-expression derivation to a diagram
    Compile {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Control)]
        mode: ModeArg,
    },
    /// Recover a derivation from a correct control diagram
    Sequentialize { file: PathBuf },
    /// Eliminate the cuts of a plain diagram
    Cutelim { file: PathBuf },
    /// Rewrite a diagram to normal form
    Normalize {
        file: PathBuf,
        /// S, MLL, MLLc, ctrlMLL or ctrlMLLc
        #[arg(long, default_value = "MLLc")]
        polygraph: String,
    },
    /// Decide whether two diagrams are related by the twisting rules
    Equiv {
        first: PathBuf,
        second: PathBuf,
        /// Defaults to S for swap-only diagrams, ctrlMLLc with control
        /// labels, MLLc otherwise
        #[arg(long)]
        polygraph: Option<String>,
    },
    /// Print the canonical diagram of a permutation such as "perm(3 1 2)"
    Permcanon {
        perm: String,
        /// Wire labels, one formula per position (default x1, x2, ...)
        labels: Vec<String>,
    },
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Report {
    fn value(code: i32, v: Value) -> Report {
        Report { code, stdout: format!("{v}\n"), stderr: String::new() }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_diagram(path: &Path) -> Result<Diagram> {
    diagram_from_json(&read(path)?).with_context(|| format!("{} is not a diagram", path.display()))
}

fn polygraph_name(text: &str) -> Result<PolygraphName> {
    text.parse().map_err(|e| anyhow::anyhow!("{e}"))
}

fn diagram_report(cli: &Cli, code: i32, d: &Diagram, extra: Value) -> Report {
    match cli.format {
        Format::Dot => Report { code, stdout: export_dot(d), stderr: String::new() },
        Format::Json => {
            let mut v = extra;
            v["diagram"] = diagram_to_value(d);
            Report::value(code, v)
        }
    }
}

fn write_trace(cli: &Cli, out: &NormalizeOutcome) -> Result<()> {
    if let Some(path) = &cli.trace {
        let text = serde_json::to_string(&out.trace)?;
        fs::write(path, text + "\n").with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn rewrite_report(cli: &Cli, out: &NormalizeOutcome, cut_free: Option<bool>) -> Result<Report> {
    write_trace(cli, out)?;
    let mut extra = json!({ "steps": out.trace.len(), "exhausted": out.exhausted });
    if let Some(c) = cut_free {
        extra["cut_free"] = json!(c);
    }
    let code = if out.exhausted { EXIT_BUDGET } else { EXIT_OK };
    let mut r = diagram_report(cli, code, &out.diagram, extra);
    if out.exhausted {
        r.stderr = format!("budget of {} steps exhausted\n", cli.budget);
    }
    Ok(r)
}

fn default_equiv_polygraph(a: &Diagram, b: &Diagram) -> PolygraphName {
    let swaps_only = |d: &Diagram| d.gate_count(None) == d.gate_count(Some(&[GateKind::Swap]));
    let control = |d: &Diagram| d.input().iter().chain(d.output().iter()).any(Label::is_control)
        || d.gates().any(|g| matches!(g.gate.kind, GateKind::AxC | GateKind::CutC | GateKind::TensorC | GateKind::OneC));
    if swaps_only(a) && swaps_only(b) {
        PolygraphName::S
    } else if control(a) || control(b) {
        PolygraphName::CtrlMllc
    } else {
        PolygraphName::Mllc
    }
}

fn execute(cli: &Cli) -> Result<Report> {
    let budget = usize::try_from(cli.budget).unwrap_or(usize::MAX);
    Ok(match &cli.command {
        Command::Check { file } => {
            let d = load_diagram(file)?;
            if check_correct(&d) {
                Report::value(EXIT_OK, json!({ "correct": true, "sequent": end_sequent(&d)?.to_string() }))
            } else {
                Report::value(EXIT_NEGATIVE, json!({ "correct": false }))
            }
        }
        Command::Compile { file, mode } => {
            let der = parse_derivation(&read(file)?).with_context(|| format!("{} is not a derivation", file.display()))?;
            let mode = match mode {
                ModeArg::Plain => Mode::Plain,
                ModeArg::Control => Mode::Control,
            };
            let d = compile(&der, mode)?;
            match cli.format {
                Format::Json => Report::value(EXIT_OK, diagram_to_value(&d)),
                Format::Dot => Report { code: EXIT_OK, stdout: export_dot(&d), stderr: String::new() },
            }
        }
        Command::Sequentialize { file } => {
            let d = load_diagram(file)?;
            if !check_correct(&d) {
                return Ok(Report::value(EXIT_NEGATIVE, json!({ "correct": false })));
            }
            let der = sequentialize(&d)?;
            let report = check_derivation(&der)?;
            Report::value(EXIT_OK, json!({ "derivation": der.to_string(), "sequent": report.sequent.to_string() }))
        }
        Command::Cutelim { file } => {
            let d = load_diagram(file)?;
            let p = instantiate_closed(PolygraphName::Mllc, &diagram_formulas(&d));
            p.check_diagram(&d)?;
            let out = cut_eliminate(&d, &p, budget)?;
            let cut_free = out.diagram.gate_count(Some(&[GateKind::Cut])) == 0;
            rewrite_report(cli, &out, Some(cut_free))?
        }
        Command::Normalize { file, polygraph } => {
            let d = load_diagram(file)?;
            let p = instantiate_closed(polygraph_name(polygraph)?, &diagram_formulas(&d));
            p.check_diagram(&d)?;
            let strategy = cli.seed.map_or(Strategy::LeftmostInnermost, Strategy::Random);
            let out = normalize(&d, &p, budget, strategy)?;
            rewrite_report(cli, &out, None)?
        }
        Command::Equiv { first, second, polygraph } => {
            let (a, b) = (load_diagram(first)?, load_diagram(second)?);
            let name = match polygraph {
                Some(text) => polygraph_name(text)?,
                None => default_equiv_polygraph(&a, &b),
            };
            let mut seeds = diagram_formulas(&a);
            seeds.extend(diagram_formulas(&b));
            let p = instantiate_closed(name, &seeds);
            p.check_diagram(&a)?;
            p.check_diagram(&b)?;
            let verdict = twist_equivalent(&a, &b, &p, budget)?;
            let code = match verdict {
                Equivalence::Yes => EXIT_OK,
                Equivalence::No => EXIT_NEGATIVE,
                Equivalence::Unknown => EXIT_BUDGET,
            };
            Report::value(code, json!({ "equivalent": verdict }))
        }
        Command::Permcanon { perm, labels } => {
            let sigma: Permutation = perm.parse()?;
            let word: Vec<Label> = if labels.is_empty() {
                (1..=sigma.len()).map(|i| Label::Logical(Formula::atom(&format!("x{i}")))).collect()
            } else {
                labels.iter().map(|t| Ok(Label::Logical(t.parse::<Formula>()?))).collect::<Result<_>>()?
            };
            if word.len() != sigma.len() {
                bail!("{} labels for a permutation of {} elements", word.len(), sigma.len());
            }
            let d = canonical_perm_diagram(&sigma, &word)?;
            match cli.format {
                Format::Json => Report::value(EXIT_OK, diagram_to_value(&d)),
                Format::Dot => Report { code: EXIT_OK, stdout: export_dot(&d), stderr: String::new() },
            }
        }
    })
}

/// Runs one command. Input problems are reported on the error stream with
/// exit status 2.
pub fn run(cli: &Cli) -> Report {
    execute(cli).unwrap_or_else(|e| Report { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {e:#}\n") })
}
