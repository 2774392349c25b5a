use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use ordconflict::constructions::{extremal_complete_graph, ConstructionError};
use ordconflict::formulas::{
    closed_form_value, closed_form_x_cli, closed_form_x_ind, FormulaError, FormulaResult, FormulaValue, Quantity,
};
use ordconflict::io::{read_graph, read_spec, write_text, GraphDoc, IoError};
use ordconflict::params::{compute, ParamError, Parameter};
use ordconflict::solvers::{chromatic_number, clique_number, independence_number};
use ordconflict::transforms::classify_matrix;
use ordconflict::verify::{run_suite, summarize, SuiteOptions, VerifyError, VerifyReport, Status, SUITES};
use ordconflict::{build_conflict_graph, ModelError, SolveBudget, SolveError};

#[derive(Parser)]
#[command(name = "ordconflict", version, about = "Conflict graphs of ordered graphs")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    output: Output,
    #[arg(long, default_value_t = 42, global = true)]
    seed: u64,
    /// Search-node limit per solver call.
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    /// Time limit per solver call, in milliseconds.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// List the conflicting edge pairs of a graph.
    Conflict {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        spec: PathBuf,
    },
    /// Solve alpha, omega or chi of the conflict graph, or chi of the graph itself.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, value_enum)]
        what: SolveWhat,
    },
    /// Evaluate a closed form.
    Formula {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum)]
        what: FormulaWhat,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        w: Option<u64>,
    },
    /// Classify the matrix of a spec.
    Classify {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Build the extremal complete ordered graph.
    Construct {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum)]
        side: Side,
        /// Write the graph here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a layout parameter of the underlying graph.
    Param {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = parse_param)]
        what: Parameter,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = SUITES)]
        suite: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range::<i64>)]
        p_range: Option<(i64, i64)>,
        #[arg(long, value_parser = parse_range::<u64>)]
        k_range: Option<(u64, u64)>,
        /// Graphs per random-corpus claim.
        #[arg(long)]
        count: Option<usize>,
        /// Write JSON-lines reports here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveWhat {
    Alpha,
    Omega,
    Chi,
    ChiUnderlying,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaWhat {
    #[value(name = "A")]
    A,
    #[value(name = "W")]
    W,
    #[value(name = "Xind")]
    Xind,
    #[value(name = "Xcli")]
    Xcli,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    #[value(name = "A")]
    A,
    #[value(name = "W")]
    W,
}

fn parse_param(s: &str) -> Result<Parameter, String> {
    Parameter::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
        let names: Vec<&str> = Parameter::ALL.iter().map(|p| p.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn parse_range<T: std::str::FromStr + PartialOrd>(s: &str) -> Result<(T, T), String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<T>().map_err(|_| format!("bad bound {x:?}"));
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        let budget = |e: &SolveError| matches!(e, SolveError::BudgetExceeded { .. });
        match self {
            CliError::Solve(e) if budget(e) => 1,
            CliError::Param(ParamError::Solve(e)) if budget(e) => 1,
            CliError::Construction(ConstructionError::Solve(e)) if budget(e) => 1,
            CliError::Verify(VerifyError::Solve(e)) if budget(e) => 1,
            CliError::Verify(VerifyError::Construction(ConstructionError::Solve(e))) if budget(e) => 1,
            _ => 2,
        }
    }

    fn to_json(&self) -> Value {
        let solve = match self {
            CliError::Solve(e) => Some(e),
            CliError::Param(ParamError::Solve(e)) => Some(e),
            CliError::Construction(ConstructionError::Solve(e)) => Some(e),
            CliError::Verify(VerifyError::Solve(e)) => Some(e),
            _ => None,
        };
        match solve {
            Some(SolveError::BudgetExceeded { lower, upper }) => {
                json!({ "error": "budget-exceeded", "message": self.to_string(), "lower": lower, "upper": upper })
            }
            _ => json!({ "error": "invalid-input", "message": self.to_string() }),
        }
    }
}

/// What a command prints: a JSON document and its text rendering.
struct Outcome {
    doc: Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(doc: Value, text: String) -> Self {
        Outcome { doc, text, code: 0 }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("output serializes")
}

fn budget(cli: &Cli) -> SolveBudget {
    let mut b = SolveBudget::default();
    if let Some(n) = cli.budget_nodes {
        b.node_limit = Some(n);
    }
    if let Some(ms) = cli.budget_ms {
        b.time_limit = Some(Duration::from_millis(ms));
    }
    b
}

fn value_text(v: &FormulaValue) -> String {
    match v {
        FormulaValue::Exact { value } => value.to_string(),
        FormulaValue::Bounds { lower, upper } => format!("in [{lower}, {upper}]"),
        FormulaValue::Infinite => "infinite".into(),
        FormulaValue::Unknown => "unknown".into(),
    }
}

fn formula_outcome(r: FormulaResult) -> Outcome {
    let text = format!("{} ({})", value_text(&r.value), r.provenance);
    Outcome::ok(to_value(&r), text)
}

fn need(x: Option<u64>, flag: &str) -> Result<u64, CliError> {
    x.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this quantity")))
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let b = budget(cli);
    match &cli.command {
        Command::Conflict { graph, spec } => {
            let g = read_graph(graph)?;
            let s = read_spec(spec)?;
            let cg = build_conflict_graph(&g, &s)?;
            let pairs = cg.conflict_pairs();
            let nodes: Vec<[i64; 2]> = cg.nodes().iter().map(|e| [e.u, e.v]).collect();
            let mut text = format!("{} edges, {} conflict pairs\n", cg.len(), pairs.len());
            for &(i, j) in &pairs {
                text.push_str(&format!("{} -- {}\n", cg.nodes()[i], cg.nodes()[j]));
            }
            let doc = json!({ "nodes": nodes, "conflicts": pairs });
            Ok(Outcome::ok(doc, text.trim_end().to_string()))
        }
        Command::Solve { graph, spec, what } => {
            let g = read_graph(graph)?;
            let value = if let SolveWhat::ChiUnderlying = what {
                if g.size() == 0 {
                    return Err(ModelError::NoEdges.into());
                }
                chromatic_number(&g.underlying(), b)?
            } else {
                let spec = spec
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("--spec is required".into()))?;
                let cg = build_conflict_graph(&g, &read_spec(spec)?)?;
                match what {
                    SolveWhat::Alpha => independence_number(cg.graph(), b)?,
                    SolveWhat::Omega => clique_number(cg.graph(), b)?,
                    _ => chromatic_number(cg.graph(), b)?,
                }
            };
            Ok(Outcome::ok(json!(value), value.to_string()))
        }
        Command::Formula { spec, what, k, a, w } => {
            let s = read_spec(spec)?;
            let r = match what {
                FormulaWhat::A => closed_form_value(&s, need(*k, "k")?, Quantity::A)?,
                FormulaWhat::W => closed_form_value(&s, need(*k, "k")?, Quantity::W)?,
                FormulaWhat::Xind => closed_form_x_ind(&s, need(*a, "a")?)?,
                FormulaWhat::Xcli => closed_form_x_cli(&s, need(*w, "w")?)?,
            };
            Ok(formula_outcome(r))
        }
        Command::Classify { spec } => {
            let s = read_spec(spec)?;
            let c = classify_matrix(&s.matrix);
            let doc = to_value(&c);
            let text = format!(
                "{} via {:?} (representative {:?})",
                doc["tag"].as_str().unwrap_or("?"),
                c.trace,
                c.representative
            );
            Ok(Outcome::ok(doc, text))
        }
        Command::Construct { spec, k, side, out } => {
            let s = read_spec(spec)?;
            let q = match side {
                Side::A => Quantity::A,
                Side::W => Quantity::W,
            };
            let g = extremal_complete_graph(&s, *k, q)?;
            let doc = to_value(&GraphDoc::from(&g));
            if let Some(path) = out {
                write_text(path, &format!("{doc}\n"))?;
                let note = json!({ "written": path.display().to_string(), "vertices": g.order() });
                let text = format!("wrote {} vertices to {}", g.order(), path.display());
                return Ok(Outcome::ok(note, text));
            }
            let text = doc.to_string();
            Ok(Outcome::ok(doc, text))
        }
        Command::Param { graph, what } => {
            let g = read_graph(graph)?;
            let v = compute(*what, &g, b)?;
            Ok(Outcome::ok(json!(v), format!("{}: {v}", what.name())))
        }
        Command::Verify {
            suite,
            p_range,
            k_range,
            count,
            out,
        } => {
            let mut opts = SuiteOptions {
                seed: cli.seed,
                budget: b,
                ..SuiteOptions::default()
            };
            if let Some(r) = p_range {
                opts.p_range = *r;
            }
            if let Some(r) = k_range {
                opts.k_range = *r;
            }
            if let Some(c) = count {
                opts.random_count = *c;
            }
            let reports = run_suite(suite, &opts)?;
            verify_outcome(suite, &reports, out.as_deref())
        }
    }
}

fn verify_outcome(suite: &str, reports: &[VerifyReport], out: Option<&Path>) -> Result<Outcome, CliError> {
    let summary = summarize(suite, reports);
    let mut doc = to_value(&summary);
    if let Some(path) = out {
        let lines: String = reports.iter().map(|r| r.to_json_line() + "\n").collect();
        write_text(path, &lines)?;
        doc["out"] = json!(path.display().to_string());
    } else {
        doc["reports"] = to_value(&reports);
    }
    let mut text = String::new();
    for r in reports {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Partial => "partial",
        };
        text.push_str(&format!("{status:<8} {} ({} instances, {} ms)\n", r.claim_id, r.instances, r.runtime_ms));
        if r.status == Status::Fail {
            if let Some(w) = &r.witness {
                text.push_str(&format!("         witness: {w}\n"));
            }
        }
    }
    text.push_str(&format!(
        "{}: {} claims, {} pass, {} partial, {} fail",
        summary.suite, summary.total, summary.pass, summary.partial, summary.fail
    ));
    Ok(Outcome {
        doc,
        text,
        code: u8::from(summary.fail > 0),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            match cli.output {
                Output::Json => println!("{}", o.doc),
                Output::Text => println!("{}", o.text),
            }
            ExitCode::from(o.code)
        }
        Err(e) => {
            if cli.output == Output::Json {
                println!("{}", e.to_json());
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
