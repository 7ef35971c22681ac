use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rgw_core::certificate::CycleCertificate;
use rgw_core::constructions::{binary_counterexample, circulant_instance, wheel_instance, wheel_minus_class};
use rgw_core::format::{parse_bcm, parse_dg, parse_rcg, write_bcm, write_dot, write_rcg, LoadedGraph};
use rgw_core::graph::{ColouredGraph, Length};
use rgw_core::matroid::{gf2_rank, matroid_validate, min_rainbow_circuit, min_rainbow_cocycle};
use rgw_core::search::{
    shortest_directed_cycle, shortest_pec_cycle, shortest_rainbow_cycle, SearchBudget, SearchOutcome, SearchStatus,
};
use rgw_core::verify::{bs_bound, compute_f, run_suite, Family, LogBase, SuiteParams};

/// Exact rainbow-cycle, directed-cycle and rainbow-circuit tools.
#[derive(Parser)]
#[command(name = "rgw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shortest rainbow, properly edge-coloured or directed cycle.
    Solve {
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Print the outcome as JSON.
        #[arg(long)]
        json: bool,
        /// Instance file (.rcg, or .dg for --kind directed); stdin when absent or `-`.
        file: Option<PathBuf>,
    },
    /// Write one of the extremal constructions.
    Generate {
        #[arg(value_enum)]
        family: Construction,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Rcg)]
        format: OutputFormat,
    },
    /// Coloured binary matroid tools (.bcm), and rainbow cocycles of graphs (.rcg).
    Matroid {
        #[arg(value_enum)]
        action: MatroidAction,
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Per-instance search node limit.
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// Write the report as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Exhaustive maximum rainbow girth over 2t-edge graphs with t pairs.
    Ftable {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the girth bound 2(n+k)/(3k) (log k + log log k + 4).
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Natural logarithms instead of base 2.
        #[arg(long)]
        natural: bool,
    },
}

#[derive(clap::Args)]
struct BudgetArgs {
    /// Only look for cycles or circuits of at most this size.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    budget_nodes: Option<u64>,
    #[arg(long)]
    budget_ms: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_length: self.cap,
            node_limit: self.budget_nodes,
            time_limit: self.budget_ms.map(Duration::from_millis),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Rainbow,
    Pec,
    Directed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Circulant,
    Wheel,
    WheelMinus,
    BinaryCx,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Rcg,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatroidAction {
    Rank,
    Validate,
    MinCircuit,
    MinCocycle,
}

/// Exit status 0 on success, 1 when a suite finds a counterexample, 2 on
/// usage or input errors.
fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve { kind, budget, json, file } => solve(kind, &budget, json, file.as_deref()),
        Command::Generate { family, n, out, format } => generate(family, n, out.as_deref(), format),
        Command::Matroid { action, file, budget, json } => matroid(action, &file, &budget, json),
        Command::Verify { family, n, count, seed, workers, budget_nodes, json } => {
            let family: Family = family.parse()?;
            let params = SuiteParams { n, count, seed, workers, node_limit: budget_nodes };
            verify(family, &params, json.as_deref())
        }
        Command::Ftable { n, t, workers, json } => ftable(n, t, workers, json),
        Command::Bound { n, k, natural } => {
            let base = if natural { LogBase::Natural } else { LogBase::Two };
            println!("{}", bs_bound(n, k, base)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_input(file: Option<&Path>) -> Result<String> {
    match file {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display())),
    }
}

fn read_stdin() -> Result<String> {
    let mut text = String::new();
    std::io::stdin().read_to_string(&mut text).context("cannot read stdin")?;
    Ok(text)
}

fn load_graph(text: &str) -> Result<ColouredGraph> {
    let LoadedGraph { graph, colour_labels } = parse_rcg(text)?;
    if let Some(labels) = colour_labels {
        let mapping: Vec<String> = labels.iter().enumerate().map(|(i, l)| format!("{l}->{i}")).collect();
        eprintln!("note: colour labels re-indexed: {}", mapping.join(" "));
    }
    let report = graph.validate(&Default::default());
    if let Err(e) = graph.ensure_well_formed() {
        bail!("{e}\n{report}");
    }
    if !graph.is_simple() {
        eprintln!("note: instance has parallel edges");
    }
    Ok(graph)
}

fn length_json(length: Option<Length>) -> Value {
    match length {
        Some(Length::Finite(l)) => json!(l),
        Some(Length::Infinite) => json!("inf"),
        None => Value::Null,
    }
}

fn outcome_json<C>(outcome: &SearchOutcome<C>, certificate: Value) -> Value
where
    C: rgw_core::search::Certificate,
{
    json!({
        "status": outcome.status.to_string(),
        "length": length_json(outcome.length()),
        "none_up_to": outcome.none_up_to,
        "explored": outcome.explored,
        "certificate": certificate,
    })
}

fn print_outcome_header<C: rgw_core::search::Certificate>(outcome: &SearchOutcome<C>) {
    println!("status: {}", outcome.status);
    match outcome.length() {
        Some(l) => println!("length: {l}"),
        None => println!("length: unknown (none up to {})", outcome.none_up_to),
    }
    println!("explored: {}", outcome.explored);
}

fn solve(kind: Kind, budget: &BudgetArgs, json: bool, file: Option<&Path>) -> Result<ExitCode> {
    let text = read_input(file)?;
    let budget = budget.budget();
    if let Kind::Directed = kind {
        let d = parse_dg(&text)?;
        let mut outcome = shortest_directed_cycle(&d)?;
        if let (Some(cap), Some(Length::Finite(l))) = (budget.max_length, outcome.length()) {
            if l > cap {
                outcome = SearchOutcome {
                    status: SearchStatus::ProvenAboveCap,
                    certificate: None,
                    explored: outcome.explored,
                    none_up_to: cap,
                };
            }
        }
        let cert = outcome.certificate.as_ref().map(|c| c.to_json_directed(&d));
        if json {
            println!("{}", outcome_json(&outcome, serde_json::to_value(cert)?));
        } else {
            print_outcome_header(&outcome);
            if let Some(c) = cert {
                for (i, arc) in c.edge_indices.iter().zip(&c.edges) {
                    println!("  arc {i}: {} -> {}", arc[0], arc[1]);
                }
            }
        }
        return Ok(ExitCode::SUCCESS);
    }

    let g = load_graph(&text)?;
    let outcome = match kind {
        Kind::Rainbow => shortest_rainbow_cycle(&g, &budget)?,
        _ => shortest_pec_cycle(&g, &budget)?,
    };
    let cert = outcome.certificate.as_ref().map(|c: &CycleCertificate| c.to_json(&g));
    if json {
        println!("{}", outcome_json(&outcome, serde_json::to_value(cert)?));
    } else {
        print_outcome_header(&outcome);
        if let Some(c) = cert {
            for (i, e) in c.edge_indices.iter().zip(&c.edges) {
                println!("  edge {i}: {} {} colour {}", e[0], e[1], e[2]);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn generate(family: Construction, n: usize, out: Option<&Path>, format: OutputFormat) -> Result<ExitCode> {
    let text = match family {
        Construction::BinaryCx => {
            if format == OutputFormat::Dot {
                bail!("binary-cx is a matroid and has no DOT form");
            }
            write_bcm(&binary_counterexample(n)?)
        }
        _ => {
            let g = match family {
                Construction::Circulant => circulant_instance(n)?,
                Construction::Wheel => wheel_instance(n)?,
                _ => wheel_minus_class(n)?,
            };
            match format {
                OutputFormat::Rcg => write_rcg(&g),
                OutputFormat::Dot => write_dot(&g),
            }
        }
    };
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn matroid(action: MatroidAction, file: &Path, budget: &BudgetArgs, json: bool) -> Result<ExitCode> {
    let text = read_input(Some(file))?;
    let budget = budget.budget();
    if let MatroidAction::MinCocycle = action {
        let g = load_graph(&text)?;
        let outcome = min_rainbow_cocycle(&g, &budget)?;
        let cert = outcome.certificate.as_ref().map(|c| {
            let edges: Vec<[usize; 3]> = c
                .edge_indices
                .iter()
                .map(|&i| {
                    let e = g.edge(i);
                    [e.u, e.v, e.colour]
                })
                .collect();
            json!({ "edge_indices": c.edge_indices, "edges": edges, "side": c.side })
        });
        if json {
            println!("{}", outcome_json(&outcome, cert.unwrap_or(Value::Null)));
        } else {
            print_outcome_header(&outcome);
            if let Some(c) = &outcome.certificate {
                println!("side: {:?}", c.side);
                println!("edges: {:?}", c.edge_indices);
            }
        }
        return Ok(ExitCode::SUCCESS);
    }

    let m = parse_bcm(&text)?;
    match action {
        MatroidAction::Rank => {
            let rank = gf2_rank(&m);
            if json {
                println!("{}", json!({ "rank": rank }));
            } else {
                println!("{rank}");
            }
        }
        MatroidAction::Validate => {
            let report = matroid_validate(&m);
            if json {
                println!(
                    "{}",
                    json!({
                        "simple": report.simple,
                        "zero_columns": report.zero_columns,
                        "parallel_pairs": report.parallel_pairs,
                        "class_sizes": report.class_sizes,
                    })
                );
            } else {
                println!("{report}");
            }
        }
        MatroidAction::MinCircuit => {
            let outcome = min_rainbow_circuit(&m, &budget)?;
            let columns = outcome.certificate.as_ref().map(|c| c.column_indices.clone());
            if json {
                println!("{}", outcome_json(&outcome, json!({ "columns": columns })));
            } else {
                print_outcome_header(&outcome);
                if let Some(cols) = columns {
                    println!("columns: {cols:?}");
                }
            }
        }
        MatroidAction::MinCocycle => unreachable!("handled above"),
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(family: Family, params: &SuiteParams, json: Option<&Path>) -> Result<ExitCode> {
    let report = run_suite(family, params)?;
    println!(
        "{}: {} instances, {} failures, {} ms (seed {}, workers {})",
        report.family,
        report.instances,
        report.failures.len(),
        report.elapsed.as_millis(),
        params.seed,
        params.workers
    );
    for f in report.failures.iter().take(5) {
        println!("counterexample at instance {}: {}", f.index, f.reason);
        print!("{}", f.instance);
    }
    if report.failures.len() > 5 {
        println!("... {} more in the JSON report", report.failures.len() - 5);
    }
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(&report.to_json())?;
        std::fs::write(path, text + "\n").with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn ftable(n: usize, t: usize, workers: usize, json: bool) -> Result<ExitCode> {
    let entry = compute_f(n, t, workers).map_err(|e| anyhow!(e))?;
    if json {
        println!(
            "{}",
            json!({
                "n": entry.n,
                "t": entry.t,
                "value": length_json(Some(entry.value)),
                "instances_checked": entry.instances_checked,
                "witness": write_rcg(&entry.witness),
            })
        );
    } else {
        println!("f({n},{t}) = {} over {} instances", entry.value, entry.instances_checked);
        println!("witness:");
        print!("{}", write_rcg(&entry.witness));
    }
    Ok(ExitCode::SUCCESS)
}
