//! Command-line front end: model checking, bounded-response checks,
//! random simulation, state-space statistics, and trace replay.

mod trace;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use crosslight_core::checker::{build_graph, effective_state_cap, parse_formula, CheckOptions, Ltl};
use crosslight_core::{
    check_bounded_response, check_property_catalog, model_check_ltl, parse_scenario,
    CatalogProperty, CheckReport, Configuration, Params, Verdict,
};

const EXIT_HOLDS: u8 = 0;
const EXIT_VIOLATED: u8 = 1;
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "crosslight", version, about = "Verify and simulate intersection controllers")]
struct Cli {
    /// Number of worker threads for state-space exploration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ScenarioArg {
    /// Scenario file (line-oriented `key = value`).
    #[arg(long)]
    scenario: PathBuf,

    /// Cap on the number of explored states.
    #[arg(long)]
    state_cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Model-check an LTL property over all behaviors of a scenario.
    Mc {
        #[command(flatten)]
        scenario: ScenarioArg,
        /// A named catalog property: P1, P2, P3, P4, P4x, or P5(<tau>).
        #[arg(long, conflicts_with = "formula")]
        property: Option<String>,
        /// An LTL formula in the text syntax.
        #[arg(long)]
        formula: Option<String>,
        /// Write the counterexample trace here on violation.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Check a bounded response: p must be answered by q within tau.
    Br {
        #[command(flatten)]
        scenario: ScenarioArg,
        /// The response formula `p => q` where p and q are propositions;
        /// defaults to `pedArriving(NS) => walking(NS)`.
        #[arg(long)]
        formula: Option<String>,
        /// The time bound.
        #[arg(long)]
        tau: u64,
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Run one pseudo-random execution and print or save its trace.
    Simulate {
        #[command(flatten)]
        scenario: ScenarioArg,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Explore the full reachable state space and report its size.
    Stats {
        #[command(flatten)]
        scenario: ScenarioArg,
    },
    /// Re-execute a saved trace and fail on any divergence.
    Replay {
        #[command(flatten)]
        scenario: ScenarioArg,
        /// The trace file to re-execute.
        #[arg(long)]
        replay: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            println!("VERDICT=error STATES=0");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn load_scenario(arg: &ScenarioArg) -> Result<(Configuration, Params, CheckOptions)> {
    let text = std::fs::read_to_string(&arg.scenario)
        .with_context(|| format!("reading scenario {}", arg.scenario.display()))?;
    let spec = parse_scenario(&text)?;
    let init = crosslight_core::scenarios::build_init(&spec)?;
    let opts = CheckOptions { state_cap: arg.state_cap };
    Ok((init, spec.params, opts))
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Mc { scenario, property, formula, trace_out } => {
            let (init, params, opts) = load_scenario(&scenario)?;
            let started = Instant::now();
            let report = match (&property, &formula) {
                (Some(name), None) => {
                    let prop: CatalogProperty =
                        name.parse().map_err(|e: String| anyhow!(e))?;
                    check_property_catalog(&init, &params, prop, &opts)?
                }
                (None, Some(text)) => {
                    let xing = init
                        .intersection_name()
                        .ok_or_else(|| anyhow!("scenario has no intersection"))?;
                    let f = parse_formula(text, &xing)?;
                    model_check_ltl(&init, &params, &f, &opts)?
                }
                _ => bail!("pass exactly one of --property or --formula"),
            };
            report_verdict(
                &report,
                property.as_deref().or(formula.as_deref()).unwrap_or(""),
                started,
                trace_out.as_deref(),
            )
        }
        Command::Br { scenario, formula, tau, trace_out } => {
            let (init, params, opts) = load_scenario(&scenario)?;
            let xing = init
                .intersection_name()
                .ok_or_else(|| anyhow!("scenario has no intersection"))?;
            let (p, q) = match &formula {
                None => crosslight_core::checker::catalog::p5_props(&xing),
                Some(text) => {
                    let f = parse_formula(text, &xing)?;
                    match f {
                        Ltl::Leadsto(a, b) => match (*a, *b) {
                            (Ltl::Prop(p), Ltl::Prop(q)) => (p, q),
                            _ => bail!("bounded response needs `p => q` with atomic p and q"),
                        },
                        _ => bail!("bounded response needs a formula of the form `p => q`"),
                    }
                }
            };
            let started = Instant::now();
            let report = check_bounded_response(&init, &params, &p, &q, tau, &opts)?;
            report_verdict(&report, &format!("{p} => <={tau} {q}"), started, trace_out.as_deref())
        }
        Command::Simulate { scenario, steps, seed, trace_out } => {
            let (init, params, _) = load_scenario(&scenario)?;
            if steps == 0 {
                bail!("--steps must be at least 1");
            }
            let run = crosslight_core::sim::simulate(&init, &params, steps, seed);
            let mut text = String::new();
            let mut current = init.clone().normalized();
            for s in &run {
                text.push_str(&trace::render_step(s.time, &s.label, &current, &s.state));
                text.push('\n');
                current = s.state.clone();
            }
            match trace_out {
                Some(path) => {
                    std::fs::write(&path, &text)
                        .with_context(|| format!("writing {}", path.display()))?;
                    println!("wrote {} steps to {}", run.len(), path.display());
                }
                None => print!("{text}"),
            }
            Ok(EXIT_HOLDS)
        }
        Command::Stats { scenario } => {
            let (init, params, opts) = load_scenario(&scenario)?;
            let started = Instant::now();
            let graph = build_graph(&init, &params, effective_state_cap(opts.state_cap))?;
            let transitions: usize = graph.edges.iter().map(Vec::len).sum();
            let max_branching = graph.edges.iter().map(Vec::len).max().unwrap_or(0);
            println!(
                "states={} transitions={transitions} max_branching={max_branching} elapsed={:?}",
                graph.len(),
                started.elapsed()
            );
            println!("VERDICT=holds STATES={}", graph.len());
            Ok(EXIT_HOLDS)
        }
        Command::Replay { scenario, replay } => {
            let (init, params, _) = load_scenario(&scenario)?;
            let text = trace::read_trace(&replay)?;
            let steps = trace::replay(&init, &params, &text)?;
            println!("replayed {steps} steps without divergence");
            Ok(EXIT_HOLDS)
        }
    }
}

fn report_verdict(
    report: &CheckReport,
    what: &str,
    started: Instant,
    trace_out: Option<&Path>,
) -> Result<u8> {
    match &report.verdict {
        Verdict::Holds => {
            println!("{what}: holds ({:?})", started.elapsed());
            println!("VERDICT=holds STATES={}", report.states);
            Ok(EXIT_HOLDS)
        }
        Verdict::Violated { initial, prefix, cycle } => {
            println!(
                "{what}: violated, counterexample with prefix {} and cycle {} ({:?})",
                prefix.len(),
                cycle.len(),
                started.elapsed()
            );
            let text = trace::render_lasso(initial, prefix, cycle);
            match trace_out {
                Some(path) => {
                    std::fs::write(path, &text)
                        .with_context(|| format!("writing {}", path.display()))?;
                    println!("counterexample written to {}", path.display());
                }
                None => print!("{text}"),
            }
            println!("VERDICT=violated STATES={}", report.states);
            Ok(EXIT_VIOLATED)
        }
    }
}
