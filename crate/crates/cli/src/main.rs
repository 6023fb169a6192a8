use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use inets_core::confluence::{confluence_probe, standard_strategies, RunSummary};
use inets_core::expand::DEFAULT_ARITY_CAP;
use inets_core::syntax::{parse_program, render_configuration, render_rules, render_trace, NameTable, TraceFormat};
use inets_core::{compile, normalize, Compiled, Diagnostic, Options, Status, Strategy};

const EXIT_INVALID: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_STUCK: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_DIVERGENT: u8 = 5;

#[derive(Parser)]
#[command(
    name = "inets",
    version,
    about = "Check and run interaction-net programs with generic and variadic rules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a program.
    Check(Common),
    /// Reduce the program's net and print the result.
    Run(RunArgs),
    /// Like run, printing every step.
    Trace(TraceArgs),
    /// Print the rule set with variadic rules expanded.
    Expand(Common),
    /// Reduce the net under many strategies and compare the results.
    Fuzz(FuzzArgs),
}

#[derive(Args)]
struct Common {
    path: PathBuf,
    /// Largest arity variadic rules are expanded to.
    #[arg(long, default_value_t = DEFAULT_ARITY_CAP)]
    max_arity: usize,
    /// Skip the ambiguity and generic-overlap checks.
    #[arg(long)]
    unchecked: bool,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 100_000)]
    max_steps: usize,
    /// fifo, lifo or seed:N
    #[arg(long, default_value_t = Strategy::Fifo)]
    strategy: Strategy,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    run: RunArgs,
    /// One JSON object per step.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FuzzArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 100_000)]
    max_steps: usize,
    /// Number of seeded strategies, run in addition to fifo and lifo.
    #[arg(long, default_value_t = 200)]
    seeds: usize,
}

fn report(path: &Path, diags: &[Diagnostic]) {
    for d in diags {
        eprintln!("{}: {d}", path.display());
    }
}

fn load(common: &Common) -> Result<Compiled, ExitCode> {
    let src = std::fs::read_to_string(&common.path).map_err(|e| {
        eprintln!("{}: {e}", common.path.display());
        ExitCode::from(EXIT_INPUT)
    })?;
    let program = parse_program(&src).map_err(|diags| {
        report(&common.path, &diags);
        ExitCode::from(EXIT_INPUT)
    })?;
    let options = Options {
        arity_cap: common.max_arity,
        checked: !common.unchecked,
    };
    let compiled = compile(program, options).map_err(|diags| {
        report(&common.path, &diags);
        ExitCode::from(EXIT_INVALID)
    })?;
    report(&common.path, &compiled.warnings);
    Ok(compiled)
}

fn net_of(compiled: &Compiled, path: &Path) -> Result<inets_core::Configuration, ExitCode> {
    compiled.program.net.clone().ok_or_else(|| {
        eprintln!("{}: the program has no net", path.display());
        ExitCode::from(EXIT_INPUT)
    })
}

fn status_code(status: &Status, max_steps: usize) -> ExitCode {
    match status {
        Status::NormalForm => ExitCode::SUCCESS,
        Status::Stuck(eqs) => {
            let mut names = NameTable::new();
            let list: Vec<String> = eqs
                .iter()
                .map(|e| inets_core::syntax::render_equation_with(e, &mut names))
                .collect();
            eprintln!("stuck: {}", list.join(", "));
            ExitCode::from(EXIT_STUCK)
        }
        Status::BudgetExhausted => {
            eprintln!("budget of {max_steps} steps exhausted");
            ExitCode::from(EXIT_BUDGET)
        }
    }
}

fn run(args: &RunArgs, trace: Option<TraceFormat>) -> Result<ExitCode, ExitCode> {
    let compiled = load(&args.common)?;
    let net = net_of(&compiled, &args.common.path)?;
    let out = normalize(&net, &compiled.table, args.strategy, args.max_steps, trace.is_some()).map_err(|e| {
        eprintln!("{}: {e}", args.common.path.display());
        ExitCode::FAILURE
    })?;
    match trace {
        Some(format) => {
            print!("{}", render_trace(out.trace.as_deref().unwrap_or_default(), format));
            if format == TraceFormat::Text {
                println!("{}", render_configuration(&out.final_config));
            }
        }
        None => println!("{}", render_configuration(&out.final_config)),
    }
    Ok(status_code(&out.status, args.max_steps))
}

fn describe(run: &RunSummary) -> String {
    format!(
        "{} ({}, {} steps): {}",
        run.strategy,
        run.status.as_str(),
        run.steps,
        run.canonical
    )
}

fn fuzz(args: &FuzzArgs) -> Result<ExitCode, ExitCode> {
    let compiled = load(&args.common)?;
    let net = net_of(&compiled, &args.common.path)?;
    let strategies = standard_strategies(args.seeds);
    let report = confluence_probe(&net, &compiled.table, &strategies, args.max_steps).map_err(|e| {
        eprintln!("{}: {e}", args.common.path.display());
        ExitCode::FAILURE
    })?;
    if let Some(cx) = &report.counterexample {
        println!("divergence between strategies");
        for (run, trace) in [(&cx.first, &cx.first_trace), (&cx.second, &cx.second_trace)] {
            println!("== {}", describe(run));
            print!("{}", render_trace(trace, TraceFormat::Text));
        }
        return Ok(ExitCode::from(EXIT_DIVERGENT));
    }
    let Some(first) = report.runs.iter().find(|r| r.terminated()) else {
        println!(
            "no run finished within {} steps ({} runs)",
            args.max_steps,
            report.runs.len()
        );
        return Ok(ExitCode::from(EXIT_BUDGET));
    };
    println!(
        "consistent: {} of {} runs finished, {}, {} steps: {}",
        report.terminated(),
        report.runs.len(),
        first.status.as_str(),
        first.steps,
        first.canonical
    );
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(common) => load(common).map(|_| ExitCode::SUCCESS),
        Command::Run(args) => run(args, None),
        Command::Trace(args) => {
            let format = if args.json {
                TraceFormat::JsonLines
            } else {
                TraceFormat::Text
            };
            run(&args.run, Some(format))
        }
        Command::Expand(common) => load(common).map(|c| {
            print!("{}", render_rules(&c.expanded));
            ExitCode::SUCCESS
        }),
        Command::Fuzz(args) => fuzz(args),
    };
    result.unwrap_or_else(|code| code)
}
