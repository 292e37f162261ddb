use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fraclag::experiments::{self, Command, Fault, RunConfig, EXIT_NUMERICAL, EXIT_VALIDATION};
use fraclag::special::test_functions::TestFunctionId;

#[derive(Parser)]
#[command(name = "fraclag", version, about = "Fractional Laguerre experiments; CSV on stdout or --out")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Quadrature node distributions across parameter sweeps.
    Nodes(Opts),
    /// Projection and interpolation error curves, fractional family.
    ProjFrac(Opts),
    /// Projection and interpolation error curves, generalized family.
    ProjGen(Opts),
    /// Convergence-rate fits against predicted Sobolev rates.
    Rates(Opts),
    /// Run the invariant suite; exit 3 if any check fails.
    Verify(Opts),
}

#[derive(Args)]
struct Opts {
    #[arg(long, value_parser = reals)]
    theta: Option<Reals>,
    #[arg(long, value_parser = reals)]
    sigma: Option<Reals>,
    #[arg(long, value_parser = reals)]
    beta: Option<Reals>,
    #[arg(long, value_parser = reals)]
    gamma: Option<Reals>,
    /// Fractional scale of the target functions.
    #[arg(long, value_parser = reals)]
    scale: Option<Reals>,
    #[arg(long)]
    m_min: Option<usize>,
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long)]
    m_step: Option<usize>,
    /// Minimum size of the error quadrature (raised to 4M+64 when smaller).
    #[arg(long)]
    oversample: Option<usize>,
    /// Comma-separated test functions, e.g. u1_sin,h2.
    #[arg(long, value_parser = functions)]
    function: Option<Functions>,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (does not affect output).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, hide = true, value_parser = ["weight-sign"])]
    inject_fault: Option<String>,
}

// newtypes so clap parses a whole comma list as one value instead of repeated flags
#[derive(Clone)]
struct Reals(Vec<f64>);

#[derive(Clone)]
struct Functions(Vec<TestFunctionId>);

fn reals(s: &str) -> Result<Reals, String> {
    experiments::parse_real_list(s).map(Reals).map_err(|e| e.to_string())
}

fn functions(s: &str) -> Result<Functions, String> {
    s.split(',').map(|t| t.trim().parse::<TestFunctionId>()).collect::<Result<_, _>>().map(Functions).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_VALIDATION as u8 } else { 0 });
        }
    };
    let (command, opts) = match cli.command {
        Cmd::Nodes(o) => (Command::Nodes, o),
        Cmd::ProjFrac(o) => (Command::ProjFrac, o),
        Cmd::ProjGen(o) => (Command::ProjGen, o),
        Cmd::Rates(o) => (Command::Rates, o),
        Cmd::Verify(o) => (Command::Verify, o),
    };
    if let Some(n) = opts.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("fraclag: {e}");
            return ExitCode::from(EXIT_VALIDATION as u8);
        }
    }
    let config = RunConfig {
        theta: opts.theta.map(|r| r.0),
        sigma: opts.sigma.map(|r| r.0),
        beta: opts.beta.map(|r| r.0),
        gamma: opts.gamma.map(|r| r.0),
        scale: opts.scale.map(|r| r.0),
        m_min: opts.m_min,
        m_max: opts.m_max,
        m_step: opts.m_step,
        oversample: opts.oversample,
        function: opts.function.map(|f| f.0),
        fault: opts.inject_fault.map(|_| Fault::WeightSign),
        ..RunConfig::new(command)
    };
    let output = match experiments::run(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("fraclag: {e}");
            return ExitCode::from(experiments::exit_code_for(&e) as u8);
        }
    };
    let csv = output.table.to_csv(&config);
    let written = match &opts.out {
        Some(path) => std::fs::write(path, &csv),
        None => std::io::stdout().lock().write_all(csv.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("fraclag: cannot write output: {e}");
        return ExitCode::from(EXIT_NUMERICAL as u8);
    }
    ExitCode::from(output.exit_code() as u8)
}
