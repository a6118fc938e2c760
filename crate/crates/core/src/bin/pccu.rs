use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pccu_core::driver::{run_and_write, run_convergence, write_convergence_csv};
use pccu_core::io::{parse_config, ConfigOverrides};
use pccu_core::problems::{make_problem, PROBLEM_NAMES};
use pccu_core::{Result, SolverError};

/// Path-conservative central-upwind solver for ideal and shallow-water MHD.
#[derive(Parser)]
#[command(name = "pccu", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one benchmark and write snapshots and a diagnostics log.
    Run(RunArgs),
    /// Self-convergence study on doubling square grids.
    Convergence(ConvergenceArgs),
    /// Print the preset names.
    ListProblems,
}

#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` configuration file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    t_final: Option<f64>,
    /// Comma-separated output times.
    #[arg(long)]
    snapshot_times: Option<String>,
    #[arg(long, short)]
    output_dir: Option<PathBuf>,
    /// Steps between diagnostics samples.
    #[arg(long)]
    diag_interval: Option<usize>,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[arg(long)]
    problem: String,
    /// Comma-separated doubling resolutions.
    #[arg(long, default_value = "50,100,200")]
    grids: String,
    #[arg(long, default_value_t = 0.1)]
    t_final: f64,
    /// Component index (0 is density or thickness).
    #[arg(long, default_value_t = 0)]
    component: usize,
    /// Output CSV; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn run_command(args: RunArgs) -> Result<()> {
    let file = args.config.as_deref().map(ConfigOverrides::read_file).transpose()?;
    let flags = ConfigOverrides {
        problem: args.problem,
        nx: args.nx,
        ny: args.ny,
        cfl: args.cfl,
        theta: args.theta,
        t_final: args.t_final,
        snapshot_times: args.snapshot_times.map(|s| pccu_core::io::parse_time_list("snapshot_times", &s)).transpose()?,
        output_dir: args.output_dir,
        diag_interval: args.diag_interval,
    };
    let mut config = parse_config(file, flags)?;
    if config.output_dir.is_none() {
        config.output_dir = Some(PathBuf::from("output"));
    }
    let out = run_and_write(&config)?;
    let last = out.report.samples.last();
    eprintln!(
        "{}: {} steps to t = {}, max |A+B| = {:e}, min density = {:e}{}",
        config.problem,
        out.steps.len(),
        config.t_final,
        out.report.max_divergence(),
        out.report.min_density(),
        out.report.min_pressure().map(|p| format!(", min p = {p:e}")).unwrap_or_default()
    );
    if let (Some(dir), Some(_)) = (&config.output_dir, last) {
        eprintln!("output written to {}", dir.display());
    }
    Ok(())
}

fn convergence_command(args: ConvergenceArgs) -> Result<()> {
    make_problem(&args.problem)?;
    let grids = args
        .grids
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| SolverError::Usage(format!("invalid grid size '{s}'"))))
        .collect::<Result<Vec<_>>>()?;
    let rows = run_convergence(&args.problem, &grids, args.t_final, args.component)?;
    match args.output {
        Some(path) => {
            let file = std::fs::File::create(&path).map_err(|e| SolverError::Io { path: path.display().to_string(), source: e })?;
            write_convergence_csv(&rows, file).map_err(|e| SolverError::Io { path: path.display().to_string(), source: e })
        }
        None => write_convergence_csv(&rows, std::io::stdout().lock())
            .map_err(|e| SolverError::Io { path: "<stdout>".into(), source: e }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Run(args) => run_command(args),
        Command::Convergence(args) => convergence_command(args),
        Command::ListProblems => {
            for name in PROBLEM_NAMES {
                println!("{name}");
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
