use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gravent::{cmd_evolve, cmd_figure, cmd_phases, cmd_sweep, cmd_teleport, emit, parse_config, CliError};
use gravent::{Figure, Format, ResultTable, RunConfig};
use gravent_core::engine::{self, Execution};
use gravent_core::prelude::Reduction;

#[derive(Parser)]
#[command(
    name = "gravent",
    version,
    about = "Entanglement and teleportation under superposed gravitational fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Run configuration (`key = value` lines)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Write the table here instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Field reduction for overlapping fields
    #[arg(long, global = true, value_enum)]
    reduction: Option<ReductionArg>,

    /// Worker threads; 0 uses every core
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Branch energies and phase gaps
    Phases,
    /// Mutual information and coherence over time
    Evolve,
    /// Cartesian (t, k) sweep of mutual information, coherence and averaged fidelity
    Sweep,
    /// Table behind one of the figures
    Figure {
        #[arg(value_enum)]
        name: FigureArg,
    },
    /// Per-outcome probability and fidelity of the teleportation circuit
    Teleport,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReductionArg {
    Paper,
    Gram,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureArg {
    Fig2,
    Fig3a,
    Fig3b,
    Fig5a,
    Fig5b,
}

impl From<FigureArg> for Figure {
    fn from(f: FigureArg) -> Self {
        match f {
            FigureArg::Fig2 => Figure::Fig2,
            FigureArg::Fig3a => Figure::Fig3a,
            FigureArg::Fig3b => Figure::Fig3b,
            FigureArg::Fig5a => Figure::Fig5a,
            FigureArg::Fig5b => Figure::Fig5b,
        }
    }
}

fn load(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            parse_config(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(f) = cli.format {
        cfg.format = match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        };
    }
    if let Some(r) = cli.reduction {
        cfg.reduction = match r {
            ReductionArg::Paper => Reduction::PaperLiteral,
            ReductionArg::Gram => Reduction::GramTrace,
        };
    }
    if let Some(out) = &cli.output {
        cfg.output = Some(out.clone());
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = load(cli)?;
    let jobs = cli.jobs.unwrap_or(0);
    let exec = if jobs == 1 {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let table: ResultTable = engine::with_threads(jobs, || match &cli.command {
        Command::Phases => cmd_phases(&cfg),
        Command::Evolve => cmd_evolve(&cfg, exec),
        Command::Sweep => cmd_sweep(&cfg, exec),
        Command::Figure { name } => cmd_figure((*name).into(), &cfg, exec),
        Command::Teleport => cmd_teleport(&cfg, exec),
    })?;
    emit(&table, cfg.format, cfg.output.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
