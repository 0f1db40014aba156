use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use slimsell_core::{Schedule, Variant};

use crate::config::{GraphSource, RootSpec, SigmaSpec, SlimChunkSpec, Toggle};
use crate::error::CliError;
use crate::run::{cmd_run, RunConfig};
use crate::selftest::{cmd_selftest, SelftestConfig};
use crate::storage::{cmd_dump, cmd_storage, DumpFormat};

#[derive(Debug, Parser)]
#[command(
    name = "slimsell",
    version,
    about = "SlimSell BFS benchmarks, storage reports and layout dumps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run BFS over a parameter grid and write iterations.csv and summary.csv.
    Run(RunArgs),
    /// Print storage cell counts per representation.
    Storage(StorageArgs),
    /// Print the chunked layout of a graph.
    Dump(DumpArgs),
    /// Check the implementation against its oracles on generated graphs.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Graph file (edge list, or Matrix Market for *.mtx) or generator spec, e.g. kron:scale=14,ef=16,seed=1
    #[arg(long)]
    pub graph: GraphSource,
    /// Chunk heights C (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "8")]
    pub chunk_height: Vec<usize>,
    /// Sorting scopes: integers, n, sqrt_n or C (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "n")]
    pub sigma: Vec<SigmaSpec>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// tropical, real, boolean, selmax (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "tropical")]
    pub semiring: Vec<Variant>,
    /// Vertex id or random:<k>.
    #[arg(long, default_value = "0")]
    pub root: RootSpec,
    /// Seed for random root selection.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "off")]
    pub slimwork: Toggle,
    /// off or the maximum subchunk length L.
    #[arg(long, default_value = "off")]
    pub slimchunk: SlimChunkSpec,
    #[arg(long, default_value = "static")]
    pub schedule: Schedule,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
    #[arg(long, default_value = "on")]
    pub verify: Toggle,
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct StorageArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Also write storage.csv into this directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Layout {
    Slimsell,
    Sell,
}

#[derive(Debug, Args)]
pub struct DumpArgs {
    #[arg(long)]
    pub graph: GraphSource,
    #[arg(long, default_value_t = 8)]
    pub chunk_height: usize,
    #[arg(long, default_value = "n")]
    pub sigma: SigmaSpec,
    #[arg(long, value_enum, default_value_t = Layout::Slimsell)]
    pub layout: Layout,
    /// Semiring whose values fill the Sell-C-σ val grid.
    #[arg(long, default_value = "tropical")]
    pub semiring: Variant,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

/// Runs a parsed command, writing results to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let stdout_err = CliError::io("<stdout>");
    let text = match cli.command {
        Command::Run(a) => {
            let cfg = RunConfig {
                graph: a.graph.graph,
                chunk_heights: a.graph.chunk_height,
                sigmas: a.graph.sigma,
                semirings: a.semiring,
                root: a.root,
                seed: a.seed,
                slimwork: a.slimwork.0,
                slimchunk: a.slimchunk.0,
                schedule: a.schedule,
                workers: a.workers,
                repeat: a.repeat,
                verify: a.verify.0,
                out: a.out,
                inject_fault: a.inject_fault,
            };
            let report = cmd_run(&cfg)?;
            format!(
                "{} runs in {} groups\n{}\n{}\n",
                report.runs,
                report.groups,
                report.iterations_csv.display(),
                report.summary_csv.display()
            )
        }
        Command::Storage(a) => cmd_storage(
            &a.graph.graph,
            &a.graph.chunk_height,
            &a.graph.sigma,
            a.out.as_deref(),
        )?,
        Command::Dump(a) => {
            let format = match a.layout {
                Layout::Slimsell => DumpFormat::SlimSell,
                Layout::Sell => DumpFormat::Sell(a.semiring),
            };
            cmd_dump(&a.graph, a.chunk_height, a.sigma, format)?
        }
        Command::Selftest(a) => cmd_selftest(SelftestConfig {
            workers: a.workers,
            inject_pad_fault: a.inject_fault,
        })?,
    };
    out.write_all(text.as_bytes()).map_err(stdout_err)
}
