//! The `run` command: BFS sweeps over a parameter grid with per-iteration CSV.
//!
//! `iterations.csv` has one row per (run, iteration):
//!
//! | column | meaning |
//! |---|---|
//! | `run_id` | index of the run within this invocation |
//! | `graph_id` | file path or canonical generator spec |
//! | `n`, `m` | vertices, undirected edges |
//! | `C`, `sigma` | chunk height and effective sorting scope |
//! | `semiring` | tropical, real, boolean or selmax |
//! | `slimwork` | `on` / `off` |
//! | `slimchunk_L` | maximum subchunk length, `0` when SlimChunk is off |
//! | `schedule`, `workers` | scheduling policy and thread count |
//! | `root` | BFS root in input numbering |
//! | `iteration` | 1-based iteration index |
//! | `elapsed_ns` | wall time of the iteration |
//! | `chunks_processed`, `chunks_skipped`, `subchunks_processed` | work counters |
//! | `frontier_size` | vertices first reached in this iteration |
//! | `columns_processed` | sum of chunk lengths over processed chunks |
//!
//! `summary.csv` has one row per run group, i.e. the `repeat` runs sharing
//! every parameter: `group_id`, the parameter columns above, `repeats`,
//! `iterations`, `preprocessing_ns` (representation build, including sorting),
//! `mean_total_ns` and `median_total_ns` (per-run sums of `elapsed_ns`).
//!
//! Every column whose name ends in `_ns` is a timing; all other columns are
//! deterministic for a fixed configuration.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use slimsell_core::{
    bfs_spmv, bfs_traditional, check_parents, BfsOptions, BfsResult, Error, Graph, Schedule,
    SlimSellRepr, Variant,
};

use crate::config::{GraphSource, RootSpec, SigmaSpec};
use crate::error::CliError;

pub const ITERATIONS_HEADER: [&str; 19] = [
    "run_id",
    "graph_id",
    "n",
    "m",
    "C",
    "sigma",
    "semiring",
    "slimwork",
    "slimchunk_L",
    "schedule",
    "workers",
    "root",
    "iteration",
    "elapsed_ns",
    "chunks_processed",
    "chunks_skipped",
    "subchunks_processed",
    "frontier_size",
    "columns_processed",
];

pub const SUMMARY_HEADER: [&str; 17] = [
    "group_id",
    "graph_id",
    "n",
    "m",
    "C",
    "sigma",
    "semiring",
    "slimwork",
    "slimchunk_L",
    "schedule",
    "workers",
    "root",
    "repeats",
    "iterations",
    "preprocessing_ns",
    "mean_total_ns",
    "median_total_ns",
];

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub graph: GraphSource,
    pub chunk_heights: Vec<usize>,
    pub sigmas: Vec<SigmaSpec>,
    pub semirings: Vec<Variant>,
    pub root: RootSpec,
    /// Seeds random root selection.
    pub seed: u64,
    pub slimwork: bool,
    pub slimchunk: Option<usize>,
    pub schedule: Schedule,
    pub workers: usize,
    pub repeat: usize,
    pub verify: bool,
    pub out: PathBuf,
    /// Corrupt every built representation before running.
    pub inject_fault: bool,
}

impl RunConfig {
    pub fn new(graph: GraphSource, out: impl Into<PathBuf>) -> Self {
        Self {
            graph,
            chunk_heights: vec![8],
            sigmas: vec![SigmaSpec::N],
            semirings: vec![Variant::Tropical],
            root: RootSpec::Id(0),
            seed: 0,
            slimwork: false,
            slimchunk: None,
            schedule: Schedule::Static,
            workers: 1,
            repeat: 1,
            verify: true,
            out: out.into(),
            inject_fault: false,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: &str| Err(CliError::Config(msg.into()));
        if self.repeat == 0 {
            return bad("--repeat must be at least 1");
        }
        if self.workers == 0 {
            return bad("--workers must be at least 1");
        }
        if self.chunk_heights.is_empty() || self.chunk_heights.contains(&0) {
            return bad("--chunk-height values must be positive");
        }
        if self.sigmas.is_empty() || self.semirings.is_empty() {
            return bad("--sigma and --semiring need at least one value");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub iterations_csv: PathBuf,
    pub summary_csv: PathBuf,
    pub runs: usize,
    pub groups: usize,
}

/// Runs the grid `C × sigma × semiring × root × repeat` and writes
/// `iterations.csv` and `summary.csv` into `cfg.out`. With verification on,
/// runs disagreeing with the queue BFS are reported and left out of both
/// files, and the call returns [`CliError::Verification`] once the grid is
/// complete.
pub fn cmd_run(cfg: &RunConfig) -> Result<RunReport, CliError> {
    cfg.validate()?;
    let g = cfg.graph.load()?;
    let graph_id = cfg.graph.id();
    let roots = cfg.root.resolve(&g, cfg.seed)?;

    fs::create_dir_all(&cfg.out).map_err(CliError::io(&cfg.out))?;
    let iterations_csv = cfg.out.join("iterations.csv");
    let summary_csv = cfg.out.join("summary.csv");
    let mut iter_w =
        csv::Writer::from_path(&iterations_csv).map_err(CliError::csv(&iterations_csv))?;
    let mut sum_w = csv::Writer::from_path(&summary_csv).map_err(CliError::csv(&summary_csv))?;
    iter_w
        .write_record(ITERATIONS_HEADER)
        .map_err(CliError::csv(&iterations_csv))?;
    sum_w
        .write_record(SUMMARY_HEADER)
        .map_err(CliError::csv(&summary_csv))?;

    let mut oracles: HashMap<usize, BfsResult> = HashMap::new();
    let mut failures = Vec::new();
    let (mut run_id, mut group_id) = (0usize, 0usize);

    for &c in &cfg.chunk_heights {
        let mut sigmas: Vec<usize> = Vec::new();
        for spec in &cfg.sigmas {
            let s = spec.resolve(g.n(), c);
            if !sigmas.contains(&s) {
                sigmas.push(s);
            }
        }
        for sigma in sigmas {
            let start = Instant::now();
            let mut repr = SlimSellRepr::build(&g, c, sigma)?;
            let preprocessing_ns = start.elapsed().as_nanos() as u64;
            if cfg.inject_fault {
                repr.inject_fault();
            }
            let effective_sigma = repr.layout().plan.sigma;

            for &variant in &cfg.semirings {
                for &root in &roots {
                    let params = [
                        graph_id.clone(),
                        g.n().to_string(),
                        g.m().to_string(),
                        c.to_string(),
                        effective_sigma.to_string(),
                        variant.to_string(),
                        if cfg.slimwork { "on" } else { "off" }.to_string(),
                        cfg.slimchunk.unwrap_or(0).to_string(),
                        cfg.schedule.to_string(),
                        cfg.workers.to_string(),
                        root.to_string(),
                    ];
                    let opts = BfsOptions {
                        variant,
                        slimwork: cfg.slimwork,
                        slimchunk: cfg.slimchunk,
                        schedule: cfg.schedule,
                        workers: cfg.workers,
                        max_iterations: None,
                        parents: true,
                    };
                    let mut totals = Vec::new();
                    let mut iterations = 0;
                    for _ in 0..cfg.repeat {
                        let label = format!(
                            "run {run_id} ({variant}, C={c}, sigma={effective_sigma}, root={root})"
                        );
                        run_id += 1;
                        let res = match bfs_spmv(&repr, root, &opts) {
                            Ok(res) => res,
                            Err(Error::NotConverged { iterations, .. }) => {
                                failures.push(format!(
                                    "{label}: no fixed point after {iterations} iterations"
                                ));
                                continue;
                            }
                            Err(e) => return Err(e.into()),
                        };
                        if cfg.verify {
                            if let Entry::Vacant(slot) = oracles.entry(root) {
                                slot.insert(bfs_traditional(&g, root)?);
                            }
                            if let Err(diff) = verify(&g, root, &oracles[&root], &res) {
                                failures.push(format!("{label}: {diff}"));
                                continue;
                            }
                        }
                        for s in &res.per_iter {
                            let mut row = vec![(run_id - 1).to_string()];
                            row.extend(params.iter().cloned());
                            row.extend(
                                [
                                    s.k as u64,
                                    s.elapsed_ns,
                                    s.chunks_processed as u64,
                                    s.chunks_skipped as u64,
                                    s.subchunks_processed as u64,
                                    s.frontier_size as u64,
                                    s.columns_processed as u64,
                                ]
                                .map(|v| v.to_string()),
                            );
                            iter_w
                                .write_record(&row)
                                .map_err(CliError::csv(&iterations_csv))?;
                        }
                        totals.push(res.total_elapsed_ns());
                        iterations = res.iterations;
                    }
                    if totals.is_empty() {
                        continue;
                    }
                    let (mean, median) = mean_median(&mut totals);
                    let mut row = vec![group_id.to_string()];
                    row.extend(params);
                    row.extend([
                        totals.len().to_string(),
                        iterations.to_string(),
                        preprocessing_ns.to_string(),
                        format!("{mean:.1}"),
                        format!("{median:.1}"),
                    ]);
                    sum_w
                        .write_record(&row)
                        .map_err(CliError::csv(&summary_csv))?;
                    group_id += 1;
                }
            }
        }
    }
    iter_w.flush().map_err(CliError::io(&iterations_csv))?;
    sum_w.flush().map_err(CliError::io(&summary_csv))?;

    if !failures.is_empty() {
        return Err(CliError::Verification(failures.join("\n")));
    }
    Ok(RunReport {
        iterations_csv,
        summary_csv,
        runs: run_id,
        groups: group_id,
    })
}

fn mean_median(values: &mut [u64]) -> (f64, f64) {
    values.sort_unstable();
    let len = values.len();
    let mean = values.iter().map(|&v| v as f64).sum::<f64>() / len as f64;
    let median = if len % 2 == 1 {
        values[len / 2] as f64
    } else {
        (values[len / 2 - 1] as f64 + values[len / 2] as f64) / 2.0
    };
    (mean, median)
}

/// Compares distances with the queue BFS and checks the parent tree.
pub fn verify(g: &Graph, root: usize, oracle: &BfsResult, res: &BfsResult) -> Result<(), String> {
    let wrong: Vec<String> = (0..g.n())
        .filter(|&v| oracle.d[v] != res.d[v])
        .take(8)
        .map(|v| format!("d[{v}] = {} expected {}", show(res.d[v]), show(oracle.d[v])))
        .collect();
    if !wrong.is_empty() {
        return Err(format!("distance mismatch: {}", wrong.join(", ")));
    }
    check_parents(g, root, &res.d, &res.p).map_err(|e| format!("invalid parents: {e}"))
}

fn show(d: u32) -> String {
    if d == slimsell_core::INF {
        "inf".into()
    } else {
        d.to_string()
    }
}
