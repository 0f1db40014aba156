//! The `selftest` command: oracle equivalence, storage and padding checks and
//! worker-count determinism on small generated graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slimsell_core::analysis::{check_padding_bound, storage_report};
use slimsell_core::generator::{gen_erdos_renyi, gen_kronecker, GRAPH500_INITIATOR};
use slimsell_core::semiring::{BfsSemiring, Boolean, PadOverride, Real, SelMax, Tropical};
use slimsell_core::{
    bfs_spmv, bfs_spmv_with, bfs_traditional, BfsOptions, BfsResult, Graph, Result, Schedule,
    SlimSellRepr, Variant,
};

use crate::error::CliError;
use crate::run::verify;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SelftestConfig {
    pub workers: usize,
    /// Run every BFS with the semiring's `one` as padding value.
    pub inject_pad_fault: bool,
}

/// Outcome of one named invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<String>,
}

impl Check {
    fn line(&self) -> String {
        match &self.failure {
            None => format!("ok    {} ({} cases)", self.name, self.cases),
            Some(why) => format!("FAIL  {} ({} cases): {why}", self.name, self.cases),
        }
    }
}

fn instances() -> Result<Vec<Graph>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f);
    let mut graphs = Vec::new();
    for i in 0..24u64 {
        let n = rng.gen_range(1..=96usize);
        let p = [2.0 / n as f64, 8.0 / n as f64, 0.5][i as usize % 3].min(1.0);
        graphs.push(gen_erdos_renyi(n, p, i)?);
    }
    for scale in 3..=7 {
        graphs.push(gen_kronecker(scale, 8, scale as u64, GRAPH500_INITIATOR)?);
    }
    Ok(graphs)
}

fn run_variant(
    r: &SlimSellRepr,
    root: usize,
    opts: &BfsOptions,
    pad_fault: bool,
) -> Result<BfsResult> {
    fn faulty<S: BfsSemiring + Copy>(
        r: &SlimSellRepr,
        s: S,
        root: usize,
        opts: &BfsOptions,
    ) -> Result<BfsResult>
    where
        SlimSellRepr: slimsell_core::repr::ChunkedMatrix<PadOverride<S>>,
    {
        let wrapped = PadOverride {
            inner: s,
            pad: s.one(),
        };
        bfs_spmv_with(r, r, &wrapped, root, opts)
    }
    if !pad_fault {
        return bfs_spmv(r, root, opts);
    }
    match opts.variant {
        Variant::Tropical => faulty(r, Tropical, root, opts),
        Variant::Real => faulty(r, Real, root, opts),
        Variant::Boolean => faulty(r, Boolean, root, opts),
        Variant::SelMax => faulty(r, SelMax, root, opts),
    }
}

fn oracle_equivalence(graphs: &[Graph], cfg: SelftestConfig) -> Result<Check> {
    let mut check = Check {
        name: "oracle_equivalence",
        cases: 0,
        failure: None,
    };
    for (gi, g) in graphs.iter().enumerate() {
        let roots = [0, g.n() / 2];
        let oracles: Vec<BfsResult> = roots
            .iter()
            .map(|&r| bfs_traditional(g, r))
            .collect::<Result<_>>()?;
        for c in [2, 4, 8] {
            for sigma in [1, c, g.n().max(1)] {
                let r = SlimSellRepr::build(g, c, sigma)?;
                for variant in Variant::ALL {
                    for slimwork in [false, true] {
                        for slimchunk in [None, Some(4)] {
                            let opts = BfsOptions {
                                slimwork,
                                slimchunk,
                                workers: cfg.workers.max(1),
                                ..BfsOptions::new(variant)
                            };
                            for (&root, oracle) in roots.iter().zip(&oracles) {
                                check.cases += 1;
                                let outcome = run_variant(&r, root, &opts, cfg.inject_pad_fault)
                                    .map_err(|e| e.to_string())
                                    .and_then(|res| verify(g, root, oracle, &res));
                                if let Err(why) = outcome {
                                    check.failure = Some(format!(
                                        "graph #{gi} (n={}, m={}), {variant}, C={c}, sigma={sigma}, slimwork={slimwork}, slimchunk={slimchunk:?}, root {root}: {why}",
                                        g.n(),
                                        g.m()
                                    ));
                                    return Ok(check);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(check)
}

fn storage_and_padding(graphs: &[Graph]) -> Result<[Check; 2]> {
    let mut storage = Check {
        name: "storage_formulas",
        cases: 0,
        failure: None,
    };
    let mut padding = Check {
        name: "padding_bound",
        cases: 0,
        failure: None,
    };
    for (gi, g) in graphs.iter().enumerate() {
        for c in [1, 2, 4, 8, 16] {
            for sigma in [1, c, 4 * c, g.n().max(1)] {
                storage.cases += 1;
                let rep = storage_report(g, c, sigma)?;
                if storage.failure.is_none() && !rep.is_exact() {
                    storage.failure = Some(format!("graph #{gi}, C={c}, sigma={sigma}: {rep:?}"));
                }
            }
            padding.cases += 1;
            let b = check_padding_bound(g, c)?;
            if padding.failure.is_none() && !b.holds {
                padding.failure = Some(format!(
                    "graph #{gi}, C={c}: {} cells > bound {}",
                    b.measured_cells, b.bound
                ));
            }
        }
    }
    Ok([storage, padding])
}

fn determinism(graphs: &[Graph]) -> Result<Check> {
    let mut check = Check {
        name: "worker_determinism",
        cases: 0,
        failure: None,
    };
    for (gi, g) in graphs.iter().enumerate().step_by(3) {
        let r = SlimSellRepr::build(g, 4, g.n().max(1))?;
        for variant in Variant::ALL {
            for schedule in [Schedule::Static, Schedule::Dynamic] {
                let run = |workers| {
                    let opts = BfsOptions {
                        slimwork: true,
                        slimchunk: Some(2),
                        schedule,
                        workers,
                        ..BfsOptions::new(variant)
                    };
                    bfs_spmv(&r, 0, &opts)
                };
                let (one, eight) = (run(1)?, run(8)?);
                check.cases += 1;
                let same = one.d == eight.d
                    && one.p == eight.p
                    && one
                        .per_iter
                        .iter()
                        .map(|s| s.work())
                        .eq(eight.per_iter.iter().map(|s| s.work()));
                if !same && check.failure.is_none() {
                    check.failure = Some(format!(
                        "graph #{gi}, {variant}, {schedule}: 1 vs 8 workers differ"
                    ));
                }
            }
        }
    }
    Ok(check)
}

/// Runs all checks and returns one report line per invariant; fails with
/// the full report if any invariant is violated.
pub fn cmd_selftest(cfg: SelftestConfig) -> std::result::Result<String, CliError> {
    let graphs = instances()?;
    let [storage, padding] = storage_and_padding(&graphs)?;
    let checks = [
        oracle_equivalence(&graphs, cfg)?,
        storage,
        padding,
        determinism(&graphs)?,
    ];
    let report: String = checks.iter().map(|c| c.line() + "\n").collect();
    if checks.iter().any(|c| c.failure.is_some()) {
        return Err(CliError::Verification(report));
    }
    Ok(report)
}
