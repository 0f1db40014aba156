//! Algebraic BFS driver with SlimWork chunk skipping and SlimChunk vertical
//! splitting, plus the traditional queue-based BFS used as an oracle.
//!
//! One iteration multiplies the adjacency matrix by the current product
//! input vector, then runs the semiring's post-processing. All chunk tasks
//! of an iteration finish before post-processing starts.

mod schedule;
mod traditional;

use std::ops::Range;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{Adjacency, Graph};
use crate::repr::{ChunkLayout, ChunkedMatrix, SlimSellRepr};
use crate::semiring::{
    dp_transform, BfsSemiring, Boolean, Real, SelMax, Semiring, Tropical, Variant, INF, UNREACHED,
};

pub use schedule::Schedule;
pub use traditional::bfs_traditional;

use schedule::run_units;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsOptions {
    pub variant: Variant,
    pub slimwork: bool,
    /// Maximum subchunk length `L`; `None` disables SlimChunk.
    pub slimchunk: Option<usize>,
    pub schedule: Schedule,
    pub workers: usize,
    /// Defaults to `n + 1`.
    pub max_iterations: Option<usize>,
    /// Derive parents from distances for variants that do not produce them.
    pub parents: bool,
}

impl Default for BfsOptions {
    fn default() -> Self {
        Self {
            variant: Variant::Tropical,
            slimwork: false,
            slimchunk: None,
            schedule: Schedule::Static,
            workers: 1,
            max_iterations: None,
            parents: true,
        }
    }
}

impl BfsOptions {
    pub fn new(variant: Variant) -> Self {
        Self {
            variant,
            ..Self::default()
        }
    }
}

/// Work and timing counters of one iteration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IterationStats {
    pub k: u32,
    pub elapsed_ns: u64,
    pub chunks_processed: usize,
    pub chunks_skipped: usize,
    /// Subchunk tasks executed; zero when SlimChunk is off.
    pub subchunks_processed: usize,
    /// Sum of `cl` over processed chunks.
    pub columns_processed: usize,
    /// Largest number of matrix cells handled by one scheduling unit.
    pub max_unit_cells: usize,
    /// Vertices reached for the first time in this iteration.
    pub frontier_size: usize,
}

impl IterationStats {
    /// The counters without the timing, for determinism checks.
    pub fn work(&self) -> (u32, usize, usize, usize, usize, usize, usize) {
        (
            self.k,
            self.chunks_processed,
            self.chunks_skipped,
            self.subchunks_processed,
            self.columns_processed,
            self.max_unit_cells,
            self.frontier_size,
        )
    }
}

/// Distances and parents in original vertex numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsResult {
    /// [`INF`] for unreached vertices.
    pub d: Vec<u32>,
    /// Root is its own parent, [`UNREACHED`] for unreached vertices. Empty
    /// when parents were not requested.
    pub p: Vec<u32>,
    pub iterations: usize,
    pub per_iter: Vec<IterationStats>,
}

impl BfsResult {
    pub fn total_elapsed_ns(&self) -> u64 {
        self.per_iter.iter().map(|s| s.elapsed_ns).sum()
    }
}

/// Column segments per chunk, each at most `L` columns long.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubchunkPlan {
    /// `segments[chunk]` lists `(column_start, column_len)` pairs.
    pub segments: Vec<Vec<(usize, usize)>>,
}

pub fn plan_subchunks(layout: &ChunkLayout, max_len: usize) -> Result<SubchunkPlan> {
    Ok(SubchunkPlan {
        segments: layout
            .cl
            .iter()
            .map(|&cl| split_columns(cl, max_len))
            .collect::<Result<_>>()?,
    })
}

fn split_columns(cl: usize, max_len: usize) -> Result<Vec<(usize, usize)>> {
    if max_len == 0 {
        return Err(Error::Parameter(
            "subchunk length L must be at least 1".into(),
        ));
    }
    Ok((0..cl)
        .step_by(max_len)
        .map(|start| (start, max_len.min(cl - start)))
        .collect())
}

/// Elementwise semiring sum of per-subchunk accumulators of one chunk.
pub fn combine_partials<S: Semiring>(s: &S, partials: &[&[S::Scalar]]) -> Vec<S::Scalar> {
    let mut iter = partials.iter();
    let Some(first) = iter.next() else {
        return Vec::new();
    };
    let mut out = first.to_vec();
    for part in iter {
        for (o, &v) in out.iter_mut().zip(part.iter()) {
            *o = s.plus(*o, v);
        }
    }
    out
}

/// BFS on a SlimSell representation with the semiring chosen in `opts`.
pub fn bfs_spmv(r: &SlimSellRepr, root: usize, opts: &BfsOptions) -> Result<BfsResult> {
    match opts.variant {
        Variant::Tropical => bfs_spmv_with(r, r, &Tropical, root, opts),
        Variant::Real => bfs_spmv_with(r, r, &Real, root, opts),
        Variant::Boolean => bfs_spmv_with(r, r, &Boolean, root, opts),
        Variant::SelMax => bfs_spmv_with(r, r, &SelMax, root, opts),
    }
}

/// Generic driver. `adjacency` (original numbering) is only used to derive
/// parents for variants without native parent tracking. `opts.variant` is
/// ignored in favor of `s`.
pub fn bfs_spmv_with<S, M, A>(
    matrix: &M,
    adjacency: &A,
    s: &S,
    root: usize,
    opts: &BfsOptions,
) -> Result<BfsResult>
where
    S: BfsSemiring,
    M: ChunkedMatrix<S>,
    A: Adjacency,
{
    let layout = matrix.layout();
    let (n, c) = (layout.n, layout.c);
    if root >= n {
        return Err(Error::RootRange { root, n });
    }
    let plan = &layout.plan;
    let subchunks = opts
        .slimchunk
        .map(|l| plan_subchunks(layout, l))
        .transpose()?;
    let cap = opts.max_iterations.unwrap_or(n + 1);

    let mut state = s.init_state(layout.n_padded, n, plan.inv_perm[root] as usize)?;
    let mut per_iter = Vec::new();
    let mut k = 0u32;
    loop {
        if per_iter.len() >= cap {
            return Err(Error::NotConverged {
                iterations: per_iter.len(),
                partial_distances: plan.permute_out(&state.d),
            });
        }
        k += 1;
        let start = Instant::now();
        let input = s.product_input(&state);
        let skip: Vec<bool> = (0..layout.n_chunks())
            .map(|i| opts.slimwork && s.should_skip_chunk(&state, layout.real_rows(i)))
            .collect();

        let mut stats = IterationStats {
            k,
            ..IterationStats::default()
        };
        for (i, &skipped) in skip.iter().enumerate() {
            if skipped {
                stats.chunks_skipped += 1;
            } else {
                stats.chunks_processed += 1;
                stats.columns_processed += layout.cl[i];
            }
        }

        let mut out = vec![s.zero(); layout.n_padded];
        match &subchunks {
            None => {
                let mut units = Vec::with_capacity(stats.chunks_processed);
                for (i, rows) in out.chunks_mut(c).enumerate() {
                    if skip[i] {
                        rows.copy_from_slice(&input[layout.chunk_rows(i)]);
                    } else {
                        stats.max_unit_cells = stats.max_unit_cells.max(layout.cl[i] * c);
                        units.push((i, rows));
                    }
                }
                run_units(units, opts.workers, opts.schedule, |i, rows| {
                    matrix.chunk_product(s, input, i, rows)
                });
            }
            Some(sub) => {
                let tasks: Vec<(usize, Range<usize>)> = sub
                    .segments
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !skip[*i])
                    .flat_map(|(i, segs)| segs.iter().map(move |&(st, len)| (i, st..st + len)))
                    .collect();
                stats.subchunks_processed = tasks.len();
                stats.max_unit_cells = tasks
                    .iter()
                    .map(|(_, cols)| cols.len() * c)
                    .max()
                    .unwrap_or(0);

                // the first segment of each chunk starts from the chunk's input rows
                let mut partials = vec![s.zero(); tasks.len() * c];
                for ((i, cols), acc) in tasks.iter().zip(partials.chunks_mut(c)) {
                    if cols.start == 0 {
                        acc.copy_from_slice(&input[layout.chunk_rows(*i)]);
                    }
                }
                let units: Vec<_> = tasks.iter().cloned().zip(partials.chunks_mut(c)).collect();
                run_units(units, opts.workers, opts.schedule, |(i, cols), acc| {
                    matrix.accumulate(s, input, i, cols, acc)
                });

                let mut next_task = 0;
                for (i, rows) in out.chunks_mut(c).enumerate() {
                    let segs = if skip[i] { 0 } else { sub.segments[i].len() };
                    if segs == 0 {
                        rows.copy_from_slice(&input[layout.chunk_rows(i)]);
                        continue;
                    }
                    let parts: Vec<&[S::Scalar]> = partials[next_task * c..(next_task + segs) * c]
                        .chunks(c)
                        .collect();
                    rows.copy_from_slice(&combine_partials(s, &parts));
                    next_task += segs;
                }
            }
        }

        let prev_x = state.x.clone();
        stats.frontier_size = s.post_process(&mut state, out, k);
        stats.elapsed_ns = start.elapsed().as_nanos() as u64;
        per_iter.push(stats);
        if s.is_converged(&prev_x, &state) {
            break;
        }
    }

    let d = plan.permute_out(&state.d);
    let p = match s.native_parents(&state) {
        Some(native) => plan
            .permute_out(&native)
            .into_iter()
            .map(|p| p.map_or(UNREACHED, |pos| plan.perm[pos]))
            .collect(),
        None if opts.parents => dp_transform(adjacency, &d)?,
        None => Vec::new(),
    };
    Ok(BfsResult {
        d,
        p,
        iterations: per_iter.len(),
        per_iter,
    })
}

/// Checks that `p` is a BFS tree consistent with `d`: the root is its own
/// parent at distance 0, every reached vertex hangs off a neighbor exactly
/// one level closer, and unreached vertices have no parent.
pub fn check_parents(
    g: &Graph,
    root: usize,
    d: &[u32],
    p: &[u32],
) -> std::result::Result<(), String> {
    let n = g.n();
    if d.len() != n || p.len() != n {
        return Err(format!(
            "expected vectors of length {n}, got d={} p={}",
            d.len(),
            p.len()
        ));
    }
    if d[root] != 0 || p[root] != root as u32 {
        return Err(format!("root {root}: d={} p={}", d[root], p[root]));
    }
    for v in 0..n {
        if v == root {
            continue;
        }
        match (d[v], p[v]) {
            (INF, UNREACHED) => {}
            (INF, pv) => return Err(format!("vertex {v} unreached but has parent {pv}")),
            (_, UNREACHED) => return Err(format!("vertex {v} reached but has no parent")),
            (dv, pv) => {
                if !g.has_edge(v, pv as usize) {
                    return Err(format!("parent {pv} of {v} is not a neighbor"));
                }
                if d[pv as usize] != dv - 1 {
                    return Err(format!(
                        "parent {pv} of {v} at distance {} (expected {})",
                        d[pv as usize],
                        dv - 1
                    ));
                }
            }
        }
    }
    Ok(())
}
