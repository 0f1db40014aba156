use std::time::Instant;

use super::{BfsResult, IterationStats};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::semiring::{INF, UNREACHED};

/// Level-synchronous queue BFS.
///
/// Each level's frontier is expanded in ascending vertex order, so every
/// vertex's parent is its smallest-ID neighbor on the previous level. One
/// iteration is recorded per expanded level, including the last one that
/// discovers nothing.
pub fn bfs_traditional(g: &Graph, root: usize) -> Result<BfsResult> {
    let n = g.n();
    if root >= n {
        return Err(Error::RootRange { root, n });
    }
    let mut d = vec![INF; n];
    let mut p = vec![UNREACHED; n];
    d[root] = 0;
    p[root] = root as u32;
    let mut frontier = vec![root as u32];
    let mut next = Vec::new();
    let mut per_iter = Vec::new();
    let mut level = 0u32;

    while !frontier.is_empty() {
        let start = Instant::now();
        level += 1;
        for &u in &frontier {
            for &w in g.neighbors(u as usize) {
                if d[w as usize] == INF {
                    d[w as usize] = level;
                    p[w as usize] = u;
                    next.push(w);
                }
            }
        }
        next.sort_unstable();
        per_iter.push(IterationStats {
            k: level,
            elapsed_ns: start.elapsed().as_nanos() as u64,
            frontier_size: next.len(),
            ..IterationStats::default()
        });
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
    }

    Ok(BfsResult {
        iterations: per_iter.len(),
        d,
        p,
        per_iter,
    })
}
