//! Sell-C-σ and SlimSell chunked representations of the symmetric adjacency matrix.
//!
//! Rows are grouped into chunks of `C` consecutive rows after a per-window
//! sort by descending row length. Within a chunk, entries are stored
//! column-major: entry `k` of lane `j` of chunk `i` lives at
//! `cs[i] + k * C + j`. Every row of a chunk is padded up to the chunk's
//! longest row `cl[i]`.
//!
//! SlimSell drops the value array and marks padding cells with
//! [`PAD_MARKER`]; Sell-C-σ keeps an explicit value array.

mod dump;
mod kernel;

use std::ops::Range;

use crate::error::{Error, Result};
use crate::graph::{Adjacency, Graph};
use crate::semiring::Semiring;

pub use dump::{dump_sell, dump_slimsell};
pub use kernel::{spmv_step, ChunkedMatrix};

/// Column entry of a SlimSell padding cell.
pub const PAD_MARKER: i32 = -1;

/// Row ordering: descending length inside each window of `sigma` rows,
/// ties broken by ascending original ID.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortPlan {
    /// Effective sorting scope after rounding.
    pub sigma: usize,
    /// `perm[new_position] = original_vertex`.
    pub perm: Vec<u32>,
    /// `inv_perm[original_vertex] = new_position`.
    pub inv_perm: Vec<u32>,
}

impl SortPlan {
    /// `sigma <= 1` keeps the original order. Larger scopes are rounded up
    /// to a multiple of `c`; a scope of at least `n` sorts all rows.
    pub fn new(g: &Graph, c: usize, sigma: usize) -> Result<Self> {
        check_params(c, sigma)?;
        let n = g.n();
        let scope = if sigma <= 1 { 1 } else { sigma.div_ceil(c) * c };
        let mut perm: Vec<u32> = (0..n as u32).collect();
        if scope > 1 {
            for window in perm.chunks_mut(scope) {
                window.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v as usize)), v));
            }
        }
        let mut inv_perm = vec![0u32; n];
        for (pos, &v) in perm.iter().enumerate() {
            inv_perm[v as usize] = pos as u32;
        }
        Ok(Self {
            sigma: scope.min(n.max(1)),
            perm,
            inv_perm,
        })
    }

    pub fn identity(n: usize) -> Self {
        let perm: Vec<u32> = (0..n as u32).collect();
        Self {
            sigma: 1,
            inv_perm: perm.clone(),
            perm,
        }
    }

    /// Relabels a vector indexed by original vertex into permuted order.
    pub fn permute_in<T: Copy>(&self, v: &[T]) -> Vec<T> {
        self.perm.iter().map(|&orig| v[orig as usize]).collect()
    }

    /// Relabels a permuted vector back to original vertex order, dropping
    /// any padding rows beyond `n`.
    pub fn permute_out<T: Copy>(&self, v: &[T]) -> Vec<T> {
        self.inv_perm.iter().map(|&pos| v[pos as usize]).collect()
    }
}

fn check_params(c: usize, sigma: usize) -> Result<()> {
    if c == 0 {
        return Err(Error::Parameter("chunk height C must be at least 1".into()));
    }
    if sigma == 0 {
        return Err(Error::Parameter(
            "sorting scope sigma must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Chunk geometry shared by both formats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChunkLayout {
    /// Chunk height `C`.
    pub c: usize,
    /// Real vertex count.
    pub n: usize,
    /// Vertex count rounded up to a multiple of `C`.
    pub n_padded: usize,
    /// Number of undirected edges.
    pub m: usize,
    /// Chunk start offsets into `col`/`val`.
    pub cs: Vec<usize>,
    /// Chunk lengths: longest row of each chunk.
    pub cl: Vec<usize>,
    pub plan: SortPlan,
    /// Total stored cells of `col` (and `val`), `2m + P`.
    pub len: usize,
}

impl ChunkLayout {
    fn build(g: &Graph, c: usize, sigma: usize) -> Result<Self> {
        let plan = SortPlan::new(g, c, sigma)?;
        let n = g.n();
        let n_chunks = n.div_ceil(c);
        let mut cl = vec![0usize; n_chunks];
        for (pos, &v) in plan.perm.iter().enumerate() {
            let chunk = pos / c;
            cl[chunk] = cl[chunk].max(g.degree(v as usize));
        }
        let mut cs = Vec::with_capacity(n_chunks);
        let mut offset = 0;
        for &len in &cl {
            cs.push(offset);
            offset += c * len;
        }
        Ok(Self {
            c,
            n,
            n_padded: n_chunks * c,
            m: g.m(),
            cs,
            cl,
            plan,
            len: offset,
        })
    }

    pub fn n_chunks(&self) -> usize {
        self.cl.len()
    }

    /// Number of padding cells `P`.
    pub fn padding(&self) -> usize {
        self.len - 2 * self.m
    }

    /// Permuted rows covered by `chunk`, including padding rows.
    pub fn chunk_rows(&self, chunk: usize) -> Range<usize> {
        chunk * self.c..(chunk + 1) * self.c
    }

    /// Real (non-padding) permuted rows covered by `chunk`.
    pub fn real_rows(&self, chunk: usize) -> Range<usize> {
        chunk * self.c..((chunk + 1) * self.c).min(self.n)
    }

    /// Flat index of entry `column` of `lane` in `chunk`.
    #[inline]
    pub fn index(&self, chunk: usize, lane: usize, column: usize) -> usize {
        self.cs[chunk] + column * self.c + lane
    }

    /// Inverse of [`ChunkLayout::index`]: `(chunk, lane, column)`.
    pub fn decode(&self, index: usize) -> (usize, usize, usize) {
        assert!(index < self.len, "index {index} out of range {}", self.len);
        // empty chunks share their start with the next chunk, so the owner is
        // the last chunk starting at or before `index`
        let chunk = self.cs.partition_point(|&start| start <= index) - 1;
        let rel = index - self.cs[chunk];
        (chunk, rel % self.c, rel / self.c)
    }
}

/// Sell-C-σ without a value array: padding cells hold [`PAD_MARKER`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlimSellRepr {
    layout: ChunkLayout,
    col: Vec<i32>,
}

impl SlimSellRepr {
    pub fn build(g: &Graph, c: usize, sigma: usize) -> Result<Self> {
        let layout = ChunkLayout::build(g, c, sigma)?;
        let mut col = vec![PAD_MARKER; layout.len];
        fill_columns(g, &layout, |idx, target| col[idx] = target as i32);
        Ok(Self { layout, col })
    }

    pub fn layout(&self) -> &ChunkLayout {
        &self.layout
    }

    pub fn col(&self) -> &[i32] {
        &self.col
    }

    /// `col + cs + cl` cells: `2m + P + 2 n_c`.
    pub fn storage_cells(&self) -> usize {
        self.col.len() + 2 * self.layout.n_chunks()
    }

    /// Neighbors of permuted row `row`, in permuted numbering.
    pub fn row_entries(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        let chunk = row / self.layout.c;
        let lane = row % self.layout.c;
        (0..self.layout.cl[chunk]).filter_map(move |k| {
            let c = self.col[self.layout.index(chunk, lane, k)];
            (c != PAD_MARKER).then_some(c as usize)
        })
    }

    /// Redirects every edge cell to the next vertex. Only useful for
    /// exercising verification failure paths. Returns false if nothing changed.
    #[doc(hidden)]
    pub fn inject_fault(&mut self) -> bool {
        let n = self.layout.n as i32;
        if n < 2 {
            return false;
        }
        let mut changed = false;
        for c in self.col.iter_mut().filter(|c| **c != PAD_MARKER) {
            *c = (*c + 1) % n;
            changed = true;
        }
        changed
    }
}

/// Neighbors in original vertex numbering, decoded from the chunked layout.
impl Adjacency for SlimSellRepr {
    fn vertex_count(&self) -> usize {
        self.layout.n
    }

    fn for_each_neighbor(&self, v: usize, mut f: impl FnMut(usize)) {
        let plan = &self.layout.plan;
        for u in self.row_entries(plan.inv_perm[v] as usize) {
            f(plan.perm[u] as usize);
        }
    }
}

/// Sell-C-σ with explicit semiring values. Padding cells hold column 0 and
/// the semiring's padding value.
#[derive(Debug, Clone)]
pub struct SellCSigma<S: Semiring> {
    layout: ChunkLayout,
    col: Vec<u32>,
    val: Vec<S::Scalar>,
}

impl<S: Semiring> SellCSigma<S> {
    pub fn build(g: &Graph, c: usize, sigma: usize, semiring: &S) -> Result<Self> {
        let layout = ChunkLayout::build(g, c, sigma)?;
        let mut col = vec![0u32; layout.len];
        let mut val = vec![semiring.pad_value(); layout.len];
        let edge = semiring.edge_value();
        fill_columns(g, &layout, |idx, target| {
            col[idx] = target;
            val[idx] = edge;
        });
        Ok(Self { layout, col, val })
    }

    pub fn layout(&self) -> &ChunkLayout {
        &self.layout
    }

    pub fn col(&self) -> &[u32] {
        &self.col
    }

    pub fn val(&self) -> &[S::Scalar] {
        &self.val
    }

    /// `val + col + cs + cl` cells: `2 (2m + P) + 2 n_c`.
    pub fn storage_cells(&self) -> usize {
        self.val.len() + self.col.len() + 2 * self.layout.n_chunks()
    }
}

/// Calls `place(flat_index, permuted_neighbor)` for every nonzero.
fn fill_columns(g: &Graph, layout: &ChunkLayout, mut place: impl FnMut(usize, u32)) {
    let plan = &layout.plan;
    let mut row_buf = Vec::new();
    for (pos, &v) in plan.perm.iter().enumerate() {
        row_buf.clear();
        row_buf.extend(
            g.neighbors(v as usize)
                .iter()
                .map(|&u| plan.inv_perm[u as usize]),
        );
        row_buf.sort_unstable();
        let (chunk, lane) = (pos / layout.c, pos % layout.c);
        for (k, &target) in row_buf.iter().enumerate() {
            place(layout.index(chunk, lane, k), target);
        }
    }
}
