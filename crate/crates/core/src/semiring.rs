//! The four BFS semirings and their per-iteration frontier logic.
//!
//! [`Semiring`] carries the scalar algebra used by the SpMV kernels. The
//! [`BfsSemiring`] extension adds everything the BFS driver needs on top of a
//! raw product: state initialization, frontier post-processing, the SlimWork
//! skip predicate and the convergence test.
//!
//! All vectors handled here live in the permuted row space of a chunked
//! representation and have length `n_padded`; only the first `n` rows are
//! real vertices.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Adjacency;

/// Saturating "infinity" for distances and the tropical semiring.
pub const INF: u32 = u32::MAX;

/// Parent entry for vertices the BFS never reached.
pub const UNREACHED: u32 = u32::MAX;

/// Scalar algebra of a semiring `(X, plus, times, zero, one)`.
pub trait Semiring: Send + Sync {
    type Scalar: Copy + PartialEq + fmt::Debug + Send + Sync;

    fn plus(&self, a: Self::Scalar, b: Self::Scalar) -> Self::Scalar;
    fn times(&self, a: Self::Scalar, b: Self::Scalar) -> Self::Scalar;
    fn zero(&self) -> Self::Scalar;
    fn one(&self) -> Self::Scalar;

    /// Value standing in for a structural nonzero of the adjacency matrix.
    fn edge_value(&self) -> Self::Scalar;

    /// Value standing in for a padding cell. Must equal [`Semiring::zero`].
    fn pad_value(&self) -> Self::Scalar {
        self.zero()
    }

    /// Text rendering used by layout dumps.
    fn format_scalar(&self, v: Self::Scalar) -> String {
        format!("{v:?}")
    }
}

/// Semiring variant selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Tropical,
    Real,
    Boolean,
    SelMax,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Tropical,
        Variant::Real,
        Variant::Boolean,
        Variant::SelMax,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Tropical => "tropical",
            Variant::Real => "real",
            Variant::Boolean => "boolean",
            Variant::SelMax => "selmax",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tropical" => Ok(Variant::Tropical),
            "real" => Ok(Variant::Real),
            "boolean" => Ok(Variant::Boolean),
            "selmax" => Ok(Variant::SelMax),
            other => Err(Error::Parameter(format!(
                "unknown semiring `{other}` (expected tropical|real|boolean|selmax)"
            ))),
        }
    }
}

/// `(N ∪ {∞}, min, +, ∞, 0)` with saturating addition.
#[derive(Debug, Clone, Copy, Default)]
pub struct Tropical;

/// `(R, +, ·, 0, 1)` over `f64`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Real;

/// `({0, 1}, or, and, 0, 1)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Boolean;

/// `(N, max, ·, 0, 1)`; vertex indices are carried 1-based so that 0 means unset.
#[derive(Debug, Clone, Copy, Default)]
pub struct SelMax;

impl Semiring for Tropical {
    type Scalar = u32;

    #[inline(always)]
    fn plus(&self, a: u32, b: u32) -> u32 {
        a.min(b)
    }
    #[inline(always)]
    fn times(&self, a: u32, b: u32) -> u32 {
        a.saturating_add(b)
    }
    fn zero(&self) -> u32 {
        INF
    }
    fn one(&self) -> u32 {
        0
    }
    fn edge_value(&self) -> u32 {
        1
    }
    fn format_scalar(&self, v: u32) -> String {
        if v == INF {
            "inf".to_string()
        } else {
            v.to_string()
        }
    }
}

impl Semiring for Real {
    type Scalar = f64;

    #[inline(always)]
    fn plus(&self, a: f64, b: f64) -> f64 {
        a + b
    }
    #[inline(always)]
    fn times(&self, a: f64, b: f64) -> f64 {
        a * b
    }
    fn zero(&self) -> f64 {
        0.0
    }
    fn one(&self) -> f64 {
        1.0
    }
    fn edge_value(&self) -> f64 {
        1.0
    }
}

impl Semiring for Boolean {
    type Scalar = u8;

    #[inline(always)]
    fn plus(&self, a: u8, b: u8) -> u8 {
        a | b
    }
    #[inline(always)]
    fn times(&self, a: u8, b: u8) -> u8 {
        a & b
    }
    fn zero(&self) -> u8 {
        0
    }
    fn one(&self) -> u8 {
        1
    }
    fn edge_value(&self) -> u8 {
        1
    }
}

impl Semiring for SelMax {
    type Scalar = u32;

    #[inline(always)]
    fn plus(&self, a: u32, b: u32) -> u32 {
        a.max(b)
    }
    #[inline(always)]
    fn times(&self, a: u32, b: u32) -> u32 {
        a.saturating_mul(b)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn edge_value(&self) -> u32 {
        1
    }
}

/// Per-iteration BFS state in permuted row space.
///
/// Vectors a variant does not use are left empty: `g` is only populated for
/// boolean/real, `p` only for sel-max.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationState<T> {
    /// Result of the latest product (after variant post-processing).
    pub x: Vec<T>,
    /// Current frontier. Mirrors `x` for the tropical variant.
    pub f: Vec<T>,
    /// Filtering term: nonzero for still-unvisited vertices.
    pub g: Vec<T>,
    /// Parents, 1-based row positions, 0 = unset.
    pub p: Vec<T>,
    /// Distances, [`INF`] when unreached.
    pub d: Vec<u32>,
    /// Iteration index of the last post-processing step.
    pub k: u32,
    /// Number of real (non-padding) rows.
    pub n: usize,
}

/// BFS semantics layered on a semiring.
pub trait BfsSemiring: Semiring {
    fn variant(&self) -> Variant;

    /// State before the first iteration. `root` is a permuted row position.
    fn init_state(
        &self,
        n_padded: usize,
        n: usize,
        root: usize,
    ) -> Result<IterationState<Self::Scalar>>;

    /// The vector multiplied by the adjacency matrix in the next iteration.
    fn product_input<'a>(&self, state: &'a IterationState<Self::Scalar>) -> &'a [Self::Scalar];

    /// Derives the next frontier, distances and auxiliary vectors from the raw
    /// product `out` of iteration `k`. Returns the number of newly reached vertices.
    fn post_process(
        &self,
        state: &mut IterationState<Self::Scalar>,
        out: Vec<Self::Scalar>,
        k: u32,
    ) -> usize;

    /// SlimWork predicate: true when every row in `rows` already holds its
    /// final value, so the product for that chunk can be carried over.
    fn should_skip_chunk(&self, state: &IterationState<Self::Scalar>, rows: Range<usize>) -> bool;

    /// `prev_x` is the state's `x` before the latest post-processing.
    fn is_converged(&self, prev_x: &[Self::Scalar], state: &IterationState<Self::Scalar>) -> bool;

    /// Parents produced natively by the product, as permuted row positions.
    fn native_parents(&self, _state: &IterationState<Self::Scalar>) -> Option<Vec<Option<usize>>> {
        None
    }
}

fn check_root(n: usize, root: usize) -> Result<()> {
    if root >= n {
        return Err(Error::RootRange { root, n });
    }
    Ok(())
}

fn unreached(n_padded: usize, root: usize) -> Vec<u32> {
    let mut d = vec![INF; n_padded];
    d[root] = 0;
    d
}

impl BfsSemiring for Tropical {
    fn variant(&self) -> Variant {
        Variant::Tropical
    }

    fn init_state(&self, n_padded: usize, n: usize, root: usize) -> Result<IterationState<u32>> {
        check_root(n, root)?;
        let x = unreached(n_padded, root);
        Ok(IterationState {
            f: x.clone(),
            d: x.clone(),
            x,
            g: Vec::new(),
            p: Vec::new(),
            k: 0,
            n,
        })
    }

    fn product_input<'a>(&self, state: &'a IterationState<u32>) -> &'a [u32] {
        &state.x
    }

    fn post_process(&self, state: &mut IterationState<u32>, out: Vec<u32>, k: u32) -> usize {
        let newly = out[..state.n]
            .iter()
            .zip(&state.x[..state.n])
            .filter(|(new, old)| new != old)
            .count();
        state.f.copy_from_slice(&out);
        state.d.copy_from_slice(&out);
        state.x = out;
        state.k = k;
        newly
    }

    fn should_skip_chunk(&self, state: &IterationState<u32>, rows: Range<usize>) -> bool {
        !state.f[rows].contains(&INF)
    }

    fn is_converged(&self, prev_x: &[u32], state: &IterationState<u32>) -> bool {
        prev_x == state.x.as_slice()
    }
}

/// Shared boolean/real post-processing: filter the product by `g`, record
/// depths and clear newly reached vertices from the filter.
fn filter_step<T: Copy + PartialEq>(
    state: &mut IterationState<T>,
    out: Vec<T>,
    k: u32,
    zero: T,
    one: T,
) -> usize {
    let mut newly = 0;
    for v in 0..state.n {
        let reached = out[v] != zero && state.g[v] != zero;
        if reached {
            state.f[v] = one;
            state.d[v] = k;
            state.g[v] = zero;
            newly += 1;
        } else {
            state.f[v] = zero;
        }
    }
    state.x = out;
    state.k = k;
    newly
}

fn filter_init<T: Copy>(
    n_padded: usize,
    n: usize,
    root: usize,
    zero: T,
    one: T,
) -> Result<IterationState<T>> {
    check_root(n, root)?;
    let mut f = vec![zero; n_padded];
    f[root] = one;
    let mut g = vec![zero; n_padded];
    g[..n].fill(one);
    g[root] = zero;
    Ok(IterationState {
        x: f.clone(),
        f,
        g,
        p: Vec::new(),
        d: unreached(n_padded, root),
        k: 0,
        n,
    })
}

impl BfsSemiring for Boolean {
    fn variant(&self) -> Variant {
        Variant::Boolean
    }

    fn init_state(&self, n_padded: usize, n: usize, root: usize) -> Result<IterationState<u8>> {
        filter_init(n_padded, n, root, 0, 1)
    }

    fn product_input<'a>(&self, state: &'a IterationState<u8>) -> &'a [u8] {
        &state.f
    }

    fn post_process(&self, state: &mut IterationState<u8>, out: Vec<u8>, k: u32) -> usize {
        filter_step(state, out, k, 0, 1)
    }

    fn should_skip_chunk(&self, state: &IterationState<u8>, rows: Range<usize>) -> bool {
        state.g[rows].iter().all(|&g| g == 0)
    }

    fn is_converged(&self, _prev_x: &[u8], state: &IterationState<u8>) -> bool {
        state.f.iter().all(|&f| f == 0)
    }
}

impl BfsSemiring for Real {
    fn variant(&self) -> Variant {
        Variant::Real
    }

    fn init_state(&self, n_padded: usize, n: usize, root: usize) -> Result<IterationState<f64>> {
        filter_init(n_padded, n, root, 0.0, 1.0)
    }

    fn product_input<'a>(&self, state: &'a IterationState<f64>) -> &'a [f64] {
        &state.f
    }

    // Path counts in `x` are not propagated: the frontier is clamped to {0, 1}.
    fn post_process(&self, state: &mut IterationState<f64>, out: Vec<f64>, k: u32) -> usize {
        filter_step(state, out, k, 0.0, 1.0)
    }

    fn should_skip_chunk(&self, state: &IterationState<f64>, rows: Range<usize>) -> bool {
        state.g[rows].iter().all(|&g| g == 0.0)
    }

    fn is_converged(&self, _prev_x: &[f64], state: &IterationState<f64>) -> bool {
        state.f.iter().all(|&f| f == 0.0)
    }
}

impl BfsSemiring for SelMax {
    fn variant(&self) -> Variant {
        Variant::SelMax
    }

    fn init_state(&self, n_padded: usize, n: usize, root: usize) -> Result<IterationState<u32>> {
        check_root(n, root)?;
        let mut x = vec![0; n_padded];
        x[root] = root as u32 + 1;
        let mut f = vec![0; n_padded];
        f[root] = 1;
        Ok(IterationState {
            p: x.clone(),
            x,
            f,
            g: Vec::new(),
            d: unreached(n_padded, root),
            k: 0,
            n,
        })
    }

    fn product_input<'a>(&self, state: &'a IterationState<u32>) -> &'a [u32] {
        &state.x
    }

    fn post_process(&self, state: &mut IterationState<u32>, mut out: Vec<u32>, k: u32) -> usize {
        let mut newly = 0;
        for v in 0..state.n {
            if state.p[v] == 0 && out[v] != 0 {
                state.p[v] = out[v];
                state.d[v] = k;
                state.f[v] = 1;
                newly += 1;
            } else {
                state.f[v] = 0;
            }
            if out[v] != 0 {
                out[v] = v as u32 + 1;
            }
        }
        state.x = out;
        state.k = k;
        newly
    }

    fn should_skip_chunk(&self, state: &IterationState<u32>, rows: Range<usize>) -> bool {
        state.p[rows].iter().all(|&p| p != 0)
    }

    fn is_converged(&self, _prev_x: &[u32], state: &IterationState<u32>) -> bool {
        state.f.iter().all(|&f| f == 0)
    }

    fn native_parents(&self, state: &IterationState<u32>) -> Option<Vec<Option<usize>>> {
        Some(
            state.p[..state.n]
                .iter()
                .map(|&p| (p != 0).then(|| p as usize - 1))
                .collect(),
        )
    }
}

/// Wraps a semiring and replaces its padding value. Used to check that the
/// verification paths notice a broken kernel configuration.
#[derive(Debug, Clone, Copy)]
pub struct PadOverride<S: Semiring> {
    pub inner: S,
    pub pad: S::Scalar,
}

impl<S: Semiring> Semiring for PadOverride<S> {
    type Scalar = S::Scalar;

    fn plus(&self, a: S::Scalar, b: S::Scalar) -> S::Scalar {
        self.inner.plus(a, b)
    }
    fn times(&self, a: S::Scalar, b: S::Scalar) -> S::Scalar {
        self.inner.times(a, b)
    }
    fn zero(&self) -> S::Scalar {
        self.inner.zero()
    }
    fn one(&self) -> S::Scalar {
        self.inner.one()
    }
    fn edge_value(&self) -> S::Scalar {
        self.inner.edge_value()
    }
    fn pad_value(&self) -> S::Scalar {
        self.pad
    }
    fn format_scalar(&self, v: S::Scalar) -> String {
        self.inner.format_scalar(v)
    }
}

impl<S: BfsSemiring> BfsSemiring for PadOverride<S> {
    fn variant(&self) -> Variant {
        self.inner.variant()
    }
    fn init_state(
        &self,
        n_padded: usize,
        n: usize,
        root: usize,
    ) -> Result<IterationState<S::Scalar>> {
        self.inner.init_state(n_padded, n, root)
    }
    fn product_input<'a>(&self, state: &'a IterationState<S::Scalar>) -> &'a [S::Scalar] {
        self.inner.product_input(state)
    }
    fn post_process(
        &self,
        state: &mut IterationState<S::Scalar>,
        out: Vec<S::Scalar>,
        k: u32,
    ) -> usize {
        self.inner.post_process(state, out, k)
    }
    fn should_skip_chunk(&self, state: &IterationState<S::Scalar>, rows: Range<usize>) -> bool {
        self.inner.should_skip_chunk(state, rows)
    }
    fn is_converged(&self, prev_x: &[S::Scalar], state: &IterationState<S::Scalar>) -> bool {
        self.inner.is_converged(prev_x, state)
    }
    fn native_parents(&self, state: &IterationState<S::Scalar>) -> Option<Vec<Option<usize>>> {
        self.inner.native_parents(state)
    }
}

/// Derives a parent vector from BFS distances: every reached non-root vertex
/// gets its smallest-ID neighbor exactly one level closer to the root.
///
/// The root is the unique vertex at distance 0 and is its own parent;
/// unreached vertices get [`UNREACHED`].
pub fn dp_transform<A: Adjacency>(graph: &A, d: &[u32]) -> Result<Vec<u32>> {
    let n = graph.vertex_count();
    if d.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: d.len(),
        });
    }
    let mut p = vec![UNREACHED; n];
    let mut root = None;
    for v in 0..n {
        match d[v] {
            INF => {}
            0 => {
                if let Some(r) = root {
                    return Err(Error::InconsistentDistances {
                        vertex: v,
                        reason: format!("second vertex at distance 0 (first is {r})"),
                    });
                }
                root = Some(v);
                p[v] = v as u32;
            }
            dv => {
                let mut best: Option<usize> = None;
                graph.for_each_neighbor(v, |w| {
                    if d[w] == dv - 1 && best.is_none_or(|b| w < b) {
                        best = Some(w);
                    }
                });
                match best {
                    Some(w) => p[v] = w as u32,
                    None => {
                        return Err(Error::InconsistentDistances {
                            vertex: v,
                            reason: format!("no neighbor at distance {}", dv - 1),
                        })
                    }
                }
            }
        }
    }
    Ok(p)
}
