//! SlimSell: a value-free Sell-C-σ layout for unweighted graphs, with BFS
//! expressed as repeated semiring sparse-matrix dense-vector products.
//!
//! The crate covers graph ingestion ([`graph`]), the chunked layouts and
//! their SpMV kernel ([`repr`]), the tropical/real/boolean/sel-max BFS
//! semirings ([`semiring`]), the BFS driver with SlimWork and SlimChunk
//! ([`bfs`]), deterministic synthetic graphs ([`generator`]) and storage /
//! work predictors ([`analysis`]).

pub mod analysis;
pub mod bfs;
pub mod error;
pub mod generator;
pub mod graph;
pub mod repr;
pub mod semiring;

pub use bfs::{
    bfs_spmv, bfs_spmv_with, bfs_traditional, check_parents, BfsOptions, BfsResult, IterationStats,
    Schedule,
};
pub use error::{Error, Result};
pub use graph::{EdgeDirective, Graph, VertexId};
pub use repr::{SellCSigma, SlimSellRepr, SortPlan};
pub use semiring::{BfsSemiring, Semiring, Variant, INF, UNREACHED};
