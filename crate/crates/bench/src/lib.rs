//! Criterion benchmarks for the SlimSell kernel and BFS variants. Run with
//! `cargo bench -p slimsell-bench`.
