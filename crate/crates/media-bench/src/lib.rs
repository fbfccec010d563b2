//! Benchmark-only crate; see `benches/algorithms.rs`.
