//! Benchmarks for the format readers and writers; see `benches/`.
