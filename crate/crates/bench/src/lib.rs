//! Benchmarks for the analysis pipeline live in `benches/`.
