//! Criterion benchmarks for `gl2_cayley`; see `benches/`.
