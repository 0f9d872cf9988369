//! Criterion benchmarks for `symword-core`; see `benches/`.
