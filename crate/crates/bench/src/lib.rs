//! Criterion benchmarks for zkaction; see `benches/`.
