//! Criterion benchmarks for `ternopt-core`; see `benches/`.
