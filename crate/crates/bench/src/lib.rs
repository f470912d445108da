//! Criterion benchmarks for `schwarz-gap-core`; see `benches/`.
