//! Criterion benchmarks for `sieve-core`; see `benches/`.
