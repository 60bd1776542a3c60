//! Criterion benchmarks for `fock-core`; see `benches/`.
