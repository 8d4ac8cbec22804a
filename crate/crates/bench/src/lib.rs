//! Benchmarks for pelem-core live under benches/.
