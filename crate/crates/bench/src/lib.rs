//! Benchmarks for the `pdmetric` solvers live in `benches/`.
