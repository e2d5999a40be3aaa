//! Criterion benchmarks for the zetaphase kernels live in `benches/`.
