//! Criterion benchmarks for the kernels in `kdyn-core`; see `benches/`.
