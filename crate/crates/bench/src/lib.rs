//! Criterion benchmarks for `gkm-core`; run with `cargo bench -p gkm-bench`.
