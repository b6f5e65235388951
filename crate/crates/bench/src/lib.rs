//! Criterion benchmarks for `crsf-core`; run with `cargo bench -p crsf-bench`.
