//! Benchmarks for the engine; run with `cargo bench -p twofib-bench`.
