//! Criterion benchmarks for the mudiv core; see `benches/`.
