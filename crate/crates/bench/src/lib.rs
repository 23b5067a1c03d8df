//! Benchmark fixtures; the benches live in `benches/`.
