//! File formats, JSON run reports, the `solve` pipeline and the benchmark
//! harness behind the `multicut` binary.

pub mod bench;
pub mod error;
pub mod format;
pub mod pipeline;
pub mod report;
