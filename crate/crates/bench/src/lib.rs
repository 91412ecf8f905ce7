//! Benchmark harness for the lattice-decomposition MWIS solver: seeded
//! Erdős–Rényi sweeps over several backends, gap aggregation, the
//! largest-subgraph histogram and the layout scoring study.

pub mod aggregate;
pub mod config;
pub mod error;
pub mod output;
pub mod run;
pub mod scoring;

pub use aggregate::{largest_subgraph_histogram, mean_and_sem, summarize, SummaryRow};
pub use config::{Backend, BenchRunConfig, SubKind};
pub use error::{BenchError, Result};
pub use output::write_outputs;
pub use run::{run_benchmark, solve_one, BenchOutput, BenchRecord, Reference, Solved, Timing};
pub use scoring::{lattice_scoring, LayoutScore};
