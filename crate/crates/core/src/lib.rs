//! Maximum weighted independent set (MWIS) heuristics for arbitrary graphs.
//!
//! The solver decomposes a graph into pieces that embed as induced subgraphs
//! of a unit-disk lattice, solves each piece with a pluggable backend, and
//! stitches the partial solutions together with a beam search.
//!
//! - [`graph`]: weighted graphs, instance generators, neighborhood algebra
//! - [`lattice`]: triangular, square and king atom layouts
//! - [`gls`]: greedy lattice subgraph mapping
//! - [`beam`]: recursive decomposition with a beam of branches
//! - [`subsolvers`]: exact, greedy, simulated annealing and quantum backends
//! - [`rydberg`]: dense state-vector emulator of a Rydberg atom register

pub mod beam;
pub mod error;
pub mod gls;
pub mod graph;
pub mod lattice;
pub mod rydberg;
pub mod seed;
pub mod subsolvers;

pub use beam::{solve_mwis, BeamConfig, BeamRun, Branch};
pub use error::{Error, Result};
pub use gls::{gls_map, GlsOptions, LatticeMapping, RankingPolicy};
pub use graph::{optimality_gap, GapValue, InducedSubgraph, VertexSet, WeightedGraph};
pub use lattice::{LatticeKind, LatticeLayout};
pub use subsolvers::{SolverOutcome, SubSolver, SubSolverRequest};
