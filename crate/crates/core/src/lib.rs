//! Graph burning: exact burning numbers for small graphs, burning schedules
//! within `⌈(−3 + √(24n + 33)) / 4⌉` rounds for any connected graph, and
//! exhaustive checks of the complement product bound `b(G)·b(Ḡ) ≤ n + 4`.

pub mod bounds;
pub mod burn;
pub mod construct;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod gen;
pub mod graph;
pub mod io;
pub mod ng;

pub use bounds::BudgetSet;
pub use burn::{BurnCover, BurnSchedule, BurnTrace, Strictness};
pub use construct::{burn_graph, Construction, GraphBurning};
pub use error::{Error, Result};
pub use exact::{burning_number_exact, BitGraph, ExactConfig, SolveResult};
pub use gen::GenSpec;
pub use graph::{DistanceMetrics, Graph, RootedTree};
