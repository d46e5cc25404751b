//! Flow-based balanced graph bisection, node separators and nested-dissection
//! contraction orders.
//!
//! The cutting loop keeps growing a source and a target set. Between two
//! augmentations it emits a minimum cut and pierces it, so every terminal
//! pair yields a sequence of ever more balanced cuts. Running many random
//! pairs and keeping the non-dominated results gives a Pareto set of cut size
//! against imbalance.

pub mod bisection;
pub mod error;
pub mod flow;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod ordering;
pub mod piercing;
pub mod separator;

#[cfg(test)]
mod testutil;

pub use bisection::{enumerate_cuts, pareto_cuts, run_multi, Cut, MultiRunConfig, ParetoPoint, ParetoSet};
pub use error::{Error, Result};
pub use graph::UndirectedGraph;
pub use metrics::{evaluate_order, MetricsReport, SearchSpaceMode};
pub use ordering::{compute_order, ContractionOrder, OrderConfig, Provenance};
pub use separator::{enumerate_separators, pareto_separators, separator_pareto, Separator};
