//! Certified bounds, two-sided enclosures, and extrapolated estimates for
//! the exponential growth rates of power-free languages over 2 to 15 (and
//! more) letters.
//!
//! A language avoiding all fractional powers with period at most `m` is
//! regular and contains the true power-free language, so its growth rate is
//! a certified upper bound. The pipeline builds the weighted factor graph of
//! that approximation (states are allowed words of a fixed length, edges are
//! one-letter shifts), encloses its Perron root by Collatz–Wielandt bounds
//! along a shifted power iteration, and extrapolates series of bounds over
//! growing caps. An exact brute-force counter cross-checks the graphs, and
//! curated reference values pin the regression suite.
//!
//! ```
//! use growthbound_core::{FactorGraph, TaskSpec, spectral_enclosure};
//!
//! // binary words with no cube of a single letter: growth is the golden ratio
//! let task = TaskSpec::new(2, "3".parse().unwrap(), 1).unwrap();
//! let graph = FactorGraph::build(&task).unwrap();
//! let result = spectral_enclosure(&graph, 1e-9, 100_000);
//! assert!(result.enclosure.contains(1.6180339887498949));
//! assert!(result.enclosure.width() <= 1e-9);
//! ```

pub mod checker;
pub mod counting;
pub mod decimal;
pub mod dense_oracle;
pub mod error;
pub mod estimate;
pub mod exponent;
pub mod fixtures;
pub mod graph;
pub mod scc;
pub mod spectral;
pub mod task;
pub mod verify;

pub use counting::{CountSeries, brute_count, fekete_check, graph_count};
pub use error::{Error, Result};
pub use estimate::{
    GrowthRecord, JumpInterval, SeriesOutcome, Truncation, aitken, growth_record, jump_interval,
    record_for_graph, run_series, run_series_with,
};
pub use exponent::{Classification, RationalExponent, classify};
pub use graph::{Edge, FactorGraph, canonical_form};
pub use scc::{SccPartition, scc_decompose};
pub use spectral::{
    DEFAULT_MAX_ITERS, Enclosure, SparseNonneg, SpectralResult, matrix_enclosure,
    spectral_enclosure,
};
pub use task::TaskSpec;
