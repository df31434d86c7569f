//! Compress corpora of fixed-size tile-based game levels into 2D projections
//! (PCA, truncated SVD, MCA, t-SNE) and quantify how well each projection
//! preserves level behavior by correlating pairwise projected distances
//! against pairwise behavioral-characteristic differences with Spearman's ρ.
//!
//! The crate is organized around a small pipeline:
//!
//! 1. [`corpus`] — parse level files into validated [`corpus::LevelCorpus`]
//!    values and sample them stratified by source set.
//! 2. [`encode`] — flatten a corpus into categorical or one-hot design
//!    matrices with row↔level provenance.
//! 3. [`dimred`] — the four reducers, each emitting a 2D [`dimred::Projection`].
//! 4. [`metrics`] — per-level behavioral characteristics (empty space,
//!    linearity, enemy count, contiguity).
//! 5. [`correlate`] — pairwise distances vs. BC differences, Spearman's ρ
//!    with p-values, multi-run aggregation.
//! 6. [`report`] — SVG scatter plots, level tile maps, CSV dumps.
//!
//! [`experiment::run_experiment`] orchestrates the whole thing from an
//! [`config::ExperimentConfig`]. See the `examples/` directory for one
//! runnable example per capability.

pub mod config;
pub mod correlate;
pub mod corpus;
pub mod dimred;
pub mod encode;
mod error;
pub mod experiment;
pub mod linalg;
pub mod metrics;
pub mod report;
pub mod synthgen;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
