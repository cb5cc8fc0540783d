//! On-line coloring of bipartite graphs without long induced paths.
//!
//! [`engines`] holds the three-palette colorer and the First-Fit and
//! component-based baselines, [`forcing`] the `X_k` family and adaptive
//! adversaries, and [`analysis`] the checks run on finished games.

pub mod analysis;
pub mod engines;
pub mod error;
pub mod forcing;
pub mod generate;
pub mod graph;
pub mod suite;
pub mod transcript;

pub use error::{Error, Result};
