//! Projection-free convex optimization with lazy conditional gradient sliding.
//!
//! The crate is organised bottom-up:
//!
//! - [`region`]: feasible sets with exact linear minimization oracles.
//! - [`oracle`]: the weak separation oracle and its vertex cache.
//! - [`lcg`]: the parameter-free lazy conditional gradient inner solver.
//! - [`schedule`]: step, accuracy and batch schedules.
//! - [`objective`]: least squares, l1 distance and smoothed saddle objectives.
//! - [`solver`]: accelerated outer loops plus the SCGS and OFW baselines.
//! - [`bench`]: instance generation, experiment orchestration and summaries.
//! - [`acceptance`]: the end-to-end checks run by `lazy-sliding verify`.

pub mod acceptance;
pub mod bench;
pub mod error;
pub mod lcg;
pub mod linalg;
pub mod objective;
pub mod oracle;
pub mod region;
pub mod rng;
pub mod schedule;
pub mod solver;

pub use error::{Error, Result};
