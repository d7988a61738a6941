//! Convex segment disjointness graphs.
//!
//! `D_n` has one vertex per chord of `n` points in convex position, with
//! chords adjacent when they are disjoint. This crate builds `D_n`, produces
//! the optimal `(n - k)`-coloring from explicit staircase paths, and carries
//! the machinery to check the chromatic formula independently: thrackle
//! structure, the common-edge argument, union edge bounds and exact
//! branch-and-bound oracles.

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod coloring;
pub mod convex;
pub mod error;
pub mod geometry;
pub mod io;
pub mod oracle;
pub mod thrackle;

pub use error::{Error, Result};

/// Clockwise position of a point on the convex set, `1..=n`.
pub type PointLabel = u32;

/// Exact coordinates used by the geometric cross-check.
pub type ExactPoint = geometry::Point<num_rational::Ratio<i64>>;
pub type FloatPoint = geometry::Point<f64>;

/// Interval block over the index type used for path indices.
pub type Block = arith::IntervalBlock<PointLabel>;
