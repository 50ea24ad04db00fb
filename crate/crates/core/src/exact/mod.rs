//! Exact rational scalars and the canonical closed-interval-set algebra.

mod interval;
mod rational;

pub use interval::{Interval, IntervalSet};
pub use rational::Rational;
