//! Exact rational arithmetic and certified real enclosures.

mod compare;
mod enclosure;
mod fixed;
mod precision;
mod rational;
mod transcendental;

pub use compare::{certified_compare, compare_refining, Comparison, Refined};
pub use enclosure::RealEnclosure;
pub use precision::Precision;
pub use rational::Rational;
pub use transcendental::{enclose_exp, enclose_log, enclose_pi, enclose_sqrt, isqrt};
