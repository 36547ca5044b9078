//! Exact-arithmetic toolkit for effective height bounds on isogenous
//! hyperbolic curves.
//!
//! * [`exact`]: big rationals and certified enclosures of `ln`, `exp`, `pi`, `sqrt`.
//! * [`orbifold`]: Euler characteristics of curves and orbifold signatures,
//!   and the exhaustive search for the smallest hyperbolic `|e|`.
//! * [`dessins`]: census of degree-`d` covers of the thrice-punctured line.
//! * [`bounds`]: the closed-form height and isogeny-degree bounds, plus
//!   replayable inequality certificates.
//! * [`shimizu`]: certified covolume and discriminant-floor evaluation.

pub mod error;
pub mod bounds;
pub mod dessins;
pub mod exact;
pub mod orbifold;
pub mod parallel;
pub mod shimizu;

pub use error::{Error, Result};
pub use exact::{Comparison, Precision, Rational, RealEnclosure};
