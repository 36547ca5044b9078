//! Euler characteristics of curves and orbifold signatures.

mod search;
mod signature;

pub use search::{
    min_abs_euler_hyperbolic, min_abs_euler_hyperbolic_with, realizations, search_stratum,
    search_stratum_with, Method, MinimumCertificate, StratumRecord, StratumSearch,
};
pub use signature::{
    cone_correction, curve_euler, etale_cover_euler, is_hyperbolic, orbifold_euler,
    riemann_hurwitz_cover_check, CurveSignature, OrbifoldSignature,
};
