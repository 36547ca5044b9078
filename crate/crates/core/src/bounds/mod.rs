//! Closed-form height and isogeny-degree bounds, and replayable
//! certificates for the inequality chains that combine them.
//!
//! Euler characteristics are passed with their sign (negative for
//! hyperbolic curves); every bound uses absolute values internally.

mod certificate;
mod expr;
mod replay;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Precision, Rational, RealEnclosure};

pub use certificate::{decide, BoundCertificate, CaseDiscriminator, Relation, Step, StepStatus};
pub use expr::{c, Expr, Quantity};
pub use replay::{
    replay_theorem_certificate, verify_proof_inequalities, verify_proof_inequalities_with, InequalityReport,
    TheoremInputs,
};
pub(crate) use replay::{odlyzko_ratio_step, odlyzko_step};

fn pow10(k: u32) -> Rational {
    Rational::from(10).powu(k)
}

fn pow2(k: u64) -> Rational {
    Rational::pow2(k as i64)
}

/// `|e|` for a hyperbolic Euler characteristic; errors unless `e < 0`.
fn hyperbolic_abs(e: &Rational, name: &str) -> Result<Rational> {
    if e.is_negative() {
        Ok(e.abs())
    } else {
        Err(Error::NonHyperbolic(format!("{name} = {e} must be negative")))
    }
}

fn hyperbolic_integer(e: &Rational, name: &str) -> Result<u64> {
    let a = hyperbolic_abs(e, name)?;
    if !a.is_integer() {
        return Err(Error::InvalidInput(format!("{name} = {e} is not an integer")));
    }
    a.to_integer()
        .and_then(|n| u64::try_from(n).ok())
        .ok_or_else(|| Error::InvalidInput(format!("{name} = {e} is out of range")))
}

fn positive(v: u64, name: &str) -> Result<Rational> {
    if v == 0 {
        Err(Error::InvalidInput(format!("{name} must be at least 1")))
    } else {
        Ok(Rational::from(v))
    }
}

/// Upper bounds for the degrees of the two legs of an isogeny.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsogenyDegreeBounds {
    pub bound_pi_x: Rational,
    pub bound_pi_y: Rational,
}

/// `(42 |e_Y|, 42 |e_X|)`.
pub fn isogeny_degree_bound_nonarithmetic(e_x: &Rational, e_y: &Rational) -> Result<IsogenyDegreeBounds> {
    let ax = hyperbolic_abs(e_x, "e_X")?;
    let ay = hyperbolic_abs(e_y, "e_Y")?;
    Ok(IsogenyDegreeBounds { bound_pi_x: ay * Rational::from(42), bound_pi_y: ax * Rational::from(42) })
}

/// `(10^46 2^(2g+3) |e|, 2^(2g+2))`: degree of a Belyi map on a cover of
/// the compactification, and degree of that cover.
pub fn arithmetic_affine_cover_bounds(g_x: u64, e_x: &Rational) -> Result<(Rational, Rational)> {
    let a = hyperbolic_abs(e_x, "e_X")?;
    Ok((pow10(46) * pow2(2 * g_x + 3) * a, pow2(2 * g_x + 2)))
}

/// `10^48 2^(2g_X+2g_Y) (2g_Y - 2)` and the symmetric bound; genera below 2
/// make the formula vacuous and are rejected.
pub fn arithmetic_projective_isogeny_bounds(g_x: u64, g_y: u64) -> Result<IsogenyDegreeBounds> {
    if g_x < 2 || g_y < 2 {
        return Err(Error::InvalidInput(format!(
            "projective isogeny bounds need both genera >= 2, got {g_x} and {g_y}"
        )));
    }
    let k = pow10(48) * pow2(2 * g_x + 2 * g_y);
    Ok(IsogenyDegreeBounds {
        bound_pi_x: &k * Rational::from(2 * g_y - 2),
        bound_pi_y: &k * Rational::from(2 * g_x - 2),
    })
}

/// `10^9 deg_B^6`.
pub fn belyi_height_bound(deg_b: u64) -> Result<Rational> {
    Ok(pow10(9) * positive(deg_b, "Belyi degree")?.powu(6))
}

/// Belyi degree bound for a finite étale cover: `deg_pi * deg_B`.
pub fn belyi_pullback_bound(deg_b_x: u64, deg_pi: u64) -> Result<Rational> {
    Ok(positive(deg_b_x, "Belyi degree")? * positive(deg_pi, "cover degree")?)
}

/// `10^300 2^(14|e|) |e|^6` for an affine arithmetic curve.
pub fn affine_arithmetic_height_bound(e_x: &Rational) -> Result<Rational> {
    let a = hyperbolic_integer(e_x, "e_X")?;
    Ok(pow10(300) * pow2(14 * a) * Rational::from(a).powu(6))
}

/// `10^338 2^(14|e_X| + 14|e_Y|) (|e_X| |e_Y| deg_B)^6`.
pub fn main_theorem_bound(e_x: &Rational, e_y: &Rational, deg_b_x: u64) -> Result<Rational> {
    let a = hyperbolic_integer(e_x, "e_X")?;
    let b = hyperbolic_integer(e_y, "e_Y")?;
    let d = positive(deg_b_x, "Belyi degree")?;
    Ok(pow10(338) * pow2(14 * a + 14 * b) * (Rational::from(a) * Rational::from(b) * d).powu(6))
}

/// Certified upper bound for a height, with the names of the results used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightBound {
    pub value: RealEnclosure,
    pub provenance: Vec<String>,
}

impl HeightBound {
    pub fn new(value: RealEnclosure, provenance: impl Into<String>) -> Self {
        HeightBound { value, provenance: vec![provenance.into()] }
    }

    pub fn exact(v: Rational, provenance: impl Into<String>) -> Self {
        HeightBound::new(RealEnclosure::point(v), provenance)
    }

    /// Default height input when only a Belyi degree is known.
    pub fn from_belyi_degree(deg_b: u64) -> Result<Self> {
        Ok(HeightBound::exact(belyi_height_bound(deg_b)?, "height bound from the Belyi degree"))
    }

    fn extended(&self, value: RealEnclosure, step: &str) -> Self {
        let mut provenance = self.provenance.clone();
        provenance.push(step.to_string());
        HeightBound { value, provenance }
    }
}

/// `h_X + g_X ln(2 pi deg f)`: height of the target of a finite morphism
/// of degree `deg f` from a genus `g_X` curve.
pub fn dfs_height_bound(h_x: &HeightBound, g_x: u64, deg_f: u64, p: Precision) -> Result<HeightBound> {
    positive(deg_f, "morphism degree")?;
    let term = Expr::Mul(vec![c(g_x), Expr::Mul(vec![Expr::two_pi(), c(deg_f)]).ln()]).eval(p)?;
    Ok(h_x.extended(h_x.value.add(&term.to_enclosure()), "finite-morphism height bound"))
}

/// `h_X + (g_X - g_Y)/2 ln(2 pi) + g_Y ln(deg f)`, the sharper form before
/// the two correction terms are merged.
pub fn dfs_height_bound_sharp(
    h_x: &HeightBound,
    g_x: u64,
    g_y: u64,
    deg_f: u64,
    p: Precision,
) -> Result<HeightBound> {
    positive(deg_f, "morphism degree")?;
    if g_y > g_x {
        return Err(Error::InvalidInput(format!(
            "target genus {g_y} exceeds source genus {g_x} for a finite morphism"
        )));
    }
    let half = Rational::new((g_x - g_y) as i64, 2)?;
    let term = Expr::Add(vec![
        Expr::Mul(vec![Expr::Const(half), Expr::two_pi().ln()]),
        Expr::Mul(vec![c(g_y), c(deg_f).ln()]),
    ])
    .eval(p)?;
    Ok(h_x.extended(h_x.value.add(&term.to_enclosure()), "finite-morphism height bound, sharp form"))
}
