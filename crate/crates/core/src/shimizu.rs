//! Covolume of arithmetic Fuchsian groups from number-field data, the
//! discriminant floor for totally real fields, and consistency checks
//! against orbifold Euler characteristics.
//!
//! Field invariants (degree, discriminant, prime-ideal norms) are inputs;
//! nothing here computes them from a presentation of the field.

use serde::{Deserialize, Serialize};

use crate::bounds::{InequalityReport, Step};
use crate::error::{Error, Result};
use crate::exact::{enclose_exp, enclose_pi, enclose_sqrt, Precision, Rational, RealEnclosure};
use crate::parallel::Execution;

/// Number-field data for the covolume formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFieldData")]
pub struct FieldData {
    /// Degree `[F : Q]`.
    pub n: u32,
    /// Absolute discriminant.
    #[serde(rename = "dF")]
    pub d_f: u64,
    /// Enclosure of `zeta_F(2)`, if known.
    pub zeta2: Option<RealEnclosure>,
    /// Norms of all prime ideals of norm at most `B`, with multiplicity.
    #[serde(default)]
    pub prime_norms: Vec<u64>,
    #[serde(rename = "B", default)]
    pub b: Option<u64>,
    /// Norms of the primes ramified in the quaternion algebra.
    #[serde(default)]
    pub ramified: Vec<u64>,
}

#[derive(Deserialize)]
struct RawFieldData {
    n: u32,
    #[serde(rename = "dF")]
    d_f: u64,
    zeta2: Option<RealEnclosure>,
    #[serde(default)]
    prime_norms: Vec<u64>,
    #[serde(rename = "B", default)]
    b: Option<u64>,
    #[serde(default)]
    ramified: Vec<u64>,
}

impl TryFrom<RawFieldData> for FieldData {
    type Error = Error;
    fn try_from(r: RawFieldData) -> Result<Self> {
        let f = FieldData { n: r.n, d_f: r.d_f, zeta2: r.zeta2, prime_norms: r.prime_norms, b: r.b, ramified: r.ramified };
        f.validate()?;
        Ok(f)
    }
}

impl FieldData {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidInput("field degree must be at least 1".into()));
        }
        if self.d_f == 0 || (self.n >= 2 && self.d_f < 2) {
            return Err(Error::InvalidInput(format!(
                "discriminant {} is impossible for a field of degree {}",
                self.d_f, self.n
            )));
        }
        if let Some(z) = &self.zeta2 {
            if z.hi() < &Rational::one() {
                return Err(Error::InvalidInput(format!("zeta_F(2) enclosure {z} lies below 1")));
            }
        }
        if let Some(&q) = self.ramified.iter().chain(&self.prime_norms).find(|&&q| q < 2) {
            return Err(Error::InvalidInput(format!("prime norm {q} is below 2")));
        }
        Ok(())
    }

    /// The rationals with the split quaternion algebra, carrying a tight
    /// enclosure of `zeta(2) = pi^2 / 6`.
    pub fn rationals(p: Precision) -> FieldData {
        let pi = enclose_pi(p);
        let zeta2 = pi.mul(&pi).scale(&Rational::new(1, 6).expect("non-zero")).round_outward(p.bits() + 8);
        FieldData { n: 1, d_f: 1, zeta2: Some(zeta2), prime_norms: Vec::new(), b: None, ramified: Vec::new() }
    }

    /// Fills `zeta2` from the prime-norm table when it is absent.
    pub fn with_zeta2_from_norms(mut self, p: Precision) -> Result<FieldData> {
        if self.zeta2.is_none() {
            let b = self
                .b
                .ok_or_else(|| Error::InvalidInput("no zeta_F(2) enclosure and no norm bound B".into()))?;
            self.zeta2 = Some(zeta2_enclosure(self.n, &self.prime_norms, b, p)?);
        }
        Ok(self)
    }
}

/// Enclosure `[T, T exp(2n/B)]` of `zeta_F(2)`, with `T` the Euler product
/// over the given prime-ideal norms.
///
/// Correct only if `prime_norms` lists every prime ideal of norm at most
/// `B`. The omitted ideals have norms `m > B` (including inert primes above
/// small rational primes); at most `n` ideals share a norm, so
/// `sum N(p)^-2 <= n sum_{m > B} m^-2 <= n/B`, and
/// `-ln(1 - x) <= 2x` for `x <= 1/2` bounds their product by `exp(2n/B)`.
pub fn zeta2_enclosure(n: u32, prime_norms: &[u64], b: u64, p: Precision) -> Result<RealEnclosure> {
    if b < 2 {
        return Err(Error::InvalidInput(format!("norm bound B = {b} must be at least 2")));
    }
    if prime_norms.is_empty() {
        return Err(Error::InvalidInput("the prime-norm table is empty".into()));
    }
    if let Some(q) = prime_norms.iter().find(|&&q| q < 2) {
        return Err(Error::InvalidInput(format!("prime norm {q} is below 2")));
    }
    let t: Rational = prime_norms
        .iter()
        .map(|&q| {
            let q2 = Rational::from(q).powu(2);
            &q2 / &(&q2 - &Rational::one())
        })
        .product();
    let tail = enclose_exp(&Rational::new(2 * n as i64, b as i64)?, p);
    let hi = tail.scale(&t).round_outward(p.bits() + 8);
    let lo = RealEnclosure::point(t).round_outward(p.bits() + 8);
    Ok(RealEnclosure::new(lo.lo().clone(), hi.hi().clone())?.labeled("zeta_F(2)"))
}

/// `4 d_F^(3/2) zeta_F(2) prod (N(p) - 1) / (2 pi)^(2n)`.
pub fn covolume(f: &FieldData, p: Precision) -> Result<RealEnclosure> {
    f.validate()?;
    let zeta2 = f.zeta2.as_ref().ok_or_else(|| {
        Error::InvalidInput("field data has no zeta_F(2) enclosure; compute one with zeta2_enclosure first".into())
    })?;
    let bits = p.bits() + 16;
    let d = Rational::from(f.d_f);
    let d32 = enclose_sqrt(&d.powu(3), p)?;
    let ramified: Rational = f.ramified.iter().map(|&q| Rational::from(q - 1)).product();
    let two_pi = enclose_pi(p).scale(&Rational::from(2));
    let denom = two_pi.powi_rounded(2 * f.n, bits);
    let num = d32.mul(zeta2).scale(&(ramified * Rational::from(4)));
    Ok(num.div(&denom)?.round_outward(bits).labeled("covolume"))
}

/// `50^n e^-70`, the discriminant floor for totally real fields of degree `n`.
pub fn odlyzko_floor(n: u32, p: Precision) -> RealEnclosure {
    enclose_exp(&Rational::from(-70), p)
        .scale(&Rational::from(50).powu(n))
        .labeled(format!("50^{n} exp(-70)"))
}

/// Certifies `4 (50^n e^-70)^(3/2) / (2 pi)^(2n) > 10^-46` for every
/// `n <= n_max`, together with the growth factor `50^(3/2) > (2 pi)^2`
/// that makes the sequence increasing.
pub fn odlyzko_constant_check(n_max: u64, p: Precision) -> Result<InequalityReport> {
    odlyzko_constant_check_with(n_max, p, Execution::default())
}

pub fn odlyzko_constant_check_with(n_max: u64, p: Precision, exec: Execution) -> Result<InequalityReport> {
    if n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let items: Vec<Option<u64>> = std::iter::once(None).chain((1..=n_max).map(Some)).collect();
    let steps = exec.map(items, |it| match it {
        None => crate::bounds::odlyzko_ratio_step(p),
        Some(n) => crate::bounds::odlyzko_step(n, p),
    });
    Ok(InequalityReport::from_items(steps.into_iter().collect::<Result<Vec<Step>>>()?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Consistency {
    Consistent,
    Inconsistent,
    Unknown,
}

/// Index data relating the covolume to an Euler characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShimizuConsistencyInput {
    pub d1: u64,
    pub d2: u64,
    pub abs_e: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub outcome: Consistency,
    /// Enclosure of `d2 * covolume`.
    pub lhs: RealEnclosure,
    /// `d1 * |e|`.
    pub rhs: Rational,
    pub precision: Precision,
}

/// Compares `d2 * covolume(f)` with `d1 |e|`: consistent when the exact
/// value lies in an enclosure of relative width at most `2^(-bits/2)`,
/// inconsistent when certifiably disjoint, refining precision otherwise.
pub fn shimizu_consistency(f: &FieldData, c: &ShimizuConsistencyInput, p: Precision) -> Result<ConsistencyReport> {
    if c.d1 == 0 || c.d2 == 0 {
        return Err(Error::InvalidInput("indices d1 and d2 must be at least 1".into()));
    }
    if !c.abs_e.is_positive() {
        return Err(Error::InvalidInput(format!("|e| = {} must be positive", c.abs_e)));
    }
    let rhs = Rational::from(c.d1) * &c.abs_e;
    let mut last = None;
    for q in p.refinements() {
        let lhs = covolume(f, q)?.scale(&Rational::from(c.d2));
        let tolerance = &rhs * &Rational::pow2(-(q.bits() as i64) / 2);
        let outcome = if !lhs.contains(&rhs) {
            Consistency::Inconsistent
        } else if lhs.width() <= tolerance {
            Consistency::Consistent
        } else {
            Consistency::Unknown
        };
        last = Some(ConsistencyReport { outcome, lhs, rhs: rhs.clone(), precision: q });
        if outcome != Consistency::Unknown {
            break;
        }
    }
    Ok(last.expect("refinement ladder is never empty"))
}

/// Runs [`shimizu_consistency`] for each input, preserving order.
pub fn shimizu_consistency_batch(
    f: &FieldData,
    inputs: &[ShimizuConsistencyInput],
    p: Precision,
    exec: Execution,
) -> Result<Vec<ConsistencyReport>> {
    exec.map(inputs.iter().collect(), |c| shimizu_consistency(f, c, p)).into_iter().collect()
}
