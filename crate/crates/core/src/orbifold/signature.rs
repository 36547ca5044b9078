use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Genus and number of punctures of a smooth curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveSignature {
    #[serde(rename = "g")]
    pub genus: u64,
    #[serde(rename = "r")]
    pub punctures: u64,
}

impl CurveSignature {
    pub fn new(genus: u64, punctures: u64) -> Self {
        CurveSignature { genus, punctures }
    }

    /// `2 - 2g - r`.
    pub fn euler(&self) -> Rational {
        Rational::from(2i128 - 2 * self.genus as i128 - self.punctures as i128)
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.euler().is_negative()
    }

    /// Recovers the curve with Euler characteristic `euler` and genus
    /// `genus`, if the puncture count comes out non-negative.
    pub fn from_euler(genus: u64, euler: i64) -> Result<Self> {
        let r = 2i128 - 2 * genus as i128 - euler as i128;
        if r < 0 {
            return Err(Error::InvalidInput(format!(
                "no curve of genus {genus} has Euler characteristic {euler}"
            )));
        }
        Ok(CurveSignature::new(genus, r as u64))
    }
}

/// `e(X) = 2 - 2g - r`.
pub fn curve_euler(sig: &CurveSignature) -> Rational {
    sig.euler()
}

/// Genus, punctures and cone orders of an orbifold curve. Cone orders are
/// kept sorted ascending, so equality is multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSignature")]
pub struct OrbifoldSignature {
    #[serde(rename = "g")]
    genus: u64,
    #[serde(rename = "r")]
    punctures: u64,
    cones: Vec<u64>,
}

#[derive(Deserialize)]
struct RawSignature {
    g: u64,
    r: u64,
    #[serde(default)]
    cones: Vec<u64>,
}

impl TryFrom<RawSignature> for OrbifoldSignature {
    type Error = Error;
    fn try_from(raw: RawSignature) -> Result<Self> {
        OrbifoldSignature::new(raw.g, raw.r, raw.cones)
    }
}

impl OrbifoldSignature {
    /// Fails if any cone order is below 2.
    pub fn new(genus: u64, punctures: u64, mut cones: Vec<u64>) -> Result<Self> {
        if let Some(bad) = cones.iter().find(|&&i| i < 2) {
            return Err(Error::InvalidSignature(format!("cone order {bad} is below 2")));
        }
        cones.sort_unstable();
        Ok(OrbifoldSignature { genus, punctures, cones })
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn punctures(&self) -> u64 {
        self.punctures
    }

    pub fn cones(&self) -> &[u64] {
        &self.cones
    }

    /// `2g - 2 + r`, the stratum offset.
    pub fn offset(&self) -> i64 {
        2 * self.genus as i64 - 2 + self.punctures as i64
    }

    /// `2 - 2g - r - sum (i-1)/i`.
    pub fn euler(&self) -> Rational {
        let base = Rational::from(-self.offset());
        base - cone_correction(&self.cones)
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.euler().is_negative()
    }
}

impl From<CurveSignature> for OrbifoldSignature {
    fn from(c: CurveSignature) -> Self {
        OrbifoldSignature { genus: c.genus, punctures: c.punctures, cones: Vec::new() }
    }
}

impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}; {{", self.genus, self.punctures)?;
        for (k, c) in self.cones.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}})")
    }
}

/// `sum (i-1)/i` over the cone orders.
pub fn cone_correction(cones: &[u64]) -> Rational {
    cones
        .iter()
        .map(|&i| Rational::new(i as i64 - 1, i as i64).expect("cone order >= 2"))
        .sum()
}

/// Euler characteristic of an orbifold signature.
pub fn orbifold_euler(sig: &OrbifoldSignature) -> Rational {
    sig.euler()
}

pub fn is_hyperbolic(sig: &OrbifoldSignature) -> bool {
    sig.is_hyperbolic()
}

/// Euler characteristic of a degree-`degree` finite etale cover.
pub fn etale_cover_euler(base_euler: &Rational, degree: u64) -> Result<Rational> {
    if degree < 1 {
        return Err(Error::InvalidInput("cover degree must be at least 1".into()));
    }
    Ok(base_euler * &Rational::from(degree))
}

/// True iff both sides are hyperbolic and `|e(top)| = degree * |e(base)|`.
pub fn riemann_hurwitz_cover_check(top: &CurveSignature, degree: u64, base: &OrbifoldSignature) -> bool {
    if degree < 1 || !top.is_hyperbolic() || !base.is_hyperbolic() {
        return false;
    }
    top.euler().abs() == base.euler().abs() * Rational::from(degree)
}
