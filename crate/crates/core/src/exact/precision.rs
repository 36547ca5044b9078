use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Working precision, in bits, for dyadic endpoint rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Precision(u32);

impl Precision {
    pub const MIN_BITS: u32 = 8;
    /// Starting precision for every certification loop.
    pub const DEFAULT: Precision = Precision(128);
    /// Refinement stops here; comparisons still undecided report UNKNOWN.
    pub const CAP: Precision = Precision(4096);

    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::InvalidInput(format!(
                "precision must be at least {} bits, got {bits}",
                Self::MIN_BITS
            )));
        }
        Ok(Precision(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Twice the precision, or `None` past the refinement cap.
    pub fn doubled(self) -> Option<Precision> {
        let next = self.0.checked_mul(2)?;
        (next <= Self::CAP.0).then_some(Precision(next))
    }

    /// `DEFAULT, 2*DEFAULT, ...` starting at `self`, up to and including the cap.
    pub fn refinements(self) -> impl Iterator<Item = Precision> {
        std::iter::successors(Some(self), |p| p.doubled())
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DEFAULT
    }
}

impl TryFrom<u32> for Precision {
    type Error = Error;
    fn try_from(bits: u32) -> Result<Self> {
        Precision::new(bits)
    }
}

impl From<Precision> for u32 {
    fn from(p: Precision) -> u32 {
        p.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_tiny_precision() {
        assert!(Precision::new(7).is_err());
        assert_eq!(Precision::new(8).unwrap().bits(), 8);
    }

    #[test]
    fn refinement_ladder_stops_at_cap() {
        let ladder: Vec<u32> = Precision::DEFAULT.refinements().map(Precision::bits).collect();
        assert_eq!(ladder, vec![128, 256, 512, 1024, 2048, 4096]);
        assert_eq!(Precision::CAP.doubled(), None);
    }
}
