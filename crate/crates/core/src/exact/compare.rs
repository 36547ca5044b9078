use serde::{Deserialize, Serialize};

use super::enclosure::RealEnclosure;
use super::precision::Precision;
use crate::error::Result;

/// Outcome of comparing two enclosures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Comparison {
    Less,
    Greater,
    Unknown,
}

/// `Less` iff `a.hi < b.lo`, `Greater` iff `a.lo > b.hi`, otherwise
/// `Unknown` (the intervals overlap).
pub fn certified_compare(a: &RealEnclosure, b: &RealEnclosure) -> Comparison {
    if a.hi() < b.lo() {
        Comparison::Less
    } else if a.lo() > b.hi() {
        Comparison::Greater
    } else {
        Comparison::Unknown
    }
}

/// Result of a refinement loop: the decided comparison and the precision
/// at which it was decided (or the cap, for `Unknown`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refined {
    pub outcome: Comparison,
    pub precision: Precision,
    pub lhs: RealEnclosure,
    pub rhs: RealEnclosure,
}

/// Re-evaluates both sides at doubling precision, starting at `start`,
/// until the comparison is decided or the cap is passed.
pub fn compare_refining<F>(start: Precision, mut sides: F) -> Result<Refined>
where
    F: FnMut(Precision) -> Result<(RealEnclosure, RealEnclosure)>,
{
    let mut last = None;
    for p in start.refinements() {
        let (lhs, rhs) = sides(p)?;
        let outcome = certified_compare(&lhs, &rhs);
        let done = outcome != Comparison::Unknown;
        last = Some(Refined { outcome, precision: p, lhs, rhs });
        if done {
            break;
        }
    }
    Ok(last.expect("refinement ladder is never empty"))
}
