use std::fmt;

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` of exact rationals known to contain some
/// real quantity, described by `target`.
///
/// Arithmetic on enclosures is exact interval arithmetic; producers that
/// need bounded endpoint sizes call [`RealEnclosure::round_outward`], which
/// only ever widens the interval.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "Bounds")]
pub struct RealEnclosure {
    lo: Rational,
    hi: Rational,
    #[serde(skip)]
    target: String,
}

/// Equality compares the endpoints only, never the label.
impl PartialEq for RealEnclosure {
    fn eq(&self, other: &Self) -> bool {
        self.lo == other.lo && self.hi == other.hi
    }
}

impl Eq for RealEnclosure {}

#[derive(Deserialize)]
struct Bounds {
    lo: Rational,
    hi: Rational,
}

impl TryFrom<Bounds> for RealEnclosure {
    type Error = Error;
    fn try_from(b: Bounds) -> Result<Self> {
        RealEnclosure::new(b.lo, b.hi)
    }
}

impl RealEnclosure {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(RealEnclosure { lo, hi, target: String::new() })
    }

    pub fn point(v: Rational) -> Self {
        RealEnclosure { lo: v.clone(), hi: v, target: String::new() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::point(Rational::from(v))
    }

    pub(crate) fn from_bounds_unchecked(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        RealEnclosure { lo, hi, target: String::new() }
    }

    pub fn labeled(mut self, target: impl Into<String>) -> Self {
        self.target = target.into();
        self
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) * Rational::new(1, 2).expect("non-zero")
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_subset_of(&self, other: &RealEnclosure) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersects(&self, other: &RealEnclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Largest absolute value over the interval.
    pub fn mag(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value over the interval (zero if it straddles zero).
    pub fn mig(&self) -> Rational {
        if self.contains_zero() {
            Rational::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn hull(&self, other: &RealEnclosure) -> RealEnclosure {
        RealEnclosure::from_bounds_unchecked(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
        )
    }

    /// Outward rounding of both endpoints to dyadic rationals carrying
    /// `bits` significant bits.
    pub fn round_outward(&self, bits: u32) -> RealEnclosure {
        let shift = |v: &Rational| bits as i64 - 1 - v.floor_log2().unwrap_or(0);
        let lo = if self.lo.is_zero() { Rational::zero() } else { self.lo.floor_dyadic(shift(&self.lo)) };
        let hi = if self.hi.is_zero() { Rational::zero() } else { self.hi.ceil_dyadic(shift(&self.hi)) };
        RealEnclosure { lo, hi, target: self.target.clone() }
    }

    pub fn add(&self, rhs: &RealEnclosure) -> RealEnclosure {
        RealEnclosure::from_bounds_unchecked(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }

    pub fn sub(&self, rhs: &RealEnclosure) -> RealEnclosure {
        RealEnclosure::from_bounds_unchecked(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }

    pub fn neg(&self) -> RealEnclosure {
        RealEnclosure::from_bounds_unchecked(-&self.hi, -&self.lo)
    }

    pub fn mul(&self, rhs: &RealEnclosure) -> RealEnclosure {
        if !self.lo.is_negative() && !rhs.lo.is_negative() {
            return RealEnclosure::from_bounds_unchecked(&self.lo * &rhs.lo, &self.hi * &rhs.hi);
        }
        let products = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let lo = products.iter().min().cloned().expect("four products");
        let hi = products.iter().max().cloned().expect("four products");
        RealEnclosure::from_bounds_unchecked(lo, hi)
    }

    pub fn scale(&self, k: &Rational) -> RealEnclosure {
        if k.is_negative() {
            RealEnclosure::from_bounds_unchecked(&self.hi * k, &self.lo * k)
        } else {
            RealEnclosure::from_bounds_unchecked(&self.lo * k, &self.hi * k)
        }
    }

    pub fn add_exact(&self, k: &Rational) -> RealEnclosure {
        RealEnclosure::from_bounds_unchecked(&self.lo + k, &self.hi + k)
    }

    pub fn recip(&self) -> Result<RealEnclosure> {
        if self.contains_zero() {
            return Err(Error::Domain(format!("reciprocal of an interval containing zero: {self}")));
        }
        Ok(RealEnclosure::from_bounds_unchecked(self.hi.recip()?, self.lo.recip()?))
    }

    pub fn div(&self, rhs: &RealEnclosure) -> Result<RealEnclosure> {
        Ok(self.mul(&rhs.recip()?))
    }

    /// Integer power by repeated squaring, rounding outward to `bits` after
    /// every multiplication.
    pub fn powi_rounded(&self, exp: u32, bits: u32) -> RealEnclosure {
        if exp == 0 {
            return RealEnclosure::point(Rational::one());
        }
        // even powers of a sign-straddling interval start at zero
        if exp.is_multiple_of(2) && self.contains_zero() {
            let m = self.mag();
            let top = RealEnclosure::point(m).powi_rounded(exp, bits);
            return RealEnclosure::from_bounds_unchecked(Rational::zero(), top.hi);
        }
        if self.hi.is_negative() {
            let p = self.neg().powi_rounded(exp, bits);
            return if exp.is_multiple_of(2) { p } else { p.neg() };
        }
        let mut base = self.clone();
        let mut acc = RealEnclosure::point(Rational::one());
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).round_outward(bits);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).round_outward(bits);
            }
        }
        acc
    }
}

impl fmt::Display for RealEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for RealEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.target.is_empty() {
            write!(f, "[{} ~ {:e}, {} ~ {:e}]", self.lo, self.lo.to_f64(), self.hi, self.hi.to_f64())
        } else {
            write!(f, "{}: [{:e}, {:e}]", self.target, self.lo.to_f64(), self.hi.to_f64())
        }
    }
}
