//! Fixed-point interval arithmetic for the series kernels: an interval
//! `[lo, hi] * 2^-w` of big integers with directed rounding on every
//! operation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::enclosure::RealEnclosure;
use super::rational::Rational;

#[derive(Debug, Clone)]
pub(crate) struct Fixed {
    lo: BigInt,
    hi: BigInt,
    w: u32,
}

fn shr_floor(x: &BigInt, w: u32) -> BigInt {
    // BigInt shifts round toward negative infinity
    x >> w
}

fn shr_ceil(x: &BigInt, w: u32) -> BigInt {
    -((-x) >> w)
}

impl Fixed {
    pub(crate) fn from_rational(q: &Rational, w: u32) -> Self {
        let scaled = q * &Rational::pow2(w as i64);
        Fixed { lo: scaled.floor(), hi: scaled.ceil(), w }
    }

    pub(crate) fn from_int(k: i64, w: u32) -> Self {
        let v = BigInt::from(k) << w;
        Fixed { lo: v.clone(), hi: v, w }
    }

    pub(crate) fn add(&self, o: &Fixed) -> Fixed {
        debug_assert_eq!(self.w, o.w);
        Fixed { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, w: self.w }
    }

    pub(crate) fn sub(&self, o: &Fixed) -> Fixed {
        debug_assert_eq!(self.w, o.w);
        Fixed { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo, w: self.w }
    }

    pub(crate) fn mul(&self, o: &Fixed) -> Fixed {
        debug_assert_eq!(self.w, o.w);
        let (lo, hi) = if !self.lo.is_negative() && !o.lo.is_negative() {
            (&self.lo * &o.lo, &self.hi * &o.hi)
        } else {
            let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
            (p.iter().min().cloned().expect("four"), p.iter().max().cloned().expect("four"))
        };
        Fixed { lo: shr_floor(&lo, self.w), hi: shr_ceil(&hi, self.w), w: self.w }
    }

    /// Multiplication by a (possibly negative) integer.
    pub(crate) fn scale(&self, k: i64) -> Fixed {
        let k = BigInt::from(k);
        let (a, b) = (&self.lo * &k, &self.hi * &k);
        if k.is_negative() {
            Fixed { lo: b, hi: a, w: self.w }
        } else {
            Fixed { lo: a, hi: b, w: self.w }
        }
    }

    /// Division by a positive integer.
    pub(crate) fn div_int(&self, k: i64) -> Fixed {
        debug_assert!(k > 0);
        let k = BigInt::from(k);
        Fixed { lo: self.lo.div_floor(&k), hi: self.hi.div_ceil(&k), w: self.w }
    }

    /// Widens by `units * 2^-w` on both sides.
    pub(crate) fn pad(&self, units: &BigInt) -> Fixed {
        Fixed { lo: &self.lo - units, hi: &self.hi + units, w: self.w }
    }

    /// Largest absolute value, in units of `2^-w`.
    pub(crate) fn mag_units(&self) -> BigInt {
        self.lo.abs().max(self.hi.abs())
    }

    pub(crate) fn is_zero_point(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub(crate) fn to_enclosure(&self) -> RealEnclosure {
        let s = Rational::pow2(-(self.w as i64));
        RealEnclosure::from_bounds_unchecked(Rational::from(self.lo.clone()) * &s, Rational::from(self.hi.clone()) * &s)
    }
}
