use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
///
/// Serializes as the canonical string `"p/q"`; integers render as `"p/1"`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Rational(BigRational);

impl Ord for Rational {
    /// Cross-multiplication; the derived order of `BigRational` recurses
    /// once per continued-fraction term and can exhaust the stack.
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        if a.denom() == b.denom() {
            return a.numer().cmp(b.numer());
        }
        match a.numer().sign().cmp(&b.numer().sign()) {
            Ordering::Equal => (a.numer() * b.denom()).cmp(&(b.numer() * a.denom())),
            unequal => unequal,
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// `numer / denom`, reduced. Fails on a zero denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let d = denom.into();
        if d.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numer.into(), d)))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    /// Exact integer power; negative exponents require a non-zero base.
    pub fn pow(&self, exp: i32) -> Result<Self> {
        if exp < 0 && self.is_zero() {
            return Err(Error::Domain("negative power of zero".into()));
        }
        Ok(Rational(num_traits::Pow::pow(&self.0, exp)))
    }

    /// Exact power with an unsigned exponent (never fails).
    pub fn powu(&self, exp: u32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn ceil(&self) -> BigInt {
        let (q, r) = self.0.numer().div_mod_floor(self.0.denom());
        if r.is_zero() {
            q
        } else {
            q + 1
        }
    }

    /// The integer value, if this rational is integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    /// `floor(log2 |self|)` computed exactly. `None` for zero.
    pub fn floor_log2(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let n = self.0.numer().magnitude();
        let d = self.0.denom().magnitude();
        let mut e = n.bits() as i64 - d.bits() as i64;
        // 2^e <= |n/d| < 2^(e+1) after at most one adjustment
        let (lhs, rhs) = if e >= 0 {
            (n.clone(), d << (e as usize))
        } else {
            (n << ((-e) as usize), d.clone())
        };
        if lhs < rhs {
            e -= 1;
        }
        Some(e)
    }

    /// Largest multiple of `2^-shift` that is `<= self`.
    pub fn floor_dyadic(&self, shift: i64) -> Self {
        Self::scaled_round(self, shift, false)
    }

    /// Smallest multiple of `2^-shift` that is `>= self`.
    pub fn ceil_dyadic(&self, shift: i64) -> Self {
        Self::scaled_round(self, shift, true)
    }

    fn scaled_round(&self, shift: i64, up: bool) -> Self {
        let (n, d) = (self.0.numer(), self.0.denom());
        let (num, den) = if shift >= 0 {
            (n << (shift as usize), d.clone())
        } else {
            (n.clone(), d << ((-shift) as usize))
        };
        let (q, r) = num.div_mod_floor(&den);
        let q = if up && !r.is_zero() { q + 1 } else { q };
        if shift >= 0 {
            Rational(BigRational::new(q, BigInt::one() << (shift as usize)))
        } else {
            Rational(BigRational::from_integer(q << ((-shift) as usize)))
        }
    }

    /// `2^k` for any signed `k`.
    pub fn pow2(k: i64) -> Self {
        if k >= 0 {
            Rational::from_integer(BigInt::one() << (k as usize))
        } else {
            Rational(BigRational::new(BigInt::one(), BigInt::one() << ((-k) as usize)))
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering with `sig` significant digits, e.g. `2.68435456e346`.
    /// Rounds half away from zero in the last digit.
    pub fn to_scientific(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let a = self.0.abs();
        let ten = BigInt::from(10u32);
        // estimate the decimal exponent from digit counts, then correct it
        let nd = a.numer().to_string().len() as i64;
        let dd = a.denom().to_string().len() as i64;
        let mut e10 = nd - dd;
        let pow10 = |k: i64| -> BigRational {
            if k >= 0 {
                BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
            } else {
                BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
            }
        };
        // normalise so that 10^e10 <= a < 10^(e10+1)
        let below = |k: i64| Rational(a.clone()) < Rational(pow10(k));
        while below(e10) {
            e10 -= 1;
        }
        while !below(e10 + 1) {
            e10 += 1;
        }
        let scaled = &a / pow10(e10 - (sig as i64 - 1));
        let mut digits = (scaled + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
        if digits >= num_traits::pow(ten.clone(), sig) {
            digits /= &ten;
            e10 += 1;
        }
        let s = digits.to_string();
        let (head, tail) = s.split_at(1);
        let tail = tail.trim_end_matches('0');
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(head);
        if !tail.is_empty() {
            out.push('.');
            out.push_str(tail);
        }
        if e10 != 0 {
            out.push_str(&format!("e{e10}"));
        }
        out
    }

    pub fn signum(&self) -> Ordering {
        self.0.numer().sign().cmp(&Sign::NoSign)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
        };
        match s.split_once('/') {
            Some((p, q)) => Rational::new(parse_int(p)?, parse_int(q)?),
            None => Ok(Rational::from_integer(parse_int(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(v: $t) -> Self {
                Rational::from_integer(BigInt::from(v))
            }
        }
    )*};
}
from_prim!(i32, i64, i128, u32, u64, u128, usize);

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational((&self.0).$m(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
// Division panics on a zero divisor, like the integer operators; use
// `checked_div` where the divisor is not known to be non-zero.
binop!(Div, div);

impl Rational {
    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(self / rhs)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn ordering_of_huge_nearby_values() {
        // close dyadic and non-dyadic values with long continued fractions
        let a = Rational::pow2(-40_000) * Rational::from(3);
        let b = &a + &(Rational::pow2(-80_000) / Rational::from(7));
        assert!(a < b && b > a);
        assert_eq!(a.cmp(&a.clone()), Ordering::Equal);
        assert!(-&b < -&a);
        assert!(Rational::from(-1) < Rational::zero());
    }

    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_are_canonical() {
        assert_eq!(q("6/4").to_string(), "3/2");
        assert_eq!(q("-6/-4").to_string(), "3/2");
        assert_eq!(q("2/-4").to_string(), "-1/2");
        assert_eq!(q("7").to_string(), "7/1");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
    }

    #[test]
    fn floor_log2_is_exact() {
        assert_eq!(q("1").floor_log2(), Some(0));
        assert_eq!(q("2").floor_log2(), Some(1));
        assert_eq!(q("3").floor_log2(), Some(1));
        assert_eq!(q("1/2").floor_log2(), Some(-1));
        assert_eq!(q("3/4").floor_log2(), Some(-1));
        assert_eq!(q("-5/16").floor_log2(), Some(-2));
        assert_eq!(q("0").floor_log2(), None);
    }

    #[test]
    fn dyadic_rounding_brackets() {
        let x = q("1/3");
        let lo = x.floor_dyadic(10);
        let hi = x.ceil_dyadic(10);
        assert!(lo <= x && x <= hi);
        assert_eq!(&hi - &lo, Rational::pow2(-10));
        let y = q("5/4");
        assert_eq!(y.floor_dyadic(2), y);
        assert_eq!(y.ceil_dyadic(2), y);
        assert_eq!(q("-1/3").floor_dyadic(0), q("-1"));
        assert_eq!(q("1000").floor_dyadic(-3), q("1000"));
        assert_eq!(q("1001").ceil_dyadic(-3), q("1008"));
    }

    #[test]
    fn scientific_rendering() {
        let v = Rational::from_integer(num_traits::pow(BigInt::from(10), 338)) * Rational::pow2(28);
        assert_eq!(v.to_scientific(9), "2.68435456e346");
        assert_eq!(q("1/42").to_scientific(4), "2.381e-2");
        assert_eq!(q("-1/6").to_scientific(3), "-1.67e-1");
        assert_eq!(q("999/1000").to_scientific(2), "1e0".replace("e0", ""));
        assert_eq!(q("1").to_scientific(5), "1");
    }

    #[test]
    fn ceil_and_floor() {
        assert_eq!(q("7/2").floor(), BigInt::from(3));
        assert_eq!(q("7/2").ceil(), BigInt::from(4));
        assert_eq!(q("-7/2").floor(), BigInt::from(-4));
        assert_eq!(q("-7/2").ceil(), BigInt::from(-3));
        assert_eq!(q("4").ceil(), BigInt::from(4));
    }
}
