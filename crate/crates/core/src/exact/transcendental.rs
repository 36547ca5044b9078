//! Certified enclosures of `ln`, `exp`, `pi` and square roots.
//!
//! Every function works in two layers. A kernel evaluates a truncated series
//! in interval arithmetic at some working precision, adding an explicit
//! remainder bound, so its result always contains the true value. The public
//! wrapper then snaps that inner enclosure outward onto a dyadic grid whose
//! spacing depends only on the requested precision and on a fixed magnitude
//! estimate of the target. Because the grid for `p + 1` bits refines the grid
//! for `p` bits and the padding shrinks with it, enclosures at higher
//! precision are always subsets of those at lower precision.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use super::enclosure::RealEnclosure;
use super::fixed::Fixed;
use super::precision::Precision;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Precision used only to estimate the binary exponent of a target.
const MAGNITUDE_PROBE_BITS: u32 = 64;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("non-zero denominator")
}

/// `sum t^(2j+1)/(2j+1)` for `|t| <= 1/3` at `w` fractional bits, with the
/// tail bounded by `|t|^(2N+1) / ((2N+1)(1 - t^2)) <= 9/8 |t|^(2N+1)/(2N+1)`.
fn atanh_series(t: &Rational, w: u32) -> Fixed {
    debug_assert!(t.abs() <= rat(1, 3));
    let x = Fixed::from_rational(t, w);
    if x.is_zero_point() && t.is_zero() {
        return x;
    }
    let t2 = x.mul(&x);
    let mut power = x.clone();
    let mut sum = x;
    let mut j: i64 = 1;
    loop {
        power = power.mul(&t2);
        let n = 2 * j + 1;
        // ceil(9 |power| / (8 n)) units
        let tail = (power.mag_units() * 9u32 + BigInt::from(8 * n - 1)) / BigInt::from(8 * n);
        if tail <= BigInt::one() {
            return sum.pad(&tail);
        }
        sum = sum.add(&power.div_int(n));
        j += 1;
    }
}

/// Alternating series `sum (-1)^j t^(2j+1)/(2j+1)` for `|t| <= 1`; the tail
/// is bounded by the first omitted term.
fn atan_series(t: &Rational, w: u32) -> Fixed {
    let x = Fixed::from_rational(t, w);
    let t2 = x.mul(&x);
    let mut power = x.clone();
    let mut sum = x;
    let mut j: i64 = 1;
    loop {
        power = power.mul(&t2);
        let term = power.div_int(2 * j + 1);
        let tail = term.mag_units();
        if tail <= BigInt::one() {
            return sum.pad(&tail);
        }
        sum = if j % 2 == 1 { sum.sub(&term) } else { sum.add(&term) };
        j += 1;
    }
}

fn log_inner(x: &Rational, w: u32) -> RealEnclosure {
    let mut k = x.floor_log2().expect("x > 0");
    let mut m = x * &Rational::pow2(-k);
    if m > rat(4, 3) {
        m = m * rat(1, 2);
        k += 1;
    }
    // m in (2/3, 4/3], so |t| <= 1/5
    let t = (&m - &Rational::one()) / (&m + &Rational::one());
    let k_bits = 64 - k.unsigned_abs().leading_zeros();
    let wk = w + k_bits + 8;
    let ln_m = atanh_series(&t, wk).scale(2);
    if k == 0 {
        return ln_m.to_enclosure();
    }
    let ln2 = atanh_series(&rat(1, 3), wk).scale(2);
    ln2.scale(k).add(&ln_m).to_enclosure()
}

fn exp_inner(x: &Rational, w: u32) -> RealEnclosure {
    if x.is_zero() {
        return RealEnclosure::point(Rational::one());
    }
    // halve until |r| < 1/2, then square back
    let squarings = (x.floor_log2().expect("non-zero") + 2).max(0) as u32;
    let r = x * &Rational::pow2(-(squarings as i64));
    // squaring doubles the relative error, and e^r may be tiny for very
    // negative x, so carry extra bits for both effects
    let w2 = w + 2 * squarings + 16;
    let r_fx = Fixed::from_rational(&r, w2);
    let mut term = Fixed::from_int(1, w2);
    let mut sum = term.clone();
    let mut k: i64 = 1;
    loop {
        term = term.mul(&r_fx).div_int(k);
        // |r| <= 1/2 makes the omitted terms a geometric tail <= 2|term|
        let tail = term.mag_units() * 2u32;
        if tail <= BigInt::from(2) {
            sum = sum.pad(&tail);
            break;
        }
        sum = sum.add(&term);
        k += 1;
    }
    let mut acc = sum.to_enclosure();
    let bits = w2 + 8;
    for _ in 0..squarings {
        acc = acc.mul(&acc).round_outward(bits);
    }
    acc
}

fn pi_inner(w: u32) -> RealEnclosure {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let a = atan_series(&rat(1, 5), w + 8).scale(16);
    let b = atan_series(&rat(1, 239), w + 8).scale(4);
    a.sub(&b).to_enclosure()
}

/// Evaluates `kernel` with increasing guard bits until its enclosure is at
/// most `2^-(bits+1-exp)` wide, then pads it outward onto that grid.
fn snapped(bits: u32, exp: i64, kernel: impl Fn(u32) -> RealEnclosure) -> RealEnclosure {
    let grid = bits as i64 + 1 - exp;
    let target_width = Rational::pow2(-grid);
    let mut guard = 24u32;
    let inner = loop {
        let w = (bits as i64 + guard as i64 - exp.min(0)).max(16) as u32;
        let inner = kernel(w);
        if inner.width() <= target_width {
            break inner;
        }
        guard += 32;
    };
    let pad = Rational::pow2(1 - grid);
    RealEnclosure::from_bounds_unchecked(
        inner.lo().floor_dyadic(grid) - &pad,
        inner.hi().ceil_dyadic(grid) + &pad,
    )
}

/// Certified enclosure of `ln x` for `x > 0`.
///
/// The width is at most `2^(2 - bits) * max(1, |ln x|)`, and raising the
/// precision always yields a sub-interval.
pub fn enclose_log(x: &Rational, p: Precision) -> Result<RealEnclosure> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("logarithm of non-positive value {x}")));
    }
    let label = format!("ln({x})");
    if *x == Rational::one() {
        return Ok(RealEnclosure::point(Rational::zero()).labeled(label));
    }
    let probe = log_inner(x, MAGNITUDE_PROBE_BITS);
    let exp = probe.mig().max(Rational::one()).floor_log2().expect("non-zero");
    Ok(snapped(p.bits(), exp, |w| log_inner(x, w)).labeled(label))
}

/// Certified enclosure of `e^x`, relative width at most `2^(2 - bits)`.
pub fn enclose_exp(x: &Rational, p: Precision) -> RealEnclosure {
    let label = format!("exp({x})");
    if x.is_zero() {
        return RealEnclosure::point(Rational::one()).labeled(label);
    }
    let probe = exp_inner(x, MAGNITUDE_PROBE_BITS);
    let exp = probe.lo().floor_log2().expect("exp is positive");
    snapped(p.bits(), exp, |w| exp_inner(x, w)).labeled(label)
}

/// Certified enclosure of pi, width at most `2^(2 - bits)`.
pub fn enclose_pi(p: Precision) -> RealEnclosure {
    snapped(p.bits(), 0, pi_inner).labeled("pi")
}

/// Floor square root by Newton iteration, with the result bracketed by an
/// explicit `r^2 <= n < (r+1)^2` check.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    // start above the root: 2^ceil(bits/2) >= sqrt(n)
    let mut x = BigUint::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    while &x * &x > *n {
        x -= 1u32;
    }
    while (&x + 1u32) * (&x + 1u32) <= *n {
        x += 1u32;
    }
    x
}

fn floor_sqrt_scaled(q: &Rational, grid: i64) -> BigInt {
    // floor(sqrt(q) * 2^grid) = isqrt(floor(q * 4^grid))
    let scaled = (q.floor_dyadic(2 * grid) * Rational::pow2(2 * grid)).floor();
    BigInt::from_biguint(Sign::Plus, isqrt(scaled.magnitude()))
}

fn ceil_sqrt_scaled(q: &Rational, grid: i64) -> BigInt {
    // ceil(sqrt(y)) = isqrt(ceil(y) - 1) + 1 for y > 0
    let n = (q.ceil_dyadic(2 * grid) * Rational::pow2(2 * grid)).ceil();
    let m: BigInt = n - 1;
    BigInt::from_biguint(Sign::Plus, isqrt(m.magnitude())) + 1
}

fn sqrt_grid(q: &Rational, bits: u32) -> i64 {
    let e = q.clone().max(Rational::one()).floor_log2().expect("non-zero") / 2;
    bits as i64 + 1 - e
}

/// Certified enclosure of `sqrt(x)` for `x >= 0`: the tightest pair of
/// multiples of `2^-grid` around the root, so precision refinement nests.
pub fn enclose_sqrt(x: &Rational, p: Precision) -> Result<RealEnclosure> {
    if x.is_negative() {
        return Err(Error::Domain(format!("square root of negative value {x}")));
    }
    let label = format!("sqrt({x})");
    if x.is_zero() {
        return Ok(RealEnclosure::point(Rational::zero()).labeled(label));
    }
    let grid = sqrt_grid(x, p.bits());
    let scale = Rational::pow2(-grid);
    let lo = Rational::from(floor_sqrt_scaled(x, grid)) * &scale;
    let hi = Rational::from(ceil_sqrt_scaled(x, grid)) * &scale;
    debug_assert!(&lo * &lo <= *x && *x <= &hi * &hi);
    Ok(RealEnclosure::from_bounds_unchecked(lo, hi).labeled(label))
}

impl RealEnclosure {
    /// Enclosure of `ln` over the whole interval (monotone image).
    pub fn ln(&self, p: Precision) -> Result<RealEnclosure> {
        if !self.lo().is_positive() {
            return Err(Error::Domain(format!("logarithm of interval {self} reaching non-positive values")));
        }
        let lo = enclose_log(self.lo(), p)?;
        let hi = if self.lo() == self.hi() { lo.clone() } else { enclose_log(self.hi(), p)? };
        Ok(RealEnclosure::from_bounds_unchecked(lo.lo().clone(), hi.hi().clone()))
    }

    /// Enclosure of `exp` over the whole interval.
    pub fn exp(&self, p: Precision) -> RealEnclosure {
        let lo = enclose_exp(self.lo(), p);
        let hi = if self.lo() == self.hi() { lo.clone() } else { enclose_exp(self.hi(), p) };
        RealEnclosure::from_bounds_unchecked(lo.lo().clone(), hi.hi().clone())
    }

    /// Enclosure of the square root over a non-negative interval.
    pub fn sqrt(&self, p: Precision) -> Result<RealEnclosure> {
        if self.lo().is_negative() {
            return Err(Error::Domain(format!("square root of interval {self} reaching negative values")));
        }
        let lo = enclose_sqrt(self.lo(), p)?;
        let hi = if self.lo() == self.hi() { lo.clone() } else { enclose_sqrt(self.hi(), p)? };
        Ok(RealEnclosure::from_bounds_unchecked(lo.lo().clone(), hi.hi().clone()))
    }

    /// `x^(3/2)` as the square root of the cube.
    pub fn pow_three_halves(&self, p: Precision) -> Result<RealEnclosure> {
        self.powi_rounded(3, p.bits() + 8).sqrt(p)
    }
}
