//! Reference implementations used only by tests. They share no code with
//! the library: each evaluates its target in plain fixed point with a
//! stated error bound, or enumerates by brute force.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use isoheight::{Rational, RealEnclosure};

/// An approximation `value` with `|true - value| <= err`.
#[derive(Debug, Clone)]
pub struct Approx {
    pub value: Rational,
    pub err: Rational,
}

impl Approx {
    /// Whether the enclosure can contain the true value: it must meet
    /// `[value - err, value + err]`.
    pub fn compatible_with(&self, e: &RealEnclosure) -> bool {
        e.lo() <= &(&self.value + &self.err) && &(&self.value - &self.err) <= e.hi()
    }
}

fn from_fixed(x: &BigInt, w: u32) -> Rational {
    Rational::from(x.clone()) * Rational::pow2(-(w as i64))
}

fn to_fixed(q: &Rational, w: u32) -> BigInt {
    (q * &Rational::pow2(w as i64)).floor()
}

/// `pi` by the Bailey-Borwein-Plouffe series at `w` fractional bits.
pub fn pi_bbp(w: u32) -> Approx {
    let f = w + 32;
    let one = BigInt::one() << f;
    let mut sum = BigInt::zero();
    let mut k: i64 = 0;
    loop {
        let scale = &one >> (4 * k as u32);
        if scale.is_zero() {
            break;
        }
        let term = (&scale * 4) / (8 * k + 1) - (&scale * 2) / (8 * k + 4) - &scale / (8 * k + 5) - &scale / (8 * k + 6);
        sum += term;
        k += 1;
    }
    // each of the ~f/4 terms truncates by at most 4 units; the tail is below one unit
    Approx { value: from_fixed(&sum, f), err: Rational::pow2(-(w as i64)) }
}

/// `ln 2 = sum 1/(j 2^j)` at `f` fractional bits, as a fixed-point integer.
fn ln2_fixed(f: u32) -> BigInt {
    let one = BigInt::one() << f;
    let mut sum = BigInt::zero();
    for j in 1..=(f as i64 + 8) {
        sum += (&one >> j as u32) / j;
    }
    sum
}

/// `ln x` for `x > 0`: scale into `[1, 2)` by powers of two, then read the
/// binary digits of `log2` by repeated squaring.
pub fn ln_bits(x: &Rational, w: u32) -> Approx {
    assert!(x.is_positive());
    let mut k: i64 = 0;
    let mut m = x.clone();
    let two = Rational::from(2);
    while m >= two {
        m = &m / &two;
        k += 1;
    }
    while m < Rational::one() {
        m = &m * &two;
        k -= 1;
    }
    // squaring doubles the relative error each round; 2w + 64 bits absorb w rounds
    let f = 2 * w + 64;
    let one = BigInt::one() << f;
    let two_f = BigInt::from(2) << f;
    let mut y = to_fixed(&m, f);
    let mut log2_frac = BigInt::zero();
    for i in 1..=(w + 16) {
        y = (&y * &y) >> f;
        if y >= two_f {
            y >>= 1;
            log2_frac += &one >> i;
        }
    }
    let ln2 = ln2_fixed(f);
    let log2 = (BigInt::from(k) << f) + log2_frac;
    let value = (&log2 * &ln2) >> f;
    let err = Rational::pow2(-(w as i64)) * Rational::from(k.unsigned_abs() + 2);
    Approx { value: from_fixed(&value, f), err }
}

/// `exp x` by Taylor series after halving the argument below `2^-8`,
/// followed by repeated squaring. The error bound is relative.
pub fn exp_taylor(x: &Rational, w: u32) -> Approx {
    if x.is_negative() {
        // a relative error r on exp(-x) becomes at most 2r on its reciprocal
        let pos = exp_taylor(&-x, w + 1);
        let value = pos.value.recip().expect("exp is positive");
        let err = &value * &Rational::pow2(-(w as i64));
        return Approx { value, err };
    }
    let mut s = 0u32;
    let mut y = x.clone();
    let limit = Rational::pow2(-8);
    while y.abs() > limit {
        y = &y / &Rational::from(2);
        s += 1;
    }
    let f = w + 2 * s + 64;
    let one = BigInt::one() << f;
    let yf = to_fixed(&y, f);
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut n = 1i64;
    loop {
        term = ((&term * &yf) >> f) / n;
        if term.is_zero() {
            break;
        }
        sum += &term;
        n += 1;
    }
    for _ in 0..s {
        sum = (&sum * &sum) >> f;
    }
    let value = from_fixed(&sum, f);
    let err = value.abs() * Rational::pow2(-(w as i64));
    Approx { value, err }
}

/// `sqrt x` for `x >= 0` from the exact integer square root of `x 4^w`.
pub fn sqrt_isqrt(x: &Rational, w: u32) -> Approx {
    assert!(!x.is_negative());
    let scaled = (x * &Rational::pow2(2 * w as i64)).floor();
    let r: BigUint = num_integer::Roots::sqrt(scaled.magnitude());
    Approx { value: from_fixed(&BigInt::from(r), w), err: Rational::pow2(-(w as i64)) }
}

// ---------------------------------------------------------------------------
// dessins

pub fn all_permutations(d: usize) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Vec<u32>>) {
        let d = used.len();
        if prefix.len() == d {
            out.push(prefix.clone());
            return;
        }
        for v in 0..d {
            if !used[v] {
                used[v] = true;
                prefix.push(v as u32 + 1);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

fn transitive(a: &[u32], b: &[u32]) -> bool {
    let d = a.len();
    let mut seen = vec![false; d];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in [a[i] as usize - 1, b[i] as usize - 1] {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// `tau sigma tau^-1` on 1-based image arrays.
fn conj(sigma: &[u32], tau: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; sigma.len()];
    for i in 0..sigma.len() {
        out[tau[i] as usize - 1] = tau[sigma[i] as usize - 1];
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OracleDessin {
    pub s0: Vec<u32>,
    pub s1: Vec<u32>,
    pub aut: u64,
}

/// Every transitive pair in `S_d x S_d`, reduced to the lexicographically
/// smallest conjugate over all of `S_d`; returns the classes and the number
/// of transitive labeled pairs.
pub fn brute_force_dessins(d: usize) -> (BTreeSet<OracleDessin>, u64) {
    let perms = all_permutations(d);
    let mut classes: BTreeMap<(Vec<u32>, Vec<u32>), u64> = BTreeMap::new();
    let mut labeled = 0u64;
    for a in &perms {
        for b in &perms {
            if !transitive(a, b) {
                continue;
            }
            labeled += 1;
            let mut best: Option<(Vec<u32>, Vec<u32>)> = None;
            let mut stabilizer = 0u64;
            for t in &perms {
                let c = (conj(a, t), conj(b, t));
                if &c.0 == a && &c.1 == b {
                    stabilizer += 1;
                }
                if best.as_ref().is_none_or(|bst| c < *bst) {
                    best = Some(c);
                }
            }
            classes.insert(best.expect("S_d is non-empty"), stabilizer);
        }
    }
    let set = classes.into_iter().map(|((s0, s1), aut)| OracleDessin { s0, s1, aut }).collect();
    (set, labeled)
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}
