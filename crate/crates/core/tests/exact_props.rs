mod common;

use proptest::prelude::*;

use common::{exp_taylor, ln_bits, pi_bbp, sqrt_isqrt, Approx};
use isoheight::exact::{enclose_exp, enclose_log, enclose_pi, enclose_sqrt};
use isoheight::{Precision, Rational, RealEnclosure};

fn rational(lo: i64, hi: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (lo..=hi, 1..=max_den).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=1_000_000_000, 1i64..=1_000_000).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn precision() -> impl Strategy<Value = Precision> {
    (16u32..=256).prop_map(|b| Precision::new(b).unwrap())
}

fn interval() -> impl Strategy<Value = (RealEnclosure, Rational)> {
    (rational(-1000, 1000, 97), rational(0, 1000, 97), 0u32..=16).prop_map(|(lo, w, t)| {
        let hi = &lo + &w;
        // a point inside, at fraction t/16 of the width
        let x = &lo + &(&w * &Rational::new(t as i64, 16).unwrap());
        (RealEnclosure::new(lo, hi).unwrap(), x)
    })
}

/// Width at most `2^-(bits - slack)` relative to `max(1, |v|)`.
fn tight(e: &RealEnclosure, v: &Rational, p: Precision, slack: i64) -> bool {
    let scale = if v.abs() > Rational::one() { v.abs() } else { Rational::one() };
    e.width() <= scale * Rational::pow2(slack - p.bits() as i64)
}

fn check(e: &RealEnclosure, oracle: &Approx) -> Result<(), TestCaseError> {
    prop_assert!(
        oracle.compatible_with(e),
        "enclosure {} misses reference {} (+/- {})",
        e,
        oracle.value.to_scientific(30),
        oracle.err.to_scientific(3)
    );
    Ok(())
}

fn doubled(p: Precision) -> Precision {
    Precision::new(p.bits() * 2).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn addition_and_multiplication_are_commutative_and_associative(
        a in rational(-1_000_000, 1_000_000, 1000),
        b in rational(-1_000_000, 1_000_000, 1000),
        c in rational(-1_000_000, 1_000_000, 1000),
    ) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(
        a in rational(-1_000_000, 1_000_000, 1000),
        b in rational(-1_000_000, 1_000_000, 1000),
        c in rational(-1_000_000, 1_000_000, 1000),
    ) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn identities_and_inverses(a in rational(-1_000_000, 1_000_000, 1000)) {
        prop_assert_eq!(&a + &Rational::zero(), a.clone());
        prop_assert_eq!(&a * &Rational::one(), a.clone());
        prop_assert_eq!(&a - &a, Rational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), Rational::one());
        } else {
            prop_assert!(a.recip().is_err());
        }
    }

    #[test]
    fn text_round_trip(a in rational(-1_000_000_000, 1_000_000_000, 1_000_000)) {
        let back: Rational = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a.clone());
        let json: Rational = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(json, a);
    }

    #[test]
    fn interval_operations_contain_pointwise_results((a, x) in interval(), (b, y) in interval()) {
        prop_assert!(a.add(&b).contains(&(&x + &y)));
        prop_assert!(a.sub(&b).contains(&(&x - &y)));
        prop_assert!(a.mul(&b).contains(&(&x * &y)));
        if !b.contains_zero() {
            prop_assert!(a.div(&b).unwrap().contains(&(&x / &y)));
        }
        prop_assert!(a.powi_rounded(3, 64).contains(&x.powu(3)));
        prop_assert!(a.round_outward(20).contains(&x));
    }

    #[test]
    fn interval_operations_are_inclusion_monotone((a, x) in interval(), (b, _) in interval()) {
        // the point interval {x} is a subset of a
        let px = RealEnclosure::point(x);
        prop_assert!(px.add(&b).is_subset_of(&a.add(&b)));
        prop_assert!(px.mul(&b).is_subset_of(&a.mul(&b)));
        prop_assert!(px.sub(&b).is_subset_of(&a.sub(&b)));
        prop_assert!(a.is_subset_of(&a.hull(&b)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn log_contains_reference_and_nests(x in positive_rational(), p in precision()) {
        let e = enclose_log(&x, p).unwrap();
        check(&e, &ln_bits(&x, 4 * p.bits()))?;
        prop_assert!(enclose_log(&x, doubled(p)).unwrap().is_subset_of(&e));
        prop_assert!(tight(&e, &ln_bits(&x, 64).value, p, 8));
    }

    #[test]
    fn exp_contains_reference_and_nests(x in (-60_000i64..=60_000, 1000i64..=100_000), p in precision()) {
        let x = Rational::new(x.0, x.1).unwrap();
        let e = enclose_exp(&x, p);
        let oracle = exp_taylor(&x, 4 * p.bits());
        check(&e, &oracle)?;
        prop_assert!(enclose_exp(&x, doubled(p)).is_subset_of(&e));
        prop_assert!(tight(&e, &oracle.value, p, 8));
        prop_assert!(e.lo().is_positive());
    }

    #[test]
    fn pi_contains_reference_and_nests(p in precision()) {
        let e = enclose_pi(p);
        check(&e, &pi_bbp(4 * p.bits()))?;
        prop_assert!(enclose_pi(doubled(p)).is_subset_of(&e));
        prop_assert!(tight(&e, &Rational::from(3), p, 8));
    }

    #[test]
    fn sqrt_contains_reference_and_nests(x in (0i64..=1_000_000_000, 1i64..=1_000_000), p in precision()) {
        let x = Rational::new(x.0, x.1).unwrap();
        let e = enclose_sqrt(&x, p).unwrap();
        let oracle = sqrt_isqrt(&x, 4 * p.bits());
        check(&e, &oracle)?;
        prop_assert!(enclose_sqrt(&x, doubled(p)).unwrap().is_subset_of(&e));
        prop_assert!(tight(&e, &oracle.value, p, 8));
    }
}

#[test]
fn oracles_agree_with_known_digits() {
    // pi = 3.14159265358979323846264338327950288...
    let pi = pi_bbp(200);
    let digits: Rational = "314159265358979323846264338327950288/100000000000000000000000000000000000".parse().unwrap();
    assert!((&pi.value - &digits).abs() < Rational::pow2(-110));
    // ln 10 = 2.30258509299404568401799145468436420...
    let ln10 = ln_bits(&Rational::from(10), 200);
    let digits: Rational = "230258509299404568401799145468436420/100000000000000000000000000000000000".parse().unwrap();
    assert!((&ln10.value - &digits).abs() < Rational::pow2(-110));
    // e = 2.71828182845904523536028747135266249...
    let e = exp_taylor(&Rational::one(), 200);
    let digits: Rational = "271828182845904523536028747135266249/100000000000000000000000000000000000".parse().unwrap();
    assert!((&e.value - &digits).abs() < Rational::pow2(-110));
    let s = sqrt_isqrt(&Rational::from(2), 200);
    assert!((&s.value * &s.value - Rational::from(2)).abs() < Rational::pow2(-190));
}
