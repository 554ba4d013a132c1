//! Exact integer helpers shared across modules.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut f = 2u64;
    while f * f <= x {
        if x.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

/// Splits a prime power q into (p, m) with q = p^m, or None if q is not one.
pub fn prime_power_split(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut m = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                m += 1;
            }
            return if rest == 1 { Some((p, m)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub fn big_pow(base: u64, exp: u64) -> BigUint {
    BigUint::from(base).pow(exp.try_into().expect("exponent fits u32"))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Largest e with base^e <= x, for x >= 1 and base >= 2.
pub fn floor_log(base: u64, x: &BigUint) -> u64 {
    assert!(base >= 2 && !x.is_zero());
    let mut e = 0u64;
    let mut acc = BigUint::from(base);
    while acc <= *x {
        e += 1;
        acc *= base;
    }
    e
}

/// Smallest e with base^e >= x, for x >= 1 and base >= 2.
pub fn ceil_log(base: u64, x: &BigUint) -> u64 {
    assert!(base >= 2 && !x.is_zero());
    let mut e = 0u64;
    let mut acc = BigUint::one();
    while acc < *x {
        e += 1;
        acc *= base;
    }
    e
}

pub fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    assert!(!b.is_zero());
    (a + b - 1u32) / b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_small() {
        let primes: Vec<u64> = (0..30).filter(|&x| is_prime(x)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn prime_power_splits() {
        assert_eq!(prime_power_split(2), Some((2, 1)));
        assert_eq!(prime_power_split(4), Some((2, 2)));
        assert_eq!(prime_power_split(8), Some((2, 3)));
        assert_eq!(prime_power_split(9), Some((3, 2)));
        assert_eq!(prime_power_split(27), Some((3, 3)));
        assert_eq!(prime_power_split(65536), Some((2, 16)));
        assert_eq!(prime_power_split(1), None);
        assert_eq!(prime_power_split(6), None);
        assert_eq!(prime_power_split(12), None);
        assert_eq!(prime_power_split(100), None);
    }

    #[test]
    fn log_helpers_bracket_their_argument() {
        for base in [2u64, 3, 5, 7, 10] {
            for x in 1u64..=10_000 {
                let big = BigUint::from(x);
                let fl = floor_log(base, &big);
                assert!(big_pow(base, fl) <= big && big < big_pow(base, fl + 1));
                let cl = ceil_log(base, &big);
                assert!(big_pow(base, cl) >= big);
                if cl > 0 {
                    assert!(big_pow(base, cl - 1) < big);
                }
            }
        }
    }

    #[test]
    fn log_helpers_at_large_arguments() {
        let big = BigUint::from(1_000_000_000u64);
        assert_eq!(floor_log(2, &big), 29);
        assert_eq!(ceil_log(2, &big), 30);
        assert_eq!(floor_log(10, &big), 9);
        assert_eq!(ceil_log(10, &big), 9);
    }

    #[test]
    fn binomial_row_sums() {
        let total: BigUint = (0..=10u64).map(|k| binomial(10, k)).sum();
        assert_eq!(total, BigUint::from(1024u32));
        assert_eq!(binomial(9, 2), BigUint::from(36u32));
        assert_eq!(binomial(4, 7), BigUint::zero());
    }

    #[test]
    fn ceil_div_rounds_up() {
        let d = |a: u64, b: u64| ceil_div(&BigUint::from(a), &BigUint::from(b));
        assert_eq!(d(128, 8), BigUint::from(16u32));
        assert_eq!(d(129, 8), BigUint::from(17u32));
        assert_eq!(d(7, 8), BigUint::from(1u32));
    }
}
