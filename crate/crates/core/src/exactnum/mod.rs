//! Arbitrary-precision integer, rational, Gaussian-rational and fixed-point
//! decimal arithmetic.
//!
//! Integers are `num_bigint::BigInt`. Everything built on top of them is
//! kept canonical: rationals are always reduced with a positive denominator,
//! so structural equality is numeric equality.

mod fixed;
mod gaussian;
mod prims;
mod rational;

pub use fixed::FixedDecimal;
pub use gaussian::{GaussianInteger, GaussianRational};
pub use prims::{decimal_floor, gauss_pow, isqrt, log10_abs, rational_floor, sqrt_fixed};
pub use rational::Rational;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

/// Signed arbitrary-precision integer.
pub type Integer = BigInt;

/// `10^n` as an unsigned big integer.
pub fn pow10(n: u32) -> BigUint {
    BigUint::from(10u32).pow(n)
}

/// Number of decimal digits of `|x|` (zero has one digit).
///
/// Uses the bit length to guess the count and one power-of-ten comparison
/// to settle it, so it stays cheap for integers with hundreds of thousands
/// of digits.
pub fn digit_count(x: &BigInt) -> u64 {
    let mag = x.magnitude();
    if mag.is_zero() {
        return 1;
    }
    let bits = mag.bits();
    // floor((bits - 1) * log10(2)) + 1 is either exact or one short.
    let guess = ((bits - 1) as f64 * core::f64::consts::LOG10_2) as u64 + 1;
    let guess = guess.max(1);
    if *mag >= pow10(guess as u32) {
        guess + 1
    } else if guess > 1 && *mag < pow10(guess as u32 - 1) {
        guess - 1
    } else {
        guess
    }
}

/// The first `n` decimal digits of `|x|` (all of them if it has fewer).
pub fn leading_digits(x: &BigInt, n: u64) -> alloc::string::String {
    let d = digit_count(x);
    let mag = x.magnitude();
    let head = if d > n {
        mag / pow10((d - n) as u32)
    } else {
        mag.clone()
    };
    alloc::string::ToString::to_string(&head)
}

/// The last `n` decimal digits of `|x|`, zero-padded (all of them if it has fewer).
pub fn trailing_digits(x: &BigInt, n: u64) -> alloc::string::String {
    let d = digit_count(x);
    let mag = x.magnitude();
    if d <= n {
        return alloc::string::ToString::to_string(mag);
    }
    let tail = mag % pow10(n as u32);
    alloc::format!("{tail:0>width$}", width = n as usize)
}

/// Greatest common divisor tuned for the lopsided operands that dominate
/// this crate: one side huge, the other a few words.
pub(crate) fn gcd(a: &BigUint, b: &BigUint) -> BigUint {
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    if small.is_zero() {
        return big.clone();
    }
    if small.is_one() {
        return BigUint::one();
    }
    let r = big % small;
    if r.is_zero() {
        return small.clone();
    }
    if let (Some(mut x), Some(mut y)) = (small.to_u128(), r.to_u128()) {
        while y != 0 {
            let t = x % y;
            x = y;
            y = t;
        }
        return BigUint::from(x);
    }
    num_integer::Integer::gcd(small, &r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn digit_count_boundaries() {
        for n in 0..60u32 {
            let p = BigInt::from(pow10(n));
            assert_eq!(digit_count(&p), n as u64 + 1, "10^{n}");
            if n > 0 {
                assert_eq!(digit_count(&(&p - 1)), n as u64, "10^{n}-1");
                assert_eq!(digit_count(&(1 - &p)), n as u64);
            }
        }
        assert_eq!(digit_count(&BigInt::zero()), 1);
    }

    #[test]
    fn digit_count_matches_string_length() {
        let x: BigInt = "98765432109876543210987654321".parse().unwrap();
        let big = x.pow(37);
        assert_eq!(digit_count(&big), big.to_string().len() as u64);
    }

    #[test]
    fn digit_ends() {
        let x: BigInt = "-12345000000000000000000067890".parse().unwrap();
        assert_eq!(leading_digits(&x, 5), "12345");
        assert_eq!(trailing_digits(&x, 7), "0067890");
        assert_eq!(leading_digits(&BigInt::from(42), 5), "42");
        assert_eq!(trailing_digits(&BigInt::from(42), 5), "42");
    }

    #[test]
    fn gcd_lopsided_and_balanced() {
        let a = BigUint::from(2u32).pow(300) * 3u32 * 7u32;
        assert_eq!(gcd(&a, &BigUint::from(21u32)), BigUint::from(21u32));
        assert_eq!(gcd(&BigUint::from(21u32), &a), BigUint::from(21u32));
        let b = BigUint::from(2u32).pow(200) * 5u32;
        assert_eq!(gcd(&a, &b), BigUint::from(2u32).pow(200));
        assert_eq!(gcd(&a, &BigUint::zero()), a);
    }
}
