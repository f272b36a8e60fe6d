use core::f64::consts::{LN_10, LOG10_2};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use super::{pow10, FixedDecimal, GaussianRational, Rational};
use crate::error::{domain, Error, Result};

/// `base^exp` by square-and-multiply; a negative exponent inverts first.
pub fn gauss_pow(base: &GaussianRational, exp: i64) -> Result<GaussianRational> {
    if exp < 0 {
        if base.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(base.recip()?.pow_u64(exp.unsigned_abs()))
    } else {
        Ok(base.pow_u64(exp as u64))
    }
}

/// Greatest integer `≤ x`.
pub fn rational_floor(x: &Rational) -> BigInt {
    x.floor()
}

/// `⌊10^n·x⌋ / 10^n`, reduced.
pub fn decimal_floor(x: &Rational, n: u32) -> Rational {
    FixedDecimal::floor_of(x, n).to_rational()
}

/// `⌊√n⌋` by Newton iteration from above, with a final exactness check.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let mut x = BigUint::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            break;
        }
        x = y;
    }
    while &x * &x > *n {
        x -= 1u32;
    }
    loop {
        let next = &x + 1u32;
        if &next * &next > *n {
            break;
        }
        x = next;
    }
    x
}

/// Certified enclosure `lower ≤ √x ≤ upper` at `digits` decimal places,
/// with `upper − lower ≤ 10^(−digits)` (zero width when `√x` is exact there).
pub fn sqrt_fixed(x: &Rational, digits: u32) -> Result<(FixedDecimal, FixedDecimal)> {
    if x.is_negative() {
        return Err(domain("square root of a negative number"));
    }
    let scaled = x.numer().magnitude() * pow10(2 * digits);
    let (q, r) = scaled.div_rem(x.denom().magnitude());
    let s = isqrt(&q);
    let exact = r.is_zero() && &s * &s == q;
    let lower = FixedDecimal::new(BigInt::from(s.clone()), digits);
    let upper = if exact {
        lower.clone()
    } else {
        FixedDecimal::new(BigInt::from(s + 1u32), digits)
    };
    Ok((lower, upper))
}

/// `a / b` as `(mantissa, exponent)` with mantissa in `[1, 2]` and
/// `a / b ≈ mantissa · 2^exponent`, from the leading 64 quotient bits.
fn ratio_parts(a: &BigUint, b: &BigUint) -> (f64, i64) {
    let k = 64 - (a.bits() as i64 - b.bits() as i64);
    let q = if k >= 0 {
        (a << k as u64) / b
    } else {
        a / (b << (-k) as u64)
    };
    let qb = q.bits() as i64;
    let qf = q.to_f64().unwrap_or(f64::MAX);
    (libm::ldexp(qf, -(qb as i32 - 1)), qb - 1 - k)
}

/// `log10(|x|)` to about 15 significant digits.
///
/// Works from bit lengths and the leading 64 bits of the quotient, so the
/// cost is one division regardless of operand size. Values near 1 go through
/// `log1p` of the exact difference to keep relative accuracy.
pub fn log10_abs(x: &Rational) -> Result<f64> {
    if x.is_zero() {
        return Err(domain("log10 of zero"));
    }
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    let e = n.bits() as i64 - d.bits() as i64;
    if (-1..=1).contains(&e) {
        let diff = BigInt::from(n.clone()) - BigInt::from(d.clone());
        if diff.is_zero() {
            return Ok(0.0);
        }
        let (m, p) = ratio_parts(diff.magnitude(), d);
        let t = libm::ldexp(m, p as i32);
        let t = if diff.sign() == num_bigint::Sign::Minus {
            -t
        } else {
            t
        };
        return Ok(libm::log1p(t) / LN_10);
    }
    let (m, p) = ratio_parts(n, d);
    Ok(libm::log10(m) + p as f64 * LOG10_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn gauss_pow_examples() {
        let g = GaussianRational::from_integers(2, 1);
        assert_eq!(
            gauss_pow(&g, 2).unwrap(),
            GaussianRational::from_integers(3, 4)
        );
        assert_eq!(gauss_pow(&g, 0).unwrap(), GaussianRational::one());
        let z = GaussianRational::default();
        assert_eq!(gauss_pow(&z, -1), Err(Error::DivisionByZero));
        assert_eq!(gauss_pow(&z, 3).unwrap(), z);
    }

    #[test]
    fn gauss_pow_matches_repeated_multiplication() {
        // Oracle: eight successive exact multiplications.
        let base = GaussianRational::from_integers(10, 1);
        let mut acc = GaussianRational::one();
        for _ in 0..8 {
            acc = &acc * &base;
        }
        assert_eq!(acc, GaussianRational::from_integers(72697201, 74455920));
        assert_eq!(gauss_pow(&base, 8).unwrap(), acc);
    }

    #[test]
    fn machin_product_through_239() {
        let p = gauss_pow(&GaussianRational::from_integers(5, 1), 4).unwrap();
        assert_eq!(p, GaussianRational::from_integers(476, 480));
        let w = p
            .checked_div(&GaussianRational::from_integers(239, 1))
            .unwrap();
        assert_eq!(w, GaussianRational::from_integers(2, 2));
        // 259 in place of 239 does not give a Gaussian integer.
        let bad = p
            .checked_div(&GaussianRational::from_integers(259, 1))
            .unwrap();
        assert!(!bad.re.is_integer());
    }

    #[test]
    fn negative_exponent() {
        let g = GaussianRational::from_integers(1, 1);
        let inv = gauss_pow(&g, -2).unwrap();
        assert_eq!(inv, GaussianRational::new(Rational::zero(), q("-1/2")));
    }

    #[test]
    fn floors() {
        assert_eq!(rational_floor(&q("7/2")), BigInt::from(3));
        assert_eq!(rational_floor(&q("-7/2")), BigInt::from(-4));
        assert_eq!(
            rational_floor(&q("14717113539487181/715391356779")),
            BigInt::from(20572)
        );
        assert_eq!(decimal_floor(&q("5/2"), 1), q("5/2"));
        assert_eq!(decimal_floor(&q("1/3"), 2), q("33/100"));
        assert_eq!(decimal_floor(&q("-147153121/1758719"), 2), q("-8368/100"));
    }

    #[test]
    fn sqrt_enclosures() {
        let (lo, hi) = sqrt_fixed(&q("4"), 10).unwrap();
        assert_eq!(lo.to_string(), "2.0000000000");
        assert_eq!(lo, hi);
        let (lo, hi) = sqrt_fixed(&q("2"), 10).unwrap();
        // Oracle: isqrt(2·10^20) = 14142135623.
        assert_eq!(lo.to_string(), "1.4142135623");
        assert_eq!(hi.to_string(), "1.4142135624");
        let (lo, hi) = sqrt_fixed(&q("0"), 5).unwrap();
        assert!(lo.is_zero() && hi.is_zero());
        assert!(sqrt_fixed(&q("-1/4"), 3).is_err());
    }

    #[test]
    fn isqrt_edges() {
        for n in 0u64..2000 {
            let r = isqrt(&BigUint::from(n)).to_u64().unwrap();
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "{n}");
        }
        let big = BigUint::from(10u32).pow(101);
        let r = isqrt(&big);
        assert!(&r * &r <= big && (&r + 1u32) * (&r + 1u32) > big);
    }

    #[test]
    fn log10_examples() {
        assert_eq!(log10_abs(&q("100")).unwrap(), 2.0);
        assert!((log10_abs(&q("-1/1000")).unwrap() + 3.0).abs() < 1e-15);
        // Oracle values from an independent 40-digit logarithm.
        assert!((log10_abs(&q("239")).unwrap() - 2.378_397_900_948_138).abs() < 1e-13);
        assert!(
            (log10_abs(&q("147153121/1758719")).unwrap() - 1.922_573_022_138_403).abs() < 1e-13
        );
        assert!(log10_abs(&Rational::zero()).is_err());
    }

    #[test]
    fn log10_near_one_keeps_relative_accuracy() {
        // log10(1 + 10^-30) = 10^-30 / ln 10 to leading order.
        let x = &Rational::one() + &Rational::new(1, BigInt::from(pow10(30))).unwrap();
        let got = log10_abs(&x).unwrap();
        let want = 1e-30 / LN_10;
        assert!(((got - want) / want).abs() < 1e-12);
    }

    #[test]
    fn log10_of_huge_integer() {
        let x = BigInt::from(pow10(600_000)) * 3;
        let got = log10_abs(&Rational::from_integer(x)).unwrap();
        assert!((got - (600_000.0 + 0.47712125471966244)).abs() < 1e-9);
        let _ = got.to_string();
    }

    fn arb_nonzero() -> impl Strategy<Value = Rational> {
        (1i64..i64::MAX, 1i64..i64::MAX, any::<bool>())
            .prop_map(|(n, d, neg)| Rational::new(if neg { -n } else { n }, d).unwrap())
    }

    proptest! {
        #[test]
        fn floor_brackets(n in any::<i64>(), d in 1i64..1_000_000, k in 0u32..6) {
            let a = Rational::new(n, d).unwrap();
            let f = Rational::from_integer(rational_floor(&a));
            prop_assert!(f <= a && a < &f + &Rational::one());
            let df = decimal_floor(&a, k);
            let ulp = Rational::new(1, BigInt::from(pow10(k))).unwrap();
            prop_assert!(df <= a && a < &df + &ulp);
        }

        #[test]
        fn gauss_pow_adds_exponents(re in -40i64..40, im in -40i64..40, m in -6i64..7, n in -6i64..7) {
            let g = GaussianRational::from_integers(re, im);
            prop_assume!(!g.is_zero());
            let lhs = gauss_pow(&g, m + n).unwrap();
            let rhs = &gauss_pow(&g, m).unwrap() * &gauss_pow(&g, n).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn sqrt_encloses(n in 0u64..u64::MAX, d in 1u64..u64::MAX, digits in 0u32..40) {
            let x = Rational::new(n, d).unwrap();
            let (lo, hi) = sqrt_fixed(&x, digits).unwrap();
            let (lo, hi) = (lo.to_rational(), hi.to_rational());
            prop_assert!(&lo * &lo <= x && x <= &hi * &hi);
            let width = &hi - &lo;
            prop_assert!(width <= Rational::new(1, BigInt::from(pow10(digits))).unwrap());
        }

        #[test]
        fn log10_is_additive(a in arb_nonzero(), b in arb_nonzero()) {
            let lhs = log10_abs(&(&a * &b)).unwrap();
            let rhs = log10_abs(&a).unwrap() + log10_abs(&b).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-10, "{} vs {}", lhs, rhs);
        }
    }
}
