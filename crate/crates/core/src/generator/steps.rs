//! Exact two-angle identities used to reshape formulas.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::exactnum::{decimal_floor, gauss_pow, pow10, GaussianRational, Rational};

/// `arctan(1/z) = arctan(1/⌊z⌋) + arctan(r)`, `r = (⌊z⌋ − z)/(1 + z·⌊z⌋)`.
///
/// Valid for `z ∉ [0, 1)`; `r = 0` exactly when `z` is an integer.
pub fn floor_step(z: &Rational) -> Result<(BigInt, Rational)> {
    if !z.is_negative() && z < &Rational::one() {
        return Err(domain("floor step needs z outside [0, 1)"));
    }
    let f = z.floor();
    let r = remainder_for(z, &Rational::from_integer(f.clone()));
    Ok((f, r))
}

/// As [`floor_step`] with `z` floored at `n` decimal places; valid for
/// `z ∉ [0, 10^(−n))`.
pub fn scaled_floor_step(z: &Rational, n: u32) -> Result<(Rational, Rational)> {
    let eps = Rational::reduce(BigInt::one(), pow10(n).into());
    if !z.is_negative() && z < &eps {
        return Err(domain("scaled floor step needs z outside [0, 10^-n)"));
    }
    let f = decimal_floor(z, n);
    let r = remainder_for(z, &f);
    Ok((f, r))
}

/// `(f − z)/(1 + z·f)` for `z = p/q`, `f = a/b`: `(aq − bp)/(bq + ap)`.
///
/// Written out on integers so the single gcd at the end sees the small
/// numerator next to the large denominator.
fn remainder_for(z: &Rational, f: &Rational) -> Rational {
    let (p, q) = (z.numer(), z.denom());
    let (a, b) = (f.numer(), f.denom());
    let num = a * q - b * p;
    if num.is_zero() {
        return Rational::zero();
    }
    Rational::reduce(num, b * q + a * p)
}

/// `r` with `arctan(x) = arctan(t) + arctan(r)`: `r = (x − t)/(1 + x·t)`.
pub fn split_term(x: &Rational, t: &Rational) -> Result<Rational> {
    let one = Rational::one();
    if x.abs() >= one || t.abs() >= one {
        return Err(domain("split needs |x| < 1 and |t| < 1"));
    }
    if t.is_zero() {
        return Err(domain("split target must be nonzero"));
    }
    Ok(&(x - t) / &(&one + &(x * t)))
}

/// `arctan(1/x) = 2·arctan(1/(2x)) − arctan(1/(4x³ + 3x))`, returned as
/// `(2x, 4x³ + 3x)`.
pub fn double_split(x: &Rational) -> Result<(Rational, Rational)> {
    if x.is_zero() {
        return Err(domain("double split needs x ≠ 0"));
    }
    let x2 = x * x;
    let c = x * &(&(&x2 * &Rational::from_integer(4)) + &Rational::from_integer(3));
    Ok((x * &Rational::from_integer(2), c))
}

/// `arctan(x) = Σ_{m=1..M} arctan(M·x / (M² + (m−1)·m·x²))`.
pub fn msplit(x: &Rational, m_count: u32) -> Result<Vec<Rational>> {
    if x.is_zero() || m_count == 0 {
        return Err(domain("msplit needs x ≠ 0 and M ≥ 1"));
    }
    let big_m = Rational::from_integer(m_count);
    let mx = &big_m * x;
    let m2 = &big_m * &big_m;
    let x2 = x * x;
    Ok((1..=m_count as u64)
        .map(|m| {
            let k = Rational::from_integer((m - 1) * m);
            &mx / &(&m2 + &(&k * &x2))
        })
        .collect())
}

/// `Π (1 + i·a_j)^(c_j)`. For bounded arguments a positive real result
/// certifies `Σ c_j·arctan(a_j) ≡ 0 (mod 2π)`.
pub fn angle_quotient(terms: &[(i64, Rational)]) -> Result<GaussianRational> {
    let mut acc = GaussianRational::one();
    for (c, a) in terms {
        let z = GaussianRational::new(Rational::one(), a.clone());
        acc = &acc * &gauss_pow(&z, *c)?;
    }
    Ok(acc)
}

/// Whether `Σ c_j·arctan(a_j)` is an exact multiple of 2π per [`angle_quotient`].
pub fn angles_cancel(terms: &[(i64, Rational)]) -> Result<bool> {
    let q = angle_quotient(terms)?;
    Ok(q.is_real() && q.re.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn floor_step_examples() {
        assert_eq!(
            floor_step(&q("2513489/2")).unwrap(),
            (BigInt::from(1256744), q("-1/3158812219818"))
        );
        assert_eq!(
            floor_step(&q("-14717113539487181/715391356779")).unwrap(),
            (
                BigInt::from(-20573),
                q("-316421763593/151387588781630565746")
            )
        );
        assert_eq!(
            floor_step(&q("5")).unwrap(),
            (BigInt::from(5), Rational::zero())
        );
        assert!(floor_step(&q("1/2")).is_err());
        assert!(floor_step(&q("0")).is_err());
        assert!(floor_step(&q("-1/2")).is_ok());
    }

    #[test]
    fn scaled_floor_examples() {
        let (f, r) = scaled_floor_step(&q("-147153121/1758719"), 2).unwrap();
        assert_eq!(f, q("-8368/100"));
        assert_eq!(r.abs(), q("412123/307888297107"));
        let (f, r) = scaled_floor_step(&q("-307888297107/412123"), 2).unwrap();
        assert_eq!(f, q("-74707866/100"));
        assert_eq!(r.abs(), q("74409/11500838821639577981"));
        assert_eq!(
            scaled_floor_step(&q("5/2"), 1).unwrap(),
            (q("5/2"), Rational::zero())
        );
        assert!(scaled_floor_step(&q("1/1000"), 2).is_err());
        assert!(scaled_floor_step(&q("1/100"), 2).is_ok());
    }

    #[test]
    fn split_examples() {
        let r1 = split_term(&q("1758719/147153121"), &q("1/100")).unwrap();
        assert_eq!(r1, q("28718779/14717070819"));
        assert_eq!(
            split_term(&r1, &q("1/1000")).unwrap(),
            q("14001708181/14717099537779")
        );
        assert_eq!(split_term(&r1, &q("1/515")).unwrap(), q("3583/371498882"));
        assert!(split_term(&q("1"), &q("1/2")).is_err());
    }

    #[test]
    fn double_split_examples() {
        assert_eq!(
            double_split(&q("2513489/2")).unwrap(),
            (q("2513489"), q("7939642926390344818"))
        );
        assert_eq!(
            double_split(&q("18280007883/2")).unwrap(),
            (q("18280007883"), q("3054211727257704725384731479018"))
        );
        assert_eq!(double_split(&q("1")).unwrap(), (q("2"), q("7")));
    }

    #[test]
    fn msplit_examples() {
        assert_eq!(msplit(&q("3/7"), 1).unwrap(), [q("3/7")]);
        assert_eq!(msplit(&q("1"), 2).unwrap(), [q("1/2"), q("1/3")]);
        let v = msplit(&q("1/10"), 10).unwrap();
        assert_eq!(v[0], q("1/100"));
        assert_eq!(v[1], q("50/5001"));
    }

    fn arb_rational(max: i64) -> impl Strategy<Value = Rational> {
        (-max..=max, 1..=max).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn recip(x: &Rational) -> Rational {
        x.recip().unwrap()
    }

    proptest! {
        #[test]
        fn floor_step_identity(z in arb_rational(1_000_000)) {
            prop_assume!(z.abs() >= Rational::one());
            let (f, r) = floor_step(&z).unwrap();
            let f = Rational::from_integer(f);
            prop_assert_eq!(r.is_zero(), z.is_integer());
            prop_assert!(angles_cancel(&[(1, recip(&f)), (1, r), (-1, recip(&z))]).unwrap());
        }

        #[test]
        fn scaled_floor_identity(z in arb_rational(1_000_000), n in 1u32..=3) {
            prop_assume!(z.abs() >= Rational::one());
            let (f, r) = scaled_floor_step(&z, n).unwrap();
            prop_assert!(angles_cancel(&[(1, recip(&f)), (1, r), (-1, recip(&z))]).unwrap());
        }

        #[test]
        fn split_identity(x in arb_rational(10_000), t in arb_rational(10_000)) {
            prop_assume!(x.abs() < Rational::one() && t.abs() < Rational::one() && !t.is_zero());
            let r = split_term(&x, &t).unwrap();
            prop_assert!(angles_cancel(&[(1, t), (1, r), (-1, x)]).unwrap());
        }

        #[test]
        fn double_split_identity(x in arb_rational(100_000)) {
            prop_assume!(x >= Rational::one());
            let (h, c) = double_split(&x).unwrap();
            prop_assert!(angles_cancel(&[(2, recip(&h)), (-1, recip(&c)), (-1, recip(&x))]).unwrap());
        }

        #[test]
        fn msplit_identity(x in arb_rational(1000), m in 1u32..=16) {
            prop_assume!(!x.is_zero() && x.abs() <= Rational::one());
            let parts = msplit(&x, m).unwrap();
            let mut terms: Vec<_> = parts.into_iter().map(|a| (1, a)).collect();
            terms.push((-1, x));
            prop_assert!(angles_cancel(&terms).unwrap());
        }
    }
}
