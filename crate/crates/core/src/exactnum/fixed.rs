use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use super::{pow10, Rational};
use crate::error::{domain, Result};

/// Decimal fixed-point value `mantissa · 10^(−scale)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FixedDecimal {
    mantissa: BigInt,
    scale: u32,
}

impl FixedDecimal {
    pub fn new(mantissa: BigInt, scale: u32) -> Self {
        Self { mantissa, scale }
    }

    pub fn zero(scale: u32) -> Self {
        Self::new(BigInt::zero(), scale)
    }

    /// Largest value at `scale` not above `x`.
    pub fn floor_of(x: &Rational, scale: u32) -> Self {
        let m = (x.numer() * BigInt::from(pow10(scale))).div_floor(x.denom());
        Self::new(m, scale)
    }

    /// `x` at `scale` if it is representable there without rounding.
    pub fn exact(x: &Rational, scale: u32) -> Option<Self> {
        let (m, r) = (x.numer() * BigInt::from(pow10(scale))).div_rem(x.denom());
        r.is_zero().then(|| Self::new(m, scale))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn abs(&self) -> Self {
        Self::new(self.mantissa.abs(), self.scale)
    }

    pub fn to_rational(&self) -> Rational {
        Rational::reduce(self.mantissa.clone(), BigInt::from(pow10(self.scale)))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_scale(rhs)?;
        Ok(Self::new(&self.mantissa + &rhs.mantissa, self.scale))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_scale(rhs)?;
        Ok(Self::new(&self.mantissa - &rhs.mantissa, self.scale))
    }

    fn same_scale(&self, rhs: &Self) -> Result<()> {
        if self.scale == rhs.scale {
            Ok(())
        } else {
            Err(domain("fixed-point scales differ"))
        }
    }

    /// Changes the scale, rounding half away from zero when digits are dropped.
    pub fn round_to(&self, scale: u32) -> Self {
        match scale.cmp(&self.scale) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => Self::new(
                &self.mantissa * BigInt::from(pow10(scale - self.scale)),
                scale,
            ),
            Ordering::Less => {
                let d = BigInt::from(pow10(self.scale - scale));
                let half = &d / 2;
                let (q, r) = self.mantissa.abs().div_rem(&d);
                let q = if r >= half { q + 1 } else { q };
                let q = if self.mantissa.is_negative() { -q } else { q };
                Self::new(q, scale)
            }
        }
    }

    /// Changes the scale, truncating toward zero when digits are dropped.
    pub fn truncate_to(&self, scale: u32) -> Self {
        if scale >= self.scale {
            return self.round_to(scale);
        }
        let d = BigInt::from(pow10(self.scale - scale));
        Self::new(&self.mantissa / d, scale)
    }

    /// Distance in units of the last place; both operands must share a scale.
    pub fn ulps_from(&self, other: &Self) -> Result<BigUint> {
        self.same_scale(other)?;
        Ok((&self.mantissa - &other.mantissa).magnitude().clone())
    }

    /// `|self| < 10^exp`.
    pub fn abs_lt_pow10(&self, exp: i64) -> bool {
        let shift = exp + self.scale as i64;
        if shift < 0 {
            return self.mantissa.is_zero();
        }
        *self.mantissa.magnitude() < pow10(shift as u32)
    }

    /// Digits after the decimal point, zero-padded to the scale.
    pub fn fraction_digits(&self) -> String {
        let s = self.mantissa.magnitude().to_str_radix(10);
        let scale = self.scale as usize;
        if s.len() >= scale {
            String::from(&s[s.len() - scale..])
        } else {
            let mut out = String::with_capacity(scale);
            out.extend(core::iter::repeat_n('0', scale - s.len()));
            out.push_str(&s);
            out
        }
    }
}

impl fmt::Display for FixedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.mantissa.magnitude().to_str_radix(10);
        let scale = self.scale as usize;
        if self.mantissa.sign() == Sign::Minus {
            f.write_str("-")?;
        }
        if scale == 0 {
            return f.write_str(&s);
        }
        if s.len() > scale {
            let (int, frac) = s.split_at(s.len() - scale);
            write!(f, "{int}.{frac}")
        } else {
            f.write_str("0.")?;
            for _ in 0..scale - s.len() {
                f.write_str("0")?;
            }
            f.write_str(&s)
        }
    }
}

impl fmt::Debug for FixedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FixedDecimal({self})")
    }
}

impl Ord for FixedDecimal {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.scale == other.scale {
            self.mantissa.cmp(&other.mantissa)
        } else {
            let s = self.scale.max(other.scale);
            self.round_to(s).mantissa.cmp(&other.round_to(s).mantissa)
        }
    }
}

impl PartialOrd for FixedDecimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// The operator forms panic on mismatched scales; within one computation the
// scale is fixed, so a mismatch is a programming error.
impl Add<&FixedDecimal> for &FixedDecimal {
    type Output = FixedDecimal;
    fn add(self, rhs: &FixedDecimal) -> FixedDecimal {
        self.checked_add(rhs).expect("fixed-point scale mismatch")
    }
}

impl Sub<&FixedDecimal> for &FixedDecimal {
    type Output = FixedDecimal;
    fn sub(self, rhs: &FixedDecimal) -> FixedDecimal {
        self.checked_sub(rhs).expect("fixed-point scale mismatch")
    }
}

impl Neg for &FixedDecimal {
    type Output = FixedDecimal;
    fn neg(self) -> FixedDecimal {
        FixedDecimal::new(-&self.mantissa, self.scale)
    }
}
