//! Display helpers for very large integers.

use machin_core::exactnum::{digit_count, leading_digits, trailing_digits, FixedDecimal, Rational};
use num_bigint::BigInt;

/// Integers longer than this are abbreviated for display.
pub const ABBREVIATE_OVER: u64 = 80;
const ENDS: u64 = 20;

/// `<first20>…<last20> (<count> digits)` for integers over 80 digits.
pub fn abbreviate_int(x: &BigInt) -> String {
    let n = digit_count(x);
    if n <= ABBREVIATE_OVER {
        return x.to_string();
    }
    let sign = if x.sign() == num_bigint::Sign::Minus {
        "-"
    } else {
        ""
    };
    format!(
        "{sign}{}…{} ({n} digits)",
        leading_digits(x, ENDS),
        trailing_digits(x, ENDS)
    )
}

/// [`abbreviate_int`] applied to numerator and denominator.
pub fn abbreviate_rational(x: &Rational) -> String {
    if x.is_integer() {
        abbreviate_int(x.numer())
    } else {
        format!(
            "{}/{}",
            abbreviate_int(x.numer()),
            abbreviate_int(x.denom())
        )
    }
}

/// `x` as an exact decimal with `places` digits after the point, if it has one.
pub fn exact_decimal(x: &Rational, places: u32) -> Option<String> {
    FixedDecimal::exact(x, places).map(|d| d.to_string())
}
