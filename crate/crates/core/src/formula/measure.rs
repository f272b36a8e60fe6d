//! Lehmer measure `Σ 1/log10(1/|x_j|)` and the decimal-friendly variant that
//! charges `arctan(1/10)` half a unit and the other powers of ten nothing.

use alloc::format;
use alloc::string::String;

use num_traits::{One, Signed, Zero};

use super::{ArctanTerm, MachinFormula};
use crate::error::{Error, Result};
use crate::exactnum::{log10_abs, Rational};

fn term_weight(t: &ArctanTerm) -> Result<f64> {
    let arg = t.arg();
    if arg.is_zero() || arg.abs() >= Rational::one() {
        return Err(Error::MeasureUndefined(format!("|{arg}| is not below 1")));
    }
    // log10|1/x| = −log10|x|, strictly positive here.
    Ok(-1.0 / log10_abs(arg)?)
}

pub fn lehmer_measure(f: &MachinFormula) -> Result<f64> {
    f.terms().iter().map(term_weight).sum()
}

/// `m` when `x = ±1/10^m`.
fn ten_power(x: &Rational) -> Option<u32> {
    if !x.numer().abs().is_one() {
        return None;
    }
    let mut d = x.denom().clone();
    let mut m = 0;
    while d > One::one() {
        let (q, r) = num_integer::Integer::div_rem(&d, &10.into());
        if !r.is_zero() {
            return None;
        }
        d = q;
        m += 1;
    }
    Some(m)
}

pub fn reduced_lehmer_measure(f: &MachinFormula) -> Result<f64> {
    let has_tenth = f.terms().iter().any(|t| ten_power(t.arg()) == Some(1));
    if !has_tenth {
        return lehmer_measure(f);
    }
    f.terms()
        .iter()
        .map(|t| match ten_power(t.arg()) {
            Some(1) => Ok(0.5),
            Some(_) => Ok(0.0),
            None => term_weight(t),
        })
        .sum()
}

/// `x` to `sig` significant digits in plain positional notation.
pub fn format_significant(x: f64, sig: u32) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = libm::floor(libm::log10(libm::fabs(x))) as i32;
    let decimals = (sig as i32 - 1 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding may carry into a new leading digit (9.999995 → 10.00000).
    let digits = s.chars().filter(char::is_ascii_digit).count();
    let leading_zeros = s
        .chars()
        .filter(|c| *c != '-' && *c != '.')
        .take_while(|c| *c == '0')
        .count();
    if decimals > 0 && digits - leading_zeros > sig as usize {
        let d = decimals - 1;
        return format!("{x:.d$}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::super::test_util::*;
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn classic_measures() {
        let machin = formula(&[("4", "1/5"), ("-1", "1/239")]);
        assert!(close(lehmer_measure(&machin).unwrap(), 1.85113, 1e-5));
        let gauss = formula(&[("12", "1/18"), ("8", "1/57"), ("-5", "1/239")]);
        assert!(close(lehmer_measure(&gauss).unwrap(), 1.78661, 1e-5));
        let quotient = formula(&[("1", "2/2513489")]);
        let expect = 1.0 / (2513489f64 / 2.0).log10();
        assert!(close(lehmer_measure(&quotient).unwrap(), expect, 1e-12));
        // Sign of the argument is irrelevant.
        let neg = formula(&[("-4", "-1/5"), ("-1", "1/239")]);
        assert_eq!(
            lehmer_measure(&neg).unwrap(),
            lehmer_measure(&machin).unwrap()
        );
    }

    #[test]
    fn reduced_convention() {
        let tenth = formula(&[("8", "1/10")]);
        assert_eq!(reduced_lehmer_measure(&tenth).unwrap(), 0.5);
        let f = formula(&[
            ("8", "1/10"),
            ("-1", "1/100"),
            ("-1", "-1/1000"),
            ("-1", "1/515"),
        ]);
        let expect = 0.5 + 1.0 / 515f64.log10();
        assert!(close(reduced_lehmer_measure(&f).unwrap(), expect, 1e-12));
        // Without a 1/10 term, powers of ten pay full price.
        let g = formula(&[("1", "1/100"), ("1", "1/7")]);
        assert_eq!(
            reduced_lehmer_measure(&g).unwrap(),
            lehmer_measure(&g).unwrap()
        );
        // 1/20 and 3/1000 are not powers of ten.
        assert_eq!(ten_power(&q("1/20")), None);
        assert_eq!(ten_power(&q("3/1000")), None);
        assert_eq!(ten_power(&q("-1/1000")), Some(3));
    }

    #[test]
    fn significant_formatting() {
        assert_eq!(format_significant(1.851127, 6), "1.85113");
        assert_eq!(format_significant(0.95691525, 6), "0.956915");
        assert_eq!(format_significant(2.2902480, 6), "2.29025");
        assert_eq!(format_significant(9.9999996, 6), "10.0000");
        assert_eq!(format_significant(12.345678, 4), "12.35");
        assert_eq!(format_significant(0.5, 6), "0.500000");
    }

    fn arb_arg() -> impl Strategy<Value = Rational> {
        (1i64..1000, 2i64..100_000, any::<bool>()).prop_filter_map("|x| < 1", |(n, d, neg)| {
            let x = Rational::new(if neg { -n } else { n }, d).ok()?;
            (x.abs() < Rational::one()).then_some(x)
        })
    }

    proptest! {
        #[test]
        fn appending_a_term_increases_measure(
            args in proptest::collection::vec(arb_arg(), 1..6),
            extra in arb_arg(),
        ) {
            prop_assume!(!args.iter().any(|a| a == &extra || a == &-&extra));
            let mut terms: Vec<_> = args.iter().map(|a| ArctanTerm::new(q("1"), a.clone()).unwrap()).collect();
            let Ok(f) = MachinFormula::new(terms.clone()) else { return Ok(()) };
            terms.push(ArctanTerm::new(q("1"), extra).unwrap());
            let g = MachinFormula::new(terms).unwrap();
            prop_assert!(g.len() > f.len());
            prop_assert!(lehmer_measure(&g).unwrap() > lehmer_measure(&f).unwrap());
        }

        #[test]
        fn reduced_never_exceeds_standard(args in proptest::collection::vec(arb_arg(), 0..5), m in 1u32..6) {
            let mut terms: Vec<_> = args.iter().map(|a| ArctanTerm::new(q("1"), a.clone()).unwrap()).collect();
            let with_tenth = {
                let mut t = terms.clone();
                t.push(ArctanTerm::new(q("3"), q("1/10")).unwrap());
                t.push(ArctanTerm::new(q("1"), Rational::new(1, num_traits::pow(10i64, m as usize)).unwrap()).unwrap());
                MachinFormula::new(t).unwrap()
            };
            prop_assert!(reduced_lehmer_measure(&with_tenth).unwrap() <= lehmer_measure(&with_tenth).unwrap());
            terms.retain(|t| ten_power(t.arg()) != Some(1));
            if let Ok(f) = MachinFormula::new(terms) {
                prop_assert_eq!(reduced_lehmer_measure(&f).unwrap(), lehmer_measure(&f).unwrap());
            }
        }
    }
}
