//! Arctangent series engines and π from a formula.
//!
//! Results are [`FixedDecimal`] values at the requested number of digits.
//! Internally every engine works on integer mantissas at `digits + guard`
//! places with truncating division, so a given input always produces the
//! same digits on every platform.

mod series;

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::error::{domain, Error, Result};
use crate::exactnum::{log10_abs, FixedDecimal, Rational};
use crate::formula::{ArctanTerm, MachinFormula};

/// Minimum number of guard digits.
pub const MIN_GUARD: u32 = 10;

/// π to 120 decimal places, used as the reference angle by the residual check.
const PI_120: &str = "3.141592653589793238462643383279502884197169399375105820974944592307816406286208998628034825342117067982148086513282306647";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EngineKind {
    /// `Σ (−1)^n x^(2n+1)/(2n+1)`, requires `|x| < 1`.
    Maclaurin,
    /// Euler's accelerated series in `x²/(1+x²)`; converges for every `x`.
    Euler,
    /// Series from the `g_m`, `h_m` doubling recurrences; requires `x ≠ 0`.
    Iter,
}

impl EngineKind {
    pub const ALL: [EngineKind; 3] = [EngineKind::Maclaurin, EngineKind::Euler, EngineKind::Iter];

    pub fn name(self) -> &'static str {
        match self {
            EngineKind::Maclaurin => "maclaurin",
            EngineKind::Euler => "euler",
            EngineKind::Iter => "iter",
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EngineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EngineKind::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::NotFound(alloc::format!("engine {s}")))
    }
}

/// Requested digits plus an optional explicit guard.
///
/// Without an explicit guard the engines use
/// `10 + ⌈log10(terms + Σ|coefficient numerators|)⌉`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalParams {
    digits: u32,
    guard: Option<u32>,
}

impl EvalParams {
    pub fn new(digits: u32) -> Self {
        Self {
            digits,
            guard: None,
        }
    }

    pub fn with_guard(digits: u32, guard: u32) -> Result<Self> {
        if guard < MIN_GUARD {
            return Err(domain(alloc::format!(
                "guard digits must be at least {MIN_GUARD}, got {guard}"
            )));
        }
        Ok(Self {
            digits,
            guard: Some(guard),
        })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> Option<u32> {
        self.guard
    }

    fn guard_for(&self, work: u64) -> u32 {
        self.guard.unwrap_or_else(|| default_guard(work))
    }
}

/// `10 + ⌈log10(work)⌉` for an estimated number of truncating operations.
pub fn default_guard(work: u64) -> u32 {
    let mut g = MIN_GUARD;
    let mut p = 1u64;
    while p < work {
        p = p.saturating_mul(10);
        g += 1;
    }
    g
}

fn check_domain(x: &Rational, engine: EngineKind) -> Result<()> {
    match engine {
        EngineKind::Maclaurin if x.abs() >= Rational::one() => {
            Err(domain("the Maclaurin series needs |x| < 1"))
        }
        EngineKind::Iter if x.is_zero() => Err(domain("the iteration-based series needs x ≠ 0")),
        _ => Ok(()),
    }
}

/// Predicted number of series terms to reach `10^(−digits)`:
/// `⌈digits / (−log10 ratio)⌉` with ratio `x²`, `x²/(1+x²)` or `1/(1+4/x²)`.
pub fn term_work_estimate(x: &Rational, digits: u32, engine: EngineKind) -> Result<u64> {
    check_domain(x, engine)?;
    if x.is_zero() {
        return Ok(0);
    }
    let p2 = x.numer() * x.numer();
    let q2 = x.denom() * x.denom();
    let decay = match engine {
        EngineKind::Maclaurin => -2.0 * log10_abs(x)?,
        EngineKind::Euler => log10_abs(&Rational::new(&p2 + &q2, p2)?)?,
        EngineKind::Iter => log10_abs(&Rational::new(&p2 + q2 * 4, p2)?)?,
    };
    let n = libm::ceil(digits as f64 / decay - 1e-9);
    Ok(if n < 1.0 { 1 } else { n as u64 })
}

/// `arctan(x)·10^w`, truncated series evaluation.
pub(crate) fn arctan_work(x: &Rational, w: u32, engine: EngineKind) -> Result<BigInt> {
    check_domain(x, engine)?;
    if x.is_zero() {
        return Ok(BigInt::from(0));
    }
    let p = x.numer().magnitude();
    let q = x.denom().magnitude();
    let v = if series::negligible(p, q, w) {
        BigInt::from(0)
    } else {
        match engine {
            EngineKind::Maclaurin => series::maclaurin(p, q, w),
            EngineKind::Euler => series::euler(p, q, w),
            EngineKind::Iter => {
                // Exact recurrences while operands stay small, fixed point below 1/10.
                if p * 10u32 >= *q {
                    series::iter_exact(p, q, w)
                } else {
                    series::iter_fixed(p, q, w)
                }
            }
        }
    };
    Ok(if x.is_negative() { -v } else { v })
}

/// `arctan(x)` at `digits` places with error below `10^(−digits)`.
pub fn arctan_eval(x: &Rational, params: &EvalParams, engine: EngineKind) -> Result<FixedDecimal> {
    let work = term_work_estimate(x, params.digits, engine)?;
    let w = params.digits + params.guard_for(work + 1);
    let v = arctan_work(x, w, engine)?;
    Ok(FixedDecimal::new(v, w).round_to(params.digits))
}

fn formula_work(terms: &[ArctanTerm], digits: u32, engine: EngineKind) -> Result<u64> {
    let mut work = 0u64;
    for t in terms {
        work = work.saturating_add(term_work_estimate(t.arg(), digits, engine)?);
        let c = t.coeff().numer().magnitude();
        work = work.saturating_add(num_traits::ToPrimitive::to_u64(c).unwrap_or(u64::MAX));
    }
    Ok(work)
}

/// `Σ coeff·arctan(arg)·10^w` with rational coefficients applied exactly
/// to the mantissas (multiply by numerator, truncating divide by denominator).
pub(crate) fn angle_sum_work(terms: &[ArctanTerm], w: u32, engine: EngineKind) -> Result<BigInt> {
    let mut acc = BigInt::from(0);
    for t in terms {
        let a = arctan_work(t.arg(), w, engine)?;
        acc += a * t.coeff().numer() / t.coeff().denom();
    }
    Ok(acc)
}

/// Working scale used for a list of terms at `params`.
pub(crate) fn work_scale(
    terms: &[ArctanTerm],
    params: &EvalParams,
    engine: EngineKind,
) -> Result<u32> {
    let work = formula_work(terms, params.digits, engine)?;
    Ok(params.digits + params.guard_for(work.saturating_add(terms.len() as u64)))
}

/// `Σ coeff_j·arctan(arg_j)` at `params.digits` places.
pub fn angle_sum(
    terms: &[ArctanTerm],
    params: &EvalParams,
    engine: EngineKind,
) -> Result<FixedDecimal> {
    let w = work_scale(terms, params, engine)?;
    let v = angle_sum_work(terms, w, engine)?;
    Ok(FixedDecimal::new(v, w).round_to(params.digits))
}

/// π as `4·Σ coeff_j·arctan(arg_j)`, within `2·10^(−digits)`.
///
/// The formula is assumed to be valid; the CLI checks it first.
pub fn pi_from_formula(
    f: &MachinFormula,
    params: &EvalParams,
    engine: EngineKind,
) -> Result<FixedDecimal> {
    let w = work_scale(f.terms(), params, engine)?;
    let v = angle_sum_work(f.terms(), w, engine)? * 4;
    Ok(FixedDecimal::new(v, w).round_to(params.digits))
}

/// π from the built-in 120-place constant, rounded to `scale` (at most 119).
pub fn pi_reference(scale: u32) -> Option<FixedDecimal> {
    if scale >= 120 {
        return None;
    }
    let digits: alloc::string::String = PI_120.chars().filter(|c| *c != '.').collect();
    let m: BigInt = digits.parse().ok()?;
    Some(FixedDecimal::new(m, 120).round_to(scale))
}

/// Terms-per-engine estimates for a formula, in term order.
pub fn formula_work_estimates(
    f: &MachinFormula,
    digits: u32,
    engine: EngineKind,
) -> Result<Vec<u64>> {
    f.terms()
        .iter()
        .map(|t| term_work_estimate(t.arg(), digits, engine))
        .collect()
}
