//! Two-term seeds `π/4 = 2^(k−1)·arctan(1/α) + arctan(1/β)`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{domain, Error, Result};
use crate::exactnum::{gauss_pow, sqrt_fixed, GaussianRational, Rational};
use crate::formula::{ArctanTerm, MachinFormula};

const ALPHA_START_DIGITS: u32 = 64;
/// Gives up rather than loop forever if the floor never separates.
const ALPHA_MAX_DIGITS: u32 = 1 << 16;

/// Certified enclosure of the nested radical `a_j = √(2 + a_(j−1))`, `a_0 = 0`.
fn nested_radical(j: u32, digits: u32) -> Result<(Rational, Rational)> {
    let two = Rational::from_integer(2);
    let (mut lo, mut hi) = (Rational::zero(), Rational::zero());
    for _ in 0..j {
        let l = sqrt_fixed(&(&two + &lo), digits)?.0;
        let h = sqrt_fixed(&(&two + &hi), digits)?.1;
        lo = l.to_rational();
        hi = h.to_rational();
    }
    Ok((lo, hi))
}

/// `⌊cot(π/2^(k+1))⌋ = ⌊√(2 + a_(k−1)) / √(2 − a_(k−1))⌋`.
///
/// Square roots are bracketed at 64 places, doubling until both ends of the
/// quotient's enclosure share a floor.
pub fn alpha_for_k(k: u32) -> Result<BigInt> {
    if k < 2 {
        return Err(domain("alpha_for_k needs k ≥ 2"));
    }
    let two = Rational::from_integer(2);
    let mut digits = ALPHA_START_DIGITS;
    while digits <= ALPHA_MAX_DIGITS {
        let (a_lo, a_hi) = nested_radical(k - 1, digits)?;
        let num_lo = sqrt_fixed(&(&two + &a_lo), digits)?.0.to_rational();
        let num_hi = sqrt_fixed(&(&two + &a_hi), digits)?.1.to_rational();
        let gap_lo = &two - &a_hi;
        let den_lo = if gap_lo.is_positive() {
            sqrt_fixed(&gap_lo, digits)?.0.to_rational()
        } else {
            Rational::zero()
        };
        let den_hi = sqrt_fixed(&(&two - &a_lo), digits)?.1.to_rational();
        if den_lo.is_positive() {
            let lower = (&num_lo / &den_hi).floor();
            let upper = (&num_hi / &den_lo).floor();
            if lower == upper {
                return Ok(lower);
            }
        }
        digits *= 2;
    }
    Err(Error::Precondition(
        "cotangent floor did not separate".into(),
    ))
}

/// `β` with `2^(k−1)·arctan(1/α) + arctan(1/β) = π/4`, from
/// `(α + i)^(2^(k−1)) = x + i·y` and `β = (x + y)/(x − y)`.
pub fn beta_gauss(k: u32, alpha: &BigInt) -> Result<Rational> {
    check_seed_args(k, alpha)?;
    let base = GaussianRational::from_integers(alpha.clone(), 1);
    let p = gauss_pow(&base, 1i64 << (k - 1))?;
    let (x, y) = (p.re, p.im);
    if x == y {
        return Err(Error::DivisionByZero);
    }
    (&x + &y).checked_div(&(&x - &y))
}

fn check_seed_args(k: u32, alpha: &BigInt) -> Result<()> {
    if !(2..=62).contains(&k) {
        return Err(domain("seed needs 2 ≤ k ≤ 62"));
    }
    if *alpha < BigInt::from(2) {
        return Err(domain("seed needs α ≥ 2"));
    }
    Ok(())
}

/// `(cos 2^n·θ, sin 2^n·θ)` for `θ = arctan(1/α)`, kept as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterState {
    pub sigma: Rational,
    pub tau: Rational,
}

impl IterState {
    /// `σ_1 = (α²−1)/(α²+1)`, `τ_1 = 2α/(α²+1)`.
    pub fn initial(alpha: &BigInt) -> Self {
        let a2 = alpha * alpha;
        let d: BigInt = &a2 + 1;
        Self {
            sigma: Rational::reduce(&a2 - 1, d.clone()),
            tau: Rational::reduce(alpha * 2, d),
        }
    }

    /// Angle doubling: `σ' = σ² − τ²`, `τ' = 2στ`.
    pub fn next(&self) -> Self {
        Self {
            sigma: &(&self.sigma * &self.sigma) - &(&self.tau * &self.tau),
            tau: &(&self.sigma * &self.tau) * &Rational::from_integer(2),
        }
    }

    pub fn on_unit_circle(&self) -> bool {
        &(&self.sigma * &self.sigma) + &(&self.tau * &self.tau) == Rational::one()
    }
}

/// States `1..=k` of the doubling iteration.
pub fn iter_states(k: u32, alpha: &BigInt) -> Result<Vec<IterState>> {
    check_seed_args(k, alpha)?;
    let mut states = alloc::vec![IterState::initial(alpha)];
    for _ in 2..=k {
        let next = states.last().expect("nonempty").next();
        states.push(next);
    }
    Ok(states)
}

/// `β = σ_k / (1 − τ_k)`.
pub fn beta_iter(k: u32, alpha: &BigInt) -> Result<Rational> {
    let last = iter_states(k, alpha)?.pop().expect("k ≥ 2 states");
    last.sigma.checked_div(&(&Rational::one() - &last.tau))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedResult {
    pub k: u32,
    pub alpha: BigInt,
    pub beta: Rational,
    /// `[2^(k−1)·arctan(1/α), arctan(1/β)]`, the sign of β kept in the argument.
    pub formula: MachinFormula,
}

pub fn two_term_seed(k: u32) -> Result<SeedResult> {
    let alpha = alpha_for_k(k)?;
    let beta = beta_gauss(k, &alpha)?;
    let lead = Rational::from_integer(BigInt::one() << (k - 1));
    let formula = MachinFormula::new(alloc::vec![
        ArctanTerm::reciprocal(lead, &Rational::from_integer(alpha.clone()))?,
        ArctanTerm::reciprocal(Rational::one(), &beta)?,
    ])?;
    Ok(SeedResult {
        k,
        alpha,
        beta,
        formula,
    })
}
