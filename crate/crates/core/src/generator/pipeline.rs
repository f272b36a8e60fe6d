//! Iterated rewriting: integerization and power-of-ten peeling.

use alloc::format;
use alloc::vec::Vec;

use super::trace::{is_decimal_reciprocal, perform, DerivationTrace, Op, TraceStep};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::formula::{combine_like_terms, ArctanTerm, MachinFormula};

pub const DEFAULT_MAX_STEPS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegerizeMode {
    /// Integer floors.
    Floor,
    /// Floors at `n` decimal places.
    Scaled(u32),
}

impl IntegerizeMode {
    fn places(self) -> u32 {
        match self {
            IntegerizeMode::Floor => 0,
            IntegerizeMode::Scaled(n) => n,
        }
    }

    fn op(self) -> Op<'static> {
        match self {
            IntegerizeMode::Floor => Op::Floor,
            IntegerizeMode::Scaled(n) => Op::ScaledFloor(n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegerizeStatus {
    /// The last remainder vanished.
    Terminated,
    /// `max_steps` reached with a remainder left.
    StepCapped,
}

#[derive(Debug, Clone)]
pub struct IntegerizeOutcome {
    pub formula: MachinFormula,
    pub trace: DerivationTrace,
    pub status: IntegerizeStatus,
    /// Floor steps taken, counting the final step on an integer.
    pub steps: usize,
}

/// Index of the single term failing `ok`, which must have coefficient ±1.
fn sole_offender(
    terms: &[ArctanTerm],
    ok: impl Fn(&ArctanTerm) -> bool,
    what: &str,
) -> Result<usize> {
    let bad: Vec<usize> = (0..terms.len()).filter(|&i| !ok(&terms[i])).collect();
    let [i] = bad[..] else {
        return Err(Error::Precondition(format!(
            "expected exactly one {what} term, found {}",
            bad.len()
        )));
    };
    if terms[i].coeff().abs() != Rational::one() {
        return Err(Error::Precondition(format!(
            "the {what} term has coefficient {}, not ±1",
            terms[i].coeff()
        )));
    }
    Ok(i)
}

/// Floors term `i` repeatedly, following the remainder, until a step leaves
/// no remainder or `max_steps` steps have been taken. Progress is reported
/// through `on_step`.
pub(crate) fn integerize_term(
    terms: &mut Vec<ArctanTerm>,
    mut i: usize,
    mode: IntegerizeMode,
    max_steps: usize,
    trace: &mut DerivationTrace,
    on_step: &mut dyn FnMut(usize),
) -> Result<(usize, IntegerizeStatus)> {
    let mut taken = 0;
    while taken < max_steps {
        let step = perform(terms, i, mode.op())?;
        taken += 1;
        on_step(taken);
        let done = step.remainder().is_some_and(|r| r.is_zero());
        trace.push(step);
        if done {
            return Ok((taken, IntegerizeStatus::Terminated));
        }
        i += 1;
    }
    Ok((taken, IntegerizeStatus::StepCapped))
}

/// Rewrites the one term whose reciprocal is not an integer (or an
/// `n`-place decimal) into a chain of such terms.
///
/// Each step floors `z = 1/arg` of the current remainder term exactly as
/// stored, sign included; the loop ends when a step leaves no remainder,
/// so the final step is the one applied to an integer (or decimal) `z`.
pub fn integerize(
    f: &MachinFormula,
    mode: IntegerizeMode,
    max_steps: usize,
) -> Result<IntegerizeOutcome> {
    integerize_with_progress(f, mode, max_steps, &mut |_| {})
}

pub fn integerize_with_progress(
    f: &MachinFormula,
    mode: IntegerizeMode,
    max_steps: usize,
    on_step: &mut dyn FnMut(usize),
) -> Result<IntegerizeOutcome> {
    let places = mode.places();
    let what = if places == 0 {
        "non-integer-reciprocal"
    } else {
        "non-decimal-reciprocal"
    };
    let i = sole_offender(f.terms(), |t| is_decimal_reciprocal(t.arg(), places), what)?;
    let mut terms = f.terms().to_vec();
    let mut trace = DerivationTrace::new(terms.clone());
    let (steps, status) = integerize_term(&mut terms, i, mode, max_steps, &mut trace, on_step)?;
    trace.push(TraceStep::Combine);
    Ok(IntegerizeOutcome {
        formula: combine_like_terms(terms)?,
        trace,
        status,
        steps,
    })
}

/// Splits `arctan(t)` off the single quotient term for each target in turn,
/// carrying the remainder forward, then combines like terms.
pub fn peel_powers_of_ten(
    f: &MachinFormula,
    targets: &[Rational],
) -> Result<(MachinFormula, DerivationTrace)> {
    let mut trace = DerivationTrace::new(f.terms().to_vec());
    if targets.is_empty() {
        return Ok((f.clone(), trace));
    }
    let mut i = sole_offender(f.terms(), ArctanTerm::is_integer_reciprocal, "quotient")?;
    let mut terms = f.terms().to_vec();
    for (n, t) in targets.iter().enumerate() {
        if i >= terms.len() {
            return Err(Error::Precondition(format!(
                "remainder vanished before target {}",
                n + 1
            )));
        }
        let step = perform(&mut terms, i, Op::Split(t))?;
        let vanished = step.remainder().is_some_and(|r| r.is_zero());
        trace.push(step);
        i = if vanished { usize::MAX } else { i + 1 };
    }
    trace.push(TraceStep::Combine);
    Ok((combine_like_terms(terms)?, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::product_check;
    use crate::generator::two_term_seed;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn eq12() -> MachinFormula {
        MachinFormula::from_pairs([(q("8"), q("1/10")), (q("-1"), q("1758719/147153121"))]).unwrap()
    }

    #[test]
    fn eq16_from_seed() {
        let seed = two_term_seed(4).unwrap().formula;
        let out = integerize(&seed, IntegerizeMode::Floor, DEFAULT_MAX_STEPS).unwrap();
        assert_eq!(out.status, IntegerizeStatus::Terminated);
        assert_eq!(out.steps, 6);
        assert_eq!(out.formula.len(), 7);
        assert!(product_check(&out.formula).pass);
        assert_eq!(out.trace.replay().unwrap(), out.formula);
        // |⌊ℬ_m⌋| strictly increases.
        let floors: Vec<_> = out
            .trace
            .steps()
            .iter()
            .filter_map(|s| s.floor_value())
            .collect();
        assert!(floors.windows(2).all(|w| w[0].abs() < w[1].abs()));
    }

    #[test]
    fn step_cap() {
        let seed = two_term_seed(4).unwrap().formula;
        let out = integerize(&seed, IntegerizeMode::Floor, 3).unwrap();
        assert_eq!(out.status, IntegerizeStatus::StepCapped);
        assert_eq!(out.steps, 3);
        assert!(product_check(&out.formula).pass);
        assert_eq!(out.trace.replay().unwrap(), out.formula);
    }

    #[test]
    fn preconditions() {
        let machin =
            MachinFormula::from_pairs([(q("4"), q("1/5")), (q("-1"), q("1/239"))]).unwrap();
        assert!(matches!(
            integerize(&machin, IntegerizeMode::Floor, 8),
            Err(Error::Precondition(_))
        ));
        let two = MachinFormula::from_pairs([(q("1"), q("2/5")), (q("-2"), q("3/7"))]).unwrap();
        assert!(integerize(&two, IntegerizeMode::Floor, 8).is_err());
        let doubled =
            MachinFormula::from_pairs([(q("8"), q("1/10")), (q("-2"), q("1758719/147153121"))])
                .unwrap();
        assert!(integerize(&doubled, IntegerizeMode::Floor, 8).is_err());
    }

    #[test]
    fn peel_reproduces_printed_remainders() {
        let (f17, _) = peel_powers_of_ten(&eq12(), &[q("1/100")]).unwrap();
        let want17 = MachinFormula::from_pairs([
            (q("8"), q("1/10")),
            (q("-1"), q("1/100")),
            (q("-1"), q("28718779/14717070819")),
        ])
        .unwrap();
        assert_eq!(f17, want17);

        let targets = [q("1/100"), q("1/1000"), q("1/1000")];
        let (f19, trace) = peel_powers_of_ten(&eq12(), &targets).unwrap();
        let want19 = MachinFormula::from_pairs([
            (q("8"), q("1/10")),
            (q("-1"), q("1/100")),
            (q("-2"), q("1/1000")),
            (q("1"), q("715391356779/14717113539487181")),
        ])
        .unwrap();
        assert!(f19.same_identity(&want19));
        assert!(product_check(&f19).pass);
        assert_eq!(trace.replay().unwrap(), f19);

        let (same, _) = peel_powers_of_ten(&eq12(), &[]).unwrap();
        assert_eq!(same, eq12());
    }

    #[test]
    fn tampered_trace_is_rejected() {
        let seed = two_term_seed(4).unwrap().formula;
        let out = integerize(&seed, IntegerizeMode::Floor, DEFAULT_MAX_STEPS).unwrap();
        let mut steps = out.trace.steps().to_vec();
        if let TraceStep::Floor { floor, .. } = &mut steps[2] {
            *floor += 1;
        }
        let bad = DerivationTrace::from_parts(out.trace.start().to_vec(), steps);
        assert!(matches!(bad.replay(), Err(Error::Replay { step: 3, .. })));
    }
}
