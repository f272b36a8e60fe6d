//! Replayable record of a derivation.
//!
//! Steps act on an uncombined, ordered term list. Every rewrite replaces
//! term `i` in place and, when a nonzero remainder is left, inserts it at
//! `i + 1`. Replay recomputes each step from the current term list, checks
//! it against the recorded values and combines like terms at the end.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::steps::{double_split, floor_step, scaled_floor_step, split_term};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::formula::{combine_like_terms, ArctanTerm, MachinFormula};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceStep {
    /// `arctan(1/z) → arctan(1/floor) + arctan(remainder)`.
    Floor {
        term: usize,
        z: Rational,
        floor: BigInt,
        remainder: Rational,
    },
    /// As `Floor` with `z` floored at `places` decimals.
    ScaledFloor {
        term: usize,
        z: Rational,
        places: u32,
        floor: Rational,
        remainder: Rational,
    },
    /// `arctan(x) → arctan(target) + arctan(remainder)`.
    Split {
        term: usize,
        x: Rational,
        target: Rational,
        remainder: Rational,
    },
    /// `arctan(1/x) → 2·arctan(1/half) − arctan(1/correction)`.
    DoubleSplit {
        term: usize,
        x: Rational,
        half: Rational,
        correction: Rational,
    },
    /// Merge terms sharing an argument.
    Combine,
}

impl TraceStep {
    pub fn name(&self) -> &'static str {
        match self {
            TraceStep::Floor { .. } => "floor",
            TraceStep::ScaledFloor { .. } => "scaled-floor",
            TraceStep::Split { .. } => "split",
            TraceStep::DoubleSplit { .. } => "double-split",
            TraceStep::Combine => "combine",
        }
    }

    /// Index of the rewritten term, if any.
    pub fn term(&self) -> Option<usize> {
        match self {
            TraceStep::Floor { term, .. }
            | TraceStep::ScaledFloor { term, .. }
            | TraceStep::Split { term, .. }
            | TraceStep::DoubleSplit { term, .. } => Some(*term),
            TraceStep::Combine => None,
        }
    }

    /// The quantity whose reciprocal is floored (`Floor`/`ScaledFloor`).
    pub fn floored_input(&self) -> Option<&Rational> {
        match self {
            TraceStep::Floor { z, .. } | TraceStep::ScaledFloor { z, .. } => Some(z),
            _ => None,
        }
    }

    /// The floor as a rational (`Floor`/`ScaledFloor`).
    pub fn floor_value(&self) -> Option<Rational> {
        match self {
            TraceStep::Floor { floor, .. } => Some(Rational::from_integer(floor.clone())),
            TraceStep::ScaledFloor { floor, .. } => Some(floor.clone()),
            _ => None,
        }
    }

    pub fn remainder(&self) -> Option<&Rational> {
        match self {
            TraceStep::Floor { remainder, .. }
            | TraceStep::ScaledFloor { remainder, .. }
            | TraceStep::Split { remainder, .. } => Some(remainder),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    start: Vec<ArctanTerm>,
    steps: Vec<TraceStep>,
}

impl DerivationTrace {
    pub fn new(start: Vec<ArctanTerm>) -> Self {
        Self {
            start,
            steps: Vec::new(),
        }
    }

    pub fn from_parts(start: Vec<ArctanTerm>, steps: Vec<TraceStep>) -> Self {
        Self { start, steps }
    }

    pub fn start(&self) -> &[ArctanTerm] {
        &self.start
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub(crate) fn push(&mut self, step: TraceStep) {
        self.steps.push(step);
    }

    /// Appends a trace that starts where this one ends.
    pub fn extend(&mut self, other: DerivationTrace) {
        self.steps.extend(other.steps);
    }

    /// Number of floor and scaled-floor steps.
    pub fn floor_steps(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, TraceStep::Floor { .. } | TraceStep::ScaledFloor { .. }))
            .count()
    }

    /// Re-executes every step, verifying recorded values.
    pub fn replay(&self) -> Result<MachinFormula> {
        let mut terms = self.start.clone();
        for (i, step) in self.steps.iter().enumerate() {
            apply(&mut terms, step, true).map_err(|e| Error::Replay {
                step: i + 1,
                reason: e.to_string(),
            })?;
        }
        combine_like_terms(terms)
    }
}

fn term_at(terms: &[ArctanTerm], i: usize) -> Result<&ArctanTerm> {
    terms
        .get(i)
        .ok_or_else(|| Error::Precondition(format!("no term at index {i}")))
}

fn expect_eq<T: PartialEq + core::fmt::Display>(what: &str, expected: &T, got: &T) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DerivationMismatch {
            what: what.to_string(),
            expected: expected.to_string(),
            got: got.to_string(),
        })
    }
}

/// Puts `head` at index `i` and, if present, `tail` right after it.
fn rewrite(terms: &mut Vec<ArctanTerm>, i: usize, head: ArctanTerm, tail: Option<ArctanTerm>) {
    terms[i] = head;
    if let Some(t) = tail {
        terms.insert(i + 1, t);
    }
}

/// Applies one step to `terms`. With `verify`, the step's values are
/// recomputed from the current term and compared with the record.
pub(crate) fn apply(terms: &mut Vec<ArctanTerm>, step: &TraceStep, verify: bool) -> Result<()> {
    match step {
        TraceStep::Floor {
            term,
            z,
            floor,
            remainder,
        } => {
            let t = term_at(terms, *term)?;
            if verify {
                expect_eq("floor input", z, &t.reciprocal_arg())?;
                let (f, r) = floor_step(z)?;
                expect_eq("floor", floor, &f)?;
                expect_eq("remainder", remainder, &r)?;
            }
            let c = t.coeff().clone();
            let head = ArctanTerm::reciprocal(c.clone(), &Rational::from_integer(floor.clone()))?;
            let tail = nonzero_term(c, remainder)?;
            rewrite(terms, *term, head, tail);
        }
        TraceStep::ScaledFloor {
            term,
            z,
            places,
            floor,
            remainder,
        } => {
            let t = term_at(terms, *term)?;
            if verify {
                expect_eq("floor input", z, &t.reciprocal_arg())?;
                let (f, r) = scaled_floor_step(z, *places)?;
                expect_eq("floor", floor, &f)?;
                expect_eq("remainder", remainder, &r)?;
            }
            let c = t.coeff().clone();
            let head = ArctanTerm::reciprocal(c.clone(), floor)?;
            let tail = nonzero_term(c, remainder)?;
            rewrite(terms, *term, head, tail);
        }
        TraceStep::Split {
            term,
            x,
            target,
            remainder,
        } => {
            let t = term_at(terms, *term)?;
            if verify {
                expect_eq("split input", x, t.arg())?;
                let r = split_term(x, target)?;
                expect_eq("remainder", remainder, &r)?;
            }
            let c = t.coeff().clone();
            let head = ArctanTerm::new(c.clone(), target.clone())?;
            let tail = nonzero_term(c, remainder)?;
            rewrite(terms, *term, head, tail);
        }
        TraceStep::DoubleSplit {
            term,
            x,
            half,
            correction,
        } => {
            let t = term_at(terms, *term)?;
            if verify {
                expect_eq("double-split input", x, &t.reciprocal_arg())?;
                let (h, k) = double_split(x)?;
                expect_eq("half", half, &h)?;
                expect_eq("correction", correction, &k)?;
            }
            let c = t.coeff().clone();
            let head = ArctanTerm::reciprocal(&c * &Rational::from_integer(2), half)?;
            let tail = ArctanTerm::reciprocal(-&c, correction)?;
            rewrite(terms, *term, head, Some(tail));
        }
        TraceStep::Combine => {
            let combined = combine_like_terms(core::mem::take(terms))?;
            *terms = combined.into_terms();
        }
    }
    Ok(())
}

fn nonzero_term(coeff: Rational, arg: &Rational) -> Result<Option<ArctanTerm>> {
    if arg.is_zero() {
        Ok(None)
    } else {
        ArctanTerm::new(coeff, arg.clone()).map(Some)
    }
}

/// Computes and applies a step of the given kind to term `i`, returning
/// the recorded step.
pub(crate) fn perform(terms: &mut Vec<ArctanTerm>, i: usize, op: Op<'_>) -> Result<TraceStep> {
    let t = term_at(terms, i)?;
    let step = match op {
        Op::Floor => {
            let z = t.reciprocal_arg();
            let (floor, remainder) = floor_step(&z)?;
            TraceStep::Floor {
                term: i,
                z,
                floor,
                remainder,
            }
        }
        Op::ScaledFloor(places) => {
            let z = t.reciprocal_arg();
            let (floor, remainder) = scaled_floor_step(&z, places)?;
            TraceStep::ScaledFloor {
                term: i,
                z,
                places,
                floor,
                remainder,
            }
        }
        Op::Split(target) => {
            let x = t.arg().clone();
            let remainder = split_term(&x, target)?;
            TraceStep::Split {
                term: i,
                x,
                target: target.clone(),
                remainder,
            }
        }
        Op::DoubleSplit => {
            let x = t.reciprocal_arg();
            let (half, correction) = double_split(&x)?;
            TraceStep::DoubleSplit {
                term: i,
                x,
                half,
                correction,
            }
        }
    };
    apply(terms, &step, false)?;
    Ok(step)
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Op<'a> {
    Floor,
    ScaledFloor(u32),
    Split(&'a Rational),
    DoubleSplit,
}

/// Whether `x = ±1/B` with `B` an `n`-place decimal (`n = 0`: an integer).
pub(crate) fn is_decimal_reciprocal(x: &Rational, places: u32) -> bool {
    let z = x.recip().expect("term argument is nonzero");
    if places == 0 {
        return z.is_integer();
    }
    let scaled = &z * &Rational::from_integer(crate::exactnum::pow10(places));
    scaled.is_integer()
}
