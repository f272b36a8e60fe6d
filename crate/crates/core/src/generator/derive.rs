//! Scripted derivations of published formulas. Every intermediate value
//! that was printed is checked exactly; a mismatch is an error.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::pipeline::{integerize_term, peel_powers_of_ten, IntegerizeMode, IntegerizeStatus};
use super::seed::two_term_seed;
use super::trace::{perform, DerivationTrace, Op, TraceStep};
use crate::error::{Error, Result};
use crate::exactnum::{digit_count, leading_digits, trailing_digits, FixedDecimal, Rational};
use crate::formula::{combine_like_terms, registry_get, MachinFormula};

pub const DERIVATIONS: &[&str] = &[
    "eq11",
    "eq15",
    "eq16",
    "eq19",
    "eq22",
    "eq30",
    "klingenstierna",
];

const MAX_STEPS: usize = 64;

#[derive(Debug, Clone)]
pub struct Derivation {
    pub name: &'static str,
    pub formula: MachinFormula,
    pub trace: DerivationTrace,
}

fn q(s: &str) -> Rational {
    s.parse().expect("fixture constants are well formed")
}

fn check<T: PartialEq + core::fmt::Display>(what: &str, expected: &T, got: &T) -> Result<()> {
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

fn check_same_identity(name: &str, got: &MachinFormula) -> Result<()> {
    let want = registry_get(name)?.formula;
    if got.same_identity(&want) {
        Ok(())
    } else {
        Err(Error::DerivationMismatch {
            what: format!("{name} formula"),
            expected: want.to_string(),
            got: got.to_string(),
        })
    }
}

/// Checks an integer's digit count and its two ends.
fn check_big(what: &str, x: &BigInt, digits: u64, head: &str, tail: &str) -> Result<()> {
    check(&format!("{what} digit count"), &digits, &digit_count(x))?;
    check(
        &format!("{what} leading digits"),
        &head.to_string(),
        &leading_digits(x, head.len() as u64),
    )?;
    check(
        &format!("{what} trailing digits"),
        &tail.to_string(),
        &trailing_digits(x, tail.len() as u64),
    )
}

fn floors(trace: &DerivationTrace) -> Vec<Rational> {
    trace
        .steps()
        .iter()
        .filter_map(TraceStep::floor_value)
        .collect()
}

fn floor_inputs(trace: &DerivationTrace) -> Vec<Rational> {
    trace
        .steps()
        .iter()
        .filter_map(|s| s.floored_input().cloned())
        .collect()
}

fn remainders(trace: &DerivationTrace) -> Vec<Rational> {
    trace
        .steps()
        .iter()
        .filter_map(|s| s.remainder().cloned())
        .collect()
}

/// The printed two-term seed for k = 4, arguments positive.
fn eq12() -> Result<MachinFormula> {
    Ok(registry_get("eq12")?.formula)
}

fn finish(
    name: &'static str,
    terms: Vec<crate::formula::ArctanTerm>,
    mut trace: DerivationTrace,
) -> Result<Derivation> {
    trace.push(TraceStep::Combine);
    Ok(Derivation {
        name,
        formula: combine_like_terms(terms)?,
        trace,
    })
}

/// Runs a named derivation; `on_step` sees each floor step's index.
pub fn derive_with_progress(name: &str, on_step: &mut dyn FnMut(usize)) -> Result<Derivation> {
    match name {
        "eq11" => eq11(),
        "eq15" => eq15(),
        "eq16" => eq16(on_step),
        "eq19" => eq19(),
        "eq22" => eq22(on_step),
        "eq30" => eq30(on_step),
        "klingenstierna" => klingenstierna(),
        _ => Err(Error::NotFound(name.to_string())),
    }
}

pub fn derive(name: &str) -> Result<Derivation> {
    derive_with_progress(name, &mut |_| {})
}

/// Both quotients of Wetherfield's formula removed by double splitting.
fn eq11() -> Result<Derivation> {
    let start = registry_get("eq14")?.formula.into_terms();
    let mut terms = start.clone();
    let mut trace = DerivationTrace::new(start);
    let expected = [
        (3, "2513489", "7939642926390344818"),
        (5, "18280007883", "3054211727257704725384731479018"),
    ];
    for (i, half, corr) in expected {
        let step = perform(&mut terms, i, Op::DoubleSplit)?;
        if let TraceStep::DoubleSplit {
            half: h,
            correction: c,
            ..
        } = &step
        {
            check("double-split half", &q(half), h)?;
            check("double-split correction", &q(corr), c)?;
        }
        trace.push(step);
    }
    let d = finish("eq11", terms, trace)?;
    check_same_identity("eq11", &d.formula)?;
    Ok(d)
}

/// Both quotients of Wetherfield's formula removed by one floor step each.
fn eq15() -> Result<Derivation> {
    let start = registry_get("eq14")?.formula.into_terms();
    let mut terms = start.clone();
    let mut trace = DerivationTrace::new(start);
    let expected = [
        (3, "2513489/2", "1256744", "-1/3158812219818"),
        (5, "18280007883/2", "9140003941", "-1/167079344092131066905"),
    ];
    for (i, z, floor, rem) in expected {
        let step = perform(&mut terms, i, Op::Floor)?;
        check(
            "floor input",
            &q(z),
            step.floored_input().expect("floor step"),
        )?;
        check("floor", &q(floor), &step.floor_value().expect("floor step"))?;
        check("remainder", &q(rem), step.remainder().expect("floor step"))?;
        trace.push(step);
    }
    let d = finish("eq15", terms, trace)?;
    check_same_identity("eq15", &d.formula)?;
    Ok(d)
}

const EQ16_FLOORS: [&str; 6] = [
    "-84",
    "-21342",
    "-991268848",
    "-193018008592515208050",
    "-197967899896401851763240424238758988350338",
    "-117573868168175352930277752844194126767991915008537018836932014293678271636885792397",
];

/// The k = 4 seed, its quotient floored to integers.
fn eq16(on_step: &mut dyn FnMut(usize)) -> Result<Derivation> {
    let seed = two_term_seed(4)?;
    check("β", &q("-147153121/1758719"), &seed.beta)?;
    let start = seed.formula.into_terms();
    let mut terms = start.clone();
    let mut trace = DerivationTrace::new(start);
    let (steps, status) = integerize_term(
        &mut terms,
        1,
        IntegerizeMode::Floor,
        MAX_STEPS,
        &mut trace,
        on_step,
    )?;
    check("status", &"terminated", &status_name(status))?;
    check("floor steps", &EQ16_FLOORS.len(), &steps)?;
    let want: Vec<Rational> = EQ16_FLOORS.iter().map(|s| q(s)).collect();
    for (w, g) in want.iter().zip(floors(&trace)) {
        check("floor", w, &g)?;
    }
    let d = finish("eq16", terms, trace)?;
    check_same_identity("eq16", &d.formula)?;
    Ok(d)
}

fn status_name(s: IntegerizeStatus) -> &'static str {
    match s {
        IntegerizeStatus::Terminated => "terminated",
        IntegerizeStatus::StepCapped => "step-capped",
    }
}

const EQ19_REMAINDERS: [&str; 3] = [
    "28718779/14717070819",
    "14001708181/14717099537779",
    "-715391356779/14717113539487181",
];

/// The printed seed with 1/100, 1/1000 and 1/1000 split off the quotient.
fn eq19() -> Result<Derivation> {
    let targets = [q("1/100"), q("1/1000"), q("1/1000")];
    let (formula, trace) = peel_powers_of_ten(&eq12()?, &targets)?;
    for (w, g) in EQ19_REMAINDERS.iter().zip(remainders(&trace)) {
        check("split remainder", &q(w), &g)?;
    }
    let want = MachinFormula::from_pairs([
        (q("8"), q("1/10")),
        (q("-1"), q("1/100")),
        (q("-2"), q("1/1000")),
        (q("1"), q("715391356779/14717113539487181")),
    ])?;
    if !formula.same_identity(&want) {
        return Err(Error::DerivationMismatch {
            what: "eq19 formula".into(),
            expected: want.to_string(),
            got: formula.to_string(),
        });
    }
    Ok(Derivation {
        name: "eq19",
        formula,
        trace,
    })
}

const EQ22_FLOORS: [&str; 4] = [
    "-20573",
    "-478436082",
    "-1410925365001336732",
    "-2921851992939769423775706369842706095",
];
const EQ22_STEPS: usize = 18;
const EQ22_LAST_DIGITS: u64 = 600_593;

/// eq19's remainder integerized: 21 terms.
fn eq22(on_step: &mut dyn FnMut(usize)) -> Result<Derivation> {
    let peeled = eq19()?;
    let start = peeled.formula.terms().to_vec();
    let i = start
        .iter()
        .position(|t| !t.is_integer_reciprocal())
        .expect("eq19 keeps one quotient");
    let mut terms = start.clone();
    let mut tail = DerivationTrace::new(start);
    let (steps, status) = integerize_term(
        &mut terms,
        i,
        IntegerizeMode::Floor,
        MAX_STEPS,
        &mut tail,
        on_step,
    )?;
    check("status", &"terminated", &status_name(status))?;
    check("floor steps", &EQ22_STEPS, &steps)?;
    let inputs = floor_inputs(&tail);
    check("ℬ_1", &q("-14717113539487181/715391356779"), &inputs[0])?;
    check(
        "first remainder",
        &q("-316421763593/151387588781630565746"),
        &remainders(&tail)[0],
    )?;
    let fl = floors(&tail);
    for (w, g) in EQ22_FLOORS.iter().zip(&fl) {
        check("floor", &q(w), g)?;
    }
    let last = inputs.last().expect("18 steps");
    check("ℬ_18 is an integer", &true, &last.is_integer())?;
    check_big(
        "ℬ_18",
        last.numer(),
        EQ22_LAST_DIGITS,
        "11706198288",
        "356246893153",
    )?;
    let mut trace = peeled.trace;
    trace.extend(tail);
    finish("eq22", terms, trace)
}

/// Decimal floors at two places as printed, except the fourth: the printed
/// `399648835184411935214717088966.73` has the right digits with the
/// decimal point one place early.
pub const EQ30_FLOORS: [&str; 4] = [
    "83.68",
    "747078.66",
    "154562469884551.31",
    "3996488351844119352147170889667.30",
];
const EQ30_STEPS: usize = 9;
const EQ30_LAST_DIGITS: u64 = 1052;

/// The k = 4 seed integerized at two decimal places.
fn eq30(on_step: &mut dyn FnMut(usize)) -> Result<Derivation> {
    let start = two_term_seed(4)?.formula.into_terms();
    let mut terms = start.clone();
    let mut trace = DerivationTrace::new(start);
    let mode = IntegerizeMode::Scaled(2);
    let (steps, status) = integerize_term(&mut terms, 1, mode, MAX_STEPS, &mut trace, on_step)?;
    check("status", &"terminated", &status_name(status))?;
    check("floor steps", &EQ30_STEPS, &steps)?;
    let rems = remainders(&trace);
    check(
        "first remainder magnitude",
        &q("412123/307888297107"),
        &rems[0].abs(),
    )?;
    check(
        "second remainder magnitude",
        &q("74409/11500838821639577981"),
        &rems[1].abs(),
    )?;
    for (w, g) in EQ30_FLOORS.iter().zip(floors(&trace)) {
        let shown: String = FixedDecimal::exact(&g.abs(), 2)
            .map(|d| d.to_string())
            .unwrap_or_default();
        check("decimal floor", &w.to_string(), &shown)?;
    }
    let last = floor_inputs(&trace).pop().expect("nine steps");
    check("ℬ_9 is an integer", &true, &last.is_integer())?;
    check_big(
        "ℬ_9",
        last.numer(),
        EQ30_LAST_DIGITS,
        "8665971818",
        "7222871549",
    )?;
    finish("eq30", terms, trace)
}

/// The printed seed with 1/100 and 1/515 split off the quotient.
fn klingenstierna() -> Result<Derivation> {
    let (formula, trace) = peel_powers_of_ten(&eq12()?, &[q("1/100"), q("1/515")])?;
    let rems = remainders(&trace);
    check("split remainder", &q("28718779/14717070819"), &rems[0])?;
    check("split remainder", &q("3583/371498882"), &rems[1])?;
    check_same_identity("klingenstierna", &formula)?;
    Ok(Derivation {
        name: "klingenstierna",
        formula,
        trace,
    })
}
