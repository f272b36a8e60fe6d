//! The line-oriented formula file format.
//!
//! ```text
//! machin-formula v1
//! # optional comments
//! term: 4 atan 1/5
//! term: -1 atan 1/239
//! ```
//!
//! Coefficients are `p` or `p/q`; arguments are `num/den` with `den > 0`.
//! Both must be in lowest terms. With decimal rendering enabled an argument
//! whose reciprocal is a finite decimal may also be written `1/83.68`.

use std::fmt::Write as _;

use machin_core::exactnum::{FixedDecimal, Rational};
use machin_core::formula::{ArctanTerm, MachinFormula};
use num_bigint::BigInt;

use crate::text::abbreviate_int;

pub const FORMULA_HEADER: &str = "machin-formula v1";

/// A syntax or content error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl FormatError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RenderOptions {
    /// Write `1/83.68` for arguments whose reciprocal is a finite decimal.
    pub decimal_reciprocals: bool,
    /// Abbreviate integers longer than 80 digits (display only; not parseable).
    pub abbreviate: bool,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Reduce non-canonical rationals and merge repeated arguments, with a
    /// warning, instead of rejecting them.
    pub autoreduce: bool,
}

#[derive(Debug, Clone)]
pub struct Parsed {
    pub formula: MachinFormula,
    pub warnings: Vec<String>,
}

pub fn render_formula(f: &MachinFormula, opts: RenderOptions) -> String {
    let mut out = String::from(FORMULA_HEADER);
    out.push('\n');
    for t in f.terms() {
        writeln!(out, "term: {}", render_term(t, opts)).unwrap();
    }
    out
}

/// `<coeff> atan <arg>`.
pub fn render_term(t: &ArctanTerm, opts: RenderOptions) -> String {
    let int = |x: &BigInt| {
        if opts.abbreviate {
            abbreviate_int(x)
        } else {
            x.to_string()
        }
    };
    let c = t.coeff();
    let coeff = if c.is_integer() {
        int(c.numer())
    } else {
        format!("{}/{}", int(c.numer()), int(c.denom()))
    };
    let arg = match opts
        .decimal_reciprocals
        .then(|| decimal_reciprocal(t.arg()))
        .flatten()
    {
        Some(s) => s,
        None => format!("{}/{}", int(t.arg().numer()), int(t.arg().denom())),
    };
    format!("{coeff} atan {arg}")
}

/// Number of decimal places needed to write `1/d` exactly, if finite.
fn decimal_places(d: &BigInt) -> Option<u32> {
    let mut d = d.magnitude().clone();
    let (mut twos, mut fives) = (0u32, 0u32);
    while (&d % 2u32) == 0u32.into() && d > 1u32.into() {
        d /= 2u32;
        twos += 1;
    }
    while (&d % 5u32) == 0u32.into() && d > 1u32.into() {
        d /= 5u32;
        fives += 1;
    }
    (d == 1u32.into()).then_some(twos.max(fives))
}

/// `±1/<decimal>` when `1/x` is a finite decimal that is not an integer.
fn decimal_reciprocal(x: &Rational) -> Option<String> {
    if x.numer().magnitude() == &1u32.into() {
        return None;
    }
    let places = decimal_places(x.numer())?;
    let b = x.recip().ok()?;
    let d = FixedDecimal::exact(&b.abs(), places)?;
    let sign = if x.is_negative() { "-" } else { "" };
    Some(format!("{sign}1/{d}"))
}

pub fn parse_formula(text: &str, opts: ParseOptions) -> Result<Parsed, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, l)) if l.trim_end() == FORMULA_HEADER => {}
        Some((n, _)) => {
            return Err(FormatError::new(
                n,
                1,
                format!("expected header `{FORMULA_HEADER}`"),
            ))
        }
        None => return Err(FormatError::new(1, 1, "empty file")),
    }
    let mut terms = Vec::new();
    let mut warnings = Vec::new();
    let mut seen: Vec<(Rational, usize)> = Vec::new();
    let mut last_line = 1;
    for (n, line) in lines {
        last_line = n;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = line.len() - trimmed.len();
        let term = parse_term_line(trimmed, n, indent, opts, &mut warnings)?;
        if let Some((_, first)) = seen.iter().find(|(a, _)| a == term.arg()) {
            let msg = format!("argument {} repeats line {first}", term.arg());
            if !opts.autoreduce {
                return Err(FormatError::new(n, indent + 1, msg));
            }
            warnings.push(format!("line {n}: {msg}; coefficients merged"));
        }
        seen.push((term.arg().clone(), n));
        terms.push(term);
    }
    if terms.is_empty() {
        return Err(FormatError::new(last_line, 1, "formula has no terms"));
    }
    let formula =
        MachinFormula::new(terms).map_err(|e| FormatError::new(last_line, 1, e.to_string()))?;
    Ok(Parsed { formula, warnings })
}

/// Splits on whitespace, keeping each token's 0-based byte offset.
pub(crate) fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((st, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out
}

fn parse_term_line(
    s: &str,
    line: usize,
    indent: usize,
    opts: ParseOptions,
    warnings: &mut Vec<String>,
) -> Result<ArctanTerm, FormatError> {
    let toks = tokens(s);
    let col = |off: usize| indent + off + 1;
    let err_at = |off: usize, msg: String| FormatError::new(line, col(off), msg);
    let [(_, "term:"), (c_off, coeff), (_, "atan"), (x_off, arg)] = toks[..] else {
        let off = toks.first().map_or(0, |t| t.0);
        return Err(err_at(
            off,
            "expected `term: <coeff> atan <num>/<den>`".into(),
        ));
    };
    let coeff = parse_rational(coeff, false, opts)
        .map_err(|m| err_at(c_off, format!("coefficient: {m}")))?;
    let arg =
        parse_rational(arg, true, opts).map_err(|m| err_at(x_off, format!("argument: {m}")))?;
    for (off, (value, reduced)) in [(c_off, &coeff), (x_off, &arg)] {
        if *reduced {
            warnings.push(format!(
                "line {line}, column {}: reduced to {value}",
                col(off)
            ));
        }
    }
    ArctanTerm::new(coeff.0, arg.0).map_err(|e| err_at(c_off, e.to_string()))
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("`{s}` is not an integer"));
    }
    s.parse().map_err(|_| format!("`{s}` is not an integer"))
}

/// `p`, `p/q`, or (arguments only) `±1/<decimal>`. Returns the value and
/// whether it had to be reduced.
fn parse_rational(s: &str, is_arg: bool, opts: ParseOptions) -> Result<(Rational, bool), String> {
    let Some((n, d)) = s.split_once('/') else {
        if is_arg {
            return Err(format!("`{s}` must be written num/den"));
        }
        return Ok((Rational::from_integer(parse_int(s)?), false));
    };
    let num = parse_int(n)?;
    if is_arg && d.contains('.') {
        if num.magnitude() != &1u32.into() {
            return Err(format!("decimal reciprocal `{s}` must have numerator ±1"));
        }
        let b = parse_decimal(d)?;
        let x = Rational::from_integer(num)
            .checked_div(&b)
            .map_err(|e| e.to_string())?;
        return Ok((x, false));
    }
    let den = parse_int(d)?;
    if den.sign() != num_bigint::Sign::Plus || d.starts_with('+') {
        return Err(format!("denominator of `{s}` must be a positive integer"));
    }
    if Rational::is_canonical_pair(&num, &den) {
        return Ok((Rational::new(num, den).map_err(|e| e.to_string())?, false));
    }
    if !opts.autoreduce {
        return Err(format!("`{s}` is not in lowest terms (use --autoreduce)"));
    }
    Ok((Rational::new(num, den).map_err(|e| e.to_string())?, true))
}

/// A positive decimal such as `83.68`.
pub(crate) fn parse_decimal(s: &str) -> Result<Rational, String> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let ok = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if int.is_empty() || !ok(int) || !ok(frac) || s.starts_with(['-', '+']) {
        return Err(format!("`{s}` is not a positive decimal"));
    }
    let mantissa: BigInt = format!("{int}{frac}")
        .parse()
        .map_err(|_| format!("`{s}`"))?;
    Ok(FixedDecimal::new(mantissa, frac.len() as u32).to_rational())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    const MACHIN: &str = "machin-formula v1\nterm: 4 atan 1/5\nterm: -1 atan 1/239\n";

    #[test]
    fn parses_machin() {
        let p = parse_formula(MACHIN, ParseOptions::default()).unwrap();
        let want = MachinFormula::from_pairs([(q("4"), q("1/5")), (q("-1"), q("1/239"))]).unwrap();
        assert_eq!(p.formula, want);
        assert!(p.warnings.is_empty());
        assert_eq!(render_formula(&p.formula, RenderOptions::default()), MACHIN);
    }

    #[test]
    fn comments_blank_lines_and_quotient_args() {
        let text = "machin-formula v1\n# Wetherfield\n\nterm: 83 atan 1/107\nterm: -12 atan 2/2513489\nterm: 1/2 atan -3/7\n";
        let f = parse_formula(text, ParseOptions::default())
            .unwrap()
            .formula;
        assert_eq!(f.terms()[1].arg(), &q("2/2513489"));
        assert_eq!(f.terms()[2].coeff(), &q("1/2"));
        assert_eq!(f.terms()[2].arg(), &q("-3/7"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula(
            "machin-formula v1\nterm: 0 atan 1/5\n",
            ParseOptions::default(),
        )
        .unwrap_err();
        assert_eq!((e.line, e.column), (2, 7));
        assert!(e.message.contains("zero coefficient"), "{e}");

        let e = parse_formula(
            "machin-formula v1\nterm: 1 atan 5/4\n",
            ParseOptions::default(),
        )
        .unwrap_err();
        assert_eq!(e.line, 2);

        let e = parse_formula("machin-formula v2\n", ParseOptions::default()).unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));

        let e = parse_formula(
            "machin-formula v1\nterm: 4 acot 5\n",
            ParseOptions::default(),
        )
        .unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));

        let e = parse_formula(
            "machin-formula v1\n  term: 4 atan 1/x\n",
            ParseOptions::default(),
        )
        .unwrap_err();
        assert_eq!((e.line, e.column), (2, 16));

        let e = parse_formula(
            "machin-formula v1\nterm: 4 atan 1/-5\n",
            ParseOptions::default(),
        )
        .unwrap_err();
        assert!(e.message.contains("positive"), "{e}");

        let e =
            parse_formula("machin-formula v1\n# nothing\n", ParseOptions::default()).unwrap_err();
        assert!(e.message.contains("no terms"));
    }

    #[test]
    fn unreduced_needs_autoreduce() {
        let text = "machin-formula v1\nterm: 8/2 atan 2/10\nterm: -1 atan 1/239\n";
        let e = parse_formula(text, ParseOptions::default()).unwrap_err();
        assert_eq!((e.line, e.column), (2, 7));
        let p = parse_formula(text, ParseOptions { autoreduce: true }).unwrap();
        assert_eq!(p.formula.terms()[0].arg(), &q("1/5"));
        assert_eq!(p.warnings.len(), 2);

        let dup = "machin-formula v1\nterm: 2 atan 1/5\nterm: 2 atan 1/5\nterm: -1 atan 1/239\n";
        assert!(parse_formula(dup, ParseOptions::default()).is_err());
        let p = parse_formula(dup, ParseOptions { autoreduce: true }).unwrap();
        assert_eq!(p.formula.terms()[0].coeff(), &q("4"));
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn decimal_reciprocals() {
        let f = MachinFormula::from_pairs([
            (q("8"), q("1/10")),
            (q("-1"), q("-25/2092")),
            (q("1"), q("3/7")),
        ])
        .unwrap();
        let opts = RenderOptions {
            decimal_reciprocals: true,
            ..Default::default()
        };
        let text = render_formula(&f, opts);
        assert_eq!(
            text,
            "machin-formula v1\nterm: 8 atan 1/10\nterm: -1 atan -1/83.68\nterm: 1 atan 3/7\n"
        );
        assert_eq!(
            parse_formula(&text, ParseOptions::default())
                .unwrap()
                .formula,
            f
        );
    }
}
