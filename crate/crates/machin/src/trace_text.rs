//! Text export and import of derivation traces.
//!
//! ```text
//! derivation-trace v1
//! start term: 8 atan 1/10
//! start term: 1 atan -1758719/147153121
//! step 1: floor=-84 remainder=-579275/12362620883 term=1 input=-147153121/1758719
//! step 2: floor=-83.68 remainder=-412123/307888297107 term=1 input=-147153121/1758719 scale=2
//! step 3: split=1/100 remainder=28718779/14717070819 term=1 input=1758719/147153121
//! step 4: double-split half=2513489 correction=7939642926390344818 term=3 input=2513489/2
//! step 5: combine
//! ```
//!
//! Every value is written with full digits, so a trace replays exactly.
//! The `digits_only` export abbreviates long integers for reading; such a
//! trace can no longer be parsed.

use std::collections::HashMap;
use std::fmt::Write as _;

use machin_core::exactnum::Rational;
use machin_core::formula::ArctanTerm;
use machin_core::generator::{DerivationTrace, TraceStep};
use num_bigint::BigInt;

use crate::format::{parse_decimal, render_term, tokens, FormatError, RenderOptions};
use crate::text::{abbreviate_int, exact_decimal};

pub const TRACE_HEADER: &str = "derivation-trace v1";

struct Writer {
    digits_only: bool,
}

impl Writer {
    fn int(&self, x: &BigInt) -> String {
        if self.digits_only {
            abbreviate_int(x)
        } else {
            x.to_string()
        }
    }

    /// `p` or `p/q`.
    fn rational(&self, x: &Rational) -> String {
        if x.is_integer() {
            self.int(x.numer())
        } else {
            self.fraction(x)
        }
    }

    /// Always `p/q`.
    fn fraction(&self, x: &Rational) -> String {
        format!("{}/{}", self.int(x.numer()), self.int(x.denom()))
    }

    /// Exact decimal at `places` when representable, else a fraction.
    fn decimal(&self, x: &Rational, places: u32) -> String {
        match exact_decimal(x, places) {
            Some(s) if !self.digits_only || s.len() <= 80 => s,
            _ => self.rational(x),
        }
    }
}

pub fn export_trace(trace: &DerivationTrace, digits_only: bool) -> String {
    let w = Writer { digits_only };
    let opts = RenderOptions {
        abbreviate: digits_only,
        ..Default::default()
    };
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for t in trace.start() {
        writeln!(out, "start term: {}", render_term(t, opts)).unwrap();
    }
    for (i, step) in trace.steps().iter().enumerate() {
        let m = i + 1;
        let line = match step {
            TraceStep::Floor {
                term,
                z,
                floor,
                remainder,
            } => format!(
                "floor={} remainder={} term={term} input={}",
                w.int(floor),
                w.fraction(remainder),
                w.rational(z)
            ),
            TraceStep::ScaledFloor {
                term,
                z,
                places,
                floor,
                remainder,
            } => format!(
                "floor={} remainder={} term={term} input={} scale={places}",
                w.decimal(floor, *places),
                w.fraction(remainder),
                w.rational(z)
            ),
            TraceStep::Split {
                term,
                x,
                target,
                remainder,
            } => format!(
                "split={} remainder={} term={term} input={}",
                w.rational(target),
                w.fraction(remainder),
                w.rational(x)
            ),
            TraceStep::DoubleSplit {
                term,
                x,
                half,
                correction,
            } => format!(
                "double-split half={} correction={} term={term} input={}",
                w.rational(half),
                w.rational(correction),
                w.rational(x)
            ),
            TraceStep::Combine => "combine".to_string(),
        };
        writeln!(out, "step {m}: {line}").unwrap();
    }
    out
}

fn value(s: &str) -> Result<Rational, String> {
    if s.contains('.') {
        let (neg, body) = match s.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, s),
        };
        let d = parse_decimal(body)?;
        return Ok(if neg { -d } else { d });
    }
    s.parse().map_err(|_| format!("`{s}` is not a rational"))
}

pub fn parse_trace(text: &str) -> Result<DerivationTrace, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, l)) if l.trim_end() == TRACE_HEADER => {}
        Some((n, _)) => {
            return Err(FormatError::new(
                n,
                1,
                format!("expected header `{TRACE_HEADER}`"),
            ))
        }
        None => return Err(FormatError::new(1, 1, "empty file")),
    }
    let mut start = Vec::new();
    let mut steps = Vec::new();
    for (n, line) in lines {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(pos) = line.find('…') {
            return Err(FormatError::new(
                n,
                pos + 1,
                "digits are abbreviated; re-export without --digits-only",
            ));
        }
        if let Some(rest) = trimmed.strip_prefix("start ") {
            if !steps.is_empty() {
                return Err(FormatError::new(n, 1, "start terms must precede steps"));
            }
            start.push(parse_start(rest, n)?);
        } else if trimmed.starts_with("step ") {
            let step = parse_step(trimmed, n, steps.len() + 1)?;
            steps.push(step);
        } else {
            return Err(FormatError::new(
                n,
                1,
                "expected `start term:` or `step <m>:`",
            ));
        }
    }
    if start.is_empty() {
        return Err(FormatError::new(1, 1, "trace has no start terms"));
    }
    Ok(DerivationTrace::from_parts(start, steps))
}

fn parse_start(rest: &str, line: usize) -> Result<ArctanTerm, FormatError> {
    let text = format!("{}\n{rest}\n", crate::format::FORMULA_HEADER);
    // Reuse the formula grammar; report positions against this line.
    let offset = "start ".len();
    crate::format::parse_formula(&text, Default::default())
        .map(|p| p.formula.terms()[0].clone())
        .map_err(|e| FormatError::new(line, e.column + offset, e.message))
}

fn parse_step(s: &str, line: usize, expected: usize) -> Result<TraceStep, FormatError> {
    let toks = tokens(s);
    let at = |off: usize, msg: String| FormatError::new(line, off + 1, msg);
    let (Some(&(_, "step")), Some(&(m_off, m))) = (toks.first(), toks.get(1)) else {
        return Err(at(0, "expected `step <m>:`".into()));
    };
    match m.strip_suffix(':').and_then(|m| m.parse::<usize>().ok()) {
        Some(k) if k == expected => {}
        Some(k) => {
            return Err(at(
                m_off,
                format!("step {k} out of order; expected {expected}"),
            ))
        }
        None => return Err(at(m_off, "expected `<m>:`".into())),
    }
    let body = &toks[2..];
    let Some(&(op_off, op)) = body.first() else {
        return Err(at(s.len(), "missing step body".into()));
    };
    if op == "combine" {
        return Ok(TraceStep::Combine);
    }
    let mut fields: HashMap<&str, (usize, &str)> = HashMap::new();
    for &(off, tok) in body {
        if let Some((k, v)) = tok.split_once('=') {
            fields.insert(k, (off + k.len() + 1, v));
        } else if tok != "double-split" {
            return Err(at(off, format!("unexpected token `{tok}`")));
        }
    }
    let get = |k: &str| -> Result<Rational, FormatError> {
        let &(off, v) = fields
            .get(k)
            .ok_or_else(|| at(op_off, format!("missing `{k}=`")))?;
        value(v).map_err(|m| at(off, m))
    };
    let index = |k: &str| -> Result<usize, FormatError> {
        let &(off, v) = fields
            .get(k)
            .ok_or_else(|| at(op_off, format!("missing `{k}=`")))?;
        v.parse()
            .map_err(|_| at(off, format!("`{v}` is not an index")))
    };
    let term = index("term")?;
    let step = if op == "double-split" {
        TraceStep::DoubleSplit {
            term,
            x: get("input")?,
            half: get("half")?,
            correction: get("correction")?,
        }
    } else if op.starts_with("split=") {
        TraceStep::Split {
            term,
            x: get("input")?,
            target: get("split")?,
            remainder: get("remainder")?,
        }
    } else if op.starts_with("floor=") {
        let floor = get("floor")?;
        let z = get("input")?;
        let remainder = get("remainder")?;
        if fields.contains_key("scale") {
            TraceStep::ScaledFloor {
                term,
                z,
                places: index("scale")? as u32,
                floor,
                remainder,
            }
        } else {
            if !floor.is_integer() {
                let (off, _) = fields["floor"];
                return Err(at(off, "integer floor expected without `scale=`".into()));
            }
            TraceStep::Floor {
                term,
                z,
                floor: floor.numer().clone(),
                remainder,
            }
        }
    } else {
        return Err(at(op_off, format!("unknown step `{op}`")));
    };
    Ok(step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use machin_core::generator::derive;

    #[test]
    fn round_trip_small_derivations() {
        for name in ["eq11", "eq15", "eq16", "eq19", "eq30", "klingenstierna"] {
            let d = derive(name).unwrap();
            let text = export_trace(&d.trace, false);
            let back = parse_trace(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(back, d.trace, "{name}");
            assert_eq!(back.replay().unwrap(), d.formula);
        }
    }

    #[test]
    fn eq30_lines_show_decimal_floors() {
        let d = derive("eq30").unwrap();
        let text = export_trace(&d.trace, false);
        let first = text.lines().find(|l| l.starts_with("step 1:")).unwrap();
        assert_eq!(
            first,
            "step 1: floor=-83.68 remainder=-412123/307888297107 term=1 input=-147153121/1758719 scale=2"
        );
    }

    #[test]
    fn digits_only_is_not_replayable() {
        let d = derive("eq16").unwrap();
        let text = export_trace(&d.trace, true);
        assert!(text.contains("(84 digits)"), "{text}");
        let e = parse_trace(&text).unwrap_err();
        assert!(e.message.contains("abbreviated"), "{e}");
    }

    #[test]
    fn malformed_steps() {
        let base = "derivation-trace v1\nstart term: 1 atan 1/2\n";
        for (body, col) in [
            ("step 2: combine", 6),
            ("step 1: floor=3 term=0 input=5/2", 9),
            ("step 1: frob=1 term=0", 9),
            ("step 1: floor=x remainder=0/1 term=0 input=2", 15),
        ] {
            let e = parse_trace(&format!("{base}{body}\n")).unwrap_err();
            assert_eq!((e.line, e.column), (3, col), "{body}: {e}");
        }
    }
}
