//! The `machin` command line.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage, parse or I/O
//! error, 3 precision disagreement or step cap reached.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use machin_core::engines::{pi_from_formula, EngineKind, EvalParams};
use machin_core::error::Error as CoreError;
use machin_core::exactnum::Rational;
use machin_core::formula::{
    format_significant, lehmer_measure, product_check, reduced_lehmer_measure, registry_get,
    registry_list, MachinFormula,
};
use machin_core::generator::{
    derive_with_progress, integerize_with_progress, peel_powers_of_ten, two_term_seed,
    IntegerizeMode, IntegerizeStatus, DEFAULT_MAX_STEPS,
};

use crate::format::{parse_formula, render_formula, ParseOptions, RenderOptions};
use crate::text::abbreviate_rational;
use crate::trace_text::{export_trace, parse_trace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;

/// Largest disagreement, in units of the last digit, tolerated by `pi --check`.
const CHECK_ULPS: u32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "machin",
    version,
    about = "Exact tools for Machin-like π formulas"
)]
struct Cli {
    /// Print huge integers in full instead of abbreviating them.
    #[arg(long, global = true)]
    full: bool,
    /// Reduce non-canonical rationals and merge repeated arguments on input.
    #[arg(long, global = true)]
    autoreduce: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the exact product test and the numeric residual check.
    Validate { file: PathBuf },
    /// Print the Lehmer measure.
    Measure {
        file: PathBuf,
        /// Count arctan(1/10) as 1/2 and other powers of ten as 0.
        #[arg(long)]
        reduced: bool,
        /// Significant digits.
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=17))]
        precision: u32,
    },
    /// Write the two-term seed formula for k.
    Seed {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
        /// Output file [default: seed-k<K>.mf]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite the single non-integer reciprocal into integer reciprocals.
    Integerize {
        file: PathBuf,
        /// Floor at this many decimal places instead of to integers.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        scale: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Abbreviate long integers in the trace (not replayable).
        #[arg(long)]
        digits_only: bool,
    },
    /// Split the given arctangents off the quotient term.
    Peel {
        file: PathBuf,
        /// Comma-separated rationals, e.g. 1/100,1/1000.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        targets: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Compute π from a formula.
    Pi {
        file: PathBuf,
        #[arg(long)]
        digits: u32,
        #[arg(long, default_value = "euler", value_parser = parse_engine)]
        engine: EngineKind,
        /// Second formula that must agree within 2 units of the last digit.
        #[arg(long)]
        check: Option<PathBuf>,
        /// Put a space after every n digits.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        group: Option<u32>,
    },
    /// Run a named derivation.
    Derive {
        name: String,
        /// Output file [default: <name>.mf]
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        digits_only: bool,
    },
    /// List or show registry formulas.
    Registry {
        #[command(subcommand)]
        action: Option<RegistryAction>,
    },
    /// Replay a trace file and print the resulting formula.
    #[command(hide = true)]
    Replay {
        trace: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum RegistryAction {
    List,
    Show { name: String },
}

fn parse_engine(s: &str) -> Result<EngineKind, String> {
    s.parse()
        .map_err(|_| format!("expected one of maclaurin, euler, iter; got `{s}`"))
}

/// A failed command: exit code and message for standard error.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::DerivationMismatch { .. }
            | CoreError::Replay { .. }
            | CoreError::Registry(_) => EXIT_VALIDATION,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

struct Ctx<'a> {
    full: bool,
    parse: ParseOptions,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

// Writes to the caller's streams; a broken pipe is not worth reporting.
macro_rules! say {
    ($w:expr, $($arg:tt)*) => {{ let _ = writeln!($w, $($arg)*); }};
}

impl Ctx<'_> {
    fn display(&self) -> RenderOptions {
        RenderOptions {
            abbreviate: !self.full,
            ..Default::default()
        }
    }

    fn read(&self, path: &Path) -> Result<String, Failure> {
        fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
    }

    fn load(&mut self, path: &Path) -> Result<MachinFormula, Failure> {
        let text = self.read(path)?;
        let parsed = parse_formula(&text, self.parse)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        for w in &parsed.warnings {
            say!(self.err, "{}: warning: {w}", path.display());
        }
        Ok(parsed.formula)
    }

    fn write(&mut self, path: &Path, text: &str) -> Result<(), Failure> {
        fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
    }

    /// Writes the formula to `path` in full, or shows it on standard output.
    fn emit(
        &mut self,
        f: &MachinFormula,
        path: Option<&Path>,
        decimals: bool,
    ) -> Result<(), Failure> {
        match path {
            Some(p) => {
                let opts = RenderOptions {
                    decimal_reciprocals: decimals,
                    abbreviate: false,
                };
                self.write(p, &render_formula(f, opts))?;
                say!(self.out, "wrote {}", p.display());
            }
            None => {
                let opts = RenderOptions {
                    decimal_reciprocals: decimals,
                    ..self.display()
                };
                let _ = self.out.write_all(render_formula(f, opts).as_bytes());
            }
        }
        Ok(())
    }

    fn progress(err: &mut dyn Write) -> impl FnMut(usize) + '_ {
        move |n| {
            let _ = write!(err, "\rstep {n}");
            let _ = err.flush();
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                say!(err, "{}", rendered.trim_end());
                EXIT_USAGE
            } else {
                let _ = out.write_all(rendered.as_bytes());
                EXIT_OK
            };
        }
    };
    let mut ctx = Ctx {
        full: cli.full,
        parse: ParseOptions {
            autoreduce: cli.autoreduce,
        },
        out,
        err,
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(f) => {
            say!(ctx.err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx<'_>) -> CmdResult {
    match cmd {
        Command::Validate { file } => validate(ctx, &file),
        Command::Measure {
            file,
            reduced,
            precision,
        } => {
            let f = ctx.load(&file)?;
            let m = if reduced {
                reduced_lehmer_measure(&f)?
            } else {
                lehmer_measure(&f)?
            };
            say!(ctx.out, "{}", format_significant(m, precision));
            Ok(EXIT_OK)
        }
        Command::Seed { k, out } => {
            let seed = two_term_seed(k)?;
            let path = out.unwrap_or_else(|| PathBuf::from(format!("seed-k{k}.mf")));
            say!(ctx.out, "alpha = {}", seed.alpha);
            say!(
                ctx.out,
                "beta = {}",
                abbreviate_or_full(ctx.full, &seed.beta)
            );
            ctx.emit(&seed.formula, Some(&path), false)?;
            Ok(EXIT_OK)
        }
        Command::Integerize {
            file,
            scale,
            max_steps,
            out,
            trace,
            digits_only,
        } => {
            let f = ctx.load(&file)?;
            let mode = scale.map_or(IntegerizeMode::Floor, IntegerizeMode::Scaled);
            let outcome =
                integerize_with_progress(&f, mode, max_steps, &mut Ctx::progress(ctx.err))?;
            say!(ctx.err, "");
            if let Some(p) = &trace {
                ctx.write(p, &export_trace(&outcome.trace, digits_only))?;
            }
            say!(ctx.out, "steps: {}", outcome.steps);
            ctx.emit(&outcome.formula, out.as_deref(), scale.is_some())?;
            if outcome.status == IntegerizeStatus::StepCapped {
                say!(
                    ctx.err,
                    "error: step cap of {max_steps} reached with a remainder left"
                );
                return Ok(EXIT_PRECISION);
            }
            Ok(EXIT_OK)
        }
        Command::Peel {
            file,
            targets,
            out,
            trace,
        } => {
            let f = ctx.load(&file)?;
            let targets = targets
                .iter()
                .map(|t| {
                    t.trim()
                        .parse::<Rational>()
                        .map_err(|_| Failure::usage(format!("target `{t}` is not a rational")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let (g, tr) = peel_powers_of_ten(&f, &targets)?;
            if let Some(p) = &trace {
                ctx.write(p, &export_trace(&tr, false))?;
            }
            ctx.emit(&g, out.as_deref(), false)?;
            Ok(EXIT_OK)
        }
        Command::Pi {
            file,
            digits,
            engine,
            check,
            group,
        } => pi(ctx, &file, digits, engine, check.as_deref(), group),
        Command::Derive {
            name,
            out,
            trace,
            digits_only,
        } => {
            let d = derive_with_progress(&name, &mut Ctx::progress(ctx.err))?;
            say!(ctx.err, "");
            let path = out.unwrap_or_else(|| PathBuf::from(format!("{name}.mf")));
            if let Some(p) = &trace {
                ctx.write(p, &export_trace(&d.trace, digits_only))?;
            }
            say!(
                ctx.out,
                "{}: {} terms, {} floor steps",
                d.name,
                d.formula.len(),
                d.trace.floor_steps()
            );
            ctx.emit(&d.formula, Some(&path), name == "eq30")?;
            Ok(EXIT_OK)
        }
        Command::Registry { action } => registry(ctx, action.unwrap_or(RegistryAction::List)),
        Command::Replay { trace, out } => {
            let text = ctx.read(&trace)?;
            let t = parse_trace(&text)
                .map_err(|e| Failure::usage(format!("{}: {e}", trace.display())))?;
            let f = t.replay()?;
            ctx.emit(&f, out.as_deref(), false)?;
            Ok(EXIT_OK)
        }
    }
}

fn abbreviate_or_full(full: bool, x: &Rational) -> String {
    if full {
        x.to_string()
    } else {
        abbreviate_rational(x)
    }
}

fn validate(ctx: &mut Ctx<'_>, file: &Path) -> CmdResult {
    let f = ctx.load(file)?;
    let r = product_check(&f);
    let verdict = |b: bool| if b { "pass" } else { "FAIL" };
    say!(ctx.out, "exact: {}", verdict(r.exact_pass));
    let (sign, im) = if r.witness.im.is_negative() {
        ("-", -&r.witness.im)
    } else {
        ("+", r.witness.im.clone())
    };
    say!(
        ctx.out,
        "witness: {} {sign} {}i",
        abbreviate_or_full(ctx.full, &r.witness.re),
        abbreviate_or_full(ctx.full, &im)
    );
    say!(ctx.out, "residual: {}", r.numeric_residual);
    say!(ctx.out, "result: {}", verdict(r.pass));
    Ok(if r.pass { EXIT_OK } else { EXIT_VALIDATION })
}

/// Loads, validates and evaluates one formula for `pi`.
fn pi_digits(
    ctx: &mut Ctx<'_>,
    file: &Path,
    params: &EvalParams,
    engine: EngineKind,
) -> Result<machin_core::exactnum::FixedDecimal, Failure> {
    let f = ctx.load(file)?;
    if !product_check(&f).pass {
        return Err(Failure {
            code: EXIT_VALIDATION,
            message: format!("{} does not pass validation", file.display()),
        });
    }
    Ok(pi_from_formula(&f, params, engine)?)
}

fn pi(
    ctx: &mut Ctx<'_>,
    file: &Path,
    digits: u32,
    engine: EngineKind,
    check: Option<&Path>,
    group: Option<u32>,
) -> CmdResult {
    let params = EvalParams::new(digits);
    let v = pi_digits(ctx, file, &params, engine)?;
    say!(ctx.out, "{}", group_digits(&v.to_string(), group));
    if let Some(other) = check {
        let w = pi_digits(ctx, other, &params, engine)?;
        let ulps = v.ulps_from(&w)?;
        if ulps > CHECK_ULPS.into() {
            say!(
                ctx.err,
                "error: {} and {} differ by {ulps} units in the last place",
                file.display(),
                other.display()
            );
            return Ok(EXIT_PRECISION);
        }
        say!(ctx.err, "check: agree within {ulps} ulp");
    }
    Ok(EXIT_OK)
}

/// Inserts a space after every `n` digits following the decimal point.
fn group_digits(s: &str, n: Option<u32>) -> String {
    let (Some(n), Some((int, frac))) = (n, s.split_once('.')) else {
        return s.to_string();
    };
    let chunks: Vec<&str> = frac
        .as_bytes()
        .chunks(n as usize)
        .map(|c| std::str::from_utf8(c).expect("ASCII digits"))
        .collect();
    format!("{int}.{}", chunks.join(" "))
}

fn registry(ctx: &mut Ctx<'_>, action: RegistryAction) -> CmdResult {
    match action {
        RegistryAction::List => {
            for e in registry_list()? {
                let measure = match e.expected_measure {
                    Some(m) if e.reduced => format!("{m} (reduced)"),
                    Some(m) => m.to_string(),
                    None => "-".to_string(),
                };
                say!(
                    ctx.out,
                    "{:<16} {:>2} terms  measure {measure}",
                    e.name,
                    e.formula.len()
                );
            }
        }
        RegistryAction::Show { name } => {
            let e = registry_get(&name)?;
            let m = lehmer_measure(&e.formula)?;
            let r = reduced_lehmer_measure(&e.formula)?;
            // Header first so the listing is itself a valid formula file.
            let text = render_formula(&e.formula, ctx.display());
            let (header, body) = text.split_once('\n').expect("header line");
            say!(ctx.out, "{header}");
            say!(ctx.out, "# {}", e.name);
            if !e.note.is_empty() {
                say!(ctx.out, "# {}", e.note);
            }
            say!(
                ctx.out,
                "# measure {} (reduced {})",
                format_significant(m, 6),
                format_significant(r, 6)
            );
            let _ = ctx.out.write_all(body.as_bytes());
        }
    }
    Ok(EXIT_OK)
}
