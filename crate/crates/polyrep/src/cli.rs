//! The `polyrep` command line: `show`, `verify`, `act`, `band`, `seq`.
//!
//! Exit codes: 0 on success (MISMATCH findings included), 1 when `--strict`
//! and some finding is not a MATCH, 2 on load/parse/validation errors,
//! 3 when rewriting runs out of fuel.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::algebras::{builtin, resolve_algebra, Failure, LoadError, Presentation};
use crate::findings::{Ranges, Suite, Verdict, VerifyError};
use crate::freealg::{set_default_fuel, AlgError};
use crate::repspace::{Module, RepError, StateIndex};
use crate::sequences::{family_table, SeqError, SeqTable};

#[derive(Parser, Debug)]
#[command(name = "polyrep", version, about = "Exact representations of polynomial symmetry algebras")]
pub struct Cli {
    /// Rewrite budget per normal-ordering call.
    #[arg(long, global = true, env = "POLYREP_FUEL")]
    pub fuel: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a presentation in file syntax, with Casimir, relations and module.
    Show {
        /// Built-in name or `.alg` path.
        algebra: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites and write a report.
    Verify {
        algebra: String,
        /// Comma-separated subset of jacobi, casimir, lemma23, propositions, sequences, oracle.
        #[arg(long, value_delimiter = ',')]
        suites: Option<Vec<Suite>>,
        /// Probe ranges such as `m=4..10` or `0..6`; repeatable.
        #[arg(long)]
        range: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Fail (exit 1) unless every finding is a MATCH.
        #[arg(long)]
        strict: bool,
        /// Include per-suite wall-clock times (makes the report nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Apply an operator to a basis state.
    Act {
        algebra: String,
        #[arg(long)]
        op: String,
        /// State such as `F^5` or `F^2*X2^3`.
        #[arg(long)]
        state: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The matrix of an operator on a range of basis states.
    Band {
        algebra: String,
        #[arg(long)]
        op: String,
        /// Exponent ranges; a bare `a..b` applies to every slot, `F=0..3` to one.
        #[arg(long, default_value = "0..10")]
        range: Vec<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coefficient families: a, b (indices k, p), xi, upsilon (indices l, m).
    Seq {
        family: String,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        l: Option<String>,
        #[arg(long)]
        m: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Fuel(String),
    #[error("{0} findings are not MATCH")]
    Strict(usize),
    #[error("cannot write {0}: {1}")]
    Io(String, String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Strict(_) => 1,
            CliError::Input(_) | CliError::Io(..) => 2,
            CliError::Fuel(_) => 3,
        }
    }
}

fn alg_fuel(e: &AlgError) -> bool {
    matches!(e, AlgError::FuelExhausted(_))
}

fn rep_fuel(e: &RepError) -> bool {
    matches!(e, RepError::Alg(a) if alg_fuel(a))
}

fn classify(fuel: bool, msg: String) -> CliError {
    if fuel {
        CliError::Fuel(msg)
    } else {
        CliError::Input(msg)
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        let fuel = matches!(&e, LoadError::Invalid(fs) if fs.iter().any(|f| matches!(f, Failure::Rewrite(a) if alg_fuel(a))));
        classify(fuel, e.to_string())
    }
}

impl From<AlgError> for CliError {
    fn from(e: AlgError) -> Self {
        classify(alg_fuel(&e), e.to_string())
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        classify(rep_fuel(&e), e.to_string())
    }
}

impl From<SeqError> for CliError {
    fn from(e: SeqError) -> Self {
        let fuel = match &e {
            SeqError::Alg(a) => alg_fuel(a),
            SeqError::Rep(r) => rep_fuel(r),
            _ => false,
        };
        classify(fuel, e.to_string())
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        classify(e.is_fuel(), e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "polyrep: {e}");
            e.exit_code()
        }
    }
}

fn emit(text: &str, out: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e.to_string())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io("stdout".into(), e.to_string())),
    }
}

/// Resolves the algebra, then installs the fuel budget. Built-ins are
/// validated under the default budget; a user file is validated under the
/// requested one.
fn load(spec: &str, fuel: Option<u64>) -> Result<Arc<Presentation>, CliError> {
    let set = || {
        if let Some(f) = fuel {
            set_default_fuel(f);
        }
    };
    if let Some(p) = builtin(spec) {
        set();
        return Ok(p);
    }
    set();
    Ok(resolve_algebra(spec)?)
}

fn op_element(p: &Presentation, text: &str) -> Result<crate::freealg::AlgElement, CliError> {
    let e = p.parse(text).map_err(|e| CliError::Input(format!("operator `{text}`: {e}")))?;
    Ok(p.normal_order(&e)?)
}

fn range_arg(text: Option<&str>, default: (u32, u32)) -> Result<std::ops::RangeInclusive<u32>, CliError> {
    match text {
        None => Ok(default.0..=default.1),
        Some(t) => {
            let r = Ranges::parse(t).map_err(CliError::Input)?;
            Ok(r.get("m", default))
        }
    }
}

fn seq_output(t: &SeqTable, format: Format) -> String {
    match format {
        Format::Csv => t.to_csv(),
        Format::Json => serde_json::to_string_pretty(t).expect("serializable") + "\n",
        Format::Text => {
            let mut s = String::new();
            for e in &t.entries {
                s.push_str(&format!(
                    "{}({},{}): claimed {} | engine {} | {}\n",
                    t.family,
                    e.index.0,
                    e.index.1,
                    e.claimed.as_deref().unwrap_or("unreachable"),
                    e.oracle.as_deref().unwrap_or("-"),
                    if e.matches { "MATCH" } else { "MISMATCH" }
                ));
            }
            s
        }
    }
}

/// Column states for `band`: every slot ranges over its generator's range,
/// or the bare range.
fn band_columns(module: &Module, ranges: &Ranges) -> Vec<StateIndex> {
    let default = if module.arity() == 1 { (0, 10) } else { (0, 3) };
    let mut cols = vec![StateIndex::new()];
    for &g in &module.spec().template {
        let name = module.gens().name(g).to_string();
        let span = if ranges.0.contains_key(&name) { ranges.get(&name, default) } else { ranges.get("m", default) };
        cols = cols
            .into_iter()
            .flat_map(|c| {
                span.clone().map(move |e| {
                    let mut c = c.clone();
                    c.push(e);
                    c
                })
            })
            .collect();
    }
    cols
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let fuel = cli.fuel;
    match cli.command {
        Command::Show { algebra, format, out } => {
            let p = load(&algebra, fuel)?;
            let text = match format {
                Format::Json => {
                    let v = serde_json::json!({ "algebra": p.name, "presentation_hash": p.hash(), "text": p.show() });
                    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
                }
                _ => p.show(),
            };
            emit(&text, &out, stdout)
        }
        Command::Verify { algebra, suites, range, out, format, strict, timings } => {
            let p = load(&algebra, fuel)?;
            let mut ranges = Ranges::default();
            for r in &range {
                ranges.extend(r).map_err(CliError::Input)?;
            }
            let suites = suites.unwrap_or_else(|| Suite::ALL.to_vec());
            let report = crate::report::verify(&p, &suites, &ranges, timings)?;
            let text = match format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
                Format::Csv => report.to_csv(),
            };
            emit(&text, &out, stdout)?;
            let bad = report.findings.iter().filter(|f| f.verdict != Verdict::Match).count();
            if strict && bad > 0 {
                return Err(CliError::Strict(bad));
            }
            Ok(())
        }
        Command::Act { algebra, op, state, format, out } => {
            let p = load(&algebra, fuel)?;
            let module = Module::new(&p)?;
            let e = op_element(&p, &op)?;
            let idx = module.parse_state(&state).map_err(|e| CliError::Input(format!("state `{state}`: {e}")))?;
            let img = module.act(&e, &crate::repspace::StateCombo::basis(idx))?;
            let text = match format {
                Format::Text => module.format_combo(&img) + "\n",
                Format::Json => module.combo_json(&img),
                Format::Csv => module.combo_csv(&img),
            };
            emit(&text, &out, stdout)
        }
        Command::Band { algebra, op, range, format, out } => {
            let p = load(&algebra, fuel)?;
            let module = Module::new(&p)?;
            let e = op_element(&p, &op)?;
            let mut ranges = Ranges::default();
            for r in &range {
                ranges.extend(r).map_err(CliError::Input)?;
            }
            let band = module.action_band(&e, &band_columns(&module, &ranges))?;
            let text = match format {
                Format::Csv => band.to_csv(),
                Format::Json => band.to_json(),
                Format::Text => {
                    let mut s = format!("{}\n", band.operator);
                    for en in &band.entries {
                        s.push_str(&format!(
                            "{} <- {}: {}\n",
                            module.format_index(&en.row),
                            module.format_index(&en.col),
                            en.value
                        ));
                    }
                    s
                }
            };
            emit(&text, &out, stdout)
        }
        Command::Seq { family, k, p, l, m, format, out } => {
            let lower = family.to_ascii_lowercase();
            let (first, second) = if lower == "a" || lower == "b" {
                (range_arg(k.as_deref(), (0, 3))?, range_arg(p.as_deref(), (1, 5))?)
            } else {
                (range_arg(l.as_deref(), (0, 5))?, range_arg(m.as_deref(), (1, 5))?)
            };
            let _ = load("DII", fuel)?;
            let _ = load("QUINTIC", fuel)?;
            let t = family_table(&family, first, second).map_err(CliError::from)?;
            emit(&seq_output(&t, format), &out, stdout)
        }
    }
}
