//! Command-line front end: argument parsing, dispatch and the three output
//! formats.

mod commands;
mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::curve::{Curve, CurveError};
use crate::ff::{self, FieldElement};

/// Largest `q` the tool will ever accept.
pub const HARD_MAX_Q: u64 = 81;

#[derive(Debug, Parser)]
#[command(name = "maxcurve", version, about = "Places, Weierstrass semigroups and automorphisms of Z_3 over F_(q^2), q = 3^t")]
pub struct Cli {
    /// q = 3^t; t = 1 is rejected (elliptic case)
    #[arg(long, global = true, default_value_t = 2)]
    pub t: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// seed for every random choice
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// series precision (default 2q + 1)
    #[arg(long, global = true)]
    pub prec: Option<usize>,
    /// write the output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// refuse larger q (at most 81)
    #[arg(long, global = true, default_value_t = 27)]
    pub max_q: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List rational places, or sample non-rational ones by the order of gamma
    Places(PlacesArgs),
    /// Weierstrass semigroup or gap set at one place, with its certificate
    Semigroup(SemigroupArgs),
    /// Run the invariant suites
    Verify(VerifyArgs),
    /// Values of P_i, Q_i, R_i and the orders of beta
    Polyfam(PolyfamArgs),
    /// The automorphism group and its orbits on rational places
    Aut(AutArgs),
}

#[derive(Debug, Args)]
pub struct PlacesArgs {
    /// keep only this class (infinity, beta-zero, beta-one, rational-general,
    /// non-rational-generic, non-rational-special)
    #[arg(long)]
    pub class: Option<String>,
    /// sample non-rational places whose gamma has this multiplicative order
    #[arg(long, alias = "beta-order")]
    pub gamma_order: Option<u64>,
    #[arg(long, default_value_t = 3)]
    pub count: usize,
    /// degree bound over F_(q^2) for sampled places
    #[arg(long, default_value_t = 4)]
    pub max_degree: u32,
}

#[derive(Debug, Args)]
pub struct SemigroupArgs {
    /// `infinity`, or `A:B` with coefficient strings of a and b over F_3,
    /// lowest degree first, in F_(q^2)
    #[arg(long)]
    pub place: Option<String>,
    /// pick the `index`-th rational place of this class
    #[arg(long)]
    pub class: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub index: usize,
    /// sample a place whose gamma has this order
    #[arg(long, alias = "beta-order")]
    pub gamma_order: Option<u64>,
    #[arg(long, default_value_t = 4)]
    pub max_degree: u32,
    /// Hermitian lift used for the certificate (0, 1 or 2)
    #[arg(long, default_value_t = 0)]
    pub lift: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Polyfam,
    Valuations,
    Semigroups,
    Autgroup,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Scope::All)]
    pub scope: Scope,
    /// sampled places per non-rational class
    #[arg(long, default_value_t = 3)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct PolyfamArgs {
    /// beta as a coefficient string over F_3, lowest degree first
    #[arg(long)]
    pub beta: Option<String>,
    /// use the beta of a sampled place with this gamma order
    #[arg(long)]
    pub gamma_order: Option<u64>,
    #[arg(long, default_value_t = 4)]
    pub max_degree: u32,
    /// last index listed
    #[arg(long, default_value_t = 12)]
    pub n: u64,
}

#[derive(Debug, Args)]
pub struct AutArgs {
    /// list every element
    #[arg(long)]
    pub elements: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed")]
    Verification,
    #[error("{0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::Field(_) | CurveError::TooLarge(_) | CurveError::NotOnCurve { .. } => {
                Self::Usage(e.to_string())
            }
            e => Self::Internal(e.to_string()),
        }
    }
}

macro_rules! internal_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                Self::Internal(e.to_string())
            }
        }
    )*};
}

internal_from!(
    crate::weier::WeierError,
    crate::series::SeriesError,
    crate::polyfam::PolyFamError,
    crate::autgroup::AutError,
    crate::ff::FieldError,
    serde_json::Error,
    csv::Error
);

/// What a command produces: JSON results plus a flat table for csv and text.
#[derive(Debug, Clone, Default)]
pub struct Output {
    pub results: Vec<Value>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// extra lines printed before the table in text mode
    pub notes: Vec<String>,
    pub passed: bool,
}

/// A field element as its F_3 coefficient string, lowest degree first.
pub fn fe_str(x: &FieldElement) -> String {
    x.coeffs().iter().map(|c| char::from(b'0' + c)).collect()
}

/// Parses a coefficient string such as `1020`.
pub fn parse_fe(s: &str) -> Result<FieldElement, CliError> {
    let coeffs: Option<Vec<u8>> = s
        .chars()
        .map(|c| c.to_digit(3).map(|d| d as u8))
        .collect();
    match coeffs {
        Some(c) if !c.is_empty() && c.len() as u32 <= ff::DEFAULT_MAX_DEGREE => {
            Ok(FieldElement::from_coeffs(c.len() as u32, &c))
        }
        _ => Err(CliError::Usage(format!(
            "'{s}' is not a coefficient string over F_3 (digits 0, 1, 2, lowest degree first)"
        ))),
    }
}

fn checked_curve(cli: &Cli) -> Result<Curve, CliError> {
    let cap = cli.max_q.min(HARD_MAX_Q);
    let curve = Curve::new(cli.t)?;
    if curve.q() > cap {
        return Err(CliError::Usage(format!(
            "q = {} exceeds the configured cap {cap} (raise --max-q, at most {HARD_MAX_Q})",
            curve.q()
        )));
    }
    Ok(curve)
}

fn collect_levels(v: &Value, out: &mut std::collections::BTreeSet<u64>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if k == "level" {
                    if let Some(n) = x.as_u64() {
                        out.insert(n);
                    }
                }
                collect_levels(x, out);
            }
        }
        Value::Array(a) => a.iter().for_each(|x| collect_levels(x, out)),
        _ => {}
    }
}

/// The JSON document: `{"q", "genus", "command", "moduli", "results"}` with
/// keys in sorted order. `moduli` maps each field degree used to its modulus
/// coefficients, lowest degree first.
pub fn json_document(curve: &Curve, command: &str, output: &Output) -> Value {
    let mut levels = std::collections::BTreeSet::from([curve.constant_level() as u64]);
    output.results.iter().for_each(|r| collect_levels(r, &mut levels));
    let moduli: Map<String, Value> = levels
        .into_iter()
        .map(|n| (n.to_string(), json!(ff::modulus(n as u32))))
        .collect();
    json!({
        "q": curve.q(),
        "genus": curve.genus(),
        "command": command,
        "passed": output.passed,
        "moduli": moduli,
        "results": output.results,
    })
}

fn render(curve: &Curve, command: &str, format: Format, output: &Output) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json_document(curve, command, output))?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&output.header)?;
            for r in &output.rows {
                w.write_record(r)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?)
                .expect("csv output is utf-8")
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{command}: q = {}, genus = {}", curve.q(), curve.genus());
            for n in &output.notes {
                let _ = writeln!(s, "{n}");
            }
            let widths: Vec<usize> = (0..output.header.len())
                .map(|c| {
                    output
                        .rows
                        .iter()
                        .map(|r| r[c].len())
                        .chain([output.header[c].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            if !output.header.is_empty() {
                let _ = writeln!(s, "{}", line(&output.header));
                for r in &output.rows {
                    let _ = writeln!(s, "{}", line(r));
                }
            }
            let _ = writeln!(s, "{}", if output.passed { "ok" } else { "FAILED" });
            s
        }
    })
}

/// Parses and runs one command, writing its output; returns the rendered
/// text on success.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let curve = checked_curve(cli)?;
    let prec = cli.prec.unwrap_or(crate::weier::default_precision(&curve));
    let max = crate::series::MAX_PRECISION;
    if !(curve.q() as usize + 1..=max).contains(&prec) {
        return Err(CliError::Usage(format!("--prec must lie in {}..={max}", curve.q() + 1)));
    }
    let (name, output) = match &cli.command {
        Command::Places(a) => ("places", commands::places(&curve, a, cli.seed)?),
        Command::Semigroup(a) => ("semigroup", commands::semigroup(&curve, a, cli.seed, prec)?),
        Command::Verify(a) => ("verify", verify::run(&curve, a, cli.seed, prec)?),
        Command::Polyfam(a) => ("polyfam", commands::polyfam(&curve, a, cli.seed)?),
        Command::Aut(a) => ("aut", commands::aut(&curve, a)?),
    };
    let text = render(&curve, name, cli.format, &output)?;
    match &cli.out {
        Some(path) => std::fs::write(path, &text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    if output.passed {
        Ok(text)
    } else {
        Err(CliError::Verification)
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cli) {
        Ok(_) => 0,
        Err(e) => {
            if !matches!(e, CliError::Verification) {
                eprintln!("error: {e}");
            }
            e.exit_code()
        }
    }
}
