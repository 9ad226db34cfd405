//! Command-line front end. Exit codes: 0 success, 1 usage, 2 validation,
//! 3 pipeline failure, 4 internal invariant violation.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::brauer::{
    analyze_twists, compute_endomorphism_class_with, hilbert_symbol_witnessed, BrauerError, PipelineError, PipelineOptions,
    SymbolOptions,
};
use crate::numfield::NumberField;
use crate::twists::{compute_center_field, detect_inner_twists, TwistOptions, DEFAULT_MIN_PRIMES};

use super::document::PacketDocument;
use super::expr::{parse_element, parse_poly};
use super::lmfdb::{export_lmfdb_hmf, import_lmfdb_hmf};
use super::report::{report_json, report_text, symbol_json, symbol_text, to_canonical_string, twists_json, twists_text};
use super::synth::{synth_packet, FixtureSpec};
use super::IngestError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_PIPELINE: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "endoclass", version, about = "Brauer class of the endomorphism algebra from Hecke eigenvalue tables")]
struct Cli {
    /// Minimum number of table primes with a_p != 0.
    #[arg(long, global = true, default_value_t = DEFAULT_MIN_PRIMES)]
    min_primes: usize,
    /// Extra precision for the dyadic conic search beyond 2e(2) + |v(a)| + |v(b)|.
    #[arg(long, global = true, default_value_t = 3)]
    dyadic_precision_extra: u32,
    /// Overrides the seed of a fixture spec.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Coefficient bound in the primitive-element search.
    #[arg(long, global = true, default_value_t = 5)]
    max_prim_coeff: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full pipeline on a packet and print the report.
    Compute { packet: PathBuf },
    /// Stop after recovering the twist discriminants.
    Twists { packet: PathBuf },
    /// Global Hilbert symbol (a, b) over Q[x]/(f).
    Symbol {
        #[arg(long)]
        field: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Validate a packet and audit the twist-group invariants.
    Verify { packet: PathBuf },
    /// Generate a packet with planted twists from a fixture spec.
    Synth { spec: PathBuf },
    /// Convert an eigenvalue dump into a packet.
    Import { dump: PathBuf },
    /// Convert a packet into the eigenvalue-dump format.
    Export { packet: PathBuf },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<IngestError> for Failure {
    fn from(e: IngestError) -> Self {
        Failure::new(EXIT_VALIDATION, e.to_string())
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        let code = if e.is_invariant_violation() { EXIT_INVARIANT } else { EXIT_PIPELINE };
        Failure::new(code, e.to_string())
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))
}

fn load_packet(path: &PathBuf) -> Result<crate::twists::NewformPacket, Failure> {
    Ok(PacketDocument::parse(&read(path)?)?.to_packet()?)
}

fn emit(format: Format, json: Value, text: String) -> String {
    match format {
        Format::Json => to_canonical_string(&json),
        Format::Text => text,
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let twist = TwistOptions { min_primes: cli.min_primes, max_prim_coeff: cli.max_prim_coeff };
    let symbol = SymbolOptions { dyadic_precision_extra: cli.dyadic_precision_extra };
    match &cli.command {
        Command::Compute { packet } => {
            let p = load_packet(packet)?;
            let opts = PipelineOptions { twist, symbol, ..Default::default() };
            let r = compute_endomorphism_class_with(&p, &opts)?;
            Ok(emit(cli.format, report_json(&r), report_text(&r)))
        }
        Command::Twists { packet } => {
            let p = load_packet(packet)?;
            let a = analyze_twists(&p, &twist)?;
            Ok(emit(cli.format, twists_json(&p, &a), twists_text(&p, &a)))
        }
        Command::Symbol { field, a, b } => {
            let usage = |m: String| Failure::new(EXIT_USAGE, m);
            let f = parse_poly(field, None).map_err(|e| usage(format!("--field: {} at offset {}", e.message, e.offset)))?;
            let f = NumberField::new(f).map_err(|e| usage(format!("--field: {e}")))?;
            let a = parse_element(&f, a, None).map_err(|e| usage(format!("a: {}", e.message)))?;
            let b = parse_element(&f, b, None).map_err(|e| usage(format!("b: {}", e.message)))?;
            let (class, w) = hilbert_symbol_witnessed(&a, &b, &symbol).map_err(|e| match e {
                BrauerError::ReciprocityViolation { .. } => Failure::new(EXIT_INVARIANT, e.to_string()),
                BrauerError::ZeroEntry => Failure::new(EXIT_VALIDATION, e.to_string()),
                _ => Failure::new(EXIT_PIPELINE, e.to_string()),
            })?;
            Ok(emit(cli.format, symbol_json(&a, &b, &class, &w), symbol_text(&class, &w)))
        }
        Command::Verify { packet } => {
            let p = load_packet(packet)?;
            let stage = |s, e: crate::twists::TwistError| {
                let code = if matches!(e, crate::twists::TwistError::InvariantViolation(_)) { EXIT_INVARIANT } else { EXIT_PIPELINE };
                Failure::new(code, format!("stage {s}: {e}"))
            };
            let center = compute_center_field(&p, cli.max_prim_coeff).map_err(|e| stage("compute_center_field", e))?;
            let tw = detect_inner_twists(&p, &center, &twist).map_err(|e| stage("detect_inner_twists", e))?;
            let checks = [
                "a_p^2 lies in F for every table prime",
                "Gamma is a 2-torsion group closed under composition",
                "chi_sigma chi_tau = chi_sigma_tau on table primes",
                "a_p in F iff every chi_sigma(p) = +1",
            ];
            let j = json!({
                "valid": true,
                "table_primes": p.table().len(),
                "nonzero_primes": p.nonzero_count(),
                "center_field": center.0.poly().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "gamma_order": tw.order(),
                "checks": checks,
                "warnings": p.warnings(),
            });
            let text = format!(
                "valid packet: {} table primes, |Gamma| = {}\n{}",
                p.table().len(),
                tw.order(),
                checks.iter().map(|c| format!("ok  {c}\n")).collect::<String>()
            );
            Ok(emit(cli.format, j, text))
        }
        Command::Synth { spec } => {
            let mut s = FixtureSpec::parse(&read(spec)?)?;
            if let Some(seed) = cli.seed {
                s.seed = seed;
            }
            Ok(synth_packet(&s)?.to_canonical_string())
        }
        Command::Import { dump } => Ok(import_lmfdb_hmf(&read(dump)?)?.to_canonical_string()),
        Command::Export { packet } => Ok(export_lmfdb_hmf(&PacketDocument::parse(&read(packet)?)?)?),
    }
}

/// Parse `argv` (including the program name), run, and write to the streams.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match run(&cli) {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
