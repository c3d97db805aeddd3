use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use amphicheck::families::FamilySpec;
use amphicheck::laurent::Sign;
use amphicheck::linkdata::records_to_json;
use amphicheck::obstruction::{SignAssignment, SignMode};
use amphicheck::report::{emit_report, run_battery, BatteryOptions, ReportFormat, TEST_GROUPS};
use amphicheck::IndexSet;

/// Decide whether links are provably not component-preservingly amphicheiral
/// from their Alexander polynomials.
#[derive(Parser)]
#[command(name = "amphicheck", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the test battery on a JSON record file.
    ///
    /// Exit status: 0 all consistent, 1 some record obstructed, 2 data error.
    Check {
        file: PathBuf,
        /// Comma-separated test groups (duality, torres, linking, eps,
        /// divisibility, specializations, surgery_sums, diagonal).
        #[arg(long)]
        tests: Option<String>,
        /// Sign vector for the ε-symmetry check, e.g. "+,-,+". Repeatable.
        #[arg(long)]
        eps: Vec<String>,
        /// "exists" or "fixed[:1,2=-/1,3=+]"; unlisted sets get +.
        #[arg(long, default_value = "exists")]
        sign_mode: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Generate a record for an example family as JSON.
    ///
    /// Families: milnor N | caa A B | borromean | fixture NAME
    /// (10n59, 11n247, borromean, whitehead).
    #[command(allow_negative_numbers = true)]
    Gen {
        family: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s.trim() {
        "+" | "+1" | "1" => Ok(Sign::Plus),
        "-" | "-1" => Ok(Sign::Minus),
        other => Err(format!("bad sign {other:?}")),
    }
}

fn parse_eps(s: &str) -> Result<Vec<Sign>, String> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.contains(',') {
        s.split(',').map(parse_sign).collect()
    } else {
        s.chars().map(|c| parse_sign(&c.to_string())).collect()
    }
}

fn parse_sign_mode(s: &str) -> Result<SignMode, String> {
    let s = s.trim();
    if s == "exists" {
        return Ok(SignMode::Exists);
    }
    let Some(rest) = s.strip_prefix("fixed") else {
        return Err(format!("bad sign mode {s:?}: expected exists or fixed[:spec]"));
    };
    let mut signs = SignAssignment::trivial();
    let spec = rest.strip_prefix(':').unwrap_or(rest);
    for entry in spec.split('/').map(str::trim).filter(|e| !e.is_empty()) {
        let (set, sign) = entry
            .rsplit_once('=')
            .ok_or_else(|| format!("bad sign entry {entry:?}: expected SET=SIGN"))?;
        let set: IndexSet = set.parse().map_err(|e| format!("{e}"))?;
        signs.set(set, parse_sign(sign)?);
    }
    Ok(SignMode::Fixed(signs))
}

fn check(
    file: PathBuf,
    tests: Option<String>,
    eps: Vec<String>,
    sign_mode: String,
    format: Format,
) -> Result<i32, String> {
    let mut options = BatteryOptions::from_env();
    if let Some(list) = tests {
        options = options.with_tests(&list).map_err(|e| {
            format!("{e}; known groups: {}", TEST_GROUPS.join(", "))
        })?;
    }
    options.eps = eps.iter().map(|e| parse_eps(e)).collect::<Result<_, _>>()?;
    options.sign_mode = parse_sign_mode(&sign_mode)?;
    let report = run_battery(&file, &options).map_err(|e| e.to_string())?;
    let format = match format {
        Format::Text => ReportFormat::Text,
        Format::Json => ReportFormat::Json,
    };
    print!("{}", emit_report(&report, format));
    Ok(report.exit_code())
}

fn generate(family: String, params: Vec<String>, output: Option<PathBuf>) -> Result<i32, String> {
    let spec = FamilySpec::parse(&family, &params).map_err(|e| e.to_string())?;
    let rec = spec.record().map_err(|e| e.to_string())?;
    let mut json = records_to_json(&[rec]);
    json.push('\n');
    match output {
        Some(path) => std::fs::write(&path, json)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{json}"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check {
            file,
            tests,
            eps,
            sign_mode,
            format,
        } => check(file, tests, eps, sign_mode, format),
        Command::Gen {
            family,
            params,
            output,
        } => generate(family, params, output),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("amphicheck: {msg}");
            ExitCode::from(2)
        }
    }
}
