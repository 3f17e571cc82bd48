use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ecodoc_core::footprint::thinking_delta;
use ecodoc_core::pipeline::{
    count_tokens, ledger_shares, normalize_energy, run_pipeline, ExtractionResult, PipelineError, TokenLedger,
};
use ecodoc_core::report::{
    emit_deviations, emit_plot_data, emit_table, load_config, Config, Format, ReportBundle, ReportError, Table,
};
use ecodoc_core::rounding::{format_fixed, round_half_up};
use ecodoc_core::FootprintProfile;

const DEFAULT_CONFIG: &str = "config/config.json";
const DEFAULT_DOCUMENT: &str = "fixtures/proforma_invoice.txt";
const DEFAULT_PROMPT: &str = "fixtures/extraction_prompt.txt";

#[derive(Parser)]
#[command(
    name = "ecodoc",
    version,
    about = "Energy, CO2 and water accounting for document workflows"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every scenario in a config and compare against a baseline.
    ScenarioCompare(CompareArgs),
    /// Run the extraction pipeline over one invoice and account for its tokens.
    UsecaseRun(UsecaseArgs),
    /// Footprint of adding reasoning tokens to a request.
    ThinkingDelta(ThinkingArgs),
    /// Estimate the token count of a file (or stdin).
    TokensCount { path: Option<PathBuf> },
    /// Print one table of the full report bundle.
    ReportEmit(EmitArgs),
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, default_value = DEFAULT_CONFIG)]
    config: PathBuf,
    #[arg(long, default_value = "manual")]
    baseline: String,
    #[arg(long)]
    profile: Option<String>,
    /// Directory to write tables into; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "markdown", value_parser = parse_format)]
    format: Format,
}

#[derive(Args)]
struct UsecaseArgs {
    #[arg(long, default_value = DEFAULT_DOCUMENT)]
    document: PathBuf,
    #[arg(long, default_value = DEFAULT_PROMPT)]
    prompt: PathBuf,
    /// Measured token ledger (JSON). Counts are estimated without it.
    #[arg(long)]
    ledger: Option<PathBuf>,
    #[arg(long, default_value = "usecase-2025")]
    profile: String,
    /// Config to look the profile up in before the built-in profiles.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 1.15)]
    thinking_factor: f64,
    #[arg(long, default_value_t = 1.5)]
    complexity_factor: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "markdown", value_parser = parse_format)]
    format: Format,
}

#[derive(Args)]
struct ThinkingArgs {
    base_tokens: u64,
    thinking_tokens: u64,
    #[arg(long, default_value = "flash-prompt-2025")]
    profile: String,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value = "markdown", value_parser = parse_format)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitTable {
    Scenario,
    Reduction,
    Token,
    UsecaseFootprint,
    Plot,
    Deviations,
    Bundle,
}

#[derive(Args)]
struct EmitArgs {
    #[arg(long, value_enum)]
    table: EmitTable,
    #[arg(long, default_value = DEFAULT_CONFIG)]
    config: PathBuf,
    #[arg(long, default_value = "manual")]
    baseline: String,
    #[arg(long)]
    profile: Option<String>,
    /// Include a use-case run over this document.
    #[arg(long)]
    document: Option<PathBuf>,
    #[arg(long, default_value = DEFAULT_PROMPT)]
    prompt: PathBuf,
    #[arg(long)]
    ledger: Option<PathBuf>,
    #[arg(long, default_value = "usecase-2025")]
    usecase_profile: String,
    #[arg(long, default_value = "markdown", value_parser = parse_format)]
    format: Format,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

enum Failure {
    Input(String),
    Verification(Vec<String>),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Verification(_) => 3,
            Failure::Internal(_) => 1,
        }
    }
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

macro_rules! outln {
    ($buf:expr, $($arg:tt)*) => {{
        $buf.push_str(&format!($($arg)*));
        $buf.push('\n');
    }};
}

/// Write to stdout. A closed pipe (`ecodoc ... | head`) is not an error.
fn emit(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Failure::Internal(format!("cannot write stdout: {e}"))),
        _ => Ok(()),
    }
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Internal(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display())))?;
    emit(&format!("wrote {}\n", path.display()))
}

fn timestamp() -> u64 {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(0)
}

fn resolve_profile(name: &str, config: Option<&Path>) -> Result<FootprintProfile, Failure> {
    if let Some(path) = config {
        let config = load_config(path)?;
        if let Some(p) = config.profiles.get(name) {
            return Ok(p.clone());
        }
    }
    FootprintProfile::builtin(name).ok_or_else(|| Failure::Input(format!("unknown profile {name:?}")))
}

fn read_ledger(path: Option<&Path>) -> Result<Option<TokenLedger>, Failure> {
    let Some(path) = path else { return Ok(None) };
    let text = read_text(path)?;
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|e| Failure::Input(format!("invalid ledger {}: {e}", path.display())))
}

fn run_usecase(
    document: &Path,
    prompt: &Path,
    ledger: Option<&Path>,
    profile: &FootprintProfile,
) -> Result<ExtractionResult, Failure> {
    let doc = read_text(document)?;
    let prompt = read_text(prompt)?;
    let ledger = read_ledger(ledger)?;
    Ok(run_pipeline(&doc, &prompt, ledger, profile)?)
}

fn scenario_compare(args: CompareArgs) -> Result<(), Failure> {
    let config = load_config(&args.config)?;
    let bundle = ReportBundle::build(&config, args.profile.as_deref(), &args.baseline, None, timestamp())?;
    let ext = args.format.extension();
    let scenario = emit_table(&bundle, Table::Scenario, args.format)?;
    let reduction = emit_table(&bundle, Table::Reduction, args.format)?;
    match &args.out {
        Some(dir) => {
            write_file(dir, &format!("scenario_table.{ext}"), &scenario)?;
            write_file(dir, &format!("reduction_table.{ext}"), &reduction)?;
            write_file(
                dir,
                &format!("deviations.{ext}"),
                &emit_deviations(&bundle, args.format),
            )?;
            write_file(dir, "plot_data.json", &emit_plot_data(&bundle)?)?;
            if args.format == Format::Json {
                write_file(dir, "bundle.json", &bundle.to_json())?;
            }
        }
        None if args.format == Format::Json => emit(&bundle.to_json())?,
        None => emit(&format!("{scenario}\n{reduction}"))?,
    }
    Ok(())
}

fn usecase_run(args: UsecaseArgs) -> Result<(), Failure> {
    let profile = resolve_profile(&args.profile, args.config.as_deref())?;
    let result = run_usecase(&args.document, &args.prompt, args.ledger.as_deref(), &profile)?;
    let normalized = normalize_energy(result.footprint.energy, args.thinking_factor, args.complexity_factor)
        .map_err(|e| Failure::Input(e.to_string()))?;
    let shares = ledger_shares(&result.ledger)?;
    let report = {
        let mut s = serde_json::to_string_pretty(&json!({
            "profile": args.profile,
            "ledger": result.ledger,
            "total_tokens": result.ledger.total(),
            "shares_pct": shares.rounded(),
            "footprint": result.footprint,
            "normalized_energy_kwh": round_half_up(normalized.as_kwh().lo(), 4),
            "stages": result.stages,
            "verification": result.verification,
            "review": result.review,
            "warnings": result.warnings,
        }))
        .expect("report serializes");
        s.push('\n');
        s
    };

    let failing = result.review.flagged.clone();
    let mut bundle = ReportBundle::empty();
    bundle.metadata.profile = args.profile.clone();
    bundle.metadata.timestamp_unix = timestamp();
    bundle.usecase = Some(result);
    let ext = args.format.extension();
    let tokens = emit_table(&bundle, Table::Token, args.format)?;
    let footprint = emit_table(&bundle, Table::UsecaseFootprint, args.format)?;
    let usecase = bundle.usecase.as_ref().expect("set above");

    match &args.out {
        Some(dir) => {
            write_file(dir, "extraction_output.json", &usecase.output_json)?;
            write_file(dir, "footprint_report.json", &report)?;
            write_file(dir, &format!("token_table.{ext}"), &tokens)?;
            write_file(dir, &format!("usecase_footprint.{ext}"), &footprint)?;
        }
        None if args.format == Format::Json => emit(&report)?,
        None => {
            emit(&format!(
                "{tokens}\n{footprint}\nNormalized energy: {} kWh (thinking x{}, complexity x{})\n",
                format_fixed(normalized.as_kwh().lo(), 4),
                args.thinking_factor,
                args.complexity_factor
            ))?;
        }
    }
    if failing.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failing))
    }
}

fn thinking(args: ThinkingArgs) -> Result<(), Failure> {
    let profile = resolve_profile(&args.profile, args.config.as_deref())?;
    let d = thinking_delta(args.base_tokens, args.thinking_tokens, &profile);
    let pct = d.pct_increase.value();
    let rows = [
        (
            "energy",
            "Wh",
            2,
            d.without_thinking.energy.as_wh(),
            d.with_thinking.energy.as_wh(),
            d.delta.energy.as_wh(),
        ),
        (
            "co2",
            "g",
            2,
            d.without_thinking.co2.as_grams(),
            d.with_thinking.co2.as_grams(),
            d.delta.co2.as_grams(),
        ),
        (
            "water",
            "mL",
            2,
            d.without_thinking.water.as_milliliters(),
            d.with_thinking.water.as_milliliters(),
            d.delta.water.as_milliliters(),
        ),
    ];
    let cell = |iv: ecodoc_core::Interval, dp: u32| {
        let (lo, hi) = (format_fixed(iv.lo(), dp), format_fixed(iv.hi(), dp));
        if lo == hi {
            lo
        } else {
            format!("{lo} -- {hi}")
        }
    };
    let pct_text = pct.map_or_else(|| "undefined ratio".to_string(), |p| format_fixed(p, 1));
    let mut buf = String::new();
    match args.format {
        Format::Markdown => {
            outln!(buf, "| Metric | Without thinking | With thinking | Delta |");
            outln!(buf, "| --- | --- | --- | --- |");
            for (key, unit, dp, off, on, delta) in rows {
                outln!(
                    buf,
                    "| {key} ({unit}) | {} | {} | {} |",
                    cell(off, dp),
                    cell(on, dp),
                    cell(delta, dp)
                );
            }
            outln!(buf, "\nIncrease: {pct_text}%");
        }
        Format::Csv => {
            outln!(
                buf,
                "metric,unit,without_lo,without_hi,with_lo,with_hi,delta_lo,delta_hi"
            );
            for (key, unit, dp, off, on, delta) in rows {
                let f = |x: f64| format_fixed(x, dp);
                outln!(
                    buf,
                    "{key},{unit},{},{},{},{},{},{}",
                    f(off.lo()),
                    f(off.hi()),
                    f(on.lo()),
                    f(on.hi()),
                    f(delta.lo()),
                    f(delta.hi())
                );
            }
            outln!(buf, "increase,%,,,,,{pct_text},{pct_text}");
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({
                "base_tokens": args.base_tokens,
                "thinking_tokens": args.thinking_tokens,
                "profile": args.profile,
                "result": d,
            }))
            .expect("delta serializes");
            s.push('\n');
            buf.push_str(&s);
        }
    }
    emit(&buf)
}

fn tokens_count(path: Option<PathBuf>) -> Result<(), Failure> {
    let text = match path {
        Some(p) => read_text(&p)?,
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    emit(&format!("{}\n", count_tokens(&text)))
}

fn report_emit(args: EmitArgs) -> Result<(), Failure> {
    let config: Config = load_config(&args.config)?;
    let usecase = match &args.document {
        Some(doc) => {
            let profile = match config.profiles.get(&args.usecase_profile) {
                Some(p) => p.clone(),
                None => resolve_profile(&args.usecase_profile, None)?,
            };
            Some(run_usecase(doc, &args.prompt, args.ledger.as_deref(), &profile)?)
        }
        None => None,
    };
    let bundle = ReportBundle::build(&config, args.profile.as_deref(), &args.baseline, usecase, timestamp())?;
    let text = match args.table {
        EmitTable::Scenario => emit_table(&bundle, Table::Scenario, args.format)?,
        EmitTable::Reduction => emit_table(&bundle, Table::Reduction, args.format)?,
        EmitTable::Token => emit_table(&bundle, Table::Token, args.format)?,
        EmitTable::UsecaseFootprint => emit_table(&bundle, Table::UsecaseFootprint, args.format)?,
        EmitTable::Plot => emit_plot_data(&bundle)?,
        EmitTable::Deviations => emit_deviations(&bundle, args.format),
        EmitTable::Bundle => bundle.to_json(),
    };
    emit(&text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::ScenarioCompare(a) => scenario_compare(a),
        Command::UsecaseRun(a) => usecase_run(a),
        Command::ThinkingDelta(a) => thinking(a),
        Command::TokensCount { path } => tokens_count(path),
        Command::ReportEmit(a) => report_emit(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Input(msg) | Failure::Internal(msg) => eprintln!("error: {msg}"),
                Failure::Verification(items) => {
                    eprintln!("verification failed for {} item(s): {}", items.len(), items.join(", "))
                }
            }
            ExitCode::from(failure.code())
        }
    }
}
