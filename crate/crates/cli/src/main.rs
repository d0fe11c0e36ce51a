//! `griesmer`: bounds, tables, explicit codes, code surgeries and exhaustive
//! search from the command line.
//!
//! Exit codes: 0 on success, 1 when a requested check fails, 2 on usage or
//! parse errors.

mod table;

use std::collections::BTreeSet;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use griesmer_core::bounds::{
    best_lower_bound, classify_family, compare_with_griesmer, CodeSize, GriesmerComparison, Setting,
};
use griesmer_core::code::SystematicCheck;
use griesmer_core::constructions::{
    conjecture_targets, cyclic_code, levenshtein_19_16_10, simplex_15_gray,
    systematic_counterexample_34, systematic_form, GeneratorMatrix,
};
use griesmer_core::io::{code_to_json, read_code, render_code};
use griesmer_core::search::{compute_s_with, verify_family_theorem, SearchOptions};
use griesmer_core::transforms::{
    concat_paired, extend_parity, puncture, reduce_distance, repeat, shorten_systematic, Pairing,
};
use griesmer_core::{Code, SystematicCode};
use serde::Serialize;
use table::{parse_range, Axis, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] griesmer_core::Error),
    #[error("check failed: {0}")]
    Check(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            _ => 2,
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn stdout_error(source: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source,
    }
}

macro_rules! out {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout(), $($arg)*).map_err(stdout_error)?
    };
}

#[derive(Parser)]
#[command(
    name = "griesmer",
    version,
    about = "Griesmer-type bounds and explicit codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every lower bound on the length for one parameter set.
    Bounds(BoundsArgs),
    /// Which theorem (if any) proves the Griesmer bound for (q, k, d).
    Family(BoundsArgs),
    /// Parameters, systematicity and Griesmer comparison of a code file.
    Verify(VerifyArgs),
    /// Grid of best lower bounds.
    Table(TableArgs),
    /// Write an explicit code.
    Construct(ConstructArgs),
    /// Apply a code surgery to a code file.
    Transform(TransformArgs),
    /// Exhaustive search for S_q(k, d).
    Search(SearchArgs),
    /// Exhaustive check of S_q(k, d) >= g_q(k, d) over the sufficient k range.
    VerifyFamily(VerifyFamilyArgs),
    /// Search targets for binary distances 2^r + 2.
    Conjecture {
        #[arg(long)]
        r: u32,
    },
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Dimension (M = q^k).
    #[arg(long, conflicts_with = "m", required_unless_present = "m")]
    k: Option<u32>,
    /// Number of codewords.
    #[arg(long = "M", alias = "m", id = "m")]
    m: Option<u64>,
    #[arg(long)]
    d: u64,
    #[arg(long, default_value = "systematic")]
    setting: Setting,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Code file (text or JSON), `-` for stdin.
    file: String,
    /// Check systematicity in the first k coordinates.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    expect_d: Option<u32>,
    #[arg(long)]
    expect_n: Option<usize>,
    #[arg(long)]
    expect_systematic: bool,
    #[arg(long)]
    expect_not_systematic: bool,
    /// Require n < g_q(k, d).
    #[arg(long)]
    expect_violation: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Markdown,
    Json,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Dimension range, e.g. 1..4 (inclusive).
    #[arg(long, conflicts_with = "m", required_unless_present = "m")]
    k: Option<String>,
    /// Word-count range, e.g. 2..16 (inclusive).
    #[arg(long = "M", alias = "m", id = "m")]
    m: Option<String>,
    /// Distance range, e.g. 1..20 (inclusive).
    #[arg(long)]
    d: String,
    #[arg(long, default_value = "systematic")]
    setting: Setting,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Output {
    /// Write JSON instead of the text format.
    #[arg(long, global = true)]
    json: bool,
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    code: ConstructCode,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand)]
enum ConstructCode {
    /// The [15, 4, 8] simplex code from its systematic generator matrix.
    Simplex15 {
        /// List words in Gray-code message order.
        #[arg(long)]
        gray: bool,
    },
    /// The (19, 16, 10) rotation code.
    #[command(name = "levenshtein-19-16-10")]
    Levenshtein,
    /// The (34, 2^4, 18) systematic code.
    #[command(name = "counterexample-34")]
    Counterexample34,
    /// Binary cyclic code from a complete defining set.
    Cyclic {
        #[arg(long)]
        n: u32,
        /// Comma-separated exponents, e.g. 0,1,2,4,8.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        defset: Vec<u32>,
        /// Output an equivalent systematic code instead.
        #[arg(long)]
        systematic: bool,
    },
}

#[derive(Args)]
struct TransformArgs {
    #[command(subcommand)]
    op: TransformOp,
    /// Input code file, `-` for stdin.
    #[arg(short, long, default_value = "-", global = true)]
    input: String,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand)]
enum TransformOp {
    /// Delete coordinate i (1-based).
    Puncture {
        #[arg(long)]
        i: usize,
    },
    /// Keep words with 0 at systematic coordinate i, then delete it.
    Shorten {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Puncture trailing coordinates until the distance equals the target.
    ReduceDistance {
        #[arg(long)]
        target: u32,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Append an overall parity bit.
    ExtendParity,
    /// Repeat every word t times.
    Repeat {
        #[arg(long)]
        t: usize,
    },
    /// Concatenate with the words of another code of the same size.
    Concat {
        #[arg(long)]
        other: String,
        /// listed, sorted, or a comma-separated permutation.
        #[arg(long, default_value = "sorted")]
        pairing: String,
    },
    /// Translate by a codeword so that it becomes the zero word.
    Translate {
        #[arg(long)]
        word: String,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    d: u32,
    /// Wall-time budget in seconds.
    #[arg(long, env = "GRIESMER_SEARCH_BUDGET", default_value_t = 60)]
    budget: u64,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    parallel: bool,
    /// Also write the witness in the text format.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyFamilyArgs {
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    k_max: u32,
    /// Wall-time budget in seconds, per dimension.
    #[arg(long, env = "GRIESMER_SEARCH_BUDGET", default_value_t = 60)]
    budget: u64,
}

fn read_input(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn load_code(path: &str) -> CliResult<Code> {
    let text = read_input(path)?;
    read_code(&text).map_err(|e| match e {
        griesmer_core::Error::Parse { line, message } => {
            let name = if path == "-" { "<stdin>" } else { path };
            CliError::Usage(format!("{name}:{line}: {message}"))
        }
        other => other.into(),
    })
}

fn emit(text: &str, output: Option<&PathBuf>) -> CliResult {
    match output {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(stdout_error),
    }
}

fn emit_code(code: &Code, out: &Output) -> CliResult {
    let text = if out.json {
        code_to_json(code) + "\n"
    } else {
        render_code(code)
    };
    emit(&text, out.output.as_ref())
}

fn size_of(q: u64, k: Option<u32>, m: Option<u64>) -> CodeSize {
    match (k, m) {
        (Some(k), _) => CodeSize::Dimension(k),
        (None, Some(m)) => CodeSize::Words(m),
        (None, None) => unreachable!("clap requires one of --k / --M"),
    }
    .normalized(q)
}

trait Normalize {
    fn normalized(self, q: u64) -> Self;
}

impl Normalize for CodeSize {
    /// `M = q^k` is reported as a dimension.
    fn normalized(self, q: u64) -> Self {
        match self {
            CodeSize::Words(m) => dimension_of(q, m).map_or(self, CodeSize::Dimension),
            other => other,
        }
    }
}

fn dimension_of(q: u64, m: u64) -> Option<u32> {
    let mut p = 1u64;
    for k in 0..64 {
        if p == m {
            return Some(k);
        }
        p = p.checked_mul(q)?;
    }
    None
}

fn cmd_bounds(a: &BoundsArgs) -> CliResult {
    let size = size_of(a.q, a.k, a.m);
    let reports = best_lower_bound(a.q, size, a.d, a.setting)?;
    let k = match size {
        CodeSize::Dimension(k) => Some(k),
        CodeSize::Words(_) => None,
    };
    let verdict = k
        .map(|k| classify_family(a.q, k, a.d, a.setting))
        .transpose()?;
    if a.json {
        #[derive(Serialize)]
        struct Out<'a> {
            bounds: &'a [griesmer_core::bounds::BoundReport],
            family: Option<&'a griesmer_core::bounds::FamilyVerdict>,
        }
        let out = Out {
            bounds: &reports,
            family: verdict.as_ref(),
        };
        out!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializes")
        );
        return Ok(());
    }
    let size_text = match size {
        CodeSize::Dimension(k) => format!("k={k}"),
        CodeSize::Words(m) => format!("M={m}"),
    };
    out!("q={} {size_text} d={} setting={}", a.q, a.d, a.setting);
    for r in &reports {
        let status = if r.applicable { "applies" } else { "n/a" };
        let exact = r
            .exact
            .as_ref()
            .map(|x| format!(" (exact {x})"))
            .unwrap_or_default();
        out!(
            "  {:>6}  {} {:<28} {:<8} {}{exact}",
            r.value,
            r.source.letter(),
            r.source.to_string(),
            status,
            r.condition
        );
    }
    let best = &reports[0];
    out!("best applicable: {} ({})", best.value, best.source);
    if let Some(v) = verdict {
        out!("griesmer bound: {} ({})", v.holds, v.condition);
    }
    Ok(())
}

fn cmd_family(a: &BoundsArgs) -> CliResult {
    let k = match size_of(a.q, a.k, a.m) {
        CodeSize::Dimension(k) => k,
        CodeSize::Words(m) => {
            return Err(CliError::Usage(format!(
                "M={m} is not a power of q={}",
                a.q
            )))
        }
    };
    let v = classify_family(a.q, k, a.d, a.setting)?;
    if a.json {
        out!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
    } else {
        out!("{}", v.holds);
        out!("{}", v.condition);
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport {
    q: u32,
    n: usize,
    #[serde(rename = "M")]
    m: usize,
    d: u32,
    k: Option<u32>,
    systematic: Option<SystematicCheck>,
    griesmer: Option<u64>,
    comparison: Option<GriesmerComparison>,
}

fn cmd_verify(a: &VerifyArgs) -> CliResult {
    let code = load_code(&a.file)?;
    let params = code.params();
    let d = params.d.ok_or_else(|| {
        CliError::Usage(format!(
            "minimum distance undefined for a code with {} word(s)",
            code.len()
        ))
    })?;
    let k = a.k.or(params.k);
    let systematic = k.map(|k| code.check_systematic(k));
    let griesmer = k
        .map(|k| compare_with_griesmer(code.n() as u64, code.q() as u64, k, d as u64))
        .transpose()?;
    let report = VerifyReport {
        q: code.q(),
        n: code.n(),
        m: code.len(),
        d,
        k,
        systematic: systematic.clone(),
        griesmer: griesmer.map(|g| g.1),
        comparison: griesmer.map(|g| g.0),
    };

    if a.json {
        out!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializes")
        );
    } else {
        out!(
            "(n, M, d)_q = ({}, {}, {})_{}",
            code.n(),
            code.len(),
            d,
            code.q()
        );
        let mut summary = Vec::new();
        match (&systematic, k) {
            (Some(check), Some(k)) if check.is_systematic() => {
                summary.push("systematic".to_string());
                out!("systematic in coordinates 1..{k}");
            }
            (Some(check), Some(k)) => {
                summary.push("NOT systematic".to_string());
                out!("NOT systematic in coordinates 1..{k}: {check}");
            }
            _ => {}
        }
        summary.push(format!("d={d}"));
        match griesmer {
            Some((cmp, g)) => {
                let rel = match cmp {
                    GriesmerComparison::Violates => "<",
                    GriesmerComparison::Meets => "=",
                    GriesmerComparison::Exceeds => ">",
                };
                summary.push(format!("n={} {rel} g={g}: {cmp} Griesmer", code.n()));
            }
            None => summary.push(format!(
                "n={} (M is not a power of q; no Griesmer comparison)",
                code.n()
            )),
        }
        out!("{}", summary.join(", "));
    }

    let mut failures = Vec::new();
    if let Some(want) = a.expect_d {
        if want != d {
            failures.push(format!("d={d}, expected {want}"));
        }
    }
    if let Some(want) = a.expect_n {
        if want != code.n() {
            failures.push(format!("n={}, expected {want}", code.n()));
        }
    }
    let is_sys = systematic.as_ref().map(SystematicCheck::is_systematic);
    if a.expect_systematic && is_sys != Some(true) {
        failures.push("code is not systematic (or --k missing)".into());
    }
    if a.expect_not_systematic && is_sys != Some(false) {
        failures.push("code is systematic (or --k missing)".into());
    }
    if a.expect_violation && griesmer.map(|g| g.0) != Some(GriesmerComparison::Violates) {
        failures.push("no Griesmer violation".into());
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(failures.join("; ")))
    }
}

fn cmd_table(a: &TableArgs) -> CliResult {
    let (axis, cols) = match (&a.k, &a.m) {
        (Some(k), _) => (Axis::K, k),
        (None, Some(m)) => (Axis::M, m),
        (None, None) => unreachable!("clap requires one of --k / --M"),
    };
    let cols = parse_range(cols).map_err(CliError::Usage)?;
    let ds = parse_range(&a.d).map_err(CliError::Usage)?;
    let t = Table::build(a.q, axis, cols, ds, a.setting)?;
    let text = match a.format {
        Format::Csv => t.to_csv(),
        Format::Markdown => t.to_markdown(),
        Format::Json => t.to_json(),
    };
    emit(&text, a.output.as_ref())
}

fn cmd_construct(a: &ConstructArgs) -> CliResult {
    let code = match &a.code {
        ConstructCode::Simplex15 { gray: true } => simplex_15_gray().into_code(),
        ConstructCode::Simplex15 { gray: false } => GeneratorMatrix::simplex_15().code(),
        ConstructCode::Levenshtein => levenshtein_19_16_10(),
        ConstructCode::Counterexample34 => systematic_counterexample_34().into_code(),
        ConstructCode::Cyclic {
            n,
            defset,
            systematic,
        } => {
            let set: BTreeSet<u32> = defset.iter().copied().collect();
            let c = cyclic_code(*n, &set)?;
            if *systematic {
                let form = systematic_form(&c)?;
                eprintln!(
                    "coordinate order: {}",
                    form.permutation
                        .iter()
                        .map(|p| (p + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                form.code.into_code()
            } else {
                c
            }
        }
    };
    emit_code(&code, &a.out)
}

fn systematic_input(code: Code, k: Option<u32>) -> CliResult<SystematicCode> {
    let k = k
        .or_else(|| code.dimension())
        .ok_or_else(|| CliError::Usage("pass --k: the word count is not a power of q".into()))?;
    Ok(SystematicCode::new(code, k)?)
}

fn parse_pairing(s: &str) -> CliResult<Pairing> {
    match s {
        "listed" => Ok(Pairing::Listed),
        "sorted" => Ok(Pairing::Sorted),
        list => list
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| v >= 1)
                    .map(|v| v - 1)
                    .ok_or_else(|| {
                        CliError::Usage(format!("bad pairing entry `{t}` (1-based indices)"))
                    })
            })
            .collect::<CliResult<Vec<_>>>()
            .map(Pairing::Explicit),
    }
}

fn cmd_transform(a: &TransformArgs) -> CliResult {
    let code = load_code(&a.input)?;
    let out = match &a.op {
        TransformOp::Puncture { i } => {
            let p = puncture(&code, *i)?;
            if p.merged > 0 {
                eprintln!("{} word(s) merged", p.merged);
            }
            p.code
        }
        TransformOp::Shorten { i, k } => {
            shorten_systematic(&systematic_input(code, *k)?, *i)?.into_code()
        }
        TransformOp::ReduceDistance { target, k } => {
            reduce_distance(&systematic_input(code, *k)?, *target)?.into_code()
        }
        TransformOp::ExtendParity => extend_parity(&code)?,
        TransformOp::Repeat { t } => repeat(&code, *t)?,
        TransformOp::Concat { other, pairing } => {
            let other = load_code(other)?;
            concat_paired(&code, &other, &parse_pairing(pairing)?)?
        }
        TransformOp::Translate { word } => {
            let digits = word
                .chars()
                .map(|c| c.to_digit(10).map(|v| v as u8))
                .collect::<Option<Vec<u8>>>()
                .ok_or_else(|| CliError::Usage(format!("bad word `{word}`")))?;
            code.translate_to_zero(&digits)?
        }
    };
    if out.len() >= 2 {
        eprintln!("{}", out.params());
    }
    emit_code(&out, &a.out)
}

fn cmd_search(a: &SearchArgs) -> CliResult {
    if a.budget == 0 {
        return Err(CliError::Usage("budget must be positive".into()));
    }
    let opts = SearchOptions {
        budget: Duration::from_secs(a.budget),
        parallel: a.parallel,
        symmetry: true,
        max_n: a.max_n,
    };
    let outcome = compute_s_with(a.q, a.k, a.d, &opts)?;
    out!(
        "{}",
        serde_json::to_string_pretty(&outcome).expect("serializes")
    );
    if let (Some(path), Some(w)) = (&a.witness, &outcome.witness) {
        emit(&render_code(w), Some(path))?;
    }
    Ok(())
}

fn cmd_verify_family(a: &VerifyFamilyArgs) -> CliResult {
    if a.budget == 0 {
        return Err(CliError::Usage("budget must be positive".into()));
    }
    let report = verify_family_theorem(a.q, a.d, a.k_max, Duration::from_secs(a.budget))?;
    for c in &report.checks {
        let verdict = match c.confirms {
            Some(true) => "S >= g",
            Some(false) => "S < g",
            None => "undecided",
        };
        out!(
            "k={} g={} S={} ({}) {verdict}",
            c.k,
            c.griesmer,
            c.outcome.value,
            c.outcome.status
        );
    }
    if report.all_confirmed() {
        out!("confirmed for k=1..={}", report.checks.len());
        Ok(())
    } else {
        Err(CliError::Check("not every dimension confirmed".into()))
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Bounds(a) => cmd_bounds(&a),
        Command::Family(a) => cmd_family(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Table(a) => cmd_table(&a),
        Command::Construct(a) => cmd_construct(&a),
        Command::Transform(a) => cmd_transform(&a),
        Command::Search(a) => cmd_search(&a),
        Command::VerifyFamily(a) => cmd_verify_family(&a),
        Command::Conjecture { r } => {
            let t = conjecture_targets(r)?;
            out!("{}", serde_json::to_string_pretty(&t).expect("serializes"));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
