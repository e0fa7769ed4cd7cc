//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 coverage
//! or resource error, 4 domain error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use rug::{Float, Integer};
use serde::{Deserialize, Serialize};

use crate::arith::{ceil_sqrt, gcd};
use crate::error::{Error, Result};
use crate::exact::{
    build_divisor_sieve, build_partition_table, check_pentagonal, part_count_exact, part_diff_exact,
    part_size_histogram, zero_class_exact, PartCountQuery, PartitionTable,
};
use crate::numerics::Precision;
use crate::{dirichlet, rademacher, wright};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COVERAGE: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

/// Column indices of both published tables.
pub const TABLE_COLUMNS: [u64; 5] = [10, 100, 1_000, 10_000, 100_000];

/// Published ratios for `N = 3`, `r = 1`.
pub const TABLE1_PUBLISHED: [&str; 5] = ["1.00417", "1.00142", "1.00013", "1.00001", "1.00000"];

/// Published zero-class ratios, one row per modulus.
pub const TABLE2_PUBLISHED: [(u64, [&str; 5]); 3] = [
    (1, ["1.09403", "1.01393", "1.00260", "1.00050", "1.00029"]),
    (3, ["1.79224", "1.06709", "1.01177", "1.00247", "1.00075"]),
    (6, ["-0.81043", "1.23311", "1.03137", "1.00617", "1.00157"]),
];

#[derive(Parser, Debug)]
#[command(name = "residue-parts", version, about = "Parts in residue classes: exact counts and asymptotics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact counts T_{r,N}(n); r = 0 gives the zero class.
    Exact(QueryArgs),
    /// Asymptotic estimates, optionally against the exact value.
    Asym(AsymArgs),
    /// Reproduce one of the two ratio tables.
    Table(TableArgs),
    /// Run the built-in verification suites.
    Verify(VerifyArgs),
    /// Build a p(n) cache file.
    CacheBuild(CacheBuildArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// p(n) cache in PTABLE v1 format, created or extended as needed.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Add wall-clock timing to each record.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct QueryArgs {
    /// Comma-separated list of indices.
    #[arg(long = "n", value_delimiter = ',', required = true, num_args = 1..)]
    pub n: Vec<u64>,
    #[arg(short = 'N', long = "modulus")]
    pub modulus: u64,
    #[arg(long = "r", default_value_t = 0, allow_negative_numbers = true)]
    pub r: i64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct AsymArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    #[arg(long)]
    pub precision_bits: Option<u32>,
    /// Evaluate the Bessel series up to k <= K instead of the two-term estimate.
    #[arg(long)]
    pub truncation_k: Option<u64>,
    #[arg(long)]
    pub with_exact: bool,
}

#[derive(Args, Debug, Clone)]
pub struct TableArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub which: u8,
    /// Drop columns beyond this index.
    #[arg(long)]
    pub max_n: Option<u64>,
    #[arg(long)]
    pub precision_bits: Option<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Run a single suite.
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long, default_value_t = 30)]
    pub max_modulus: u64,
}

#[derive(Args, Debug, Clone)]
pub struct CacheBuildArgs {
    #[arg(long)]
    pub max_n: u64,
    #[arg(long)]
    pub cache: PathBuf,
}

/// One output row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub n: u64,
    #[serde(rename = "N")]
    pub modulus: u64,
    /// `None` for the zero class.
    pub r: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub terms: BTreeMap<String, String>,
    /// Table cell as printed, five decimals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl ResultRecord {
    fn new(n: u64, modulus: u64, r: Option<u64>) -> Self {
        Self {
            n,
            modulus,
            r,
            exact: None,
            estimate: None,
            ratio: None,
            terms: BTreeMap::new(),
            cell: None,
            timing_ms: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub precision_bits: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub meta: Meta,
    pub records: Vec<ResultRecord>,
}

impl Report {
    /// Canonical JSON: sorted keys, two-space indent, trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("records serialise");
        let mut s = serde_json::to_string_pretty(&value).expect("value serialises");
        s.push('\n');
        s
    }
}

/// `d.ddd...e+XXX` with `digits` significant digits.
pub fn format_scientific(x: &Float, digits: usize) -> String {
    let (neg, mantissa, exp) = x.to_sign_string_exp(10, Some(digits));
    let sign = if neg { "-" } else { "" };
    let Some(exp) = exp else {
        return format!("{sign}{}.{}e+00", &mantissa[..1], "0".repeat(digits - 1));
    };
    let e = exp - 1;
    let esign = if e < 0 { '-' } else { '+' };
    format!("{sign}{}.{}e{esign}{:02}", &mantissa[..1], &mantissa[1..], e.abs())
}

/// `x` with `decimals` digits after the point, rounded to nearest, or
/// truncated toward zero when `truncate` is set.
pub fn format_fixed(x: &Float, decimals: u32, truncate: bool) -> String {
    let scale = Integer::from(Integer::u_pow_u(10, decimals));
    let scaled = Float::with_val(x.prec() + 64, x * &scale);
    let int = if truncate {
        scaled.trunc().to_integer()
    } else {
        scaled.round().to_integer()
    }
    .expect("finite value");
    let neg = int < 0;
    let digits = int.abs().to_string();
    let d = decimals as usize;
    let padded = format!("{digits:0>width$}", width = d + 1);
    let (whole, frac) = padded.split_at(padded.len() - d);
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Coverage(_) | Error::Resource(_) | Error::Guard { .. } | Error::Cache(_) | Error::Io(_) => EXIT_COVERAGE,
        _ => EXIT_DOMAIN,
    }
}

/// Parse `args` (including the program name) and run, writing to `out`/`err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Exact(args) => {
            let (prec, records) = cmd_exact(&args)?;
            emit(&records, &args.output, prec, out)?;
            Ok(EXIT_OK)
        }
        Command::Asym(args) => {
            let (prec, records) = cmd_asym(&args)?;
            emit(&records, &args.query.output, Some(prec), out)?;
            Ok(EXIT_OK)
        }
        Command::Table(args) => {
            let (prec, records) = cmd_table(&args)?;
            if args.output.format == Format::Text {
                out.write_all(render_table_text(args.which, &records).as_bytes())?;
            } else {
                emit(&records, &args.output, Some(prec), out)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify(args) => cmd_verify(&args, out, err),
        Command::CacheBuild(args) => {
            let table = build_partition_table(args.max_n)?;
            table.write_cache(&args.cache)?;
            writeln!(out, "wrote p(0..={}) to {}", args.max_n, args.cache.display())?;
            Ok(EXIT_OK)
        }
    }
}

fn reduce_residue(r: i64, modulus: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    Ok(crate::arith::residue(r, modulus))
}

fn load_table(max_n: u64, cache: Option<&Path>) -> Result<PartitionTable> {
    match cache {
        Some(path) => PartitionTable::load_or_build(path, max_n),
        None => build_partition_table(max_n),
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

pub fn cmd_exact(args: &QueryArgs) -> Result<(Option<u32>, Vec<ResultRecord>)> {
    let modulus = args.modulus;
    let r = reduce_residue(args.r, modulus)?;
    let max_n = *args.n.iter().max().expect("n-list is nonempty");
    let table = load_table(max_n, args.output.cache.as_deref())?;
    let sieve = if r == 0 { None } else { Some(build_divisor_sieve(modulus, max_n.max(1))?) };
    let mut records = Vec::with_capacity(args.n.len());
    for &n in &args.n {
        let start = Instant::now();
        let value = match &sieve {
            None => zero_class_exact(n, modulus, &table)?,
            Some(sieve) => part_count_exact(&PartCountQuery::new(n, modulus, r)?, &table, sieve)?,
        };
        let mut rec = ResultRecord::new(n, modulus, (r != 0).then_some(r));
        rec.exact = Some(value.to_string());
        if args.output.timing {
            rec.timing_ms = Some(elapsed_ms(start));
        }
        records.push(rec);
    }
    Ok((None, records))
}

fn resolve_precision(bits: Option<u32>, ns: &[u64]) -> Result<Precision> {
    match bits {
        Some(b) => Precision::new(b),
        None => Ok(Precision::for_indices(ns)),
    }
}

pub fn cmd_asym(args: &AsymArgs) -> Result<(u32, Vec<ResultRecord>)> {
    let q = &args.query;
    let modulus = q.modulus;
    let r = reduce_residue(q.r, modulus)?;
    let prec = resolve_precision(args.precision_bits, &q.n)?;
    if r != 0 && (modulus < 3 || 2 * r >= modulus || gcd(r, modulus) != 1) {
        return Err(Error::Domain(format!(
            "the difference estimate needs N >= 3, 1 <= r < N/2 and gcd(r, N) = 1, got r = {r}, N = {modulus}"
        )));
    }
    let max_n = *q.n.iter().max().expect("n-list is nonempty");
    let table = if args.with_exact { Some(load_table(max_n, q.output.cache.as_deref())?) } else { None };
    let sieve = match (&table, r) {
        (Some(_), r) if r != 0 => Some(build_divisor_sieve(modulus, max_n.max(1))?),
        _ => None,
    };
    let mut records = Vec::with_capacity(q.n.len());
    for &n in &q.n {
        let start = Instant::now();
        let mut rec = ResultRecord::new(n, modulus, (r != 0).then_some(r));
        let estimate = if r == 0 {
            let t = wright::theorem2_main(n, modulus, prec)?;
            rec.terms.insert("prefactor".into(), format_scientific(&t.prefactor, 30));
            rec.terms.insert("log_factor".into(), format_scientific(&t.log_factor, 30));
            t.value
        } else {
            let res = match args.truncation_k {
                Some(k) => rademacher::theorem1_series(n, r, modulus, k, prec)?,
                None => rademacher::theorem1_main(n, r, modulus, prec)?,
            };
            rec.terms.insert("main1".into(), format_scientific(&res.main1, 30));
            rec.terms.insert("main2".into(), format_scientific(&res.main2, 30));
            if let (Some(t1), Some(t2), Some(k)) = (&res.t1, &res.t2, res.truncation) {
                rec.terms.insert("t1".into(), format_scientific(t1, 30));
                rec.terms.insert("t2".into(), format_scientific(t2, 30));
                rec.terms.insert("truncation_k".into(), k.to_string());
            }
            res.estimate
        };
        rec.estimate = Some(format_scientific(&estimate, 30));
        if let Some(table) = &table {
            let exact = match &sieve {
                None => zero_class_exact(n, modulus, table)?,
                Some(sieve) => part_diff_exact(n, r, modulus, table, sieve)?,
            };
            let ratio = Float::with_val(prec.work(), &exact) / &estimate;
            rec.exact = Some(exact.to_string());
            rec.ratio = Some(format_fixed(&ratio, 10, false));
        }
        if q.output.timing {
            rec.timing_ms = Some(elapsed_ms(start));
        }
        records.push(rec);
    }
    Ok((prec.bits(), records))
}

/// `(N, r)` rows of a table; `r = None` is the zero class.
fn table_rows(which: u8) -> Vec<(u64, Option<u64>)> {
    match which {
        1 => vec![(3, Some(1))],
        _ => TABLE2_PUBLISHED.iter().map(|(m, _)| (*m, None)).collect(),
    }
}

/// Table ratio and its printed cell.
pub fn table_cell(
    n: u64,
    modulus: u64,
    r: Option<u64>,
    prec: Precision,
    table: &PartitionTable,
) -> Result<(Float, Integer, Float)> {
    match r {
        Some(r) => {
            let sieve = build_divisor_sieve(modulus, n)?;
            let exact = part_diff_exact(n, r, modulus, table, &sieve)?;
            let est = rademacher::theorem1_main(n, r, modulus, prec)?.estimate;
            let q = Float::with_val(prec.work(), &exact) / &est;
            Ok((q, exact, est))
        }
        None => {
            let exact = zero_class_exact(n, modulus, table)?;
            let est = wright::theorem2_main(n, modulus, prec)?.value;
            let q = Float::with_val(prec.work(), &exact) / &est;
            Ok((q, exact, est))
        }
    }
}

pub fn cmd_table(args: &TableArgs) -> Result<(u32, Vec<ResultRecord>)> {
    let columns: Vec<u64> = TABLE_COLUMNS
        .iter()
        .copied()
        .filter(|&n| args.max_n.is_none_or(|m| n <= m))
        .collect();
    if columns.is_empty() {
        return Err(Error::Domain(format!(
            "--max-n {} leaves no table columns; the smallest is {}",
            args.max_n.unwrap_or(0),
            TABLE_COLUMNS[0]
        )));
    }
    let prec = resolve_precision(args.precision_bits, &columns)?;
    let max_n = *columns.last().expect("nonempty");
    let table = load_table(max_n, args.output.cache.as_deref())?;
    let cells: Vec<(u64, Option<u64>, u64)> = table_rows(args.which)
        .into_iter()
        .flat_map(|(m, r)| columns.iter().map(move |&n| (m, r, n)))
        .collect();
    let timing = args.output.timing;
    cells
        .par_iter()
        .map(|&(modulus, r, n)| {
            let start = Instant::now();
            let (q, exact, est) = table_cell(n, modulus, r, prec, &table)?;
            let mut rec = ResultRecord::new(n, modulus, r);
            rec.exact = Some(exact.to_string());
            rec.estimate = Some(format_scientific(&est, 30));
            rec.ratio = Some(format_fixed(&q, 10, false));
            rec.cell = Some(format_fixed(&q, 5, true));
            if timing {
                rec.timing_ms = Some(elapsed_ms(start));
            }
            Ok(rec)
        })
        .collect::<Result<Vec<_>>>()
        .map(|records| (prec.bits(), records))
}

fn render_table_text(which: u8, records: &[ResultRecord]) -> String {
    let mut columns: Vec<u64> = records.iter().map(|r| r.n).collect();
    columns.sort_unstable();
    columns.dedup();
    let mut out = String::new();
    let header = match which {
        1 => "Q(n): exact difference over the two-term estimate, N = 3, r = 1",
        _ => "Q_N(n): zero-class count over its main term",
    };
    out.push_str(header);
    out.push('\n');
    out.push_str(&format!("{:<8}", "n"));
    for n in &columns {
        out.push_str(&format!("{n:>11}"));
    }
    out.push('\n');
    for (modulus, r) in table_rows(which) {
        let label = if r.is_some() { "Q".to_string() } else { format!("Q_{modulus}") };
        out.push_str(&format!("{label:<8}"));
        for n in &columns {
            let cell = records
                .iter()
                .find(|rec| rec.n == *n && rec.modulus == modulus && rec.r == r)
                .and_then(|rec| rec.cell.clone())
                .unwrap_or_default();
            out.push_str(&format!("{cell:>11}"));
        }
        out.push('\n');
    }
    out
}

const RECORD_COLUMNS: [&str; 6] = ["n", "N", "r", "exact", "estimate", "ratio"];

fn emit(records: &[ResultRecord], output: &OutputArgs, precision_bits: Option<u32>, out: &mut dyn Write) -> Result<()> {
    match output.format {
        Format::Json => {
            let report = Report {
                meta: Meta {
                    version: env!("CARGO_PKG_VERSION").to_string(),
                    precision_bits,
                },
                records: records.to_vec(),
            };
            out.write_all(report.to_json().as_bytes())?;
        }
        Format::Csv | Format::Text => {
            let rows = flatten(records);
            if output.format == Format::Csv {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in &rows {
                    w.write_record(row).map_err(|e| Error::Io(e.into()))?;
                }
                out.write_all(&w.into_inner().map_err(|e| Error::Io(e.into_error()))?)?;
            } else {
                let widths: Vec<usize> = (0..rows[0].len())
                    .map(|j| rows.iter().map(|row| row[j].len()).max().unwrap_or(0))
                    .collect();
                for row in &rows {
                    let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                    writeln!(out, "{}", line.join("  ").trim_end())?;
                }
            }
        }
    }
    Ok(())
}

/// Header plus one row per record; columns present in no record are dropped.
fn flatten(records: &[ResultRecord]) -> Vec<Vec<String>> {
    let mut term_keys: Vec<String> = records.iter().flat_map(|r| r.terms.keys().cloned()).collect();
    term_keys.sort();
    term_keys.dedup();
    let mut header: Vec<String> = RECORD_COLUMNS[..3].iter().map(|s| s.to_string()).collect();
    let has = |f: &dyn Fn(&ResultRecord) -> bool| records.iter().any(f);
    let optional: [(&str, bool); 3] = [
        ("exact", has(&|r| r.exact.is_some())),
        ("estimate", has(&|r| r.estimate.is_some())),
        ("ratio", has(&|r| r.ratio.is_some())),
    ];
    for (name, present) in optional {
        if present {
            header.push(name.to_string());
        }
    }
    header.extend(term_keys.iter().cloned());
    let with_cell = has(&|r| r.cell.is_some());
    let with_timing = has(&|r| r.timing_ms.is_some());
    if with_cell {
        header.push("cell".into());
    }
    if with_timing {
        header.push("timing_ms".into());
    }
    let mut rows = vec![header];
    for rec in records {
        let mut row = vec![
            rec.n.to_string(),
            rec.modulus.to_string(),
            rec.r.map(|r| r.to_string()).unwrap_or_default(),
        ];
        for (name, present) in optional {
            if present {
                let v = match name {
                    "exact" => &rec.exact,
                    "estimate" => &rec.estimate,
                    _ => &rec.ratio,
                };
                row.push(v.clone().unwrap_or_default());
            }
        }
        for key in &term_keys {
            row.push(rec.terms.get(key).cloned().unwrap_or_default());
        }
        if with_cell {
            row.push(rec.cell.clone().unwrap_or_default());
        }
        if with_timing {
            row.push(rec.timing_ms.map(|t| format!("{t:.3}")).unwrap_or_default());
        }
        rows.push(row);
    }
    rows
}

/// Names of the verification suites, in run order.
pub const SUITES: [&str; 10] = [
    "pentagonal",
    "oracle",
    "orthogonality",
    "dedekind",
    "eisenstein",
    "rademacher",
    "cusp-bound",
    "wright",
    "table1",
    "table2",
];

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let selected: Vec<&str> = match &args.suite {
        Some(name) => match SUITES.iter().find(|s| **s == name) {
            Some(s) => vec![*s],
            None => {
                writeln!(err, "error: unknown suite {name:?}; available: {}", SUITES.join(", "))?;
                return Ok(EXIT_USAGE);
            }
        },
        None => SUITES.to_vec(),
    };
    let mut failed = 0;
    for suite in selected {
        let start = Instant::now();
        let outcome = run_suite(suite, args.max_modulus);
        let ms = elapsed_ms(start);
        match outcome {
            Ok(()) => writeln!(out, "PASS  {suite:<14} {ms:>10.1} ms")?,
            Err(msg) => {
                failed += 1;
                writeln!(out, "FAIL  {suite:<14} {ms:>10.1} ms  {msg}")?;
            }
        }
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

type SuiteResult = std::result::Result<(), String>;

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Run one verification suite by name.
pub fn run_suite(name: &str, max_modulus: u64) -> SuiteResult {
    match name {
        "pentagonal" => {
            let table = build_partition_table(2000).map_err(fail)?;
            check_pentagonal(&table).map_err(|n| format!("recurrence fails at n = {n}"))
        }
        "oracle" => suite_oracle(),
        "orthogonality" => suite_orthogonality(max_modulus),
        "dedekind" => suite_dedekind(),
        "eisenstein" => suite_eisenstein(),
        "rademacher" => suite_rademacher(),
        "cusp-bound" => suite_cusp_bound(),
        "wright" => suite_wright(),
        "table1" => suite_table(1),
        "table2" => suite_table(2),
        other => Err(format!("unknown suite {other:?}")),
    }
}

fn suite_oracle() -> SuiteResult {
    let table = build_partition_table(40).map_err(fail)?;
    for n in 0..=40u64 {
        let hist = part_size_histogram(n).map_err(fail)?;
        for modulus in 1..=8u64 {
            let sieve = build_divisor_sieve(modulus, 40).map_err(fail)?;
            for r in 0..modulus {
                let brute: u64 = hist
                    .iter()
                    .enumerate()
                    .skip(1)
                    .filter(|(s, _)| *s as u64 % modulus == r)
                    .map(|(_, c)| *c)
                    .sum();
                let conv = part_count_exact(&PartCountQuery::new(n, modulus, r).map_err(fail)?, &table, &sieve)
                    .map_err(fail)?;
                if conv != brute {
                    return Err(format!("n = {n}, N = {modulus}, r = {r}: {conv} vs {brute}"));
                }
                if r == 0 && zero_class_exact(n, modulus, &table).map_err(fail)? != brute {
                    return Err(format!("zero class n = {n}, N = {modulus}"));
                }
            }
        }
    }
    Ok(())
}

fn suite_orthogonality(max_modulus: u64) -> SuiteResult {
    for modulus in 3..=max_modulus {
        let chars = dirichlet::odd_characters(modulus).map_err(fail)?;
        for r in (1..modulus).filter(|&r| gcd(r, modulus) == 1) {
            for n in 0..=3 * modulus as i64 {
                let got = chars.indicator(r, n).map_err(fail)?;
                let m = n as u64 % modulus;
                let want = if m == r {
                    1
                } else if m == modulus - r {
                    -1
                } else {
                    0
                };
                if got != want {
                    return Err(format!("N = {modulus}, r = {r}, n = {n}: {got} vs {want}"));
                }
            }
        }
    }
    Ok(())
}

fn suite_dedekind() -> SuiteResult {
    use rug::Rational;
    for k in 2..=100u64 {
        for h in (1..k).filter(|&h| gcd(h, k) == 1) {
            let s = rademacher::dedekind_sum(h as i64, k).map_err(fail)?;
            let t = rademacher::dedekind_sum(k as i64, h).map_err(fail)?;
            let rhs = Rational::from((-1, 4))
                + (Rational::from((h, k)) + Rational::from((k, h)) + Rational::from((1, h * k))) / 12u32;
            if Rational::from(&s + &t) != rhs {
                return Err(format!("reciprocity fails at h = {h}, k = {k}"));
            }
            if rademacher::dedekind_sum((k - h) as i64, k).map_err(fail)? != -s {
                return Err(format!("oddness fails at h = {h}, k = {k}"));
            }
        }
    }
    Ok(())
}

fn suite_eisenstein() -> SuiteResult {
    let prec = Precision::new(128).map_err(fail)?;
    let table = build_partition_table(200).map_err(fail)?;
    for modulus in [3u64, 4, 5, 6, 7, 8, 12] {
        let sieve = build_divisor_sieve(modulus, 200).map_err(fail)?;
        for r in (1..modulus).filter(|&r| gcd(r, modulus) == 1) {
            let g = dirichlet::g_series_coeffs(r, modulus, 200, &table, prec).map_err(fail)?;
            for n in 1..=200u64 {
                let exact = part_diff_exact(n, r, modulus, &table, &sieve).map_err(fail)?;
                let resid = Float::with_val(128, g[n as usize].real() - &exact).abs();
                let imag = Float::with_val(64, g[n as usize].imag().abs_ref());
                if resid > 1e-8 || imag > 1e-8 {
                    return Err(format!("N = {modulus}, r = {r}, n = {n}: residual {}", resid.to_f64()));
                }
            }
        }
    }
    Ok(())
}

fn suite_rademacher() -> SuiteResult {
    let table = build_partition_table(500).map_err(fail)?;
    (1..=500u64).into_par_iter().try_for_each(|n| {
        let v = rademacher::p_rademacher(n, ceil_sqrt(n), Precision::default()).map_err(fail)?;
        let rounded = v.round().to_integer().expect("finite");
        if &rounded != table.get(n).expect("covered") {
            return Err(format!("n = {n} rounds to {rounded}"));
        }
        Ok(())
    })
}

fn suite_cusp_bound() -> SuiteResult {
    let modulus = 5u64;
    let prec = Precision::new(64).map_err(fail)?;
    let bound_unit = 2 * crate::arith::euler_phi(modulus) * modulus * modulus;
    for r in (1..modulus).filter(|&r| gcd(r, modulus) == 1) {
        let eval = rademacher::CuspEvaluator::new(r, modulus, prec).map_err(fail)?;
        for k in 1..=8 {
            for cusp in rademacher::CuspData::all_with_denominator(k) {
                for m in 1..=50u64 {
                    let a = eval.an_coeff(m, &cusp).map_err(fail)?;
                    let abs = Float::with_val(64, a.abs_ref());
                    if abs > bound_unit * m {
                        return Err(format!("r = {r}, h/k = {}/{k}, m = {m}: |a_m| = {}", cusp.h(), abs.to_f64()));
                    }
                }
            }
        }
    }
    Ok(())
}

fn suite_wright() -> SuiteResult {
    let prec = Precision::default();
    for n in [100u64, 1000, 10000] {
        for modulus in [1u64, 3, 6] {
            let direct = wright::theorem2_main(n, modulus, prec).map_err(fail)?.value;
            let engine = wright::theorem2_engine(n, modulus, prec).map_err(fail)?;
            let rel = Float::with_val(64, Float::with_val(prec.work(), &engine - &direct) / &direct).abs();
            if rel > 1e-20 {
                return Err(format!("n = {n}, N = {modulus}: relative gap {}", rel.to_f64()));
            }
        }
    }
    Ok(())
}

/// `|Q - printed| <= 1e-5` and the truncated five-decimal cell equals the printed value.
pub fn matches_printed(q: &Float, printed: &str) -> bool {
    let p = Float::with_val(q.prec(), Float::parse(printed).expect("table literal"));
    let gap = Float::with_val(64, q - &p).abs();
    gap <= 1e-5 && format_fixed(q, 5, true) == printed
}

fn suite_table(which: u8) -> SuiteResult {
    let columns = &TABLE_COLUMNS[..3];
    let prec = Precision::for_indices(columns);
    let table = build_partition_table(*columns.last().expect("nonempty")).map_err(fail)?;
    let rows: Vec<(u64, Option<u64>, [&str; 5])> = match which {
        1 => vec![(3, Some(1), TABLE1_PUBLISHED)],
        _ => TABLE2_PUBLISHED.iter().map(|(m, p)| (*m, None, *p)).collect(),
    };
    for (modulus, r, printed) in rows {
        for (j, &n) in columns.iter().enumerate() {
            let (q, _, _) = table_cell(n, modulus, r, prec, &table).map_err(fail)?;
            if !matches_printed(&q, printed[j]) {
                return Err(format!(
                    "N = {modulus}, n = {n}: {} vs printed {}",
                    format_fixed(&q, 8, false),
                    printed[j]
                ));
            }
        }
    }
    Ok(())
}
