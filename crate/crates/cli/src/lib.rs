//! Library half of the `torelli` command: argument model, scan records
//! and the dispatcher, kept separate from `main` so it can be driven from
//! tests with captured output.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use torelli_core::arith::{format_ratio, format_ratio_compact, parse_ratio};
use torelli_core::clifford::DiagonalForm;
use torelli_core::exclusion::{self, ExclusionVerdict};
use torelli_core::higgs_rank::{self, RankProfile};
use torelli_core::hn_slope::{self, GradedPoint};
use torelli_core::params::{HalfSpinPart, OrthogonalDatumParams, UnitaryDatumParams};
use torelli_core::verify::{self, Suite};
use torelli_core::weights::{self, SpinPart};

pub const EXIT_EXCLUDED: u8 = 0;
pub const EXIT_NOT_EXCLUDED: u8 = 10;
pub const EXIT_USAGE: u8 = 11;
pub const EXIT_MALFORMED_NUMBER: u8 = 12;
pub const EXIT_FILE: u8 = 13;
pub const EXIT_DOMAIN: u8 = 14;
pub const EXIT_VERIFY_FAILED: u8 = 15;

pub const CSV_HEADER: &str = "type,d,n,m,part,copies,dim_v0,g,rank_f,rank_u,excluded,criterion,margin";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed number: {0}")]
    MalformedNumber(String),
    #[error("{path}: {source}")]
    File { path: String, source: io::Error },
    #[error("{0}")]
    Domain(#[from] torelli_core::Error),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::MalformedNumber(_) => EXIT_MALFORMED_NUMBER,
            CliError::File { .. } | CliError::Io(_) => EXIT_FILE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "torelli", version, about = "Exclusion criteria for Shimura curves in the Torelli locus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ranks of the ample and unitary parts on the subvariety and the curve.
    Rank(DatumArgs),
    /// Evaluate the applicable exclusion criterion (exit 0 excluded, 10 not).
    Exclude(DatumArgs),
    /// Restrict a representation to the curve's SL2 and decompose.
    #[command(subcommand)]
    Branch(BranchCommand),
    /// Seeded self-checks of the Clifford kernel.
    #[command(subcommand)]
    Clifford(CliffordCommand),
    /// Harder–Narasimhan polygons.
    #[command(subcommand)]
    Hn(HnCommand),
    /// Grid scan over data, one record per cell.
    Scan(ScanArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DatumType {
    Su,
    So,
}

impl DatumType {
    fn label(self) -> &'static str {
        match self {
            DatumType::Su => "su",
            DatumType::So => "so",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct DatumArgs {
    #[arg(long = "type", value_enum)]
    pub kind: DatumType,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub n: u32,
    /// Exterior power index (su only).
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub copies: u64,
    #[arg(long = "dim-v0", default_value_t = 0)]
    pub dim_v0: u64,
    /// Half-spin part for so with even n: plus or minus.
    #[arg(long)]
    pub part: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum BranchCommand {
    /// Λ_m of the standard representation of SU(n,1).
    Su {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    /// A (half-)spin representation of Spin(h).
    Spin {
        #[arg(long = "dim-h")]
        dim_h: u32,
        #[arg(long, default_value = "full")]
        part: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum CliffordCommand {
    Check {
        /// Diagonal coefficients a1,...,aN as integers or p/q.
        #[arg(long)]
        coeffs: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum HnCommand {
    /// Upper convex hull of "rank degree" lines; the largest rank is the total.
    Hull {
        #[arg(long)]
        points: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long = "type", value_enum)]
    pub kind: DatumType,
    #[arg(long = "d-max")]
    pub d_max: u32,
    #[arg(long = "n-max")]
    pub n_max: u32,
    #[arg(long = "m-max")]
    pub m_max: Option<u32>,
    #[arg(long = "copies-max", default_value_t = 1)]
    pub copies_max: u64,
    /// Largest trivial-summand dimension; only even values are scanned.
    #[arg(long = "v0-max", default_value_t = 0)]
    pub v0_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
}

/// One grid cell of a scan. Ranks are taken on the curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRecord {
    pub kind: DatumType,
    pub d: u32,
    pub n: u32,
    pub m: Option<u32>,
    pub part: Option<HalfSpinPart>,
    pub copies: u64,
    pub dim_v0: u64,
    pub g: BigInt,
    pub rank_f: BigInt,
    pub rank_u: BigInt,
    pub excluded: bool,
    pub criterion: &'static str,
    pub margin: BigRational,
}

impl ScanRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.kind.label(),
            self.d,
            self.n,
            self.m.map(|m| m.to_string()).unwrap_or_default(),
            self.part.map(|p| p.label()).unwrap_or(""),
            self.copies,
            self.dim_v0,
            self.g,
            self.rank_f,
            self.rank_u,
            self.excluded,
            self.criterion,
            format_ratio_compact(&self.margin)
        )
    }

    pub fn to_json(&self) -> Value {
        let mut o = Map::new();
        o.insert("type".into(), json!(self.kind.label()));
        o.insert("d".into(), json!(self.d));
        o.insert("n".into(), json!(self.n));
        o.insert("m".into(), self.m.map_or(Value::Null, |m| json!(m)));
        o.insert("part".into(), self.part.map_or(Value::Null, |p| json!(p.label())));
        o.insert("copies".into(), json!(self.copies));
        o.insert("dim_v0".into(), json!(self.dim_v0));
        o.insert("g".into(), big(&self.g));
        o.insert("rank_f".into(), big(&self.rank_f));
        o.insert("rank_u".into(), big(&self.rank_u));
        o.insert("excluded".into(), json!(self.excluded));
        o.insert("criterion".into(), json!(self.criterion));
        o.insert("margin".into(), json!(format_ratio(&self.margin)));
        Value::Object(o)
    }
}

/// Integers of any size as JSON numbers.
fn big(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integer literal"))
}

fn su_record(p: &UnitaryDatumParams) -> Result<ScanRecord, CliError> {
    let ranks = higgs_rank::rank_su_curve(p)?;
    let verdict = exclusion::exclude_su_datum(p)?;
    Ok(ScanRecord {
        kind: DatumType::Su,
        d: p.d,
        n: p.n,
        m: Some(p.m),
        part: None,
        copies: p.copies,
        dim_v0: p.dim_v0,
        g: ranks.g,
        rank_f: ranks.rank_f,
        rank_u: ranks.rank_u,
        excluded: verdict.excluded,
        criterion: verdict.criterion.label(),
        margin: verdict.margin,
    })
}

fn so_record(p: &OrthogonalDatumParams) -> Result<ScanRecord, CliError> {
    let ranks = higgs_rank::rank_so_curve(p)?;
    let verdict = exclusion::exclude_so(p)?;
    Ok(ScanRecord {
        kind: DatumType::So,
        d: p.d,
        n: p.n,
        m: None,
        part: Some(p.half_spin_part),
        copies: p.copies,
        dim_v0: p.dim_v0,
        g: ranks.g,
        rank_f: ranks.rank_f,
        rank_u: ranks.rank_u,
        excluded: verdict.excluded,
        criterion: verdict.criterion.label(),
        margin: verdict.margin,
    })
}

fn so_parts(n: u32) -> Vec<HalfSpinPart> {
    if n.is_multiple_of(2) {
        vec![HalfSpinPart::Plus, HalfSpinPart::Minus]
    } else {
        vec![HalfSpinPart::NotApplicable]
    }
}

/// All records of a scan, ordered by `(d, n, m or part, N, dim_v0)`
/// regardless of how the work is split across threads.
pub fn scan(args: &ScanArgs) -> Result<Vec<ScanRecord>, CliError> {
    let v0s: Vec<u64> = (0..=args.v0_max).step_by(2).collect();
    let m_max = args.m_max.unwrap_or(args.n_max);
    let rows: Vec<Result<Vec<ScanRecord>, CliError>> = (1..=args.d_max)
        .into_par_iter()
        .map(|d| {
            let mut out = Vec::new();
            for n in 1..=args.n_max {
                match args.kind {
                    DatumType::Su => {
                        for m in 1..=n.min(m_max) {
                            for copies in 1..=args.copies_max {
                                for &dim_v0 in &v0s {
                                    out.push(su_record(&UnitaryDatumParams { d, n, m, copies, dim_v0 })?);
                                }
                            }
                        }
                    }
                    DatumType::So => {
                        for half_spin_part in so_parts(n) {
                            for copies in 1..=args.copies_max {
                                for &dim_v0 in &v0s {
                                    out.push(so_record(&OrthogonalDatumParams {
                                        d,
                                        n,
                                        copies,
                                        half_spin_part,
                                        dim_v0,
                                    })?);
                                }
                            }
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect();
    let mut records = Vec::new();
    for r in rows {
        records.extend(r?);
    }
    Ok(records)
}

pub fn render_csv(records: &[ScanRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

pub fn render_json(records: &[ScanRecord]) -> String {
    let arr = Value::Array(records.iter().map(ScanRecord::to_json).collect());
    let mut s = serde_json::to_string_pretty(&arr).expect("serializable");
    s.push('\n');
    s
}

fn half_spin(args: &DatumArgs) -> Result<HalfSpinPart, CliError> {
    match &args.part {
        None => Ok(HalfSpinPart::default_for(args.n)),
        Some(s) => HalfSpinPart::parse(s).ok_or_else(|| CliError::Usage(format!("unknown half-spin part '{s}'"))),
    }
}

fn unitary(args: &DatumArgs) -> Result<UnitaryDatumParams, CliError> {
    let m = args.m.ok_or_else(|| CliError::Usage("--m is required for --type su".into()))?;
    Ok(UnitaryDatumParams { d: args.d, n: args.n, m, copies: args.copies, dim_v0: args.dim_v0 })
}

fn orthogonal(args: &DatumArgs) -> Result<OrthogonalDatumParams, CliError> {
    Ok(OrthogonalDatumParams {
        d: args.d,
        n: args.n,
        copies: args.copies,
        half_spin_part: half_spin(args)?,
        dim_v0: args.dim_v0,
    })
}

fn profile_json(r: &RankProfile) -> Value {
    json!({ "g": big(&r.g), "rank_f": big(&r.rank_f), "rank_u": big(&r.rank_u) })
}

fn datum_json(args: &DatumArgs) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("type".into(), json!(args.kind.label()));
    o.insert("d".into(), json!(args.d));
    o.insert("n".into(), json!(args.n));
    o.insert("m".into(), args.m.map_or(Value::Null, |m| json!(m)));
    o.insert("copies".into(), json!(args.copies));
    o.insert("dim_v0".into(), json!(args.dim_v0));
    o
}

fn cmd_rank(args: &DatumArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let (on_m, on_c) = match args.kind {
        DatumType::Su => {
            let p = unitary(args)?;
            (higgs_rank::rank_su_subvariety(&p)?, higgs_rank::rank_su_curve(&p)?)
        }
        DatumType::So => {
            let p = orthogonal(args)?;
            (higgs_rank::rank_so_subvariety(&p)?, higgs_rank::rank_so_curve(&p)?)
        }
    };
    if args.json {
        let mut o = datum_json(args);
        o.insert(on_m.locus.label().into(), profile_json(&on_m));
        o.insert(on_c.locus.label().into(), profile_json(&on_c));
        writeln!(out, "{}", Value::Object(o))?;
    } else {
        writeln!(out, "{on_m}")?;
        writeln!(out, "{on_c}")?;
    }
    Ok(0)
}

fn verdict_for(args: &DatumArgs) -> Result<ExclusionVerdict, CliError> {
    Ok(match args.kind {
        DatumType::Su => exclusion::exclude_su_datum(&unitary(args)?)?,
        DatumType::So => exclusion::exclude_so(&orthogonal(args)?)?,
    })
}

fn cmd_exclude(args: &DatumArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let v = verdict_for(args)?;
    if args.json {
        let mut o = datum_json(args);
        o.insert("excluded".into(), json!(v.excluded));
        o.insert("criterion".into(), json!(v.criterion.label()));
        o.insert("margin".into(), json!(format_ratio(&v.margin)));
        o.insert("notes".into(), json!(v.notes));
        writeln!(out, "{}", Value::Object(o))?;
    } else {
        writeln!(out, "{v}")?;
        for note in &v.notes {
            writeln!(out, "  note: {note}")?;
        }
    }
    Ok(if v.excluded { EXIT_EXCLUDED } else { EXIT_NOT_EXCLUDED })
}

fn cmd_branch(cmd: &BranchCommand, out: &mut dyn Write) -> Result<u8, CliError> {
    let dec = match cmd {
        BranchCommand::Su { n, m } => weights::branch_lambda_to_curve(*n, *m)?,
        BranchCommand::Spin { dim_h, part } => {
            let part = SpinPart::parse(part).ok_or_else(|| CliError::Usage(format!("unknown spin part '{part}'")))?;
            weights::branch_spin_to_curve(*dim_h, part)?
        }
    };
    writeln!(out, "{dec}")?;
    Ok(0)
}

fn parse_coeffs(s: &str) -> Result<Vec<BigRational>, CliError> {
    s.split(',')
        .map(|t| parse_ratio(t).ok_or_else(|| CliError::MalformedNumber(t.trim().to_string())))
        .collect()
}

fn cmd_clifford(cmd: &CliffordCommand, out: &mut dyn Write) -> Result<u8, CliError> {
    let CliffordCommand::Check { coeffs, trials, seed } = cmd;
    let form = DiagonalForm::new(parse_coeffs(coeffs)?)?;
    let report = verify::clifford_check(&form, *trials, *seed)?;
    match report.failure {
        None => {
            writeln!(out, "pass: {} trials, {} checks", report.trials, report.checks)?;
            Ok(0)
        }
        Some(f) => {
            writeln!(out, "fail: {f}")?;
            Ok(EXIT_VERIFY_FAILED)
        }
    }
}

/// Parses the `hn hull` input: one "rank degree" pair per line, where the
/// degree is an integer or `p/q`; blank lines and `#` comments are skipped.
pub fn parse_points(text: &str) -> Result<Vec<GradedPoint>, CliError> {
    let mut pts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(r), Some(deg), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(CliError::MalformedNumber(format!("line {}: expected 'rank degree'", i + 1)));
        };
        let rank: u64 = r.parse().map_err(|_| CliError::MalformedNumber(format!("line {}: rank '{r}'", i + 1)))?;
        let degree =
            parse_ratio(deg).ok_or_else(|| CliError::MalformedNumber(format!("line {}: degree '{deg}'", i + 1)))?;
        pts.push(GradedPoint::new(rank, degree)?);
    }
    Ok(pts)
}

fn cmd_hn(cmd: &HnCommand, out: &mut dyn Write) -> Result<u8, CliError> {
    let HnCommand::Hull { points } = cmd;
    let text = fs::read_to_string(points)
        .map_err(|source| CliError::File { path: points.display().to_string(), source })?;
    let poly = hn_slope::hn_hull(&parse_points(&text)?, None)?;
    let slopes: Vec<String> = poly.slopes().iter().map(format_ratio_compact).collect();
    writeln!(out, "vertices: {poly}")?;
    writeln!(out, "slopes: {}", slopes.join(" "))?;
    writeln!(out, "mu_f: {}", format_ratio_compact(&poly.final_slope()))?;
    writeln!(out, "semistable: {}", poly.is_semistable())?;
    Ok(0)
}

fn cmd_scan(args: &ScanArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let records = scan(args)?;
    let text = match args.format {
        Format::Csv => render_csv(&records),
        Format::Json => render_json(&records),
    };
    match &args.out {
        Some(path) => {
            fs::write(path, text).map_err(|source| CliError::File { path: path.display().to_string(), source })?;
            writeln!(out, "wrote {} records to {}", records.len(), path.display())?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let suite = Suite::parse(&args.suite).ok_or_else(|| CliError::Usage(format!("unknown suite '{}'", args.suite)))?;
    let mut ok = true;
    for report in verify::run_suite(suite) {
        ok &= report.passed();
        writeln!(out, "{report}")?;
    }
    Ok(if ok { 0 } else { EXIT_VERIFY_FAILED })
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match &cli.command {
        Command::Rank(a) => cmd_rank(a, out),
        Command::Exclude(a) => cmd_exclude(a, out),
        Command::Branch(c) => cmd_branch(c, out),
        Command::Clifford(c) => cmd_clifford(c, out),
        Command::Hn(c) => cmd_hn(c, out),
        Command::Scan(a) => cmd_scan(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    }
}

/// Parses and runs; diagnostics go to `err`, and the return value is the
/// process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::error::ErrorKind;
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                ErrorKind::ValueValidation => {
                    let _ = writeln!(err, "error: {}", first_line(&e.to_string()));
                    EXIT_MALFORMED_NUMBER
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn first_line(s: &str) -> String {
    s.lines().next().unwrap_or("").trim_start_matches("error: ").to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_integers_are_bare_json_keeps_denominator() {
        let recs = scan(&ScanArgs {
            kind: DatumType::So,
            d_max: 6,
            n_max: 1,
            m_max: None,
            copies_max: 1,
            v0_max: 0,
            format: Format::Csv,
            out: None,
        })
        .unwrap();
        let last = recs.last().unwrap();
        assert_eq!(last.csv_row(), "so,6,1,,na,1,0,12,2,10,true,so_degree,0");
        assert_eq!(last.to_json()["margin"], "0/1");
        assert_eq!(recs[4].csv_row(), "so,5,1,,na,1,0,10,2,8,false,so_degree,-2/5");
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn in_process_run() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(["torelli", "branch", "su", "--n", "4", "--m", "1"], &mut out, &mut err);
        assert_eq!(code, 0);
        assert_eq!(String::from_utf8(out).unwrap(), "Std x1, Trivial x3\n");
    }
}
