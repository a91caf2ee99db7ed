//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification finds a violation or an
//! identity fails, 2 on invalid input.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::bounds::{
    inverse_table, mero_table, neg_power_coeffs, neg_power_table, product_identity_check, BoundRow,
};
use crate::class::{
    extremal, extremal_root, from_schwarz, JanowskiParams, StarlikeFunction, StarlikeRecord,
};
use crate::harness::{
    default_parameter_grid, report, run_inverse_campaign, run_mero_campaign, run_negpow_campaign,
    write_jsonl, CampaignConfig, Corpus, Summary, VerificationRecord,
};
use crate::inversion::{inverse_direct, mero_inverse, InverseRecord};
use crate::scalar::{parse_rational, Backend, Real, Scalar};
use crate::schwarz::SchwarzSpec;
use crate::series::SeriesRecord;

pub const THREADS_ENV: &str = "JANOWSKI_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "janowski",
    version,
    about = "Coefficient bounds for Janowski starlike functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bounds on |a_l(-lambda, f)|, l = 1..=l-max.
    Bounds {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 10)]
        l_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Bounds on |A_n| of the inverse, n = 2..=n-max.
    InverseBounds {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Bounds on |B_m| of the meromorphic inverse, m = 1..=n-max.
    MeroBounds {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Coefficients of class members, optionally with (f/z)^-lambda.
    Coeffs {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        member: MemberArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Inverse expansions of class members.
    Invert {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        member: MemberArgs,
        /// Also print B_1..B_N of the meromorphic inverse (needs order >= N + 2).
        #[arg(long)]
        mero: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Checks the telescoping identity behind the product bound for l = 1..=l-max.
    IdentityCheck {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 20)]
        l_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Runs verification campaigns.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: String,
    /// Overrides the backend chosen from the input syntax.
    #[arg(long, value_enum)]
    pub backend: Option<BackendArg>,
}

#[derive(Debug, Args)]
pub struct MemberArgs {
    /// JSON file holding one Schwarz function or an array of them.
    #[arg(long, conflicts_with = "root")]
    pub spec: Option<PathBuf>,
    /// Use the n-fold root transform of the extremal function.
    #[arg(long)]
    pub root: Option<usize>,
    #[arg(long, default_value_t = 10)]
    pub order: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Family::All)]
    pub theorem: Family,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 12)]
    pub order: usize,
    #[arg(long, default_value_t = 10)]
    pub index_max: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
    pub backend: BackendArg,
    #[arg(long, value_enum, default_value_t = CorpusArg::Sampled)]
    pub corpus: CorpusArg,
    /// Schwarz functions to use instead of random draws.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Comma-separated rational exponents.
    #[arg(long, value_delimiter = ',')]
    pub lambda: Vec<String>,
    /// Pin a single parameter pair instead of the default grid.
    #[arg(long = "A", allow_hyphen_values = true, requires = "b")]
    pub a: Option<String>,
    #[arg(long = "B", allow_hyphen_values = true, requires = "a")]
    pub b: Option<String>,
    /// Write every record to this file as JSON lines.
    #[arg(long)]
    pub records: Option<PathBuf>,
    /// `json` prints the summary, `jsonl` prints the records.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Float,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Float => Backend::Float,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Negpow,
    Inverse,
    Mero,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CorpusArg {
    Sampled,
    Extremal,
    Roots,
}

/// Distinguishes invalid input from a failed check.
#[derive(Debug)]
pub enum Outcome {
    Ok,
    Violation,
}

fn is_decimal(s: &str) -> bool {
    s.contains(['.', 'e', 'E'])
}

/// Decimal literals switch the whole command to the float backend.
fn choose_backend(inputs: &[&str], forced: Option<BackendArg>) -> Backend {
    if let Some(b) = forced {
        return b.into();
    }
    if inputs.iter().any(|s| is_decimal(s)) {
        eprintln!("warning: decimal input, using the float backend");
        Backend::Float
    } else {
        Backend::Exact
    }
}

fn parse_real<R: Real>(s: &str, what: &str) -> anyhow::Result<R> {
    R::decode(s).with_context(|| format!("invalid {what} {s:?}"))
}

fn parse_params<R: Real>(args: &ParamArgs) -> anyhow::Result<JanowskiParams<R>> {
    let a = parse_real(&args.a, "A")?;
    let b = parse_real(&args.b, "B")?;
    Ok(JanowskiParams::new(a, b)?)
}

fn emit<T: Serialize>(rows: &[T], format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
        Format::Jsonl => {
            for r in rows {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
    }
    Ok(())
}

fn read_specs(path: &Path) -> anyhow::Result<Vec<SchwarzSpec>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("{} is not JSON", path.display()))?;
    let specs = if value.is_array() {
        serde_json::from_value(value)?
    } else {
        vec![serde_json::from_value(value)?]
    };
    Ok(specs)
}

fn members<S: Scalar>(
    p: &JanowskiParams<S::Real>,
    m: &MemberArgs,
) -> anyhow::Result<Vec<StarlikeFunction<S>>> {
    if let Some(path) = &m.spec {
        return read_specs(path)?
            .iter()
            .map(|s| Ok(from_schwarz(s, p, m.order)?))
            .collect();
    }
    Ok(vec![match m.root {
        Some(n) => extremal_root(p, n, m.order)?,
        None => extremal(p, m.order)?,
    }])
}

#[derive(Serialize)]
struct CoeffsOutput {
    member: StarlikeRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    neg_power: Option<SeriesRecord>,
}

#[derive(Serialize)]
struct InvertOutput {
    member: StarlikeRecord,
    inverse: InverseRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    mero: Option<Vec<String>>,
}

#[derive(Serialize)]
struct IdentityRow {
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "B")]
    b: String,
    lambda: String,
    l: usize,
    lhs: String,
    rhs: String,
    equal: bool,
}

fn coeffs<S: Scalar>(
    params: &ParamArgs,
    member: &MemberArgs,
    lambda: Option<&str>,
) -> anyhow::Result<Vec<CoeffsOutput>> {
    let p = parse_params::<S::Real>(params)?;
    let lambda = lambda
        .map(|l| parse_real::<S::Real>(l, "lambda"))
        .transpose()?;
    members::<S>(&p, member)?
        .iter()
        .map(|f| {
            let neg_power = match &lambda {
                Some(l) => Some(neg_power_coeffs(f, l, f.order() - 1)?.encode()),
                None => None,
            };
            Ok(CoeffsOutput {
                member: f.export(),
                neg_power,
            })
        })
        .collect()
}

fn invert<S: Scalar>(
    params: &ParamArgs,
    member: &MemberArgs,
    mero: Option<usize>,
) -> anyhow::Result<Vec<InvertOutput>> {
    let p = parse_params::<S::Real>(params)?;
    members::<S>(&p, member)?
        .iter()
        .map(|f| {
            let mero = match mero {
                Some(n) => Some(
                    mero_inverse(f, n)?
                        .coeffs
                        .iter()
                        .map(Scalar::encode)
                        .collect(),
                ),
                None => None,
            };
            Ok(InvertOutput {
                member: f.export(),
                inverse: inverse_direct(f)?.export(),
                mero,
            })
        })
        .collect()
}

fn identity<R: Real>(
    params: &ParamArgs,
    lambda: &str,
    l_max: usize,
) -> anyhow::Result<Vec<IdentityRow>> {
    let p = parse_params::<R>(params)?;
    let lambda = parse_real::<R>(lambda, "lambda")?;
    (1..=l_max)
        .map(|l| {
            let c = product_identity_check(&p, &lambda, l)?;
            Ok(IdentityRow {
                a: p.a().encode(),
                b: p.b().encode(),
                lambda: lambda.encode(),
                l,
                lhs: c.lhs.encode(),
                rhs: c.rhs.encode(),
                equal: c.equal,
            })
        })
        .collect()
}

fn threads_from_env() -> anyhow::Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .with_context(|| format!("{THREADS_ENV}={v:?} is not a count"))?;
            if n == 0 {
                bail!("{THREADS_ENV} must be positive");
            }
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

fn campaign_config(v: &VerifyArgs) -> anyhow::Result<CampaignConfig> {
    let defaults = CampaignConfig::default();
    let lambda_grid = if v.lambda.is_empty() {
        defaults.lambda_grid
    } else {
        v.lambda
            .iter()
            .map(|s| parse_rational(s).with_context(|| format!("invalid lambda {s:?}")))
            .collect::<anyhow::Result<_>>()?
    };
    let params = match (&v.a, &v.b) {
        (Some(a), Some(b)) => vec![JanowskiParams::new(
            parse_real(a, "A")?,
            parse_real(b, "B")?,
        )?],
        _ => default_parameter_grid(),
    };
    let corpus = match (&v.spec, v.corpus) {
        (Some(path), _) => Corpus::Specs(read_specs(path)?),
        (None, CorpusArg::Sampled) => Corpus::Sampled,
        (None, CorpusArg::Extremal) => Corpus::Extremal,
        (None, CorpusArg::Roots) => Corpus::ExtremalRoots,
    };
    let cfg = CampaignConfig {
        trials: v.trials,
        order: v.order,
        lambda_grid,
        index_max: v.index_max,
        seed: v.seed,
        backend: v.backend.into(),
        params,
        corpus,
        threads: threads_from_env()?,
    };
    cfg.validate()?;
    Ok(cfg)
}

#[derive(Serialize)]
struct VerifyOutput {
    negpow: Option<Summary>,
    inverse: Option<Summary>,
    mero: Option<Summary>,
}

fn verify(v: &VerifyArgs, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let cfg = campaign_config(v)?;
    let want = |f: Family| v.theorem == Family::All || v.theorem == f;
    let mut all: Vec<VerificationRecord> = Vec::new();
    let mut run = |f: Family,
                   go: fn(&CampaignConfig) -> crate::Result<Vec<VerificationRecord>>|
     -> anyhow::Result<Option<Summary>> {
        if !want(f) {
            return Ok(None);
        }
        let records = go(&cfg)?;
        let s = report(&records);
        all.extend(records);
        Ok(Some(s))
    };
    let summary = VerifyOutput {
        negpow: run(Family::Negpow, run_negpow_campaign)?,
        inverse: run(Family::Inverse, run_inverse_campaign)?,
        mero: run(Family::Mero, run_mero_campaign)?,
    };
    if let Some(path) = &v.records {
        let file =
            fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        write_jsonl(&all, io::BufWriter::new(file))?;
    }
    match v.format {
        Format::Jsonl => write_jsonl(&all, &mut *out)?,
        Format::Json | Format::Csv => {
            serde_json::to_writer_pretty(&mut *out, &summary)?;
            writeln!(out)?;
        }
    }
    let failures: usize = all.iter().filter(|r| !r.pass).count();
    if failures > 0 {
        eprintln!("{failures} bound violation(s)");
        return Ok(Outcome::Violation);
    }
    Ok(Outcome::Ok)
}

fn bound_rows(command: &Command) -> anyhow::Result<Option<(Vec<BoundRow>, Format)>> {
    fn with<R: Real>(command: &Command) -> anyhow::Result<(Vec<BoundRow>, Format)> {
        Ok(match command {
            Command::Bounds {
                params,
                lambda,
                l_max,
                format,
            } => {
                let p = parse_params::<R>(params)?;
                (
                    neg_power_table(&p, &parse_real(lambda, "lambda")?, *l_max)?,
                    *format,
                )
            }
            Command::InverseBounds {
                params,
                n_max,
                format,
            } => (inverse_table(&parse_params::<R>(params)?, *n_max)?, *format),
            Command::MeroBounds {
                params,
                n_max,
                format,
            } => (mero_table(&parse_params::<R>(params)?, *n_max)?, *format),
            _ => unreachable!("not a bound table command"),
        })
    }
    let (params, extra): (&ParamArgs, Option<&str>) = match command {
        Command::Bounds { params, lambda, .. } => (params, Some(lambda)),
        Command::InverseBounds { params, .. } | Command::MeroBounds { params, .. } => {
            (params, None)
        }
        _ => return Ok(None),
    };
    let mut inputs = vec![params.a.as_str(), params.b.as_str()];
    inputs.extend(extra);
    Ok(Some(match choose_backend(&inputs, params.backend) {
        Backend::Exact => with::<BigRational>(command)?,
        Backend::Float => with::<f64>(command)?,
    }))
}

/// Runs a parsed command, writing machine output to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    if let Some((rows, format)) = bound_rows(&cli.command)? {
        emit(&rows, format, out)?;
        return Ok(Outcome::Ok);
    }
    match &cli.command {
        Command::Coeffs {
            params,
            member,
            lambda,
            format,
        } => {
            let mut inputs = vec![params.a.as_str(), params.b.as_str()];
            inputs.extend(lambda.as_deref());
            let rows = match choose_backend(&inputs, params.backend) {
                Backend::Exact => coeffs::<BigRational>(params, member, lambda.as_deref())?,
                Backend::Float => coeffs::<Complex64>(params, member, lambda.as_deref())?,
            };
            emit(&rows, non_csv(*format)?, out)?;
        }
        Command::Invert {
            params,
            member,
            mero,
            format,
        } => {
            let rows = match choose_backend(&[&params.a, &params.b], params.backend) {
                Backend::Exact => invert::<BigRational>(params, member, *mero)?,
                Backend::Float => invert::<Complex64>(params, member, *mero)?,
            };
            emit(&rows, non_csv(*format)?, out)?;
        }
        Command::IdentityCheck {
            params,
            lambda,
            l_max,
            format,
        } => {
            let rows = match choose_backend(&[&params.a, &params.b, lambda], params.backend) {
                Backend::Exact => identity::<BigRational>(params, lambda, *l_max)?,
                Backend::Float => identity::<f64>(params, lambda, *l_max)?,
            };
            emit(&rows, *format, out)?;
            if let Some(r) = rows.iter().find(|r| !r.equal) {
                eprintln!("identity fails at l = {}: {} != {}", r.l, r.lhs, r.rhs);
                return Ok(Outcome::Violation);
            }
        }
        Command::Verify(v) => return verify(v, out),
        _ => unreachable!("bound tables handled above"),
    }
    Ok(Outcome::Ok)
}

fn non_csv(format: Format) -> anyhow::Result<Format> {
    if format == Format::Csv {
        bail!("csv output is only available for tables; use json or jsonl");
    }
    Ok(format)
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Violation) => 1,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (anyhow::Result<Outcome>, String) {
        let cli =
            Cli::try_parse_from(std::iter::once("janowski").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let r = execute(&cli, &mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn bounds_csv() {
        let (r, out) = run(&[
            "bounds", "--A", "1", "--B", "-1", "--lambda", "2", "--l-max", "4", "--format", "csv",
        ]);
        assert!(matches!(r, Ok(Outcome::Ok)));
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "A,B,lambda_or_n,l,bound,case_fired,M");
        assert_eq!(lines[1], "1,-1,2,1,4,negpow-product-integer,3");
        assert_eq!(lines[4], "1,-1,2,4,3,negpow-tail,3");
    }

    #[test]
    fn parameters_are_validated() {
        let (r, _) = run(&["inverse-bounds", "--A", "-1", "--B", "1"]);
        assert!(r.is_err());
        let (r, _) = run(&["bounds", "--A", "1", "--B", "-1", "--lambda", "0"]);
        assert!(r.is_err());
    }

    #[test]
    fn decimal_input_uses_floats() {
        let (r, out) = run(&[
            "inverse-bounds",
            "--A",
            "0.3",
            "--B",
            "-0.4",
            "--n-max",
            "5",
        ]);
        assert!(matches!(r, Ok(Outcome::Ok)));
        assert!(out
            .lines()
            .last()
            .unwrap()
            .starts_with("0.3,-0.4,5,5,0.7323"));
    }

    #[test]
    fn csv_is_rejected_for_series_output() {
        let (r, _) = run(&["coeffs", "--A", "1", "--B", "-1", "--format", "csv"]);
        assert!(r.is_err());
    }
}
