//! Command-line front end.
//!
//! Every subcommand reads sequence documents (`--seq PATH`, `--seq -` for
//! stdin, or inline JSON) and writes a JSON report that embeds a
//! [`RunManifest`]. Exit codes: 0 when every check passes, 1 on a
//! mathematical failure (the report carries the witness), 2 on usage or I/O
//! errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::criteria::{
    check_lemma3, check_lemma_bounds, check_s_criterion, ms_matrix, necessary_condition, pd_check,
    verify_proof_bounds, CriterionReport, MsVariant, ProofVariant,
};
use crate::document::SequenceDocument;
use crate::error::{Error, Result};
use crate::families::{minimal_k, FamilySpec, KSearch};
use crate::linearization::{linearize_row, scan_nonnegativity, LinearizationTable, ScanVerdict};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::sequence::{CoefficientSequence, Family, Variant};
use crate::spectrum::{compactness_profile, dual_membership_zero, haar_profile, jacobi_eigenvalues, quadratic_transform};
use crate::verify::{run_all, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "rwps", version, about = "Exact verification of nonnegative linearization for random walk polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the sequence document of a named family.
    Family(FamilyArgs),
    /// Sufficient criterion, its consequences and the alternation pattern.
    Check(CheckArgs),
    /// Linearization coefficients: single entries, tables and sign scans.
    Linearize(LinearizeArgs),
    /// Positive-definiteness certificates for the tridiagonal matrices.
    Pd(PdArgs),
    /// Eigenvalues of truncated Jacobi matrices.
    Spectrum(SpectrumArgs),
    /// Compactness, quadratic transform, dual membership of 0 and Haar profile.
    Diagnostics(DiagnosticsArgs),
    /// Run the full verification suite.
    VerifyPaper(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyTag {
    Chebyshev,
    Geometric,
    #[value(name = "haar_eps", alias = "haar-eps")]
    HaarEps,
    #[value(alias = "ks_counterexample")]
    Ks,
    Power5,
    Factorial,
    #[value(name = "inverse_power", alias = "inverse-power")]
    InversePower,
    Constant,
    Explicit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    First,
    Second,
}

impl From<VariantArg> for Variant {
    fn from(value: VariantArg) -> Self {
        match value {
            VariantArg::First => Variant::First,
            VariantArg::Second => Variant::Second,
        }
    }
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    pub tag: FamilyTag,
    /// `c_1` of the geometric family, or the value of a constant sequence.
    #[arg(long = "C", alias = "c")]
    pub c: Option<String>,
    /// Integer `K`, or `auto` for the smallest admissible value.
    #[arg(long = "K", alias = "k")]
    pub k: Option<String>,
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long, value_enum, default_value = "first")]
    pub variant: VariantArg,
    #[arg(long, default_value_t = 2)]
    pub base: u64,
    /// Comma-separated `c_1,c_2,...` for `explicit`.
    #[arg(long, value_delimiter = ',')]
    pub values: Vec<String>,
    /// Emit the switched sequence.
    #[arg(long)]
    pub switch: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SeqArg {
    /// Sequence document: a path, `-` for stdin, or inline JSON.
    #[arg(long)]
    pub seq: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: SeqArg,
    #[arg(long = "N", alias = "n", default_value_t = 20)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct LinearizeArgs {
    #[command(flatten)]
    pub input: SeqArg,
    /// Scan every `g(m,n;k)` with `m, n ≤ M` for negative entries.
    #[arg(long, value_name = "M")]
    pub scan: Option<usize>,
    /// A single coefficient `g(m,n;k)`.
    #[arg(long, num_args = 3, value_names = ["m", "n", "k"])]
    pub entry: Option<Vec<usize>>,
    /// Every nonzero coefficient with `m, n ≤ M`, as CSV.
    #[arg(long, value_name = "M")]
    pub table: Option<usize>,
    /// Apply the scan, entry or table to the switched sequence as well.
    #[arg(long)]
    pub both_switch: bool,
    /// Write the table CSV here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MsVariantArg {
    Even,
    Odd,
}

#[derive(Debug, Args)]
pub struct PdArgs {
    #[command(flatten)]
    pub input: SeqArg,
    #[arg(long, value_enum)]
    pub variant: MsVariantArg,
    /// Certify every matrix parameter `1..=N`.
    #[arg(long = "N", alias = "n")]
    pub n: usize,
    /// Also check the auxiliary pivot bounds.
    #[arg(long)]
    pub bounds: bool,
    /// Include every exact pivot `u_n` of each certificate.
    #[arg(long)]
    pub full: bool,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub input: SeqArg,
    #[arg(long = "N", alias = "n")]
    pub n: usize,
    #[arg(long, default_value_t = 20)]
    pub bins: usize,
    /// Write eigenvalues as CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiagnosticsArgs {
    #[command(flatten)]
    pub input: SeqArg,
    #[arg(long = "N", alias = "n", default_value_t = 30)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub json: bool,
    /// Replace a coefficient of the counterexample, `INDEX=VALUE` (negative control).
    #[arg(long = "ks-override", value_name = "INDEX=VALUE")]
    pub ks_override: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Provenance of a report: what ran, on what, with which bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<SequenceDocument>,
    pub bounds: serde_json::Map<String, serde_json::Value>,
    pub outputs: Vec<String>,
    pub tool_version: &'static str,
    /// `exact` or `float`.
    pub mode: &'static str,
}

impl RunManifest {
    fn new(command: &str, seq: Option<&CoefficientSequence>, mode: &'static str) -> Self {
        Self {
            command: command.to_string(),
            sequence: seq.map(SequenceDocument::from_sequence),
            bounds: serde_json::Map::new(),
            outputs: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION"),
            mode,
        }
    }

    fn bound(mut self, name: &str, value: usize) -> Self {
        self.bounds.insert(name.to_string(), value.into());
        self
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    manifest: &'a RunManifest,
    report: &'a T,
}

/// Result of a command: text for stdout and whether every check passed.
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

impl Outcome {
    fn report<T: Serialize>(manifest: &RunManifest, report: &T, passed: bool) -> Result<Self> {
        let mut output = serde_json::to_string_pretty(&Envelope { manifest, report })?;
        output.push('\n');
        Ok(Self { output, passed })
    }
}

pub fn read_sequence(source: &str) -> Result<CoefficientSequence> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else if source == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        text
    } else {
        fs::read_to_string(source)?
    };
    SequenceDocument::from_json(&text)?.to_sequence()
}

fn required(value: &Option<String>, flag: &str, tag: &str) -> Result<Rational> {
    let text = value.as_ref().ok_or_else(|| Error::InvalidArgument(format!("{tag} needs --{flag}")))?;
    parse_rational(text)
}

fn resolve_k(value: &Option<String>, search: KSearch) -> Result<u64> {
    match value.as_deref() {
        None | Some("auto") => minimal_k(&search),
        Some(text) => text.parse().map_err(|_| Error::InvalidArgument(format!("K must be an integer or auto, got {text:?}"))),
    }
}

pub fn family_spec(args: &FamilyArgs) -> Result<FamilySpec> {
    let variant = Variant::from(args.variant);
    Ok(match args.tag {
        FamilyTag::Chebyshev => FamilySpec::Chebyshev,
        FamilyTag::Geometric => {
            let c = required(&args.c, "C", "geometric")?;
            let k = resolve_k(&args.k, KSearch::Geometric { c: c.clone() })?;
            FamilySpec::Geometric { c, k }
        }
        FamilyTag::HaarEps => {
            let eps = required(&args.eps, "eps", "haar_eps")?;
            let k = resolve_k(&args.k, KSearch::HaarEps { eps: eps.clone() })?;
            FamilySpec::HaarEps { eps, k }
        }
        FamilyTag::Ks => FamilySpec::KsCounterexample,
        FamilyTag::Power5 => FamilySpec::Power5 { variant },
        FamilyTag::Factorial => FamilySpec::Factorial { variant },
        FamilyTag::InversePower => FamilySpec::InversePower { base: args.base, variant },
        FamilyTag::Constant => FamilySpec::Constant { c: required(&args.c, "C", "constant")? },
        FamilyTag::Explicit => {
            if args.values.is_empty() {
                return Err(Error::InvalidArgument("explicit needs --values".into()));
            }
            FamilySpec::Explicit { values: args.values.iter().map(|v| parse_rational(v)).collect::<Result<_>>()? }
        }
    })
}

fn cmd_family(args: &FamilyArgs) -> Result<Outcome> {
    let seq = family_spec(args)?.build()?;
    let seq = if args.switch { seq.switch() } else { seq };
    let mut output = SequenceDocument::from_sequence(&seq).to_json();
    output.push('\n');
    Ok(Outcome { output, passed: true })
}

#[derive(Serialize)]
struct CheckReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    criterion: Option<CriterionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    consequences: Option<CriterionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pivot_lemma: Option<CriterionReport>,
    necessary_condition: crate::criteria::NecessaryVerdict,
    passed: bool,
}

fn cmd_check(args: &CheckArgs) -> Result<Outcome> {
    let seq = read_sequence(&args.input.seq)?;
    let n = args.n;
    let manifest = RunManifest::new("check", Some(&seq), "exact").bound("N", n);
    let (mut criterion, mut consequences, mut pivot_lemma) = (None, None, None);
    if let (Family::FromS { s, .. }, false) = (seq.family(), seq.is_switched()) {
        let report = check_s_criterion(s, n.max(3))?;
        if report.overall {
            consequences = Some(check_lemma_bounds(s, n.max(4))?);
            pivot_lemma = Some(check_lemma3(&CoefficientSequence::from_s(s.clone(), Variant::First), n.max(2))?);
        }
        criterion = Some(report);
    }
    let necessary = necessary_condition(&seq, n.max(2))?;
    let passed = [&criterion, &consequences, &pivot_lemma].iter().all(|r| r.as_ref().is_none_or(|r| r.overall))
        && !necessary.is_violated();
    let report = CheckReport { criterion, consequences, pivot_lemma, necessary_condition: necessary, passed };
    Outcome::report(&manifest, &report, passed)
}

fn write_target(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_linearize(args: &LinearizeArgs) -> Result<Outcome> {
    let seq = read_sequence(&args.input.seq)?;
    let mut targets = vec![("sequence", seq.clone())];
    if args.both_switch {
        targets.push(("switch", seq.switch()));
    }
    let modes = [args.scan.is_some(), args.entry.is_some(), args.table.is_some()];
    if modes.iter().filter(|m| **m).count() != 1 {
        return Err(Error::InvalidArgument("choose exactly one of --scan, --entry, --table".into()));
    }
    if let Some(entry) = &args.entry {
        let (m, n, k) = (entry[0], entry[1], entry[2]);
        let mut output = String::new();
        let mut passed = true;
        for (label, target) in &targets {
            let value = linearize_row(target, m, n)?.get(k);
            passed &= value >= Rational::from_integer(0.into());
            if targets.len() > 1 {
                output.push_str(&format!("{label}: "));
            }
            output.push_str(&format_rational(&value));
            output.push('\n');
        }
        return Ok(Outcome { output, passed });
    }
    if let Some(max) = args.table {
        let mut csv_text = Vec::new();
        for (label, target) in &targets {
            if targets.len() > 1 {
                writeln!(csv_text, "# {label}")?;
            }
            LinearizationTable::build(target, max)?.write_csv(&mut csv_text)?;
        }
        let text = String::from_utf8(csv_text).expect("csv is utf-8");
        return match &args.csv {
            Some(_) => {
                write_target(&args.csv, &text)?;
                let mut manifest = RunManifest::new("linearize --table", Some(&seq), "exact").bound("M", max);
                manifest.outputs.push(args.csv.as_ref().unwrap().display().to_string());
                Outcome::report(&manifest, &json!({"written": true}), true)
            }
            None => Ok(Outcome { output: text, passed: true }),
        };
    }
    let max = args.scan.expect("scan mode");
    let manifest = RunManifest::new("linearize --scan", Some(&seq), "exact").bound("M", max);
    let mut verdicts = serde_json::Map::new();
    let mut passed = true;
    for (label, target) in &targets {
        let verdict: ScanVerdict = scan_nonnegativity(target, max)?;
        passed &= verdict.is_nonnegative();
        verdicts.insert(label.to_string(), serde_json::to_value(verdict)?);
    }
    Outcome::report(&manifest, &verdicts, passed)
}

#[derive(Serialize)]
struct PdEntry {
    n: usize,
    size: usize,
    certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<crate::criteria::PdCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<crate::criteria::PdFailure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<CriterionReport>,
}

fn cmd_pd(args: &PdArgs) -> Result<Outcome> {
    if args.n == 0 {
        return Err(Error::InvalidArgument("--N must be >= 1".into()));
    }
    let seq = read_sequence(&args.input.seq)?;
    let variant = match args.variant {
        MsVariantArg::Even => MsVariant::Even,
        MsVariantArg::Odd => MsVariant::Odd,
    };
    let mut manifest = RunManifest::new("pd", Some(&seq), "exact").bound("N", args.n);
    if let Some(path) = &args.input.out {
        manifest.outputs.push(path.display().to_string());
    }
    let mut entries = Vec::with_capacity(args.n);
    let mut passed = true;
    for n in 1..=args.n {
        let spec = ms_matrix(&seq, variant, n)?;
        let (certificate, failure) = match pd_check(&spec) {
            Ok(cert) => (args.full.then_some(cert), None),
            Err(fail) => (None, Some(fail)),
        };
        // Odd matrices carry the bounds for the sequence itself, even ones the
        // bounds for a sequence whose switch is `seq`.
        let bounds = if args.bounds {
            Some(match variant {
                MsVariant::Odd => verify_proof_bounds(&seq, ProofVariant::P, n)?,
                MsVariant::Even => verify_proof_bounds(&seq.switch(), ProofVariant::PTilde, n)?,
            })
        } else {
            None
        };
        let certified = failure.is_none();
        passed &= certified && bounds.as_ref().is_none_or(|b| b.overall);
        entries.push(PdEntry { n, size: spec.size, certified, certificate, failure, bounds });
    }
    let report = json!({
        "variant": variant,
        "certified": entries.iter().filter(|e| e.certified).count(),
        "matrices": entries,
    });
    Outcome::report(&manifest, &report, passed)
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<Outcome> {
    let seq = read_sequence(&args.input.seq)?;
    let report = jacobi_eigenvalues(&seq, args.n)?;
    let mut manifest = RunManifest::new("spectrum", Some(&seq), "float").bound("N", args.n);
    if let Some(path) = &args.csv {
        report.write_csv(fs::File::create(path)?)?;
        manifest.outputs.push(path.display().to_string());
    }
    let histogram = report.histogram(args.bins);
    let summary = json!({
        "size": report.size,
        "symmetry_defect": report.symmetry_defect,
        "range_defect": report.range_defect,
        "top_gap": report.top_gap,
        "histogram": histogram,
    });
    Outcome::report(&manifest, &summary, true)
}

fn cmd_diagnostics(args: &DiagnosticsArgs) -> Result<Outcome> {
    let seq = read_sequence(&args.input.seq)?;
    let n = args.n.max(2);
    let manifest = RunManifest::new("diagnostics", Some(&seq), "exact").bound("N", n);
    let transform = (1..=n).map(|k| quadratic_transform(&seq, k)).collect::<Result<Vec<_>>>()?;
    let report = json!({
        "compactness": compactness_profile(&seq, n)?,
        "quadratic_transform": transform,
        "dual_membership_zero": dual_membership_zero(&seq, n)?,
        "haar_profile": haar_profile(&seq, n)?,
    });
    Outcome::report(&manifest, &report, true)
}

pub fn parse_override(text: &str) -> Result<(usize, Rational)> {
    let (index, value) =
        text.split_once('=').ok_or_else(|| Error::InvalidArgument(format!("override {text:?} is not INDEX=VALUE")))?;
    let index = index.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad override index in {text:?}")))?;
    Ok((index, parse_rational(value.trim())?))
}

fn cmd_verify(args: &VerifyArgs) -> Result<Outcome> {
    let options = VerifyOptions { ks_overrides: args.ks_override.iter().map(|o| parse_override(o)).collect::<Result<_>>()? };
    let report = run_all(&options)?;
    if args.json {
        let mut manifest = RunManifest::new("verify-paper", None, "exact");
        if !options.ks_overrides.is_empty() {
            manifest.bounds.insert("ks_overrides".into(), args.ks_override.clone().into());
        }
        return Outcome::report(&manifest, &report, report.passed);
    }
    let mut output = String::new();
    for item in &report.items {
        output.push_str(&item.line());
        output.push('\n');
        for (key, value) in &item.values {
            output.push_str(&format!("        {key}: {value}\n"));
        }
    }
    let passed_count = report.items.iter().filter(|i| i.passed).count();
    output.push_str(&format!("{passed_count}/{} items passed\n", report.items.len()));
    Ok(Outcome { output, passed: report.passed })
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Family(args) => cmd_family(args),
        Command::Check(args) => cmd_check(args),
        Command::Linearize(args) => cmd_linearize(args),
        Command::Pd(args) => cmd_pd(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Diagnostics(args) => cmd_diagnostics(args),
        Command::VerifyPaper(args) => cmd_verify(args),
    }
}

fn out_path(cli: &Cli) -> Option<&PathBuf> {
    match &cli.command {
        Command::Family(args) => args.out.as_ref(),
        Command::VerifyPaper(args) => args.out.as_ref(),
        Command::Check(CheckArgs { input, .. })
        | Command::Linearize(LinearizeArgs { input, .. })
        | Command::Pd(PdArgs { input, .. })
        | Command::Spectrum(SpectrumArgs { input, .. })
        | Command::Diagnostics(DiagnosticsArgs { input, .. }) => input.out.as_ref(),
    }
}

/// Parse `args`, run, write the output and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = execute(&cli).and_then(|outcome| {
        write_target(&out_path(&cli).cloned(), &outcome.output)?;
        Ok(outcome.passed)
    });
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}
