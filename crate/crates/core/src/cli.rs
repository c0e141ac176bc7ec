//! The `litgame` command line.
//!
//! Exit codes: 0 success, 1 domain error (undefined posterior, unreachable
//! target, failed agreement, oversized grid, I/O), 2 usage or parse error,
//! 3 internal invariant violation.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::inference::{full_report, required_prior, LikelihoodRatio, PosteriorReport, PriorBelief, Probability, TestCharacteristics};
use crate::monte_carlo::{self, agreement_check, simulate, AgreementDiagnostic, SimConfig, SimResult};
use crate::scenario::{self, catalog, evaluate, parse_scenario, Scenario};
use crate::sweep::{self, run_sweep, Axis, GridSpec, SweepRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    DomainError = 1,
    UsageError = 2,
    InternalError = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "litgame", version, about = "Bayesian reliability of two-outcome adjudication")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact posterior report for one (prior, sensitivity, specificity) triple.
    Posterior(PosteriorArgs),
    /// Evaluate the four catalog scenarios.
    Scenarios(ScenariosArgs),
    /// Monte Carlo check of the analytic ppv.
    Simulate(SimulateArgs),
    /// Evaluate a (prior, sensitivity, specificity) lattice.
    Sweep(SweepArgs),
    /// Prior required to reach a target ppv.
    Invert(InvertArgs),
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Prior probability of guilt.
    #[arg(long)]
    pub prior: Option<f64>,
    /// Pr(+ | guilty).
    #[arg(long)]
    pub sensitivity: Option<f64>,
    /// Pr(− | innocent).
    #[arg(long)]
    pub specificity: Option<f64>,
    /// Scenario document; explicit flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PosteriorArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum, default_value = "table")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct ScenariosArgs {
    /// Only this scenario, e.g. `random/risk-loving`.
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Catalog scenario to simulate; explicit flags override its values.
    #[arg(long)]
    pub scenario: Option<String>,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Agreement threshold in standard errors.
    #[arg(long, default_value_t = monte_carlo::DEFAULT_Z)]
    pub z: f64,
    #[arg(long, default_value_t = monte_carlo::DEFAULT_CHUNK_SIZE, value_parser = clap::value_parser!(u64).range(1..))]
    pub chunk_size: u64,
    #[arg(long, value_enum, default_value = "table")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// `lo:hi:step` or a single value.
    #[arg(long)]
    pub prior: String,
    #[arg(long)]
    pub sensitivity: String,
    #[arg(long)]
    pub specificity: String,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = sweep::DEFAULT_MAX_CELLS)]
    pub max_cells: u64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct InvertArgs {
    #[arg(long)]
    pub sensitivity: f64,
    #[arg(long)]
    pub specificity: f64,
    /// Target ppv, strictly between 0 and 1.
    #[arg(long)]
    pub target: f64,
    #[arg(long, value_enum, default_value = "table")]
    pub format: OutputFormat,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Internal(String),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Usage(_) => ExitStatus::UsageError,
            CliError::Domain(_) => ExitStatus::DomainError,
            CliError::Internal(_) => ExitStatus::InternalError,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::UndefinedPosterior { .. }
            | Error::UnreachableTarget { .. }
            | Error::NoPositives
            | Error::GridTooLarge { .. } => CliError::Domain(msg),
            Error::InvalidProbability { .. }
            | Error::InvalidGrid(_)
            | Error::InvalidConfig(_)
            | Error::Parse(_)
            | Error::Validation(_)
            | Error::AmbiguousScenario(_)
            | Error::UnknownScenario(_) => CliError::Usage(msg),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name), runs the command and returns its exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return if e.exit_code() == 0 {
                ExitStatus::Success
            } else {
                ExitStatus::UsageError
            };
        }
    };
    let result = match cli.command {
        Command::Posterior(a) => cmd_posterior(&a),
        Command::Scenarios(a) => cmd_scenarios(&a),
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Sweep(a) => cmd_sweep(&a, err),
        Command::Invert(a) => cmd_invert(&a),
    };
    match result {
        Ok(Output { text, status }) => {
            if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                let _ = writeln!(err, "error: {e}");
                return ExitStatus::DomainError;
            }
            status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.status()
        }
    }
}

struct Output {
    text: String,
    status: ExitStatus,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            status: ExitStatus::Success,
        }
    }
}

fn resolve_params(base: Option<Scenario>, params: &ParamArgs) -> CliResult<(PriorBelief, TestCharacteristics)> {
    let base = match (&params.config, base) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage("--config and --scenario are mutually exclusive".into()));
        }
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            Some(parse_scenario(&text)?)
        }
        (None, base) => base,
    };
    let (chars, prior) = match base.map(|s| s.resolve()) {
        Some((c, p)) => (Some(c), Some(p)),
        None => (None, None),
    };
    let pick = |flag: Option<f64>, from_base: Option<f64>, name: &str| {
        flag.or(from_base)
            .ok_or_else(|| CliError::Usage(format!("missing --{name} (or a --config/--scenario providing it)")))
    };
    let p = pick(params.prior, prior.map(|p| p.p_guilty.value()), "prior")?;
    let s = pick(params.sensitivity, chars.map(|c| c.sensitivity.value()), "sensitivity")?;
    let c = pick(params.specificity, chars.map(|c| c.specificity.value()), "specificity")?;
    Ok((PriorBelief::new(p)?, TestCharacteristics::new(s, c)?))
}

fn check_report(report: &PosteriorReport) -> CliResult<()> {
    report.check_invariants().map_err(CliError::Internal)
}

fn fmt6(p: Option<f64>) -> String {
    match p {
        Some(v) if v.is_infinite() => "inf".to_string(),
        Some(v) => format!("{v:.6}"),
        None => "-".to_string(),
    }
}

fn fmt_lr(lr: LikelihoodRatio) -> String {
    match lr {
        LikelihoodRatio::Finite(v) => format!("{v:.6}"),
        other => other.to_string(),
    }
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Internal(e.to_string()))
}

fn report_fields(r: &PosteriorReport) -> Vec<(&'static str, String)> {
    let v = |p: Option<Probability>| fmt6(p.map(Probability::value));
    vec![
        ("prior", v(Some(r.prior.p_guilty))),
        ("sensitivity", v(Some(r.chars.sensitivity))),
        ("specificity", v(Some(r.chars.specificity))),
        ("p_positive", v(Some(r.p_positive))),
        ("ppv", v(r.ppv)),
        ("p_innocent_given_positive", v(r.p_innocent_given_positive)),
        ("npv", v(r.npv)),
        ("p_guilty_given_negative", v(r.p_guilty_given_negative)),
        ("lr_positive", fmt_lr(r.lr_positive)),
        ("lr_negative", fmt_lr(r.lr_negative)),
    ]
}

fn csv_opt(p: Option<Probability>) -> String {
    p.map(|p| p.to_string()).unwrap_or_default()
}

/// Renders a posterior report in `format`.
pub fn render_report(report: &PosteriorReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let mut s = format!("{:<27}{}\n", "field", "value");
            for (k, v) in report_fields(report) {
                let _ = writeln!(s, "{k:<27}{v}");
            }
            s
        }
        OutputFormat::Json => to_json(report).expect("report serializes"),
        OutputFormat::Csv => {
            let lr = |l: LikelihoodRatio| match l {
                LikelihoodRatio::Finite(v) => v.to_string(),
                LikelihoodRatio::Infinite => "inf".into(),
                LikelihoodRatio::Indeterminate => String::new(),
            };
            format!(
                "prior,sensitivity,specificity,p_positive,ppv,p_innocent_given_positive,npv,p_guilty_given_negative,lr_positive,lr_negative\n{},{},{},{},{},{},{},{},{},{}\n",
                report.prior.p_guilty,
                report.chars.sensitivity,
                report.chars.specificity,
                report.p_positive,
                csv_opt(report.ppv),
                csv_opt(report.p_innocent_given_positive),
                csv_opt(report.npv),
                csv_opt(report.p_guilty_given_negative),
                lr(report.lr_positive),
                lr(report.lr_negative),
            )
        }
    }
}

fn cmd_posterior(args: &PosteriorArgs) -> CliResult<Output> {
    let (prior, chars) = resolve_params(None, &args.params)?;
    let report = full_report(prior, chars);
    check_report(&report)?;
    if report.ppv.is_none() {
        return Err(Error::UndefinedPosterior {
            quantity: "Pr(guilty | +)",
            event: "a positive",
        }
        .into());
    }
    Ok(Output::ok(render_report(&report, args.format)))
}

#[derive(Serialize)]
struct ScenarioRow<'a> {
    name: &'a str,
    #[serde(flatten)]
    report: &'a PosteriorReport,
}

/// Renders catalog evaluations as a fixed-width table, a JSON array or CSV.
pub fn render_scenarios(rows: &[(Scenario, PosteriorReport)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let mut s = format!(
                "{:<24}{:>10}{:>13}{:>13}{:>12}{:>10}\n",
                "scenario", "prior", "sensitivity", "specificity", "p_positive", "ppv"
            );
            for (sc, r) in rows {
                let _ = writeln!(
                    s,
                    "{:<24}{:>10}{:>13}{:>13}{:>12}{:>10}",
                    sc.name,
                    fmt6(Some(r.prior.p_guilty.value())),
                    fmt6(Some(r.chars.sensitivity.value())),
                    fmt6(Some(r.chars.specificity.value())),
                    fmt6(Some(r.p_positive.value())),
                    fmt6(r.ppv.map(Probability::value)),
                );
            }
            s
        }
        OutputFormat::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(sc, report)| ScenarioRow { name: &sc.name, report })
                .collect();
            to_json(&rows).expect("rows serialize")
        }
        OutputFormat::Csv => {
            let mut s = String::from("scenario,prior,sensitivity,specificity,p_positive,ppv\n");
            for (sc, r) in rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    sc.name,
                    r.prior.p_guilty,
                    r.chars.sensitivity,
                    r.chars.specificity,
                    r.p_positive,
                    csv_opt(r.ppv)
                );
            }
            s
        }
    }
}

fn cmd_scenarios(args: &ScenariosArgs) -> CliResult<Output> {
    let scenarios = match &args.name {
        Some(name) => vec![scenario::find(name)?],
        None => catalog(),
    };
    let rows = scenarios
        .into_iter()
        .map(|s| {
            let r = evaluate(&s);
            check_report(&r).map(|_| (s, r))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Output::ok(render_scenarios(&rows, args.format)))
}

#[derive(Serialize)]
struct SimulationOutput<'a> {
    scenario: Option<&'a str>,
    prior: PriorBelief,
    chars: TestCharacteristics,
    n_trials: u64,
    seed: u64,
    result: &'a SimResult,
    agreement: &'a AgreementDiagnostic,
}

fn cmd_simulate(args: &SimulateArgs) -> CliResult<Output> {
    if !(args.z > 0.0 && args.z.is_finite()) {
        return Err(CliError::Usage(format!("--z {} must be a positive number", args.z)));
    }
    let base = args.scenario.as_deref().map(scenario::find).transpose()?;
    let (prior, chars) = resolve_params(base, &args.params)?;
    let config = SimConfig::with_chunk_size(args.trials, args.seed, args.chunk_size)?;
    let result = simulate(prior, chars, config);
    if result.counts.total() != args.trials {
        return Err(CliError::Internal(format!(
            "confusion counts sum to {} for {} trials",
            result.counts.total(),
            args.trials
        )));
    }
    let analytic = full_report(prior, chars);
    check_report(&analytic)?;
    let diag = agreement_check(&result, &analytic, args.z)?;

    let text = match args.format {
        OutputFormat::Json => to_json(&SimulationOutput {
            scenario: args.scenario.as_deref(),
            prior,
            chars,
            n_trials: args.trials,
            seed: args.seed,
            result: &result,
            agreement: &diag,
        })?,
        OutputFormat::Table => {
            let c = result.counts;
            let ci = result.ci95_ppv.expect("defined when agreement_check succeeds");
            let mut s = String::new();
            let _ = writeln!(s, "{:<16}{}", "trials", args.trials);
            let _ = writeln!(s, "{:<16}{}", "seed", args.seed);
            let _ = writeln!(s, "{:<16}{}", "true_positive", c.true_positive);
            let _ = writeln!(s, "{:<16}{}", "false_positive", c.false_positive);
            let _ = writeln!(s, "{:<16}{}", "true_negative", c.true_negative);
            let _ = writeln!(s, "{:<16}{}", "false_negative", c.false_negative);
            let _ = writeln!(s, "{:<16}{}", "ppv_hat", fmt6(Some(diag.ppv_hat)));
            let _ = writeln!(s, "{:<16}{}", "npv_hat", fmt6(result.npv_hat.map(Probability::value)));
            let _ = writeln!(s, "{:<16}{}", "std_error", fmt6(Some(diag.standard_error)));
            let _ = writeln!(s, "{:<16}[{}, {}]", "ci95_ppv", fmt6(Some(ci.lo)), fmt6(Some(ci.hi)));
            let _ = writeln!(s, "{:<16}{}", "analytic_ppv", fmt6(Some(diag.analytic_ppv)));
            let _ = writeln!(s, "{:<16}{} (z = {})", "margin", fmt6(Some(diag.margin)), diag.z);
            let _ = writeln!(s, "{:<16}{}", "agreement", if diag.agrees { "PASS" } else { "FAIL" });
            s
        }
        OutputFormat::Csv => {
            let c = result.counts;
            let ci = result.ci95_ppv.expect("defined when agreement_check succeeds");
            format!(
                "trials,seed,true_positive,false_positive,true_negative,false_negative,ppv_hat,std_error,ci95_lo,ci95_hi,analytic_ppv,z,agreement\n{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                args.trials,
                args.seed,
                c.true_positive,
                c.false_positive,
                c.true_negative,
                c.false_negative,
                diag.ppv_hat,
                diag.standard_error,
                ci.lo,
                ci.hi,
                diag.analytic_ppv,
                diag.z,
                if diag.agrees { "PASS" } else { "FAIL" }
            )
        }
    };
    Ok(Output {
        text,
        status: if diag.agrees {
            ExitStatus::Success
        } else {
            ExitStatus::DomainError
        },
    })
}

/// Renders sweep rows. CSV is the export contract; table and JSON are conveniences.
pub fn render_sweep(rows: &[SweepRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            sweep::write_csv(&mut buf, rows).expect("writing to a Vec cannot fail");
            String::from_utf8(buf).expect("csv is utf-8")
        }
        OutputFormat::Json => to_json(&rows).expect("rows serialize"),
        OutputFormat::Table => {
            let mut s = format!(
                "{:>10}{:>13}{:>13}{:>12}{:>10}{:>10}\n",
                "prior", "sensitivity", "specificity", "p_positive", "ppv", "npv"
            );
            for r in rows {
                let _ = writeln!(
                    s,
                    "{:>10}{:>13}{:>13}{:>12}{:>10}{:>10}",
                    fmt6(Some(r.prior.value())),
                    fmt6(Some(r.sensitivity.value())),
                    fmt6(Some(r.specificity.value())),
                    fmt6(Some(r.p_positive.value())),
                    fmt6(r.ppv.map(Probability::value)),
                    fmt6(r.npv.map(Probability::value)),
                );
            }
            s
        }
    }
}

fn cmd_sweep(args: &SweepArgs, err: &mut dyn Write) -> CliResult<Output> {
    let axis = |s: &str, name: &str| {
        s.parse::<Axis>()
            .map_err(|e| CliError::Usage(format!("--{name}: {e}")))
    };
    let mut grid = GridSpec::new(
        axis(&args.prior, "prior")?,
        axis(&args.sensitivity, "sensitivity")?,
        axis(&args.specificity, "specificity")?,
    );
    grid.max_cells = args.max_cells;
    let rows = run_sweep(&grid)?;
    let text = render_sweep(&rows, args.format);
    match &args.out {
        None => Ok(Output::ok(text)),
        Some(path) => {
            write_file(path, &text).map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display())))?;
            let _ = writeln!(err, "wrote {} rows to {}", rows.len(), path.display());
            Ok(Output::ok(String::new()))
        }
    }
}

fn write_file(path: &PathBuf, text: &str) -> io::Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(text.as_bytes())?;
    f.sync_all()
}

#[derive(Serialize)]
struct InversionOutput {
    chars: TestCharacteristics,
    target_ppv: Probability,
    required_prior: Probability,
}

fn cmd_invert(args: &InvertArgs) -> CliResult<Output> {
    let chars = TestCharacteristics::new(args.sensitivity, args.specificity)?;
    let target = Probability::named("target", args.target)?;
    let prior = required_prior(chars, target)?;
    let text = match args.format {
        OutputFormat::Table => format!("{}\n", fmt6(Some(prior.value()))),
        OutputFormat::Json => to_json(&InversionOutput {
            chars,
            target_ppv: target,
            required_prior: prior,
        })?,
        OutputFormat::Csv => format!(
            "sensitivity,specificity,target_ppv,required_prior\n{},{},{},{}\n",
            chars.sensitivity, chars.specificity, target, prior
        ),
    };
    Ok(Output::ok(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (ExitStatus, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let status = run(std::iter::once("litgame").chain(args.iter().copied()), &mut out, &mut err);
        (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn posterior_table() {
        let (status, out, _) = run_args(&["posterior", "--prior", "0.9", "--sensitivity", "0.9", "--specificity", "0.9"]);
        assert_eq!(status, ExitStatus::Success);
        assert!(out.contains("ppv                        0.987805\n"), "{out}");
        assert!(out.contains("lr_positive                9.000000\n"), "{out}");
    }

    #[test]
    fn posterior_undefined_is_domain_error() {
        let (status, out, err) = run_args(&["posterior", "--prior", "0", "--sensitivity", "0", "--specificity", "1"]);
        assert_eq!(status, ExitStatus::DomainError);
        assert!(out.is_empty());
        assert!(err.contains("undefined"), "{err}");
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn posterior_json_round_trips() {
        let (status, out, _) = run_args(&[
            "posterior", "--prior", "0.3", "--sensitivity", "0.8", "--specificity", "0.7", "--format", "json",
        ]);
        assert_eq!(status, ExitStatus::Success);
        let report: PosteriorReport = serde_json::from_str(&out).unwrap();
        assert!((report.ppv.unwrap().value() - 8.0 / 15.0).abs() < 1e-12);
        assert_eq!(full_report(report.prior, report.chars), report);
    }

    #[test]
    fn posterior_missing_or_invalid_flags() {
        assert_eq!(run_args(&["posterior", "--prior", "0.3"]).0, ExitStatus::UsageError);
        assert_eq!(
            run_args(&["posterior", "--prior", "1.3", "--sensitivity", "0.5", "--specificity", "0.5"]).0,
            ExitStatus::UsageError
        );
        assert_eq!(
            run_args(&["posterior", "--prior", "abc", "--sensitivity", "0.5", "--specificity", "0.5"]).0,
            ExitStatus::UsageError
        );
        assert_eq!(run_args(&["bogus"]).0, ExitStatus::UsageError);
        assert_eq!(run_args(&[]).0, ExitStatus::UsageError);
    }

    #[test]
    fn scenarios_filter_and_unknown() {
        let (status, out, _) = run_args(&["scenarios", "--name", "random/risk-loving"]);
        assert_eq!(status, ExitStatus::Success);
        assert_eq!(out.lines().count(), 2);
        assert!(out.lines().nth(1).unwrap().ends_with("0.600000"));
        assert_eq!(run_args(&["scenarios", "--name", "nonexistent"]).0, ExitStatus::UsageError);
    }

    #[test]
    fn simulate_trivial_counts() {
        let (status, out, _) = run_args(&[
            "simulate", "--prior", "1", "--sensitivity", "1", "--specificity", "1", "--trials", "10", "--seed", "7",
        ]);
        assert_eq!(status, ExitStatus::Success);
        assert!(out.contains("true_positive   10\n"));
        assert!(out.contains("false_positive  0\n"));
        assert!(out.contains("agreement       PASS\n"));
    }

    #[test]
    fn simulate_rejects_zero_trials() {
        assert_eq!(run_args(&["simulate", "--scenario", "random/risk-averse", "--trials", "0"]).0, ExitStatus::UsageError);
        assert_eq!(run_args(&["simulate", "--trials", "0"]).0, ExitStatus::UsageError);
    }

    #[test]
    fn simulate_without_positives_is_domain_error() {
        let (status, _, err) = run_args(&[
            "simulate", "--prior", "0", "--sensitivity", "0.5", "--specificity", "1", "--trials", "100",
        ]);
        assert_eq!(status, ExitStatus::DomainError);
        assert!(err.contains("no positive"), "{err}");
    }

    #[test]
    fn invert_examples() {
        let (status, out, _) = run_args(&["invert", "--sensitivity", "0.5", "--specificity", "0.5", "--target", "0.6"]);
        assert_eq!(status, ExitStatus::Success);
        assert_eq!(out, "0.600000\n");
        let (status, out, _) = run_args(&["invert", "--sensitivity", "0.9", "--specificity", "0.9", "--target", "0.987805"]);
        assert_eq!(status, ExitStatus::Success);
        let p: f64 = out.trim().parse().unwrap();
        assert!((p - 0.9).abs() < 1e-5, "{p}");
        assert_eq!(
            run_args(&["invert", "--sensitivity", "0", "--specificity", "0.9", "--target", "0.5"]).0,
            ExitStatus::DomainError
        );
        assert_eq!(run_args(&["invert", "--sensitivity", "0.9", "--specificity", "0.9"]).0, ExitStatus::UsageError);
    }

    #[test]
    fn sweep_to_stdout() {
        let (status, out, _) = run_args(&["sweep", "--prior", "0.6:0.9:0.3", "--sensitivity", "0.9", "--specificity", "0.9"]);
        assert_eq!(status, ExitStatus::Success);
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines[0], sweep::CSV_HEADER);
        assert_eq!(lines.len(), 3);
        let ppv = |line: &str| line.split(',').nth(4).unwrap().parse::<f64>().unwrap();
        assert_eq!(format!("{:.6}", ppv(lines[1])), "0.931034");
        assert_eq!(format!("{:.6}", ppv(lines[2])), "0.987805");
    }

    #[test]
    fn sweep_errors() {
        assert_eq!(run_args(&["sweep", "--prior", "0:1", "--sensitivity", "0.9", "--specificity", "0.9"]).0, ExitStatus::UsageError);
        assert_eq!(
            run_args(&[
                "sweep", "--prior", "0:1:0.01", "--sensitivity", "0:1:0.01", "--specificity", "0:1:0.01", "--max-cells", "1000"
            ])
            .0,
            ExitStatus::DomainError
        );
    }
}
