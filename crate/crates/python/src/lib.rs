//! Python bindings: `import litgame`.
//!
//! Parameters cross the boundary as plain floats; out-of-range values raise
//! `ValueError`. Domain failures raise subclasses of `litgame.LitgameError`.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use ::litgame as core;
use core::inference::{LikelihoodRatio, Probability};
use core::monte_carlo::{ConfusionCounts, SimResult};

create_exception!(litgame, LitgameError, PyException, "Base class for litgame domain errors.");
create_exception!(litgame, UndefinedPosteriorError, LitgameError, "Conditioning on an impossible verdict.");
create_exception!(litgame, UnreachableTargetError, LitgameError, "No prior reaches the requested ppv.");
create_exception!(litgame, NoPositivesError, LitgameError, "A simulation drew no positive verdicts.");
create_exception!(litgame, GridTooLargeError, LitgameError, "Sweep lattice exceeds the cell cap.");
create_exception!(litgame, AmbiguousScenarioError, LitgameError, "Scenario mixes tags and numbers.");

fn to_py(e: core::Error) -> PyErr {
    let msg = e.to_string();
    match e {
        core::Error::UndefinedPosterior { .. } => UndefinedPosteriorError::new_err(msg),
        core::Error::UnreachableTarget { .. } => UnreachableTargetError::new_err(msg),
        core::Error::NoPositives => NoPositivesError::new_err(msg),
        core::Error::GridTooLarge { .. } => GridTooLargeError::new_err(msg),
        core::Error::AmbiguousScenario(_) => AmbiguousScenarioError::new_err(msg),
        _ => PyValueError::new_err(msg),
    }
}

fn params(prior: f64, sensitivity: f64, specificity: f64) -> PyResult<(core::PriorBelief, core::TestCharacteristics)> {
    Ok((
        core::PriorBelief::new(prior).map_err(to_py)?,
        core::TestCharacteristics::new(sensitivity, specificity).map_err(to_py)?,
    ))
}

fn opt(p: Option<Probability>) -> Option<f64> {
    p.map(Probability::value)
}

/// `float('inf')` for an infinite ratio, `None` for 0/0.
fn lr(l: LikelihoodRatio) -> Option<f64> {
    l.as_f64()
}

fn show(v: Option<f64>) -> String {
    v.map_or_else(|| "None".to_string(), |x| x.to_string())
}

#[pyclass(name = "PosteriorReport", frozen, get_all, skip_from_py_object, module = "litgame")]
#[derive(Clone)]
pub struct PyPosteriorReport {
    prior: f64,
    sensitivity: f64,
    specificity: f64,
    p_positive: f64,
    ppv: Option<f64>,
    p_innocent_given_positive: Option<f64>,
    npv: Option<f64>,
    p_guilty_given_negative: Option<f64>,
    lr_positive: Option<f64>,
    lr_negative: Option<f64>,
    json: String,
}

impl From<&core::PosteriorReport> for PyPosteriorReport {
    fn from(r: &core::PosteriorReport) -> Self {
        PyPosteriorReport {
            prior: r.prior.p_guilty.value(),
            sensitivity: r.chars.sensitivity.value(),
            specificity: r.chars.specificity.value(),
            p_positive: r.p_positive.value(),
            ppv: opt(r.ppv),
            p_innocent_given_positive: opt(r.p_innocent_given_positive),
            npv: opt(r.npv),
            p_guilty_given_negative: opt(r.p_guilty_given_negative),
            lr_positive: lr(r.lr_positive),
            lr_negative: lr(r.lr_negative),
            json: serde_json::to_string(r).expect("report serializes"),
        }
    }
}

#[pymethods]
impl PyPosteriorReport {
    fn __repr__(&self) -> String {
        format!(
            "PosteriorReport(prior={}, sensitivity={}, specificity={}, ppv={}, npv={})",
            self.prior,
            self.sensitivity,
            self.specificity,
            show(self.ppv),
            show(self.npv)
        )
    }
}

#[pyclass(name = "SimResult", frozen, get_all, skip_from_py_object, module = "litgame")]
#[derive(Clone)]
pub struct PySimResult {
    true_positive: u64,
    false_positive: u64,
    true_negative: u64,
    false_negative: u64,
    ppv_hat: Option<f64>,
    npv_hat: Option<f64>,
    standard_error_ppv: Option<f64>,
    ci95_ppv: Option<(f64, f64)>,
}

impl PySimResult {
    fn counts(&self) -> ConfusionCounts {
        ConfusionCounts {
            true_positive: self.true_positive,
            false_positive: self.false_positive,
            true_negative: self.true_negative,
            false_negative: self.false_negative,
        }
    }
}

impl From<&SimResult> for PySimResult {
    fn from(r: &SimResult) -> Self {
        PySimResult {
            true_positive: r.counts.true_positive,
            false_positive: r.counts.false_positive,
            true_negative: r.counts.true_negative,
            false_negative: r.counts.false_negative,
            ppv_hat: opt(r.ppv_hat),
            npv_hat: opt(r.npv_hat),
            standard_error_ppv: r.standard_error_ppv,
            ci95_ppv: r.ci95_ppv.map(|ci| (ci.lo, ci.hi)),
        }
    }
}

#[pymethods]
impl PySimResult {
    fn __repr__(&self) -> String {
        format!(
            "SimResult(tp={}, fp={}, tn={}, fn={}, ppv_hat={})",
            self.true_positive,
            self.false_positive,
            self.true_negative,
            self.false_negative,
            show(self.ppv_hat)
        )
    }
}

#[pyfunction]
fn p_positive(prior: f64, sensitivity: f64, specificity: f64) -> PyResult<f64> {
    let (p, c) = params(prior, sensitivity, specificity)?;
    Ok(core::p_positive(p, c).value())
}

#[pyfunction]
fn ppv(prior: f64, sensitivity: f64, specificity: f64) -> PyResult<f64> {
    let (p, c) = params(prior, sensitivity, specificity)?;
    core::posterior_guilty_given_positive(p, c).map(Probability::value).map_err(to_py)
}

#[pyfunction]
fn npv(prior: f64, sensitivity: f64, specificity: f64) -> PyResult<f64> {
    let (p, c) = params(prior, sensitivity, specificity)?;
    core::posterior_innocent_given_negative(p, c).map(Probability::value).map_err(to_py)
}

#[pyfunction]
fn ppv_via_odds(prior: f64, sensitivity: f64, specificity: f64) -> PyResult<f64> {
    let (p, c) = params(prior, sensitivity, specificity)?;
    core::posterior_via_odds(p, c).map(Probability::value).map_err(to_py)
}

#[pyfunction]
fn likelihood_ratios(sensitivity: f64, specificity: f64) -> PyResult<(Option<f64>, Option<f64>)> {
    let c = core::TestCharacteristics::new(sensitivity, specificity).map_err(to_py)?;
    let (pos, neg) = core::likelihood_ratios(c);
    Ok((lr(pos), lr(neg)))
}

#[pyfunction]
fn required_prior(sensitivity: f64, specificity: f64, target_ppv: f64) -> PyResult<f64> {
    let c = core::TestCharacteristics::new(sensitivity, specificity).map_err(to_py)?;
    let t = Probability::named("target", target_ppv).map_err(to_py)?;
    core::required_prior(c, t).map(Probability::value).map_err(to_py)
}

#[pyfunction]
fn full_report(prior: f64, sensitivity: f64, specificity: f64) -> PyResult<PyPosteriorReport> {
    let (p, c) = params(prior, sensitivity, specificity)?;
    Ok((&core::full_report(p, c)).into())
}

/// `[(name, PosteriorReport)]` for the four catalog cells, in catalog order.
#[pyfunction]
fn scenarios() -> Vec<(String, PyPosteriorReport)> {
    core::catalog()
        .into_iter()
        .map(|s| {
            let r = core::evaluate(&s);
            (s.name, (&r).into())
        })
        .collect()
}

/// Parses a scenario document and evaluates it.
#[pyfunction]
fn evaluate_scenario(document: &str) -> PyResult<(String, PyPosteriorReport)> {
    let s = core::parse_scenario(document).map_err(to_py)?;
    let r = core::evaluate(&s);
    Ok((s.name, (&r).into()))
}

#[pyfunction]
#[pyo3(signature = (prior, sensitivity, specificity, n_trials, seed, chunk_size = core::monte_carlo::DEFAULT_CHUNK_SIZE))]
fn simulate(
    py: Python<'_>,
    prior: f64,
    sensitivity: f64,
    specificity: f64,
    n_trials: u64,
    seed: u64,
    chunk_size: u64,
) -> PyResult<PySimResult> {
    let (p, c) = params(prior, sensitivity, specificity)?;
    let cfg = core::SimConfig::with_chunk_size(n_trials, seed, chunk_size).map_err(to_py)?;
    let result = py.detach(|| core::simulate(p, c, cfg));
    Ok((&result).into())
}

/// `(agrees, difference, margin)` for a simulation against the analytic ppv.
#[pyfunction]
#[pyo3(signature = (result, prior, sensitivity, specificity, z = core::monte_carlo::DEFAULT_Z))]
fn agreement_check(
    result: &PySimResult,
    prior: f64,
    sensitivity: f64,
    specificity: f64,
    z: f64,
) -> PyResult<(bool, f64, f64)> {
    let (p, c) = params(prior, sensitivity, specificity)?;
    let sim = core::monte_carlo::summarize(result.counts());
    let d = core::agreement_check(&sim, &core::full_report(p, c), z).map_err(to_py)?;
    Ok((d.agrees, d.difference, d.margin))
}

/// Sweep rows as `(prior, sensitivity, specificity, p_positive, ppv, npv)` tuples.
/// Axes are `"lo:hi:step"` or a single number.
#[pyfunction]
#[pyo3(signature = (prior, sensitivity, specificity, max_cells = core::sweep::DEFAULT_MAX_CELLS))]
#[allow(clippy::type_complexity)]
fn sweep(
    py: Python<'_>,
    prior: &str,
    sensitivity: &str,
    specificity: &str,
    max_cells: u64,
) -> PyResult<Vec<(f64, f64, f64, f64, Option<f64>, Option<f64>)>> {
    let mut grid = core::GridSpec::new(
        prior.parse().map_err(to_py)?,
        sensitivity.parse().map_err(to_py)?,
        specificity.parse().map_err(to_py)?,
    );
    grid.max_cells = max_cells;
    let rows = py.detach(|| core::run_sweep(&grid)).map_err(to_py)?;
    Ok(rows
        .iter()
        .map(|r| {
            (
                r.prior.value(),
                r.sensitivity.value(),
                r.specificity.value(),
                r.p_positive.value(),
                opt(r.ppv),
                opt(r.npv),
            )
        })
        .collect())
}

#[pymodule]
fn litgame(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("LitgameError", py.get_type::<LitgameError>())?;
    m.add("UndefinedPosteriorError", py.get_type::<UndefinedPosteriorError>())?;
    m.add("UnreachableTargetError", py.get_type::<UnreachableTargetError>())?;
    m.add("NoPositivesError", py.get_type::<NoPositivesError>())?;
    m.add("GridTooLargeError", py.get_type::<GridTooLargeError>())?;
    m.add("AmbiguousScenarioError", py.get_type::<AmbiguousScenarioError>())?;
    m.add_class::<PyPosteriorReport>()?;
    m.add_class::<PySimResult>()?;
    m.add_function(wrap_pyfunction!(p_positive, m)?)?;
    m.add_function(wrap_pyfunction!(ppv, m)?)?;
    m.add_function(wrap_pyfunction!(npv, m)?)?;
    m.add_function(wrap_pyfunction!(ppv_via_odds, m)?)?;
    m.add_function(wrap_pyfunction!(likelihood_ratios, m)?)?;
    m.add_function(wrap_pyfunction!(required_prior, m)?)?;
    m.add_function(wrap_pyfunction!(full_report, m)?)?;
    m.add_function(wrap_pyfunction!(scenarios, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(agreement_check, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
