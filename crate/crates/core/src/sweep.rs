//! Lattice evaluation over (prior, sensitivity, specificity) and break-even priors.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::inference::{full_report, required_prior, PriorBelief, Probability, TestCharacteristics};

pub const DEFAULT_MAX_CELLS: u64 = 1_000_000;

/// Header of the exported CSV, in column order.
pub const CSV_HEADER: &str = "prior,sensitivity,specificity,p_positive,ppv,npv";

/// A fixed value or an inclusive `lo:hi:step` range inside [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    Fixed(f64),
    Range { lo: f64, hi: f64, step: f64 },
}

impl Axis {
    pub fn fixed(value: f64) -> Result<Self> {
        check_unit("value", value)?;
        Ok(Axis::Fixed(value))
    }

    pub fn range(lo: f64, hi: f64, step: f64) -> Result<Self> {
        check_unit("lo", lo)?;
        check_unit("hi", hi)?;
        if lo > hi {
            return Err(Error::InvalidGrid(format!("lo {lo} exceeds hi {hi}")));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidGrid(format!("step {step} must be positive")));
        }
        Ok(Axis::Range { lo, hi, step })
    }

    /// Number of points [`materialize`](Self::materialize) will produce.
    pub fn len(&self) -> u64 {
        match *self {
            Axis::Fixed(_) => 1,
            Axis::Range { lo, hi, step } => {
                let span = (hi - lo) / step;
                let steps = span.round();
                if (span - steps).abs() <= 1e-9 {
                    return steps as u64 + 1;
                }
                let whole = span.floor();
                let last = (lo + whole * step).min(hi);
                whole as u64 + 1 + u64::from(hi - last > 1e-9)
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `lo, lo + step, …` up to `hi`, with `hi` appended when the last step falls short.
    ///
    /// When the range is a whole number of steps the points are computed as
    /// `lo + (hi − lo)·k/n`, so `0:1:0.1` yields `0.3` rather than `0.30000000000000004`.
    pub fn materialize(&self) -> Vec<f64> {
        match *self {
            Axis::Fixed(v) => vec![v],
            Axis::Range { lo, hi, step } => {
                let span = (hi - lo) / step;
                let steps = span.round();
                if (span - steps).abs() <= 1e-9 {
                    let n = steps as u64;
                    if n == 0 {
                        return vec![lo];
                    }
                    return (0..=n)
                        .map(|k| if k == n { hi } else { lo + (hi - lo) * k as f64 / n as f64 })
                        .collect();
                }
                let whole = span.floor() as u64;
                let mut points: Vec<f64> = (0..=whole).map(|k| (lo + k as f64 * step).min(hi)).collect();
                if hi - points[points.len() - 1] > 1e-9 {
                    points.push(hi);
                }
                points
            }
        }
    }
}

fn check_unit(what: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::InvalidGrid(format!("{what} {v} is outside [0, 1]")))
    }
}

impl FromStr for Axis {
    type Err = Error;

    /// `0.5` or `lo:hi:step`.
    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidGrid(format!("`{t}` is not a number")))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Axis::fixed(num(v)?),
            [lo, hi, step] => Axis::range(num(lo)?, num(hi)?, num(step)?),
            _ => Err(Error::InvalidGrid(format!("`{s}` is neither a number nor lo:hi:step"))),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Fixed(v) => write!(f, "{v}"),
            Axis::Range { lo, hi, step } => write!(f, "{lo}:{hi}:{step}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub prior: Axis,
    pub sensitivity: Axis,
    pub specificity: Axis,
    pub max_cells: u64,
}

impl GridSpec {
    pub fn new(prior: Axis, sensitivity: Axis, specificity: Axis) -> Self {
        GridSpec {
            prior,
            sensitivity,
            specificity,
            max_cells: DEFAULT_MAX_CELLS,
        }
    }

    pub fn cells(&self) -> u128 {
        [self.prior, self.sensitivity, self.specificity]
            .iter()
            .map(|a| u128::from(a.len()))
            .product()
    }
}

/// One lattice point: the inputs and the headline outputs of its full report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub prior: Probability,
    pub sensitivity: Probability,
    pub specificity: Probability,
    pub p_positive: Probability,
    pub ppv: Option<Probability>,
    pub npv: Option<Probability>,
}

impl SweepRow {
    pub fn evaluate(prior: PriorBelief, chars: TestCharacteristics) -> Self {
        let report = full_report(prior, chars);
        SweepRow {
            prior: prior.p_guilty,
            sensitivity: chars.sensitivity,
            specificity: chars.specificity,
            p_positive: report.p_positive,
            ppv: report.ppv,
            npv: report.npv,
        }
    }

    pub fn csv_line(&self) -> String {
        let opt = |p: Option<Probability>| p.map(|p| p.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{}",
            self.prior,
            self.sensitivity,
            self.specificity,
            self.p_positive,
            opt(self.ppv),
            opt(self.npv)
        )
    }
}

/// Evaluates every lattice point, ordered by (prior, sensitivity, specificity).
pub fn run_sweep(grid: &GridSpec) -> Result<Vec<SweepRow>> {
    let cells = grid.cells();
    if cells > u128::from(grid.max_cells) {
        return Err(Error::GridTooLarge {
            cells,
            cap: grid.max_cells,
        });
    }
    let priors = grid.prior.materialize();
    let sens = grid.sensitivity.materialize();
    let specs = grid.specificity.materialize();
    let per_prior = sens.len() * specs.len();

    let rows = (0..priors.len() * per_prior)
        .into_par_iter()
        .map(|idx| {
            let p = priors[idx / per_prior];
            let s = sens[(idx % per_prior) / specs.len()];
            let c = specs[idx % specs.len()];
            // Axis points are validated to lie in [0, 1].
            let prior = PriorBelief::new(p).expect("axis point in range");
            let chars = TestCharacteristics::new(s, c).expect("axis point in range");
            SweepRow::evaluate(prior, chars)
        })
        .collect();
    Ok(rows)
}

/// Writes the CSV export: header, then one LF-terminated line per row. Absent values are empty cells.
pub fn write_csv<W: Write>(mut out: W, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.csv_line())?;
    }
    out.flush()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BreakEvenPoint {
    pub chars: TestCharacteristics,
    /// The prior achieving the target, or why none does.
    pub required_prior: Result<Probability>,
}

/// The prior needed to reach `target_ppv` under each set of characteristics.
pub fn break_even_curve(chars_axis: &[TestCharacteristics], target_ppv: Probability) -> Vec<BreakEvenPoint> {
    chars_axis
        .iter()
        .map(|&chars| BreakEvenPoint {
            chars,
            required_prior: required_prior(chars, target_ppv),
        })
        .collect()
}
