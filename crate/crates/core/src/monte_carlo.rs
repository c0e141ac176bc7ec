//! Seeded simulation of the two-stage litigation process.
//!
//! Each simulated defendant is guilty with probability `p_guilty`; a guilty
//! defendant is then found liable with probability `sensitivity` and an
//! innocent one with probability `1 − specificity`.
//!
//! Randomness is counter-based. The generator is ChaCha20 keyed with the seed
//! (8 little-endian bytes, zero-padded to 32) on stream 0. Trial `i` consumes
//! the 64-bit words `2i` (guilt draw) and `2i + 1` (verdict draw), i.e. 32-bit
//! words `4i..4i + 4`. Every trial's draws are therefore a pure function of
//! `(seed, i)` and counts do not depend on how trials are split into chunks.

use rand_chacha::ChaCha20Rng;
use rand_core::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inference::{PosteriorReport, PriorBelief, Probability, TestCharacteristics};

/// Two-sided 95% standard normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_053_6;

/// Default agreement threshold in standard errors.
pub const DEFAULT_Z: f64 = 4.0;

pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 16;

/// 32-bit generator words consumed per trial.
const WORDS_PER_TRIAL: u128 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub n_trials: u64,
    pub seed: u64,
    pub chunk_size: u64,
    /// Run chunks on the rayon pool. Counts are identical either way.
    pub parallel: bool,
}

impl SimConfig {
    pub fn new(n_trials: u64, seed: u64) -> Result<Self> {
        Self::with_chunk_size(n_trials, seed, DEFAULT_CHUNK_SIZE)
    }

    pub fn with_chunk_size(n_trials: u64, seed: u64, chunk_size: u64) -> Result<Self> {
        if n_trials == 0 {
            return Err(Error::InvalidConfig("n_trials must be at least 1".into()));
        }
        if chunk_size == 0 {
            return Err(Error::InvalidConfig("chunk_size must be at least 1".into()));
        }
        Ok(SimConfig {
            n_trials,
            seed,
            chunk_size,
            parallel: true,
        })
    }

    pub fn serial(mut self) -> Self {
        self.parallel = false;
        self
    }
}

/// Confusion counts of a run. False positives are Type I errors, false negatives Type II.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub true_positive: u64,
    pub false_positive: u64,
    pub true_negative: u64,
    pub false_negative: u64,
}

impl ConfusionCounts {
    pub fn total(&self) -> u64 {
        self.true_positive + self.false_positive + self.true_negative + self.false_negative
    }

    pub fn positives(&self) -> u64 {
        self.true_positive + self.false_positive
    }

    pub fn negatives(&self) -> u64 {
        self.true_negative + self.false_negative
    }

    pub fn guilty(&self) -> u64 {
        self.true_positive + self.false_negative
    }
}

impl std::ops::Add for ConfusionCounts {
    type Output = ConfusionCounts;

    fn add(self, rhs: Self) -> Self {
        ConfusionCounts {
            true_positive: self.true_positive + rhs.true_positive,
            false_positive: self.false_positive + rhs.false_positive,
            true_negative: self.true_negative + rhs.true_negative,
            false_negative: self.false_negative + rhs.false_negative,
        }
    }
}

/// A closed interval inside [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Point estimate of ppv with its uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PpvEstimate {
    pub ppv_hat: Probability,
    pub standard_error: f64,
    pub ci95: Interval,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub counts: ConfusionCounts,
    pub ppv_hat: Option<Probability>,
    pub npv_hat: Option<Probability>,
    pub standard_error_ppv: Option<f64>,
    pub ci95_ppv: Option<Interval>,
}

fn generator(seed: u64) -> ChaCha20Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    ChaCha20Rng::from_seed(key)
}

/// Uniform on [0, 1) from the top 53 bits.
#[inline]
fn unit_f64(word: u64) -> f64 {
    (word >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn simulate_range(
    seed: u64,
    start: u64,
    end: u64,
    p_guilty: f64,
    sensitivity: f64,
    false_positive_rate: f64,
) -> ConfusionCounts {
    let mut rng = generator(seed);
    rng.set_word_pos(u128::from(start) * WORDS_PER_TRIAL);
    let mut counts = ConfusionCounts::default();
    for _ in start..end {
        let guilty = unit_f64(rng.next_u64()) < p_guilty;
        let verdict = unit_f64(rng.next_u64());
        match (guilty, verdict < if guilty { sensitivity } else { false_positive_rate }) {
            (true, true) => counts.true_positive += 1,
            (false, true) => counts.false_positive += 1,
            (false, false) => counts.true_negative += 1,
            (true, false) => counts.false_negative += 1,
        }
    }
    counts
}

/// Runs `config.n_trials` simulated trials and summarizes them.
pub fn simulate(prior: PriorBelief, chars: TestCharacteristics, config: SimConfig) -> SimResult {
    let p = prior.p_guilty.value();
    let s = chars.sensitivity.value();
    let f = chars.false_positive_rate().value();
    let n = config.n_trials;
    let chunk = config.chunk_size;
    let n_chunks = n.div_ceil(chunk);
    let run = |k: u64| {
        let start = k * chunk;
        simulate_range(config.seed, start, (start + chunk).min(n), p, s, f)
    };

    let counts = if config.parallel {
        (0..n_chunks).into_par_iter().map(run).reduce(ConfusionCounts::default, |a, b| a + b)
    } else {
        (0..n_chunks).map(run).fold(ConfusionCounts::default(), |a, b| a + b)
    };
    debug_assert_eq!(counts.total(), n);
    summarize(counts)
}

/// Builds a [`SimResult`] from raw counts.
pub fn summarize(counts: ConfusionCounts) -> SimResult {
    let estimate = empirical_interval(counts).ok();
    let npv_hat = (counts.negatives() > 0)
        .then(|| Probability::saturating(counts.true_negative as f64 / counts.negatives() as f64));
    SimResult {
        counts,
        ppv_hat: estimate.map(|e| e.ppv_hat),
        npv_hat,
        standard_error_ppv: estimate.map(|e| e.standard_error),
        ci95_ppv: estimate.map(|e| e.ci95),
    }
}

/// Wilson score interval for `successes` out of `n` at normal quantile `z`.
pub fn wilson_interval(successes: u64, n: u64, z: f64) -> Interval {
    assert!(n > 0 && successes <= n, "wilson_interval needs 0 <= successes <= n, n > 0");
    let n = n as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    Interval {
        lo: (center - half).max(0.0),
        hi: (center + half).min(1.0),
    }
}

/// ppv estimate, its binomial standard error and the 95% Wilson interval.
pub fn empirical_interval(counts: ConfusionCounts) -> Result<PpvEstimate> {
    let n_pos = counts.positives();
    if n_pos == 0 {
        return Err(Error::NoPositives);
    }
    let ppv_hat = counts.true_positive as f64 / n_pos as f64;
    let mut ci95 = wilson_interval(counts.true_positive, n_pos, Z_95);
    // Rounding can leave the point estimate a hair outside at p̂ ∈ {0, 1}.
    ci95.lo = ci95.lo.min(ppv_hat);
    ci95.hi = ci95.hi.max(ppv_hat);
    Ok(PpvEstimate {
        ppv_hat: Probability::saturating(ppv_hat),
        standard_error: (ppv_hat * (1.0 - ppv_hat) / n_pos as f64).sqrt(),
        ci95,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgreementDiagnostic {
    pub agrees: bool,
    pub ppv_hat: f64,
    pub analytic_ppv: f64,
    pub difference: f64,
    pub standard_error: f64,
    pub z: f64,
    /// `z × standard_error`: the largest tolerated difference.
    pub margin: f64,
}

/// Does the simulated ppv sit within `z` standard errors of the analytic one?
///
/// Refuses (with [`Error::NoPositives`] or [`Error::UndefinedPosterior`]) when
/// either side is undefined, instead of agreeing vacuously.
pub fn agreement_check(result: &SimResult, analytic: &PosteriorReport, z: f64) -> Result<AgreementDiagnostic> {
    let (Some(ppv_hat), Some(se)) = (result.ppv_hat, result.standard_error_ppv) else {
        return Err(Error::NoPositives);
    };
    let Some(analytic_ppv) = analytic.ppv else {
        return Err(Error::UndefinedPosterior {
            quantity: "analytic Pr(guilty | +)",
            event: "a positive",
        });
    };
    let difference = (ppv_hat.value() - analytic_ppv.value()).abs();
    let margin = z * se;
    Ok(AgreementDiagnostic {
        agrees: difference <= margin,
        ppv_hat: ppv_hat.value(),
        analytic_ppv: analytic_ppv.value(),
        difference,
        standard_error: se,
        z,
        margin,
    })
}
