//! Closed-form Bayesian arithmetic for a two-outcome adjudication process.
//!
//! A trial is treated as a binary diagnostic test applied to a defendant:
//! a positive outcome (+) imposes liability, a negative one (−) does not.
//! The process is described by its sensitivity, Pr(+ | guilty), and its
//! specificity, Pr(− | innocent). Together with a prior Pr(guilty) these
//! three numbers determine every posterior reported here.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A real number in the closed unit interval.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Self> {
        Self::named("probability", value)
    }

    /// Like [`Probability::new`] but reports `name` in the error.
    pub fn named(name: &'static str, value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(Error::InvalidProbability { name, value })
        }
    }

    /// Clamps tiny rounding excursions (e.g. `1.0000000000000002`) back into range.
    /// Only for values produced by arithmetic on valid probabilities.
    pub(crate) fn saturating(value: f64) -> Self {
        debug_assert!(value.is_finite(), "non-finite probability {value}");
        Probability(value.clamp(0.0, 1.0))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn complement(self) -> Probability {
        Probability(1.0 - self.0)
    }
}

impl TryFrom<f64> for Probability {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Probability::new(value)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Reliability of the adjudication process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestCharacteristics {
    /// Pr(+ | guilty).
    pub sensitivity: Probability,
    /// Pr(− | innocent).
    pub specificity: Probability,
}

impl TestCharacteristics {
    pub fn new(sensitivity: f64, specificity: f64) -> Result<Self> {
        Ok(TestCharacteristics {
            sensitivity: Probability::named("sensitivity", sensitivity)?,
            specificity: Probability::named("specificity", specificity)?,
        })
    }

    /// Pr(+ | innocent): the Type I error rate.
    pub fn false_positive_rate(&self) -> Probability {
        self.specificity.complement()
    }

    /// Pr(− | guilty): the Type II error rate.
    pub fn false_negative_rate(&self) -> Probability {
        self.sensitivity.complement()
    }
}

/// Prior probability that a named defendant is guilty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorBelief {
    pub p_guilty: Probability,
}

impl PriorBelief {
    pub fn new(p_guilty: f64) -> Result<Self> {
        Ok(PriorBelief {
            p_guilty: Probability::named("prior", p_guilty)?,
        })
    }

    pub fn p_innocent(&self) -> Probability {
        self.p_guilty.complement()
    }
}

/// A likelihood ratio, which may be unbounded or 0/0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LikelihoodRatio {
    Finite(f64),
    Infinite,
    /// Both numerator and denominator are zero.
    Indeterminate,
}

impl LikelihoodRatio {
    fn ratio(num: f64, den: f64) -> Self {
        match (num == 0.0, den == 0.0) {
            (true, true) => LikelihoodRatio::Indeterminate,
            (false, true) => LikelihoodRatio::Infinite,
            _ => LikelihoodRatio::Finite(num / den),
        }
    }

    /// `+inf` for [`Infinite`](Self::Infinite), `None` for indeterminate.
    pub fn as_f64(self) -> Option<f64> {
        match self {
            LikelihoodRatio::Finite(v) => Some(v),
            LikelihoodRatio::Infinite => Some(f64::INFINITY),
            LikelihoodRatio::Indeterminate => None,
        }
    }
}

impl fmt::Display for LikelihoodRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LikelihoodRatio::Finite(v) => fmt::Display::fmt(v, f),
            LikelihoodRatio::Infinite => f.write_str("inf"),
            LikelihoodRatio::Indeterminate => f.write_str("indeterminate"),
        }
    }
}

impl Serialize for LikelihoodRatio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LikelihoodRatio::Finite(v) => s.serialize_f64(*v),
            LikelihoodRatio::Infinite => s.serialize_str("inf"),
            LikelihoodRatio::Indeterminate => s.serialize_str("indeterminate"),
        }
    }
}

impl<'de> Deserialize<'de> for LikelihoodRatio {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Tag(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) if v >= 0.0 && v.is_finite() => Ok(LikelihoodRatio::Finite(v)),
            Repr::Num(v) => Err(serde::de::Error::custom(format!(
                "likelihood ratio {v} is not a nonnegative finite number"
            ))),
            Repr::Tag(t) if t == "inf" => Ok(LikelihoodRatio::Infinite),
            Repr::Tag(t) if t == "indeterminate" => Ok(LikelihoodRatio::Indeterminate),
            Repr::Tag(t) => Err(serde::de::Error::custom(format!(
                "unknown likelihood ratio marker `{t}`"
            ))),
        }
    }
}

/// Everything derivable from one (prior, characteristics) pair.
///
/// Posteriors conditioned on an impossible outcome are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosteriorReport {
    pub prior: PriorBelief,
    pub chars: TestCharacteristics,
    /// Pr(+).
    pub p_positive: Probability,
    /// Pr(guilty | +).
    pub ppv: Option<Probability>,
    /// Pr(innocent | +) = 1 − ppv.
    pub p_innocent_given_positive: Option<Probability>,
    /// Pr(innocent | −).
    pub npv: Option<Probability>,
    /// Pr(guilty | −) = 1 − npv.
    pub p_guilty_given_negative: Option<Probability>,
    pub lr_positive: LikelihoodRatio,
    pub lr_negative: LikelihoodRatio,
}

/// Joint masses of the four (truth, verdict) cells.
struct Joint {
    true_positive: f64,
    false_positive: f64,
    true_negative: f64,
    false_negative: f64,
}

fn joint(prior: PriorBelief, chars: TestCharacteristics) -> Joint {
    let p = prior.p_guilty.value();
    let q = prior.p_innocent().value();
    Joint {
        true_positive: chars.sensitivity.value() * p,
        false_positive: chars.false_positive_rate().value() * q,
        true_negative: chars.specificity.value() * q,
        false_negative: chars.false_negative_rate().value() * p,
    }
}

/// Pr(+) by total probability: sens·p + (1 − spec)·(1 − p).
pub fn p_positive(prior: PriorBelief, chars: TestCharacteristics) -> Probability {
    let j = joint(prior, chars);
    Probability::saturating(j.true_positive + j.false_positive)
}

/// Pr(guilty | +) = sens·p / Pr(+).
pub fn posterior_guilty_given_positive(
    prior: PriorBelief,
    chars: TestCharacteristics,
) -> Result<Probability> {
    let j = joint(prior, chars);
    let positive = j.true_positive + j.false_positive;
    if positive == 0.0 {
        return Err(Error::UndefinedPosterior {
            quantity: "Pr(guilty | +)",
            event: "a positive",
        });
    }
    Ok(Probability::saturating(j.true_positive / positive))
}

/// Pr(innocent | −) = spec·(1 − p) / Pr(−).
pub fn posterior_innocent_given_negative(
    prior: PriorBelief,
    chars: TestCharacteristics,
) -> Result<Probability> {
    let j = joint(prior, chars);
    let negative = j.true_negative + j.false_negative;
    if negative == 0.0 {
        return Err(Error::UndefinedPosterior {
            quantity: "Pr(innocent | −)",
            event: "a negative",
        });
    }
    Ok(Probability::saturating(j.true_negative / negative))
}

/// Pr(guilty | +) computed as prior odds × LR+, converted back to a probability.
///
/// Falls back to log-odds when the product of odds would overflow or underflow.
pub fn posterior_via_odds(prior: PriorBelief, chars: TestCharacteristics) -> Result<Probability> {
    let p = prior.p_guilty.value();
    let sens = chars.sensitivity.value();
    let fpr = chars.false_positive_rate().value();

    let guilty_mass_zero = p == 0.0 || sens == 0.0;
    let innocent_mass_zero = p == 1.0 || fpr == 0.0;
    match (guilty_mass_zero, innocent_mass_zero) {
        (true, true) => {
            return Err(Error::UndefinedPosterior {
                quantity: "Pr(guilty | +)",
                event: "a positive",
            })
        }
        (true, false) => return Ok(Probability::ZERO),
        (false, true) => return Ok(Probability::ONE),
        (false, false) => {}
    }

    let prior_odds = p / (1.0 - p);
    let lr = sens / fpr;
    let odds = prior_odds * lr;
    let posterior = if odds.is_finite() && odds > 0.0 {
        odds / (1.0 + odds)
    } else {
        let log_odds = (p.ln() - (1.0 - p).ln()) + (sens.ln() - fpr.ln());
        logistic(log_odds)
    };
    Ok(Probability::saturating(posterior))
}

fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// (LR+, LR−) = (sens / (1 − spec), (1 − sens) / spec).
pub fn likelihood_ratios(chars: TestCharacteristics) -> (LikelihoodRatio, LikelihoodRatio) {
    let positive = LikelihoodRatio::ratio(
        chars.sensitivity.value(),
        chars.false_positive_rate().value(),
    );
    let negative = LikelihoodRatio::ratio(
        chars.false_negative_rate().value(),
        chars.specificity.value(),
    );
    (positive, negative)
}

/// The prior under which Pr(guilty | +) equals `target_ppv`.
///
/// Solving t = s·p / (s·p + f·(1 − p)) for p gives p = t·f / (t·f + s·(1 − t)),
/// with s the sensitivity and f the false positive rate.
pub fn required_prior(chars: TestCharacteristics, target_ppv: Probability) -> Result<Probability> {
    let t = target_ppv.value();
    let s = chars.sensitivity.value();
    let f = chars.false_positive_rate().value();
    let unreachable = |reason| Error::UnreachableTarget { target: t, reason };

    if t <= 0.0 || t >= 1.0 {
        return Err(unreachable("target must lie strictly between 0 and 1"));
    }
    if s == 0.0 {
        return Err(unreachable("sensitivity is 0, so ppv is 0 for every prior"));
    }
    if f == 0.0 {
        return Err(unreachable("specificity is 1, so ppv is 1 for every prior above 0"));
    }
    let numerator = t * f;
    Ok(Probability::saturating(numerator / (numerator + s * (1.0 - t))))
}

pub fn full_report(prior: PriorBelief, chars: TestCharacteristics) -> PosteriorReport {
    let ppv = posterior_guilty_given_positive(prior, chars).ok();
    let npv = posterior_innocent_given_negative(prior, chars).ok();
    let (lr_positive, lr_negative) = likelihood_ratios(chars);
    PosteriorReport {
        prior,
        chars,
        p_positive: p_positive(prior, chars),
        ppv,
        p_innocent_given_positive: ppv.map(Probability::complement),
        npv,
        p_guilty_given_negative: npv.map(Probability::complement),
        lr_positive,
        lr_negative,
    }
}

impl PosteriorReport {
    /// Pr(−) = 1 − Pr(+).
    pub fn p_negative(&self) -> Probability {
        self.p_positive.complement()
    }

    /// Re-derives the report from its inputs and checks the algebraic identities
    /// that tie its fields together. Returns a description of the first violation.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let fresh = full_report(self.prior, self.chars);
        if fresh != *self {
            return Err(format!("report does not match its inputs: {fresh:?} vs {self:?}"));
        }
        if let (Some(ppv), Some(inn)) = (self.ppv, self.p_innocent_given_positive) {
            if 1.0 - ppv.value() != inn.value() {
                return Err("ppv and Pr(innocent | +) are not complements".into());
            }
            let lhs = ppv.value() * self.p_positive.value();
            let rhs = self.chars.sensitivity.value() * self.prior.p_guilty.value();
            if (lhs - rhs).abs() > 1e-12 {
                return Err(format!("ppv × Pr(+) = {lhs} but sens × prior = {rhs}"));
            }
        }
        if self.ppv.is_none() != (self.p_positive.value() == 0.0) {
            return Err("ppv presence disagrees with Pr(+)".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prior(p: f64) -> PriorBelief {
        PriorBelief::new(p).unwrap()
    }

    fn chars(s: f64, c: f64) -> TestCharacteristics {
        TestCharacteristics::new(s, c).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn probability_rejects_out_of_range_and_non_finite() {
        for bad in [-0.1, 1.0000001, f64::NAN, f64::INFINITY, f64::NEG_INFINITY] {
            assert!(Probability::new(bad).is_err(), "{bad} accepted");
        }
        assert_eq!(Probability::new(0.0).unwrap().value(), 0.0);
        assert_eq!(Probability::new(1.0).unwrap().value(), 1.0);
    }

    #[test]
    fn p_positive_examples() {
        assert!(close(p_positive(prior(0.9), chars(0.9, 0.9)).value(), 0.82, 1e-12));
        assert!(close(p_positive(prior(0.6), chars(0.9, 0.9)).value(), 0.58, 1e-12));
        assert_eq!(p_positive(prior(0.0), chars(0.7, 1.0)).value(), 0.0);
        // 30,000 guilty → 24,000 positive; 70,000 innocent → 21,000 positive.
        assert!(close(p_positive(prior(0.3), chars(0.8, 0.7)).value(), 45_000.0 / 100_000.0, 1e-12));
    }

    #[test]
    fn ppv_examples() {
        let ppv = |p, s, c| posterior_guilty_given_positive(prior(p), chars(s, c)).unwrap().value();
        assert!(close(ppv(0.9, 0.9, 0.9), 81.0 / 82.0, 1e-12));
        assert!(close(ppv(0.6, 0.9, 0.9), 54.0 / 58.0, 1e-12));
        assert!(close(ppv(0.9, 0.5, 0.5), 0.9, 1e-12));
        assert!(close(ppv(0.6, 0.5, 0.5), 0.6, 1e-12));
        assert!(close(ppv(0.3, 0.8, 0.7), 24_000.0 / 45_000.0, 1e-12));
        for p in [1e-9, 0.2, 0.5, 1.0] {
            assert_eq!(ppv(p, 1.0, 1.0), 1.0);
        }
        assert_eq!(format!("{:.3}", ppv(0.9, 0.9, 0.9)), "0.988");
        assert_eq!(format!("{:.3}", ppv(0.6, 0.9, 0.9)), "0.931");
    }

    #[test]
    fn ppv_undefined_when_no_positives_possible() {
        let err = posterior_guilty_given_positive(prior(0.0), chars(0.3, 1.0)).unwrap_err();
        assert!(matches!(err, Error::UndefinedPosterior { .. }));
        let err = posterior_guilty_given_positive(prior(0.4), chars(0.0, 1.0)).unwrap_err();
        assert!(matches!(err, Error::UndefinedPosterior { .. }));
    }

    #[test]
    fn npv_examples() {
        let npv = |p, s, c| posterior_innocent_given_negative(prior(p), chars(s, c)).unwrap().value();
        // 9,000 true negatives against 9,000 false negatives.
        assert!(close(npv(0.9, 0.9, 0.9), 0.5, 1e-12));
        assert!(close(npv(0.5, 0.5, 0.5), 0.5, 1e-12));
        assert_eq!(npv(0.0, 0.3, 0.2), 1.0);
        assert!(matches!(
            posterior_innocent_given_negative(prior(1.0), chars(1.0, 0.4)),
            Err(Error::UndefinedPosterior { .. })
        ));
    }

    #[test]
    fn odds_form_examples() {
        let odds = |p, s, c| posterior_via_odds(prior(p), chars(s, c)).unwrap().value();
        assert!(close(odds(0.9, 0.9, 0.9), 81.0 / 82.0, 1e-12));
        assert!(close(odds(0.5, 0.5, 0.5), 0.5, 1e-12));
        assert!(close(odds(0.3, 0.8, 0.7), 8.0 / 15.0, 1e-12));
        assert_eq!(odds(1.0, 0.4, 0.2), 1.0);
        assert!(posterior_via_odds(prior(0.0), chars(0.5, 1.0)).is_err());
    }

    #[test]
    fn odds_form_survives_extreme_odds() {
        let p = prior(1e-200);
        let c = chars(1e-200, 0.5);
        let direct = posterior_guilty_given_positive(p, c).unwrap().value();
        let odds = posterior_via_odds(p, c).unwrap().value();
        assert!(close(direct, odds, 1e-12));

        let p = prior(1e-300);
        let c = chars(1e-300, 0.0);
        let direct = posterior_guilty_given_positive(p, c).unwrap().value();
        let odds = posterior_via_odds(p, c).unwrap().value();
        assert!(close(direct, odds, 1e-12));
    }

    #[test]
    fn likelihood_ratio_examples() {
        let (pos, neg) = likelihood_ratios(chars(0.9, 0.9));
        assert!(close(pos.as_f64().unwrap(), 9.0, 1e-12));
        assert!(close(neg.as_f64().unwrap(), 1.0 / 9.0, 1e-12));
        assert_eq!(likelihood_ratios(chars(0.5, 0.5)), (LikelihoodRatio::Finite(1.0), LikelihoodRatio::Finite(1.0)));
        let (pos, neg) = likelihood_ratios(chars(0.9, 1.0));
        assert_eq!(pos, LikelihoodRatio::Infinite);
        assert!(close(neg.as_f64().unwrap(), 0.1, 1e-12));
        assert_eq!(likelihood_ratios(chars(0.0, 1.0)).0, LikelihoodRatio::Indeterminate);
        assert_eq!(likelihood_ratios(chars(1.0, 0.0)).1, LikelihoodRatio::Indeterminate);
        assert_eq!(likelihood_ratios(chars(0.5, 0.0)).1, LikelihoodRatio::Infinite);
    }

    #[test]
    fn required_prior_examples() {
        let inv = |s, c, t| required_prior(chars(s, c), Probability::new(t).unwrap());
        assert!(close(inv(0.9, 0.9, 81.0 / 82.0).unwrap().value(), 0.9, 1e-9));
        assert!(close(inv(0.5, 0.5, 0.6).unwrap().value(), 0.6, 1e-12));
        for s in [0.1, 0.25, 0.5, 0.8, 0.99] {
            for t in [0.01, 0.3, 0.77] {
                assert!(close(inv(s, 1.0 - s, t).unwrap().value(), t, 1e-12));
            }
        }
        for (s, c, t) in [(0.0, 0.9, 0.5), (0.9, 1.0, 0.5), (0.9, 0.9, 0.0), (0.9, 0.9, 1.0)] {
            assert!(matches!(inv(s, c, t), Err(Error::UnreachableTarget { .. })));
        }
    }

    #[test]
    fn full_report_examples() {
        let r = full_report(prior(0.9), chars(0.9, 0.9));
        assert!(close(r.p_positive.value(), 0.82, 1e-12));
        assert!(close(r.ppv.unwrap().value(), 81.0 / 82.0, 1e-12));
        assert!(close(r.p_innocent_given_positive.unwrap().value(), 1.0 / 82.0, 1e-12));
        assert_eq!(format!("{:.3}", r.p_innocent_given_positive.unwrap().value()), "0.012");
        r.check_invariants().unwrap();

        let r = full_report(prior(1.0), chars(1.0, 1.0));
        assert_eq!(r.ppv, Some(Probability::ONE));
        assert_eq!(r.npv, None);
        assert_eq!(r.p_guilty_given_negative, None);
        r.check_invariants().unwrap();

        // 49,000 true negatives, 6,000 false negatives.
        let r = full_report(prior(0.3), chars(0.8, 0.7));
        assert!(close(r.ppv.unwrap().value(), 8.0 / 15.0, 1e-12));
        assert!(close(r.npv.unwrap().value(), 49.0 / 55.0, 1e-12));
    }

    #[test]
    fn complements_are_exact() {
        let r = full_report(prior(0.37), chars(0.61, 0.83));
        assert_eq!(r.p_innocent_given_positive.unwrap().value(), 1.0 - r.ppv.unwrap().value());
        assert_eq!(r.p_guilty_given_negative.unwrap().value(), 1.0 - r.npv.unwrap().value());
    }

    #[test]
    fn report_json_round_trip() {
        let r = full_report(prior(0.3), chars(0.8, 1.0));
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"lr_positive\":\"inf\""));
        let back: PosteriorReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(full_report(back.prior, back.chars), r);
    }

    #[test]
    fn report_json_rejects_invalid_probability() {
        let r = full_report(prior(0.3), chars(0.8, 0.7));
        let json = serde_json::to_string(&r).unwrap().replace("\"p_guilty\":0.3", "\"p_guilty\":1.3");
        assert!(serde_json::from_str::<PosteriorReport>(&json).is_err());
    }
}
