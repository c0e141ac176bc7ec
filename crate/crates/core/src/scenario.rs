//! The 2×2 catalog of adjudication regimes and moving-party profiles.
//!
//! Scenario documents are flat TOML:
//!
//! ```toml
//! # a catalog cell
//! regime = "random"          # "non-random" | "random"
//! profile = "risk-averse"    # "risk-averse" | "risk-loving"
//! ```
//!
//! or a custom scenario with all three numbers (an optional `name` is allowed
//! in both forms):
//!
//! ```toml
//! name = "my-court"
//! sensitivity = 0.8
//! specificity = 0.7
//! prior = 0.3
//! ```

use std::fmt;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::inference::{full_report, PosteriorReport, PriorBelief, TestCharacteristics};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdjudicationRegime {
    /// 90% sensitive, 90% specific.
    NonRandom,
    /// A coin toss: 50% sensitive, 50% specific.
    Random,
}

impl AdjudicationRegime {
    pub const ALL: [AdjudicationRegime; 2] = [AdjudicationRegime::NonRandom, AdjudicationRegime::Random];

    pub fn characteristics(self) -> TestCharacteristics {
        let (sensitivity, specificity) = match self {
            AdjudicationRegime::NonRandom => (0.9, 0.9),
            AdjudicationRegime::Random => (0.5, 0.5),
        };
        TestCharacteristics::new(sensitivity, specificity).expect("catalog constants are probabilities")
    }

    pub fn slug(self) -> &'static str {
        match self {
            AdjudicationRegime::NonRandom => "non-random",
            AdjudicationRegime::Random => "random",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MovingPartyProfile {
    /// Files only when at least 90% certain of guilt.
    RiskAverse,
    /// Files when only 60% certain.
    RiskLoving,
}

impl MovingPartyProfile {
    pub const ALL: [MovingPartyProfile; 2] = [MovingPartyProfile::RiskAverse, MovingPartyProfile::RiskLoving];

    pub fn prior(self) -> PriorBelief {
        let p = match self {
            MovingPartyProfile::RiskAverse => 0.9,
            MovingPartyProfile::RiskLoving => 0.6,
        };
        PriorBelief::new(p).expect("catalog constants are probabilities")
    }

    pub fn slug(self) -> &'static str {
        match self {
            MovingPartyProfile::RiskAverse => "risk-averse",
            MovingPartyProfile::RiskLoving => "risk-loving",
        }
    }
}

impl FromStr for AdjudicationRegime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AdjudicationRegime::ALL
            .into_iter()
            .find(|r| r.slug() == s)
            .ok_or_else(|| Error::Parse(format!("unknown regime `{s}` (expected non-random or random)")))
    }
}

impl FromStr for MovingPartyProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MovingPartyProfile::ALL
            .into_iter()
            .find(|p| p.slug() == s)
            .ok_or_else(|| Error::Parse(format!("unknown profile `{s}` (expected risk-averse or risk-loving)")))
    }
}

/// Where a scenario's parameters come from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScenarioKind {
    Catalog {
        regime: AdjudicationRegime,
        profile: MovingPartyProfile,
    },
    Custom {
        chars: TestCharacteristics,
        prior: PriorBelief,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub kind: ScenarioKind,
}

impl Scenario {
    pub fn catalog_cell(regime: AdjudicationRegime, profile: MovingPartyProfile) -> Self {
        Scenario {
            name: format!("{}/{}", regime.slug(), profile.slug()),
            kind: ScenarioKind::Catalog { regime, profile },
        }
    }

    pub fn custom(name: impl Into<String>, chars: TestCharacteristics, prior: PriorBelief) -> Self {
        Scenario {
            name: name.into(),
            kind: ScenarioKind::Custom { chars, prior },
        }
    }

    /// The (characteristics, prior) pair this scenario stands for.
    pub fn resolve(&self) -> (TestCharacteristics, PriorBelief) {
        match self.kind {
            ScenarioKind::Catalog { regime, profile } => (regime.characteristics(), profile.prior()),
            ScenarioKind::Custom { chars, prior } => (chars, prior),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// The four cells, regime-major: non-random before random, risk-averse before risk-loving.
pub fn catalog() -> Vec<Scenario> {
    AdjudicationRegime::ALL
        .into_iter()
        .flat_map(|r| MovingPartyProfile::ALL.into_iter().map(move |p| Scenario::catalog_cell(r, p)))
        .collect()
}

/// Looks a catalog cell up by its slug, e.g. `random/risk-loving`.
pub fn find(name: &str) -> Result<Scenario> {
    catalog()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownScenario(name.to_string()))
}

pub fn evaluate(scenario: &Scenario) -> PosteriorReport {
    let (chars, prior) = scenario.resolve();
    full_report(prior, chars)
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDoc {
    name: Option<String>,
    regime: Option<String>,
    profile: Option<String>,
    sensitivity: Option<f64>,
    specificity: Option<f64>,
    prior: Option<f64>,
}

/// Parses a scenario document (see the module docs for the format).
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let doc: ScenarioDoc = toml::from_str(text).map_err(|e| Error::Parse(e.message().to_string()))?;

    for (key, value) in [
        ("sensitivity", doc.sensitivity),
        ("specificity", doc.specificity),
        ("prior", doc.prior),
    ] {
        if let Some(v) = value {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Validation(format!("{key} = {v} is outside [0, 1]")));
            }
        }
    }

    let has_tags = doc.regime.is_some() || doc.profile.is_some();
    let has_numbers = doc.sensitivity.is_some() || doc.specificity.is_some() || doc.prior.is_some();
    if has_tags && has_numbers {
        return Err(Error::AmbiguousScenario(
            "document mixes regime/profile tags with numeric overrides".into(),
        ));
    }

    if has_tags {
        let (Some(regime), Some(profile)) = (doc.regime, doc.profile) else {
            return Err(Error::Parse("both `regime` and `profile` are required".into()));
        };
        let mut scenario = Scenario::catalog_cell(regime.parse()?, profile.parse()?);
        if let Some(name) = doc.name {
            scenario.name = name;
        }
        return Ok(scenario);
    }

    match (doc.sensitivity, doc.specificity, doc.prior) {
        (Some(s), Some(c), Some(p)) => Ok(Scenario::custom(
            doc.name.unwrap_or_else(|| "custom".to_string()),
            TestCharacteristics::new(s, c)?,
            PriorBelief::new(p)?,
        )),
        (None, None, None) => Err(Error::Parse(
            "document needs either regime + profile or sensitivity + specificity + prior".into(),
        )),
        _ => Err(Error::Parse("custom scenarios need all of sensitivity, specificity and prior".into())),
    }
}

/// Inverse of [`parse_scenario`].
pub fn serialize_scenario(scenario: &Scenario) -> String {
    let mut table = toml::Table::new();
    table.insert("name".into(), scenario.name.clone().into());
    match scenario.kind {
        ScenarioKind::Catalog { regime, profile } => {
            table.insert("regime".into(), regime.slug().into());
            table.insert("profile".into(), profile.slug().into());
        }
        ScenarioKind::Custom { chars, prior } => {
            table.insert("sensitivity".into(), chars.sensitivity.value().into());
            table.insert("specificity".into(), chars.specificity.value().into());
            table.insert("prior".into(), prior.p_guilty.value().into());
        }
    }
    toml::to_string(&table).expect("flat table always serializes")
}
