use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// Witness lists are truncated to this many entries; the full count is kept in
/// `stats.witness_total`.
pub const MAX_WITNESSES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    PeriodicDensity,
    DenseOrbit,
    Transitivity,
    Sensitivity,
    Lemma6,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::PeriodicDensity => "periodic-density",
            Property::DenseOrbit => "dense-orbit",
            Property::Transitivity => "transitivity",
            Property::Sensitivity => "sensitivity",
            Property::Lemma6 => "lemma6",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Parameters a check was run with. Unused ones are omitted from JSON.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_period: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<u32>,
}

/// A dyadic cell `[lo, hi)` on one arc (the last cell of an arc is closed).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellSpan {
    pub arc: usize,
    pub lo: Rational,
    pub hi: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    UncoveredCell { cell: CellSpan },
    UnlinkedPair { from: CellSpan, to: CellSpan },
    InsensitivePoint { point: String },
    SemiconjugacyFailure { word: String },
    PeriodicInSplitFiber { word: String, point: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChaosReport {
    pub system: String,
    pub property: Property,
    pub params: Params,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    #[serde(default)]
    pub stats: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

impl ChaosReport {
    /// PASS exactly when `witnesses` is empty.
    pub(crate) fn conclude(
        system: String,
        property: Property,
        params: Params,
        mut witnesses: Vec<Witness>,
        mut stats: BTreeMap<String, serde_json::Value>,
        notes: Vec<String>,
        started: Instant,
    ) -> Self {
        let verdict = if witnesses.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        if !witnesses.is_empty() {
            stats.insert("witness_total".into(), witnesses.len().into());
            witnesses.truncate(MAX_WITNESSES);
        }
        ChaosReport {
            system,
            property,
            params,
            verdict,
            witnesses,
            stats,
            notes,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// The report with timing zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> ChaosReport {
        ChaosReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}
