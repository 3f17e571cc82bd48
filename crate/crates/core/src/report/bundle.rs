use serde::Serialize;
use serde_json::json;

use super::deviations::{self, Deviation};
use super::{canonical_digest, Config, ReportError};
use crate::pipeline::ExtractionResult;
use crate::scenario::{compare_scenarios, evaluate_scenario, incremental_cost_by_metric, DailyFootprint, MetricRanges};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BundleMetadata {
    pub profile: String,
    /// Digest of every input that shaped the bundle.
    pub config_hash: String,
    pub timestamp_unix: u64,
}

/// Reduction of `candidate` relative to `baseline`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub baseline: String,
    pub candidate: String,
    pub reduction: MetricRanges,
}

/// Increase of `candidate` over `reference`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Increment {
    pub reference: String,
    pub candidate: String,
    pub increase: MetricRanges,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportBundle {
    pub metadata: BundleMetadata,
    pub scenarios: Vec<DailyFootprint>,
    pub comparisons: Vec<Comparison>,
    pub increments: Vec<Increment>,
    pub usecase: Option<ExtractionResult>,
    pub deviations: Vec<Deviation>,
}

impl ReportBundle {
    pub fn empty() -> ReportBundle {
        ReportBundle {
            metadata: BundleMetadata {
                profile: String::new(),
                config_hash: canonical_digest(&serde_json::Value::Null),
                timestamp_unix: 0,
            },
            scenarios: Vec::new(),
            comparisons: Vec::new(),
            increments: Vec::new(),
            usecase: None,
            deviations: Vec::new(),
        }
    }

    /// Evaluate every scenario in `config` and compare each non-baseline
    /// scenario against `baseline`. Consecutive non-baseline scenarios
    /// (in config order) also get an increment record.
    pub fn build(
        config: &Config,
        profile: Option<&str>,
        baseline: &str,
        usecase: Option<ExtractionResult>,
        timestamp_unix: u64,
    ) -> Result<ReportBundle, ReportError> {
        let (profile_name, profile) = config.profile(profile)?;
        if config.scenarios.is_empty() {
            return Err(ReportError::NoScenarios);
        }
        let scenarios = config
            .scenarios
            .iter()
            .map(|s| evaluate_scenario(s, profile))
            .collect::<Result<Vec<_>, _>>()?;
        let base = scenarios
            .iter()
            .find(|f| f.scenario == baseline)
            .ok_or_else(|| ReportError::UnknownScenario(baseline.to_string()))?;

        let candidates: Vec<&DailyFootprint> = scenarios.iter().filter(|f| f.scenario != baseline).collect();
        let comparisons = candidates
            .iter()
            .map(|c| {
                Ok(Comparison {
                    baseline: base.scenario.clone(),
                    candidate: c.scenario.clone(),
                    reduction: compare_scenarios(base, c)?,
                })
            })
            .collect::<Result<Vec<_>, ReportError>>()?;
        let increments = candidates
            .windows(2)
            .map(|pair| {
                Ok(Increment {
                    reference: pair[0].scenario.clone(),
                    candidate: pair[1].scenario.clone(),
                    increase: incremental_cost_by_metric(pair[0], pair[1])?,
                })
            })
            .collect::<Result<Vec<_>, ReportError>>()?;

        let config_hash = canonical_digest(&json!({
            "config": serde_json::to_value(config).expect("config serializes"),
            "profile": profile_name,
            "baseline": baseline,
            "usecase": usecase.as_ref().map(|u| json!({
                "ledger": u.ledger,
                "output": u.output_json,
            })),
        }));

        let deviations = deviations::applicable(scenarios.iter().map(|s| s.scenario.as_str()));

        Ok(ReportBundle {
            metadata: BundleMetadata {
                profile: profile_name.to_string(),
                config_hash,
                timestamp_unix,
            },
            scenarios,
            comparisons,
            increments,
            usecase,
            deviations,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("bundle serializes");
        s.push('\n');
        s
    }
}
