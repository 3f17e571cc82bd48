#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use ecodoc_core::footprint::{Carbon, EnergyRate, FootprintProfile};
use ecodoc_core::report::Config;
use ecodoc_core::scenario::{DailyFootprint, PipelineStage, Scenario, WorkforceParams};
use ecodoc_core::{Energy, Interval, Water};
use proptest::prelude::*;

pub fn repo_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

pub fn read_repo(rel: &str) -> String {
    std::fs::read_to_string(repo_path(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn iv(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

/// Daily footprint built from already-rounded published figures
/// (energy kWh, CO₂ kg, water L).
pub fn published(name: &str, energy: [f64; 2], co2_kg: [f64; 2], water: [f64; 2]) -> DailyFootprint {
    DailyFootprint {
        scenario: name.to_string(),
        operators: Interval::ZERO,
        energy: Energy::kwh_range(iv(energy[0], energy[1])).unwrap(),
        co2: Carbon::grams_range(iv(co2_kg[0] * 1000.0, co2_kg[1] * 1000.0)).unwrap(),
        water: Water::liters_range(iv(water[0], water[1])).unwrap(),
        energy_per_doc_kwh: 0.0,
    }
}

pub fn published_manual() -> DailyFootprint {
    published("manual", [36.3, 194.7], [10.5, 56.1], [35.1, 58.4])
}

pub fn published_hitl() -> DailyFootprint {
    published("hitl", [6.1, 16.2], [1.8, 4.7], [1.1, 4.9])
}

pub fn published_agentic() -> DailyFootprint {
    published("agentic", [9.8, 20.5], [2.8, 5.9], [1.8, 6.2])
}

pub fn any_interval() -> impl Strategy<Value = Interval> {
    (-1e6..1e6f64, 0.0..1e6f64).prop_map(|(lo, w)| iv(lo, lo + w))
}

pub fn non_negative_interval() -> impl Strategy<Value = Interval> {
    (0.0..1e6f64, 0.0..1e6f64).prop_map(|(lo, w)| iv(lo, lo + w))
}

pub fn any_profile() -> impl Strategy<Value = FootprintProfile> {
    (
        0.01..100.0f64,
        1.0..2.0f64,
        0.01..1.0f64,
        0.0..1.0f64,
        1.0..1000.0f64,
        0.0..1.0f64,
    )
        .prop_map(|(rate, pue, wlo, ww, ef, cpp)| {
            FootprintProfile::new(
                EnergyRate::wh_per_kilo_token(rate).unwrap(),
                pue,
                iv(wlo, wlo + ww),
                ef,
                cpp,
            )
            .unwrap()
        })
}

fn any_stage() -> impl Strategy<Value = (f64, bool)> {
    (0.0..5.0f64, any::<bool>())
}

pub fn any_scenario(name: String) -> impl Strategy<Value = Scenario> {
    (
        1.0..3600.0f64,
        0.0..3600.0f64,
        0u64..100_000,
        prop::collection::vec(any_stage(), 0..4),
        0.0..10.0f64,
        prop::option::of((0u32..100, 0u32..100)),
        prop::option::of(0u32..=6),
    )
        .prop_map(move |(lo, w, volume, stages, overhead, ops, decimals)| {
            let mut s = Scenario::new(
                name.clone(),
                WorkforceParams::with_handling_time(iv(lo, lo + w)).unwrap(),
            )
            .with_volume(volume)
            .with_overhead(overhead)
            .unwrap();
            for (i, (wh, pue)) in stages.into_iter().enumerate() {
                s = s.with_stage(PipelineStage::new(format!("stage-{i}"), wh, pue).unwrap());
            }
            if let Some((a, extra)) = ops {
                s = s.with_operators(iv(a as f64, (a + extra) as f64)).unwrap();
            }
            if let Some(d) = decimals {
                s = s.with_energy_decimals(d).unwrap();
            }
            s
        })
}

pub fn any_config() -> impl Strategy<Value = Config> {
    (
        prop::collection::vec(any_profile(), 1..4),
        (1usize..5).prop_flat_map(|n| (0..n).map(|i| any_scenario(format!("s{i}"))).collect::<Vec<_>>()),
        any::<bool>(),
    )
        .prop_map(|(profiles, scenarios, with_default)| {
            let profiles: BTreeMap<String, FootprintProfile> = profiles
                .into_iter()
                .enumerate()
                .map(|(i, p)| (format!("p{i}"), p))
                .collect();
            Config {
                default_profile: with_default.then(|| "p0".to_string()),
                profiles,
                scenarios,
            }
        })
}
