use std::fmt;

use serde::{Serialize, Serializer};

use super::{Carbon, Energy, EnergyRate, Footprint, FootprintError, FootprintProfile, Interval, Water};

/// Model-side inference energy for `tokens` at `rate` (linear in tokens).
pub fn inference_energy(tokens: u64, rate: EnergyRate) -> Energy {
    let kwh_per_token = rate.get() / 1_000_000.0;
    Energy::from_kwh_unchecked(Interval::point(tokens as f64 * kwh_per_token))
}

/// Facility energy: IT energy × PUE. PUE below 1 is rejected.
pub fn apply_pue(it_energy: Energy, pue: f64) -> Result<Energy, FootprintError> {
    if !(pue.is_finite() && pue >= 1.0) {
        return Err(FootprintError::Invariant {
            field: "pue",
            requirement: "pue >= 1",
            value: pue,
        });
    }
    it_energy.scale(pue)
}

/// Grams of CO₂ for `energy` at `g_per_kwh`; ranges map endpoint-wise.
pub fn co2_from_energy(energy: Energy, g_per_kwh: f64) -> Carbon {
    debug_assert!(g_per_kwh > 0.0);
    Carbon::from_grams_unchecked(energy.as_kwh().map_monotone(|kwh| kwh * g_per_kwh))
}

/// Liters of water for `energy` given a WUE range in L/kWh.
///
/// Endpoints are paired low-with-low and high-with-high, so a point energy
/// yields `[e·wue.lo, e·wue.hi]`.
pub fn water_from_energy(energy: Energy, wue: Interval) -> Water {
    Water::from_liters_unchecked(energy.as_kwh().pairwise_mul(wue))
}

/// Per-prompt CO₂ accounting: `prompts × g_per_prompt`.
pub fn co2_from_prompts(prompts: u64, g_per_prompt: f64) -> Carbon {
    debug_assert!(g_per_prompt >= 0.0);
    Carbon::from_grams_unchecked(Interval::point(prompts as f64 * g_per_prompt))
}

/// A percentage that may be undefined (division by a zero baseline).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Percentage {
    Defined(f64),
    Undefined,
}

impl Percentage {
    pub fn value(self) -> Option<f64> {
        match self {
            Percentage::Defined(v) => Some(v),
            Percentage::Undefined => None,
        }
    }
}

impl fmt::Display for Percentage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Percentage::Defined(v) => write!(f, "{v}%"),
            Percentage::Undefined => f.write_str("undefined ratio"),
        }
    }
}

impl Serialize for Percentage {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Percentage::Defined(v) => serializer.serialize_f64(*v),
            Percentage::Undefined => serializer.serialize_str("undefined"),
        }
    }
}

/// Cost of enabling hidden reasoning tokens for one request.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThinkingDelta {
    pub without_thinking: Footprint,
    pub with_thinking: Footprint,
    pub delta: Footprint,
    /// Token ratio `thinking / base × 100`; equals the energy ratio because
    /// the rate is linear.
    pub pct_increase: Percentage,
}

/// Footprint of `base_tokens` with and without `thinking_tokens` on top.
/// PUE is not applied: the per-token rate is used as quoted.
pub fn thinking_delta(base_tokens: u64, thinking_tokens: u64, profile: &FootprintProfile) -> ThinkingDelta {
    let off = inference_energy(base_tokens, profile.rate());
    let on = inference_energy(base_tokens + thinking_tokens, profile.rate());
    let delta = inference_energy(thinking_tokens, profile.rate());
    let pct_increase = match (base_tokens, thinking_tokens) {
        (_, 0) => Percentage::Defined(0.0),
        (0, _) => Percentage::Undefined,
        (b, t) => Percentage::Defined(t as f64 / b as f64 * 100.0),
    };
    ThinkingDelta {
        without_thinking: Footprint::from_energy(off, profile),
        with_thinking: Footprint::from_energy(on, profile),
        delta: Footprint::from_energy(delta, profile),
        pct_increase,
    }
}
