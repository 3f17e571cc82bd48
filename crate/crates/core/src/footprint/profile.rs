use serde::{Deserialize, Serialize};

use super::{require, FootprintError, Interval};

/// Inference energy per 1,000 tokens, in Wh. Strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct EnergyRate(f64);

impl EnergyRate {
    pub fn wh_per_kilo_token(value: f64) -> Result<Self, FootprintError> {
        if !value.is_finite() {
            return Err(FootprintError::NonFinite("rate_wh_per_ktok"));
        }
        require(value > 0.0, "rate_wh_per_ktok", "rate > 0", value)?;
        Ok(EnergyRate(value))
    }

    /// Convenience for rates quoted per single token in kWh
    /// (0.00003 kWh/token is 30 Wh per 1,000 tokens).
    pub fn kwh_per_token(value: f64) -> Result<Self, FootprintError> {
        EnergyRate::wh_per_kilo_token(value * 1_000_000.0)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Physical conversion constants for one deployment.
///
/// Serialized form:
///
/// ```json
/// {"rate_wh_per_ktok": 0.24, "pue": 1.09, "wue_l_per_kwh": [0.18, 0.3],
///  "emission_factor_g_per_kwh": 288.0, "co2_per_prompt_g": 0.03}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FootprintProfileRepr", into = "FootprintProfileRepr")]
pub struct FootprintProfile {
    rate: EnergyRate,
    pue: f64,
    wue: Interval,
    emission_factor: f64,
    co2_per_prompt_g: f64,
}

/// Unvalidated wire form of [`FootprintProfile`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FootprintProfileRepr {
    pub rate_wh_per_ktok: f64,
    pub pue: f64,
    pub wue_l_per_kwh: [f64; 2],
    pub emission_factor_g_per_kwh: f64,
    pub co2_per_prompt_g: f64,
}

impl FootprintProfile {
    pub const FLASH_PROMPT_2025: &'static str = "flash-prompt-2025";
    pub const USECASE_2025: &'static str = "usecase-2025";

    pub fn new(
        rate: EnergyRate,
        pue: f64,
        wue: Interval,
        emission_factor_g_per_kwh: f64,
        co2_per_prompt_g: f64,
    ) -> Result<Self, FootprintError> {
        require(pue.is_finite() && pue >= 1.0, "pue", "pue >= 1", pue)?;
        require(wue.lo() > 0.0, "wue_l_per_kwh", "wue lo > 0", wue.lo())?;
        require(
            emission_factor_g_per_kwh.is_finite() && emission_factor_g_per_kwh > 0.0,
            "emission_factor_g_per_kwh",
            "emission factor > 0",
            emission_factor_g_per_kwh,
        )?;
        require(
            co2_per_prompt_g.is_finite() && co2_per_prompt_g >= 0.0,
            "co2_per_prompt_g",
            "co2 per prompt >= 0",
            co2_per_prompt_g,
        )?;
        Ok(FootprintProfile {
            rate,
            pue,
            wue,
            emission_factor: emission_factor_g_per_kwh,
            co2_per_prompt_g,
        })
    }

    /// 0.24 Wh per 1,000 tokens, PUE 1.09, WUE 0.18–0.30 L/kWh, 288 gCO₂/kWh,
    /// 0.03 gCO₂ per prompt.
    pub fn flash_prompt_2025() -> Self {
        FootprintProfile {
            rate: EnergyRate(0.24),
            pue: 1.09,
            wue: Interval::new(0.18, 0.30).expect("static range"),
            emission_factor: 288.0,
            co2_per_prompt_g: 0.03,
        }
    }

    /// 0.00003 kWh per token (30 Wh per 1,000 tokens), quoted as an all-in
    /// figure, so PUE is 1.0. Grid and water constants as above.
    pub fn usecase_2025() -> Self {
        FootprintProfile {
            rate: EnergyRate(30.0),
            pue: 1.0,
            ..FootprintProfile::flash_prompt_2025()
        }
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            Self::FLASH_PROMPT_2025 => Some(Self::flash_prompt_2025()),
            Self::USECASE_2025 => Some(Self::usecase_2025()),
            _ => None,
        }
    }

    pub fn rate(&self) -> EnergyRate {
        self.rate
    }

    pub fn pue(&self) -> f64 {
        self.pue
    }

    pub fn wue(&self) -> Interval {
        self.wue
    }

    pub fn emission_factor_g_per_kwh(&self) -> f64 {
        self.emission_factor
    }

    pub fn co2_per_prompt_g(&self) -> f64 {
        self.co2_per_prompt_g
    }
}

impl TryFrom<FootprintProfileRepr> for FootprintProfile {
    type Error = FootprintError;

    fn try_from(repr: FootprintProfileRepr) -> Result<Self, Self::Error> {
        let [lo, hi] = repr.wue_l_per_kwh;
        let wue = Interval::new(lo, hi).map_err(|_| FootprintError::Invariant {
            field: "wue_l_per_kwh",
            requirement: "wue lo <= hi, both finite",
            value: lo,
        })?;
        FootprintProfile::new(
            EnergyRate::wh_per_kilo_token(repr.rate_wh_per_ktok)?,
            repr.pue,
            wue,
            repr.emission_factor_g_per_kwh,
            repr.co2_per_prompt_g,
        )
    }
}

impl From<FootprintProfile> for FootprintProfileRepr {
    fn from(p: FootprintProfile) -> Self {
        FootprintProfileRepr {
            rate_wh_per_ktok: p.rate.0,
            pue: p.pue,
            wue_l_per_kwh: p.wue.into(),
            emission_factor_g_per_kwh: p.emission_factor,
            co2_per_prompt_g: p.co2_per_prompt_g,
        }
    }
}
