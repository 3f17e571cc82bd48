use serde::{Deserialize, Serialize};

use super::workforce::{docs_per_operator_day, operators_required, WorkforceParams, WorkforceRepr};
use super::ScenarioError;
use crate::footprint::{
    apply_pue, co2_from_energy, require, water_from_energy, Carbon, Energy, FootprintError, FootprintProfile, Interval,
    Water,
};
use crate::rounding::round_half_up;

/// One cloud-side processing stage and its energy per document.
///
/// Stage energies are facility-side unless `apply_pue` is set, in which case
/// the value is IT-side and gets expanded by the profile's PUE.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PipelineStageRepr", into = "PipelineStageRepr")]
pub struct PipelineStage {
    name: String,
    energy_wh_per_doc: f64,
    apply_pue: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineStageRepr {
    pub name: String,
    pub energy_wh_per_doc: f64,
    #[serde(default)]
    pub apply_pue: bool,
}

impl PipelineStage {
    pub fn new(name: impl Into<String>, energy_wh_per_doc: f64, apply_pue: bool) -> Result<Self, FootprintError> {
        require(
            energy_wh_per_doc.is_finite() && energy_wh_per_doc >= 0.0,
            "energy_wh_per_doc",
            "stage energy >= 0",
            energy_wh_per_doc,
        )?;
        Ok(PipelineStage {
            name: name.into(),
            energy_wh_per_doc,
            apply_pue,
        })
    }

    /// Stage energy already inclusive of facility overhead.
    pub fn facility(name: impl Into<String>, energy_wh_per_doc: f64) -> Result<Self, FootprintError> {
        PipelineStage::new(name, energy_wh_per_doc, false)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn energy_wh_per_doc(&self) -> f64 {
        self.energy_wh_per_doc
    }

    pub fn apply_pue(&self) -> bool {
        self.apply_pue
    }
}

impl TryFrom<PipelineStageRepr> for PipelineStage {
    type Error = FootprintError;

    fn try_from(r: PipelineStageRepr) -> Result<Self, Self::Error> {
        PipelineStage::new(r.name, r.energy_wh_per_doc, r.apply_pue)
    }
}

impl From<PipelineStage> for PipelineStageRepr {
    fn from(s: PipelineStage) -> Self {
        PipelineStageRepr {
            name: s.name,
            energy_wh_per_doc: s.energy_wh_per_doc,
            apply_pue: s.apply_pue,
        }
    }
}

/// A document-processing setup at daily scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScenarioRepr", into = "ScenarioRepr")]
pub struct Scenario {
    name: String,
    daily_volume: u64,
    workforce: WorkforceParams,
    stages: Vec<PipelineStage>,
    overhead_kwh_per_day: f64,
    operators_override: Option<Interval>,
    energy_decimals: Option<u32>,
}

/// Wire form of [`Scenario`]:
///
/// ```json
/// {"name": "hitl", "daily_volume": 5000,
///  "workforce": {"per_doc_seconds": [30, 120]},
///  "stages": [{"name": "base-model", "energy_wh_per_doc": 0.5, "apply_pue": true}],
///  "overhead_kwh_per_day": 0, "operators_override": [7, 28], "energy_decimals": 1}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioRepr {
    pub name: String,
    #[serde(default = "default_volume")]
    pub daily_volume: u64,
    pub workforce: WorkforceRepr,
    #[serde(default)]
    pub stages: Vec<PipelineStageRepr>,
    #[serde(default)]
    pub overhead_kwh_per_day: f64,
    #[serde(default)]
    pub operators_override: Option<[f64; 2]>,
    /// When set, daily energy is stated at this many decimals (half-up)
    /// and CO₂ and water are derived from the stated figure.
    #[serde(default)]
    pub energy_decimals: Option<u32>,
}

fn default_volume() -> u64 {
    5_000
}

const MAX_ENERGY_DECIMALS: u32 = 12;

impl Scenario {
    pub fn new(name: impl Into<String>, workforce: WorkforceParams) -> Self {
        Scenario {
            name: name.into(),
            daily_volume: default_volume(),
            workforce,
            stages: Vec::new(),
            overhead_kwh_per_day: 0.0,
            operators_override: None,
            energy_decimals: None,
        }
    }

    pub fn with_volume(mut self, daily_volume: u64) -> Self {
        self.daily_volume = daily_volume;
        self
    }

    pub fn with_stage(mut self, stage: PipelineStage) -> Self {
        self.stages.push(stage);
        self
    }

    pub fn with_overhead(mut self, kwh_per_day: f64) -> Result<Self, FootprintError> {
        require(
            kwh_per_day.is_finite() && kwh_per_day >= 0.0,
            "overhead_kwh_per_day",
            "overhead >= 0",
            kwh_per_day,
        )?;
        self.overhead_kwh_per_day = kwh_per_day;
        Ok(self)
    }

    /// Fix the operator head-count instead of deriving it from throughput.
    pub fn with_operators(mut self, operators: Interval) -> Result<Self, FootprintError> {
        for bound in [operators.lo(), operators.hi()] {
            require(
                bound >= 0.0 && bound.fract() == 0.0,
                "operators_override",
                "operator counts are non-negative integers",
                bound,
            )?;
        }
        self.operators_override = Some(operators);
        Ok(self)
    }

    pub fn with_energy_decimals(mut self, decimals: u32) -> Result<Self, FootprintError> {
        require(
            decimals <= MAX_ENERGY_DECIMALS,
            "energy_decimals",
            "energy_decimals <= 12",
            decimals as f64,
        )?;
        self.energy_decimals = Some(decimals);
        Ok(self)
    }

    /// Human-only processing: 5–30 min per document, 70–400 operators,
    /// 2.7 kWh/day overhead, no cloud stages.
    pub fn reference_manual() -> Scenario {
        let workforce = WorkforceParams::with_handling_time(Interval::new(300.0, 1800.0).expect("static"))
            .expect("static workforce");
        Scenario::new("manual", workforce)
            .with_overhead(2.7)
            .and_then(|s| s.with_operators(Interval::new(70.0, 400.0).expect("static")))
            .and_then(|s| s.with_energy_decimals(1))
            .expect("static scenario")
    }

    /// Human-in-the-loop: 30–120 s review per document, 7–28 operators,
    /// one base model stage at 0.50 Wh IT-side.
    pub fn reference_hitl() -> Scenario {
        let workforce =
            WorkforceParams::with_handling_time(Interval::new(30.0, 120.0).expect("static")).expect("static workforce");
        Scenario::new("hitl", workforce)
            .with_stage(PipelineStage::new("base-model", 0.50, true).expect("static"))
            .with_operators(Interval::new(7.0, 28.0).expect("static"))
            .and_then(|s| s.with_energy_decimals(1))
            .expect("static scenario")
    }

    /// HITL plus a parser agent (0.3 Wh) and a verifier agent (0.5 Wh).
    pub fn reference_agentic() -> Scenario {
        let mut s = Scenario::reference_hitl();
        s.name = "agentic".into();
        s.with_stage(PipelineStage::facility("parser-agent", 0.3).expect("static"))
            .with_stage(PipelineStage::facility("verifier-agent", 0.5).expect("static"))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn daily_volume(&self) -> u64 {
        self.daily_volume
    }

    pub fn workforce(&self) -> &WorkforceParams {
        &self.workforce
    }

    pub fn stages(&self) -> &[PipelineStage] {
        &self.stages
    }

    pub fn overhead_kwh_per_day(&self) -> f64 {
        self.overhead_kwh_per_day
    }

    pub fn operators_override(&self) -> Option<Interval> {
        self.operators_override
    }

    pub fn energy_decimals(&self) -> Option<u32> {
        self.energy_decimals
    }

    /// Operator head-count: the override when present, else the
    /// throughput formula.
    pub fn operators(&self) -> Result<Interval, ScenarioError> {
        match self.operators_override {
            Some(ops) => Ok(ops),
            None => operators_required(
                self.daily_volume,
                docs_per_operator_day(&self.workforce),
                self.workforce.buffer(),
            ),
        }
    }
}

impl TryFrom<ScenarioRepr> for Scenario {
    type Error = FootprintError;

    fn try_from(r: ScenarioRepr) -> Result<Self, Self::Error> {
        let mut s = Scenario::new(r.name, WorkforceParams::try_from(r.workforce)?)
            .with_volume(r.daily_volume)
            .with_overhead(r.overhead_kwh_per_day)?;
        for stage in r.stages {
            s = s.with_stage(PipelineStage::try_from(stage)?);
        }
        if let Some([lo, hi]) = r.operators_override {
            let ops = Interval::new(lo, hi).map_err(|_| FootprintError::Invariant {
                field: "operators_override",
                requirement: "operators_override lo <= hi",
                value: lo,
            })?;
            s = s.with_operators(ops)?;
        }
        if let Some(d) = r.energy_decimals {
            s = s.with_energy_decimals(d)?;
        }
        Ok(s)
    }
}

impl From<Scenario> for ScenarioRepr {
    fn from(s: Scenario) -> Self {
        ScenarioRepr {
            name: s.name,
            daily_volume: s.daily_volume,
            workforce: s.workforce.into(),
            stages: s.stages.into_iter().map(Into::into).collect(),
            overhead_kwh_per_day: s.overhead_kwh_per_day,
            operators_override: s.operators_override.map(Into::into),
            energy_decimals: s.energy_decimals,
        }
    }
}

/// Daily totals for one scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DailyFootprint {
    pub scenario: String,
    pub operators: Interval,
    /// kWh per day.
    pub energy: Energy,
    pub co2: Carbon,
    pub water: Water,
    /// Cloud-side kWh per document; zero when the scenario has no stages.
    pub energy_per_doc_kwh: f64,
}

/// Cloud energy per document in kWh: the sum of stage energies, with
/// IT-side stages expanded by `pue`.
pub fn cloud_energy_per_doc(stages: &[PipelineStage], pue: f64) -> Result<f64, FootprintError> {
    stages.iter().try_fold(0.0, |total, stage| {
        let it = Energy::wh(stage.energy_wh_per_doc)?;
        let facility = if stage.apply_pue { apply_pue(it, pue)? } else { it };
        Ok(total + facility.as_kwh().lo())
    })
}

pub fn evaluate_scenario(scenario: &Scenario, profile: &FootprintProfile) -> Result<DailyFootprint, ScenarioError> {
    let operators = scenario.operators()?;
    let per_doc = cloud_energy_per_doc(&scenario.stages, profile.pue())?;
    let cloud_daily = per_doc * scenario.daily_volume as f64;

    let laptops = operators.scale(scenario.workforce.laptop_kwh_per_day())?;
    let mut energy = laptops + Interval::point(cloud_daily) + Interval::point(scenario.overhead_kwh_per_day);
    if let Some(decimals) = scenario.energy_decimals {
        energy = Interval::new(
            round_half_up(energy.lo(), decimals),
            round_half_up(energy.hi(), decimals),
        )?;
    }
    let energy = Energy::kwh_range(energy)?;

    Ok(DailyFootprint {
        scenario: scenario.name.clone(),
        operators,
        energy,
        co2: co2_from_energy(energy, profile.emission_factor_g_per_kwh()),
        water: water_from_energy(energy, profile.wue()),
        energy_per_doc_kwh: per_doc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile() -> FootprintProfile {
        FootprintProfile::flash_prompt_2025()
    }

    fn close(a: Interval, lo: f64, hi: f64, tol: f64) -> bool {
        (a.lo() - lo).abs() <= tol && (a.hi() - hi).abs() <= tol
    }

    fn exact(mut s: Scenario) -> Scenario {
        s.energy_decimals = None;
        s
    }

    #[test]
    fn per_doc_energies() {
        let base = [PipelineStage::new("base", 0.50, true).unwrap()];
        assert!((cloud_energy_per_doc(&base, 1.09).unwrap() - 0.000545).abs() < 1e-12);

        let stated = [PipelineStage::facility("base", 0.545).unwrap()];
        assert!((cloud_energy_per_doc(&stated, 1.09).unwrap() - 0.000545).abs() < 1e-12);

        let agentic = Scenario::reference_agentic();
        let e = cloud_energy_per_doc(agentic.stages(), 1.09).unwrap();
        assert!((e - 0.001345).abs() < 1e-12);

        assert_eq!(cloud_energy_per_doc(&[], 1.09).unwrap(), 0.0);
    }

    #[test]
    fn manual_energy() {
        let f = evaluate_scenario(&exact(Scenario::reference_manual()), &profile()).unwrap();
        assert!(close(f.energy.as_kwh(), 36.3, 194.7, 1e-9));
        assert_eq!(f.energy_per_doc_kwh, 0.0);
    }

    #[test]
    fn hitl_energy_full_precision() {
        let f = evaluate_scenario(&exact(Scenario::reference_hitl()), &profile()).unwrap();
        assert!(close(f.energy.as_kwh(), 6.085, 16.165, 1e-9));
    }

    #[test]
    fn hitl_energy_stated_at_one_decimal() {
        let f = evaluate_scenario(&Scenario::reference_hitl(), &profile()).unwrap();
        assert_eq!(f.energy.as_kwh(), Interval::new(6.1, 16.2).unwrap());
        assert!(close(f.water.as_liters(), 1.098, 4.86, 1e-12));
    }

    #[test]
    fn agentic_energy_near_reference_row() {
        let f = evaluate_scenario(&exact(Scenario::reference_agentic()), &profile()).unwrap();
        let e = f.energy.as_kwh();
        assert!(close(e, 10.085, 20.165, 1e-9));
        assert!((e.lo() - 9.8).abs() / 9.8 <= 0.05);
        assert!((e.hi() - 20.5).abs() / 20.5 <= 0.05);
    }

    #[test]
    fn zero_volume_zero_footprint() {
        let s = Scenario::new(
            "idle",
            WorkforceParams::with_handling_time(Interval::point(60.0)).unwrap(),
        )
        .with_volume(0)
        .with_operators(Interval::ZERO)
        .unwrap();
        let f = evaluate_scenario(&s, &profile()).unwrap();
        assert_eq!(f.energy, Energy::ZERO);
        assert_eq!(f.co2, Carbon::ZERO);
        assert_eq!(f.water, Water::ZERO);
    }

    #[test]
    fn override_matches_formula_when_equal() {
        let formula = exact(Scenario::reference_hitl());
        let mut formula_only = formula.clone();
        formula_only.operators_override = None;
        assert_eq!(formula_only.operators().unwrap(), Interval::new(7.0, 28.0).unwrap());
        let a = evaluate_scenario(&formula, &profile()).unwrap();
        let b = evaluate_scenario(&formula_only, &profile()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn co2_rederivable_from_energy() {
        for s in [
            Scenario::reference_manual(),
            Scenario::reference_hitl(),
            Scenario::reference_agentic(),
        ] {
            let f = evaluate_scenario(&s, &profile()).unwrap();
            let e = f.energy.as_kwh();
            let kg = f.co2.as_kilograms();
            assert_eq!(kg.lo(), e.lo() * 288.0 / 1000.0);
            assert_eq!(kg.hi(), e.hi() * 288.0 / 1000.0);
        }
    }

    #[test]
    fn fractional_override_rejected() {
        let s = Scenario::reference_hitl();
        assert!(s.with_operators(Interval::new(7.5, 28.0).unwrap()).is_err());
    }

    #[test]
    fn json_round_trip_and_defaults() {
        let s = Scenario::reference_agentic();
        let text = serde_json::to_string(&s).unwrap();
        let back: Scenario = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);

        let minimal: Scenario =
            serde_json::from_str(r#"{"name":"m","workforce":{"per_doc_seconds":[300,1800]}}"#).unwrap();
        assert_eq!(minimal.daily_volume(), 5_000);
        assert_eq!(minimal.operators_override(), None);
        assert!(minimal.stages().is_empty());
    }
}
