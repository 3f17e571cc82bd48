use serde::{Deserialize, Serialize};

use super::ScenarioError;
use crate::footprint::{require, FootprintError, Interval};

/// Shift and workstation assumptions for the human operators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WorkforceRepr", into = "WorkforceRepr")]
pub struct WorkforceParams {
    shift_hours: f64,
    productive_hours: f64,
    buffer: f64,
    per_doc_seconds: Interval,
    laptop_kwh_per_day: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkforceRepr {
    #[serde(default = "defaults::shift_hours")]
    pub shift_hours: f64,
    #[serde(default = "defaults::productive_hours")]
    pub productive_hours: f64,
    #[serde(default = "defaults::buffer")]
    pub buffer: f64,
    pub per_doc_seconds: [f64; 2],
    #[serde(default = "defaults::laptop_kwh_per_day")]
    pub laptop_kwh_per_day: f64,
}

mod defaults {
    pub fn shift_hours() -> f64 {
        8.0
    }
    pub fn productive_hours() -> f64 {
        7.0
    }
    pub fn buffer() -> f64 {
        1.15
    }
    /// 60 Wh/h over an 8-hour shift.
    pub fn laptop_kwh_per_day() -> f64 {
        0.48
    }
}

impl WorkforceParams {
    pub fn new(
        shift_hours: f64,
        productive_hours: f64,
        buffer: f64,
        per_doc_seconds: Interval,
        laptop_kwh_per_day: f64,
    ) -> Result<Self, FootprintError> {
        require(
            shift_hours.is_finite() && shift_hours > 0.0,
            "shift_hours",
            "shift_hours > 0",
            shift_hours,
        )?;
        require(
            productive_hours.is_finite() && productive_hours >= 0.0 && productive_hours <= shift_hours,
            "productive_hours",
            "0 <= productive_hours <= shift_hours",
            productive_hours,
        )?;
        require(buffer.is_finite() && buffer >= 1.0, "buffer", "buffer >= 1", buffer)?;
        require(
            per_doc_seconds.lo() > 0.0,
            "per_doc_seconds",
            "per-document time > 0",
            per_doc_seconds.lo(),
        )?;
        require(
            laptop_kwh_per_day.is_finite() && laptop_kwh_per_day >= 0.0,
            "laptop_kwh_per_day",
            "laptop_kwh_per_day >= 0",
            laptop_kwh_per_day,
        )?;
        Ok(WorkforceParams {
            shift_hours,
            productive_hours,
            buffer,
            per_doc_seconds,
            laptop_kwh_per_day,
        })
    }

    /// Default shift (8 h, 7 productive, 15% buffer, 0.48 kWh/day laptop)
    /// with the given per-document handling time in seconds.
    pub fn with_handling_time(per_doc_seconds: Interval) -> Result<Self, FootprintError> {
        WorkforceParams::new(
            defaults::shift_hours(),
            defaults::productive_hours(),
            defaults::buffer(),
            per_doc_seconds,
            defaults::laptop_kwh_per_day(),
        )
    }

    pub fn shift_hours(&self) -> f64 {
        self.shift_hours
    }

    pub fn productive_hours(&self) -> f64 {
        self.productive_hours
    }

    pub fn buffer(&self) -> f64 {
        self.buffer
    }

    pub fn per_doc_seconds(&self) -> Interval {
        self.per_doc_seconds
    }

    pub fn laptop_kwh_per_day(&self) -> f64 {
        self.laptop_kwh_per_day
    }
}

impl TryFrom<WorkforceRepr> for WorkforceParams {
    type Error = FootprintError;

    fn try_from(r: WorkforceRepr) -> Result<Self, Self::Error> {
        let [lo, hi] = r.per_doc_seconds;
        let per_doc = Interval::new(lo, hi).map_err(|_| FootprintError::Invariant {
            field: "per_doc_seconds",
            requirement: "per_doc_seconds lo <= hi, both finite",
            value: lo,
        })?;
        WorkforceParams::new(
            r.shift_hours,
            r.productive_hours,
            r.buffer,
            per_doc,
            r.laptop_kwh_per_day,
        )
    }
}

impl From<WorkforceParams> for WorkforceRepr {
    fn from(w: WorkforceParams) -> Self {
        WorkforceRepr {
            shift_hours: w.shift_hours,
            productive_hours: w.productive_hours,
            buffer: w.buffer,
            per_doc_seconds: w.per_doc_seconds.into(),
            laptop_kwh_per_day: w.laptop_kwh_per_day,
        }
    }
}

// Absorbs representation error in quotients that are mathematically whole,
// e.g. 25200 / 1800 landing at 13.999999999999998.
const WHOLE_SLACK: f64 = 1e-9;

/// Documents one operator completes per day:
/// `[⌊productive_s / slowest⌋, ⌊productive_s / fastest⌋]`.
pub fn docs_per_operator_day(w: &WorkforceParams) -> Interval {
    let productive_s = w.productive_hours * 3600.0;
    let per_doc = w.per_doc_seconds;
    let slow = (productive_s / per_doc.hi() + WHOLE_SLACK).floor();
    let fast = (productive_s / per_doc.lo() + WHOLE_SLACK).floor();
    Interval::new(slow, fast).expect("slower handling never yields more documents")
}

/// Operators needed for `volume` documents per day:
/// `[⌈volume / throughput.hi × buffer⌉, ⌈volume / throughput.lo × buffer⌉]`.
pub fn operators_required(volume: u64, throughput: Interval, buffer: f64) -> Result<Interval, ScenarioError> {
    if throughput.lo() < 1.0 {
        return Err(ScenarioError::ZeroThroughput);
    }
    if !(buffer.is_finite() && buffer >= 1.0) {
        return Err(FootprintError::Invariant {
            field: "buffer",
            requirement: "buffer >= 1",
            value: buffer,
        }
        .into());
    }
    let need = |per_operator: f64| (volume as f64 / per_operator * buffer - WHOLE_SLACK).ceil().max(0.0);
    Ok(Interval::new(need(throughput.hi()), need(throughput.lo()))?)
}
