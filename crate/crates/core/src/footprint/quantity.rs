//! Unit-carrying wrappers. The unit is fixed by the type: energy in kWh,
//! carbon in grams CO₂, water in liters. Each may be a point or a range.

use std::ops::Add;

use serde::Serialize;

use super::{co2_from_energy, water_from_energy, FootprintError, FootprintProfile, Interval};

fn non_negative(iv: Interval, what: &'static str) -> Result<Interval, FootprintError> {
    if iv.is_non_negative() {
        Ok(iv)
    } else {
        Err(FootprintError::Invariant {
            field: what,
            requirement: "quantity >= 0",
            value: iv.lo(),
        })
    }
}

fn point(x: f64, what: &'static str) -> Result<Interval, FootprintError> {
    if !x.is_finite() {
        return Err(FootprintError::NonFinite(what));
    }
    non_negative(Interval::point(x), what)
}

/// Energy in kilowatt-hours.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Energy {
    kwh: Interval,
}

impl Energy {
    pub const ZERO: Energy = Energy { kwh: Interval::ZERO };

    pub fn kwh(value: f64) -> Result<Self, FootprintError> {
        point(value, "energy").map(|kwh| Energy { kwh })
    }

    pub fn wh(value: f64) -> Result<Self, FootprintError> {
        Energy::kwh(value / 1000.0)
    }

    pub fn kwh_range(range: Interval) -> Result<Self, FootprintError> {
        non_negative(range, "energy").map(|kwh| Energy { kwh })
    }

    pub(crate) fn from_kwh_unchecked(kwh: Interval) -> Self {
        debug_assert!(kwh.is_non_negative());
        Energy { kwh }
    }

    pub fn as_kwh(&self) -> Interval {
        self.kwh
    }

    pub fn as_wh(&self) -> Interval {
        self.kwh.map_monotone(|x| x * 1000.0)
    }

    pub fn scale(self, k: f64) -> Result<Self, FootprintError> {
        self.kwh.scale(k).map(|kwh| Energy { kwh })
    }
}

impl Add for Energy {
    type Output = Energy;

    fn add(self, rhs: Energy) -> Energy {
        Energy {
            kwh: self.kwh + rhs.kwh,
        }
    }
}

/// Carbon dioxide mass in grams CO₂-equivalent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Carbon {
    g: Interval,
}

impl Carbon {
    pub const ZERO: Carbon = Carbon { g: Interval::ZERO };

    pub fn grams(value: f64) -> Result<Self, FootprintError> {
        point(value, "carbon").map(|g| Carbon { g })
    }

    pub fn grams_range(range: Interval) -> Result<Self, FootprintError> {
        non_negative(range, "carbon").map(|g| Carbon { g })
    }

    pub(crate) fn from_grams_unchecked(g: Interval) -> Self {
        debug_assert!(g.is_non_negative());
        Carbon { g }
    }

    pub fn as_grams(&self) -> Interval {
        self.g
    }

    pub fn as_kilograms(&self) -> Interval {
        self.g.map_monotone(|x| x / 1000.0)
    }
}

impl Add for Carbon {
    type Output = Carbon;

    fn add(self, rhs: Carbon) -> Carbon {
        Carbon { g: self.g + rhs.g }
    }
}

/// Water volume in liters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Water {
    l: Interval,
}

impl Water {
    pub const ZERO: Water = Water { l: Interval::ZERO };

    pub fn liters(value: f64) -> Result<Self, FootprintError> {
        point(value, "water").map(|l| Water { l })
    }

    pub fn liters_range(range: Interval) -> Result<Self, FootprintError> {
        non_negative(range, "water").map(|l| Water { l })
    }

    pub(crate) fn from_liters_unchecked(l: Interval) -> Self {
        debug_assert!(l.is_non_negative());
        Water { l }
    }

    pub fn as_liters(&self) -> Interval {
        self.l
    }

    pub fn as_milliliters(&self) -> Interval {
        self.l.map_monotone(|x| x * 1000.0)
    }
}

impl Add for Water {
    type Output = Water;

    fn add(self, rhs: Water) -> Water {
        Water { l: self.l + rhs.l }
    }
}

/// The (energy, CO₂, water) triple attributed to a workload.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Footprint {
    pub energy: Energy,
    pub co2: Carbon,
    pub water: Water,
}

impl Footprint {
    pub const ZERO: Footprint = Footprint {
        energy: Energy::ZERO,
        co2: Carbon::ZERO,
        water: Water::ZERO,
    };

    /// Derive CO₂ and water from an energy figure using the profile's
    /// emission factor and WUE range.
    pub fn from_energy(energy: Energy, profile: &FootprintProfile) -> Footprint {
        Footprint {
            energy,
            co2: co2_from_energy(energy, profile.emission_factor_g_per_kwh()),
            water: water_from_energy(energy, profile.wue()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_views() {
        let e = Energy::wh(4.32).unwrap();
        assert!((e.as_kwh().lo() - 0.00432).abs() < 1e-15);
        assert!((e.as_wh().hi() - 4.32).abs() < 1e-12);

        let c = Carbon::grams(56_073.6).unwrap();
        assert!((c.as_kilograms().lo() - 56.0736).abs() < 1e-12);

        let w = Water::liters(0.00078).unwrap();
        assert!((w.as_milliliters().lo() - 0.78).abs() < 1e-12);
    }

    #[test]
    fn negative_quantities_rejected() {
        assert!(Energy::kwh(-1.0).is_err());
        assert!(Carbon::grams(-0.1).is_err());
        assert!(Water::liters_range(Interval::new(-1.0, 1.0).unwrap()).is_err());
        assert!(Energy::kwh(f64::NAN).is_err());
    }

    #[test]
    fn energy_sum() {
        let a = Energy::kwh_range(Interval::new(3.36, 13.44).unwrap()).unwrap();
        let b = Energy::kwh(2.725).unwrap();
        let s = (a + b).as_kwh();
        assert!((s.lo() - 6.085).abs() < 1e-12 && (s.hi() - 16.165).abs() < 1e-12);
    }
}
