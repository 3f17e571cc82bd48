//! Physical quantities and the token → energy → {CO₂, water} chain.

mod convert;
mod interval;
mod profile;
mod quantity;

pub use convert::{
    apply_pue, co2_from_energy, co2_from_prompts, inference_energy, thinking_delta, water_from_energy, Percentage,
    ThinkingDelta,
};
pub use interval::Interval;
pub use profile::{EnergyRate, FootprintProfile, FootprintProfileRepr};
pub use quantity::{Carbon, Energy, Footprint, Water};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FootprintError {
    #[error("interval bounds out of order: lo {lo} > hi {hi}")]
    InvertedInterval { lo: f64, hi: f64 },

    #[error("{0} must be a finite number")]
    NonFinite(&'static str),

    #[error("scale factor must be >= 0, got {0}")]
    NegativeScale(f64),

    /// A domain invariant failed. `field` is the JSON key of the offending
    /// value so callers can build a pointer to it.
    #[error("invariant violated: {requirement} (got {value})")]
    Invariant {
        field: &'static str,
        requirement: &'static str,
        value: f64,
    },
}

pub(crate) fn require(
    ok: bool,
    field: &'static str,
    requirement: &'static str,
    value: f64,
) -> Result<(), FootprintError> {
    if ok {
        Ok(())
    } else {
        Err(FootprintError::Invariant {
            field,
            requirement,
            value,
        })
    }
}
