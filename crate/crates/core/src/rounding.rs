//! Decimal half-up rounding used for presentation and for quantizing
//! stated values.

use std::str::FromStr;

use rust_decimal::{Decimal, RoundingStrategy};

/// Round `x` half away from zero at `decimals` places, operating on the
/// shortest decimal string that round-trips to `x`. So 16.165 becomes 16.2
/// and 2.675 becomes 2.68 at two places, as the digits read.
pub fn round_half_up(x: f64, decimals: u32) -> f64 {
    if !x.is_finite() {
        return x;
    }
    match Decimal::from_str(&x.to_string()) {
        Ok(d) => d
            .round_dp_with_strategy(decimals, RoundingStrategy::MidpointAwayFromZero)
            .try_into()
            .unwrap_or(x),
        // Beyond 28 significant digits; binary rounding is adequate there.
        Err(_) => {
            let scale = 10f64.powi(decimals as i32);
            (x * scale).round() / scale
        }
    }
}

/// Fixed-point text for `x` at `decimals` places after half-up rounding.
pub fn format_fixed(x: f64, decimals: u32) -> String {
    let r = round_half_up(x, decimals);
    let s = format!("{:.*}", decimals as usize, r);
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}
