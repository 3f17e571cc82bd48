use rust_decimal::Decimal;
use serde::Serialize;

use super::LineItem;

/// Default arithmetic tolerance: one cent.
pub const DEFAULT_TOLERANCE: Decimal = Decimal::from_parts(1, 0, 0, false, 2);

/// Outcome of the `quantity × unit_price = total_price` check for one row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ItemCheck {
    pub item_id: String,
    pub ok: bool,
    /// `total_price − quantity × unit_price`: positive when the stated total
    /// is too high.
    pub delta: Decimal,
}

pub fn verify_items(items: &[LineItem], tolerance: Decimal) -> Vec<ItemCheck> {
    items
        .iter()
        .map(|item| {
            let delta = item.total_price - item.quantity * item.unit_price;
            ItemCheck {
                item_id: item.item_id.clone(),
                ok: delta.abs() <= tolerance,
                delta,
            }
        })
        .collect()
}
