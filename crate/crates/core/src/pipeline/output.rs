use std::fmt::Write;

use rust_decimal::Decimal;

use super::LineItem;

fn price(d: Decimal) -> String {
    format!("{:.2}", d.round_dp(2))
}

fn quantity(d: Decimal) -> String {
    d.normalize().to_string()
}

/// Extraction output as a JSON array with a fixed field order and
/// two-decimal prices. Quantities keep their significant digits.
pub fn render_output_json(items: &[LineItem]) -> String {
    if items.is_empty() {
        return "[]\n".to_string();
    }
    let mut out = String::from("[\n");
    for (i, item) in items.iter().enumerate() {
        let id = serde_json::to_string(&item.item_id).expect("string serializes");
        let _ = write!(
            out,
            "  {{\n    \"item_id\": {id},\n    \"quantity\": {},\n    \"unit_price\": {},\n    \"total_price\": {},\n    \"currency\": \"{}\"\n  }}",
            quantity(item.quantity),
            price(item.unit_price),
            price(item.total_price),
            item.currency,
        );
        out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
    }
    out.push_str("]\n");
    out
}

#[cfg(test)]
mod tests {
    use std::str::FromStr;

    use super::*;

    #[test]
    fn layout() {
        let item = LineItem {
            item_id: "ITEM 03".into(),
            quantity: Decimal::from_str("40").unwrap(),
            unit_price: Decimal::from_str("85").unwrap(),
            total_price: Decimal::from_str("3400.0").unwrap(),
            currency: "EUR".parse().unwrap(),
        };
        let text = render_output_json(&[item]);
        assert_eq!(
            text,
            "[\n  {\n    \"item_id\": \"ITEM 03\",\n    \"quantity\": 40,\n    \"unit_price\": 85.00,\n    \"total_price\": 3400.00,\n    \"currency\": \"EUR\"\n  }\n]\n"
        );
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed[0]["total_price"], 3400.0);
    }

    #[test]
    fn fractional_quantity_and_empty() {
        assert_eq!(quantity(Decimal::from_str("16.50").unwrap()), "16.5");
        assert_eq!(render_output_json(&[]), "[]\n");
    }
}
