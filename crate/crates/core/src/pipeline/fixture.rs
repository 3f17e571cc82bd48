//! Synthetic invoices in the line-item grammar, for tests and demos.

use std::fmt::Write;

use rust_decimal::{Decimal, RoundingStrategy};

use super::{CurrencyCode, LineItem};

/// Item whose total is `quantity × unit_price` rounded to cents.
pub fn consistent_item(number: u32, quantity: Decimal, unit_price: Decimal, currency: CurrencyCode) -> LineItem {
    LineItem {
        item_id: format!("ITEM {number:02}"),
        quantity,
        unit_price,
        total_price: (quantity * unit_price).round_dp_with_strategy(2, RoundingStrategy::MidpointAwayFromZero),
        currency,
    }
}

/// `12345.6` → `12,345.60`.
pub fn grouped(amount: Decimal) -> String {
    let plain = format!("{:.2}", amount.round_dp(2));
    let (int_part, frac) = plain.split_once('.').unwrap_or((&plain, "00"));
    let mut out = String::new();
    for (i, ch) in int_part.chars().enumerate() {
        if i > 0 && (int_part.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(ch);
    }
    format!("{out}.{frac}")
}

/// Render a proforma invoice around `items`. Amounts on odd rows use comma
/// grouping, even rows plain digits, so both number styles are exercised.
pub fn render_invoice(items: &[LineItem]) -> String {
    let mut doc = String::from(
        "PROFORMA INVOICE PF-TEST\n\
         Seller: Example Automation S.r.l.\n\
         Buyer: Example Logistics GmbH\n\n\
         ID | Description | Qty | Unit price | Total | Currency\n",
    );
    for (i, item) in items.iter().enumerate() {
        let amount = |d: Decimal| {
            if i % 2 == 0 {
                grouped(d)
            } else {
                format!("{:.2}", d.round_dp(2))
            }
        };
        let _ = writeln!(
            doc,
            "{} | Line item {} | {} | {} | {} | {}",
            item.item_id,
            i + 1,
            item.quantity.normalize(),
            amount(item.unit_price),
            amount(item.total_price),
            item.currency
        );
    }
    doc.push_str("\nPayment terms: 30 days net.\n");
    doc
}

#[cfg(test)]
mod tests {
    use std::str::FromStr;

    use super::*;

    #[test]
    fn grouping() {
        let d = |s| Decimal::from_str(s).unwrap();
        assert_eq!(grouped(d("12345.6")), "12,345.60");
        assert_eq!(grouped(d("999")), "999.00");
        assert_eq!(grouped(d("1000")), "1,000.00");
        assert_eq!(grouped(d("1234567.891")), "1,234,567.89");
    }

    #[test]
    fn rounding_of_generated_totals() {
        let d = |s| Decimal::from_str(s).unwrap();
        let item = consistent_item(4, d("2.5"), d("33.33"), "EUR".parse().unwrap());
        assert_eq!(item.total_price, d("83.33"));
        assert_eq!(item.item_id, "ITEM 04");
    }
}
