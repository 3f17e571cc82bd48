//! Line-item grammar for proforma invoices.
//!
//! A row is a line whose first pipe-separated field is `ITEM <digits>`:
//!
//! ```text
//! ITEM 03 | Integration service | 40 | 85.00 | 3400.00 | EUR
//! ```
//!
//! Fields: id, description, quantity, unit price, total price, currency.
//! Amounts accept plain (`1234.56`) or comma-grouped (`1,234.56`) digits.
//! Every other line is free text and ignored.

use std::fmt;
use std::str::FromStr;

use rust_decimal::Decimal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// ISO-4217 style code: three ASCII uppercase letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CurrencyCode([u8; 3]);

impl CurrencyCode {
    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("ascii")
    }
}

impl FromStr for CurrencyCode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.as_bytes() {
            &[a, b, c] if [a, b, c].iter().all(u8::is_ascii_uppercase) => Ok(CurrencyCode([a, b, c])),
            _ => Err(format!("invalid currency code {s:?}")),
        }
    }
}

impl TryFrom<String> for CurrencyCode {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<CurrencyCode> for String {
    fn from(c: CurrencyCode) -> Self {
        c.as_str().to_string()
    }
}

impl fmt::Display for CurrencyCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One extracted invoice row. Amounts are exact decimals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineItem {
    pub item_id: String,
    pub quantity: Decimal,
    pub unit_price: Decimal,
    pub total_price: Decimal,
    pub currency: CurrencyCode,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected 6 '|'-separated fields, found {found}")]
    FieldCount { line: usize, found: usize },

    #[error("line {line}: invalid {field} {value:?}")]
    InvalidAmount {
        line: usize,
        field: &'static str,
        value: String,
    },

    #[error("line {line}: invalid currency code {value:?}")]
    InvalidCurrency { line: usize, value: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::FieldCount { line, .. }
            | ParseError::InvalidAmount { line, .. }
            | ParseError::InvalidCurrency { line, .. } => *line,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParseWarning {
    NoLineItems,
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::NoLineItems => f.write_str("no line items matched"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedInvoice {
    pub items: Vec<LineItem>,
    pub warnings: Vec<ParseWarning>,
}

/// `ITEM 03` → `Some("ITEM 03")`, with inner whitespace collapsed.
fn row_id(first_field: &str) -> Option<String> {
    let rest = first_field.strip_prefix("ITEM")?;
    if !rest.starts_with(char::is_whitespace) {
        return None;
    }
    let digits = rest.trim_start();
    (!digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())).then(|| format!("ITEM {digits}"))
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Non-negative amount, plain or with comma thousands grouping.
pub fn parse_amount(text: &str) -> Option<Decimal> {
    let (int_part, frac) = match text.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (text, None),
    };
    if frac.is_some_and(|f| !is_digits(f)) {
        return None;
    }
    let int_ok = if int_part.contains(',') {
        let mut groups = int_part.split(',');
        let head = groups.next().unwrap_or_default();
        is_digits(head) && head.len() <= 3 && groups.all(|g| g.len() == 3 && is_digits(g))
    } else {
        is_digits(int_part)
    };
    if !int_ok {
        return None;
    }
    Decimal::from_str(&text.replace(',', "")).ok()
}

/// Extract line items in document order.
pub fn parse_invoice(document: &str) -> Result<ParsedInvoice, ParseError> {
    let mut items = Vec::new();
    for (idx, raw) in document.lines().enumerate() {
        let line = idx + 1;
        let fields: Vec<&str> = raw.split('|').map(str::trim).collect();
        let Some(item_id) = row_id(fields[0]) else {
            continue;
        };
        if fields.len() != 6 {
            return Err(ParseError::FieldCount {
                line,
                found: fields.len(),
            });
        }
        let amount = |pos: usize, field: &'static str| {
            parse_amount(fields[pos]).ok_or_else(|| ParseError::InvalidAmount {
                line,
                field,
                value: fields[pos].to_string(),
            })
        };
        let quantity = amount(2, "quantity")?;
        let unit_price = amount(3, "unit price")?;
        let total_price = amount(4, "total price")?;
        let currency = fields[5].parse().map_err(|_| ParseError::InvalidCurrency {
            line,
            value: fields[5].to_string(),
        })?;
        items.push(LineItem {
            item_id,
            quantity,
            unit_price,
            total_price,
            currency,
        });
    }
    let warnings = if items.is_empty() {
        vec![ParseWarning::NoLineItems]
    } else {
        Vec::new()
    };
    Ok(ParsedInvoice { items, warnings })
}
