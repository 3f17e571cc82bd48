//! Deterministic invoice extraction with token and energy accounting.
//!
//! Stages run in a fixed order: parser → generator → verifier → human
//! review. The parser pulls line items out of the document, the generator
//! renders them as structured JSON, the verifier re-checks every row's
//! arithmetic, and the review stage flags rows a human must look at. Only
//! the generator stands for a model call, so it carries all model tokens;
//! the footprint of the run is the footprint of the ledger total.

pub mod fixture;
mod invoice;
mod output;
mod tokens;
mod verify;

pub use invoice::{parse_amount, parse_invoice, CurrencyCode, LineItem, ParseError, ParseWarning, ParsedInvoice};
pub use output::render_output_json;
pub use tokens::{count_tokens, ledger_shares, LedgerShares, LedgerSource, TokenLedger};
pub use verify::{verify_items, ItemCheck, DEFAULT_TOLERANCE};

use std::fmt;
use std::thread;

use serde::Serialize;
use thiserror::Error;

use crate::footprint::{apply_pue, inference_energy, Energy, Footprint, FootprintError, FootprintProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Parser,
    Generator,
    Verifier,
    HumanReview,
}

impl Stage {
    pub const ORDER: [Stage; 4] = [Stage::Parser, Stage::Generator, Stage::Verifier, Stage::HumanReview];
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Parser => "parser",
            Stage::Generator => "generator",
            Stage::Verifier => "verifier",
            Stage::HumanReview => "human-review",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error("{stage} stage: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: ParseError,
    },

    #[error(transparent)]
    Footprint(#[from] FootprintError),

    #[error("token ledger total is zero")]
    EmptyLedger,
}

/// Model tokens and facility energy attributed to one stage.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageMeter {
    pub stage: Stage,
    pub tokens: u64,
    pub energy: Energy,
}

/// Rows the human reviewer must look at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReviewQueue {
    pub approved: bool,
    pub flagged: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtractionResult {
    pub items: Vec<LineItem>,
    /// Generator output, see [`render_output_json`].
    pub output_json: String,
    pub ledger: TokenLedger,
    pub footprint: Footprint,
    pub verification: Vec<ItemCheck>,
    pub stages: Vec<StageMeter>,
    pub review: ReviewQueue,
    pub warnings: Vec<ParseWarning>,
}

/// Facility footprint of `tokens` model tokens under `profile`.
pub fn token_footprint(tokens: u64, profile: &FootprintProfile) -> Result<Footprint, FootprintError> {
    let energy = apply_pue(inference_energy(tokens, profile.rate()), profile.pue())?;
    Ok(Footprint::from_energy(energy, profile))
}

/// Run the four stages over one document.
///
/// With `ledger_override` the given counts are used as measured; otherwise
/// they are estimated with [`count_tokens`] and no thinking tokens.
pub fn run_pipeline(
    document: &str,
    prompt: &str,
    ledger_override: Option<TokenLedger>,
    profile: &FootprintProfile,
) -> Result<ExtractionResult, PipelineError> {
    let parsed = parse_invoice(document).map_err(|source| PipelineError::Stage {
        stage: Stage::Parser,
        source,
    })?;

    let output_json = render_output_json(&parsed.items);

    let verification = verify_items(&parsed.items, DEFAULT_TOLERANCE);

    let flagged: Vec<String> = verification
        .iter()
        .filter(|c| !c.ok)
        .map(|c| c.item_id.clone())
        .collect();
    let review = ReviewQueue {
        approved: flagged.is_empty(),
        flagged,
    };

    let ledger = match ledger_override {
        Some(l) => TokenLedger {
            source: LedgerSource::Measured,
            ..l
        },
        None => TokenLedger {
            document: count_tokens(document),
            prompt: count_tokens(prompt),
            output: count_tokens(&output_json),
            thinking: 0,
            source: LedgerSource::Estimated,
        },
    };
    let footprint = token_footprint(ledger.total(), profile)?;

    let stages = Stage::ORDER
        .iter()
        .map(|&stage| {
            let tokens = if stage == Stage::Generator { ledger.total() } else { 0 };
            let energy = if tokens > 0 { footprint.energy } else { Energy::ZERO };
            StageMeter { stage, tokens, energy }
        })
        .collect();

    Ok(ExtractionResult {
        items: parsed.items,
        output_json,
        ledger,
        footprint,
        verification,
        stages,
        review,
        warnings: parsed.warnings,
    })
}

/// [`run_pipeline`] over many documents on scoped worker threads. Results
/// come back in input order and equal the serial results.
pub fn run_batch(
    documents: &[String],
    prompt: &str,
    ledger_override: Option<TokenLedger>,
    profile: &FootprintProfile,
) -> Vec<Result<ExtractionResult, PipelineError>> {
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(documents.len().max(1));
    let chunk = documents.len().div_ceil(workers).max(1);
    thread::scope(|scope| {
        let handles: Vec<_> = documents
            .chunks(chunk)
            .map(|docs| {
                scope.spawn(move || {
                    docs.iter()
                        .map(|d| run_pipeline(d, prompt, ledger_override, profile))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("pipeline worker panicked"))
            .collect()
    })
}

/// Scale a measured energy down by thinking-mode and document-complexity
/// factors: `e / (thinking × complexity)`. Both factors must be ≥ 1.
pub fn normalize_energy(
    energy: Energy,
    thinking_factor: f64,
    complexity_factor: f64,
) -> Result<Energy, FootprintError> {
    for (field, factor) in [
        ("thinking_factor", thinking_factor),
        ("complexity_factor", complexity_factor),
    ] {
        if !(factor.is_finite() && factor >= 1.0) {
            return Err(FootprintError::Invariant {
                field,
                requirement: "normalization factor >= 1",
                value: factor,
            });
        }
    }
    energy.scale(1.0 / (thinking_factor * complexity_factor))
}

#[cfg(test)]
mod tests {
    use super::*;

    const ROW: &str = "ITEM 03 | Integration service | 40 | 85.00 | 3400.00 | EUR\n";

    #[test]
    fn measured_ledger_reproduces_usecase_energy() {
        let ledger = TokenLedger::measured(9_030, 1_259, 217, 1_400);
        let r = run_pipeline(ROW, "prompt", Some(ledger), &FootprintProfile::usecase_2025()).unwrap();
        assert!((r.footprint.energy.as_kwh().lo() - 0.35718).abs() < 1e-12);
        assert!((r.footprint.co2.as_grams().lo() - 102.87).abs() < 0.01);
        let l = r.footprint.water.as_liters();
        assert!((l.lo() - 0.0643).abs() < 1e-4 && (l.hi() - 0.1072).abs() < 1e-4);
    }

    #[test]
    fn estimated_ledger() {
        let r = run_pipeline(ROW, "extract rows", None, &FootprintProfile::usecase_2025()).unwrap();
        assert_eq!(r.ledger.source, LedgerSource::Estimated);
        assert_eq!(r.ledger.document, count_tokens(ROW));
        assert_eq!(r.ledger.prompt, 3);
        assert_eq!(r.ledger.thinking, 0);
        assert!(r.footprint.energy.as_kwh().lo() > 0.0);
        assert!(r.review.approved);
    }

    #[test]
    fn stage_order_and_metering() {
        let r = run_pipeline(ROW, "p", None, &FootprintProfile::flash_prompt_2025()).unwrap();
        let order: Vec<Stage> = r.stages.iter().map(|s| s.stage).collect();
        assert_eq!(order, Stage::ORDER);
        let metered: u64 = r.stages.iter().map(|s| s.tokens).sum();
        assert_eq!(metered, r.ledger.total());
    }

    #[test]
    fn empty_document() {
        let r = run_pipeline("", "prompt text", None, &FootprintProfile::usecase_2025()).unwrap();
        assert!(r.items.is_empty());
        assert_eq!(r.ledger.document, 0);
        assert_eq!(r.warnings, vec![ParseWarning::NoLineItems]);
        assert_eq!(r.output_json, "[]\n");
    }

    #[test]
    fn parse_errors_carry_stage() {
        let err = run_pipeline("ITEM 01 | x | 1 | 1.00", "", None, &FootprintProfile::usecase_2025()).unwrap_err();
        assert!(matches!(
            err,
            PipelineError::Stage {
                stage: Stage::Parser,
                ..
            }
        ));
        assert!(err.to_string().starts_with("parser stage: line 1"));
    }

    #[test]
    fn failing_rows_go_to_review() {
        let doc = format!("{ROW}ITEM 04 | Bad | 2 | 10.00 | 20.50 | EUR\n");
        let r = run_pipeline(&doc, "", None, &FootprintProfile::usecase_2025()).unwrap();
        assert!(!r.review.approved);
        assert_eq!(r.review.flagged, vec!["ITEM 04".to_string()]);
    }

    #[test]
    fn normalization() {
        let e = Energy::kwh(0.3572).unwrap();
        let n = normalize_energy(e, 1.15, 1.5).unwrap().as_kwh().lo();
        assert!((n - 0.2071).abs() < 5e-5);
        assert_eq!(normalize_energy(e, 1.0, 1.0).unwrap(), e);
        assert!(normalize_energy(e, 0.9, 1.5).is_err());
        assert!(normalize_energy(e, 1.15, 0.5).is_err());
    }

    #[test]
    fn batch_equals_serial() {
        let docs: Vec<String> = (1..=9)
            .map(|n| format!("ITEM {n:02} | x | {n} | 2.50 | {:.2} | EUR\n", n as f64 * 2.5))
            .chain(std::iter::once("ITEM 10 | broken".to_string()))
            .collect();
        let profile = FootprintProfile::flash_prompt_2025();
        let batch = run_batch(&docs, "p", None, &profile);
        let serial: Vec<_> = docs.iter().map(|d| run_pipeline(d, "p", None, &profile)).collect();
        assert_eq!(batch, serial);
    }
}
