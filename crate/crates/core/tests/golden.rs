mod common;

use ecodoc_core::pipeline::{count_tokens, run_pipeline, LedgerSource, TokenLedger};
use ecodoc_core::FootprintProfile;

use common::*;

// Frozen from the first run of the heuristic over the bundled fixtures.
const DOCUMENT_TOKENS: u64 = 811;
const PROMPT_TOKENS: u64 = 213;
const OUTPUT_TOKENS: u64 = 492;

#[test]
fn fixture_token_estimates() {
    assert_eq!(
        count_tokens(&read_repo("fixtures/proforma_invoice.txt")),
        DOCUMENT_TOKENS
    );
    assert_eq!(
        count_tokens(&read_repo("fixtures/extraction_prompt.txt")),
        PROMPT_TOKENS
    );
    assert_eq!(
        count_tokens(&read_repo("fixtures/extraction_output.json")),
        OUTPUT_TOKENS
    );
}

#[test]
fn estimated_ledger_without_override() {
    let run = run_pipeline(
        &read_repo("fixtures/proforma_invoice.txt"),
        &read_repo("fixtures/extraction_prompt.txt"),
        None,
        &FootprintProfile::usecase_2025(),
    )
    .unwrap();
    assert_eq!(
        run.ledger,
        TokenLedger {
            document: DOCUMENT_TOKENS,
            prompt: PROMPT_TOKENS,
            output: OUTPUT_TOKENS,
            thinking: 0,
            source: LedgerSource::Estimated,
        }
    );
    assert!((run.footprint.energy.as_kwh().lo() - 0.04548).abs() < 1e-12);
}
