use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::rounding::round_half_up;

/// Heuristic token count: `⌈chars / 4⌉` over Unicode scalar values.
///
/// A stand-in for a real tokenizer; ledgers built from it are marked
/// [`LedgerSource::Estimated`].
pub fn count_tokens(text: &str) -> u64 {
    (text.chars().count() as u64).div_ceil(4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LedgerSource {
    Measured,
    Estimated,
}

/// Token counts by role for one extraction call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TokenLedger {
    pub document: u64,
    pub prompt: u64,
    pub output: u64,
    pub thinking: u64,
    #[serde(default = "measured")]
    pub source: LedgerSource,
}

fn measured() -> LedgerSource {
    LedgerSource::Measured
}

impl TokenLedger {
    pub fn measured(document: u64, prompt: u64, output: u64, thinking: u64) -> Self {
        TokenLedger {
            document,
            prompt,
            output,
            thinking,
            source: LedgerSource::Measured,
        }
    }

    pub fn total(&self) -> u64 {
        self.document + self.prompt + self.output + self.thinking
    }

    pub fn input(&self) -> u64 {
        self.document + self.prompt
    }

    /// Hidden reasoning tokens per visible output token.
    pub fn thinking_to_output_ratio(&self) -> Option<f64> {
        (self.output > 0).then(|| self.thinking as f64 / self.output as f64)
    }
}

/// Each ledger component as a percentage of the total.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LedgerShares {
    pub document: f64,
    pub prompt: f64,
    pub output: f64,
    pub thinking: f64,
}

impl LedgerShares {
    /// Shares at one decimal, for presentation.
    pub fn rounded(&self) -> LedgerShares {
        LedgerShares {
            document: round_half_up(self.document, 1),
            prompt: round_half_up(self.prompt, 1),
            output: round_half_up(self.output, 1),
            thinking: round_half_up(self.thinking, 1),
        }
    }

    pub fn sum(&self) -> f64 {
        self.document + self.prompt + self.output + self.thinking
    }
}

pub fn ledger_shares(ledger: &TokenLedger) -> Result<LedgerShares, PipelineError> {
    let total = ledger.total();
    if total == 0 {
        return Err(PipelineError::EmptyLedger);
    }
    let pct = |n: u64| n as f64 / total as f64 * 100.0;
    Ok(LedgerShares {
        document: pct(ledger.document),
        prompt: pct(ledger.prompt),
        output: pct(ledger.output),
        thinking: pct(ledger.thinking),
    })
}
