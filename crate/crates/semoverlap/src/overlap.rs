//! Sentence-level semantic overlap: exact word-mover distance between two
//! sentences and the similarity transform that turns it into a bounded
//! reward.
//!
//! The transform is `wms(w) = (a + 1) / (a + e^(b w))` with `a >= 0` and
//! `b > 0`. It maps distance 0 to exactly 1, decreases strictly in `w`, and
//! stays in `(0, 1]` for finite non-negative distances. With `a = 0, b = 1`
//! it reduces to `e^(-w)`.
//!
//! Degenerate sentences (nothing survives stopword and vocabulary
//! filtering) are flagged, never raised: the distance is reported as the
//! `+inf` sentinel, and the reward is 1 when both sides are empty (vacuous
//! identity) or 0 when exactly one side is.

use std::collections::HashSet;

use crate::embeddings::EmbeddingTable;
use crate::error::{Error, Result};
use crate::textproc::{to_nbow, Sentence};
use crate::transport::{cost_matrix, solve_exact};

/// Parameters of the similarity transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RewardParams {
    /// Additive shift; must be non-negative.
    pub a: f64,
    /// Distance scale; must be strictly positive.
    pub b: f64,
}

impl Default for RewardParams {
    fn default() -> Self {
        RewardParams { a: 1.0, b: 0.5 }
    }
}

impl RewardParams {
    /// Reject parameters outside the transform's domain.
    pub fn validate(&self) -> Result<()> {
        if !self.a.is_finite() || self.a < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "reward parameter a must be finite and non-negative, got {}",
                self.a
            )));
        }
        if !self.b.is_finite() || self.b <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "reward parameter b must be finite and strictly positive, got {}",
                self.b
            )));
        }
        Ok(())
    }
}

/// Distance and similarity between two sentences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapScore {
    /// Exact word-mover distance; `+inf` when `degenerate` is set.
    pub wmd: f64,
    /// Similarity in `(0, 1]`; by policy 1.0 (both sides empty) or 0.0
    /// (one side empty) when `degenerate` is set.
    pub wms: f64,
    /// True when at least one side had an empty nBOW.
    pub degenerate: bool,
}

/// The similarity transform on a distance.
pub fn wms(wmd: f64, params: &RewardParams) -> f64 {
    (params.a + 1.0) / (params.a + (params.b * wmd).exp())
}

/// Exact word-mover distance between two sentences.
///
/// The `wms` field is filled with the default parameters; use [`reward`]
/// for an explicit parameterization.
pub fn sentence_wmd(
    x: &Sentence,
    y: &Sentence,
    table: &EmbeddingTable,
    stopwords: Option<&HashSet<String>>,
) -> Result<OverlapScore> {
    reward(x, y, table, stopwords, &RewardParams::default())
}

/// Similarity reward between a gold sentence and a generated one.
pub fn reward(
    gold: &Sentence,
    generated: &Sentence,
    table: &EmbeddingTable,
    stopwords: Option<&HashSet<String>>,
    params: &RewardParams,
) -> Result<OverlapScore> {
    params.validate()?;
    let x = to_nbow(&gold.tokens, table, stopwords);
    let y = to_nbow(&generated.tokens, table, stopwords);
    match (x.is_empty(), y.is_empty()) {
        (true, true) => Ok(OverlapScore {
            wmd: f64::INFINITY,
            wms: 1.0,
            degenerate: true,
        }),
        (true, false) | (false, true) => Ok(OverlapScore {
            wmd: f64::INFINITY,
            wms: 0.0,
            degenerate: true,
        }),
        (false, false) => {
            let costs = cost_matrix(&x, &y, table)?;
            let plan = solve_exact(&x.weights, &y.weights, &costs)?;
            Ok(OverlapScore {
                wmd: plan.objective,
                wms: wms(plan.objective, params),
                degenerate: false,
            })
        }
    }
}
