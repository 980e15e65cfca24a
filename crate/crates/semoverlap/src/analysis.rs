//! Diagnostics over the extraction machinery: the closest-rank distance
//! profile that motivates picking exemplary sentences, and a two-source
//! attribution probe for paraphrased output.
//!
//! Aggregation is deterministic for a fixed input: per-pair work may run on
//! a worker pool, but totals are reduced in input order.

use std::collections::HashSet;
use std::path::Path;

use rayon::prelude::*;

use crate::embeddings::EmbeddingTable;
use crate::error::{Error, Result};
use crate::overlap::sentence_wmd;
use crate::textproc::{to_nbow, CorpusPair, NBow, Sentence};
use crate::transport::{cost_matrix, solve_exact};

/// Mean distance from a summary sentence to its alpha closest document
/// sentences, by closeness rank.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaProfile {
    /// How many closest document sentences each summary sentence reports.
    pub alpha: usize,
    /// `mean_distances[r]` is the mean over summary sentences of the
    /// distance to their rank-`r` closest document sentence (0-based rank);
    /// non-decreasing in `r`.
    pub mean_distances: Vec<f64>,
    /// `mean_distances[1] - mean_distances[0]` when `alpha >= 2`.
    pub gap: Option<f64>,
    /// Summary sentences that contributed a full distance vector.
    pub sentences_used: usize,
    /// Pairs dropped because fewer than `alpha` document sentences had an
    /// in-vocabulary token.
    pub pairs_skipped_short: usize,
    /// Summary sentences dropped for having no in-vocabulary token.
    pub sentences_skipped_degenerate: usize,
}

struct PairContribution {
    sums: Vec<f64>,
    used: usize,
    degenerate: usize,
    short: bool,
}

fn pair_contribution(
    pair: &CorpusPair,
    table: &EmbeddingTable,
    stopwords: Option<&HashSet<String>>,
    alpha: usize,
) -> Result<PairContribution> {
    let doc_nbows: Vec<NBow> = pair
        .document
        .iter()
        .map(|s| to_nbow(&s.tokens, table, stopwords))
        .collect();
    let eligible: Vec<&NBow> = doc_nbows.iter().filter(|n| !n.is_empty()).collect();
    if eligible.len() < alpha {
        return Ok(PairContribution {
            sums: vec![0.0; alpha],
            used: 0,
            degenerate: 0,
            short: true,
        });
    }
    let mut sums = vec![0.0; alpha];
    let mut used = 0;
    let mut degenerate = 0;
    for summary_sentence in &pair.summary {
        let s = to_nbow(&summary_sentence.tokens, table, stopwords);
        if s.is_empty() {
            degenerate += 1;
            continue;
        }
        let mut distances = Vec::with_capacity(eligible.len());
        for d in &eligible {
            let costs = cost_matrix(&s, d, table)?;
            distances.push(solve_exact(&s.weights, &d.weights, &costs)?.objective);
        }
        distances.sort_by(f64::total_cmp);
        for (rank, d) in distances.iter().take(alpha).enumerate() {
            sums[rank] += d;
        }
        used += 1;
    }
    Ok(PairContribution {
        sums,
        used,
        degenerate,
        short: false,
    })
}

/// Profile how close summary sentences sit to their nearest document
/// sentences, averaged position-wise over the corpus.
///
/// Pairs with fewer than `alpha` in-vocabulary document sentences are
/// skipped whole; summary sentences with no in-vocabulary token are
/// skipped individually. Both skips are tallied in the result.
pub fn alpha_profile(
    pairs: &[CorpusPair],
    table: &EmbeddingTable,
    stopwords: Option<&HashSet<String>>,
    alpha: usize,
    workers: usize,
) -> Result<AlphaProfile> {
    if alpha == 0 {
        return Err(Error::InvalidParameter("alpha must be at least 1".into()));
    }
    if workers == 0 {
        return Err(Error::InvalidParameter(
            "worker count must be at least 1".into(),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("failed to build worker pool: {e}")))?;
    let contributions: Vec<PairContribution> = pool.install(|| {
        pairs
            .par_iter()
            .map(|pair| pair_contribution(pair, table, stopwords, alpha))
            .collect::<Result<Vec<_>>>()
    })?;

    let mut sums = vec![0.0; alpha];
    let mut sentences_used = 0;
    let mut pairs_skipped_short = 0;
    let mut sentences_skipped_degenerate = 0;
    for c in contributions {
        if c.short {
            pairs_skipped_short += 1;
            continue;
        }
        for (total, s) in sums.iter_mut().zip(&c.sums) {
            *total += s;
        }
        sentences_used += c.used;
        sentences_skipped_degenerate += c.degenerate;
    }
    if sentences_used == 0 {
        return Err(Error::NoPairs(
            "no summary sentence was usable for the distance profile".into(),
        ));
    }
    let mean_distances: Vec<f64> = sums
        .iter()
        .map(|s| s / sentences_used as f64)
        .collect();
    let gap = (alpha >= 2).then(|| mean_distances[1] - mean_distances[0]);
    Ok(AlphaProfile {
        alpha,
        mean_distances,
        gap,
        sentences_used,
        pairs_skipped_short,
        sentences_skipped_degenerate,
    })
}

/// The profile as CSV with a `rank,mean_wmd` header and 1-based ranks.
pub fn profile_csv(profile: &AlphaProfile) -> String {
    let mut out = String::from("rank,mean_wmd\n");
    for (rank, mean) in profile.mean_distances.iter().enumerate() {
        out.push_str(&format!("{},{}\n", rank + 1, mean));
    }
    out
}

/// Write the profile CSV to a file.
pub fn export_profile(profile: &AlphaProfile, path: &Path) -> Result<()> {
    std::fs::write(path, profile_csv(profile)).map_err(|e| Error::io(path, e))
}

/// One paraphrased sentence with the two source sentences it drew from.
#[derive(Debug, Clone)]
pub struct AttributionInput {
    pub id: String,
    /// 1-based position of the generated sentence in its summary.
    pub j: usize,
    pub generated: Sentence,
    pub sources: [Sentence; 2],
}

/// Distances from one generated sentence to its two sources, sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributionRecord {
    pub id: String,
    pub j: usize,
    /// Distance to the nearer source; `+inf` when degenerate.
    pub closer: f64,
    /// Distance to the farther source; `+inf` when degenerate.
    pub farther: f64,
    /// True when any involved sentence had no in-vocabulary token.
    pub degenerate: bool,
}

/// Per-record distances plus corpus means over the non-degenerate records.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributionSummary {
    pub records: Vec<AttributionRecord>,
    /// Mean of `closer` over non-degenerate records; absent if none.
    pub mean_closer: Option<f64>,
    /// Mean of `farther` over non-degenerate records; absent if none.
    pub mean_farther: Option<f64>,
    pub skipped_degenerate: usize,
}

/// Measure how a paraphrased sentence splits its attention between its two
/// source sentences, by exact word-mover distance.
pub fn attribution(
    inputs: &[AttributionInput],
    table: &EmbeddingTable,
    stopwords: Option<&HashSet<String>>,
    workers: usize,
) -> Result<AttributionSummary> {
    if inputs.is_empty() {
        return Err(Error::NoPairs("attribution over no records".into()));
    }
    if workers == 0 {
        return Err(Error::InvalidParameter(
            "worker count must be at least 1".into(),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("failed to build worker pool: {e}")))?;
    let records: Vec<AttributionRecord> = pool.install(|| {
        inputs
            .par_iter()
            .map(|input| {
                let first = sentence_wmd(&input.generated, &input.sources[0], table, stopwords)?;
                let second = sentence_wmd(&input.generated, &input.sources[1], table, stopwords)?;
                let (closer, farther) = if first.wmd <= second.wmd {
                    (first.wmd, second.wmd)
                } else {
                    (second.wmd, first.wmd)
                };
                Ok(AttributionRecord {
                    id: input.id.clone(),
                    j: input.j,
                    closer,
                    farther,
                    degenerate: first.degenerate || second.degenerate,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut closer_sum = 0.0;
    let mut farther_sum = 0.0;
    let mut finite = 0usize;
    let mut skipped_degenerate = 0usize;
    for record in &records {
        if record.degenerate {
            skipped_degenerate += 1;
        } else {
            closer_sum += record.closer;
            farther_sum += record.farther;
            finite += 1;
        }
    }
    let (mean_closer, mean_farther) = if finite > 0 {
        (
            Some(closer_sum / finite as f64),
            Some(farther_sum / finite as f64),
        )
    } else {
        (None, None)
    };
    Ok(AttributionSummary {
        records,
        mean_closer,
        mean_farther,
        skipped_degenerate,
    })
}
