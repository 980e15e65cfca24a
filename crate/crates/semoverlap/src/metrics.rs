//! Summary evaluation: ROUGE-1/2 (clipped n-gram F1), ROUGE-L
//! (summary-level union-LCS F1), and a whole-summary semantic score.
//!
//! N-grams are counted over each side's concatenated token sequence, so
//! they span sentence boundaries. No stemming or stopword removal is
//! applied to ROUGE inputs. The semantic score concatenates each side into
//! one sentence and maps its exact word-mover distance through `e^(-wmd)`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::embeddings::EmbeddingTable;
use crate::error::{Error, Result};
use crate::overlap::{reward, OverlapScore, RewardParams};
use crate::textproc::{concat_sentences, Sentence};

/// Precision, recall, and their harmonic mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RougeScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl RougeScores {
    fn from_counts(overlap: usize, candidate_total: usize, reference_total: usize) -> Self {
        let precision = if candidate_total == 0 {
            0.0
        } else {
            overlap as f64 / candidate_total as f64
        };
        let recall = if reference_total == 0 {
            0.0
        } else {
            overlap as f64 / reference_total as f64
        };
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        RougeScores {
            precision,
            recall,
            f1,
        }
    }
}

fn concat_tokens(sentences: &[Sentence]) -> Vec<&str> {
    sentences
        .iter()
        .flat_map(|s| s.tokens.iter().map(String::as_str))
        .collect()
}

fn ngram_counts<'a>(tokens: &[&'a str], n: usize) -> HashMap<Vec<&'a str>, usize> {
    let mut counts = HashMap::new();
    if tokens.len() >= n {
        for window in tokens.windows(n) {
            *counts.entry(window.to_vec()).or_insert(0) += 1;
        }
    }
    counts
}

/// ROUGE-N with clipped n-gram counts over concatenated tokens.
pub fn rouge_n(candidate: &[Sentence], reference: &[Sentence], n: usize) -> Result<RougeScores> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "rouge n-gram order must be at least 1".into(),
        ));
    }
    let cand_tokens = concat_tokens(candidate);
    let ref_tokens = concat_tokens(reference);
    let cand_counts = ngram_counts(&cand_tokens, n);
    let ref_counts = ngram_counts(&ref_tokens, n);
    let overlap: usize = cand_counts
        .iter()
        .map(|(gram, &c)| c.min(ref_counts.get(gram).copied().unwrap_or(0)))
        .sum();
    let cand_total: usize = cand_counts.values().sum();
    let ref_total: usize = ref_counts.values().sum();
    Ok(RougeScores::from_counts(overlap, cand_total, ref_total))
}

/// Reference-token positions matched by one LCS of `(reference, candidate)`.
///
/// Backtrace is deterministic: equal tokens take the diagonal; otherwise
/// the walk drops a reference token when that side's prefix LCS is at least
/// as long.
fn lcs_reference_positions(reference: &[&str], candidate: &[&str]) -> HashSet<usize> {
    let (m, n) = (reference.len(), candidate.len());
    let mut dp = vec![vec![0usize; n + 1]; m + 1];
    for i in 1..=m {
        for j in 1..=n {
            dp[i][j] = if reference[i - 1] == candidate[j - 1] {
                dp[i - 1][j - 1] + 1
            } else {
                dp[i - 1][j].max(dp[i][j - 1])
            };
        }
    }
    let mut positions = HashSet::new();
    let (mut i, mut j) = (m, n);
    while i > 0 && j > 0 {
        if reference[i - 1] == candidate[j - 1] {
            positions.insert(i - 1);
            i -= 1;
            j -= 1;
        } else if dp[i - 1][j] >= dp[i][j - 1] {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    positions
}

/// Summary-level ROUGE-L: per reference sentence, the union of its LCS
/// token positions against all candidate sentences; recall over total
/// reference tokens, precision over total candidate tokens.
pub fn rouge_l(candidate: &[Sentence], reference: &[Sentence]) -> Result<RougeScores> {
    let cand_tokens: Vec<Vec<&str>> = candidate
        .iter()
        .map(|s| s.tokens.iter().map(String::as_str).collect())
        .collect();
    let mut hits = 0usize;
    for ref_sentence in reference {
        let ref_tokens: Vec<&str> = ref_sentence.tokens.iter().map(String::as_str).collect();
        let mut union: HashSet<usize> = HashSet::new();
        for cand in &cand_tokens {
            union.extend(lcs_reference_positions(&ref_tokens, cand));
        }
        hits += union.len();
    }
    let cand_total: usize = candidate.iter().map(|s| s.tokens.len()).sum();
    let ref_total: usize = reference.iter().map(|s| s.tokens.len()).sum();
    Ok(RougeScores::from_counts(hits, cand_total, ref_total))
}

/// Whole-summary semantic score: exact word-mover distance between the two
/// concatenated summaries through the `e^(-wmd)` transform.
pub fn summary_wms(
    candidate: &[Sentence],
    reference: &[Sentence],
    table: &EmbeddingTable,
    stopwords: Option<&HashSet<String>>,
) -> Result<OverlapScore> {
    let cand = concat_sentences(candidate);
    let reference = concat_sentences(reference);
    reward(
        &reference,
        &cand,
        table,
        stopwords,
        &RewardParams { a: 0.0, b: 1.0 },
    )
}

/// One summary with its corpus id.
#[derive(Debug, Clone)]
pub struct SummaryEntry {
    pub id: String,
    pub sentences: Vec<Sentence>,
}

/// All metric values for one aligned pair.
#[derive(Debug, Clone, Serialize)]
pub struct PairScore {
    pub id: String,
    pub rouge1: RougeScores,
    pub rouge2: RougeScores,
    pub rouge_l: RougeScores,
    /// Semantic score in `[0, 1]`.
    pub wms: f64,
    /// The same value scaled for presentation next to ROUGE conventions.
    pub wms_x100: f64,
    pub wms_degenerate: bool,
}

/// Corpus report: per-pair scores plus arithmetic means.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub pair_count: usize,
    pub mean_rouge1_f1: f64,
    pub mean_rouge2_f1: f64,
    pub mean_rouge_l_f1: f64,
    pub mean_wms: f64,
    pub mean_wms_x100: f64,
    pub pairs: Vec<PairScore>,
}

/// Score candidate summaries against references aligned by id.
///
/// Candidates drive the output order. Ids missing on either side, or
/// duplicated, are a misalignment error naming the offenders.
pub fn evaluate_corpus(
    candidates: &[SummaryEntry],
    references: &[SummaryEntry],
    table: &EmbeddingTable,
    stopwords: Option<&HashSet<String>>,
    workers: usize,
) -> Result<CorpusReport> {
    if workers == 0 {
        return Err(Error::InvalidParameter(
            "worker count must be at least 1".into(),
        ));
    }
    let mut by_id: HashMap<&str, &SummaryEntry> = HashMap::new();
    for entry in references {
        if by_id.insert(entry.id.as_str(), entry).is_some() {
            return Err(Error::Misaligned(format!(
                "duplicate reference id {:?}",
                entry.id
            )));
        }
    }
    let mut seen_cand: HashSet<&str> = HashSet::new();
    for entry in candidates {
        if !seen_cand.insert(entry.id.as_str()) {
            return Err(Error::Misaligned(format!(
                "duplicate candidate id {:?}",
                entry.id
            )));
        }
    }
    let missing_refs: Vec<&str> = candidates
        .iter()
        .map(|c| c.id.as_str())
        .filter(|id| !by_id.contains_key(id))
        .collect();
    let missing_cands: Vec<&str> = references
        .iter()
        .map(|r| r.id.as_str())
        .filter(|id| !seen_cand.contains(id))
        .collect();
    if !missing_refs.is_empty() || !missing_cands.is_empty() {
        return Err(Error::Misaligned(format!(
            "ids without a reference: {missing_refs:?}; ids without a candidate: {missing_cands:?}"
        )));
    }
    if candidates.is_empty() {
        return Err(Error::NoPairs("evaluation over an empty corpus".into()));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("failed to build worker pool: {e}")))?;
    let pairs: Vec<PairScore> = pool.install(|| {
        candidates
            .par_iter()
            .map(|cand| {
                let reference = by_id[cand.id.as_str()];
                let rouge1 = rouge_n(&cand.sentences, &reference.sentences, 1)?;
                let rouge2 = rouge_n(&cand.sentences, &reference.sentences, 2)?;
                let rouge_l_score = rouge_l(&cand.sentences, &reference.sentences)?;
                let wms = summary_wms(&cand.sentences, &reference.sentences, table, stopwords)?;
                Ok(PairScore {
                    id: cand.id.clone(),
                    rouge1,
                    rouge2,
                    rouge_l: rouge_l_score,
                    wms: wms.wms,
                    wms_x100: wms.wms * 100.0,
                    wms_degenerate: wms.degenerate,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let count = pairs.len() as f64;
    let mean_wms = pairs.iter().map(|p| p.wms).sum::<f64>() / count;
    Ok(CorpusReport {
        pair_count: pairs.len(),
        mean_rouge1_f1: pairs.iter().map(|p| p.rouge1.f1).sum::<f64>() / count,
        mean_rouge2_f1: pairs.iter().map(|p| p.rouge2.f1).sum::<f64>() / count,
        mean_rouge_l_f1: pairs.iter().map(|p| p.rouge_l.f1).sum::<f64>() / count,
        mean_wms,
        mean_wms_x100: mean_wms * 100.0,
        pairs,
    })
}
