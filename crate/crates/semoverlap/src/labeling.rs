//! Exemplary extraction: label each summary sentence with the `n` document
//! sentences closest to it under exact word-mover distance.
//!
//! Selection is deterministic: summary sentences are visited in order, each
//! taking `n` picks in order, and every pick scans unexcluded document
//! sentences by ascending index, keeping the strictly smallest distance.
//! A document sentence, once picked, is excluded for the rest of the pair
//! (global no-reuse), so a pair needs at least `n * |summary|` document
//! sentences.
//!
//! Pruning uses the centroid and relaxation lower bounds to skip exact
//! solves that provably cannot beat the current best; pruned and unpruned
//! runs produce identical labels.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::embeddings::EmbeddingTable;
use crate::error::{Error, Result};
use crate::textproc::{to_nbow, CorpusPair, NBow};
use crate::transport::{cost_matrix, rwmd_lower_bound, solve_exact};

/// Pruning margin: a candidate is skipped only when its lower bound exceeds
/// the incumbent by more than this, so float dust can never flip a label.
const PRUNE_MARGIN: f64 = 1e-9;

/// Labels for one document/summary pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionLabels {
    pub id: String,
    /// Picks per summary sentence.
    pub n: usize,
    /// `k[j][l]` is the 0-based document index of pick `l` for summary
    /// sentence `j`. Serialized forms are 1-based.
    pub k: Vec<Vec<usize>>,
    /// Degeneracy notes, e.g. `degenerate-summary-sentence:2` (1-based).
    pub flags: Vec<String>,
}

/// One extract-then-paraphrase training example.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParaphraserExample {
    pub id: String,
    /// 1-based summary sentence index.
    pub j: usize,
    /// Whitespace-joined tokens of the picked document sentences, in pick
    /// order.
    pub input: String,
    /// Whitespace-joined tokens of the summary sentence.
    pub target: String,
}

/// Labels plus the examples built from them, for one pair.
#[derive(Debug, Clone)]
pub struct LabeledPair {
    pub labels: ExtractionLabels,
    pub examples: Vec<ParaphraserExample>,
}

struct SideState {
    nbows: Vec<NBow>,
    centroids: Vec<Vec<f64>>,
}

fn side_state(
    sentences: &[crate::textproc::Sentence],
    table: &EmbeddingTable,
    stopwords: Option<&HashSet<String>>,
) -> SideState {
    let nbows: Vec<NBow> = sentences
        .iter()
        .map(|s| to_nbow(&s.tokens, table, stopwords))
        .collect();
    let centroids = nbows.iter().map(|n| centroid(n, table)).collect();
    SideState { nbows, centroids }
}

fn centroid(nbow: &NBow, table: &EmbeddingTable) -> Vec<f64> {
    let mut c = vec![0.0f64; table.dim()];
    for (&row, &w) in nbow.support.iter().zip(&nbow.weights) {
        for (acc, &v) in c.iter_mut().zip(table.row(row)) {
            *acc += w * v as f64;
        }
    }
    c
}

fn centroid_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Label one pair under the documented selection policy.
pub fn exemplary_extract(
    pair: &CorpusPair,
    table: &EmbeddingTable,
    stopwords: Option<&HashSet<String>>,
    n: usize,
    prune: bool,
) -> Result<ExtractionLabels> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "picks per summary sentence (n) must be at least 1".into(),
        ));
    }
    let doc = side_state(&pair.document, table, stopwords);
    let summary = side_state(&pair.summary, table, stopwords);
    let doc_len = pair.document.len();

    let mut excluded = vec![false; doc_len];
    let mut k: Vec<Vec<usize>> = Vec::with_capacity(pair.summary.len());
    let mut flags: Vec<String> = Vec::new();
    // Exact distances computed so far, keyed by (summary, document) index;
    // shared across picks so later slots reuse earlier solves.
    let mut cache: Vec<Vec<Option<f64>>> = vec![vec![None; doc_len]; pair.summary.len()];

    for (j, summary_nbow) in summary.nbows.iter().enumerate() {
        let mut picks = Vec::with_capacity(n);
        if summary_nbow.is_empty() {
            flags.push(format!("degenerate-summary-sentence:{}", j + 1));
            for l in 0..n {
                let pick = first_unexcluded(&excluded).ok_or(Error::InsufficientDocument {
                    pair_id: pair.id.clone(),
                    j: j + 1,
                    l: l + 1,
                    n,
                })?;
                excluded[pick] = true;
                picks.push(pick);
            }
            k.push(picks);
            continue;
        }
        for l in 0..n {
            let mut best: Option<(usize, f64)> = None;
            let mut all_degenerate = true;
            for d in 0..doc_len {
                if excluded[d] {
                    continue;
                }
                if doc.nbows[d].is_empty() {
                    continue;
                }
                all_degenerate = false;
                if let Some(wmd) = cache[j][d] {
                    if best.is_none() || wmd < best.unwrap().1 {
                        best = Some((d, wmd));
                    }
                    continue;
                }
                if prune {
                    if let Some((_, incumbent)) = best {
                        let wcd = centroid_distance(&summary.centroids[j], &doc.centroids[d]);
                        if wcd > incumbent + PRUNE_MARGIN {
                            continue;
                        }
                        let costs = cost_matrix(summary_nbow, &doc.nbows[d], table)?;
                        let rwmd =
                            rwmd_lower_bound(&summary_nbow.weights, &doc.nbows[d].weights, &costs)?;
                        if rwmd > incumbent + PRUNE_MARGIN {
                            continue;
                        }
                        let wmd = solve_exact(&summary_nbow.weights, &doc.nbows[d].weights, &costs)?
                            .objective;
                        cache[j][d] = Some(wmd);
                        if wmd < incumbent {
                            best = Some((d, wmd));
                        }
                        continue;
                    }
                }
                let costs = cost_matrix(summary_nbow, &doc.nbows[d], table)?;
                let wmd =
                    solve_exact(&summary_nbow.weights, &doc.nbows[d].weights, &costs)?.objective;
                cache[j][d] = Some(wmd);
                if best.is_none() || wmd < best.unwrap().1 {
                    best = Some((d, wmd));
                }
            }
            let pick = match best {
                Some((d, _)) => d,
                None if all_degenerate => {
                    // Everything left is degenerate; fall back to the
                    // lowest unexcluded index so the pair stays labelable.
                    let pick =
                        first_unexcluded(&excluded).ok_or(Error::InsufficientDocument {
                            pair_id: pair.id.clone(),
                            j: j + 1,
                            l: l + 1,
                            n,
                        })?;
                    let flag = format!("degenerate-document-choice:{}", j + 1);
                    if !flags.contains(&flag) {
                        flags.push(flag);
                    }
                    pick
                }
                None => {
                    return Err(Error::InsufficientDocument {
                        pair_id: pair.id.clone(),
                        j: j + 1,
                        l: l + 1,
                        n,
                    })
                }
            };
            excluded[pick] = true;
            picks.push(pick);
        }
        k.push(picks);
    }

    Ok(ExtractionLabels {
        id: pair.id.clone(),
        n,
        k,
        flags,
    })
}

fn first_unexcluded(excluded: &[bool]) -> Option<usize> {
    excluded.iter().position(|&e| !e)
}

/// Build paraphraser training examples from a labeled pair.
///
/// Example `j` pairs the picked document sentences (concatenated in pick
/// order) with summary sentence `j` as the target.
pub fn build_paraphraser_examples(
    pair: &CorpusPair,
    labels: &ExtractionLabels,
) -> Vec<ParaphraserExample> {
    labels
        .k
        .iter()
        .enumerate()
        .map(|(j, picks)| {
            let mut input_tokens: Vec<&str> = Vec::new();
            for &d in picks {
                input_tokens.extend(pair.document[d].tokens.iter().map(String::as_str));
            }
            ParaphraserExample {
                id: pair.id.clone(),
                j: j + 1,
                input: input_tokens.join(" "),
                target: pair.summary[j].tokens.join(" "),
            }
        })
        .collect()
}

/// Label a corpus in parallel, preserving input order.
///
/// Per-pair failures land in that pair's slot instead of aborting the run.
pub fn label_corpus(
    pairs: &[CorpusPair],
    table: &EmbeddingTable,
    stopwords: Option<&HashSet<String>>,
    n: usize,
    prune: bool,
    workers: usize,
) -> Result<Vec<(String, Result<LabeledPair>)>> {
    if workers == 0 {
        return Err(Error::InvalidParameter(
            "worker count must be at least 1".into(),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("failed to build worker pool: {e}")))?;
    Ok(pool.install(|| {
        pairs
            .par_iter()
            .map(|pair| {
                let outcome = exemplary_extract(pair, table, stopwords, n, prune).map(|labels| {
                    let examples = build_paraphraser_examples(pair, &labels);
                    LabeledPair { labels, examples }
                });
                (pair.id.clone(), outcome)
            })
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textproc::{Sentence, TokenizerConfig};

    /// One token per sentence, planted on a line so distances are the
    /// absolute differences of the planted coordinates.
    fn line_table() -> EmbeddingTable {
        EmbeddingTable::from_pairs(
            1,
            vec![
                ("d0", vec![0.0f32]),
                ("d1", vec![10.0]),
                ("d2", vec![20.0]),
                ("d3", vec![30.0]),
                ("s0", vec![11.0]),
                ("s1", vec![19.0]),
            ],
        )
        .unwrap()
    }

    fn pair(id: &str, doc: &[&str], summary: &[&str]) -> CorpusPair {
        let config = TokenizerConfig::default();
        CorpusPair {
            id: id.into(),
            document: doc.iter().map(|s| Sentence::new(*s, &config)).collect(),
            summary: summary.iter().map(|s| Sentence::new(*s, &config)).collect(),
        }
    }

    #[test]
    fn picks_nearest_document_sentence() {
        let table = line_table();
        // s0 at 11 is closest to d1 at 10; s1 at 19 closest to d2 at 20.
        let p = pair("p", &["d0", "d1", "d2", "d3"], &["s0", "s1"]);
        let labels = exemplary_extract(&p, &table, None, 1, false).unwrap();
        assert_eq!(labels.k, vec![vec![1], vec![2]]);
        assert!(labels.flags.is_empty());
    }

    #[test]
    fn exclusion_forces_second_choice() {
        let table = line_table();
        // Both summary sentences are nearest to d1, but no-reuse pushes the
        // second one to its runner-up d2 (|19-20| = 1 < |19-0| = 19).
        let p = pair("p", &["d0", "d1", "d2"], &["s0", "s1"]);
        let labels = exemplary_extract(&p, &table, None, 1, false).unwrap();
        assert_eq!(labels.k, vec![vec![1], vec![2]]);

        // Reversed summary order flips who gets d1 first: s1 at 19 picks d2
        // (distance 1), then s0 picks d1.
        let p = pair("p", &["d0", "d1", "d2"], &["s1", "s0"]);
        let labels = exemplary_extract(&p, &table, None, 1, false).unwrap();
        assert_eq!(labels.k, vec![vec![2], vec![1]]);
    }

    #[test]
    fn n_two_takes_the_two_nearest_in_order() {
        let table = line_table();
        // For s0 at 11: d1 (dist 1), then d2 (dist 9), never d0 (dist 11).
        let p = pair("p", &["d0", "d1", "d2", "d3"], &["s0"]);
        let labels = exemplary_extract(&p, &table, None, 2, false).unwrap();
        assert_eq!(labels.k, vec![vec![1, 2]]);
    }

    #[test]
    fn tie_breaks_to_lowest_document_index() {
        let table = line_table();
        // Identical sentences at indexes 0 and 1.
        let p = pair("p", &["d1", "d1", "d2"], &["s0"]);
        let labels = exemplary_extract(&p, &table, None, 1, false).unwrap();
        assert_eq!(labels.k, vec![vec![0]]);
    }

    #[test]
    fn self_retrieval_recovers_copied_sentences() {
        let table = line_table();
        let p = pair("p", &["d0 d1", "d2 d3", "d1 d2"], &["d2 d3", "d0 d1"]);
        let labels = exemplary_extract(&p, &table, None, 1, false).unwrap();
        assert_eq!(labels.k, vec![vec![1], vec![0]]);
    }

    #[test]
    fn insufficient_document_names_the_failing_slot() {
        let table = line_table();
        let p = pair("short", &["d0"], &["s0", "s1"]);
        let err = exemplary_extract(&p, &table, None, 1, false).unwrap_err();
        match err {
            Error::InsufficientDocument { pair_id, j, l, n } => {
                assert_eq!(pair_id, "short");
                assert_eq!((j, l, n), (2, 1, 1));
            }
            other => panic!("expected insufficient-document error, got {other:?}"),
        }

        let p = pair("short2", &["d0"], &["s0"]);
        let err = exemplary_extract(&p, &table, None, 2, false).unwrap_err();
        match err {
            Error::InsufficientDocument { j, l, n, .. } => {
                assert_eq!((j, l, n), (1, 2, 2));
            }
            other => panic!("expected insufficient-document error, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_summary_sentence_takes_lowest_unexcluded_and_flags() {
        let table = line_table();
        let p = pair("p", &["d2", "d1", "d0"], &["zzz unknown", "s0"]);
        let labels = exemplary_extract(&p, &table, None, 1, false).unwrap();
        assert_eq!(labels.k[0], vec![0]);
        // s0 at 11 then picks d1 at index 1 (distance 1).
        assert_eq!(labels.k[1], vec![1]);
        assert_eq!(labels.flags, vec!["degenerate-summary-sentence:1"]);
    }

    #[test]
    fn pruned_and_unpruned_labels_are_identical() {
        let table = line_table();
        let p = pair(
            "p",
            &["d0 d1", "d1 d2", "d2 d3", "d0 d3", "d1", "d3"],
            &["s0 s1", "d2", "s1 d3"],
        );
        let pruned = exemplary_extract(&p, &table, None, 2, true).unwrap();
        let unpruned = exemplary_extract(&p, &table, None, 2, false).unwrap();
        assert_eq!(pruned, unpruned);
    }

    #[test]
    fn examples_concatenate_picks_in_order() {
        let table = line_table();
        let p = pair("p", &["d0 d0", "d1", "d2"], &["s0"]);
        let labels = exemplary_extract(&p, &table, None, 2, false).unwrap();
        assert_eq!(labels.k, vec![vec![1, 2]]);
        let examples = build_paraphraser_examples(&p, &labels);
        assert_eq!(examples.len(), 1);
        assert_eq!(examples[0].j, 1);
        assert_eq!(examples[0].input, "d1 d2");
        assert_eq!(examples[0].target, "s0");
    }

    #[test]
    fn label_corpus_preserves_order_and_isolates_failures() {
        let table = line_table();
        let pairs = vec![
            pair("ok", &["d0", "d1"], &["s0"]),
            pair("bad", &[], &["s0"]),
            pair("ok2", &["d2"], &["s1"]),
        ];
        let results = label_corpus(&pairs, &table, None, 1, true, 2).unwrap();
        assert_eq!(results.len(), 3);
        assert_eq!(results[0].0, "ok");
        assert!(results[0].1.is_ok());
        assert!(results[1].1.is_err());
        assert_eq!(results[2].0, "ok2");
        assert!(results[2].1.is_ok());
    }
}
