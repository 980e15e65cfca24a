//! Shared test infrastructure: an independent transportation-LP solver,
//! policy oracles that recompute expected outputs from first principles,
//! and seeded random generators.
//!
//! The solvers and counters here deliberately share no code path with the
//! library implementations they check.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semoverlap::embeddings::EmbeddingTable;
use semoverlap::textproc::{to_nbow, CorpusPair, NBow, Sentence};

/// Exact optimum of the transportation LP `min c.x` subject to row sums
/// `a`, column sums `b`, `x >= 0`, by a dense two-phase simplex with
/// Bland's rule. Returns the objective and the flow, row-major.
pub fn lp_transport(a: &[f64], b: &[f64], costs: &[f64]) -> (f64, Vec<f64>) {
    let m = a.len();
    let n = b.len();
    assert_eq!(costs.len(), m * n, "cost matrix shape");
    // The m row-sum constraints plus the first n-1 column-sum constraints
    // have full row rank; the last column sum is implied by mass balance.
    let rows = m + n - 1;
    let vars = m * n;
    let total = vars + rows;
    let mut tableau = vec![vec![0.0f64; total + 1]; rows];
    for i in 0..m {
        for j in 0..n {
            tableau[i][i * n + j] = 1.0;
        }
        tableau[i][total] = a[i];
    }
    for j in 0..n - 1 {
        for i in 0..m {
            tableau[m + j][i * n + j] = 1.0;
        }
        tableau[m + j][total] = b[j];
    }
    for r in 0..rows {
        tableau[r][vars + r] = 1.0;
    }
    let mut basis: Vec<usize> = (vars..total).collect();

    // Phase 1: drive the artificial mass to zero.
    let mut phase1 = vec![0.0f64; total];
    for slot in phase1.iter_mut().skip(vars) {
        *slot = 1.0;
    }
    simplex(&mut tableau, &mut basis, &phase1, total);
    let residual: f64 = basis
        .iter()
        .zip(&tableau)
        .map(|(&bv, row)| if bv >= vars { row[total] } else { 0.0 })
        .sum();
    assert!(
        residual.abs() < 1e-8,
        "transportation LP is always feasible, residual {residual}"
    );
    for r in 0..rows {
        if basis[r] >= vars {
            // A zero-value artificial can always be swapped for an original
            // column because the constraint rows are linearly independent.
            let col = (0..vars)
                .find(|&c| tableau[r][c].abs() > 1e-9)
                .expect("full-rank row admits a pivot");
            pivot(&mut tableau, &mut basis, r, col);
        }
    }

    // Phase 2 over the real objective; artificial columns stay ineligible.
    let mut phase2 = vec![0.0f64; total];
    phase2[..vars].copy_from_slice(costs);
    simplex(&mut tableau, &mut basis, &phase2, vars);

    let mut flow = vec![0.0f64; vars];
    for (r, &bv) in basis.iter().enumerate() {
        if bv < vars {
            flow[bv] = tableau[r][total];
        }
    }
    let objective = flow.iter().zip(costs).map(|(f, c)| f * c).sum();
    (objective, flow)
}

fn simplex(tableau: &mut [Vec<f64>], basis: &mut [usize], obj: &[f64], eligible: usize) {
    let rows = tableau.len();
    let rhs = tableau[0].len() - 1;
    for _round in 0..10_000 {
        // Bland: the lowest-index column with a negative reduced cost
        // enters; none means optimal.
        let mut entering = None;
        for c in 0..eligible {
            if basis.contains(&c) {
                continue;
            }
            let mut rc = obj[c];
            for r in 0..rows {
                rc -= obj[basis[r]] * tableau[r][c];
            }
            if rc < -1e-10 {
                entering = Some(c);
                break;
            }
        }
        let Some(entering) = entering else { return };
        // Minimum-ratio row; ties go to the lowest basic index (Bland).
        let mut leaving: Option<(usize, f64)> = None;
        for r in 0..rows {
            if tableau[r][entering] > 1e-11 {
                let ratio = tableau[r][rhs] / tableau[r][entering];
                let better = match leaving {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < lratio - 1e-12
                            || ((ratio - lratio).abs() <= 1e-12 && basis[r] < basis[lr])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
        }
        let (leave_row, _) = leaving.expect("transportation polytope is bounded");
        pivot(tableau, basis, leave_row, entering);
    }
    panic!("simplex exceeded its pivot budget");
}

fn pivot(tableau: &mut [Vec<f64>], basis: &mut [usize], row: usize, col: usize) {
    let inv = 1.0 / tableau[row][col];
    for value in tableau[row].iter_mut() {
        *value *= inv;
    }
    tableau[row][col] = 1.0;
    let pivot_row = tableau[row].clone();
    for (r, other) in tableau.iter_mut().enumerate() {
        if r == row || other[col] == 0.0 {
            continue;
        }
        let factor = other[col];
        for (value, &p) in other.iter_mut().zip(&pivot_row) {
            *value -= factor * p;
        }
        other[col] = 0.0;
    }
    basis[row] = col;
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random embedding table with tokens `w0..w{vocab-1}` and coordinates
/// uniform in [-1, 1].
pub fn random_table(rng: &mut ChaCha8Rng, vocab: usize, dim: usize) -> EmbeddingTable {
    let pairs: Vec<(String, Vec<f32>)> = (0..vocab)
        .map(|i| {
            (
                format!("w{i}"),
                (0..dim).map(|_| rng.gen_range(-1.0f32..1.0)).collect(),
            )
        })
        .collect();
    EmbeddingTable::from_pairs(dim, pairs).expect("generated table is valid")
}

/// Random in-vocabulary sentence with at most `max_distinct` distinct
/// tokens, each repeated up to `max_repeat` times.
pub fn random_sentence(
    rng: &mut ChaCha8Rng,
    vocab: usize,
    max_distinct: usize,
    max_repeat: usize,
) -> Sentence {
    let distinct = rng.gen_range(1..=max_distinct.min(vocab));
    let ids: Vec<usize> = (0..vocab).collect();
    let chosen: Vec<usize> = ids.choose_multiple(rng, distinct).copied().collect();
    let mut tokens = Vec::new();
    for id in chosen {
        for _ in 0..rng.gen_range(1..=max_repeat) {
            tokens.push(format!("w{id}"));
        }
    }
    tokens.shuffle(rng);
    Sentence::from_tokens(tokens)
}

/// A transport instance as raw marginals and a flat cost matrix.
pub struct FlatInstance {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub m: usize,
    pub n: usize,
    pub costs: Vec<f64>,
}

/// Random instance with supports of at most 6. Half the draws use
/// Euclidean costs between random points, half use arbitrary non-negative
/// costs; weights are exponential draws, normalized.
pub fn random_flat_instance(rng: &mut ChaCha8Rng) -> FlatInstance {
    let m = rng.gen_range(1..=6);
    let n = rng.gen_range(1..=6);
    let costs = if rng.gen_bool(0.5) {
        let dim = rng.gen_range(2..=8);
        let point = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()
        };
        let ps: Vec<Vec<f64>> = (0..m).map(|_| point(rng)).collect();
        let qs: Vec<Vec<f64>> = (0..n).map(|_| point(rng)).collect();
        let mut costs = Vec::with_capacity(m * n);
        for p in &ps {
            for q in &qs {
                let d2: f64 = p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum();
                costs.push(d2.sqrt());
            }
        }
        costs
    } else {
        (0..m * n).map(|_| rng.gen_range(0.0..5.0)).collect()
    };
    let weights = |rng: &mut ChaCha8Rng, len: usize| -> Vec<f64> {
        let raw: Vec<f64> = (0..len).map(|_| -rng.gen_range(1e-12f64..1.0).ln()).collect();
        let sum: f64 = raw.iter().sum();
        raw.into_iter().map(|w| w / sum).collect()
    };
    FlatInstance {
        a: weights(rng, m),
        b: weights(rng, n),
        m,
        n,
        costs,
    }
}

/// Random pair of non-empty distributions over a shared table, built
/// through the real text pipeline, with supports of at most 6.
pub fn random_nbow_pair(rng: &mut ChaCha8Rng, table: &EmbeddingTable) -> (NBow, NBow) {
    loop {
        let x = to_nbow(
            &random_sentence(rng, table.len(), 6, 3).tokens,
            table,
            None,
        );
        let y = to_nbow(
            &random_sentence(rng, table.len(), 6, 3).tokens,
            table,
            None,
        );
        if !x.is_empty() && !y.is_empty() {
            return (x, y);
        }
    }
}

/// Flat copy of a cost matrix produced by the library, for feeding the
/// independent solver.
pub fn flat_costs(costs: &semoverlap::transport::CostMatrix) -> Vec<f64> {
    let mut flat = Vec::with_capacity(costs.rows() * costs.cols());
    for i in 0..costs.rows() {
        for j in 0..costs.cols() {
            flat.push(costs.get(i, j));
        }
    }
    flat
}

/// Word-mover distance via the independent LP; `None` when either side is
/// empty.
pub fn oracle_wmd(
    x: &Sentence,
    y: &Sentence,
    table: &EmbeddingTable,
    stopwords: Option<&HashSet<String>>,
) -> Option<f64> {
    let a = to_nbow(&x.tokens, table, stopwords);
    let b = to_nbow(&y.tokens, table, stopwords);
    if a.is_empty() || b.is_empty() {
        return None;
    }
    let mut costs = Vec::with_capacity(a.support.len() * b.support.len());
    for &ri in &a.support {
        for &rj in &b.support {
            let d2: f64 = table
                .row(ri)
                .iter()
                .zip(table.row(rj))
                .map(|(&u, &v)| (u as f64 - v as f64) * (u as f64 - v as f64))
                .sum();
            costs.push(d2.sqrt());
        }
    }
    Some(lp_transport(&a.weights, &b.weights, &costs).0)
}

/// Expected extraction labels, recomputed from the documented policy over
/// independent LP distances. `None` means the document runs out of
/// unexcluded sentences.
pub fn oracle_labels(
    pair: &CorpusPair,
    table: &EmbeddingTable,
    stopwords: Option<&HashSet<String>>,
    n: usize,
) -> Option<(Vec<Vec<usize>>, Vec<String>)> {
    let doc_len = pair.document.len();
    let doc_degenerate: Vec<bool> = pair
        .document
        .iter()
        .map(|s| to_nbow(&s.tokens, table, stopwords).is_empty())
        .collect();
    let mut excluded = vec![false; doc_len];
    let mut k = Vec::new();
    let mut flags: Vec<String> = Vec::new();
    for (j, summary_sentence) in pair.summary.iter().enumerate() {
        let summary_degenerate =
            to_nbow(&summary_sentence.tokens, table, stopwords).is_empty();
        if summary_degenerate {
            flags.push(format!("degenerate-summary-sentence:{}", j + 1));
        }
        let mut picks = Vec::new();
        for _l in 0..n {
            let unexcluded: Vec<usize> = (0..doc_len).filter(|&d| !excluded[d]).collect();
            let first = *unexcluded.first()?;
            let pick = if summary_degenerate {
                first
            } else {
                let mut best: Option<(usize, f64)> = None;
                for &d in &unexcluded {
                    if doc_degenerate[d] {
                        continue;
                    }
                    let wmd = oracle_wmd(summary_sentence, &pair.document[d], table, stopwords)
                        .expect("both sides non-degenerate");
                    if best.is_none() || wmd < best.unwrap().1 {
                        best = Some((d, wmd));
                    }
                }
                match best {
                    Some((d, _)) => d,
                    None => {
                        let flag = format!("degenerate-document-choice:{}", j + 1);
                        if !flags.contains(&flag) {
                            flags.push(flag);
                        }
                        first
                    }
                }
            };
            excluded[pick] = true;
            picks.push(pick);
        }
        k.push(picks);
    }
    Some((k, flags))
}

/// Expected closest-rank profile means, recomputed from the documented
/// policy over independent LP distances. Returns the position-wise means,
/// or `None` when no summary sentence is usable.
pub fn oracle_profile(
    pairs: &[CorpusPair],
    table: &EmbeddingTable,
    stopwords: Option<&HashSet<String>>,
    alpha: usize,
) -> Option<Vec<f64>> {
    let mut sums = vec![0.0f64; alpha];
    let mut used = 0usize;
    for pair in pairs {
        let eligible: Vec<&Sentence> = pair
            .document
            .iter()
            .filter(|s| !to_nbow(&s.tokens, table, stopwords).is_empty())
            .collect();
        if eligible.len() < alpha {
            continue;
        }
        for summary_sentence in &pair.summary {
            if to_nbow(&summary_sentence.tokens, table, stopwords).is_empty() {
                continue;
            }
            let mut distances: Vec<f64> = eligible
                .iter()
                .map(|d| {
                    oracle_wmd(summary_sentence, d, table, stopwords)
                        .expect("both sides non-degenerate")
                })
                .collect();
            distances.sort_by(f64::total_cmp);
            for (rank, d) in distances.iter().take(alpha).enumerate() {
                sums[rank] += d;
            }
            used += 1;
        }
    }
    if used == 0 {
        return None;
    }
    Some(sums.into_iter().map(|s| s / used as f64).collect())
}

/// Independent trigram counter over one token sequence.
pub fn trigram_counts(tokens: &[String]) -> HashMap<(String, String, String), usize> {
    let mut counts = HashMap::new();
    if tokens.len() >= 3 {
        for i in 0..tokens.len() - 2 {
            let key = (
                tokens[i].clone(),
                tokens[i + 1].clone(),
                tokens[i + 2].clone(),
            );
            *counts.entry(key).or_insert(0) += 1;
        }
    }
    counts
}

/// Sentence of exactly `len` tokens drawn independently from the vocabulary.
pub fn fixed_length_sentence(rng: &mut ChaCha8Rng, vocab: usize, len: usize) -> Sentence {
    Sentence::from_tokens(
        (0..len)
            .map(|_| format!("w{}", rng.gen_range(0..vocab)))
            .collect(),
    )
}

/// Settings for [`synthetic_corpus`].
pub struct CorpusSpec {
    pub pairs: usize,
    pub doc_sentences: usize,
    pub summary_sentences: usize,
    /// Exact token count of every sentence.
    pub tokens_per_sentence: usize,
    /// Copy each summary sentence from a distinct document sentence
    /// instead of generating it.
    pub copy_from_document: bool,
}

/// Random corpus over `table`'s vocabulary. Document sentences within a
/// pair are distinct as token multisets, so distances never tie exactly.
pub fn synthetic_corpus(
    rng: &mut ChaCha8Rng,
    table: &EmbeddingTable,
    spec: &CorpusSpec,
) -> Vec<CorpusPair> {
    let vocab = table.len();
    (0..spec.pairs)
        .map(|p| {
            let mut document: Vec<Sentence> = Vec::with_capacity(spec.doc_sentences);
            let mut signatures: HashSet<Vec<String>> = HashSet::new();
            while document.len() < spec.doc_sentences {
                let sentence = fixed_length_sentence(rng, vocab, spec.tokens_per_sentence);
                let mut signature = sentence.tokens.clone();
                signature.sort();
                if signatures.insert(signature) {
                    document.push(sentence);
                }
            }
            let summary: Vec<Sentence> = if spec.copy_from_document {
                let indices: Vec<usize> = (0..spec.doc_sentences).collect();
                indices
                    .choose_multiple(rng, spec.summary_sentences)
                    .map(|&d| document[d].clone())
                    .collect()
            } else {
                (0..spec.summary_sentences)
                    .map(|_| fixed_length_sentence(rng, vocab, spec.tokens_per_sentence))
                    .collect()
            };
            CorpusPair {
                id: format!("pair-{p}"),
                document,
                summary,
            }
        })
        .collect()
}
