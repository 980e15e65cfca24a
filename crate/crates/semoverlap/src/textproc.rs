//! Tokenization, stopword handling, and normalized bag-of-words vectors.
//!
//! A sentence becomes an nBOW in three steps: tokenize, drop stopwords and
//! out-of-vocabulary tokens, then normalize the surviving counts to sum to
//! one. An nBOW may come out empty; that is reported, not raised, and the
//! overlap layer decides what an empty side means.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use crate::embeddings::EmbeddingTable;
use crate::error::{Error, Result};

/// Tokenizer switches. Defaults: lowercase on, punctuation stripping on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TokenizerConfig {
    /// Lowercase tokens.
    pub lowercase: bool,
    /// Split at punctuation boundaries and drop punctuation-only tokens.
    /// When off, tokens are whitespace-delimited chunks kept verbatim.
    pub strip_punctuation: bool,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        TokenizerConfig {
            lowercase: true,
            strip_punctuation: true,
        }
    }
}

/// A sentence with its original text and tokenized form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub raw: String,
    pub tokens: Vec<String>,
}

impl Sentence {
    /// Tokenize `raw` under `config`.
    pub fn new(raw: impl Into<String>, config: &TokenizerConfig) -> Self {
        let raw = raw.into();
        let tokens = tokenize(&raw, config);
        Sentence { raw, tokens }
    }

    /// Build a sentence directly from tokens (raw text is their join).
    pub fn from_tokens(tokens: Vec<String>) -> Self {
        Sentence {
            raw: tokens.join(" "),
            tokens,
        }
    }
}

/// One document/summary pair of a corpus.
#[derive(Debug, Clone)]
pub struct CorpusPair {
    pub id: String,
    pub document: Vec<Sentence>,
    pub summary: Vec<Sentence>,
}

/// Normalized bag of words over embedding-table row ids.
///
/// `support` is ordered by first occurrence in the token stream and holds no
/// duplicates. Weights are positive and sum to one unless the support is
/// empty.
#[derive(Debug, Clone, PartialEq)]
pub struct NBow {
    pub support: Vec<usize>,
    pub weights: Vec<f64>,
    /// Token count before stopword and vocabulary filtering.
    pub source_token_count: usize,
}

impl NBow {
    /// True when no token survived filtering.
    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }
}

/// Split `raw` into tokens under `config`.
///
/// With punctuation stripping on, tokens are maximal alphanumeric runs, so
/// `"The cat sat."` yields `["the", "cat", "sat"]`. With it off, tokens are
/// whitespace-delimited chunks kept verbatim, so `"U.S. economy"` yields
/// `["u.s.", "economy"]`. Idempotent on its own output joined by spaces.
pub fn tokenize(raw: &str, config: &TokenizerConfig) -> Vec<String> {
    let lowered;
    let text: &str = if config.lowercase {
        lowered = raw.to_lowercase();
        &lowered
    } else {
        raw
    };
    if config.strip_punctuation {
        let mut tokens = Vec::new();
        let mut current = String::new();
        for ch in text.chars() {
            if ch.is_alphanumeric() {
                current.push(ch);
            } else if !current.is_empty() {
                tokens.push(std::mem::take(&mut current));
            }
        }
        if !current.is_empty() {
            tokens.push(current);
        }
        tokens
    } else {
        text.split_whitespace().map(str::to_string).collect()
    }
}

/// Concatenate sentences into one, preserving token order.
pub fn concat_sentences(sentences: &[Sentence]) -> Sentence {
    let mut tokens = Vec::with_capacity(sentences.iter().map(|s| s.tokens.len()).sum());
    for sentence in sentences {
        tokens.extend(sentence.tokens.iter().cloned());
    }
    Sentence::from_tokens(tokens)
}

/// Build an nBOW from tokens against an embedding table.
///
/// Stopwords (when given) and out-of-vocabulary tokens are dropped before
/// counting; the remaining counts are normalized to sum to one.
pub fn to_nbow(
    tokens: &[String],
    table: &EmbeddingTable,
    stopwords: Option<&HashSet<String>>,
) -> NBow {
    let mut support: Vec<usize> = Vec::new();
    let mut counts: Vec<f64> = Vec::new();
    let mut slot_of: HashMap<usize, usize> = HashMap::new();
    for token in tokens {
        if stopwords.is_some_and(|s| s.contains(token)) {
            continue;
        }
        let Some(row_id) = table.row_id(token) else {
            continue;
        };
        match slot_of.get(&row_id) {
            Some(&slot) => counts[slot] += 1.0,
            None => {
                slot_of.insert(row_id, support.len());
                support.push(row_id);
                counts.push(1.0);
            }
        }
    }
    let total: f64 = counts.iter().sum();
    if total > 0.0 {
        for c in &mut counts {
            *c /= total;
        }
    }
    NBow {
        support,
        weights: counts,
        source_token_count: tokens.len(),
    }
}

/// Load a stopword file: one token per line, `#` starts a comment line,
/// blank lines are skipped.
pub fn load_stopwords(path: &Path) -> Result<HashSet<String>> {
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_stopwords(&content))
}

/// The bundled default English stopword list.
pub fn bundled_stopwords() -> HashSet<String> {
    parse_stopwords(include_str!("stopwords_en.txt"))
}

fn parse_stopwords(content: &str) -> HashSet<String> {
    content
        .lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(str::to_string)
        .collect()
}
