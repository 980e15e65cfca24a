//! Semantic-overlap machinery for extract-then-paraphrase summarization:
//! exact word-mover distances between sentences, a bounded similarity
//! transform usable as a training reward, exemplary-sentence extraction
//! labels, trigram-blocked beam reranking, and ROUGE plus semantic
//! evaluation.
//!
//! The primary interface is the library together with the runnable
//! examples below; the thin `semoverlap` binary exposes the same drivers
//! as `label`, `reward`, `score`, `analyze`, and `rerank` subcommands for
//! pipeline use.
//!
//! ## Examples
//!
//! One example per major capability:
//!
//! - **`sentence_distance`** - exact word-mover distance between two
//!   sentences, with the centroid and relaxed lower bounds and an
//!   entropic approximation next to it
//! - **`reward_shaping`** - the similarity transform as a reward: shape,
//!   parameters, and ranking equivalence with raw distance
//! - **`exemplary_labels`** - label a tiny corpus with extraction indices
//!   and emit paraphraser training examples
//! - **`trigram_rerank`** - pick beam candidates under trigram blocking
//!   and see which slots were fully blocked
//! - **`score_summaries`** - ROUGE-1/2/L and the whole-summary semantic
//!   score over a toy corpus
//! - **`paraphrase_probe`** - closest-rank distance profile and two-source
//!   attribution distances
//! - **`embedding_io`** - write and reload embedding tables in the text
//!   and binary formats
//!
//! ```bash
//! cargo run -p semoverlap --example sentence_distance
//! cargo run -p semoverlap --example reward_shaping
//! cargo run -p semoverlap --example exemplary_labels
//! cargo run -p semoverlap --example trigram_rerank
//! cargo run -p semoverlap --example score_summaries
//! cargo run -p semoverlap --example paraphrase_probe
//! cargo run -p semoverlap --example embedding_io
//! ```
//!
//! ## Module map
//!
//! - [`textproc`] - tokenization, sentences, stopwords, and normalized
//!   bag-of-words distributions
//! - [`embeddings`] - embedding tables and the text/binary file formats
//! - [`transport`] - exact min-cost transport, lower bounds, and the
//!   entropic solver
//! - [`overlap`] - sentence distance and the bounded similarity transform
//! - [`labeling`] - exemplary extraction and paraphraser example assembly
//! - [`decoding`] - trigram-blocked beam reranking
//! - [`metrics`] - ROUGE-1/2/L and corpus evaluation reports
//! - [`analysis`] - closest-rank profiles and two-source attribution
//! - [`config`] - layered run configuration
//! - [`cli`] - input formats and the subcommand drivers

pub mod analysis;
pub mod cli;
pub mod config;
pub mod decoding;
pub mod embeddings;
pub mod error;
pub mod labeling;
pub mod metrics;
pub mod overlap;
pub mod textproc;
pub mod transport;

pub use error::{Error, Result};
