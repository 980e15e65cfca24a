//! Command drivers behind the `semoverlap` binary.
//!
//! Inputs are JSON Lines; blank lines are skipped and malformed lines raise
//! a parse error naming the file and line. Every file output opens with the
//! resolved configuration: JSON Lines outputs echo it as a first line of
//! the form `{"config": {...}}`, CSV outputs as a `# config: {...}` comment,
//! and the score report embeds it under a `"config"` key. The reward stream
//! carries no configuration echo. Outputs are byte-stable for a fixed input
//! and configuration, whatever the worker count.

use std::fs::File;
use std::io::{BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::analysis::{attribution, alpha_profile, profile_csv, AttributionInput};
use crate::config::{config_file_from_env, EmbeddingFormat, RunConfig, StopwordSetting};
use crate::decoding::{rerank, BeamCandidate};
use crate::error::{Error, Result};
use crate::labeling::label_corpus;
use crate::metrics::{evaluate_corpus, SummaryEntry};
use crate::overlap::{reward, RewardParams};
use crate::textproc::{CorpusPair, Sentence, TokenizerConfig};

/// Command-line flag values that override file and default settings.
///
/// `None` and `false` mean "not given", so the lower layers win.
#[derive(Debug, Clone, Default)]
pub struct FlagOverrides {
    pub embeddings: Option<PathBuf>,
    pub embeddings_format: Option<String>,
    pub limit: Option<usize>,
    pub normalize: bool,
    pub stopwords: Option<PathBuf>,
    pub no_stopwords: bool,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub n: Option<usize>,
    pub alpha: Option<usize>,
    pub workers: Option<usize>,
    pub no_prune: bool,
}

/// Resolve the effective configuration: defaults, then the TOML file named
/// by `SEMOVERLAP_CONFIG`, then explicit flags.
pub fn resolve_config(flags: &FlagOverrides) -> Result<RunConfig> {
    let mut config = RunConfig::default();
    if let Some(file) = config_file_from_env()? {
        config.apply_file(&file);
    }
    if let Some(path) = &flags.embeddings {
        config.embeddings = Some(path.clone());
    }
    if let Some(format) = &flags.embeddings_format {
        config.embeddings_format = EmbeddingFormat::parse(format)?;
    }
    if let Some(limit) = flags.limit {
        config.limit = Some(limit);
    }
    if flags.normalize {
        config.normalize = true;
    }
    if flags.stopwords.is_some() && flags.no_stopwords {
        return Err(Error::Config(
            "--stopwords and --no-stopwords are mutually exclusive".into(),
        ));
    }
    if let Some(path) = &flags.stopwords {
        config.stopwords = StopwordSetting::File(path.clone());
    }
    if flags.no_stopwords {
        config.stopwords = StopwordSetting::None;
    }
    if let Some(a) = flags.a {
        config.a = a;
    }
    if let Some(b) = flags.b {
        config.b = b;
    }
    if let Some(n) = flags.n {
        config.n = n;
    }
    if let Some(alpha) = flags.alpha {
        config.alpha = alpha;
    }
    if let Some(workers) = flags.workers {
        config.workers = workers;
    }
    if flags.no_prune {
        config.prune = false;
    }
    config.validate()?;
    Ok(config)
}

/// How many records a streaming command wrote and how many were errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamStats {
    pub records: usize,
    pub errors: usize,
}

fn parse_jsonl<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Vec<(usize, T)>> {
    let content = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut records = Vec::new();
    for (line_no, line) in content.lines().enumerate() {
        let line_no = line_no + 1;
        if line.trim().is_empty() {
            continue;
        }
        let record: T = serde_json::from_str(line)
            .map_err(|e| Error::parse(path, line_no, e.to_string()))?;
        records.push((line_no, record));
    }
    Ok(records)
}

#[derive(Deserialize)]
struct RawPair {
    id: String,
    document: Vec<String>,
    summary: Vec<String>,
}

/// Read document-summary pairs: one JSON object per line with `id`,
/// `document`, and `summary` fields, the latter two arrays of sentence
/// strings.
pub fn read_corpus_pairs(path: &Path) -> Result<Vec<CorpusPair>> {
    let tokenizer = TokenizerConfig::default();
    Ok(parse_jsonl::<RawPair>(path)?
        .into_iter()
        .map(|(_, raw)| CorpusPair {
            id: raw.id,
            document: raw
                .document
                .iter()
                .map(|s| Sentence::new(s.as_str(), &tokenizer))
                .collect(),
            summary: raw
                .summary
                .iter()
                .map(|s| Sentence::new(s.as_str(), &tokenizer))
                .collect(),
        })
        .collect())
}

#[derive(Deserialize)]
struct RawSummary {
    id: String,
    sentences: Vec<String>,
}

/// Read summaries: one JSON object per line with `id` and `sentences`.
pub fn read_summaries(path: &Path) -> Result<Vec<SummaryEntry>> {
    let tokenizer = TokenizerConfig::default();
    Ok(parse_jsonl::<RawSummary>(path)?
        .into_iter()
        .map(|(_, raw)| SummaryEntry {
            id: raw.id,
            sentences: raw
                .sentences
                .iter()
                .map(|s| Sentence::new(s.as_str(), &tokenizer))
                .collect(),
        })
        .collect())
}

#[derive(Deserialize)]
struct RawCandidate {
    text: String,
    score: f64,
}

#[derive(Deserialize)]
struct RawSlots {
    id: String,
    slots: Vec<Vec<RawCandidate>>,
}

/// One summary's beam slots, ready to rerank.
#[derive(Debug, Clone)]
pub struct SlotSet {
    pub id: String,
    pub slots: Vec<Vec<BeamCandidate>>,
}

/// Read beam candidates: one JSON object per line with `id` and `slots`,
/// an array of per-sentence candidate arrays of `{text, score}` objects.
pub fn read_slot_sets(path: &Path) -> Result<Vec<SlotSet>> {
    let tokenizer = TokenizerConfig::default();
    Ok(parse_jsonl::<RawSlots>(path)?
        .into_iter()
        .map(|(_, raw)| SlotSet {
            id: raw.id,
            slots: raw
                .slots
                .into_iter()
                .map(|slot| {
                    slot.into_iter()
                        .map(|c| BeamCandidate {
                            tokens: crate::textproc::tokenize(&c.text, &tokenizer),
                            score: c.score,
                        })
                        .collect()
                })
                .collect(),
        })
        .collect())
}

#[derive(Deserialize)]
struct RawAttribution {
    id: String,
    j: usize,
    generated: String,
    sources: Vec<String>,
}

/// Read attribution probes: one JSON object per line with `id`, a 1-based
/// `j`, a `generated` sentence, and exactly two `sources`.
pub fn read_attribution_inputs(path: &Path) -> Result<Vec<AttributionInput>> {
    let tokenizer = TokenizerConfig::default();
    let mut inputs = Vec::new();
    for (line_no, raw) in parse_jsonl::<RawAttribution>(path)? {
        if raw.sources.len() != 2 {
            return Err(Error::parse(
                path,
                line_no,
                format!("expected exactly 2 sources, found {}", raw.sources.len()),
            ));
        }
        if raw.j == 0 {
            return Err(Error::parse(path, line_no, "j is 1-based and must be at least 1"));
        }
        let mut sources = raw.sources.into_iter();
        inputs.push(AttributionInput {
            id: raw.id,
            j: raw.j,
            generated: Sentence::new(raw.generated.as_str(), &tokenizer),
            sources: [
                Sentence::new(sources.next().expect("length checked").as_str(), &tokenizer),
                Sentence::new(sources.next().expect("length checked").as_str(), &tokenizer),
            ],
        });
    }
    Ok(inputs)
}

/// Buffered output sink that names itself in errors.
struct Output {
    writer: Box<dyn Write>,
    name: PathBuf,
}

impl Output {
    fn create(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(path) => Ok(Output {
                writer: Box::new(BufWriter::new(
                    File::create(path).map_err(|e| Error::io(path, e))?,
                )),
                name: path.to_path_buf(),
            }),
            None => Ok(Output {
                writer: Box::new(std::io::stdout().lock()),
                name: PathBuf::from("stdout"),
            }),
        }
    }

    fn write_line(&mut self, line: &str) -> Result<()> {
        writeln!(self.writer, "{line}").map_err(|e| Error::io(&self.name, e))
    }

    fn write_str(&mut self, text: &str) -> Result<()> {
        self.writer
            .write_all(text.as_bytes())
            .map_err(|e| Error::io(&self.name, e))
    }

    fn finish(mut self) -> Result<()> {
        self.writer.flush().map_err(|e| Error::io(&self.name, e))
    }
}

fn meta_line(config: &RunConfig) -> String {
    serde_json::json!({ "config": config.meta_json() }).to_string()
}

fn config_comment(config: &RunConfig) -> String {
    format!("# config: {}", config.meta_json())
}

/// A distance as JSON: a number, or the string `"inf"` when infinite.
fn json_distance(value: f64) -> serde_json::Value {
    if value.is_finite() {
        serde_json::json!(value)
    } else {
        serde_json::json!("inf")
    }
}

/// Label a corpus with exemplary extraction indices and write paraphraser
/// training examples.
///
/// The labels file gets one record per pair in input order, either
/// `{"id", "n", "k", "flags"}` with 1-based indices in `k`, or
/// `{"id", "error"}` when that pair failed. The examples file gets one
/// `{"id", "j", "input", "target"}` record per summary sentence of each
/// labeled pair. A run summary `{"errors", "pairs"}` goes to stderr.
pub fn cmd_label(
    config: &RunConfig,
    pairs_path: &Path,
    out_path: &Path,
    examples_path: &Path,
) -> Result<StreamStats> {
    let table = config.load_table()?;
    let stopwords = config.stopword_set()?;
    let pairs = read_corpus_pairs(pairs_path)?;
    if pairs.is_empty() {
        return Err(Error::NoPairs(format!(
            "no pairs in {}",
            pairs_path.display()
        )));
    }
    let results = label_corpus(
        &pairs,
        &table,
        stopwords.as_ref(),
        config.n,
        config.prune,
        config.workers,
    )?;

    let mut labels_out = Output::create(Some(out_path))?;
    let mut examples_out = Output::create(Some(examples_path))?;
    labels_out.write_line(&meta_line(config))?;
    examples_out.write_line(&meta_line(config))?;
    let mut errors = 0usize;
    for (id, outcome) in &results {
        match outcome {
            Ok(labeled) => {
                let k: Vec<Vec<usize>> = labeled
                    .labels
                    .k
                    .iter()
                    .map(|row| row.iter().map(|i| i + 1).collect())
                    .collect();
                labels_out.write_line(
                    &serde_json::json!({
                        "flags": labeled.labels.flags,
                        "id": id,
                        "k": k,
                        "n": labeled.labels.n,
                    })
                    .to_string(),
                )?;
                for example in &labeled.examples {
                    examples_out.write_line(
                        &serde_json::json!({
                            "id": example.id,
                            "input": example.input,
                            "j": example.j,
                            "target": example.target,
                        })
                        .to_string(),
                    )?;
                }
            }
            Err(e) => {
                errors += 1;
                labels_out.write_line(
                    &serde_json::json!({ "error": e.to_string(), "id": id }).to_string(),
                )?;
            }
        }
    }
    labels_out.finish()?;
    examples_out.finish()?;
    let stats = StreamStats {
        records: results.len(),
        errors,
    };
    eprintln!(
        "{}",
        serde_json::json!({ "errors": stats.errors, "pairs": stats.records })
    );
    Ok(stats)
}

fn reward_response(
    request: &serde_json::Value,
    table: &crate::embeddings::EmbeddingTable,
    stopwords: Option<&std::collections::HashSet<String>>,
    params: &RewardParams,
    tokenizer: &TokenizerConfig,
) -> serde_json::Value {
    let gold = match request.get("gold").and_then(|v| v.as_str()) {
        Some(text) => text,
        None => return serde_json::json!({ "error": "missing string field \"gold\"" }),
    };
    let generated = match request.get("generated").and_then(|v| v.as_str()) {
        Some(text) => text,
        None => return serde_json::json!({ "error": "missing string field \"generated\"" }),
    };
    let gold = Sentence::new(gold, tokenizer);
    let generated = Sentence::new(generated, tokenizer);
    match reward(&gold, &generated, table, stopwords, params) {
        Ok(score) => serde_json::json!({
            "degenerate": score.degenerate,
            "wmd": json_distance(score.wmd),
            "wms": score.wms,
        }),
        Err(e) => serde_json::json!({ "error": e.to_string() }),
    }
}

/// Score gold/generated sentence pairs as a line-oriented stream.
///
/// Each input line is `{"gold", "generated"}` or `{"batch": [...]}` of such
/// objects; an `id` field is echoed back. Every input line produces exactly
/// one output line, flushed immediately, in input order; malformed lines
/// produce `{"error": ...}` and the stream continues.
pub fn cmd_reward(
    config: &RunConfig,
    input: impl BufRead,
    mut output: impl Write,
) -> Result<()> {
    let table = config.load_table()?;
    let stopwords = config.stopword_set()?;
    let params = RewardParams {
        a: config.a,
        b: config.b,
    };
    let tokenizer = TokenizerConfig::default();
    let stdin_name = Path::new("reward input");
    let stdout_name = Path::new("reward output");
    for (idx, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::io(stdin_name, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let response = match serde_json::from_str::<serde_json::Value>(&line) {
            Err(e) => serde_json::json!({ "error": format!("line {}: {e}", idx + 1) }),
            Ok(request) => {
                let mut response = if let Some(batch) = request.get("batch") {
                    match batch.as_array() {
                        Some(items) => serde_json::json!({
                            "batch": items
                                .iter()
                                .map(|item| reward_response(
                                    item,
                                    &table,
                                    stopwords.as_ref(),
                                    &params,
                                    &tokenizer,
                                ))
                                .collect::<Vec<_>>(),
                        }),
                        None => serde_json::json!({ "error": "\"batch\" must be an array" }),
                    }
                } else {
                    reward_response(&request, &table, stopwords.as_ref(), &params, &tokenizer)
                };
                if let Some(id) = request.get("id") {
                    response
                        .as_object_mut()
                        .expect("responses are objects")
                        .insert("id".to_string(), id.clone());
                }
                response
            }
        };
        writeln!(output, "{response}").map_err(|e| Error::io(stdout_name, e))?;
        output.flush().map_err(|e| Error::io(stdout_name, e))?;
    }
    Ok(())
}

/// Evaluate candidate summaries against references and write a JSON report,
/// plus an optional per-pair CSV.
pub fn cmd_score(
    config: &RunConfig,
    candidates_path: &Path,
    references_path: &Path,
    out_path: Option<&Path>,
    csv_path: Option<&Path>,
) -> Result<()> {
    let table = config.load_table()?;
    let stopwords = config.stopword_set()?;
    let candidates = read_summaries(candidates_path)?;
    let references = read_summaries(references_path)?;
    let report = evaluate_corpus(
        &candidates,
        &references,
        &table,
        stopwords.as_ref(),
        config.workers,
    )?;

    let mut value = serde_json::to_value(&report).expect("report serializes");
    value
        .as_object_mut()
        .expect("report is an object")
        .insert("config".to_string(), config.meta_json());
    let mut out = Output::create(out_path)?;
    out.write_line(&value.to_string())?;
    out.finish()?;

    if let Some(csv_path) = csv_path {
        let mut csv = Output::create(Some(csv_path))?;
        csv.write_line(&config_comment(config))?;
        csv.write_line(
            "id,rouge1_precision,rouge1_recall,rouge1_f1,\
             rouge2_precision,rouge2_recall,rouge2_f1,\
             rouge_l_precision,rouge_l_recall,rouge_l_f1,\
             wms,wms_x100,degenerate",
        )?;
        for pair in &report.pairs {
            csv.write_line(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                pair.id,
                pair.rouge1.precision,
                pair.rouge1.recall,
                pair.rouge1.f1,
                pair.rouge2.precision,
                pair.rouge2.recall,
                pair.rouge2.f1,
                pair.rouge_l.precision,
                pair.rouge_l.recall,
                pair.rouge_l.f1,
                pair.wms,
                pair.wms_x100,
                pair.wms_degenerate,
            ))?;
        }
        csv.finish()?;
    }
    Ok(())
}

/// Profile closest-sentence distances over a corpus, and optionally run the
/// two-source attribution probe.
///
/// The profile CSV gets a `# config: {...}` comment, a `rank,mean_wmd`
/// header, and one row per closeness rank; profile counters go to stderr as
/// one JSON line. Attribution output is JSON Lines: the configuration echo,
/// one `{"id", "j", "closer", "farther", "degenerate"}` record per probe,
/// and a trailing means summary.
pub fn cmd_analyze(
    config: &RunConfig,
    pairs_path: &Path,
    out_path: Option<&Path>,
    attribution_path: Option<&Path>,
    attribution_out: Option<&Path>,
) -> Result<()> {
    let attribution_files = match (attribution_path, attribution_out) {
        (Some(input), Some(output)) => Some((input, output)),
        (Some(_), None) => {
            return Err(Error::Config(
                "--attribution-out is required with --attribution".into(),
            ))
        }
        (None, _) => None,
    };
    let table = config.load_table()?;
    let stopwords = config.stopword_set()?;
    let pairs = read_corpus_pairs(pairs_path)?;
    let profile = alpha_profile(
        &pairs,
        &table,
        stopwords.as_ref(),
        config.alpha,
        config.workers,
    )?;
    let mut out = Output::create(out_path)?;
    out.write_line(&config_comment(config))?;
    out.write_str(&profile_csv(&profile))?;
    out.finish()?;
    eprintln!(
        "{}",
        serde_json::json!({
            "gap": profile.gap,
            "pairs_skipped_short": profile.pairs_skipped_short,
            "sentences_skipped_degenerate": profile.sentences_skipped_degenerate,
            "sentences_used": profile.sentences_used,
        })
    );

    if let Some((attribution_path, out_path)) = attribution_files {
        let inputs = read_attribution_inputs(attribution_path)?;
        let summary = attribution(&inputs, &table, stopwords.as_ref(), config.workers)?;
        let mut out = Output::create(Some(out_path))?;
        out.write_line(&meta_line(config))?;
        for record in &summary.records {
            out.write_line(
                &serde_json::json!({
                    "closer": json_distance(record.closer),
                    "degenerate": record.degenerate,
                    "farther": json_distance(record.farther),
                    "id": record.id,
                    "j": record.j,
                })
                .to_string(),
            )?;
        }
        out.write_line(
            &serde_json::json!({
                "mean_closer": summary.mean_closer,
                "mean_farther": summary.mean_farther,
                "records": summary.records.len(),
                "skipped_degenerate": summary.skipped_degenerate,
            })
            .to_string(),
        )?;
        out.finish()?;
    }
    Ok(())
}

/// Rerank beam slots under trigram blocking.
///
/// Output is JSON Lines in input order: the configuration echo, then per
/// input either `{"id", "chosen", "blocked_slots"}` with 0-based indices or
/// `{"id", "error"}`.
pub fn cmd_rerank(
    config: &RunConfig,
    slots_path: &Path,
    out_path: Option<&Path>,
) -> Result<StreamStats> {
    let slot_sets = read_slot_sets(slots_path)?;
    if slot_sets.is_empty() {
        return Err(Error::NoPairs(format!(
            "no slot sets in {}",
            slots_path.display()
        )));
    }
    let mut out = Output::create(out_path)?;
    out.write_line(&meta_line(config))?;
    let mut errors = 0usize;
    for set in &slot_sets {
        match rerank(&set.slots) {
            Ok(result) => out.write_line(
                &serde_json::json!({
                    "blocked_slots": result.blocked_slots,
                    "chosen": result.chosen,
                    "id": set.id,
                })
                .to_string(),
            )?,
            Err(e) => {
                errors += 1;
                out.write_line(
                    &serde_json::json!({ "error": e.to_string(), "id": set.id }).to_string(),
                )?;
            }
        }
    }
    out.finish()?;
    Ok(StreamStats {
        records: slot_sets.len(),
        errors,
    })
}
