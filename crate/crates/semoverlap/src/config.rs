//! Run configuration shared by every subcommand.
//!
//! Values resolve in three layers: built-in defaults, then a TOML file named
//! by the `SEMOVERLAP_CONFIG` environment variable, then explicit
//! command-line flags. Later layers override earlier ones field by field.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::embeddings::{load_binary_embeddings, load_text_embeddings, EmbeddingTable};
use crate::error::{Error, Result};
use crate::textproc::{bundled_stopwords, load_stopwords};

/// On-disk embedding layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingFormat {
    /// One `token v1 .. vD` line per entry.
    Text,
    /// ASCII `count dim` header, then space-terminated tokens with
    /// little-endian `f32` vectors.
    Binary,
}

impl EmbeddingFormat {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "text" => Ok(EmbeddingFormat::Text),
            "binary" => Ok(EmbeddingFormat::Binary),
            other => Err(Error::Config(format!(
                "unknown embeddings format {other:?}; expected \"text\" or \"binary\""
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EmbeddingFormat::Text => "text",
            EmbeddingFormat::Binary => "binary",
        }
    }
}

/// Which stopword list to subtract before building distributions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StopwordSetting {
    /// The list compiled into the binary.
    Bundled,
    /// No filtering.
    None,
    /// A caller-provided list, one token per line.
    File(PathBuf),
}

impl StopwordSetting {
    /// Parse the setting from its configuration spelling: the keywords
    /// `bundled` and `none`, or anything else as a file path.
    pub fn parse(value: &str) -> Self {
        match value {
            "bundled" => StopwordSetting::Bundled,
            "none" => StopwordSetting::None,
            path => StopwordSetting::File(PathBuf::from(path)),
        }
    }

    /// The configuration spelling of this setting.
    pub fn display(&self) -> String {
        match self {
            StopwordSetting::Bundled => "bundled".into(),
            StopwordSetting::None => "none".into(),
            StopwordSetting::File(path) => path.display().to_string(),
        }
    }
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub embeddings: Option<PathBuf>,
    pub embeddings_format: EmbeddingFormat,
    /// Keep at most this many embedding entries.
    pub limit: Option<usize>,
    /// Scale embedding rows to unit length after loading.
    pub normalize: bool,
    pub stopwords: StopwordSetting,
    /// Similarity transform numerator shift; finite and non-negative.
    pub a: f64,
    /// Similarity transform distance scale; finite and positive.
    pub b: f64,
    /// Exemplary sentences to extract per summary sentence.
    pub n: usize,
    /// Closest document sentences per summary sentence in the profile.
    pub alpha: usize,
    pub workers: usize,
    /// Apply lower-bound pruning during extraction.
    pub prune: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            embeddings: None,
            embeddings_format: EmbeddingFormat::Text,
            limit: None,
            normalize: false,
            stopwords: StopwordSetting::Bundled,
            a: 1.0,
            b: 0.5,
            n: 1,
            alpha: 5,
            workers: 1,
            prune: true,
        }
    }
}

impl RunConfig {
    /// Reject values no subcommand could run with.
    pub fn validate(&self) -> Result<()> {
        if !self.a.is_finite() || self.a < 0.0 {
            return Err(Error::Config(format!(
                "a must be finite and non-negative, got {}",
                self.a
            )));
        }
        if !self.b.is_finite() || self.b <= 0.0 {
            return Err(Error::Config(format!(
                "b must be finite and positive, got {}",
                self.b
            )));
        }
        if self.n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if self.alpha == 0 {
            return Err(Error::Config("alpha must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if let Some(0) = self.limit {
            return Err(Error::Config("limit must be at least 1".into()));
        }
        Ok(())
    }

    /// Load the embedding table this configuration points at.
    pub fn load_table(&self) -> Result<EmbeddingTable> {
        let path = self.embeddings.as_deref().ok_or_else(|| {
            Error::Config("an embeddings path is required for this command".into())
        })?;
        match self.embeddings_format {
            EmbeddingFormat::Text => load_text_embeddings(path, self.limit, self.normalize),
            EmbeddingFormat::Binary => load_binary_embeddings(path, self.limit, self.normalize),
        }
    }

    /// Materialize the configured stopword set.
    pub fn stopword_set(&self) -> Result<Option<HashSet<String>>> {
        match &self.stopwords {
            StopwordSetting::Bundled => Ok(Some(bundled_stopwords())),
            StopwordSetting::None => Ok(None),
            StopwordSetting::File(path) => load_stopwords(path).map(Some),
        }
    }

    /// Overlay every field the file sets.
    pub fn apply_file(&mut self, file: &ConfigFile) {
        if let Some(path) = &file.embeddings {
            self.embeddings = Some(PathBuf::from(path));
        }
        if let Some(format) = file.embeddings_format {
            self.embeddings_format = format;
        }
        if let Some(limit) = file.limit {
            self.limit = Some(limit);
        }
        if let Some(normalize) = file.normalize {
            self.normalize = normalize;
        }
        if let Some(stopwords) = &file.stopwords {
            self.stopwords = StopwordSetting::parse(stopwords);
        }
        if let Some(a) = file.a {
            self.a = a;
        }
        if let Some(b) = file.b {
            self.b = b;
        }
        if let Some(n) = file.n {
            self.n = n;
        }
        if let Some(alpha) = file.alpha {
            self.alpha = alpha;
        }
        if let Some(workers) = file.workers {
            self.workers = workers;
        }
        if let Some(prune) = file.prune {
            self.prune = prune;
        }
    }

    /// The resolved configuration as a JSON object with sorted keys, echoed
    /// into outputs so results carry their settings.
    ///
    /// Execution-only knobs (worker count) are omitted: they never change
    /// results, and outputs must be byte-identical across worker counts.
    pub fn meta_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a": self.a,
            "alpha": self.alpha,
            "b": self.b,
            "embeddings": self.embeddings.as_ref().map(|p| p.display().to_string()),
            "embeddings_format": self.embeddings_format.name(),
            "limit": self.limit,
            "n": self.n,
            "normalize": self.normalize,
            "prune": self.prune,
            "stopwords": self.stopwords.display(),
        })
    }
}

/// Partial configuration as read from a TOML file; unset fields inherit.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub embeddings: Option<String>,
    #[serde(default, deserialize_with = "deserialize_format")]
    pub embeddings_format: Option<EmbeddingFormat>,
    pub limit: Option<usize>,
    pub normalize: Option<bool>,
    /// `"bundled"`, `"none"`, or a file path.
    pub stopwords: Option<String>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub n: Option<usize>,
    pub alpha: Option<usize>,
    pub workers: Option<usize>,
    pub prune: Option<bool>,
}

fn deserialize_format<'de, D>(deserializer: D) -> std::result::Result<Option<EmbeddingFormat>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    let name: Option<String> = Option::deserialize(deserializer)?;
    name.map(|n| EmbeddingFormat::parse(&n).map_err(serde::de::Error::custom))
        .transpose()
}

/// Name of the environment variable holding a configuration file path.
pub const CONFIG_ENV_VAR: &str = "SEMOVERLAP_CONFIG";

/// Parse a configuration file.
pub fn load_config_file(path: &Path) -> Result<ConfigFile> {
    let content = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    toml::from_str(&content)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

/// The configuration file named by `SEMOVERLAP_CONFIG`, if the variable is
/// set and non-empty.
pub fn config_file_from_env() -> Result<Option<ConfigFile>> {
    match std::env::var_os(CONFIG_ENV_VAR) {
        Some(value) if !value.is_empty() => {
            load_config_file(Path::new(&value)).map(Some)
        }
        _ => Ok(None),
    }
}
