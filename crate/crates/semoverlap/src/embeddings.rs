//! Word-embedding tables and the two on-disk formats they load from.
//!
//! The text format is one entry per line: a token followed by `dim`
//! whitespace-separated decimal components. The binary format is an ASCII
//! header `"<vocab-count> <dim>\n"` followed by `vocab-count` records of a
//! space-terminated UTF-8 token and `dim` little-endian `f32` values.
//!
//! Duplicate tokens resolve first-wins and are tallied, never silently
//! overwritten. Optional L2 normalization is applied at load time and
//! recorded on the table.

use std::collections::HashMap;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// In-memory embedding matrix with token lookup.
///
/// Rows are stored in insertion order (file order for loaded tables), one
/// row per distinct token.
#[derive(Debug, Clone)]
pub struct EmbeddingTable {
    dim: usize,
    tokens: Vec<String>,
    index: HashMap<String, usize>,
    rows: Vec<f32>,
    normalized: bool,
    duplicate_count: usize,
}

impl EmbeddingTable {
    /// Build a table from `(token, vector)` pairs.
    ///
    /// Every vector must have length `dim`. Duplicate tokens keep the first
    /// occurrence and bump the duplicate tally.
    pub fn from_pairs<S, V>(dim: usize, pairs: impl IntoIterator<Item = (S, V)>) -> Result<Self>
    where
        S: Into<String>,
        V: AsRef<[f32]>,
    {
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "embedding dimension must be at least 1".into(),
            ));
        }
        let mut table = EmbeddingTable {
            dim,
            tokens: Vec::new(),
            index: HashMap::new(),
            rows: Vec::new(),
            normalized: false,
            duplicate_count: 0,
        };
        for (token, vector) in pairs {
            let vector = vector.as_ref();
            if vector.len() != dim {
                return Err(Error::ShapeMismatch {
                    context: format!(
                        "vector of length {} in a dimension-{} table",
                        vector.len(),
                        dim
                    ),
                });
            }
            table.insert(token.into(), vector);
        }
        Ok(table)
    }

    fn insert(&mut self, token: String, vector: &[f32]) {
        use std::collections::hash_map::Entry;
        match self.index.entry(token) {
            Entry::Occupied(_) => self.duplicate_count += 1,
            Entry::Vacant(slot) => {
                self.tokens.push(slot.key().clone());
                slot.insert(self.rows.len() / self.dim);
                self.rows.extend_from_slice(vector);
            }
        }
    }

    /// Vector dimensionality. Always at least 1.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of distinct tokens in the table.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    /// True when the table holds no tokens.
    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Whether rows were L2-normalized at load time.
    pub fn normalized(&self) -> bool {
        self.normalized
    }

    /// How many duplicate tokens were skipped (first occurrence wins).
    pub fn duplicate_count(&self) -> usize {
        self.duplicate_count
    }

    /// Case-sensitive token lookup.
    pub fn lookup(&self, token: &str) -> Option<&[f32]> {
        self.index.get(token).map(|&row| self.row(row))
    }

    /// Row id for a token, if present.
    pub fn row_id(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    /// Vector for a row id. Panics if out of range.
    pub fn row(&self, row_id: usize) -> &[f32] {
        &self.rows[row_id * self.dim..(row_id + 1) * self.dim]
    }

    /// Token for a row id. Panics if out of range.
    pub fn token(&self, row_id: usize) -> &str {
        &self.tokens[row_id]
    }

    /// L2-normalize every row in place and record the flag.
    ///
    /// Zero rows are left untouched.
    pub fn normalize_rows(&mut self) {
        for row_id in 0..self.len() {
            let start = row_id * self.dim;
            let norm: f32 = self.rows[start..start + self.dim]
                .iter()
                .map(|v| v * v)
                .sum::<f32>()
                .sqrt();
            if norm > 0.0 {
                for v in &mut self.rows[start..start + self.dim] {
                    *v /= norm;
                }
            }
        }
        self.normalized = true;
    }

    /// Write the table in the text format.
    ///
    /// Components use the shortest decimal form that parses back to the
    /// identical `f32`, so an unnormalized write/reload round-trips
    /// bit-for-bit.
    pub fn write_text(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        for row_id in 0..self.len() {
            out.push_str(self.token(row_id));
            for v in self.row(row_id) {
                out.push(' ');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        fs::write(path, out).map_err(|e| Error::io(path, e))
    }

    /// Write the table in the binary format.
    pub fn write_binary(&self, path: &Path) -> Result<()> {
        let mut buf: Vec<u8> = Vec::new();
        writeln!(buf, "{} {}", self.len(), self.dim).expect("write to Vec cannot fail");
        for row_id in 0..self.len() {
            buf.extend_from_slice(self.token(row_id).as_bytes());
            buf.push(b' ');
            for v in self.row(row_id) {
                buf.extend_from_slice(&v.to_le_bytes());
            }
        }
        fs::write(path, buf).map_err(|e| Error::io(path, e))
    }
}

/// Load embeddings from the text format.
///
/// The first usable line fixes the dimensionality; later lines that disagree
/// raise a parse error naming their line number. Blank lines are skipped.
/// Reading stops once `limit` entries are stored. A file with zero usable
/// lines is an empty-vocabulary error.
pub fn load_text_embeddings(
    path: &Path,
    limit: Option<usize>,
    normalize: bool,
) -> Result<EmbeddingTable> {
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut dim: Option<usize> = None;
    let mut tokens: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut rows: Vec<f32> = Vec::new();
    let mut duplicate_count = 0usize;

    for (line_no, line) in content.lines().enumerate() {
        let line_no = line_no + 1;
        if limit.is_some_and(|l| tokens.len() >= l) {
            break;
        }
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let token = parts.next().expect("non-blank line has a first field");
        let values: Vec<&str> = parts.collect();
        if values.is_empty() {
            return Err(Error::parse(path, line_no, "no vector components"));
        }
        let expected = *dim.get_or_insert(values.len());
        if values.len() != expected {
            return Err(Error::parse(
                path,
                line_no,
                format!("expected {expected} components, found {}", values.len()),
            ));
        }
        let mut vector = Vec::with_capacity(expected);
        for raw in values {
            let v: f32 = raw.parse().map_err(|_| {
                Error::parse(path, line_no, format!("not a decimal number: {raw:?}"))
            })?;
            vector.push(v);
        }
        if index.contains_key(token) {
            duplicate_count += 1;
            continue;
        }
        index.insert(token.to_string(), tokens.len());
        tokens.push(token.to_string());
        rows.extend_from_slice(&vector);
    }

    finish_load(path, dim, tokens, index, rows, duplicate_count, normalize)
}

/// Load embeddings from the binary format.
///
/// The header declares the record count and dimensionality; a payload that
/// ends early reports expected versus actual byte counts. Reading stops once
/// `limit` entries are stored.
pub fn load_binary_embeddings(
    path: &Path,
    limit: Option<usize>,
    normalize: bool,
) -> Result<EmbeddingTable> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let newline = bytes
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| Error::parse(path, 1, "missing header line"))?;
    let header = std::str::from_utf8(&bytes[..newline])
        .map_err(|_| Error::parse(path, 1, "header is not UTF-8"))?;
    let mut fields = header.split_whitespace();
    let count: usize = fields
        .next()
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| Error::parse(path, 1, "header must be \"<vocab-count> <dim>\""))?;
    let dim: usize = fields
        .next()
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| Error::parse(path, 1, "header must be \"<vocab-count> <dim>\""))?;
    if fields.next().is_some() {
        return Err(Error::parse(path, 1, "header has trailing fields"));
    }
    if dim == 0 {
        return Err(Error::parse(path, 1, "dimension must be at least 1"));
    }

    let mut pos = newline + 1;
    let mut tokens: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut rows: Vec<f32> = Vec::new();
    let mut duplicate_count = 0usize;

    for record in 0..count {
        if limit.is_some_and(|l| tokens.len() >= l) {
            break;
        }
        let token_end = bytes[pos..]
            .iter()
            .position(|&b| b == b' ')
            .map(|off| pos + off)
            .ok_or(Error::TruncatedPayload {
                path: path.to_path_buf(),
                expected: (pos + 1 + 4 * dim) as u64,
                actual: bytes.len() as u64,
            })?;
        let token = std::str::from_utf8(&bytes[pos..token_end]).map_err(|_| {
            Error::parse(path, record + 1, "token bytes are not UTF-8")
        })?;
        let vec_start = token_end + 1;
        let vec_end = vec_start + 4 * dim;
        if vec_end > bytes.len() {
            return Err(Error::TruncatedPayload {
                path: path.to_path_buf(),
                expected: vec_end as u64,
                actual: bytes.len() as u64,
            });
        }
        let vector: Vec<f32> = bytes[vec_start..vec_end]
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect();
        if index.contains_key(token) {
            duplicate_count += 1;
        } else {
            index.insert(token.to_string(), tokens.len());
            tokens.push(token.to_string());
            rows.extend_from_slice(&vector);
        }
        pos = vec_end;
    }

    finish_load(
        path,
        Some(dim),
        tokens,
        index,
        rows,
        duplicate_count,
        normalize,
    )
}

fn finish_load(
    path: &Path,
    dim: Option<usize>,
    tokens: Vec<String>,
    index: HashMap<String, usize>,
    rows: Vec<f32>,
    duplicate_count: usize,
    normalize: bool,
) -> Result<EmbeddingTable> {
    let dim = dim.unwrap_or(0);
    if tokens.is_empty() || dim == 0 {
        return Err(Error::EmptyVocabulary {
            path: path.to_path_buf(),
        });
    }
    let mut table = EmbeddingTable {
        dim,
        tokens,
        index,
        rows,
        normalized: false,
        duplicate_count,
    };
    if normalize {
        table.normalize_rows();
    }
    Ok(table)
}
