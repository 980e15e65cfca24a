//! Write and reload embedding tables in the text and binary formats.
//!
//! Run with: `cargo run -p semoverlap --example embedding_io`

mod common;

use semoverlap::embeddings::{load_binary_embeddings, load_text_embeddings};
use std::fs;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = common::demo_table();
    let dir = tempfile::tempdir()?;
    let text_path = dir.path().join("demo.vec");
    let binary_path = dir.path().join("demo.bin");

    table.write_text(&text_path)?;
    table.write_binary(&binary_path)?;
    println!(
        "wrote {} tokens of dimension {}: text {} bytes, binary {} bytes",
        table.len(),
        table.dim(),
        fs::metadata(&text_path)?.len(),
        fs::metadata(&binary_path)?.len()
    );
    println!();

    println!("text format is one `token v1 .. vD` line per entry:");
    for line in fs::read_to_string(&text_path)?.lines().take(3) {
        println!("  {line}");
    }
    println!("  ...");
    println!("binary format is an ASCII `count dim` header, then space-");
    println!("terminated tokens each followed by dim little-endian f32s.");
    println!();

    let from_text = load_text_embeddings(&text_path, None, false)?;
    let from_binary = load_binary_embeddings(&binary_path, None, false)?;
    let text_identical = tables_match(&table, &from_text);
    let binary_identical = tables_match(&table, &from_binary);
    println!("text round-trip reproduces every vector bit-for-bit: {text_identical}");
    println!("binary round-trip reproduces every vector bit-for-bit: {binary_identical}");
    println!();

    // Loaders can truncate the vocabulary and L2-normalize rows on the
    // way in; both are load-time choices, not table mutations.
    let head = load_text_embeddings(&text_path, Some(4), false)?;
    println!(
        "limit 4 keeps the first entries only: {:?}",
        (0..head.len()).map(|r| head.token(r)).collect::<Vec<_>>()
    );
    let unit = load_text_embeddings(&text_path, None, true)?;
    let storm = unit.lookup("storm").expect("storm is in the table");
    println!(
        "normalized load rescales rows to unit length: storm {:?} (normalized flag: {})",
        storm,
        unit.normalized()
    );
    Ok(())
}

fn tables_match(
    left: &semoverlap::embeddings::EmbeddingTable,
    right: &semoverlap::embeddings::EmbeddingTable,
) -> bool {
    left.dim() == right.dim()
        && left.len() == right.len()
        && (0..left.len()).all(|row| {
            left.token(row) == right.token(row) && left.row(row) == right.row(row)
        })
}
