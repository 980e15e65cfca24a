//! Label which document sentences each summary sentence should copy from,
//! then emit the paraphraser training examples those labels imply.
//!
//! Run with: `cargo run -p semoverlap --example exemplary_labels`

mod common;

use semoverlap::labeling::{exemplary_extract, label_corpus};
use semoverlap::textproc::{bundled_stopwords, CorpusPair, Sentence, TokenizerConfig};

fn pair(id: &str, document: &[&str], summary: &[&str]) -> CorpusPair {
    let tok = TokenizerConfig::default();
    CorpusPair {
        id: id.to_string(),
        document: document.iter().map(|s| Sentence::new(*s, &tok)).collect(),
        summary: summary.iter().map(|s| Sentence::new(*s, &tok)).collect(),
    }
}

fn main() -> semoverlap::Result<()> {
    let table = common::demo_table();
    let stopwords = bundled_stopwords();

    let day1 = pair(
        "day1",
        &[
            "Thunder and wind battered the region.",
            "The storm brought heavy rain.",
            "Stocks closed higher as the market rallied.",
            "Prices rose across the market.",
            "A cat chased a dog through the yard.",
        ],
        &["Rain and storm hit overnight.", "The market saw prices rise."],
    );

    println!("document:");
    for (d, sentence) in day1.document.iter().enumerate() {
        println!("  {}. {}", d + 1, sentence.raw);
    }
    println!("summary:");
    for (j, sentence) in day1.summary.iter().enumerate() {
        println!("  {}. {}", j + 1, sentence.raw);
    }
    println!();

    let labels = exemplary_extract(&day1, &table, Some(&stopwords), 1, true)?;
    println!("one pick per summary sentence (shown 1-based):");
    for (j, picks) in labels.k.iter().enumerate() {
        let display: Vec<usize> = picks.iter().map(|d| d + 1).collect();
        println!("  summary {} <- document {:?}", j + 1, display);
    }
    println!();

    let wide = exemplary_extract(&day1, &table, Some(&stopwords), 2, true)?;
    println!("two picks per summary sentence; picks never repeat a document");
    println!("sentence, so the second pick is the runner-up topic-mate:");
    let pairs: Vec<(String, semoverlap::Result<_>)> = label_corpus(
        std::slice::from_ref(&day1),
        &table,
        Some(&stopwords),
        2,
        true,
        1,
    )?;
    let labeled = pairs[0].1.as_ref().expect("day1 labels cleanly");
    assert_eq!(labeled.labels.k, wide.k);
    for (j, picks) in wide.k.iter().enumerate() {
        let display: Vec<usize> = picks.iter().map(|d| d + 1).collect();
        println!("  summary {} <- documents {:?}", j + 1, display);
    }
    println!();
    println!("paraphraser training examples assembled from those picks:");
    for example in &labeled.examples {
        println!("  pair {} sentence {}:", example.id, example.j);
        println!("    input:  {}", example.input);
        println!("    target: {}", example.target);
    }
    println!();

    let day2 = pair(
        "day2",
        &["The cat slept.", "A dog barked."],
        &["Zzz."],
    );
    let results = label_corpus(
        &[day1, day2],
        &table,
        Some(&stopwords),
        1,
        true,
        1,
    )?;
    println!("batch labeling flags degenerate inputs instead of failing:");
    for (id, result) in &results {
        match result {
            Ok(labeled) => println!(
                "  {id}: k {:?} flags {:?}",
                labeled.labels.k.iter().map(|p| p[0] + 1).collect::<Vec<_>>(),
                labeled.labels.flags
            ),
            Err(error) => println!("  {id}: {error}"),
        }
    }
    println!();
    println!("day2's summary sentence has no in-vocabulary token, so its pick");
    println!("falls back to the first unused document sentence and the pair is");
    println!("flagged rather than dropped.");
    Ok(())
}
