//! ROUGE-1/2/L and the whole-summary semantic score over a toy corpus.
//!
//! Run with: `cargo run -p semoverlap --example score_summaries`

mod common;

use semoverlap::metrics::{evaluate_corpus, rouge_n, SummaryEntry};
use semoverlap::textproc::{bundled_stopwords, Sentence, TokenizerConfig};

fn entry(id: &str, sentences: &[&str]) -> SummaryEntry {
    let tok = TokenizerConfig::default();
    SummaryEntry {
        id: id.to_string(),
        sentences: sentences.iter().map(|s| Sentence::new(*s, &tok)).collect(),
    }
}

fn main() -> semoverlap::Result<()> {
    let table = common::demo_table();
    let stopwords = bundled_stopwords();

    let candidates = vec![
        entry(
            "day1",
            &[
                "Storm and rain battered the coast.",
                "Wind kept up overnight.",
            ],
        ),
        entry("day2", &["Stocks rallied as prices rose."]),
    ];
    // Reference order does not matter; entries align by id.
    let references = vec![
        entry("day2", &["The market rally lifted prices."]),
        entry(
            "day1",
            &[
                "Rain and storm hit the coast.",
                "The wind lasted overnight.",
            ],
        ),
    ];

    let report = evaluate_corpus(&candidates, &references, &table, Some(&stopwords), 1)?;
    println!("per-pair scores (f1 for the ROUGE columns):");
    println!(
        "  {:>5}  {:>8}  {:>8}  {:>8}  {:>8}  {:>8}",
        "id", "rouge-1", "rouge-2", "rouge-l", "wms", "wms x100"
    );
    for pair in &report.pairs {
        println!(
            "  {:>5}  {:>8.4}  {:>8.4}  {:>8.4}  {:>8.4}  {:>8.2}",
            pair.id, pair.rouge1.f1, pair.rouge2.f1, pair.rouge_l.f1, pair.wms, pair.wms_x100
        );
    }
    println!();
    println!("corpus means over {} pairs:", report.pair_count);
    println!("  rouge-1 f1 {:.4}", report.mean_rouge1_f1);
    println!("  rouge-2 f1 {:.4}", report.mean_rouge2_f1);
    println!("  rouge-l f1 {:.4}", report.mean_rouge_l_f1);
    println!(
        "  wms        {:.4}  (x100: {:.2})",
        report.mean_wms, report.mean_wms_x100
    );
    println!();

    // ROUGE is lexical: day2 shares few exact tokens with its reference,
    // so its ROUGE falls well below day1's even though both stay on topic.
    // The semantic score sees the paraphrase through the embeddings.
    let day2 = report
        .pairs
        .iter()
        .find(|p| p.id == "day2")
        .expect("day2 is scored");
    println!(
        "day2 paraphrases instead of copying: rouge-1 f1 {:.4} but wms {:.4}",
        day2.rouge1.f1, day2.wms
    );
    println!();

    let one = rouge_n(&candidates[0].sentences, &references[1].sentences, 1)?;
    println!("single-pair call, full precision/recall breakdown (rouge-1):");
    println!(
        "  precision {:.4}  recall {:.4}  f1 {:.4}",
        one.precision, one.recall, one.f1
    );
    Ok(())
}
