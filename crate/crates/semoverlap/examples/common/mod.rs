//! Shared fixture for the runnable examples: a small hand-built embedding
//! table whose distances are easy to check by eye.

use semoverlap::embeddings::EmbeddingTable;

/// Twelve 2-d vectors in three topic clusters: weather near `(0, 10)`,
/// finance near `(10, 0)`, animals near `(5, 5)`. Each cluster is a unit
/// square, so within-cluster distances are 1 or sqrt(2) while
/// cross-cluster distances are an order of magnitude larger.
pub fn demo_table() -> EmbeddingTable {
    let entries: [(&str, [f32; 2]); 12] = [
        ("storm", [0.0, 10.0]),
        ("rain", [1.0, 10.0]),
        ("wind", [0.0, 9.0]),
        ("thunder", [1.0, 9.0]),
        ("market", [10.0, 0.0]),
        ("stocks", [11.0, 0.0]),
        ("prices", [10.0, 1.0]),
        ("rally", [11.0, 1.0]),
        ("cat", [5.0, 5.0]),
        ("dog", [6.0, 5.0]),
        ("bird", [5.0, 6.0]),
        ("fish", [6.0, 6.0]),
    ];
    EmbeddingTable::from_pairs(2, entries).expect("demo table entries are well formed")
}
