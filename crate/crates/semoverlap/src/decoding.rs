//! Trigram-blocked reranking of beam candidates, one slot per output
//! sentence.
//!
//! Slots are resolved in order. Each slot takes its highest-scoring
//! candidate that introduces no repeated trigram into the running
//! concatenation: no trigram already emitted (including ones spanning a
//! sentence boundary) and no trigram occurring twice inside the candidate's
//! own extension. When every candidate collides, the slot keeps its best
//! candidate anyway and is reported in `blocked_slots`. Ties on score break
//! toward the lower candidate index.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Three consecutive tokens.
pub type Trigram = (String, String, String);

/// A scored candidate sentence for one slot.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamCandidate {
    pub tokens: Vec<String>,
    pub score: f64,
}

/// Outcome of reranking one slot list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RerankResult {
    /// Chosen candidate index per slot (0-based).
    pub chosen: Vec<usize>,
    /// Slots (0-based) where every candidate collided and the best one was
    /// kept regardless.
    pub blocked_slots: Vec<usize>,
}

/// True iff any contiguous trigram of `tokens` is already in `seen` or
/// occurs twice within `tokens` itself.
pub fn has_repeated_trigram(tokens: &[String], seen: &HashSet<Trigram>) -> bool {
    let mut local: HashSet<Trigram> = HashSet::new();
    for window in tokens.windows(3) {
        let key = (window[0].clone(), window[1].clone(), window[2].clone());
        if seen.contains(&key) || !local.insert(key) {
            return true;
        }
    }
    false
}

fn trigrams(tokens: &[String]) -> impl Iterator<Item = Trigram> + '_ {
    tokens
        .windows(3)
        .map(|w| (w[0].clone(), w[1].clone(), w[2].clone()))
}

/// Pick one candidate per slot under trigram blocking.
pub fn rerank(slots: &[Vec<BeamCandidate>]) -> Result<RerankResult> {
    for (slot, candidates) in slots.iter().enumerate() {
        if candidates.is_empty() {
            return Err(Error::EmptySlot { slot });
        }
        if let Some(bad) = candidates.iter().find(|c| !c.score.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "candidate score must be finite, got {} in slot {slot}",
                bad.score
            )));
        }
    }

    let mut chosen = Vec::with_capacity(slots.len());
    let mut blocked_slots = Vec::new();
    let mut seen: HashSet<Trigram> = HashSet::new();
    // Last two emitted tokens; prepending them to a candidate makes its
    // trigram check cover sentence-boundary spans.
    let mut tail: Vec<String> = Vec::new();

    for (slot, candidates) in slots.iter().enumerate() {
        let mut order: Vec<usize> = (0..candidates.len()).collect();
        order.sort_by(|&x, &y| {
            candidates[y]
                .score
                .partial_cmp(&candidates[x].score)
                .expect("scores validated finite")
                .then(x.cmp(&y))
        });

        let mut pick = None;
        for &idx in &order {
            let extended = extend(&tail, &candidates[idx].tokens);
            if !has_repeated_trigram(&extended, &seen) {
                pick = Some(idx);
                break;
            }
        }
        let idx = match pick {
            Some(idx) => idx,
            None => {
                blocked_slots.push(slot);
                order[0]
            }
        };

        let extended = extend(&tail, &candidates[idx].tokens);
        seen.extend(trigrams(&extended));
        let emitted: Vec<String> = extended;
        tail = emitted
            .iter()
            .rev()
            .take(2)
            .rev()
            .cloned()
            .collect();
        chosen.push(idx);
    }

    Ok(RerankResult {
        chosen,
        blocked_slots,
    })
}

fn extend(tail: &[String], tokens: &[String]) -> Vec<String> {
    let mut extended = Vec::with_capacity(tail.len() + tokens.len());
    extended.extend(tail.iter().cloned());
    extended.extend(tokens.iter().cloned());
    extended
}
