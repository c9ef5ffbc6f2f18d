//! Empirical check that intervening-neighbours words are reduced.
//!
//! Words are grown greedily: at each step the next letter is drawn
//! uniformly among the letters whose addition keeps the property, i.e.
//! letters that either never occurred or have seen all their neighbours
//! since their last occurrence. Samples are independent ChaCha streams of
//! one master seed, so the report is reproducible and order-independent.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::graph::{CoxeterGraph, Vertex};
use crate::recognizer::{Recognizer, RecognizerError};
use crate::witness::find_affine_witness;
use crate::word::Word;

#[derive(Debug, Clone, Copy)]
pub struct SpeyerParams {
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
    /// Skip the infinite-irreducible precondition. Counterexamples are then
    /// expected: the theorem's hypothesis is being dropped on purpose.
    pub force: bool,
}

#[derive(Debug, Clone)]
pub struct SpeyerReport {
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
    pub counterexamples: Vec<Word>,
    pub tainted: bool,
}

impl SpeyerReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Letters whose addition keeps the intervening-neighbours property.
fn extendable_letters(w: &Word, g: &CoxeterGraph) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut last_seen: Vec<Option<usize>> = vec![None; n];
    for (pos, &s) in w.letters().iter().enumerate() {
        last_seen[s] = Some(pos);
    }
    (0..n)
        .filter(|&s| match last_seen[s] {
            None => true,
            Some(last) => g
                .neighbours(s)
                .iter()
                .all(|&(y, _)| matches!(last_seen[y], Some(p) if p > last)),
        })
        .collect()
}

/// A uniformly grown intervening-neighbours word of the given length.
pub fn random_in_word(
    g: &CoxeterGraph,
    len: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Word, RecognizerError> {
    let mut w = Word::empty();
    for _ in 0..len {
        let candidates = extendable_letters(&w, g);
        if candidates.is_empty() {
            return Err(RecognizerError::GeneratorStarved);
        }
        w.push(candidates[rng.random_range(0..candidates.len())]);
    }
    Ok(w)
}

pub fn check_speyer_property(
    g: &CoxeterGraph,
    params: SpeyerParams,
) -> Result<SpeyerReport, RecognizerError> {
    if !params.force {
        if !g.is_connected() {
            return Err(RecognizerError::NotConnectedGraph);
        }
        if find_affine_witness(g).is_none() {
            return Err(RecognizerError::NoAffineWitness);
        }
    }
    let recognizer = Recognizer::new(g)?;
    let tainted = !g.has_exact_labels();
    let results: Vec<Result<Option<Word>, RecognizerError>> = (0..params.samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            rng.set_stream(k as u64 + 1);
            let len = rng.random_range(1..=params.max_len.max(1));
            let w = random_in_word(g, len, &mut rng)?;
            let check = recognizer.is_reduced(&w)?;
            Ok(if check.reduced { None } else { Some(w) })
        })
        .collect();
    let mut counterexamples = Vec::new();
    for r in results {
        if let Some(w) = r? {
            counterexamples.push(w);
        }
    }
    Ok(SpeyerReport {
        samples: params.samples,
        max_len: params.max_len,
        seed: params.seed,
        counterexamples,
        tainted,
    })
}
