//! Reduced-word recognition with the root automaton.
//!
//! A word is reduced exactly when no suffix path of roots ever crosses to
//! the negative side. The recognizer runs one token per suffix: each token
//! starts as the unit root of its position's letter and is reflected by
//! every later letter. A token that leaves the small roots can never cause
//! a crossing before re-entering them, so it is retired on the spot; a
//! token that goes negative at position j with origin i certifies that
//! deleting positions i and j shortens the word.

use std::collections::HashMap;

use thiserror::Error;

use crate::field::ArithError;
use crate::graph::{CoxeterGraph, GraphError};
use crate::root::{
    enumerate_small_roots, reflect, side, unit_root, Root, RootError, Side, SmallRootSet,
};
use crate::word::Word;

#[derive(Debug, Error)]
pub enum RecognizerError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("word must not be empty")]
    EmptyWord,
    #[error("word length {len} exceeds the oracle cap {cap}")]
    OracleCapExceeded { len: usize, cap: usize },
    #[error("graph has labels outside {{3,4,5,6,inf}}; exact arithmetic required here")]
    NonExactLabels,
    #[error("DFA construction exceeded the cap of {0} states")]
    DfaCapExceeded(usize),
    #[error("no letter can extend the word without breaking the intervening-neighbours property")]
    GeneratorStarved,
    #[error("graph has no affine witness; pass force to run anyway")]
    NoAffineWitness,
    #[error("graph must be connected for the property run")]
    NotConnectedGraph,
}

/// The single-root path driven by the first letter of a word. Positions are
/// 1-based; `states[p-1]` is the root after playing position p. When the
/// path crosses to the negative side the trace stops there and `crossing`
/// holds the crossing position.
#[derive(Debug, Clone)]
pub struct PathTrace {
    pub word: Word,
    pub states: Vec<Root>,
    pub crossing: Option<usize>,
}

pub fn run_first_letter_path(w: &Word, g: &CoxeterGraph) -> Result<PathTrace, RecognizerError> {
    w.check_letters(g)?;
    let letters = w.letters();
    if letters.is_empty() {
        return Err(RecognizerError::EmptyWord);
    }
    let mut states = vec![unit_root(g, letters[0])];
    let mut crossing = None;
    for (pos0, &letter) in letters.iter().enumerate().skip(1) {
        let next = reflect(states.last().unwrap(), letter, g)?;
        let s = side(&next)?;
        states.push(next);
        if s == Side::Negative {
            crossing = Some(pos0 + 1);
            break;
        }
    }
    Ok(PathTrace { word: w.clone(), states, crossing })
}

/// Positions (1-based) whose deletion shortens the word to an equal group
/// element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionWitness {
    pub i: usize,
    pub j: usize,
    pub shortened: Word,
}

#[derive(Debug, Clone)]
pub struct ReducedCheck {
    pub reduced: bool,
    pub witness: Option<ReductionWitness>,
    /// Set when approximate edge labels forced non-exact arithmetic.
    pub tainted: bool,
}

/// A root automaton for one graph: the graph plus its small-root set.
#[derive(Debug, Clone)]
pub struct Recognizer {
    graph: CoxeterGraph,
    smalls: SmallRootSet,
}

struct Token {
    root: Root,
    origin: usize, // 1-based spawn position
}

impl Recognizer {
    pub fn new(g: &CoxeterGraph) -> Result<Self, RootError> {
        Ok(Recognizer { graph: g.clone(), smalls: enumerate_small_roots(g)? })
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn smalls(&self) -> &SmallRootSet {
        &self.smalls
    }

    pub fn is_reduced(&self, w: &Word) -> Result<ReducedCheck, RecognizerError> {
        w.check_letters(&self.graph)?;
        let tainted = !self.graph.has_exact_labels();
        let mut tokens: Vec<Token> = Vec::new();
        let mut by_key: HashMap<String, usize> = HashMap::new();
        for (pos0, &letter) in w.letters().iter().enumerate() {
            let pos = pos0 + 1;
            let mut survivors: Vec<Token> = Vec::with_capacity(tokens.len() + 1);
            let mut negative_origin: Option<usize> = None;
            for token in &tokens {
                let next = reflect(&token.root, letter, &self.graph)?;
                match side(&next)? {
                    Side::Negative => {
                        let origin = negative_origin.get_or_insert(token.origin);
                        *origin = (*origin).min(token.origin);
                    }
                    Side::Positive => {
                        if self.smalls.contains(&next) {
                            survivors.push(Token { root: next, origin: token.origin });
                        }
                        // big root: retired for good
                    }
                }
            }
            if let Some(origin) = negative_origin {
                let shortened = w.delete_pair(origin, pos);
                return Ok(ReducedCheck {
                    reduced: false,
                    witness: Some(ReductionWitness { i: origin, j: pos, shortened }),
                    tainted,
                });
            }
            survivors.push(Token { root: unit_root(&self.graph, letter), origin: pos });
            // merge tokens carrying equal roots, keeping the earliest origin
            by_key.clear();
            let mut merged: Vec<Token> = Vec::with_capacity(survivors.len());
            for token in survivors {
                match by_key.get(&token.root.render()) {
                    Some(&idx) => {
                        let kept = &mut merged[idx];
                        kept.origin = kept.origin.min(token.origin);
                    }
                    None => {
                        by_key.insert(token.root.render(), merged.len());
                        merged.push(token);
                    }
                }
            }
            tokens = merged;
        }
        Ok(ReducedCheck { reduced: true, witness: None, tainted })
    }

    /// Applies reduction witnesses until the word is reduced. The result has
    /// the same length parity and represents the same group element.
    pub fn reduce_fully(&self, w: &Word) -> Result<Word, RecognizerError> {
        let mut current = w.clone();
        loop {
            let check = self.is_reduced(&current)?;
            match check.witness {
                Some(witness) => current = witness.shortened,
                None => return Ok(current),
            }
        }
    }
}

pub fn is_reduced(w: &Word, g: &CoxeterGraph) -> Result<ReducedCheck, RecognizerError> {
    Recognizer::new(g)?.is_reduced(w)
}

pub fn reduce_fully(w: &Word, g: &CoxeterGraph) -> Result<Word, RecognizerError> {
    Recognizer::new(g)?.reduce_fully(w)
}
