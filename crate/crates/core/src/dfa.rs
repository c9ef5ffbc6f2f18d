//! Explicit subset-construction automaton over the small roots.
//!
//! A live state is the set of small roots currently tracked; the letter s
//! reflects every tracked root, drops the ones that go big, sends the whole
//! run to the dead state if any goes negative, and then adds the unit root
//! of s. Every live state accepts; reaching the dead state means the word
//! admits a reduction.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::graph::CoxeterGraph;
use crate::recognizer::{Recognizer, RecognizerError};
use crate::root::{reflect, side, unit_root, Side};
use crate::word::Word;

pub const DEFAULT_DFA_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transition {
    To(usize),
    Dead,
}

#[derive(Debug, Clone)]
pub struct ReducedWordDfa {
    /// Live states as sorted sets of small-root indices; state 0 is the
    /// initial state (no roots tracked yet).
    states: Vec<BTreeSet<usize>>,
    /// transitions[state][letter]
    transitions: Vec<Vec<Transition>>,
    alphabet: usize,
}

impl ReducedWordDfa {
    /// Live states plus the single dead state.
    pub fn state_count(&self) -> usize {
        self.states.len() + 1
    }

    pub fn live_states(&self) -> &[BTreeSet<usize>] {
        &self.states
    }

    pub fn transition(&self, state: usize, letter: usize) -> Transition {
        self.transitions[state][letter]
    }

    /// Runs the automaton; true means the word is reduced.
    pub fn accepts(&self, w: &Word) -> bool {
        let mut state = 0usize;
        for &letter in w.letters() {
            match self.transitions[state][letter] {
                Transition::To(next) => state = next,
                Transition::Dead => return false,
            }
        }
        true
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn to_dot(&self, g: &CoxeterGraph, recognizer: &Recognizer) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n");
        out.push_str("  start [shape=point];\n  start -> s0;\n");
        for (i, state) in self.states.iter().enumerate() {
            let label = if state.is_empty() {
                "∅".to_string()
            } else {
                state
                    .iter()
                    .map(|&r| recognizer.smalls().roots()[r].render())
                    .collect::<Vec<_>>()
                    .join("\\n")
            };
            out.push_str(&format!("  s{i} [shape=box,label=\"{label}\"];\n"));
        }
        out.push_str("  dead [shape=doublecircle,label=\"reduction\"];\n");
        for (i, row) in self.transitions.iter().enumerate() {
            for (letter, t) in row.iter().enumerate() {
                let target = match t {
                    Transition::To(j) => format!("s{j}"),
                    Transition::Dead => "dead".to_string(),
                };
                out.push_str(&format!("  s{i} -> {target} [label=\"{}\"];\n", g.vertex_name(letter)));
            }
        }
        out.push_str("}\n");
        out
    }
}

impl Recognizer {
    pub fn build_dfa(&self, cap: usize) -> Result<ReducedWordDfa, RecognizerError> {
        if !self.graph().has_exact_labels() {
            return Err(RecognizerError::NonExactLabels);
        }
        let g = self.graph();
        let n = g.vertex_count();
        let mut states: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
        let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        ids.insert(BTreeSet::new(), 0);
        let mut transitions: Vec<Vec<Transition>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(id) = queue.pop_front() {
            let mut row = Vec::with_capacity(n);
            for letter in 0..n {
                let current = states[id].clone();
                let mut next = BTreeSet::new();
                let mut dead = false;
                for &ridx in &current {
                    let root = &self.smalls().roots()[ridx];
                    let image = reflect(root, letter, g)?;
                    match side(&image)? {
                        Side::Negative => {
                            dead = true;
                            break;
                        }
                        Side::Positive => {
                            if let Some(j) = self.smalls().index_of(&image) {
                                next.insert(j);
                            }
                        }
                    }
                }
                if dead {
                    row.push(Transition::Dead);
                    continue;
                }
                let spawned = unit_root(g, letter);
                next.insert(self.smalls().index_of(&spawned).expect("unit roots are small"));
                let target = match ids.get(&next) {
                    Some(&t) => t,
                    None => {
                        if states.len() >= cap {
                            return Err(RecognizerError::DfaCapExceeded(cap));
                        }
                        let t = states.len();
                        ids.insert(next.clone(), t);
                        states.push(next);
                        queue.push_back(t);
                        t
                    }
                };
                row.push(Transition::To(target));
            }
            while transitions.len() <= id {
                transitions.push(Vec::new());
            }
            transitions[id] = row;
        }
        Ok(ReducedWordDfa { states, transitions, alphabet: n })
    }
}

pub fn build_dfa(g: &CoxeterGraph) -> Result<ReducedWordDfa, RecognizerError> {
    if !g.has_exact_labels() {
        return Err(RecognizerError::NonExactLabels);
    }
    Recognizer::new(g)?.build_dfa(DEFAULT_DFA_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, Family};
    use crate::recognizer::is_reduced;

    #[test]
    fn single_generator_dfa_has_three_states() {
        let g = CoxeterGraph::parse("vertex a\n").unwrap();
        let dfa = build_dfa(&g).unwrap();
        assert_eq!(dfa.state_count(), 3);
        assert!(dfa.accepts(&Word::parse("a", &g).unwrap()));
        assert!(!dfa.accepts(&Word::parse("a a", &g).unwrap()));
        assert!(!dfa.accepts(&Word::parse("a a a", &g).unwrap()));
    }

    #[test]
    fn infinite_dihedral_dfa_accepts_exactly_alternating_words() {
        let g = catalog(Family::ATilde, Some(1)).unwrap().graph;
        let dfa = build_dfa(&g).unwrap();
        for len in 0..=10usize {
            for start in 0..2usize {
                let letters: Vec<usize> = (0..len).map(|k| (start + k) % 2).collect();
                let w = Word::new(letters);
                assert!(dfa.accepts(&w), "alternating len {len} start {start}");
            }
        }
        assert!(!dfa.accepts(&Word::new(vec![0, 0])));
        assert!(!dfa.accepts(&Word::new(vec![0, 1, 1])));
    }

    #[test]
    fn dfa_agrees_with_token_simulation_on_a2_tilde_exhaustively() {
        let g = catalog(Family::ATilde, Some(2)).unwrap().graph;
        let recognizer = Recognizer::new(&g).unwrap();
        let dfa = recognizer.build_dfa(DEFAULT_DFA_CAP).unwrap();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for len in 1..=8 {
            let mut next = Vec::new();
            for w in words.iter().filter(|w| w.len() == len - 1) {
                for letter in 0..3 {
                    let mut ext = w.clone();
                    ext.push(letter);
                    next.push(ext);
                }
            }
            words.extend(next);
        }
        for letters in words {
            let w = Word::new(letters);
            let expect = recognizer.is_reduced(&w).unwrap().reduced;
            assert_eq!(dfa.accepts(&w), expect, "word {:?}", w.letters());
        }
    }

    #[test]
    fn dfa_requires_exact_labels() {
        let g = CoxeterGraph::parse("vertex a\nvertex b\nedge a b 7\n").unwrap();
        assert!(matches!(build_dfa(&g), Err(RecognizerError::NonExactLabels)));
    }

    #[test]
    fn dot_output_names_every_letter() {
        let g = catalog(Family::ATilde, Some(2)).unwrap().graph;
        let recognizer = Recognizer::new(&g).unwrap();
        let dfa = recognizer.build_dfa(DEFAULT_DFA_CAP).unwrap();
        let dot = dfa.to_dot(&g, &recognizer);
        for name in ["\"a\"", "\"b\"", "\"c\""] {
            assert!(dot.contains(name));
        }
        assert!(dot.contains("dead"));
        let w = Word::parse("a c a c", &g).unwrap();
        assert!(!dfa.accepts(&w));
        assert!(!is_reduced(&w, &g).unwrap().reduced);
    }
}
