//! Words over the generator alphabet and the intervening-neighbours check.
//!
//! Positions reported to callers are 1-based throughout, matching how the
//! CLI prints witnesses.

use crate::graph::{CoxeterGraph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Vertex>,
}

impl Word {
    pub fn new(letters: Vec<Vertex>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Parses whitespace- or comma-separated vertex names.
    pub fn parse(text: &str, g: &CoxeterGraph) -> Result<Word, GraphError> {
        let mut letters = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            letters.push(g.vertex(token)?);
        }
        Ok(Word { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Vertex] {
        &self.letters
    }

    pub fn reversed(&self) -> Word {
        Word { letters: self.letters.iter().rev().copied().collect() }
    }

    pub fn push(&mut self, v: Vertex) {
        self.letters.push(v);
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word { letters: self.letters[..len].to_vec() }
    }

    /// The word with 1-based positions `i` and `j` removed.
    pub fn delete_pair(&self, i: usize, j: usize) -> Word {
        assert!(i >= 1 && j >= 1 && i < j && j <= self.letters.len(), "bad deletion pair");
        let letters = self
            .letters
            .iter()
            .enumerate()
            .filter(|(k, _)| k + 1 != i && k + 1 != j)
            .map(|(_, &l)| l)
            .collect();
        Word { letters }
    }

    /// Letters joined without separators when every vertex name is a single
    /// character, otherwise space-separated.
    pub fn display(&self, g: &CoxeterGraph) -> String {
        let names: Vec<&str> = self.letters.iter().map(|&l| g.vertex_name(l)).collect();
        if names.iter().all(|n| n.chars().count() == 1) {
            names.concat()
        } else {
            names.join(" ")
        }
    }

    pub fn check_letters(&self, g: &CoxeterGraph) -> Result<(), GraphError> {
        for &l in &self.letters {
            if l >= g.vertex_count() {
                return Err(GraphError::UnknownVertex(format!("#{l}")));
            }
        }
        Ok(())
    }
}

/// Two consecutive occurrences of a letter with a graph neighbour missing
/// in between. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InViolation {
    pub letter: Vertex,
    pub first: usize,
    pub second: usize,
    pub missing: Vertex,
}

/// The first violation of the intervening-neighbours property, if any:
/// between two consecutive occurrences of the same letter, every graph
/// neighbour of that letter must occur.
pub fn intervening_violation(w: &Word, g: &CoxeterGraph) -> Result<Option<InViolation>, GraphError> {
    w.check_letters(g)?;
    let n = g.vertex_count();
    let mut last_seen: Vec<Option<usize>> = vec![None; n];
    for (pos0, &s) in w.letters().iter().enumerate() {
        if let Some(prev) = last_seen[s] {
            for &(y, _) in g.neighbours(s) {
                let ok = matches!(last_seen[y], Some(p) if p > prev);
                if !ok {
                    return Ok(Some(InViolation {
                        letter: s,
                        first: prev + 1,
                        second: pos0 + 1,
                        missing: y,
                    }));
                }
            }
        }
        last_seen[s] = Some(pos0);
    }
    Ok(None)
}

pub fn has_intervening_neighbours(w: &Word, g: &CoxeterGraph) -> Result<bool, GraphError> {
    Ok(intervening_violation(w, g)?.is_none())
}

/// The length-`len` prefix of the infinite word s · (blacks · whites)^∞ on a
/// tree, where vertices at odd distance from `s` are black and the rest
/// (including `s`) are white. Blocks list vertices in declaration order.
/// Every prefix has the intervening-neighbours property.
pub fn bicoloured_word(g: &CoxeterGraph, s: Vertex, len: usize) -> Result<Word, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::NotConnected);
    }
    if !g.is_tree() {
        return Err(GraphError::NotATree);
    }
    if len == 0 {
        return Err(GraphError::EmptyWord);
    }
    let dist = g.bfs_distances(s);
    let blacks: Vec<Vertex> = (0..g.vertex_count())
        .filter(|&v| dist[v].expect("connected") % 2 == 1)
        .collect();
    let whites: Vec<Vertex> = (0..g.vertex_count())
        .filter(|&v| dist[v].expect("connected") % 2 == 0)
        .collect();
    let mut letters = vec![s];
    'outer: loop {
        for block in [&blacks, &whites] {
            for &v in block.iter() {
                if letters.len() == len {
                    break 'outer;
                }
                letters.push(v);
            }
        }
    }
    Ok(Word::new(letters))
}
