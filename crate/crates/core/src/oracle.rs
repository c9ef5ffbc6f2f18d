//! Independent reduced-word oracle through the reflection representation.
//!
//! Each generator s acts linearly: e_t ↦ e_t + weight(m_st)·e_s for every
//! other basis vector, and e_s ↦ −e_s. Two words are equal in the group
//! exactly when their matrices are equal, and a word is non-reduced exactly
//! when deleting some pair of positions leaves the matrix unchanged. This
//! route never looks at small roots, so it checks the recognizer from the
//! outside.

use crate::field::{weight, FieldValue, Value};
use crate::graph::CoxeterGraph;
use crate::recognizer::RecognizerError;
use crate::word::Word;

pub const DEFAULT_ORACLE_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct ReflectionMatrix {
    n: usize,
    entries: Vec<FieldValue>, // row-major
}

impl ReflectionMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![FieldValue::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = FieldValue::one();
        }
        ReflectionMatrix { n, entries }
    }

    pub fn at(&self, row: usize, col: usize) -> &FieldValue {
        &self.entries[row * self.n + col]
    }

    pub fn mul(&self, rhs: &ReflectionMatrix) -> ReflectionMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut entries = vec![FieldValue::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    entries[i * n + j] = &entries[i * n + j] + &(a * b);
                }
            }
        }
        ReflectionMatrix { n, entries }
    }
}

/// The matrix of one generator in the reflection representation.
pub fn generator_matrix(g: &CoxeterGraph, s: usize) -> Result<ReflectionMatrix, RecognizerError> {
    let n = g.vertex_count();
    let mut m = ReflectionMatrix::identity(n);
    m.entries[s * n + s] = -&FieldValue::one();
    for &(t, label) in g.neighbours(s) {
        match weight(label)? {
            Value::Exact(w) => m.entries[s * n + t] = w,
            Value::Approx(_) => return Err(RecognizerError::NonExactLabels),
        }
    }
    Ok(m)
}

pub fn word_matrix(g: &CoxeterGraph, w: &Word) -> Result<ReflectionMatrix, RecognizerError> {
    let mut m = ReflectionMatrix::identity(g.vertex_count());
    for &letter in w.letters() {
        m = m.mul(&generator_matrix(g, letter)?);
    }
    Ok(m)
}

/// Caches the generator matrices of one graph.
pub struct DeletionOracle {
    graph: CoxeterGraph,
    generators: Vec<ReflectionMatrix>,
    cap: usize,
}

impl DeletionOracle {
    pub fn new(g: &CoxeterGraph, cap: usize) -> Result<Self, RecognizerError> {
        if !g.has_exact_labels() {
            return Err(RecognizerError::NonExactLabels);
        }
        let generators = (0..g.vertex_count())
            .map(|s| generator_matrix(g, s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DeletionOracle { graph: g.clone(), generators, cap })
    }

    pub fn word_matrix(&self, w: &Word) -> ReflectionMatrix {
        let mut m = ReflectionMatrix::identity(self.graph.vertex_count());
        for &letter in w.letters() {
            m = m.mul(&self.generators[letter]);
        }
        m
    }

    pub fn words_equal(&self, a: &Word, b: &Word) -> bool {
        self.word_matrix(a) == self.word_matrix(b)
    }

    /// Deletion condition: the word is non-reduced exactly when deleting
    /// some position pair leaves the matrix unchanged.
    pub fn is_reduced(&self, w: &Word) -> Result<bool, RecognizerError> {
        let len = w.len();
        if len > self.cap {
            return Err(RecognizerError::OracleCapExceeded { len, cap: self.cap });
        }
        if len < 2 {
            return Ok(true);
        }
        let n = self.graph.vertex_count();
        let letters = w.letters();
        // prefix[k] = matrix of the first k letters, suffix[k] = of letters k.. (0-based)
        let mut prefix = Vec::with_capacity(len + 1);
        prefix.push(ReflectionMatrix::identity(n));
        for &letter in letters {
            prefix.push(prefix.last().unwrap().mul(&self.generators[letter]));
        }
        let mut suffix = vec![ReflectionMatrix::identity(n); len + 1];
        for k in (0..len).rev() {
            suffix[k] = self.generators[letters[k]].mul(&suffix[k + 1]);
        }
        let whole = &prefix[len];
        for i in 0..len {
            // mid = matrix of letters strictly between positions i and j
            let mut mid = ReflectionMatrix::identity(n);
            for j in i + 1..len {
                let candidate = prefix[i].mul(&mid).mul(&suffix[j + 1]);
                if candidate == *whole {
                    return Ok(false);
                }
                mid = mid.mul(&self.generators[letters[j]]);
            }
        }
        Ok(true)
    }
}

/// One-shot form of the deletion oracle.
pub fn oracle_is_reduced_deletion(
    w: &Word,
    g: &CoxeterGraph,
    cap: usize,
) -> Result<bool, RecognizerError> {
    DeletionOracle::new(g, cap)?.is_reduced(w)
}
