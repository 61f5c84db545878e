//! Block codes over a q-ary alphabet and their set-system unfolding.

use std::collections::HashSet;

use crate::error::{precondition, Result};
use crate::matrix::IncidenceMatrix;

/// An `(N, n, q)`-code: `n` distinct codewords of length `N` over `0..q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    length: usize,
    alphabet: usize,
    words: Vec<Vec<u16>>,
}

impl Code {
    pub fn new(length: usize, alphabet: usize, words: Vec<Vec<u16>>) -> Result<Self> {
        if length == 0 || alphabet == 0 {
            return precondition("code length and alphabet size must be positive");
        }
        if words.is_empty() {
            return precondition("a code needs at least one codeword");
        }
        let mut seen = HashSet::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            if w.len() != length {
                return precondition(format!(
                    "codeword {i} has length {}, expected {length}",
                    w.len()
                ));
            }
            if let Some(&s) = w.iter().find(|&&s| s as usize >= alphabet) {
                return precondition(format!(
                    "codeword {i} uses symbol {s} outside 0..{alphabet}"
                ));
            }
            if !seen.insert(w.as_slice()) {
                return precondition(format!("codeword {i} is a duplicate"));
            }
        }
        Ok(Self {
            length,
            alphabet,
            words,
        })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Vec<u16>] {
        &self.words
    }

    /// Minimum Hamming distance by all-pairs scan. `None` for a one-word code.
    pub fn min_distance(&self) -> Option<usize> {
        let mut best = None;
        for (i, a) in self.words.iter().enumerate() {
            for b in &self.words[i + 1..] {
                let dist = hamming(a, b);
                best = Some(best.map_or(dist, |m: usize| m.min(dist)));
            }
        }
        best
    }
}

pub fn hamming(a: &[u16], b: &[u16]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Unfolds each codeword `c` into the block `{(i, c_i)}` on `length * q`
/// points, with `(i, s)` at column `i * q + s`.
pub fn code_to_set_system(code: &Code) -> IncidenceMatrix {
    let q = code.alphabet;
    let mut m = IncidenceMatrix::zeros(code.size(), code.length * q);
    for (row, word) in code.words.iter().enumerate() {
        for (i, &s) in word.iter().enumerate() {
            m.set(row, i * q + s as usize, true);
        }
    }
    m
}
