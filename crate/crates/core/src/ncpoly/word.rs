use std::cmp::Ordering;
use std::fmt;

/// Word in the generators `x1..xd`; letters are 1-based indices. The empty
/// word is the unit.
///
/// Ordered degree-lexicographically: shorter words first, equal lengths
/// compared letter by letter with `x1 < x2 < ... < xd`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u8>) -> Self {
        debug_assert!(letters.iter().all(|&k| k >= 1));
        Word(letters)
    }

    pub fn letter(k: u8) -> Self {
        Word(vec![k])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> u8 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Start positions of every occurrence of `pattern`.
    pub fn occurrences(&self, pattern: &Word) -> Vec<usize> {
        let p = pattern.len();
        if p == 0 || p > self.len() {
            return Vec::new();
        }
        (0..=self.len() - p).filter(|&s| self.0[s..s + p] == pattern.0[..]).collect()
    }

    pub fn find(&self, pattern: &Word) -> Option<usize> {
        let p = pattern.len();
        if p == 0 || p > self.len() {
            return None;
        }
        (0..=self.len() - p).find(|&s| self.0[s..s + p] == pattern.0[..])
    }

    /// Splits around `self[start..start+len]` into (prefix, suffix).
    pub fn split_around(&self, start: usize, len: usize) -> (Word, Word) {
        (Word(self.0[..start].to_vec()), Word(self.0[start + len..].to_vec()))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{k}")?;
        }
        Ok(())
    }
}
