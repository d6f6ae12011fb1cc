//! Cyclic arrangements of the integers `1..n`.
//!
//! A [`Permutation`] is a sequence containing each of `1..n` exactly once,
//! read cyclically: position `n + 1` is position `1` again. Three symmetries
//! matter here because they permute window sums without changing the optima:
//! rotation, reversal, and the value complement `v -> n + 1 - v`.

use crate::{Error, Result};

/// A permutation of `1..n`, `n >= 2`, validated on construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    /// Validates that `entries` holds each of `1..n` exactly once.
    ///
    /// Rejects sequences shorter than 2 and reports every missing and
    /// duplicated value on failure.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::TooFewEntries { got: entries.len() });
        }
        let n = entries.len();
        let mut seen = vec![0u32; n + 1];
        let mut out_of_range = false;
        for &v in &entries {
            if v == 0 || v as usize > n {
                out_of_range = true;
            } else {
                seen[v as usize] += 1;
            }
        }
        let missing: Vec<u32> = (1..=n as u32).filter(|&v| seen[v as usize] == 0).collect();
        let duplicated: Vec<u32> = (1..=n as u32).filter(|&v| seen[v as usize] > 1).collect();
        if out_of_range || !missing.is_empty() || !duplicated.is_empty() {
            return Err(Error::NotAPermutation { n, missing, duplicated });
        }
        Ok(Permutation { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// The entries in order; index 0 holds the first position.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Entry at 1-based cyclic position `i` (any `i >= 1`).
    pub fn at(&self, i: usize) -> u32 {
        self.entries[(i - 1) % self.entries.len()]
    }

    /// Replaces every entry `v` by `n + 1 - v`.
    ///
    /// An involution: applying it twice returns the original arrangement.
    pub fn complement(&self) -> Self {
        let n = self.entries.len() as u32;
        Permutation { entries: self.entries.iter().map(|&v| n + 1 - v).collect() }
    }

    /// Starts the arrangement `r` positions later; `r` is taken modulo `n`.
    pub fn rotate(&self, r: usize) -> Self {
        let n = self.entries.len();
        let r = r % n;
        let mut entries = Vec::with_capacity(n);
        entries.extend_from_slice(&self.entries[r..]);
        entries.extend_from_slice(&self.entries[..r]);
        Permutation { entries }
    }

    /// Reads the arrangement in the opposite direction.
    pub fn reverse(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        Permutation { entries }
    }

    /// Parses one arrangement from a line of comma- or whitespace-separated
    /// integers. `line_no` is used only for diagnostics.
    pub fn parse_line(line: &str, line_no: usize) -> Result<Self> {
        let mut entries = Vec::new();
        for (start, token) in tokens(line) {
            match token.parse::<u32>() {
                Ok(v) => entries.push(v),
                Err(_) => {
                    return Err(Error::Parse {
                        line: line_no,
                        column: start + 1,
                        message: format!("expected a positive integer, found {token:?}"),
                    })
                }
            }
        }
        if entries.is_empty() {
            return Err(Error::Parse {
                line: line_no,
                column: 1,
                message: "empty line: expected a permutation".into(),
            });
        }
        Permutation::new(entries)
    }

    /// Parses one arrangement per non-empty line.
    pub fn parse_text(text: &str) -> Result<Vec<Self>> {
        let mut perms = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            perms.push(Self::parse_line(line, idx + 1)?);
        }
        Ok(perms)
    }
}

/// Splits on commas and whitespace, keeping byte offsets for diagnostics.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(move |t| (t.as_ptr() as usize - line.as_ptr() as usize, t))
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for v in &self.entries {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Permutation({self})")
    }
}
