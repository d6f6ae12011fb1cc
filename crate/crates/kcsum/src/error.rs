use thiserror::Error;

/// All ways the library can refuse or fail.
#[derive(Debug, Error)]
pub enum Error {
    /// The entries do not form a permutation of `1..n`.
    #[error("not a permutation of 1..{n}: {}", describe_defect(.missing, .duplicated))]
    NotAPermutation {
        n: usize,
        missing: Vec<u32>,
        duplicated: Vec<u32>,
    },

    /// Fewer than two entries.
    #[error("a cyclic arrangement needs at least 2 entries, got {got}")]
    TooFewEntries { got: usize },

    /// Window length outside `1..=n-1`.
    #[error("window length k={k} must satisfy 1 <= k < n (n={n})")]
    WindowLength { n: usize, k: usize },

    /// Malformed permutation text.
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Construction parameters outside the family's domain.
    #[error("{family}: {reason}")]
    ConstructionDomain {
        family: &'static str,
        reason: String,
    },

    /// Instance parameters outside the supported domain.
    #[error("instance (n={n}, k={k}) is invalid: {reason}")]
    InstanceDomain { n: u32, k: u32, reason: String },

    /// A sequence handed to one of the combinatorial checks does not meet
    /// that check's preconditions.
    #[error("invalid sequence: {reason}")]
    SequenceDomain { reason: String },

    /// Exhaustive enumeration refused above the hard cap.
    #[error("brute force is capped at n <= {cap}, got n={n}")]
    BruteForceTooLarge { n: u32, cap: u32 },

    /// An internal invariant failed; this is a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("cache io: {0}")]
    Io(#[from] std::io::Error),
}

fn describe_defect(missing: &[u32], duplicated: &[u32]) -> String {
    let mut parts = Vec::new();
    if !missing.is_empty() {
        parts.push(format!("missing {}", join(missing)));
    }
    if !duplicated.is_empty() {
        parts.push(format!("duplicated {}", join(duplicated)));
    }
    parts.join("; ")
}

fn join(vals: &[u32]) -> String {
    let list: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
    list.join(", ")
}
