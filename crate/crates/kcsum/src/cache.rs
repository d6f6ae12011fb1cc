//! Persistent store for solver-certified exact values.
//!
//! Results are kept as one JSON object per line in a plain text file, so
//! the store is greppable, diffable, and safe to append to. Every record
//! carries its witness arrangement; on load each line is re-verified by
//! evaluating the witness, and lines that fail to parse or to verify are
//! skipped with a warning instead of poisoning the run.
//!
//! Keys are always stored in reduced form (shorter window length), since
//! complementary lengths share their optima. The cached solve wrappers
//! reduce before lookup and transform witnesses back on a hit.

use std::collections::HashMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bounds::{reduce_instance, Quantity};
use crate::perm::Permutation;
use crate::solver::{solve_disc, solve_msum, SearchConfig, SearchOutcome, SearchStatus};
use crate::window::{disc_of, msum_of};
use crate::{Error, HalfInt, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// One certified result: instance, value, and the witness that attains it.
///
/// The witness proves the value is attainable; the claim that it is also
/// minimal rests on the exhaustive run that produced the record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub schema_version: u32,
    pub n: u32,
    pub k: u32,
    pub quantity: Quantity,
    pub value_doubled: i64,
    pub witness: Vec<u32>,
    pub nodes: u64,
}

impl CacheRecord {
    pub fn value(&self) -> HalfInt {
        HalfInt::from_doubled(self.value_doubled)
    }

    /// Checks that the witness is a valid arrangement evaluating to the
    /// recorded value at the recorded window length.
    fn verify(&self) -> std::result::Result<(), String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "schema version {} unsupported (expected {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        let pi = Permutation::new(self.witness.clone()).map_err(|e| e.to_string())?;
        if pi.n() != self.n as usize {
            return Err(format!("witness length {} does not match n={}", pi.n(), self.n));
        }
        if self.k < 1 || self.k >= self.n {
            return Err(format!("window length {} invalid for n={}", self.k, self.n));
        }
        let got = match self.quantity {
            Quantity::Msum => msum_of(&pi, self.k as usize),
            Quantity::Disc => disc_of(&pi, self.k as usize),
        }
        .map_err(|e| e.to_string())?;
        if got != self.value() {
            return Err(format!(
                "witness evaluates to {got}, record claims {}",
                self.value()
            ));
        }
        Ok(())
    }
}

/// In-memory view of a result file, with the path retained for appends.
#[derive(Debug)]
pub struct ResultCache {
    path: PathBuf,
    map: HashMap<(u32, u32, Quantity), CacheRecord>,
    warnings: Vec<String>,
}

impl ResultCache {
    /// Loads a result file, verifying every line. A missing file yields an
    /// empty cache. When a key repeats, the later line wins.
    pub fn open(path: impl Into<PathBuf>) -> Result<ResultCache> {
        let path = path.into();
        let mut cache = ResultCache { path, map: HashMap::new(), warnings: Vec::new() };
        if !cache.path.exists() {
            return Ok(cache);
        }
        let text = fs::read_to_string(&cache.path)?;
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let record: CacheRecord = match serde_json::from_str(line) {
                Ok(r) => r,
                Err(e) => {
                    cache.warnings.push(format!("line {line_no}: unparsable record: {e}"));
                    continue;
                }
            };
            if let Err(msg) = record.verify() {
                cache.warnings.push(format!("line {line_no}: rejected record: {msg}"));
                continue;
            }
            cache.map.insert((record.n, record.k, record.quantity), record);
        }
        Ok(cache)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Diagnostics for lines skipped during load.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Looks up a record under the exact key; callers normally reduce
    /// the window length first.
    pub fn get(&self, n: u32, k: u32, quantity: Quantity) -> Option<&CacheRecord> {
        self.map.get(&(n, k, quantity))
    }

    /// Verifies and stores a record, appending it to the file. Inserting
    /// the value already stored for a key is a no-op; a conflicting value
    /// for the same key is an error, since two exhaustive runs cannot
    /// disagree about an optimum.
    pub fn insert(&mut self, record: CacheRecord) -> Result<()> {
        record.verify().map_err(Error::Internal)?;
        let key = (record.n, record.k, record.quantity);
        if let Some(existing) = self.map.get(&key) {
            if existing.value_doubled == record.value_doubled {
                return Ok(());
            }
            return Err(Error::Internal(format!(
                "cache conflict for {}({},{}): stored {}, inserting {}",
                record.quantity,
                record.n,
                record.k,
                existing.value(),
                record.value()
            )));
        }
        let mut line = serde_json::to_string(&record)
            .map_err(|e| Error::Internal(format!("record serialization failed: {e}")))?;
        line.push('\n');
        let mut file = fs::OpenOptions::new().create(true).append(true).open(&self.path)?;
        file.write_all(line.as_bytes())?;
        self.map.insert(key, record);
        Ok(())
    }
}

/// Cache-backed overshoot optimization. See [`solve_through_cache`].
pub fn solve_msum_cached(
    n: u32,
    k: u32,
    cfg: &SearchConfig,
    cache: &mut ResultCache,
) -> Result<SearchOutcome> {
    solve_through_cache(n, k, Quantity::Msum, cfg, cache)
}

/// Cache-backed spread optimization. See [`solve_through_cache`].
pub fn solve_disc_cached(
    n: u32,
    k: u32,
    cfg: &SearchConfig,
    cache: &mut ResultCache,
) -> Result<SearchOutcome> {
    solve_through_cache(n, k, Quantity::Disc, cfg, cache)
}

/// Looks the reduced instance up in the cache and only searches on a miss.
/// Exact outcomes are stored under the reduced key. A hit reports zero
/// visited nodes; the original search cost stays in the record.
pub fn solve_through_cache(
    n: u32,
    k: u32,
    quantity: Quantity,
    cfg: &SearchConfig,
    cache: &mut ResultCache,
) -> Result<SearchOutcome> {
    let (_, k_red) = reduce_instance(n, k)?;
    if let Some(record) = cache.get(n, k_red, quantity) {
        let stored = Permutation::new(record.witness.clone())?;
        let witness = restore_witness(stored, k, k_red, quantity);
        let got = match quantity {
            Quantity::Msum => msum_of(&witness, k as usize),
            Quantity::Disc => disc_of(&witness, k as usize),
        }?;
        if got != record.value() {
            return Err(Error::Internal(format!(
                "cached witness evaluates to {got} at window length {k}, record claims {}",
                record.value()
            )));
        }
        return Ok(SearchOutcome {
            n,
            k,
            quantity,
            status: SearchStatus::Exact,
            value: record.value(),
            witness: Some(witness),
            nodes_visited: 0,
            thresholds_tested: Vec::new(),
        });
    }

    let outcome = match quantity {
        Quantity::Msum => solve_msum(n, k, cfg)?,
        Quantity::Disc => solve_disc(n, k, cfg)?,
    };
    if outcome.status == SearchStatus::Exact {
        let witness = outcome
            .witness
            .as_ref()
            .ok_or_else(|| Error::Internal("exact outcome without witness".into()))?;
        let reduced_witness = restore_witness(witness.clone(), k_red, k, quantity);
        cache.insert(CacheRecord {
            schema_version: SCHEMA_VERSION,
            n,
            k: k_red,
            quantity,
            value_doubled: outcome.value.doubled(),
            witness: reduced_witness.entries().to_vec(),
            nodes: outcome.nodes_visited,
        })?;
    }
    Ok(outcome)
}

/// Moves a witness between complementary window lengths: the spread cares
/// about the arrangement only, the overshoot needs the value-complement.
fn restore_witness(w: Permutation, k_to: u32, k_from: u32, quantity: Quantity) -> Permutation {
    if k_to == k_from {
        return w;
    }
    match quantity {
        Quantity::Msum => w.complement(),
        Quantity::Disc => w,
    }
}
