//! Executable checks for the two combinatorial inequalities behind the
//! multiple-of-k lower bounds.
//!
//! The first concerns cyclic sequences of distinct nonnegative integers:
//! summing the larger of each adjacent pair beats the plain sum by at
//! least the range plus one less than the number of cyclic peaks, with a
//! total-variation companion. The second concerns round-robin
//! interleavings of binary sequences: for an odd number of components the
//! interleaving's cyclic run count is at most `(k-1)m` plus the smallest
//! component run count, while even `k` admits violations.
//!
//! Each inequality comes as a single-case check returning the evaluated
//! sides and as a seeded random suite for bulk confirmation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

fn validate_distinct_nonneg(values: &[i64]) -> Result<()> {
    if values.len() < 2 {
        return Err(Error::TooFewEntries { got: values.len() });
    }
    if let Some(&bad) = values.iter().find(|&&v| v < 0) {
        return Err(Error::SequenceDomain { reason: format!("negative entry {bad}") });
    }
    let mut seen = values.to_vec();
    seen.sort_unstable();
    if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::SequenceDomain { reason: format!("duplicated entry {}", w[0]) });
    }
    Ok(())
}

/// Number of cyclic strict local maxima: positions with both neighbours
/// smaller, wrapping around. Entries must be distinct nonnegative
/// integers, at least two of them.
pub fn peak_count(values: &[i64]) -> Result<usize> {
    validate_distinct_nonneg(values)?;
    let m = values.len();
    let count = (0..m)
        .filter(|&i| {
            let prev = values[(i + m - 1) % m];
            let next = values[(i + 1) % m];
            values[i] > prev && values[i] > next
        })
        .count();
    Ok(count)
}

/// Both sides of the adjacent-maximum inequality and its total-variation
/// companion, evaluated on one sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxIneqReport {
    pub len: usize,
    pub peaks: usize,
    /// Sum of `max(a_i, a_{i+1})` over the cycle.
    pub pairwise_max_sum: i64,
    /// Proven floor: plain sum plus range plus `peaks - 1`.
    pub pairwise_max_floor: i64,
    /// Sum of `|a_i - a_{i+1}|` over the cycle.
    pub variation: i64,
    /// Proven floor: `2(len - 1) + 2(peaks - 1)`.
    pub variation_floor: i64,
    pub holds_max: bool,
    pub holds_variation: bool,
}

impl MaxIneqReport {
    pub fn holds(&self) -> bool {
        self.holds_max && self.holds_variation
    }
}

/// Evaluates the adjacent-maximum inequality on a cyclic sequence of
/// distinct nonnegative integers.
pub fn check_max_inequality(values: &[i64]) -> Result<MaxIneqReport> {
    let peaks = peak_count(values)?;
    let m = values.len();
    let total: i64 = values.iter().sum();
    let max = *values.iter().max().expect("nonempty");
    let min = *values.iter().min().expect("nonempty");
    let mut pairwise_max_sum = 0i64;
    let mut variation = 0i64;
    for i in 0..m {
        let a = values[i];
        let b = values[(i + 1) % m];
        pairwise_max_sum += a.max(b);
        variation += (a - b).abs();
    }
    let pairwise_max_floor = total + max - min + (peaks as i64 - 1);
    let variation_floor = 2 * (m as i64 - 1) + 2 * (peaks as i64 - 1);
    Ok(MaxIneqReport {
        len: m,
        peaks,
        pairwise_max_sum,
        pairwise_max_floor,
        variation,
        variation_floor,
        holds_max: pairwise_max_sum >= pairwise_max_floor,
        holds_variation: variation >= variation_floor,
    })
}

/// A nonempty cyclic sequence over two symbols, printed as `A`/`B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinarySeq(Vec<bool>);

impl BinarySeq {
    pub fn new(bits: Vec<bool>) -> Result<BinarySeq> {
        if bits.is_empty() {
            return Err(Error::SequenceDomain { reason: "empty symbol sequence".into() });
        }
        Ok(BinarySeq(bits))
    }

    /// Parses a string of `A` and `B` symbols.
    pub fn parse(text: &str) -> Result<BinarySeq> {
        let bits = text
            .chars()
            .map(|c| match c {
                'A' => Ok(false),
                'B' => Ok(true),
                other => Err(Error::SequenceDomain {
                    reason: format!("symbol {other:?} is neither A nor B"),
                }),
            })
            .collect::<Result<Vec<bool>>>()?;
        BinarySeq::new(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cyclic run boundaries: positions whose successor differs. Always an
    /// even number, since the symbol must switch back to close the cycle.
    pub fn run_count(&self) -> usize {
        let m = self.0.len();
        (0..m).filter(|&i| self.0[i] != self.0[(i + 1) % m]).count()
    }
}

impl std::fmt::Display for BinarySeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "B" } else { "A" })?;
        }
        Ok(())
    }
}

/// Round-robin interleaving: first symbols of every sequence, then second
/// symbols, and so on. All sequences must share one length.
pub fn interleave(seqs: &[BinarySeq]) -> Result<BinarySeq> {
    let k = seqs.len();
    if k == 0 {
        return Err(Error::SequenceDomain { reason: "no sequences to interleave".into() });
    }
    let m = seqs[0].len();
    if let Some(bad) = seqs.iter().find(|s| s.len() != m) {
        return Err(Error::SequenceDomain {
            reason: format!("lengths differ: expected {m}, found {}", bad.len()),
        });
    }
    let mut bits = Vec::with_capacity(k * m);
    for j in 0..m {
        for s in seqs {
            bits.push(s.bits()[j]);
        }
    }
    BinarySeq::new(bits)
}

/// Both sides of the interleaving run-count inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestReport {
    pub k: usize,
    pub m: usize,
    /// Cyclic run count of the interleaved sequence.
    pub interleaved_runs: usize,
    /// Cyclic run counts of the components.
    pub component_runs: Vec<usize>,
    /// `(k - 1) * m` plus the smallest component run count.
    pub bound: usize,
    pub holds: bool,
}

fn nest_report(seqs: &[BinarySeq]) -> Result<NestReport> {
    let p = interleave(seqs)?;
    let k = seqs.len();
    let m = seqs[0].len();
    let component_runs: Vec<usize> = seqs.iter().map(BinarySeq::run_count).collect();
    let min_runs = *component_runs.iter().min().expect("nonempty");
    let bound = (k - 1) * m + min_runs;
    let interleaved_runs = p.run_count();
    Ok(NestReport { k, m, interleaved_runs, component_runs, bound, holds: interleaved_runs <= bound })
}

/// Checks the interleaving inequality under its hypothesis: an odd number
/// of components, at least three.
pub fn nest_and_check(seqs: &[BinarySeq]) -> Result<NestReport> {
    let k = seqs.len();
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::SequenceDomain {
            reason: format!("the run-count bound needs an odd component count >= 3, got {k}"),
        });
    }
    nest_report(seqs)
}

/// Evaluates the same run-count comparison without the parity hypothesis,
/// for probing where the inequality breaks. Needs at least two sequences.
pub fn nest_probe(seqs: &[BinarySeq]) -> Result<NestReport> {
    if seqs.len() < 2 {
        return Err(Error::SequenceDomain {
            reason: format!("probing needs at least 2 sequences, got {}", seqs.len()),
        });
    }
    nest_report(seqs)
}

/// Tally of a randomized confirmation run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn all_hold(&self) -> bool {
        self.failures == 0
    }
}

/// Runs the adjacent-maximum inequality on `cases` random cyclic
/// sequences of distinct nonnegative integers. Deterministic per seed.
pub fn max_inequality_suite(seed: u64, cases: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport { cases, failures: 0, first_failure: None };
    for _ in 0..cases {
        let m = rng.gen_range(2..=40usize);
        let slack = rng.gen_range(0..=20usize);
        let mut universe: Vec<i64> = (0..(m + slack) as i64).collect();
        universe.shuffle(&mut rng);
        universe.truncate(m);
        let checked = check_max_inequality(&universe).expect("generated input is valid");
        if !checked.holds() {
            report.failures += 1;
            report
                .first_failure
                .get_or_insert_with(|| format!("sequence {universe:?}: {checked:?}"));
        }
    }
    report
}

/// Runs the interleaving run-count inequality on `cases` random families
/// with an odd component count. Deterministic per seed.
pub fn nest_suite(seed: u64, cases: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport { cases, failures: 0, first_failure: None };
    for _ in 0..cases {
        let k = 2 * rng.gen_range(1..=4usize) + 1; // 3, 5, 7, 9
        let m = rng.gen_range(1..=30usize);
        let seqs: Vec<BinarySeq> = (0..k)
            .map(|_| {
                BinarySeq::new((0..m).map(|_| rng.gen_bool(0.5)).collect())
                    .expect("nonempty by construction")
            })
            .collect();
        let checked = nest_and_check(&seqs).expect("generated input is valid");
        if !checked.holds {
            report.failures += 1;
            report.first_failure.get_or_insert_with(|| {
                let shown: Vec<String> = seqs.iter().map(|s| s.to_string()).collect();
                format!("components {shown:?}: {checked:?}")
            });
        }
    }
    report
}

/// Outcome of a random search for an even-component-count violation of
/// the run-count bound.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    /// Attempts made before stopping (at the first violation or the cap).
    pub tries: u64,
    pub violation: Option<(Vec<BinarySeq>, NestReport)>,
}

/// Samples random families with an even component count, searching for a
/// violation of the odd-count run bound. Deterministic per seed.
pub fn even_probe(seed: u64, tries: u64) -> ProbeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=tries {
        let k = 2 * rng.gen_range(1..=4usize);
        let m = rng.gen_range(1..=10usize);
        let seqs: Vec<BinarySeq> = (0..k)
            .map(|_| {
                BinarySeq::new((0..m).map(|_| rng.gen_bool(0.5)).collect())
                    .expect("nonempty by construction")
            })
            .collect();
        let report = nest_probe(&seqs).expect("generated input is valid");
        if !report.holds {
            return ProbeReport { tries: attempt, violation: Some((seqs, report)) };
        }
    }
    ProbeReport { tries, violation: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peaks_are_cyclic_strict_maxima() {
        assert_eq!(peak_count(&[5, 1, 4, 2, 3]).unwrap(), 2);
        assert_eq!(peak_count(&[0, 1]).unwrap(), 1);
        assert_eq!(peak_count(&[1, 2, 3, 4]).unwrap(), 1);
    }

    #[test]
    fn peak_count_rejects_bad_input() {
        assert!(matches!(peak_count(&[3]), Err(Error::TooFewEntries { got: 1 })));
        assert!(matches!(peak_count(&[1, -2, 3]), Err(Error::SequenceDomain { .. })));
        assert!(matches!(peak_count(&[1, 2, 1]), Err(Error::SequenceDomain { .. })));
    }

    #[test]
    fn max_inequality_tight_cases() {
        let r = check_max_inequality(&[1, 2, 3, 4]).unwrap();
        assert_eq!(r.pairwise_max_sum, 13);
        assert_eq!(r.pairwise_max_floor, 13);
        assert_eq!(r.variation, 6);
        assert_eq!(r.variation_floor, 6);
        assert!(r.holds());

        let r = check_max_inequality(&[0, 1]).unwrap();
        assert_eq!(r.variation, 2);
        assert_eq!(r.variation_floor, 2);
        assert!(r.holds());
    }

    #[test]
    fn run_count_boundaries() {
        assert_eq!(BinarySeq::parse("AABBA").unwrap().run_count(), 2);
        assert_eq!(BinarySeq::parse("A").unwrap().run_count(), 0);
        assert_eq!(BinarySeq::parse("AB").unwrap().run_count(), 2);
        assert_eq!(BinarySeq::parse("ABAB").unwrap().run_count(), 4);
    }

    #[test]
    fn parse_and_display_round_trip() {
        let s = BinarySeq::parse("ABBAB").unwrap();
        assert_eq!(s.to_string(), "ABBAB");
        assert!(BinarySeq::parse("ABX").is_err());
        assert!(BinarySeq::parse("").is_err());
    }

    #[test]
    fn interleaving_is_column_major() {
        let seqs = [
            BinarySeq::parse("AB").unwrap(),
            BinarySeq::parse("AA").unwrap(),
            BinarySeq::parse("BB").unwrap(),
        ];
        let p = interleave(&seqs).unwrap();
        assert_eq!(p.to_string(), "AABBAB");
    }

    #[test]
    fn nest_bound_tight_example() {
        let seqs = [
            BinarySeq::parse("AB").unwrap(),
            BinarySeq::parse("AA").unwrap(),
            BinarySeq::parse("BB").unwrap(),
        ];
        let r = nest_and_check(&seqs).unwrap();
        assert_eq!(r.interleaved_runs, 4);
        assert_eq!(r.bound, 4);
        assert!(r.holds);
    }

    #[test]
    fn even_component_counts_can_violate_the_bound() {
        let seqs = [BinarySeq::parse("A").unwrap(), BinarySeq::parse("B").unwrap()];
        assert!(matches!(nest_and_check(&seqs), Err(Error::SequenceDomain { .. })));
        let r = nest_probe(&seqs).unwrap();
        assert_eq!(r.interleaved_runs, 2);
        assert_eq!(r.bound, 1);
        assert!(!r.holds);
    }

    #[test]
    fn seeded_suites_find_no_counterexamples() {
        let r = max_inequality_suite(7, 300);
        assert!(r.all_hold(), "{:?}", r.first_failure);
        let r = nest_suite(7, 300);
        assert!(r.all_hold(), "{:?}", r.first_failure);
    }

    #[test]
    fn suites_are_deterministic_per_seed() {
        assert_eq!(max_inequality_suite(11, 50), max_inequality_suite(11, 50));
        assert_eq!(nest_suite(11, 50), nest_suite(11, 50));
    }

    #[test]
    fn even_probe_turns_up_a_violation() {
        let probe = even_probe(5, 500);
        let (seqs, report) = probe.violation.expect("even counts admit violations");
        assert_eq!(report.k % 2, 0);
        assert_eq!(report.k, seqs.len());
        assert!(report.interleaved_runs > report.bound);
    }

    #[test]
    fn run_counts_are_even() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let m = rng.gen_range(1..=25usize);
            let s = BinarySeq::new((0..m).map(|_| rng.gen_bool(0.5)).collect()).unwrap();
            assert_eq!(s.run_count() % 2, 0);
        }
    }
}
