//! Exact optimization by threshold-ascending feasibility search.
//!
//! The optima are located by answering a sequence of decision problems:
//! "is there an arrangement whose window sums all stay within distance `T`
//! of the mean?" Starting from a proven lower bound and stepping `T`
//! through the admissible grid, the first feasible threshold is the
//! optimum, certified by an explicit witness.
//!
//! The decision search fills positions left to right with the largest
//! value pinned at the front (rotations are free, so this loses nothing).
//! Each placement re-checks every window that gained an entry: a complete
//! window must respect the caps outright, and a partial one is pruned when
//! even the most favourable completion from the unused pool cannot comply.
//! Optionally the first layers of the search tree are dealt out to worker
//! threads.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use itertools::Itertools;

use crate::bounds::{bound_report, reduce_instance, ParityClass, Quantity};
use crate::perm::Permutation;
use crate::window::{disc_of, msum_of};
use crate::{Error, HalfInt, Result};

/// Hard cap for the exhaustive reference search.
pub const BRUTE_FORCE_CAP: u32 = 10;

/// Tuning knobs for the threshold search.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Maximum number of value-placement attempts across the whole run.
    pub node_budget: u64,
    /// Worker threads for the decision search; `<= 1` runs sequentially.
    pub thread_count: usize,
    /// Prune mirror images by demanding that the entry after the pinned
    /// maximum is smaller than the entry before it. Reversal preserves
    /// every window sum, so this halves the tree without losing solutions.
    pub break_reflection: bool,
    /// Starting threshold. Must be a *proven* lower bound on the optimum;
    /// the default is the best bound the fact engine can supply. With a
    /// correct start the first feasible threshold is the optimum.
    pub start_lower: Option<HalfInt>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: 1_000_000_000,
            thread_count: 1,
            break_reflection: true,
            start_lower: None,
        }
    }
}

/// How far a search run got.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    /// The optimum was determined and certified by a witness.
    Exact,
    /// The budget ran out, but at least one threshold was refuted, so the
    /// reported value improves on the starting bound.
    LowerBoundOnly,
    /// The budget ran out inside the first decision problem; the reported
    /// value is the starting lower bound, unimproved.
    BudgetExhausted,
}

/// Result of a full optimization run.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub n: u32,
    pub k: u32,
    pub quantity: Quantity,
    pub status: SearchStatus,
    /// The optimum when `status` is [`SearchStatus::Exact`], otherwise the
    /// best verified lower bound.
    pub value: HalfInt,
    /// Optimal arrangement, present exactly on [`SearchStatus::Exact`].
    /// With several worker threads any of the tied witnesses may win the
    /// race; the value and status are deterministic regardless.
    pub witness: Option<Permutation>,
    pub nodes_visited: u64,
    /// Completed decision problems in the order tested: `(threshold,
    /// feasible)`. A run cut short by the budget omits the unfinished one.
    pub thresholds_tested: Vec<(HalfInt, bool)>,
}

/// Answer of a single decision problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Feasible,
    Infeasible,
    /// Budget exhausted before the tree was covered.
    Unknown,
}

/// Outcome of one feasibility question.
#[derive(Clone, Debug)]
pub struct FeasibilityReport {
    pub threshold: HalfInt,
    pub verdict: Verdict,
    /// Arrangement witnessing feasibility, verified against the original
    /// window length.
    pub witness: Option<Permutation>,
    pub nodes: u64,
}

/// Is there an arrangement with every window sum at most `mean + t`?
pub fn feasible_msum(n: u32, k: u32, t: HalfInt, cfg: &SearchConfig) -> Result<FeasibilityReport> {
    feasible(n, k, Quantity::Msum, t, cfg, cfg.node_budget)
}

/// Is there an arrangement with every window sum within `t` of the mean?
pub fn feasible_disc(n: u32, k: u32, t: HalfInt, cfg: &SearchConfig) -> Result<FeasibilityReport> {
    feasible(n, k, Quantity::Disc, t, cfg, cfg.node_budget)
}

/// Exact minimum overshoot, or its best verified lower bound.
pub fn solve_msum(n: u32, k: u32, cfg: &SearchConfig) -> Result<SearchOutcome> {
    solve(n, k, Quantity::Msum, cfg)
}

/// Exact minimum spread, or its best verified lower bound.
pub fn solve_disc(n: u32, k: u32, cfg: &SearchConfig) -> Result<SearchOutcome> {
    solve(n, k, Quantity::Disc, cfg)
}

fn solve(n: u32, k: u32, quantity: Quantity, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let (_, k_red) = reduce_instance(n, k)?;
    let report = bound_report(n, k, quantity)?;
    let class = report.class;
    let mut t = match cfg.start_lower {
        Some(v) => class.ceil_half(v.max(class.floor_value())),
        None => report.lower.value,
    };

    let mut nodes_total: u64 = 0;
    let mut tested: Vec<(HalfInt, bool)> = Vec::new();
    loop {
        let remaining = cfg.node_budget.saturating_sub(nodes_total);
        let rep = feasible(n, k_red, quantity, t, cfg, remaining)?;
        nodes_total += rep.nodes;
        match rep.verdict {
            Verdict::Feasible => {
                let witness = rep.witness.ok_or_else(|| {
                    Error::Internal("feasible verdict without witness".into())
                })?;
                let witness = transform_witness(witness, k, k_red, quantity);
                let got = evaluate(&witness, k, quantity)?;
                if got != t {
                    return Err(Error::Internal(format!(
                        "witness evaluates to {got} at window length {k}, expected {t}"
                    )));
                }
                tested.push((t, true));
                return Ok(SearchOutcome {
                    n,
                    k,
                    quantity,
                    status: SearchStatus::Exact,
                    value: t,
                    witness: Some(witness),
                    nodes_visited: nodes_total,
                    thresholds_tested: tested,
                });
            }
            Verdict::Infeasible => {
                tested.push((t, false));
                t = class.next_above(t);
            }
            Verdict::Unknown => {
                let status = if tested.is_empty() {
                    SearchStatus::BudgetExhausted
                } else {
                    SearchStatus::LowerBoundOnly
                };
                return Ok(SearchOutcome {
                    n,
                    k,
                    quantity,
                    status,
                    value: t,
                    witness: None,
                    nodes_visited: nodes_total,
                    thresholds_tested: tested,
                });
            }
        }
    }
}

fn evaluate(pi: &Permutation, k: u32, quantity: Quantity) -> Result<HalfInt> {
    match quantity {
        Quantity::Msum => msum_of(pi, k as usize),
        Quantity::Disc => disc_of(pi, k as usize),
    }
}

/// Maps a witness found at the reduced window length back to the original.
/// The spread of a fixed arrangement is identical at complementary
/// lengths; the overshoot transfers to the value-complement arrangement.
fn transform_witness(w: Permutation, k_orig: u32, k_red: u32, quantity: Quantity) -> Permutation {
    if k_orig == k_red {
        return w;
    }
    match quantity {
        Quantity::Msum => w.complement(),
        Quantity::Disc => w,
    }
}

fn feasible(
    n: u32,
    k: u32,
    quantity: Quantity,
    t: HalfInt,
    cfg: &SearchConfig,
    budget: u64,
) -> Result<FeasibilityReport> {
    let (_, k_red) = reduce_instance(n, k)?;
    let class = ParityClass::of(u64::from(n), u64::from(k));
    if t < class.floor_value() {
        // Below the admissible grid nothing is feasible.
        return Ok(FeasibilityReport { threshold: t, verdict: Verdict::Infeasible, witness: None, nodes: 0 });
    }

    let nn = n as usize;
    let kk = k_red as usize;
    // Window sums are integers, so the caps round to integers exactly.
    let mean2 = i64::from(k_red) * (i64::from(n) + 1);
    let cap_hi = (mean2 + t.doubled()).div_euclid(2);
    let cap_lo = match quantity {
        Quantity::Msum => i64::MIN,
        Quantity::Disc => (mean2 - t.doubled() + 1).div_euclid(2),
    };

    let outcome = if cfg.thread_count > 1 && nn >= 5 {
        search_parallel(nn, kk, cap_lo, cap_hi, cfg, budget)
    } else {
        search_sequential(nn, kk, cap_lo, cap_hi, cfg, budget)
    };

    let (verdict, raw, nodes) = outcome;
    let witness = match raw {
        Some(entries) => {
            let w = Permutation::new(entries)?;
            let w = transform_witness(w, k, k_red, quantity);
            let got = evaluate(&w, k, quantity)?;
            if got > t {
                return Err(Error::Internal(format!(
                    "witness evaluates to {got}, above threshold {t}"
                )));
            }
            Some(w)
        }
        None => None,
    };
    Ok(FeasibilityReport { threshold: t, verdict, witness, nodes })
}

/// Exhaustive reference optimizer for the overshoot; `n` is capped.
pub fn brute_force_msum(n: u32, k: u32) -> Result<(HalfInt, Permutation)> {
    brute_force(n, k, Quantity::Msum)
}

/// Exhaustive reference optimizer for the spread; `n` is capped.
pub fn brute_force_disc(n: u32, k: u32) -> Result<(HalfInt, Permutation)> {
    brute_force(n, k, Quantity::Disc)
}

fn brute_force(n: u32, k: u32, quantity: Quantity) -> Result<(HalfInt, Permutation)> {
    reduce_instance(n, k)?;
    if n > BRUTE_FORCE_CAP {
        return Err(Error::BruteForceTooLarge { n, cap: BRUTE_FORCE_CAP });
    }
    // Rotations are free, so the largest value is pinned at the front.
    let mut best: Option<(HalfInt, Permutation)> = None;
    for rest in (1..n).permutations(n as usize - 1) {
        let mut entries = Vec::with_capacity(n as usize);
        entries.push(n);
        entries.extend(rest);
        let pi = Permutation::new(entries)?;
        let v = evaluate(&pi, k, quantity)?;
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, pi));
        }
    }
    best.ok_or_else(|| Error::Internal("empty permutation enumeration".into()))
}

// ---------------------------------------------------------------------------
// Decision search
// ---------------------------------------------------------------------------

const BATCH: u64 = 1024;

struct Shared {
    nodes: AtomicU64,
    cancel: AtomicBool,
    budget: u64,
    witness: Mutex<Option<Vec<u32>>>,
}

enum TreeResult {
    Found(Vec<u32>),
    Exhausted,
    Tripped,
}

struct Dfs<'a> {
    n: usize,
    k: usize,
    cap_lo: i64,
    cap_hi: i64,
    break_reflection: bool,
    pi: Vec<i64>,
    used: Vec<bool>,
    local_nodes: u64,
    since_flush: u64,
    budget: u64,
    shared: Option<&'a Shared>,
    tripped: bool,
}

impl<'a> Dfs<'a> {
    fn new(
        n: usize,
        k: usize,
        cap_lo: i64,
        cap_hi: i64,
        break_reflection: bool,
        budget: u64,
        shared: Option<&'a Shared>,
    ) -> Self {
        let mut pi = vec![0i64; n];
        let mut used = vec![false; n + 1];
        pi[0] = n as i64;
        used[n] = true;
        Dfs { n, k, cap_lo, cap_hi, break_reflection, pi, used, local_nodes: 0, since_flush: 0, budget, shared, tripped: false }
    }

    /// Counts one placement attempt; true when the search must stop.
    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        self.since_flush += 1;
        if let Some(sh) = self.shared {
            if self.since_flush >= BATCH {
                let total = sh.nodes.fetch_add(self.since_flush, Ordering::Relaxed) + self.since_flush;
                self.since_flush = 0;
                if total > sh.budget {
                    sh.cancel.store(true, Ordering::Relaxed);
                }
            }
            if sh.cancel.load(Ordering::Relaxed) {
                self.tripped = true;
            }
        } else if self.local_nodes > self.budget {
            self.tripped = true;
        }
        self.tripped
    }

    fn flush(&mut self) {
        if let Some(sh) = self.shared {
            sh.nodes.fetch_add(self.since_flush, Ordering::Relaxed);
            self.since_flush = 0;
        }
    }

    /// Re-checks every window that contains position `p`, assuming
    /// positions `0..=p` are filled. Complete windows must obey both caps;
    /// partial ones are pruned against their best possible completions
    /// from the pool of unused values.
    fn windows_ok(&self, p: usize) -> bool {
        let n = self.n;
        let k = self.k;
        // Ascending unused values and their prefix sums.
        let mut pool = Vec::with_capacity(n);
        let mut prefix = Vec::with_capacity(n + 1);
        prefix.push(0i64);
        for v in 1..=n {
            if !self.used[v] {
                pool.push(v as i64);
                prefix.push(prefix.last().unwrap() + v as i64);
            }
        }
        let pool_total = *prefix.last().unwrap();

        for off in 0..k {
            let start = (p + n - off) % n;
            let mut assigned = 0i64;
            let mut unfilled = 0usize;
            for j in 0..k {
                let v = self.pi[(start + j) % n];
                if v == 0 {
                    unfilled += 1;
                } else {
                    assigned += v;
                }
            }
            let (min_fill, max_fill) = if unfilled == 0 {
                (0, 0)
            } else {
                // Positions 0..=p are filled, so a window's holes all lie in
                // the unfilled suffix and the pool always covers them.
                debug_assert!(unfilled <= pool.len());
                (prefix[unfilled], pool_total - prefix[pool.len() - unfilled])
            };
            if assigned + min_fill > self.cap_hi || assigned + max_fill < self.cap_lo {
                return false;
            }
        }
        true
    }

    /// Pace-based value ordering: aim each candidate at the average value
    /// the tightest open window still needs.
    fn order_candidates(&self, p: usize) -> Vec<u32> {
        let n = self.n;
        let k = self.k;
        let mut best_target: Option<(usize, i64)> = None; // (unfilled, assigned)
        for off in 0..k {
            let start = (p + n - off) % n;
            let mut assigned = 0i64;
            let mut unfilled = 0usize;
            for j in 0..k {
                let v = self.pi[(start + j) % n];
                if v == 0 {
                    unfilled += 1;
                } else {
                    assigned += v;
                }
            }
            if unfilled == 0 {
                continue;
            }
            if best_target.as_ref().is_none_or(|(u, _)| unfilled < *u) {
                best_target = Some((unfilled, assigned));
            }
        }
        let mut cands: Vec<u32> = (1..=n as u32).filter(|&v| !self.used[v as usize]).collect();
        if let Some((unfilled, assigned)) = best_target {
            // Aim at the per-slot pace the tightest open window still
            // tolerates; comparisons are scaled to stay in integers.
            let target_total = if self.cap_lo == i64::MIN {
                self.cap_hi
            } else {
                (self.cap_lo + self.cap_hi).div_euclid(2)
            };
            let room = target_total - assigned;
            let u = unfilled as i64;
            cands.sort_by_key(|&v| ((i64::from(v) * u - room).abs(), v));
        }
        cands
    }

    fn run(&mut self, p: usize) -> TreeResult {
        if p == self.n {
            return TreeResult::Found(self.pi.iter().map(|&v| v as u32).collect());
        }
        let final_pos = p == self.n - 1;
        for v in self.order_candidates(p) {
            if self.tick() {
                return TreeResult::Tripped;
            }
            if final_pos && self.break_reflection && self.n >= 3 && i64::from(v) >= self.pi[1] {
                // Mirror image: reversal fixes the pinned maximum and swaps
                // the neighbours, so demand strict order between them.
                continue;
            }
            self.pi[p] = i64::from(v);
            self.used[v as usize] = true;
            if self.windows_ok(p) {
                match self.run(p + 1) {
                    TreeResult::Exhausted => {}
                    other => return other,
                }
            }
            self.pi[p] = 0;
            self.used[v as usize] = false;
        }
        TreeResult::Exhausted
    }
}

fn search_sequential(
    n: usize,
    k: usize,
    cap_lo: i64,
    cap_hi: i64,
    cfg: &SearchConfig,
    budget: u64,
) -> (Verdict, Option<Vec<u32>>, u64) {
    let mut dfs = Dfs::new(n, k, cap_lo, cap_hi, cfg.break_reflection, budget, None);
    match dfs.run(1) {
        TreeResult::Found(w) => (Verdict::Feasible, Some(w), dfs.local_nodes),
        TreeResult::Exhausted => (Verdict::Infeasible, None, dfs.local_nodes),
        TreeResult::Tripped => (Verdict::Unknown, None, dfs.local_nodes),
    }
}

fn search_parallel(
    n: usize,
    k: usize,
    cap_lo: i64,
    cap_hi: i64,
    cfg: &SearchConfig,
    budget: u64,
) -> (Verdict, Option<Vec<u32>>, u64) {
    // Deal out subtrees rooted at the first two free positions.
    let mut tasks: Vec<(u32, u32)> = Vec::new();
    for a in 1..n as u32 {
        for b in 1..n as u32 {
            if a != b {
                tasks.push((a, b));
            }
        }
    }
    let shared = Shared {
        nodes: AtomicU64::new(0),
        cancel: AtomicBool::new(false),
        budget,
        witness: Mutex::new(None),
    };
    let next = AtomicU64::new(0);
    let any_tripped = AtomicBool::new(false);

    std::thread::scope(|scope| {
        for _ in 0..cfg.thread_count.max(1) {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed) as usize;
                if idx >= tasks.len() || shared.cancel.load(Ordering::Relaxed) {
                    break;
                }
                let (a, b) = tasks[idx];
                let mut dfs =
                    Dfs::new(n, k, cap_lo, cap_hi, cfg.break_reflection, budget, Some(&shared));
                let result = dfs.seed_and_run(a, b);
                dfs.flush();
                match result {
                    TreeResult::Found(w) => {
                        let mut slot = shared.witness.lock().unwrap();
                        if slot.is_none() {
                            *slot = Some(w);
                        }
                        shared.cancel.store(true, Ordering::Relaxed);
                    }
                    TreeResult::Tripped => {
                        any_tripped.store(true, Ordering::Relaxed);
                    }
                    TreeResult::Exhausted => {}
                }
            });
        }
    });

    let nodes = shared.nodes.load(Ordering::Relaxed);
    let witness = shared.witness.into_inner().unwrap();
    if let Some(w) = witness {
        (Verdict::Feasible, Some(w), nodes)
    } else if any_tripped.load(Ordering::Relaxed) {
        (Verdict::Unknown, None, nodes)
    } else {
        (Verdict::Infeasible, None, nodes)
    }
}

impl Dfs<'_> {
    /// Places the two dealt values, then explores the remaining subtree.
    fn seed_and_run(&mut self, a: u32, b: u32) -> TreeResult {
        for (p, v) in [(1usize, a), (2usize, b)] {
            if self.tick() {
                return TreeResult::Tripped;
            }
            self.pi[p] = i64::from(v);
            self.used[v as usize] = true;
            if !self.windows_ok(p) {
                return TreeResult::Exhausted;
            }
        }
        self.run(3)
    }
}
