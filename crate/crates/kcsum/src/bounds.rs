//! Proven lower and upper bounds for the two instance optima.
//!
//! The optima `msum(n, k)` and `disc(n, k)` are pinned down exactly for many
//! instance shapes and bracketed for the rest. This module encodes each
//! known fact as a guarded rule in code and aggregates them into a
//! [`BoundReport`]: the best proven lower bound, the best proven upper
//! bound (absent when nothing applies), and the exact value when the two
//! meet. Every contributing rule is named in the report's provenance.
//!
//! Three structural devices do most of the work:
//!
//! * **Parity.** Both optima lie on a fixed grid: half-odd values when `k`
//!   is odd and `n` even, whole numbers otherwise ([`ParityClass`]). Every
//!   bound is tightened onto that grid, and a rule gains the
//!   [`Provenance::Parity`] tag when tightening moved it.
//! * **Complement.** Replacing each value `v` by `n + 1 - v` swaps window
//!   overshoot and undershoot, which makes the optima at window lengths `k`
//!   and `n - k` equal. Facts are therefore harvested at both lengths and
//!   merged; a fact imported from the opposite length carries
//!   [`Provenance::Reduce`].
//! * **Transfer.** `msum <= disc` pointwise, so every upper bound on the
//!   spread bounds the overshoot, and every lower bound on the overshoot
//!   bounds the spread. Transfers never run the other way.

use serde::{Deserialize, Serialize};

use crate::construct::ConstructionId;
use crate::{Error, HalfInt, Result};

/// Which optimum a statement is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    /// Worst overshoot of a window sum above the mean.
    Msum,
    /// Worst absolute deviation of a window sum from the mean.
    Disc,
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Quantity::Msum => "msum",
            Quantity::Disc => "disc",
        })
    }
}

impl std::str::FromStr for Quantity {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "msum" => Ok(Quantity::Msum),
            "disc" => Ok(Quantity::Disc),
            other => Err(format!("unknown quantity {other:?}, expected msum or disc")),
        }
    }
}

/// The half-integer grid an optimum is confined to.
///
/// Half-odd exactly when `k` is odd and `n` is even; whole numbers
/// otherwise. Both optima are always positive, so the grid starts at `1/2`
/// or `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityClass {
    Integer,
    HalfOdd,
}

impl ParityClass {
    pub fn of(n: u64, k: u64) -> ParityClass {
        if k % 2 == 1 && n.is_multiple_of(2) {
            ParityClass::HalfOdd
        } else {
            ParityClass::Integer
        }
    }

    /// Smallest admissible value: `1/2` or `1`.
    pub fn floor_value(self) -> HalfInt {
        match self {
            ParityClass::Integer => HalfInt::ONE,
            ParityClass::HalfOdd => HalfInt::HALF,
        }
    }

    pub fn contains(self, v: HalfInt) -> bool {
        v >= self.floor_value()
            && match self {
                ParityClass::Integer => v.doubled() % 2 == 0,
                ParityClass::HalfOdd => v.doubled() % 2 != 0,
            }
    }

    /// Smallest admissible value at least `num/den` (`den > 0`).
    pub fn ceil_ratio(self, num: i64, den: i64) -> HalfInt {
        debug_assert!(den > 0);
        fn ceil_div(num: i64, den: i64) -> i64 {
            num.div_euclid(den) + i64::from(num.rem_euclid(den) != 0)
        }
        match self {
            ParityClass::Integer => {
                let t = ceil_div(num, den).max(1);
                HalfInt::from_int(t)
            }
            ParityClass::HalfOdd => {
                // smallest odd t >= 1 with t/2 >= num/den
                let mut t = ceil_div(2 * num, den).max(1);
                if t % 2 == 0 {
                    t += 1;
                }
                HalfInt::from_doubled(t)
            }
        }
    }

    /// Smallest admissible value at least `v`.
    pub fn ceil_half(self, v: HalfInt) -> HalfInt {
        self.ceil_ratio(v.doubled(), 2)
    }

    /// Largest admissible value at most `v`. May fall below the admissible
    /// floor if `v` does; aggregation treats that as an inconsistency.
    pub fn floor_half(self, v: HalfInt) -> HalfInt {
        match self {
            ParityClass::Integer => HalfInt::from_int(v.doubled().div_euclid(2)),
            ParityClass::HalfOdd => {
                let d = v.doubled();
                HalfInt::from_doubled(if d % 2 != 0 { d } else { d - 1 })
            }
        }
    }

    /// Smallest admissible value strictly above `v`.
    pub fn next_above(self, v: HalfInt) -> HalfInt {
        self.ceil_ratio(v.doubled() + 1, 2)
    }
}

/// Names the rule that produced a bound. Carried through reports so every
/// number in the output can be traced to the fact that justifies it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    /// Values are confined to the admissible half-integer grid.
    Parity,
    /// Fact imported from the complementary window length `n - k`.
    Reduce,
    /// `k = 1`: every arrangement contains the value `n`, so both optima
    /// equal `(n - 1)/2` exactly.
    UnitWindow,
    /// `n = mk + 1`, `m >= 2`: overshoot at least `k/2`.
    PlusOneFloor,
    /// `n = mk - 1`, `m >= 3`: overshoot at least `k/2`.
    MinusOneFloor,
    /// `n = mk`, `m >= 2`: overshoot at least `1 - 1/m`.
    MultipleFloor,
    /// `n = mk`, `m` and `k` odd, `m >= 2k + 3`: overshoot at least 2.
    OddMultipleFloor,
    /// `k` odd, `k >= 5`, `n ≡ (k+1)/2 (mod k)`: overshoot strictly above 1.
    HalfShiftFloor,
    /// `k = 5`, `n ≡ 2 (mod 5)`, `n >= 12`: overshoot strictly above 1.
    FiveResidueTwoFloor,
    /// `k` even `>= 4`, `n ≡ ±1 (mod k)`: overshoot exactly `k/2`.
    EvenAdjacentValue,
    /// `k` odd `>= 3`, `n ≡ ±1 (mod k)`: overshoot exactly `k/2` for even
    /// `n` and `(k+1)/2` for odd `n`.
    OddAdjacentValue,
    /// `k` odd `>= 3`, `n = mk`: overshoot exactly `1/2` when `m = 2`,
    /// `3/2` when `m` even `>= 4`, and `2` when `m` odd with `m >= 2k + 3`.
    OddMultipleValue,
    /// `n` and `k` even, `n >= 2k`: overshoot exactly 1.
    BothEvenValue,
    /// `k` even, `n ≡ k/2 (mod k)`: overshoot exactly 1; for odd `n` the
    /// spread is exactly 1 as well.
    HalfwayValue,
    /// `k = 4`, `n ≡ 2 (mod 4)`, `n >= 10`: spread exactly 2.
    FourCycleTwo,
    /// `k` odd `>= 3`: spread exactly `1/2` at `n = 2k` and `1` at `n = 3k`.
    SmallMultipleDisc,
    /// `k = 2`, `n >= 3`: spread exactly 1.
    PairDisc,
    /// `k = 3`, `n >= 6`: spread at most 2.
    TripleDiscCap,
    /// `k` even, `n = mk`: spread exactly 1.
    MultipleDiscValue,
    /// `k` odd `>= 3`, `n = mk`: spread at most 2.
    MultipleDiscCap,
    /// `g = gcd(n,k) > 1`: spread at most 2 for even `g`, at most `7/2`
    /// for odd `g`.
    CommonFactorCap,
    /// Odd `g > 1` dividing both `n` and `k`: the spread at `(n, k)` is at
    /// most the spread at `(n/g, k/g)`; applied recursively.
    OddFactorLift,
    /// `gcd(n,k) = 1`, `n > 2k`, `r = n mod k`, `s` minimal with
    /// `rs ≡ ±1 (mod k)`: spread at least `k/(2s)`.
    CoprimeStepFloor,
    /// `k` even, `n ≡ ±1 (mod k)`: spread exactly `k/2`.
    EvenAdjacentDisc,
    /// `k` odd, `n = 2kt`, `t > 1`: overshoot and spread both exactly `3/2`.
    DoubleMultipleValue,
    /// `n ≡ 3 (mod 6)`, `n > 15`: spread at window length 3 exactly 2.
    TripleOddMultipleDisc,
    /// `k` even, `n = mk ± 2` with `m > 2`: overshoot exactly 1.
    NearDoubleEvenValue,
    /// Individually recorded overshoot value: `msum(21, 3) = 2`.
    RecordedMsum,
    /// Individually recorded spread value: `disc(15, 3) = 1`.
    RecordedDisc,
    /// Certified by evaluating an explicit construction.
    Construction(ConstructionId),
    /// Settled by an exhaustive solver run with a verified witness.
    SolverCertificate,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Parity => f.write_str("parity"),
            Provenance::Reduce => f.write_str("reduce"),
            Provenance::UnitWindow => f.write_str("unit-window"),
            Provenance::PlusOneFloor => f.write_str("plus-one-floor"),
            Provenance::MinusOneFloor => f.write_str("minus-one-floor"),
            Provenance::MultipleFloor => f.write_str("multiple-floor"),
            Provenance::OddMultipleFloor => f.write_str("odd-multiple-floor"),
            Provenance::HalfShiftFloor => f.write_str("half-shift-floor(>1)"),
            Provenance::FiveResidueTwoFloor => f.write_str("five-residue-two-floor(>1)"),
            Provenance::EvenAdjacentValue => f.write_str("even-adjacent-value"),
            Provenance::OddAdjacentValue => f.write_str("odd-adjacent-value"),
            Provenance::OddMultipleValue => f.write_str("odd-multiple-value"),
            Provenance::BothEvenValue => f.write_str("both-even-value"),
            Provenance::HalfwayValue => f.write_str("halfway-value"),
            Provenance::FourCycleTwo => f.write_str("four-cycle-two"),
            Provenance::SmallMultipleDisc => f.write_str("small-multiple-disc"),
            Provenance::PairDisc => f.write_str("pair-disc"),
            Provenance::TripleDiscCap => f.write_str("triple-disc-cap"),
            Provenance::MultipleDiscValue => f.write_str("multiple-disc-value"),
            Provenance::MultipleDiscCap => f.write_str("multiple-disc-cap"),
            Provenance::CommonFactorCap => f.write_str("common-factor-cap"),
            Provenance::OddFactorLift => f.write_str("odd-factor-lift"),
            Provenance::CoprimeStepFloor => f.write_str("coprime-step-floor"),
            Provenance::EvenAdjacentDisc => f.write_str("even-adjacent-disc"),
            Provenance::DoubleMultipleValue => f.write_str("double-multiple-value"),
            Provenance::TripleOddMultipleDisc => f.write_str("triple-odd-multiple-disc"),
            Provenance::NearDoubleEvenValue => f.write_str("near-double-even-value"),
            Provenance::RecordedMsum => f.write_str("recorded-msum"),
            Provenance::RecordedDisc => f.write_str("recorded-disc"),
            Provenance::Construction(id) => write!(f, "construction:{id}"),
            Provenance::SolverCertificate => f.write_str("solver-certificate"),
        }
    }
}

/// One side of a report: a value and every rule that attains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundPart {
    pub value: HalfInt,
    pub sources: Vec<Provenance>,
}

/// Aggregated bound state for one instance and quantity.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub n: u32,
    pub k: u32,
    pub quantity: Quantity,
    pub class: ParityClass,
    pub lower: BoundPart,
    /// Best proven upper bound; `None` when no rule applies.
    pub upper: Option<BoundPart>,
    /// Present exactly when `lower` meets `upper`.
    pub exact: Option<HalfInt>,
}

/// Checks the instance and replaces `k` by `n - k` when that is shorter.
/// The optima are unchanged by this swap.
pub fn reduce_instance(n: u32, k: u32) -> Result<(u32, u32)> {
    check_instance(n, k)?;
    Ok((n, k.min(n - k)))
}

fn check_instance(n: u32, k: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InstanceDomain { n, k, reason: "need n >= 2".into() });
    }
    if k < 1 || k >= n {
        return Err(Error::InstanceDomain { n, k, reason: "need 1 <= k < n".into() });
    }
    Ok(())
}

/// The admissible grid and its smallest value for an instance.
pub fn parity_floor(n: u32, k: u32) -> Result<(HalfInt, ParityClass)> {
    check_instance(n, k)?;
    let class = ParityClass::of(u64::from(n), u64::from(k));
    Ok((class.floor_value(), class))
}

// ---------------------------------------------------------------------------
// Fact collection
// ---------------------------------------------------------------------------

/// A single applicable fact, already tightened onto the admissible grid.
#[derive(Clone, Debug)]
struct Cand {
    value: HalfInt,
    sources: Vec<Provenance>,
}

#[derive(Default, Debug)]
struct FactSet {
    msum_lower: Vec<Cand>,
    msum_exact: Vec<Cand>,
    disc_lower: Vec<Cand>,
    disc_upper: Vec<Cand>,
    disc_exact: Vec<Cand>,
}

/// Recursion guard for the odd-factor lift. The instance shrinks by a
/// factor of at least 3 per level, so this depth is never reached for any
/// representable input.
const MAX_LIFT_DEPTH: u8 = 48;

fn cand(value: HalfInt, tag: Provenance, via_reduce: bool) -> Cand {
    let mut sources = vec![tag];
    if via_reduce {
        sources.push(Provenance::Reduce);
    }
    Cand { value, sources }
}

/// Tightens a lower bound given as `num/den` onto the grid, tagging the
/// parity rule when tightening raised it.
fn lower_ratio(
    class: ParityClass,
    num: i64,
    den: i64,
    tag: Provenance,
    via_reduce: bool,
) -> Cand {
    let tightened = class.ceil_ratio(num, den);
    let mut c = cand(tightened, tag, via_reduce);
    if tightened.doubled() * den > num * 2 {
        c.sources.push(Provenance::Parity);
    }
    c
}

/// Tightens an upper bound onto the grid, tagging parity when it moved.
fn upper_half(class: ParityClass, v: HalfInt, tag: Provenance, via_reduce: bool) -> Cand {
    let tightened = class.floor_half(v);
    let mut c = cand(tightened, tag, via_reduce);
    if tightened < v {
        c.sources.push(Provenance::Parity);
    }
    c
}

/// Collects every fact applying to window length `k` on `n` symbols.
///
/// `class` is the grid of the *queried* instance; the complementary window
/// length shares it. `via` marks facts imported from the complementary
/// length.
fn side_facts(n: u64, k: u64, class: ParityClass, via: bool, depth: u8, out: &mut FactSet) {
    let push_exact_msum = |out: &mut FactSet, c: Cand| {
        debug_assert!(class.contains(c.value), "exact overshoot off-grid");
        out.msum_exact.push(c);
    };
    let push_exact_disc = |out: &mut FactSet, c: Cand| {
        debug_assert!(class.contains(c.value), "exact spread off-grid");
        out.disc_exact.push(c);
    };

    if k == 1 {
        // Every arrangement contains n and 1; the single-entry window sums
        // are the values themselves, so both optima are (n-1)/2.
        let v = HalfInt::from_doubled(n as i64 - 1);
        push_exact_msum(out, cand(v, Provenance::UnitWindow, via));
        push_exact_disc(out, cand(v, Provenance::UnitWindow, via));
        return;
    }

    let m = n / k;
    let rem = n % k;
    let g = gcd(n, k);
    let k_half = HalfInt::from_doubled(k as i64);
    let k_half_up = HalfInt::from_doubled(k as i64 + 1);

    // ---- overshoot lower bounds ----
    if rem == 1 && m >= 2 {
        out.msum_lower.push(lower_ratio(class, k as i64, 2, Provenance::PlusOneFloor, via));
    }
    if rem == k - 1 && (n + 1) / k >= 3 {
        out.msum_lower.push(lower_ratio(class, k as i64, 2, Provenance::MinusOneFloor, via));
    }
    if rem == 0 && m >= 2 {
        out.msum_lower.push(lower_ratio(
            class,
            m as i64 - 1,
            m as i64,
            Provenance::MultipleFloor,
            via,
        ));
    }
    if rem == 0 && k % 2 == 1 && k >= 3 && m % 2 == 1 && m >= 2 * k + 3 {
        out.msum_lower.push(cand(HalfInt::from_int(2), Provenance::OddMultipleFloor, via));
    }
    if k % 2 == 1 && k >= 5 && rem == k.div_ceil(2) {
        // Strict "> 1", recorded as the next admissible value.
        out.msum_lower.push(cand(
            class.next_above(HalfInt::ONE),
            Provenance::HalfShiftFloor,
            via,
        ));
    }
    if k == 5 && rem == 2 && n >= 12 {
        out.msum_lower.push(cand(
            class.next_above(HalfInt::ONE),
            Provenance::FiveResidueTwoFloor,
            via,
        ));
    }

    // ---- overshoot exact values ----
    if k.is_multiple_of(2) && k >= 4 && adjacent_guard(n, k) {
        push_exact_msum(out, cand(k_half, Provenance::EvenAdjacentValue, via));
    }
    if k % 2 == 1 && k >= 3 && adjacent_guard(n, k) {
        let v = if n.is_multiple_of(2) { k_half } else { k_half_up };
        push_exact_msum(out, cand(v, Provenance::OddAdjacentValue, via));
    }
    if k % 2 == 1 && k >= 3 && rem == 0 {
        if m == 2 {
            push_exact_msum(out, cand(HalfInt::HALF, Provenance::OddMultipleValue, via));
        } else if m.is_multiple_of(2) {
            push_exact_msum(out, cand(HalfInt::from_doubled(3), Provenance::OddMultipleValue, via));
        } else if m >= 2 * k + 3 {
            push_exact_msum(out, cand(HalfInt::from_int(2), Provenance::OddMultipleValue, via));
        }
    }
    if n.is_multiple_of(2) && k.is_multiple_of(2) && n >= 2 * k {
        push_exact_msum(out, cand(HalfInt::ONE, Provenance::BothEvenValue, via));
    }
    if k.is_multiple_of(2) && rem == k / 2 {
        push_exact_msum(out, cand(HalfInt::ONE, Provenance::HalfwayValue, via));
        if n % 2 == 1 {
            push_exact_disc(out, cand(HalfInt::ONE, Provenance::HalfwayValue, via));
        }
    }
    if k % 2 == 1 && k >= 3 && rem == 0 && m.is_multiple_of(2) && m >= 4 {
        // n = 2kt with t > 1; overshoot and spread both 3/2.
        let v = HalfInt::from_doubled(3);
        push_exact_msum(out, cand(v, Provenance::DoubleMultipleValue, via));
        push_exact_disc(out, cand(v, Provenance::DoubleMultipleValue, via));
    }
    if k.is_multiple_of(2) && n.is_multiple_of(2) {
        let plus_ok = n % k == 2 && (n - 2) / k > 2;
        let minus_ok = (n + 2).is_multiple_of(k) && (n + 2) / k > 2;
        if plus_ok || minus_ok {
            push_exact_msum(out, cand(HalfInt::ONE, Provenance::NearDoubleEvenValue, via));
        }
    }
    if n == 21 && k == 3 {
        push_exact_msum(out, cand(HalfInt::from_int(2), Provenance::RecordedMsum, via));
    }

    // ---- spread exact values ----
    if k % 2 == 1 && k >= 3 && n == 2 * k {
        push_exact_disc(out, cand(HalfInt::HALF, Provenance::SmallMultipleDisc, via));
    }
    if k % 2 == 1 && k >= 3 && n == 3 * k {
        push_exact_disc(out, cand(HalfInt::ONE, Provenance::SmallMultipleDisc, via));
    }
    if k == 2 {
        push_exact_disc(out, cand(HalfInt::ONE, Provenance::PairDisc, via));
    }
    if k.is_multiple_of(2) && rem == 0 {
        push_exact_disc(out, cand(HalfInt::ONE, Provenance::MultipleDiscValue, via));
    }
    if k.is_multiple_of(2) && adjacent_residue(n, k) {
        push_exact_disc(out, cand(k_half, Provenance::EvenAdjacentDisc, via));
    }
    if k == 3 && n % 6 == 3 && n > 15 {
        push_exact_disc(out, cand(HalfInt::from_int(2), Provenance::TripleOddMultipleDisc, via));
    }
    if k == 4 && n % 4 == 2 && n >= 10 {
        push_exact_disc(out, cand(HalfInt::from_int(2), Provenance::FourCycleTwo, via));
    }
    if n == 15 && k == 3 {
        push_exact_disc(out, cand(HalfInt::ONE, Provenance::RecordedDisc, via));
    }

    // ---- spread upper bounds ----
    if k == 3 && n >= 6 {
        out.disc_upper.push(upper_half(class, HalfInt::from_int(2), Provenance::TripleDiscCap, via));
    }
    if k % 2 == 1 && k >= 3 && rem == 0 {
        out.disc_upper.push(upper_half(class, HalfInt::from_int(2), Provenance::MultipleDiscCap, via));
    }
    if g > 1 {
        let cap = if g.is_multiple_of(2) { HalfInt::from_int(2) } else { HalfInt::from_doubled(7) };
        out.disc_upper.push(upper_half(class, cap, Provenance::CommonFactorCap, via));
    }
    if depth < MAX_LIFT_DEPTH {
        for f in odd_common_factors(n, k) {
            if let Some(inner) = disc_upper_value(n / f, k / f, depth + 1) {
                let mut c = upper_half(class, inner, Provenance::OddFactorLift, via);
                c.sources.sort();
                out.disc_upper.push(c);
            }
        }
    }

    // ---- spread lower bounds ----
    // Valid only in the short-window regime: at (9,5) the unrestricted
    // reading would claim 5/2 while the spread is actually 2.
    if g == 1 && k >= 2 && n > 2 * k {
        let s = min_inverse_step(rem, k);
        out.disc_lower.push(lower_ratio(
            class,
            k as i64,
            2 * s as i64,
            Provenance::CoprimeStepFloor,
            via,
        ));
    }
}

/// `n ≡ ±1 (mod k)` with enough full periods for the directed families:
/// two for the `+1` shape, three for the `-1` shape.
fn adjacent_guard(n: u64, k: u64) -> bool {
    (n % k == 1 && n / k >= 2) || (n % k == k - 1 && (n + 1) / k >= 3)
}

fn adjacent_residue(n: u64, k: u64) -> bool {
    n % k == 1 || n % k == k - 1
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Odd factors `> 1` shared by `n` and `k`, one per prime power divisor of
/// the odd part of `gcd(n, k)`, plus the full odd part itself.
fn odd_common_factors(n: u64, k: u64) -> Vec<u64> {
    let mut g = gcd(n, k);
    while g.is_multiple_of(2) {
        g /= 2;
    }
    let mut out = Vec::new();
    if g > 1 {
        out.push(g);
        // Also try each proper odd prime divisor: a smaller lift can beat
        // the full one when the intermediate instance has better facts.
        let mut rest = g;
        let mut p = 3;
        while p * p <= rest {
            if rest.is_multiple_of(p) {
                if p != g {
                    out.push(p);
                }
                while rest.is_multiple_of(p) {
                    rest /= p;
                }
            }
            p += 2;
        }
        if rest > 1 && rest != g {
            out.push(rest);
        }
    }
    out
}

/// Smallest `s >= 1` with `r*s ≡ ±1 (mod k)`; requires `gcd(r, k) = 1`.
fn min_inverse_step(r: u64, k: u64) -> u64 {
    debug_assert!(k >= 2 && gcd(r, k) == 1);
    let mut prod = 0u64;
    for s in 1..=k {
        prod = (prod + r) % k;
        if prod == 1 % k || prod == k - 1 {
            return s;
        }
    }
    unreachable!("r has a multiplicative inverse modulo k")
}

/// Merged facts for the instance, harvested at both window lengths.
fn collect_facts(n: u64, k: u64, depth: u8) -> FactSet {
    let class = ParityClass::of(n, k);
    let mut set = FactSet::default();
    side_facts(n, k, class, false, depth, &mut set);
    let k2 = n - k;
    if k2 != k {
        side_facts(n, k2, class, true, depth, &mut set);
    }
    // Parity floor applies to both quantities unconditionally.
    let floor = cand(class.floor_value(), Provenance::Parity, false);
    set.msum_lower.push(floor.clone());
    set.disc_lower.push(floor);
    set
}

/// Best proven upper bound on the spread, used by the odd-factor lift.
fn disc_upper_value(n: u64, k: u64, depth: u8) -> Option<HalfInt> {
    let set = collect_facts(n, k, depth);
    set.disc_upper
        .iter()
        .chain(set.disc_exact.iter())
        .map(|c| c.value)
        .min()
}

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

fn best_max(cands: &[Cand]) -> Option<BoundPart> {
    let best = cands.iter().map(|c| c.value).max()?;
    Some(merge_sources(best, cands))
}

fn best_min(cands: &[Cand]) -> Option<BoundPart> {
    let best = cands.iter().map(|c| c.value).min()?;
    Some(merge_sources(best, cands))
}

fn merge_sources(best: HalfInt, cands: &[Cand]) -> BoundPart {
    let mut sources: Vec<Provenance> = cands
        .iter()
        .filter(|c| c.value == best)
        .flat_map(|c| c.sources.iter().copied())
        .collect();
    sources.sort();
    sources.dedup();
    BoundPart { value: best, sources }
}

/// Best lower bound on the overshoot from the floor rules alone (the exact
/// value rules are aggregated separately by [`bound_report`]).
pub fn msum_lower_bound(n: u32, k: u32) -> Result<BoundPart> {
    check_instance(n, k)?;
    let set = collect_facts(u64::from(n), u64::from(k), 0);
    best_max(&set.msum_lower)
        .ok_or_else(|| Error::Internal("parity floor always applies".into()))
}

/// Best proven upper bound on the overshoot, if any rule applies. Spread
/// bounds transfer here because the overshoot never exceeds the spread.
pub fn msum_upper_bound(n: u32, k: u32) -> Result<Option<BoundPart>> {
    Ok(bound_report(n, k, Quantity::Msum)?.upper)
}

/// The exact overshoot when proven facts pin it down.
pub fn known_msum(n: u32, k: u32) -> Result<Option<(HalfInt, Vec<Provenance>)>> {
    let report = bound_report(n, k, Quantity::Msum)?;
    Ok(report.exact.map(|v| {
        let mut sources = report.lower.sources;
        if let Some(u) = report.upper {
            sources.extend(u.sources);
        }
        sources.sort();
        sources.dedup();
        (v, sources)
    }))
}

/// Everything proven about the spread of an instance; exact when the
/// interval degenerates.
pub fn known_disc(n: u32, k: u32) -> Result<BoundReport> {
    bound_report(n, k, Quantity::Disc)
}

/// Aggregates every applicable fact into a consistent report.
pub fn bound_report(n: u32, k: u32, quantity: Quantity) -> Result<BoundReport> {
    check_instance(n, k)?;
    let (nn, kk) = (u64::from(n), u64::from(k));
    let class = ParityClass::of(nn, kk);
    let set = collect_facts(nn, kk, 0);

    let (lower_cands, upper_cands, exact_cands) = match quantity {
        Quantity::Msum => {
            // Lower: overshoot floors and exact overshoot values.
            let mut lo = set.msum_lower.clone();
            lo.extend(set.msum_exact.iter().cloned());
            // Upper: exact overshoot values, plus every spread cap.
            let mut up = set.msum_exact.clone();
            up.extend(set.disc_upper.iter().cloned());
            up.extend(set.disc_exact.iter().cloned());
            (lo, up, set.msum_exact)
        }
        Quantity::Disc => {
            // Lower: spread floors, plus every overshoot floor and value.
            let mut lo = set.disc_lower.clone();
            lo.extend(set.msum_lower.iter().cloned());
            lo.extend(set.msum_exact.iter().cloned());
            lo.extend(set.disc_exact.iter().cloned());
            let mut up = set.disc_upper.clone();
            up.extend(set.disc_exact.iter().cloned());
            (lo, up, set.disc_exact)
        }
    };

    // Exact rules must agree among themselves.
    if let Some(first) = exact_cands.first() {
        if let Some(conflict) = exact_cands.iter().find(|c| c.value != first.value) {
            return Err(Error::Internal(format!(
                "conflicting exact values for {quantity}({n},{k}): {} {:?} vs {} {:?}",
                first.value, first.sources, conflict.value, conflict.sources
            )));
        }
    }

    let lower = best_max(&lower_cands)
        .ok_or_else(|| Error::Internal("parity floor always applies".into()))?;
    let upper = best_min(&upper_cands);

    if !class.contains(lower.value) {
        return Err(Error::Internal(format!(
            "lower bound {} for {quantity}({n},{k}) is off the admissible grid",
            lower.value
        )));
    }
    if let Some(u) = &upper {
        if !class.contains(u.value) {
            return Err(Error::Internal(format!(
                "upper bound {} for {quantity}({n},{k}) is off the admissible grid",
                u.value
            )));
        }
        if lower.value > u.value {
            return Err(Error::Internal(format!(
                "inconsistent bounds for {quantity}({n},{k}): lower {} {:?} above upper {} {:?}",
                lower.value, lower.sources, u.value, u.sources
            )));
        }
    }

    let exact = match &upper {
        Some(u) if u.value == lower.value => Some(lower.value),
        _ => None,
    };
    Ok(BoundReport { n, k, quantity, class, lower, upper, exact })
}
