//! Acceptance gate: ten checks that pin the library's observable behavior,
//! each printing one PASS line with its measured runtime. Tolerances are
//! asserted, not just reported.

use std::time::{Duration, Instant};

use itertools::Itertools as _;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kcsum::bounds::{bound_report, Quantity};
use kcsum::construct::{even_even, even_even_grid, mod_minus_one, mod_plus_one};
use kcsum::lemmas::{max_inequality_suite, nest_suite, BinarySeq};
use kcsum::perm::Permutation;
use kcsum::solver::{
    brute_force_disc, brute_force_msum, solve_disc, solve_msum, SearchConfig, SearchStatus,
};
use kcsum::window::{disc_of, msum_of, WindowProfile};
use kcsum::HalfInt;

fn half(doubled: i64) -> HalfInt {
    HalfInt::from_doubled(doubled)
}

fn fixture_perm(text: &str) -> Permutation {
    let perms = Permutation::parse_text(text).expect("fixture parses");
    assert_eq!(perms.len(), 1, "fixture holds one arrangement");
    perms.into_iter().next().expect("one arrangement")
}

#[test]
fn criterion_01_golden_evaluations() {
    let started = Instant::now();
    let cases: [(&str, usize, i64, i64); 4] = [
        (include_str!("fixtures/mod_plus_one_k7_m6.txt"), 7, 158, 8),
        (include_str!("fixtures/mod_plus_one_k5_m5.txt"), 5, 70, 5),
        (include_str!("fixtures/mod_minus_one_k7_m6.txt"), 7, 151, 8),
        (include_str!("fixtures/mod_minus_one_k5_m5.txt"), 5, 65, 5),
    ];
    for (text, k, want_max, want_msum_doubled) in cases {
        let pi = fixture_perm(text);
        let profile = WindowProfile::new(&pi, k).expect("profile");
        assert_eq!(
            profile.max_sum(),
            want_max,
            "criterion 1 FAIL: max window sum of the printed n={} arrangement",
            pi.n()
        );
        assert_eq!(
            profile.msum(),
            half(want_msum_doubled),
            "criterion 1 FAIL: msum of the printed n={} arrangement",
            pi.n()
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "criterion 1 FAIL: took {elapsed:?}, limit 1 s");
    println!(
        "[acceptance] criterion 1 PASS: printed arrangements give max sums 158/70/151/65 \
         and msum 4, 5/2, 4, 5/2 ({elapsed:?})"
    );
}

fn parse_grid_fixture(text: &str) -> Vec<Vec<Option<u32>>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|t| if t == "*" { None } else { Some(t.parse().expect("cell")) })
                .collect()
        })
        .collect()
}

#[test]
fn criterion_02_construction_fidelity() {
    let started = Instant::now();
    let cases: [(&str, u32, u32, &str); 4] = [
        ("mod+1", 7, 6, include_str!("fixtures/mod_plus_one_k7_m6.txt")),
        ("mod+1", 5, 5, include_str!("fixtures/mod_plus_one_k5_m5.txt")),
        ("mod-1", 7, 6, include_str!("fixtures/mod_minus_one_k7_m6.txt")),
        ("mod-1", 5, 5, include_str!("fixtures/mod_minus_one_k5_m5.txt")),
    ];
    for (family, k, m, text) in cases {
        let c = match family {
            "mod+1" => mod_plus_one(k, m).expect("family applies"),
            _ => mod_minus_one(k, m).expect("family applies"),
        };
        let want = fixture_perm(text);
        assert_eq!(
            c.pi.entries(),
            want.entries(),
            "criterion 2 FAIL: {family}(k={k}, m={m}) differs from the printed arrangement"
        );
    }

    let grid = even_even_grid(48, 18).expect("grid applies");
    let want = parse_grid_fixture(include_str!("fixtures/even_even_48_18.txt"));
    assert_eq!(
        grid.rows(),
        &want[..],
        "criterion 2 FAIL: even-even(48,18) grid differs from the printed table"
    );
    let elapsed = started.elapsed();
    println!(
        "[acceptance] criterion 2 PASS: mod+1(7,6), mod+1(5,5), mod-1(7,6), mod-1(5,5) \
         match entry-for-entry and the 48x18 grid matches cell-for-cell ({elapsed:?})"
    );
}

#[test]
fn criterion_03_family_sweep() {
    let started = Instant::now();
    for k in [5u32, 7, 9, 11] {
        for m in 2..=6u32 {
            let want = if m % 2 == 0 { half(i64::from(k) + 1) } else { half(i64::from(k)) };
            let c = mod_plus_one(k, m).expect("mod+1 applies");
            assert_eq!(c.msum, want, "criterion 3 FAIL: mod+1(k={k}, m={m}) msum");
            if m >= 3 {
                let c = mod_minus_one(k, m).expect("mod-1 applies");
                assert_eq!(c.msum, want, "criterion 3 FAIL: mod-1(k={k}, m={m}) msum");
            }
        }
    }
    let mut grids = 0u32;
    for k in (4..=12u32).step_by(2) {
        for n in (2 * k..=60).step_by(2) {
            let c = even_even(n, k).expect("even-even applies");
            assert_eq!(c.msum, HalfInt::ONE, "criterion 3 FAIL: even-even({n},{k}) msum");
            let profile = WindowProfile::new(&c.pi, k as usize).expect("profile");
            let mean2 = i64::from(k) * (i64::from(n) + 1);
            for (q, &s) in profile.sums().iter().enumerate() {
                if (q % k as usize).is_multiple_of(2) {
                    assert_eq!(
                        2 * s,
                        mean2,
                        "criterion 3 FAIL: even-even({n},{k}) window sum at start {} misses the mean",
                        q + 1
                    );
                }
            }
            grids += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(10), "criterion 3 FAIL: took {elapsed:?}, limit 10 s");
    println!(
        "[acceptance] criterion 3 PASS: directed families hit (k+1)/2 for even m and k/2 \
         for odd m; {grids} even-even instances have msum 1 with odd-offset sums on the mean \
         ({elapsed:?})"
    );
}

fn solved_exact(n: u32, k: u32, quantity: Quantity, cfg: &SearchConfig) -> (HalfInt, Duration) {
    let started = Instant::now();
    let outcome = match quantity {
        Quantity::Msum => solve_msum(n, k, cfg),
        Quantity::Disc => solve_disc(n, k, cfg),
    }
    .expect("instance is valid");
    let elapsed = started.elapsed();
    assert_eq!(
        outcome.status,
        SearchStatus::Exact,
        "criterion 4/5 FAIL: {quantity}({n},{k}) not solved exactly"
    );
    (outcome.value, elapsed)
}

#[test]
fn criterion_04_small_window_tables() {
    let cfg = SearchConfig::default();
    let mut slowest = Duration::ZERO;
    let mut check = |n: u32, k: u32, want_doubled: i64| {
        let (value, elapsed) = solved_exact(n, k, Quantity::Msum, &cfg);
        assert_eq!(
            value,
            half(want_doubled),
            "criterion 4 FAIL: msum({n},{k}) solver value"
        );
        let limit = if n <= 10 { Duration::from_secs(1) } else { Duration::from_secs(60) };
        assert!(elapsed < limit, "criterion 4 FAIL: msum({n},{k}) took {elapsed:?}, limit {limit:?}");
        slowest = slowest.max(elapsed);
    };

    for (n, doubled) in [(6, 1), (7, 4), (8, 3), (9, 2), (10, 3), (11, 4), (12, 3), (13, 4)] {
        check(n, 3, doubled);
    }
    for (n, doubled) in [(9, 4), (10, 2), (11, 4), (12, 2)] {
        check(n, 4, doubled);
    }
    check(10, 5, 1);
    for n in 5..=10 {
        check(n, 2, 2);
    }
    println!(
        "[acceptance] criterion 4 PASS: solver reproduces the k=3 run (1/2,2,3/2,1,3/2,2,3/2,2), \
         the k=4 run (2,1,2,1), msum(10,5)=1/2, and msum(n,2)=1 for n=5..10 \
         (slowest instance {slowest:?})"
    );
}

#[test]
fn criterion_05_overshoot_spread_gap() {
    let started = Instant::now();
    let cfg = SearchConfig::default();
    let (d, _) = solved_exact(10, 4, Quantity::Disc, &cfg);
    let (m, _) = solved_exact(10, 4, Quantity::Msum, &cfg);
    assert_eq!(d, half(4), "criterion 5 FAIL: disc(10,4)");
    assert_eq!(m, half(2), "criterion 5 FAIL: msum(10,4)");
    assert!(m < d, "criterion 5 FAIL: the two optima should differ at (10,4)");
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(5), "criterion 5 FAIL: took {elapsed:?}, limit 5 s");
    println!(
        "[acceptance] criterion 5 PASS: disc(10,4)=2 and msum(10,4)=1, a genuine gap \
         between the quantities ({elapsed:?})"
    );
}

#[test]
fn criterion_06_oracle_equivalence() {
    let started = Instant::now();
    let cfg = SearchConfig::default();
    let mut instances = 0u32;
    for n in 4..=8u32 {
        for k in 2..n {
            let (bm, _) = brute_force_msum(n, k).expect("within cap");
            let sm = solve_msum(n, k, &cfg).expect("solves");
            assert_eq!(sm.value, bm, "criterion 6 FAIL: msum({n},{k}) solver vs enumeration");
            let (bd, _) = brute_force_disc(n, k).expect("within cap");
            let sd = solve_disc(n, k, &cfg).expect("solves");
            assert_eq!(sd.value, bd, "criterion 6 FAIL: disc({n},{k}) solver vs enumeration");
            instances += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "criterion 6 FAIL: took {elapsed:?}, limit 60 s");
    println!(
        "[acceptance] criterion 6 PASS: search equals exhaustive enumeration on {instances} \
         instances with 4 <= n <= 8, both quantities ({elapsed:?})"
    );
}

#[test]
fn criterion_07_complement_duality() {
    let started = Instant::now();
    let cfg = SearchConfig::default();
    for n in 3..=9u32 {
        for k in 1..n {
            let a = solve_msum(n, k, &cfg).expect("solves");
            let b = solve_msum(n, n - k, &cfg).expect("solves");
            assert_eq!(
                a.value, b.value,
                "criterion 7 FAIL: msum({n},{k}) vs msum({n},{})",
                n - k
            );
        }
    }
    let mut arrangements = 0u64;
    for n in 2..=6usize {
        for entries in (1..=n as u32).permutations(n) {
            let pi = Permutation::new(entries).expect("valid");
            let co = pi.complement();
            for k in 1..n {
                assert_eq!(
                    msum_of(&pi, n - k).expect("valid window"),
                    msum_of(&co, k).expect("valid window"),
                    "criterion 7 FAIL: complement duality at n={n}, k={k}, pi={pi}"
                );
                assert_eq!(
                    disc_of(&pi, n - k).expect("valid window"),
                    disc_of(&pi, k).expect("valid window"),
                    "criterion 7 FAIL: disc length symmetry at n={n}, k={k}, pi={pi}"
                );
            }
            arrangements += 1;
        }
    }
    let elapsed = started.elapsed();
    println!(
        "[acceptance] criterion 7 PASS: optima agree at complementary window lengths for \
         n <= 9, and the complement and length-symmetry identities hold on all {arrangements} \
         arrangements with n <= 6 ({elapsed:?})"
    );
}

#[test]
fn criterion_08_bounds_never_beat_the_solver() {
    let started = Instant::now();
    // Capped searches still certify the proven floors on the two instances
    // whose exact values are open at desk scale.
    let capped = SearchConfig { node_budget: 2_000_000, ..SearchConfig::default() };
    let a = solve_msum(12, 5, &capped).expect("solves or certifies");
    assert!(a.value >= half(3), "criterion 8 FAIL: msum(12,5) certified value {}", a.value);
    let b = solve_msum(17, 5, &capped).expect("solves or certifies");
    assert!(b.value >= half(4), "criterion 8 FAIL: msum(17,5) certified value {}", b.value);

    // On every instance the solver settles, the bound engine must bracket it.
    let cfg = SearchConfig::default();
    let mut checked = 0u32;
    let mut instance_list: Vec<(u32, u32)> = Vec::new();
    for n in 4..=8u32 {
        instance_list.extend((1..n).map(|k| (n, k)));
    }
    instance_list.extend([(9, 3), (10, 3), (11, 3), (12, 3), (13, 3), (9, 4), (10, 4), (11, 4), (12, 4), (10, 5)]);
    for (n, k) in instance_list {
        for quantity in [Quantity::Msum, Quantity::Disc] {
            let report = bound_report(n, k, quantity).expect("report");
            let outcome = match quantity {
                Quantity::Msum => solve_msum(n, k, &cfg),
                Quantity::Disc => solve_disc(n, k, &cfg),
            }
            .expect("solves");
            assert_eq!(outcome.status, SearchStatus::Exact);
            assert!(
                report.lower.value <= outcome.value,
                "criterion 8 FAIL: {quantity}({n},{k}) lower bound {} beats solver {}",
                report.lower.value,
                outcome.value
            );
            if let Some(u) = &report.upper {
                assert!(
                    outcome.value <= u.value,
                    "criterion 8 FAIL: {quantity}({n},{k}) upper bound {} under solver {}",
                    u.value,
                    outcome.value
                );
            }
            if let Some(e) = report.exact {
                assert_eq!(
                    e, outcome.value,
                    "criterion 8 FAIL: {quantity}({n},{k}) pinned value vs solver"
                );
            }
            checked += 1;
        }
    }
    let elapsed = started.elapsed();
    println!(
        "[acceptance] criterion 8 PASS: msum(12,5) >= 3/2 and msum(17,5) >= 2 certified under a \
         node cap; bounds bracket the solver on {checked} solved instances. The large-n exact \
         claims (n on the order of k^2 and beyond) are not desk-reproducible and are covered by \
         this bounds-consistency check only ({elapsed:?})"
    );
}

#[test]
fn criterion_09_inequality_suites() {
    let started = Instant::now();
    let a = max_inequality_suite(0xACCE55, 1000);
    assert_eq!(
        a.failures, 0,
        "criterion 9 FAIL: adjacent-maximum inequality: {:?}",
        a.first_failure
    );
    let b = nest_suite(0xACCE55, 1000);
    assert_eq!(b.failures, 0, "criterion 9 FAIL: run-count bound: {:?}", b.first_failure);

    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE55);
    for _ in 0..1000 {
        let m = rng.gen_range(1..=40usize);
        let s = BinarySeq::new((0..m).map(|_| rng.gen_bool(0.5)).collect()).expect("nonempty");
        assert_eq!(s.run_count() % 2, 0, "criterion 9 FAIL: cyclic run count must be even");
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(5), "criterion 9 FAIL: took {elapsed:?}, limit 5 s");
    println!(
        "[acceptance] criterion 9 PASS: both inequalities hold on 1000 seeded instances each \
         and run counts are always even ({elapsed:?})"
    );
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rel {
    Eq,
    Ge,
    Le,
}

#[derive(Clone, Copy)]
struct Frac {
    num: i64,
    den: i64,
}

impl Frac {
    fn parse(s: &str) -> Frac {
        match s.split_once('/') {
            Some((p, q)) => {
                Frac { num: p.parse().expect("numerator"), den: q.parse().expect("denominator") }
            }
            None => Frac { num: s.parse().expect("integer"), den: 1 },
        }
    }

    /// Compares `doubled/2` against `num/den` without rounding.
    fn cmp_doubled(self, doubled: i64) -> std::cmp::Ordering {
        (doubled * self.den).cmp(&(2 * self.num))
    }
}

struct Row {
    quantity: Quantity,
    k: u32,
    rel: Rel,
    value: Frac,
    modulus: u32,
    residues: Vec<u32>,
    min: u32,
    max: Option<u32>,
    except: Vec<u32>,
}

fn parse_rows(text: &str) -> Vec<Row> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let t: Vec<&str> = line.split_whitespace().collect();
        let quantity = t[0].parse::<Quantity>().expect("quantity");
        let k: u32 = t[1].parse().expect("k");
        let rel = match t[2] {
            "=" => Rel::Eq,
            ">=" => Rel::Ge,
            "<=" => Rel::Le,
            other => panic!("unknown relation {other}"),
        };
        let value = Frac::parse(t[3]);
        assert_eq!(t[4], "mod");
        let modulus: u32 = t[5].parse().expect("modulus");
        assert_eq!(t[6], "r");
        let residues: Vec<u32> = t[7].split(',').map(|r| r.parse().expect("residue")).collect();
        assert_eq!(t[8], "min");
        let min: u32 = t[9].parse().expect("min");
        let mut max = None;
        let mut except = Vec::new();
        let mut i = 10;
        while i < t.len() {
            match t[i] {
                "max" => {
                    max = Some(t[i + 1].parse().expect("max"));
                    i += 2;
                }
                "except" => {
                    except = t[i + 1].split(',').map(|r| r.parse().expect("exception")).collect();
                    i += 2;
                }
                other => panic!("unknown field {other}"),
            }
        }
        rows.push(Row { quantity, k, rel, value, modulus, residues, min, max, except });
    }
    rows
}

#[test]
fn criterion_10_facts_table_fidelity() {
    let started = Instant::now();
    let rows = parse_rows(include_str!("fixtures/value_rows.txt"));
    assert!(rows.len() >= 30, "criterion 10 FAIL: fixture rows went missing");

    let mut checked = 0u64;
    for row in &rows {
        let hi = row.max.unwrap_or(100);
        for n in row.min..=hi {
            if n <= row.k || !row.residues.contains(&(n % row.modulus)) || row.except.contains(&n)
            {
                continue;
            }
            let report = bound_report(n, row.k, row.quantity).expect("report");
            let q = row.quantity;
            let k = row.k;
            match row.rel {
                Rel::Eq => {
                    let got = report.exact.unwrap_or_else(|| {
                        panic!(
                            "criterion 10 FAIL: {q}({n},{k}) should be pinned, engine has \
                             [{}, {}]",
                            report.lower.value,
                            report
                                .upper
                                .as_ref()
                                .map(|u| u.value.to_string())
                                .unwrap_or_else(|| "?".into())
                        )
                    });
                    assert!(
                        row.value.cmp_doubled(got.doubled()).is_eq(),
                        "criterion 10 FAIL: {q}({n},{k}) = {got}, fixture says {}/{}",
                        row.value.num,
                        row.value.den
                    );
                }
                Rel::Ge => assert!(
                    row.value.cmp_doubled(report.lower.value.doubled()).is_ge(),
                    "criterion 10 FAIL: {q}({n},{k}) lower bound {} misses the floor {}/{}",
                    report.lower.value,
                    row.value.num,
                    row.value.den
                ),
                Rel::Le => {
                    let u = report.upper.as_ref().unwrap_or_else(|| {
                        panic!("criterion 10 FAIL: {q}({n},{k}) has no proven cap")
                    });
                    assert!(
                        row.value.cmp_doubled(u.value.doubled()).is_le(),
                        "criterion 10 FAIL: {q}({n},{k}) cap {} exceeds {}/{}",
                        u.value,
                        row.value.num,
                        row.value.den
                    );
                }
            }
            checked += 1;
        }
    }

    // The exceptional k=3 instances, pinned individually for both quantities.
    for (n, doubled) in [(6u32, 1i64), (9, 2), (15, 2), (21, 4)] {
        for quantity in [Quantity::Msum, Quantity::Disc] {
            let report = bound_report(n, 3, quantity).expect("report");
            assert_eq!(
                report.exact,
                Some(half(doubled)),
                "criterion 10 FAIL: {quantity}({n},3) exceptional value"
            );
        }
    }
    let elapsed = started.elapsed();
    println!(
        "[acceptance] criterion 10 PASS: every fixture row holds on {checked} instances up to \
         n=100, including the k=3 exceptions at n=6, 9, 15, 21 ({elapsed:?})"
    );
}
