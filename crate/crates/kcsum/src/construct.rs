//! Explicit arrangements achieving known optima.
//!
//! Three families are implemented, each giving a certified upper bound on
//! the minimal overshoot for its instance shape:
//!
//! * [`mod_plus_one`]: `n = mk + 1` with odd `k >= 5`, overshoot `(k+1)/2`
//!   for even `m` and `k/2` for odd `m`;
//! * [`mod_minus_one`]: `n = mk - 1` with odd `k >= 5` and `m >= 3`, same
//!   overshoot values, obtained from the previous family by deleting its two
//!   extreme entries and shifting values down by one;
//! * [`even_even`]: both `n` and `k` even with `n >= 2k`, overshoot exactly
//!   `1`, built by threading two value chains through a box grid
//!   ([`BoxGrid`]); every window at an odd offset sums exactly to the mean.
//!
//! Each constructor re-validates its output: the result is a checked
//! [`Permutation`], and the grid construction verifies its own placement
//! rules as it goes, reporting any violation as [`Error::Internal`] rather
//! than silently repairing it.

use crate::perm::Permutation;
use crate::window::msum_of;
use crate::{Error, HalfInt, Result};

/// Identifies one of the three arrangement families.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionId {
    /// `n = mk + 1`, odd `k`.
    ModPlusOne,
    /// `n = mk - 1`, odd `k`.
    ModMinusOne,
    /// `n` and `k` both even.
    EvenEven,
}

impl ConstructionId {
    pub fn name(self) -> &'static str {
        match self {
            ConstructionId::ModPlusOne => "mod+1",
            ConstructionId::ModMinusOne => "mod-1",
            ConstructionId::EvenEven => "even-even",
        }
    }
}

impl std::fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A construction output together with its certified overshoot.
#[derive(Clone, Debug)]
pub struct Construction {
    pub id: ConstructionId,
    pub pi: Permutation,
    /// Overshoot the family guarantees; re-checked against the actual
    /// arrangement before being returned.
    pub msum: HalfInt,
}

fn domain(family: &'static str, reason: String) -> Error {
    Error::ConstructionDomain { family, reason }
}

/// Arrangement of `1..mk+1` for odd `k >= 5`, `m >= 2`.
///
/// Entry at position `ik + j` (`0 <= i < m`, `1 <= j <= k`) follows a fixed
/// per-column formula; the final position `mk + 1` holds the value 1. The
/// overshoot is `(k+1)/2` when `m` is even and `k/2` when `m` is odd.
pub fn mod_plus_one(k: u32, m: u32) -> Result<Construction> {
    if k < 5 || k.is_multiple_of(2) {
        return Err(domain("mod+1", format!("window length k={k} must be odd and at least 5")));
    }
    if m < 2 {
        return Err(domain("mod+1", format!("multiplier m={m} must be at least 2")));
    }
    let n = m * k + 1;
    let mut entries = vec![0u32; n as usize];
    for i in 0..m {
        for j in 1..=k {
            let pos = (i * k + j) as usize; // 1-based
            entries[pos - 1] = plus_one_entry(k, m, i, j);
        }
    }
    entries[(m * k) as usize] = 1;
    let pi = Permutation::new(entries)?;
    certify(ConstructionId::ModPlusOne, pi, k, directed_msum(k, m))
}

/// Overshoot certified by both directed families: `(k+1)/2` for even `m`,
/// `k/2` for odd `m`.
fn directed_msum(k: u32, m: u32) -> HalfInt {
    if m.is_multiple_of(2) {
        HalfInt::from_int(i64::from(k + 1) / 2)
    } else {
        HalfInt::from_doubled(i64::from(k))
    }
}

/// The per-position value of the `mod+1` family.
///
/// Columns 1 to 4 are special; from column 5 on, odd columns ascend with `i`
/// and even columns descend. Column 2 and 3 switch formula at the midpoint
/// of `i`, which is where the two halves of the value range meet.
fn plus_one_entry(k: u32, m: u32, i: u32, j: u32) -> u32 {
    debug_assert!(i < m && (1..=k).contains(&j));
    // Columns 2 and 3 switch formula at the midpoint of i, where the two
    // halves of their value ranges meet. For even m the first branch covers
    // i < m/2, for odd m it covers i <= (m-1)/2.
    let first_branch = if m.is_multiple_of(2) { i < m / 2 } else { i <= (m - 1) / 2 };
    match j {
        1 => m + 1 - i,
        2 => {
            if m.is_multiple_of(2) {
                if first_branch { 3 * m / 2 + i + 2 } else { m / 2 + i + 2 }
            } else if first_branch {
                (3 * m + 3) / 2 + i
            } else {
                (m + 3) / 2 + i
            }
        }
        3 => {
            if m.is_multiple_of(2) {
                if first_branch { 3 * m - 2 * i + 1 } else { 4 * m - 2 * i }
            } else if first_branch {
                3 * m - 2 * i + 1
            } else {
                4 * m - 2 * i + 1
            }
        }
        4 => 3 * m + i + 2,
        _ if j % 2 == 1 => (j - 1) * m + 2 + i,
        _ => j * m + 1 - i,
    }
}

/// Arrangement of `1..mk-1` for odd `k >= 5`, `m >= 3`.
///
/// Built from [`mod_plus_one`]: that arrangement ends with its two extreme
/// values (`mk + 1` at position `mk`, then `1`); dropping both positions and
/// lowering every remaining entry by one leaves an arrangement of `1..mk-1`
/// with the same overshoot.
pub fn mod_minus_one(k: u32, m: u32) -> Result<Construction> {
    if k < 5 || k.is_multiple_of(2) {
        return Err(domain("mod-1", format!("window length k={k} must be odd and at least 5")));
    }
    if m < 3 {
        return Err(domain("mod-1", format!("multiplier m={m} must be at least 3")));
    }
    let base = mod_plus_one(k, m)?;
    let e = base.pi.entries();
    let last = (m * k) as usize;
    if e[last - 1] != m * k + 1 || e[last] != 1 {
        return Err(Error::Internal(format!(
            "mod+1({k},{m}) does not end with its extreme values; cannot derive mod-1"
        )));
    }
    let entries: Vec<u32> = e[..last - 1].iter().map(|&v| v - 1).collect();
    let pi = Permutation::new(entries)?;
    certify(ConstructionId::ModMinusOne, pi, k, base.msum)
}

/// Re-evaluates the arrangement and checks the family's overshoot claim.
fn certify(id: ConstructionId, pi: Permutation, k: u32, msum: HalfInt) -> Result<Construction> {
    let got = msum_of(&pi, k as usize)?;
    if got != msum {
        return Err(Error::Internal(format!(
            "{id} output has overshoot {got}, family certifies {msum}"
        )));
    }
    Ok(Construction { id, pi, msum })
}

// A grid cell address, 1-based (row, column).
type Cell = (usize, usize);

/// The box grid behind the even-even family.
///
/// `rows()` lists rows top to bottom. With `n = qk + r` (`0 <= r < k`), the
/// grid has `q + 1` rows when `r > 0`, the top row keeping only its first
/// `r` cells, and exactly `q` full rows when `r = 0`. Removed cells are
/// `None` and are never addressed by the filling rules.
#[derive(Clone, Debug)]
pub struct BoxGrid {
    k: usize,
    rows: Vec<Vec<Option<u32>>>,
    top_cols: usize,
}

impl BoxGrid {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Cell contents, rows top to bottom; removed cells are `None`.
    pub fn rows(&self) -> &[Vec<Option<u32>>] {
        &self.rows
    }

    /// Total number of present cells; equals `n`.
    pub fn cell_count(&self) -> usize {
        self.rows.iter().map(|r| r.iter().flatten().count()).sum()
    }

    /// Reads the grid bottom row first, left to right within each row.
    /// The top row contributes only its present cells.
    pub fn linearize(&self) -> Result<Permutation> {
        let mut entries = Vec::with_capacity(self.cell_count());
        for row in self.rows.iter().rev() {
            entries.extend(row.iter().flatten().copied());
        }
        Permutation::new(entries)
    }

    /// Plain-text rendering, removed cells shown as `*`.
    pub fn render(&self) -> String {
        let width = self
            .rows
            .iter()
            .flat_map(|r| r.iter().flatten())
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    out.push(' ');
                }
                match cell {
                    Some(v) => out.push_str(&format!("{v:>width$}")),
                    None => out.push_str(&format!("{:>width$}", "*")),
                }
                first = false;
            }
            out.push('\n');
        }
        out
    }

    fn get(&self, (a, b): Cell) -> Option<u32> {
        self.rows[a - 1][b - 1]
    }

    fn exists(&self, (a, b): Cell) -> bool {
        b <= if a == 1 { self.top_cols } else { self.k }
    }

    fn put(&mut self, cell: Cell, v: u32) -> Result<()> {
        if !self.exists(cell) {
            return Err(Error::Internal(format!(
                "grid fill addressed removed cell {cell:?} for value {v}"
            )));
        }
        if let Some(old) = self.get(cell) {
            return Err(Error::Internal(format!(
                "grid fill hit occupied cell {cell:?} (holds {old}) for value {v}"
            )));
        }
        self.rows[cell.0 - 1][cell.1 - 1] = Some(v);
        Ok(())
    }
}

/// Arrangement of `1..n` for even `n` and even `k` with `n >= 2k`,
/// overshoot exactly 1.
///
/// Two chains thread the grid: values `1..n/2` starting at the top row,
/// column 2, and values `n` down to `n/2 + 1` starting at the top row,
/// column 1. A chain steps straight down its column; from the bottom row it
/// returns to the top with its column shifted right by `r = n mod k`
/// (cyclically), landing in the top row where that row has a cell and in
/// the second row otherwise. If the landing cell is taken, it skips two
/// more columns; the procedure never needs a second skip, and that is
/// checked rather than assumed. The two chains stay on columns of opposite
/// parity, so they can never collide with each other.
pub fn even_even(n: u32, k: u32) -> Result<Construction> {
    let grid = even_even_grid(n, k)?;
    let pi = grid.linearize()?;
    certify(ConstructionId::EvenEven, pi, k, HalfInt::ONE)
}

/// Builds and fills the grid for [`even_even`]; exposed for rendering.
pub fn even_even_grid(n: u32, k: u32) -> Result<BoxGrid> {
    if !n.is_multiple_of(2) || !k.is_multiple_of(2) {
        return Err(domain("even-even", format!("n={n} and k={k} must both be even")));
    }
    if k < 2 {
        return Err(domain("even-even", format!("window length k={k} must be at least 2")));
    }
    if n < 2 * k {
        return Err(domain(
            "even-even",
            format!("n={n} must be at least 2k={} so the grid has full rows", 2 * k),
        ));
    }
    fill_grid(n as usize, k as usize)
}

fn fill_grid(n: usize, k: usize) -> Result<BoxGrid> {
    let q = n / k;
    let r = n % k;
    // r = 0 needs no partial top row: exactly q full rows.
    let (row_count, top_cols) = if r == 0 { (q, k) } else { (q + 1, r) };
    let rows = vec![vec![None; k]; row_count];
    let mut grid = BoxGrid { k, rows, top_cols };

    // Ascending chain: 1..n/2 from (1,2). Descending: n..n/2+1 from (1,1).
    fill_chain(&mut grid, row_count, k, r, 1, (n / 2) as u32, true)?;
    fill_chain(&mut grid, row_count, k, r, n as u32, (n / 2 + 1) as u32, false)?;

    let cells = grid.cell_count();
    if cells != n {
        return Err(Error::Internal(format!(
            "grid for n={n}, k={k} filled {cells} cells"
        )));
    }
    Ok(grid)
}

fn fill_chain(
    grid: &mut BoxGrid,
    row_count: usize,
    k: usize,
    r: usize,
    start: u32,
    end: u32,
    ascending: bool,
) -> Result<()> {
    let start_col = if ascending { 2 } else { 1 };
    let mut cell: Cell = (1, start_col);
    grid.put(cell, start)?;
    let mut v = start;
    while v != end {
        v = if ascending { v + 1 } else { v - 1 };
        cell = if cell.0 < row_count {
            (cell.0 + 1, cell.1)
        } else {
            wrap_from_bottom(grid, k, r, cell.1)?
        };
        grid.put(cell, v)?;
    }
    Ok(())
}

/// Where a chain lands after leaving the bottom row at column `b`.
///
/// The column advances by `r` modulo `k`. When the top row has a cell in
/// the landing column the chain re-enters at row 1, otherwise at row 2;
/// an occupied landing cell diverts the chain two further columns. A
/// second diversion would break the construction, so it is an error.
fn wrap_from_bottom(grid: &BoxGrid, k: usize, r: usize, b: usize) -> Result<Cell> {
    let c = (b + r - 1) % k + 1;
    let row = if r > 0 && c <= r {
        1
    } else if r > 0 {
        2
    } else {
        // Full grid: the chain re-enters its own column at the top and
        // relies on the skip to advance.
        1
    };
    let primary = (row, c);
    if grid.get(primary).is_none() {
        return Ok(primary);
    }
    let c2 = (c + 2 - 1) % k + 1;
    let diverted = (row, c2);
    if !grid.exists(diverted) {
        return Err(Error::Internal(format!(
            "chain diverted into removed cell {diverted:?}"
        )));
    }
    if grid.get(diverted).is_some() {
        return Err(Error::Internal(format!(
            "chain needs a second diversion at {diverted:?}; the grid rules forbid that"
        )));
    }
    Ok(diverted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::window::{msum_of, WindowProfile};

    #[test]
    fn plus_one_family_small_case() {
        // k=5, m=2 (smallest even multiplier): n=11, overshoot (k+1)/2 = 3.
        let c = mod_plus_one(5, 2).unwrap();
        assert_eq!(c.pi.entries(), &[3, 5, 7, 8, 10, 2, 4, 6, 9, 11, 1]);
        assert_eq!(c.msum, HalfInt::from_int(3));
        assert_eq!(msum_of(&c.pi, 5).unwrap(), HalfInt::from_int(3));
    }

    #[test]
    fn plus_one_rejects_bad_parameters() {
        assert!(mod_plus_one(4, 3).is_err());
        assert!(mod_plus_one(3, 3).is_err());
        assert!(mod_plus_one(7, 1).is_err());
    }

    #[test]
    fn minus_one_rejects_small_multiplier() {
        assert!(mod_minus_one(5, 2).is_err());
        assert!(mod_minus_one(5, 3).is_ok());
    }

    #[test]
    fn minus_one_is_shifted_truncation() {
        let plus = mod_plus_one(5, 3).unwrap();
        let minus = mod_minus_one(5, 3).unwrap();
        assert_eq!(minus.pi.n(), 14);
        for (a, b) in minus.pi.entries().iter().zip(plus.pi.entries()) {
            assert_eq!(a + 1, *b);
        }
    }

    #[test]
    fn even_even_small_grid() {
        // n=8, k=4: two full rows of four.
        let g = even_even_grid(8, 4).unwrap();
        assert_eq!(g.row_count(), 2);
        let flat: Vec<Vec<u32>> = g
            .rows()
            .iter()
            .map(|r| r.iter().map(|c| c.unwrap()).collect())
            .collect();
        assert_eq!(flat, vec![vec![8, 1, 6, 3], vec![7, 2, 5, 4]]);
        let c = even_even(8, 4).unwrap();
        assert_eq!(c.pi.entries(), &[7, 2, 5, 4, 8, 1, 6, 3]);
    }

    #[test]
    fn even_even_partial_top_row() {
        // n=14, k=4: r=2, the top row keeps two cells.
        let g = even_even_grid(14, 4).unwrap();
        assert_eq!(g.row_count(), 4);
        assert_eq!(g.rows()[0], vec![Some(14), Some(1), None, None]);
        assert_eq!(g.cell_count(), 14);
        let pi = g.linearize().unwrap();
        assert_eq!(msum_of(&pi, 4).unwrap(), HalfInt::ONE);
    }

    #[test]
    fn even_even_rejects_bad_parameters() {
        assert!(even_even(9, 4).is_err());
        assert!(even_even(12, 5).is_err());
        assert!(even_even(6, 4).is_err());
    }

    #[test]
    fn even_even_odd_offsets_hit_the_mean() {
        for (n, k) in [(12u32, 4usize), (20, 4), (24, 6), (30, 6)] {
            let c = even_even(n, k as u32).unwrap();
            let w = WindowProfile::new(&c.pi, k).unwrap();
            let mean = w.mean().as_int().unwrap();
            for i in 0..(n as usize) {
                if i % k % 2 == 0 {
                    assert_eq!(w.sums()[i], mean, "n={n} k={k} offset {}", i + 1);
                }
            }
        }
    }

    #[test]
    fn render_marks_removed_cells() {
        let g = even_even_grid(14, 4).unwrap();
        let text = g.render();
        let first = text.lines().next().unwrap();
        assert_eq!(first.split_whitespace().collect::<Vec<_>>(), vec!["14", "1", "*", "*"]);
    }
}
