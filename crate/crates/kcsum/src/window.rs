//! Cyclic window sums and their deviation from the mean.
//!
//! For an arrangement of `1..n` and a window length `k`, the `n` cyclic
//! window sums `s_i = pi_i + ... + pi_{i+k-1}` all average to `k(n+1)/2`.
//! The profile records the sums exactly; the two figures of merit are the
//! worst overshoot above the mean and the worst absolute deviation.

use crate::perm::Permutation;
use crate::{Error, HalfInt, Result};

/// All `n` cyclic window sums of one arrangement at a fixed window length.
#[derive(Clone, Debug)]
pub struct WindowProfile {
    k: usize,
    n: usize,
    sums: Vec<i64>,
}

impl WindowProfile {
    /// Computes the profile in one rolling pass. Requires `1 <= k < n`.
    pub fn new(pi: &Permutation, k: usize) -> Result<Self> {
        let n = pi.n();
        if k < 1 || k >= n {
            return Err(Error::WindowLength { n, k });
        }
        let e = pi.entries();
        let mut sums = Vec::with_capacity(n);
        let mut s: i64 = e[..k].iter().map(|&v| i64::from(v)).sum();
        sums.push(s);
        for i in 1..n {
            s += i64::from(e[(i + k - 1) % n]) - i64::from(e[i - 1]);
            sums.push(s);
        }
        Ok(WindowProfile { k, n, sums })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `sums()[i]` is the window sum starting at 1-based position `i + 1`.
    pub fn sums(&self) -> &[i64] {
        &self.sums
    }

    /// The common mean `k(n + 1) / 2`, exact.
    pub fn mean(&self) -> HalfInt {
        HalfInt::from_doubled((self.k as i64) * (self.n as i64 + 1))
    }

    pub fn max_sum(&self) -> i64 {
        *self.sums.iter().max().expect("profile is never empty")
    }

    pub fn min_sum(&self) -> i64 {
        *self.sums.iter().min().expect("profile is never empty")
    }

    /// Largest window sum minus the mean. Always positive.
    pub fn msum(&self) -> HalfInt {
        HalfInt::from_doubled(2 * self.max_sum()) - self.mean()
    }

    /// Largest absolute deviation of a window sum from the mean.
    pub fn disc(&self) -> HalfInt {
        let m = self.mean().doubled();
        let dev = self
            .sums
            .iter()
            .map(|&s| (2 * s - m).abs())
            .max()
            .expect("profile is never empty");
        HalfInt::from_doubled(dev)
    }
}

/// Overshoot of the worst window above the mean.
pub fn msum_of(pi: &Permutation, k: usize) -> Result<HalfInt> {
    Ok(WindowProfile::new(pi, k)?.msum())
}

/// Worst absolute deviation of any window sum from the mean.
pub fn disc_of(pi: &Permutation, k: usize) -> Result<HalfInt> {
    Ok(WindowProfile::new(pi, k)?.disc())
}

/// The step sequence `d_i = pi_{i+k} - pi_i` (cyclic, `i = 1..n`).
///
/// Consecutive window sums differ by exactly these steps:
/// `s_{i+1} = s_i + d_i`, and the steps telescope to zero around the cycle.
pub fn diff_sequence(pi: &Permutation, k: usize) -> Result<Vec<i64>> {
    let n = pi.n();
    if k < 1 || k >= n {
        return Err(Error::WindowLength { n, k });
    }
    let e = pi.entries();
    Ok((0..n)
        .map(|i| i64::from(e[(i + k) % n]) - i64::from(e[i]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn profile_of_a_small_arrangement() {
        // (1,3,2,4) at k=2: sums 4,5,6,5; mean 5.
        let p = perm(&[1, 3, 2, 4]);
        let w = WindowProfile::new(&p, 2).unwrap();
        assert_eq!(w.sums(), &[4, 5, 6, 5]);
        assert_eq!(w.mean(), HalfInt::from_int(5));
        assert_eq!(w.msum(), HalfInt::ONE);
        assert_eq!(w.disc(), HalfInt::ONE);
    }

    #[test]
    fn msum_and_disc_can_differ() {
        // (2,4,1,5,3) at k=3: mean 9, sums 7,10,9,10,9.
        let p = perm(&[2, 4, 1, 5, 3]);
        let w = WindowProfile::new(&p, 3).unwrap();
        assert_eq!(w.sums(), &[7, 10, 9, 10, 9]);
        assert_eq!(w.msum(), HalfInt::ONE);
        assert_eq!(w.disc(), HalfInt::from_int(2));
    }

    #[test]
    fn window_length_is_validated() {
        let p = perm(&[1, 2, 3]);
        assert!(matches!(
            WindowProfile::new(&p, 0),
            Err(Error::WindowLength { n: 3, k: 0 })
        ));
        assert!(matches!(
            WindowProfile::new(&p, 3),
            Err(Error::WindowLength { n: 3, k: 3 })
        ));
    }

    #[test]
    fn rolling_sums_match_direct_summation() {
        let p = perm(&[7, 2, 5, 1, 8, 3, 6, 4]);
        for k in 1..8 {
            let w = WindowProfile::new(&p, k).unwrap();
            for i in 0..8 {
                let direct: i64 = (0..k).map(|j| i64::from(p.entries()[(i + j) % 8])).sum();
                assert_eq!(w.sums()[i], direct, "k={k} i={i}");
            }
        }
    }

    #[test]
    fn diff_sequence_telescopes() {
        let p = perm(&[7, 2, 5, 1, 8, 3, 6, 4]);
        for k in 1..8 {
            let d = diff_sequence(&p, k).unwrap();
            assert_eq!(d.iter().sum::<i64>(), 0, "k={k}");
            let w = WindowProfile::new(&p, k).unwrap();
            for (i, &step) in d.iter().enumerate() {
                assert_eq!(w.sums()[(i + 1) % 8] - w.sums()[i], step, "k={k} i={i}");
            }
        }
    }

    #[test]
    fn deviations_negate_under_complement() {
        let p = perm(&[9, 4, 1, 7, 3, 8, 2, 6, 5]);
        for k in 1..9 {
            let w = WindowProfile::new(&p, k).unwrap();
            let wc = WindowProfile::new(&p.complement(), k).unwrap();
            let m = w.mean().doubled();
            for i in 0..9 {
                assert_eq!(2 * wc.sums()[i] - m, -(2 * w.sums()[i] - m));
            }
        }
    }
}
