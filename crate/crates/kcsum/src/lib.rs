//! Cyclic permutations of `1..n` with small sliding-window sums.
//!
//! Arrange the integers `1..n` in a circle and slide a window of length `k`
//! around it. Every window sum averages to `k(n+1)/2`, but no arrangement can
//! hold every window exactly at the mean: the interesting question is how
//! close the worst window can be forced. This crate works with two figures of
//! merit for an arrangement `pi`:
//!
//! * the **overshoot** `msum(pi, k)`: the largest window sum minus the mean;
//! * the **spread** `disc(pi, k)`: the largest absolute deviation of any
//!   window sum from the mean.
//!
//! Minimising each over all arrangements of `1..n` gives the instance
//! optima `msum(n, k)` and `disc(n, k)`. Both are always positive, and both
//! live on a fixed half-integer grid determined by the parities of `n` and
//! `k` (see [`bounds::parity_floor`]).
//!
//! The crate provides:
//!
//! * exact evaluation of window profiles over a cyclic arrangement
//!   ([`window`]), together with the symmetries that leave the optima
//!   untouched ([`perm`]);
//! * explicit families of arrangements achieving known optima
//!   ([`construct`]);
//! * a rule database of proven lower and upper bounds with provenance
//!   tracking ([`bounds`]);
//! * an exact branch-and-bound solver with witness certificates and a
//!   verified on-disk result cache ([`solver`], [`cache`]);
//! * checkers and randomized suites for the combinatorial inequalities the
//!   bound proofs rest on ([`lemmas`]).
//!
//! All optimum values are exact half-integers ([`HalfInt`]); no floating
//! point is used anywhere.

pub mod bounds;
pub mod cache;
pub mod construct;
mod error;
mod halfint;
pub mod lemmas;
pub mod perm;
pub mod solver;
pub mod window;

pub use error::Error;
pub use halfint::HalfInt;

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
