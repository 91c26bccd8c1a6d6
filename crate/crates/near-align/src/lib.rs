//! Streaming detection of the longest pair of same-index substrings
//! `(S[i..=j], T[i..=j])` whose edit distance stays within a budget `d`,
//! for two equal-length byte streams read in sync.
//!
//! The crate ships three engines plus the verification machinery around them:
//!
//! - [`exact::WindowState`] — one-pass exact engine. Keeps an `O(d^2)` sliding
//!   window, a queue of the most recent prefix edit operations and a small
//!   per-diagonal frontier of least feasible starts, and reports the longest
//!   window together with an edit script.
//! - [`approx::ApproxState`] — one-pass `(1+eps)`-multiplicative and
//!   `E`-additive checkpoint engines. Each checkpoint anchors a
//!   [`sketch::BandedSketch`] that tracks the edit distance of the suffix pair
//!   starting there.
//! - [`oracle`] — deliberately plain quadratic reference implementations used
//!   by the test suites; they share no kernels with the production paths.
//!
//! [`hirschberg`] holds the banded alignment-recovery primitives
//! (`modified_hirschberg`, `banded_distance`, `smallest_feasible_start`) and
//! [`hardgen`] generates the adversarial instance families used for
//! verification. Everything is deterministic; generators take explicit seeds.

pub mod approx;
pub mod edit;
pub mod exact;
pub mod hardgen;
pub mod hirschberg;
pub mod oracle;
pub mod sketch;

#[doc(hidden)]
pub mod testgen;

pub use edit::{apply_script, canonicalize, EditOp, EditScript, Mode, NearAlignment};
