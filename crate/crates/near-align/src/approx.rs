//! One-pass checkpoint engines: a `(1+eps)`-multiplicative scheme with
//! geometrically spaced, level-tagged checkpoints, and an `E`-additive scheme
//! with checkpoints at every multiple of `E`. Each live checkpoint anchors a
//! [`BandedSketch`] over the suffix pair starting there; a sketch that
//! exceeds the budget is discarded immediately together with its checkpoint.

use crate::edit::{AlignParams, Mode, NearAlignment};
use crate::sketch::{BandedSketch, Distance};
use rayon::iter::{ParallelBridge, ParallelIterator};
use std::collections::{BTreeMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ApproxError {
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),
    #[error("additive window must be at least 1, got {0}")]
    InvalidWindow(u64),
}

/// Sketch updates fan out to the ambient rayon pool past this many live
/// checkpoints; results are identical regardless of thread count.
const PARALLEL_THRESHOLD: usize = 64;

const K0_GUARD: f64 = 1e-9;

#[derive(Debug, Clone)]
struct SketchEntry {
    sketch: BandedSketch,
    refs: u32,
}

#[derive(Debug, Clone)]
struct Level {
    k: u32,
    spacing: u64,
    /// Checkpoints of this level older than `x - retention` are deleted.
    retention: f64,
    positions: VecDeque<u64>,
}

/// Read-only view of one checkpoint level, for diagnostics and verification.
pub struct LevelView<'a> {
    pub k: u32,
    pub spacing: u64,
    pub retention: f64,
    positions: &'a VecDeque<u64>,
}

impl LevelView<'_> {
    pub fn positions(&self) -> impl Iterator<Item = u64> + '_ {
        self.positions.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scheme {
    Multiplicative,
    Additive,
}

/// One-pass approximation engine state.
#[derive(Debug, Clone)]
pub struct ApproxState {
    d: usize,
    scheme: Scheme,
    x: u64,
    /// Best so far: `(c_start, length)`; the window is sketch-verified.
    best: Option<(u64, u64)>,
    /// Live sketches keyed by checkpoint position; levels share one sketch
    /// per position through a reference count.
    registry: BTreeMap<u64, SketchEntry>,
    // Multiplicative state.
    epsilon: f64,
    alpha: f64,
    k0: u32,
    next_level: u32,
    levels: Vec<Level>,
    // Additive state.
    every: u64,
}

impl ApproxState {
    /// `(1+eps)`-multiplicative engine.
    pub fn multiplicative(d: usize, epsilon: f64) -> Result<Self, ApproxError> {
        if epsilon <= 0.0 || epsilon.is_nan() || !epsilon.is_finite() {
            return Err(ApproxError::InvalidEpsilon(epsilon));
        }
        let alpha = (1.0 + epsilon).sqrt() - 1.0;
        let k0_raw = ((1.0 + alpha) * (1.0 + alpha) / alpha).ln() / (1.0 + alpha).ln();
        let k0 = (k0_raw - K0_GUARD).ceil().max(1.0) as u32;
        Ok(ApproxState {
            d,
            scheme: Scheme::Multiplicative,
            x: 0,
            best: None,
            registry: BTreeMap::new(),
            epsilon,
            alpha,
            k0,
            next_level: k0,
            levels: Vec::new(),
            every: 0,
        })
    }

    /// `E`-additive engine: checkpoints at every multiple of `window`.
    pub fn additive(d: usize, window: u64) -> Result<Self, ApproxError> {
        if window < 1 {
            return Err(ApproxError::InvalidWindow(window));
        }
        Ok(ApproxState {
            d,
            scheme: Scheme::Additive,
            x: 0,
            best: None,
            registry: BTreeMap::new(),
            epsilon: 0.0,
            alpha: 0.0,
            k0: 0,
            next_level: 0,
            levels: Vec::new(),
            every: window,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn k0(&self) -> u32 {
        self.k0
    }

    pub fn position(&self) -> u64 {
        self.x
    }

    /// Live checkpoint positions (each holds one sketch).
    pub fn live_positions(&self) -> usize {
        self.registry.len()
    }

    /// Live `(position, level)` checkpoint records across all levels.
    pub fn live_records(&self) -> usize {
        self.levels.iter().map(|l| l.positions.len()).sum()
    }

    pub fn levels(&self) -> impl Iterator<Item = LevelView<'_>> {
        self.levels.iter().map(|l| LevelView {
            k: l.k,
            spacing: l.spacing,
            retention: l.retention,
            positions: &l.positions,
        })
    }

    fn spacing_of(&self, k: u32) -> u64 {
        (self.alpha * (1.0 + self.alpha).powi(k as i32 - 2)).floor() as u64
    }

    fn retention_of(&self, k: u32) -> f64 {
        2.0 * (1.0 + self.alpha).powi(k as i32)
    }

    /// Consumes the next synchronized pair `(S[x+1], T[x+1])`.
    pub fn step(&mut self, s_sym: u8, t_sym: u8) {
        self.x += 1;
        let x = self.x;

        // Advance every live sketch by this pair.
        if self.registry.len() >= PARALLEL_THRESHOLD {
            self.registry
                .values_mut()
                .par_bridge()
                .for_each(|e| e.sketch.update(s_sym, t_sym));
        } else {
            for e in self.registry.values_mut() {
                e.sketch.update(s_sym, t_sym);
            }
        }

        // Discard checkpoints whose sketch ran out of budget; the suffix cost
        // never decreases, so an exceeded sketch can never recover.
        let dead: Vec<u64> = self
            .registry
            .iter()
            .filter(|(_, e)| matches!(e.sketch.current_distance(), Distance::Exceeded))
            .map(|(&p, _)| p)
            .collect();
        if !dead.is_empty() {
            for p in &dead {
                self.registry.remove(p);
            }
            for level in &mut self.levels {
                level.positions.retain(|p| self.registry.contains_key(p));
            }
        }

        // Create this step's checkpoints; their sketches consume this pair.
        match self.scheme {
            Scheme::Multiplicative => {
                loop {
                    let spacing = self.spacing_of(self.next_level);
                    if spacing > x {
                        break;
                    }
                    if let Some(last) = self.levels.last() {
                        debug_assert!(spacing >= last.spacing, "spacing monotone in level");
                    }
                    self.levels.push(Level {
                        k: self.next_level,
                        spacing,
                        retention: self.retention_of(self.next_level),
                        positions: VecDeque::new(),
                    });
                    self.next_level += 1;
                }
                for idx in 0..self.levels.len() {
                    if x.is_multiple_of(self.levels[idx].spacing) {
                        self.add_checkpoint(x, s_sym, t_sym);
                        self.levels[idx].positions.push_back(x);
                    }
                }
                // A permanent anchor at position 1 so alignments starting at
                // the very beginning are never missed.
                if x == 1 {
                    self.add_checkpoint(1, s_sym, t_sym);
                }
                // Expire checkpoints that slid out of their level's window.
                for idx in 0..self.levels.len() {
                    let threshold = x as f64 - self.levels[idx].retention;
                    while let Some(&front) = self.levels[idx].positions.front() {
                        if (front as f64) < threshold {
                            self.levels[idx].positions.pop_front();
                            self.release_checkpoint(front);
                        } else {
                            break;
                        }
                    }
                }
            }
            Scheme::Additive => {
                if x.is_multiple_of(self.every) {
                    self.add_checkpoint(x, s_sym, t_sym);
                }
            }
        }

        // Longest sketch-verified window ending here; positions ascend, so
        // the first hit is the longest and the scan can stop early.
        let best_len = self.best.map_or(0, |(_, l)| l);
        for (&pos, entry) in &self.registry {
            let len = x - pos + 1;
            if len <= best_len {
                break;
            }
            if matches!(entry.sketch.current_distance(), Distance::Within(_)) {
                self.best = Some((pos, len));
                break;
            }
        }
    }

    fn add_checkpoint(&mut self, pos: u64, s_sym: u8, t_sym: u8) {
        let d = self.d;
        let x = self.x;
        let entry = self.registry.entry(pos).or_insert_with(|| {
            debug_assert_eq!(pos, x);
            let mut sketch = BandedSketch::new(d, pos);
            sketch.update(s_sym, t_sym);
            SketchEntry { sketch, refs: 0 }
        });
        entry.refs += 1;
    }

    fn release_checkpoint(&mut self, pos: u64) {
        if let Some(entry) = self.registry.get_mut(&pos) {
            entry.refs -= 1;
            // The permanent position-1 anchor keeps an extra reference.
            if entry.refs == 0 {
                self.registry.remove(&pos);
            }
        }
    }

    /// Final report once the stream is consumed.
    pub fn result(&self) -> Option<NearAlignment> {
        let (start, length) = self.best?;
        let (mode, params) = match self.scheme {
            Scheme::Multiplicative => (
                Mode::Multiplicative,
                AlignParams::multiplicative(self.d, self.epsilon),
            ),
            Scheme::Additive => (Mode::Additive, AlignParams::additive(self.d, self.every)),
        };
        Some(NearAlignment {
            start,
            end: start + length - 1,
            length,
            script: None,
            mode,
            params,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_mult(s: &[u8], t: &[u8], d: usize, eps: f64) -> ApproxState {
        let mut st = ApproxState::multiplicative(d, eps).unwrap();
        for (&a, &b) in s.iter().zip(t) {
            st.step(a, b);
        }
        st
    }

    fn run_add(s: &[u8], t: &[u8], d: usize, e: u64) -> ApproxState {
        let mut st = ApproxState::additive(d, e).unwrap();
        for (&a, &b) in s.iter().zip(t) {
            st.step(a, b);
        }
        st
    }

    #[test]
    fn derived_parameters() {
        let st = ApproxState::multiplicative(2, 0.21).unwrap();
        assert!((st.alpha() - 0.1).abs() < 1e-12);
        assert_eq!(st.k0(), 27);
        assert_eq!(st.spacing_of(27), 1);

        let st = ApproxState::multiplicative(2, 3.0).unwrap();
        assert!((st.alpha() - 1.0).abs() < 1e-12);
        assert_eq!(st.k0(), 2);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            ApproxState::multiplicative(2, 0.0),
            Err(ApproxError::InvalidEpsilon(_))
        ));
        assert!(matches!(
            ApproxState::additive(2, 0),
            Err(ApproxError::InvalidWindow(0))
        ));
    }

    #[test]
    fn equal_streams_report_everything() {
        let s: Vec<u8> = (0..200u32).map(|i| (i % 11) as u8 + b'a').collect();
        for eps in [0.21, 1.0, 3.0] {
            let st = run_mult(&s, &s, 2, eps);
            let out = st.result().unwrap();
            assert_eq!((out.start, out.length), (1, s.len() as u64));
        }
        let st = run_add(&s, &s, 2, 1);
        let out = st.result().unwrap();
        assert_eq!((out.start, out.length), (1, s.len() as u64));
    }

    #[test]
    fn worked_example_multiplicative_window() {
        let s = b"1234yyyyyy123456789xxxxx";
        let t = b"1234xxxxxx123467890yyyyy";
        let st = run_mult(s, t, 2, 0.21);
        let out = st.result().unwrap();
        assert!(out.length == 8 || out.length == 9, "got {}", out.length);
    }

    // The additive engine checks every checkpoint at every position, so the
    // multiple-of-5 checkpoint at 10 reports the valid 6-long window
    // [10, 15] (one substitution at each end) before it dies at 16. The
    // later checkpoint at 15 only ever reaches length 5.
    #[test]
    fn worked_example_additive_window() {
        let s = b"1234yyyyyy123456789xxxxx";
        let t = b"1234xxxxxx123467890yyyyy";
        assert_eq!(
            crate::oracle::full_edit_distance(&s[9..15], &t[9..15])
                .unwrap()
                .0,
            2
        );
        let st = run_add(s, t, 2, 5);
        let out = st.result().unwrap();
        assert_eq!((out.start, out.end, out.length), (10, 15, 6));
    }

    #[test]
    fn hopeless_streams_report_nothing() {
        let s = b"aaaaaaaaaaaaaaaa";
        let t = b"bbbbbbbbbbbbbbbb";
        let st = run_add(s, t, 0, 4);
        assert!(st.result().is_none());
        let st = run_mult(s, t, 0, 0.5);
        assert!(st.result().is_none());
    }

    #[test]
    fn additive_checkpoints_are_multiples_only() {
        let s = b"abcdefghijklmnopqrstuvwxyz";
        let st = run_add(s, s, 1, 7);
        let positions: Vec<u64> = st.registry.keys().copied().collect();
        assert_eq!(positions, vec![7, 14, 21]);
    }

    #[test]
    fn level_structure_invariants_hold_throughout() {
        let n = 3000u64;
        let mut st = ApproxState::multiplicative(1, 0.21).unwrap();
        for i in 0..n {
            let sym = (i % 13) as u8 + b'a';
            st.step(sym, sym);
            let x = st.position();
            for level in st.levels() {
                let ret = level.retention;
                let positions: Vec<u64> = level.positions().collect();
                for w in positions.windows(2) {
                    assert_eq!(w[1] - w[0], level.spacing);
                }
                for &p in &positions {
                    assert!((p as f64) >= x as f64 - ret);
                    assert!(p <= x);
                }
            }
        }
    }
}
