//! One-pass exact engine: a bounded sliding window `[b, x]`, the queue of the
//! most recent prefix edit operations, and a per-diagonal frontier of least
//! feasible starts for the region already slid past.
//!
//! The frontier is what keeps answers exact once symbols leave the window: for
//! every interface diagonal `delta` in `[-d, d]` and every budget `v <= d` it
//! records the smallest start `c` with `ed(S[c..b-1], T[c..b-1-delta]) <= v`,
//! together with the ops of a witnessing alignment. Because appending or
//! prepending a synchronized pair never lowers the cost of a window, the
//! per-diagonal least starts are well-defined breakpoints, and composing them
//! with a banded scan over the live window recovers the true smallest feasible
//! start for every stream position. The op queue is the `delta = 0` lane of
//! that frontier.

use crate::edit::{canonicalize, AlignParams, EditOp, EditScript, Mode, NearAlignment};
use crate::hirschberg::{
    banded_last_row, modified_hirschberg, suffix_diag_costs, AlignmentOutcome, BandedTable, PathOp,
};

/// Whether the engine may reuse per-step scan results when the arriving pair
/// is an exact match (appending an equal pair never changes window costs).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StepMode {
    #[default]
    Cached,
    /// Reference path: every per-step quantity is recomputed from the buffers.
    RecomputeAlways,
}

/// A maximal stretch of at least `d + 1` consecutive matched pairs inside a
/// window alignment, window-local 1-based coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSpan {
    pub s_start: usize,
    pub s_end: usize,
    pub t_start: usize,
    pub t_end: usize,
}

/// Finds the leftmost run of at least `d + 1` consecutive matched pairs in
/// the alignment described by `script` over a same-index window of
/// `window_len` pairs, or `None` when every matched stretch is shorter.
pub fn detect_run(script: &EditScript, window_len: usize, d: usize) -> Option<RunSpan> {
    let mut deleted = vec![false; window_len + 1];
    let mut inserted = vec![false; window_len + 1];
    let mut substituted = vec![false; window_len + 1];
    for op in &script.ops {
        match *op {
            EditOp::Delete { s_pos, .. } if s_pos as usize <= window_len => {
                deleted[s_pos as usize] = true
            }
            EditOp::Insert { t_pos, .. } if t_pos as usize <= window_len => {
                inserted[t_pos as usize] = true
            }
            EditOp::Substitute { s_pos, .. } if s_pos as usize <= window_len => {
                substituted[s_pos as usize] = true
            }
            _ => {}
        }
    }

    let (mut u, mut v) = (1usize, 1usize);
    let mut run: Option<(usize, usize)> = None;
    let close = |run: &mut Option<(usize, usize)>, u: usize, v: usize| -> Option<RunSpan> {
        let (su, sv) = run.take()?;
        let len = u - su;
        (len > d).then_some(RunSpan {
            s_start: su,
            s_end: u - 1,
            t_start: sv,
            t_end: v - 1,
        })
    };
    while u <= window_len || v <= window_len {
        if u <= window_len && deleted[u] {
            if let Some(span) = close(&mut run, u, v) {
                return Some(span);
            }
            u += 1;
        } else if v <= window_len && inserted[v] {
            if let Some(span) = close(&mut run, u, v) {
                return Some(span);
            }
            v += 1;
        } else if u <= window_len && v <= window_len {
            if substituted[u] {
                if let Some(span) = close(&mut run, u, v) {
                    return Some(span);
                }
            } else if run.is_none() {
                run = Some((u, v));
            }
            u += 1;
            v += 1;
        } else {
            break;
        }
    }
    close(&mut run, u, v)
}

/// Counters surfaced for space/behaviour verification.
#[derive(Debug, Clone, Copy, Default)]
pub struct WindowStats {
    pub steps: u64,
    /// Longest window buffer held at the end of any step.
    pub max_window_len: usize,
    /// Longest window held while the window pair itself was within budget.
    pub max_window_len_within_budget: usize,
    pub advances: u64,
    pub alignment_recomputations: u64,
}

#[derive(Debug, Clone)]
struct PrefixCell {
    start: u64,
    /// Ops of an optimal alignment of `(S[start..b-1], T[start..b-1-delta])`,
    /// global coordinates, alignment order.
    ops: Vec<EditOp>,
}

/// Least-start table per interface diagonal and budget, describing the prefix
/// `S[..b-1]` against `T` shifted by each in-band diagonal.
#[derive(Debug, Clone)]
struct PrefixTable {
    d: usize,
    /// `rows[delta + d][v]`: least start with prefix cost at most `v`.
    rows: Vec<Vec<Option<PrefixCell>>>,
}

impl PrefixTable {
    fn cell(&self, delta: isize, v: usize) -> Option<&PrefixCell> {
        let row = &self.rows[(delta + self.d as isize) as usize];
        row[v.min(self.d)].as_ref()
    }

    /// Rebuilds the table for a window start advanced from `b_old` to
    /// `b_new`. `s_seg` is `S[b_old..b_new-1]`; `t_all` spans
    /// `T[t_all_start..]` far enough to cover `b_new - 1 + d`.
    fn advance(
        old: Option<&PrefixTable>,
        d: usize,
        b_old: u64,
        b_new: u64,
        s_seg: &[u8],
        t_all: &[u8],
        t_all_start: u64,
    ) -> PrefixTable {
        let seg_len = s_seg.len();
        debug_assert_eq!(seg_len as u64, b_new - b_old);
        let width = 2 * d as isize + 1;
        let cap = d as u32 + 1;
        let a_rev: Vec<u8> = s_seg.iter().rev().copied().collect();

        let mut rows: Vec<Vec<Option<PrefixCell>>> = Vec::with_capacity(width as usize);
        for delta in -(d as isize)..=(d as isize) {
            let mut row: Vec<Option<PrefixCell>> = vec![None; d + 1];
            // T range for this diagonal ends at b_new - 1 - delta.
            let t_end = b_new as i64 - 1 - delta as i64;
            let ext_len = t_end - t_all_start as i64 + 1;
            if ext_len < 0 {
                rows.push(row);
                continue;
            }
            let t_ext = &t_all[..ext_len as usize];
            let b_rev: Vec<u8> = t_ext.iter().rev().copied().collect();
            let table = BandedTable::build(&a_rev, &b_rev, d, cap);

            // Largest reversed index (smallest start) per budget along the
            // interior diagonal; the diagonal never decreases with depth.
            let mut deepest: Vec<Option<usize>> = vec![None; d + 1];
            for i in 0..=seg_len {
                let j = i as isize - delta;
                if j < 0 {
                    continue;
                }
                let val = table.get(i, j as usize);
                if val < cap {
                    deepest[val as usize] = Some(i);
                }
            }
            for v in 1..=d {
                if deepest[v].is_none() {
                    deepest[v] = deepest[v - 1];
                } else if let (Some(a), Some(b)) = (deepest[v - 1], deepest[v]) {
                    if a > b {
                        deepest[v] = Some(a);
                    }
                }
            }

            for v in 0..=d {
                // Best witness ordered by (start, script cost). Composed
                // starts lie at or before b_old, interior ones at or after.
                let mut composed: Option<(u64, usize, isize, u32)> = None;
                if let Some(old_table) = old {
                    for gamma in -(d as isize)..=(d as isize) {
                        let j_mid = seg_len as isize + gamma - delta;
                        if j_mid < 0 {
                            continue;
                        }
                        let mid = table.get(seg_len, j_mid as usize);
                        if mid >= cap || mid as usize > v {
                            continue;
                        }
                        if let Some(cell) = old_table.cell(gamma, v - mid as usize) {
                            let cost = cell.ops.len() + mid as usize;
                            if composed.is_none_or(|(s, c, _, _)| (cell.start, cost) < (s, c)) {
                                composed = Some((cell.start, cost, gamma, mid));
                            }
                        }
                    }
                }
                let interior = deepest[v].map(|i| {
                    let val = table.get(i, (i as isize - delta) as usize);
                    (b_new - i as u64, val as usize, i)
                });

                let take_composed = match (&composed, &interior) {
                    (Some((cs, cc, _, _)), Some((is, ic, _))) => (*cs, *cc) <= (*is, *ic),
                    (Some(_), None) => true,
                    (None, _) => false,
                };
                row[v] = if take_composed {
                    let (start, _, gamma, mid) = composed.unwrap();
                    let old_cell = old
                        .unwrap()
                        .cell(gamma, v - mid as usize)
                        .expect("composed cell");
                    let mut ops = old_cell.ops.clone();
                    let j_mid = (seg_len as isize + gamma - delta) as usize;
                    append_segment_ops(
                        &mut ops, &table, &a_rev, &b_rev, seg_len, j_mid, b_new, delta,
                    );
                    Some(PrefixCell { start, ops })
                } else if let Some((start, _, i)) = interior {
                    let mut ops = Vec::new();
                    append_segment_ops(
                        &mut ops,
                        &table,
                        &a_rev,
                        &b_rev,
                        i,
                        (i as isize - delta) as usize,
                        b_new,
                        delta,
                    );
                    Some(PrefixCell { start, ops })
                } else {
                    None
                };
            }
            rows.push(row);
        }
        PrefixTable { d, rows }
    }
}

/// Maps a traceback over reversed segment slices back to global coordinates
/// and appends the ops in ascending position order.
#[allow(clippy::too_many_arguments)]
fn append_segment_ops(
    ops: &mut Vec<EditOp>,
    table: &BandedTable,
    a_rev: &[u8],
    b_rev: &[u8],
    i: usize,
    j: usize,
    b_new: u64,
    delta: isize,
) {
    if i == 0 && j == 0 {
        return;
    }
    let path = table.traceback(a_rev, b_rev, i, j);
    let mapped: Vec<EditOp> = path
        .iter()
        .filter_map(|step| match *step {
            PathOp::Match => None,
            PathOp::Sub(pi, pj) => Some(EditOp::Substitute {
                s_pos: b_new - pi as u64,
                t_pos: (b_new as i64 - delta as i64 - pj as i64) as u64,
                s_sym: a_rev[pi - 1],
                t_sym: b_rev[pj - 1],
            }),
            PathOp::Del(pi) => Some(EditOp::Delete {
                s_pos: b_new - pi as u64,
                s_sym: a_rev[pi - 1],
            }),
            PathOp::Ins(pj) => Some(EditOp::Insert {
                t_pos: (b_new as i64 - delta as i64 - pj as i64) as u64,
                t_sym: b_rev[pj - 1],
            }),
        })
        .collect();
    ops.extend(mapped.into_iter().rev());
}

#[derive(Debug, Clone)]
struct BestAnswer {
    start: u64,
    end: u64,
    script: EditScript,
}

/// One-pass exact engine state for the sliding window `[b, x]`.
#[derive(Debug, Clone)]
pub struct WindowState {
    d: usize,
    b: u64,
    x: u64,
    s_buf: Vec<u8>,
    t_buf: Vec<u8>,
    /// Up to `d` symbols of `T[b-m..b-1]`, needed for positive diagonals.
    t_margin: Vec<u8>,
    frontier: Option<PrefixTable>,
    /// Most recent prefix edit operations, oldest first, at most `d`.
    queue: Vec<EditOp>,
    best: Option<BestAnswer>,
    mode: StepMode,
    /// `suf[delta + d] = ed(S[b..x], T[b-delta..x])`, capped at `d + 1`.
    suf: Vec<u32>,
    stats: WindowStats,
}

enum Candidate {
    /// Start inside the live window (or the window start itself).
    Window { start: u64 },
    /// Start before `b`, reached through a frontier cell.
    Composed { start: u64, delta: isize },
}

impl WindowState {
    pub fn new(d: usize) -> Self {
        WindowState::with_mode(d, StepMode::Cached)
    }

    pub fn with_mode(d: usize, mode: StepMode) -> Self {
        let mut st = WindowState {
            d,
            b: 1,
            x: 0,
            s_buf: Vec::new(),
            t_buf: Vec::new(),
            t_margin: Vec::new(),
            frontier: None,
            queue: Vec::new(),
            best: None,
            mode,
            suf: vec![d as u32 + 1; 2 * d + 1],
            stats: WindowStats::default(),
        };
        st.recompute_suf();
        st
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn window_start(&self) -> u64 {
        self.b
    }

    pub fn position(&self) -> u64 {
        self.x
    }

    pub fn window_len(&self) -> usize {
        self.s_buf.len()
    }

    /// The op queue `A`: most recent prefix edit operations, oldest first.
    pub fn queue(&self) -> &[EditOp] {
        &self.queue
    }

    pub fn stats(&self) -> WindowStats {
        self.stats
    }

    pub fn best_len(&self) -> u64 {
        self.best.as_ref().map_or(0, |b| b.end - b.start + 1)
    }

    /// Consumes the synchronized pair `(S[x+1], T[x+1])`.
    pub fn step(&mut self, s_sym: u8, t_sym: u8) {
        self.x += 1;
        self.s_buf.push(s_sym);
        self.t_buf.push(t_sym);
        self.stats.steps += 1;

        // Appending an equal pair leaves every in-band suffix cost unchanged;
        // small windows still recompute because a new diagonal enters the band.
        let reuse = self.mode == StepMode::Cached && s_sym == t_sym && self.window_len() > self.d;
        if !reuse {
            self.recompute_suf();
        }
        let over_budget_diags = self.enforce_bounds();
        self.update_best(over_budget_diags.as_deref());

        let len = self.window_len();
        self.stats.max_window_len = self.stats.max_window_len.max(len);
        if self.suf[self.d] <= self.d as u32 {
            self.stats.max_window_len_within_budget =
                self.stats.max_window_len_within_budget.max(len);
        }
    }

    /// Final answer for the consumed stream.
    pub fn result(&self) -> Option<NearAlignment> {
        self.best.as_ref().map(|b| NearAlignment {
            start: b.start,
            end: b.end,
            length: b.end - b.start + 1,
            script: Some(b.script.clone()),
            mode: Mode::Exact,
            params: AlignParams::exact(self.d),
        })
    }

    fn recompute_suf(&mut self) {
        let rs: Vec<u8> = self.s_buf.iter().rev().copied().collect();
        let mut rt: Vec<u8> = Vec::with_capacity(self.t_margin.len() + self.t_buf.len());
        rt.extend(self.t_buf.iter().rev());
        rt.extend(self.t_margin.iter().rev());
        let scan = banded_last_row(&rs, &rt, self.d, self.d as u32 + 1);
        self.suf = scan.cells;
    }

    /// Keeps the window within its structural bounds. Returns the suffix
    /// costs at budget `2d` when the step ends with the window over budget,
    /// for reuse by the candidate query.
    fn enforce_bounds(&mut self) -> Option<Vec<u32>> {
        loop {
            let f = self.suf[self.d] as usize;
            if f <= self.d {
                if self.window_len() > (f + 1) * (self.d + 2) {
                    if let Some(target) = self.run_cut_target(self.d) {
                        if self.advance_to(target) {
                            self.recompute_suf();
                            continue;
                        }
                    }
                    debug_assert!(false, "window over bound without a cut");
                }
                return None;
            }

            let diags = suffix_diag_costs(&self.s_buf, &self.t_buf, 2 * self.d);
            let c2d = self.x + 1 - diags.len() as u64;
            if c2d > self.b && self.advance_to(c2d) {
                self.recompute_suf();
                continue;
            }
            if self.window_len() > (2 * self.d + 1) * (self.d + 2) {
                if let Some(target) = self.run_cut_target(2 * self.d) {
                    if self.advance_to(target) {
                        self.recompute_suf();
                        continue;
                    }
                }
                debug_assert!(false, "over-budget window over bound without a cut");
            }
            return Some(diags);
        }
    }

    /// Window start implied by the leftmost long run of the window's optimal
    /// alignment at `budget`, global coordinates.
    fn run_cut_target(&mut self, budget: usize) -> Option<u64> {
        self.stats.alignment_recomputations += 1;
        match modified_hirschberg(&self.s_buf, &self.t_buf, budget) {
            AlignmentOutcome::ExceedsD => None,
            AlignmentOutcome::Aligned(script) => detect_run(&script, self.window_len(), self.d)
                .map(|run| self.b + run.s_end.min(run.t_end) as u64 - 1),
        }
    }

    /// Advances the window start to `target`, capped so the frontier only
    /// ever references symbols already seen. Returns whether `b` moved.
    fn advance_to(&mut self, target: u64) -> bool {
        let cap = (self.x + 1).saturating_sub(self.d as u64);
        let b_new = target.min(cap);
        if b_new <= self.b {
            return false;
        }
        let seg_len = (b_new - self.b) as usize;

        let mut t_all: Vec<u8> = Vec::with_capacity(self.t_margin.len() + self.t_buf.len());
        t_all.extend(&self.t_margin);
        t_all.extend(&self.t_buf);
        let t_all_start = self.b - self.t_margin.len() as u64;

        let table = PrefixTable::advance(
            self.frontier.as_ref(),
            self.d,
            self.b,
            b_new,
            &self.s_buf[..seg_len],
            &t_all,
            t_all_start,
        );
        self.queue = table
            .cell(0, self.d)
            .map(|c| c.ops.clone())
            .unwrap_or_default();
        self.queue.sort_by_key(|op| (op.anchor(), op.kind_rank()));
        debug_assert!(self.queue.len() <= self.d);
        self.frontier = Some(table);

        let margin_len = (self.d as u64).min(b_new - 1) as usize;
        let end = (b_new - 1 - t_all_start + 1) as usize;
        self.t_margin = t_all[end - margin_len..end].to_vec();

        self.s_buf.drain(..seg_len);
        self.t_buf.drain(..seg_len);
        self.b = b_new;
        self.stats.advances += 1;
        true
    }

    fn update_best(&mut self, over_budget_diags: Option<&[u32]>) {
        let candidate = match over_budget_diags {
            None => self.feasible_candidate(),
            Some(diags) => {
                // Window pair exceeds d: no start at or before b can be
                // feasible, so only suffixes of the live window qualify.
                let k = diags.partition_point(|&v| v <= self.d as u32);
                (k > 0).then(|| Candidate::Window {
                    start: self.x + 1 - k as u64,
                })
            }
        };
        let Some(candidate) = candidate else { return };
        let start = match &candidate {
            Candidate::Window { start } => *start,
            Candidate::Composed { start, .. } => *start,
        };
        // `start` may sit just past the stream (empty prefix cell); that is
        // the zero-length answer and never displaces anything.
        let length = self.x + 1 - start;
        if length == 0 || length <= self.best_len() {
            return;
        }
        let script = self.build_script(&candidate);
        debug_assert!(script.cost() <= self.d);
        self.best = Some(BestAnswer {
            start,
            end: self.x,
            script,
        });
    }

    /// Smallest feasible start when the window pair itself is within budget.
    fn feasible_candidate(&self) -> Option<Candidate> {
        let d = self.d;
        debug_assert!(self.suf[d] <= d as u32);
        let Some(table) = self.frontier.as_ref() else {
            return Some(Candidate::Window { start: 1 });
        };
        let mut best: Option<Candidate> = None;
        let mut best_start = u64::MAX;
        for delta in delta_order(d) {
            let sufv = self.suf[(delta + d as isize) as usize];
            if sufv > d as u32 {
                continue;
            }
            let allow = d - sufv as usize;
            if let Some(cell) = table.cell(delta, allow) {
                if cell.start < best_start {
                    best_start = cell.start;
                    best = Some(Candidate::Composed {
                        start: cell.start,
                        delta,
                    });
                }
            }
        }
        debug_assert!(best.is_some(), "delta 0 always reaches the window start");
        best
    }

    fn build_script(&self, candidate: &Candidate) -> EditScript {
        match *candidate {
            Candidate::Window { start } => {
                let off = (start - self.b) as usize;
                let outcome = modified_hirschberg(&self.s_buf[off..], &self.t_buf[off..], self.d);
                let script = outcome.script().expect("window candidate within budget");
                script.shifted(start as i64 - 1)
            }
            Candidate::Composed { start, delta } => {
                let d = self.d;
                let sufv = self.suf[(delta + d as isize) as usize] as usize;
                let cell = self
                    .frontier
                    .as_ref()
                    .and_then(|t| t.cell(delta, d - sufv))
                    .expect("candidate cell");
                debug_assert_eq!(cell.start, start);

                // Suffix part: S[b..x] against T[b-delta..x].
                let t_slice: Vec<u8> = if delta >= 0 {
                    let take = delta as usize;
                    let m = self.t_margin.len();
                    let mut v = Vec::with_capacity(take + self.t_buf.len());
                    v.extend(&self.t_margin[m - take..]);
                    v.extend(&self.t_buf);
                    v
                } else {
                    self.t_buf[(-delta) as usize..].to_vec()
                };
                let outcome = modified_hirschberg(&self.s_buf, &t_slice, d);
                let suffix = outcome.script().expect("suffix within budget");

                let mut ops = cell.ops.clone();
                let s_off = self.b as i64 - 1;
                let t_off = self.b as i64 - delta as i64 - 1;
                for op in &suffix.ops {
                    ops.push(op.shifted_st(s_off, t_off));
                }
                canonicalize(&EditScript::new(ops))
            }
        }
    }
}

fn delta_order(d: usize) -> impl Iterator<Item = isize> {
    std::iter::once(0).chain((1..=d as isize).flat_map(|k| [k, -k]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit::apply_script;
    use crate::oracle;

    fn run(s: &[u8], t: &[u8], d: usize) -> WindowState {
        let mut st = WindowState::new(d);
        for (&a, &b) in s.iter().zip(t) {
            st.step(a, b);
        }
        st
    }

    fn check_script(s: &[u8], t: &[u8], alignment: &NearAlignment, d: usize) {
        let script = alignment.script.as_ref().unwrap();
        assert!(script.cost() <= d);
        let lo = (alignment.start - 1) as usize;
        let hi = alignment.end as usize;
        let local = script.shifted(-(alignment.start as i64 - 1));
        assert_eq!(apply_script(&s[lo..hi], &local).unwrap(), &t[lo..hi]);
    }

    #[test]
    fn empty_stream_reports_nothing() {
        let st = WindowState::new(2);
        assert!(st.result().is_none());
    }

    #[test]
    fn equal_streams_report_full_length() {
        let s = b"the quick brown fox jumps over the lazy dog";
        let st = run(s, s, 2);
        let out = st.result().unwrap();
        assert_eq!((out.start, out.end), (1, s.len() as u64));
        assert!(out.script.as_ref().unwrap().is_empty());
    }

    #[test]
    fn all_mismatch_with_zero_budget_is_absent() {
        let st = run(b"aaaa", b"bbbb", 0);
        assert!(st.result().is_none());
    }

    #[test]
    fn worked_example_is_exact() {
        let s = b"1234yyyyyy123456789xxxxx";
        let t = b"1234xxxxxx123467890yyyyy";
        let st = run(s, t, 2);
        let out = st.result().unwrap();
        assert_eq!((out.start, out.end, out.length), (11, 19, 9));
        assert_eq!(out.script.as_ref().unwrap().cost(), 2);
        check_script(s, t, &out, 2);
    }

    #[test]
    fn budget_dominating_stream_reports_everything() {
        let s = b"abcdefgh";
        let t = b"azcdeggh";
        let st = run(s, t, 16);
        let out = st.result().unwrap();
        assert_eq!((out.start, out.end), (1, 8));
        check_script(s, t, &out, 16);
    }

    // A shifted optimum across a uniform stretch: the alignment deletes the
    // first symbol and inserts the last one, which any plain op-queue
    // composition across a cut misses.
    #[test]
    fn shifted_optimum_small() {
        let s = b"aMMMMMcccc";
        let t = b"MMMMMccccZ";
        let st = run(s, t, 2);
        let out = st.result().unwrap();
        assert_eq!(out.length, 10, "whole stream aligns with one del + one ins");
        check_script(s, t, &out, 2);
    }

    #[test]
    fn shifted_optimum_survives_window_cuts() {
        let mut s = vec![b'a'];
        s.extend(std::iter::repeat_n(b'M', 60));
        s.extend(std::iter::repeat_n(b'c', 8));
        let mut t: Vec<u8> = std::iter::repeat_n(b'M', 60).collect();
        t.extend(std::iter::repeat_n(b'c', 8));
        t.push(b'Z');
        let st = run(&s, &t, 2);
        assert!(st.stats().advances > 0, "long stream must slide the window");
        let out = st.result().unwrap();
        assert_eq!(out.length, s.len() as u64);
        check_script(&s, &t, &out, 2);
    }

    #[test]
    fn window_stays_bounded() {
        let s: Vec<u8> = (0..400u32).map(|i| (i % 7) as u8 + b'a').collect();
        let t: Vec<u8> = (0..400u32).map(|i| (i % 5) as u8 + b'a').collect();
        for d in [0usize, 1, 3] {
            let mut st = WindowState::new(d);
            for (&a, &b) in s.iter().zip(&t) {
                st.step(a, b);
                assert!(st.window_len() <= (2 * d + 1) * (d + 2));
                assert!(st.queue().len() <= d);
            }
        }
    }

    #[test]
    fn matches_oracle_on_small_fuzz() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for case in 0..300 {
            let n = rng.gen_range(1..=48);
            let d = rng.gen_range(0..=4);
            let sigma = [2u8, 3, 26][rng.gen_range(0..3)];
            let s: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
            let mut t = s.clone();
            if rng.gen_bool(0.8) {
                let edits = rng.gen_range(0..=2 * d + 2);
                for _ in 0..edits {
                    let p = rng.gen_range(0..t.len());
                    match rng.gen_range(0..3) {
                        0 => t[p] = b'a' + rng.gen_range(0..sigma),
                        1 => {
                            t.remove(p);
                            t.push(b'a' + rng.gen_range(0..sigma));
                        }
                        _ => {
                            t.insert(p, b'a' + rng.gen_range(0..sigma));
                            t.truncate(s.len());
                        }
                    }
                }
            } else {
                t = (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
            }
            let st = run(&s, &t, d);
            let expect = oracle::oracle_lmax(&s, &t, d).unwrap();
            let got = st.result();
            match (expect, &got) {
                (None, None) => {}
                (Some((len, _, _)), Some(out)) => {
                    assert_eq!(
                        out.length,
                        len as u64,
                        "case {case}: d={d} s={:?} t={:?}",
                        String::from_utf8_lossy(&s),
                        String::from_utf8_lossy(&t)
                    );
                    check_script(&s, &t, out, d);
                }
                _ => panic!(
                    "case {case}: disagreement d={d} s={:?} t={:?} got={got:?} want={expect:?}",
                    String::from_utf8_lossy(&s),
                    String::from_utf8_lossy(&t)
                ),
            }
        }
    }

    #[test]
    fn cached_and_recompute_modes_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..60 {
            let n = rng.gen_range(1..=120);
            let d = rng.gen_range(0..=3);
            let s: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..3)).collect();
            let mut t = s.clone();
            for _ in 0..rng.gen_range(0..=d + 2) {
                let p = rng.gen_range(0..t.len());
                t[p] = b'a' + rng.gen_range(0..3);
            }
            let mut fast = WindowState::with_mode(d, StepMode::Cached);
            let mut slow = WindowState::with_mode(d, StepMode::RecomputeAlways);
            for (&a, &b) in s.iter().zip(&t) {
                fast.step(a, b);
                slow.step(a, b);
                assert_eq!(fast.window_start(), slow.window_start());
                assert_eq!(fast.best_len(), slow.best_len());
            }
            assert_eq!(fast.result(), slow.result());
        }
    }

    #[test]
    fn run_detection_examples() {
        // Empty script over d+1 pairs: the whole window is one run.
        let run = detect_run(&EditScript::empty(), 3, 2).unwrap();
        assert_eq!((run.s_start, run.s_end), (1, 3));
        assert_eq!((run.t_start, run.t_end), (1, 3));

        // Ops every d-th position leave only short matched stretches.
        let script = EditScript::new(vec![
            EditOp::Substitute {
                s_pos: 2,
                t_pos: 2,
                s_sym: b'a',
                t_sym: b'b',
            },
            EditOp::Substitute {
                s_pos: 4,
                t_pos: 4,
                s_sym: b'a',
                t_sym: b'b',
            },
        ]);
        assert_eq!(detect_run(&script, 5, 2), None);

        // Leftmost qualifying run wins.
        let script = EditScript::new(vec![EditOp::Substitute {
            s_pos: 4,
            t_pos: 4,
            s_sym: b'a',
            t_sym: b'b',
        }]);
        let run = detect_run(&script, 8, 2).unwrap();
        assert_eq!((run.s_start, run.s_end), (1, 3));
    }
}
