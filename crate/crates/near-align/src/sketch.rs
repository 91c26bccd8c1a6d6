//! Per-checkpoint streaming edit-distance state: after each synchronized
//! symbol pair, report the edit distance of the consumed suffix pair or that
//! it exceeds the budget `d`.
//!
//! The sketch advances the classic DP one L-shaped frontier at a time,
//! keeping the `2d+1` cells `D[k][k-j]` and `D[k-i][k]` (`i, j <= d`) plus
//! the `d+1` most recent symbols of each stream. All `2d+1` diagonals move
//! every step, `O(d)` work per pair.

use std::collections::VecDeque;

/// Distance report of a sketch: exact while within budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    Within(usize),
    Exceeded,
}

impl Distance {
    pub fn value(self) -> Option<usize> {
        match self {
            Distance::Within(v) => Some(v),
            Distance::Exceeded => None,
        }
    }
}

/// Streaming banded edit-distance state anchored at stream index `origin`.
#[derive(Debug, Clone)]
pub struct BandedSketch {
    d: usize,
    origin: u64,
    steps: u64,
    /// `row[j] = D[k][k-j]`, `col[i] = D[k-i][k]`; `row[0] == col[0]`.
    row: Vec<u32>,
    col: Vec<u32>,
    s_recent: VecDeque<u8>,
    t_recent: VecDeque<u8>,
    dead: bool,
}

impl BandedSketch {
    pub fn new(d: usize, origin: u64) -> Self {
        debug_assert!(origin >= 1);
        let inf = d as u32 + 1;
        let mut row = vec![inf; d + 1];
        let mut col = vec![inf; d + 1];
        row[0] = 0;
        col[0] = 0;
        BandedSketch {
            d,
            origin,
            steps: 0,
            row,
            col,
            s_recent: VecDeque::with_capacity(d + 2),
            t_recent: VecDeque::with_capacity(d + 2),
            dead: false,
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn origin(&self) -> u64 {
        self.origin
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn is_dead(&self) -> bool {
        self.dead
    }

    /// Edit distance of the consumed suffix pair when it is at most `d`.
    pub fn current_distance(&self) -> Distance {
        if self.dead || self.row[0] > self.d as u32 {
            Distance::Exceeded
        } else {
            Distance::Within(self.row[0] as usize)
        }
    }

    /// Band snapshot for diagnostics: index `delta + d`, `None` = exceeded
    /// or not yet reachable.
    pub fn band(&self) -> Vec<Option<usize>> {
        let inf = self.d as u32 + 1;
        let mut out = vec![None; 2 * self.d + 1];
        for delta in 0..=self.d {
            let up = self.col[delta];
            let lo = self.row[delta];
            if up < inf {
                out[self.d + delta] = Some(up as usize);
            }
            if lo < inf {
                out[self.d - delta] = Some(lo as usize);
            }
        }
        out
    }

    /// Consumes the next synchronized pair.
    pub fn update(&mut self, s_sym: u8, t_sym: u8) {
        self.steps += 1;
        if self.dead {
            return;
        }
        let d = self.d;
        let inf = d as u32 + 1;
        let k = self.steps; // new frontier index

        self.s_recent.push_back(s_sym);
        self.t_recent.push_back(t_sym);
        if self.s_recent.len() > d + 1 {
            self.s_recent.pop_front();
            self.t_recent.pop_front();
        }

        let mut new_col = vec![inf; d + 1];
        let mut new_row = vec![inf; d + 1];

        // Column cells D[i][k], i = k - back, top down.
        for back in (1..=d).rev() {
            let i = k as i64 - back as i64;
            if i < 0 {
                continue;
            }
            if i == 0 {
                new_col[back] = (k as u32).min(inf);
                continue;
            }
            let up = if back == d { inf } else { new_col[back + 1] };
            let left = self.col[back - 1];
            let diag = self.col[back];
            let s_i = self.s_recent[self.s_recent.len() - 1 - back];
            let val = (up.saturating_add(1))
                .min(left.saturating_add(1))
                .min(diag.saturating_add(u32::from(s_i != t_sym)));
            new_col[back] = val.min(inf);
        }
        // Row cells D[k][j], j = k - back, left to right toward the corner.
        for back in (1..=d).rev() {
            let j = k as i64 - back as i64;
            if j < 0 {
                continue;
            }
            if j == 0 {
                new_row[back] = (k as u32).min(inf);
                continue;
            }
            let left = if back == d { inf } else { new_row[back + 1] };
            let up = self.row[back - 1];
            let diag = self.row[back];
            let t_j = self.t_recent[self.t_recent.len() - 1 - back];
            let val = (left.saturating_add(1))
                .min(up.saturating_add(1))
                .min(diag.saturating_add(u32::from(s_sym != t_j)));
            new_row[back] = val.min(inf);
        }
        // Corner D[k][k].
        let up = if d >= 1 { new_col[1] } else { inf };
        let left = if d >= 1 { new_row[1] } else { inf };
        let diag = self.row[0];
        let corner = (up.saturating_add(1))
            .min(left.saturating_add(1))
            .min(diag.saturating_add(u32::from(s_sym != t_sym)))
            .min(inf);
        new_col[0] = corner;
        new_row[0] = corner;

        self.col = new_col;
        self.row = new_row;
        if self.row.iter().chain(&self.col).all(|&v| v >= inf) {
            self.dead = true;
            self.s_recent.clear();
            self.t_recent.clear();
        }
    }
}
