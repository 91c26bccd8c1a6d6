//! Brute-force reference implementations used by the property and acceptance
//! suites: full dynamic-programming edit distance with script recovery, the
//! exhaustive longest-window scan, and Hamming distance.
//!
//! These are deliberately plain and share no kernels with the production
//! banded paths; independence is the point.

use crate::edit::{canonicalize, EditOp, EditScript};
use thiserror::Error;

/// Inputs longer than this are rejected; the oracle is quadratic by design.
pub const MAX_ORACLE_LEN: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("input of length {len} exceeds the oracle limit of {max}")]
    InputTooLarge { len: usize, max: usize },
    #[error("length mismatch: {s_len} vs {t_len}")]
    LengthMismatch { s_len: usize, t_len: usize },
}

fn check_len(len: usize) -> Result<(), OracleError> {
    if len > MAX_ORACLE_LEN {
        return Err(OracleError::InputTooLarge {
            len,
            max: MAX_ORACLE_LEN,
        });
    }
    Ok(())
}

/// Full Wagner-Fischer edit distance with an optimal canonical script,
/// quadratic time and space. Unequal lengths are allowed; script positions
/// are 1-based within `s` and `t` respectively.
///
/// Traceback ties prefer match, then substitute, then delete, then insert.
pub fn full_edit_distance(s: &[u8], t: &[u8]) -> Result<(usize, EditScript), OracleError> {
    check_len(s.len().max(t.len()))?;
    let m = s.len();
    let n = t.len();
    let width = n + 1;
    let mut dp = vec![0u16; (m + 1) * width];
    for (j, cell) in dp.iter_mut().enumerate().take(n + 1) {
        *cell = j as u16;
    }
    for i in 1..=m {
        dp[i * width] = i as u16;
        for j in 1..=n {
            let sub = dp[(i - 1) * width + j - 1] + u16::from(s[i - 1] != t[j - 1]);
            let del = dp[(i - 1) * width + j] + 1;
            let ins = dp[i * width + j - 1] + 1;
            dp[i * width + j] = sub.min(del).min(ins);
        }
    }

    let mut ops = Vec::new();
    let (mut i, mut j) = (m, n);
    while i > 0 || j > 0 {
        let cur = dp[i * width + j];
        if i > 0 && j > 0 && s[i - 1] == t[j - 1] && cur == dp[(i - 1) * width + j - 1] {
            i -= 1;
            j -= 1;
        } else if i > 0 && j > 0 && cur == dp[(i - 1) * width + j - 1] + 1 {
            ops.push(EditOp::Substitute {
                s_pos: i as u64,
                t_pos: j as u64,
                s_sym: s[i - 1],
                t_sym: t[j - 1],
            });
            i -= 1;
            j -= 1;
        } else if i > 0 && cur == dp[(i - 1) * width + j] + 1 {
            ops.push(EditOp::Delete {
                s_pos: i as u64,
                s_sym: s[i - 1],
            });
            i -= 1;
        } else {
            debug_assert!(j > 0 && cur == dp[i * width + j - 1] + 1);
            ops.push(EditOp::Insert {
                t_pos: j as u64,
                t_sym: t[j - 1],
            });
            j -= 1;
        }
    }
    ops.reverse();
    let cost = dp[m * width + n] as usize;
    debug_assert_eq!(cost, ops.len());
    Ok((cost, canonicalize(&EditScript::new(ops))))
}

/// Exhaustive longest `d`-near-alignment over all same-index windows of two
/// equal-length strings. For each start, one left-to-right banded scan finds
/// the furthest end whose window stays within budget; `O(n^2 d)` total.
///
/// Returns `(length, start, end)` with 1-based inclusive bounds, preferring
/// the leftmost window among equals, or `None` when no window of any length
/// qualifies (possible only for `d = 0`).
pub fn oracle_lmax(s: &[u8], t: &[u8], d: usize) -> Result<Option<(usize, u64, u64)>, OracleError> {
    if s.len() != t.len() {
        return Err(OracleError::LengthMismatch {
            s_len: s.len(),
            t_len: t.len(),
        });
    }
    check_len(s.len())?;
    let n = s.len();
    let mut best: Option<(usize, u64, u64)> = None;

    let width = 2 * d + 1;
    let inf = (d + 1) as u32;
    let mut prev = vec![inf; width];
    let mut cur = vec![inf; width];

    for start in 0..n {
        let sfx_s = &s[start..];
        let sfx_t = &t[start..];
        let len = n - start;
        if let Some((l, _, _)) = best {
            if len <= l {
                break; // no longer window can begin here
            }
        }

        // prev holds row a-1; cell (a, j) lives at index j - a + d.
        for (off, cell) in prev.iter_mut().enumerate() {
            let j = off as isize - d as isize; // row 0: value j for j >= 0
            *cell = if j >= 0 { (j as u32).min(inf) } else { inf };
        }
        let mut furthest: Option<usize> = None;
        for a in 1..=len {
            let mut all_exceeded = true;
            for off in 0..width {
                let j = a as isize + off as isize - d as isize;
                if j < 0 || j as usize > len {
                    cur[off] = inf;
                    continue;
                }
                let j = j as usize;
                let mut val = inf;
                if j == 0 {
                    val = (a as u32).min(inf);
                } else {
                    // diagonal: prev row, same offset
                    let diag = prev[off];
                    let cost = u32::from(sfx_s[a - 1] != sfx_t[j - 1]);
                    val = val.min(diag.saturating_add(cost));
                    // delete S[a]: prev row, offset + 1
                    if off + 1 < width {
                        val = val.min(prev[off + 1].saturating_add(1));
                    }
                    // insert T[j]: current row, offset - 1
                    if off >= 1 {
                        val = val.min(cur[off - 1].saturating_add(1));
                    }
                }
                cur[off] = val.min(inf);
                if cur[off] <= d as u32 {
                    all_exceeded = false;
                }
            }
            let diag = cur[d];
            if diag <= d as u32 {
                furthest = Some(a);
            } else {
                // The same-index window cost never decreases as the window
                // grows, so the first exceeded diagonal ends this start.
                break;
            }
            if all_exceeded {
                break;
            }
            std::mem::swap(&mut prev, &mut cur);
        }
        if let Some(k) = furthest {
            let candidate = (k, (start + 1) as u64, (start + k) as u64);
            if best.is_none_or(|(l, _, _)| k > l) {
                best = Some(candidate);
            }
        }
    }
    Ok(best)
}

/// Number of mismatched same-index positions between equal-length strings.
pub fn hamming(x: &[u8], y: &[u8]) -> Result<usize, OracleError> {
    if x.len() != y.len() {
        return Err(OracleError::LengthMismatch {
            s_len: x.len(),
            t_len: y.len(),
        });
    }
    Ok(x.iter().zip(y).filter(|(a, b)| a != b).count())
}
