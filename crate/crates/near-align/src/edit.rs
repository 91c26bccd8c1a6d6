//! Shared domain types: located edit operations, ordered edit scripts, the
//! result record every engine produces, and script application used to
//! validate emitted alignments.

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// One synchronized stream element: the pair `(S[index], T[index])`.
///
/// Indices are 1-based and strictly increasing within a stream session.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolPair {
    pub index: u64,
    pub s_sym: u8,
    pub t_sym: u8,
}

/// A located edit operation transforming a stretch of `S` into `T`.
///
/// Positions are 1-based. An insert names a `T` position whose symbol has no
/// counterpart in `S`; a delete names an `S` position whose symbol has no
/// counterpart in `T`; a substitute pairs an `S` position with a `T` position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EditOp {
    Substitute {
        s_pos: u64,
        t_pos: u64,
        s_sym: u8,
        t_sym: u8,
    },
    Insert {
        t_pos: u64,
        t_sym: u8,
    },
    Delete {
        s_pos: u64,
        s_sym: u8,
    },
}

impl EditOp {
    /// Minimum of the positions present on the op; always defined.
    pub fn anchor(&self) -> u64 {
        match *self {
            EditOp::Substitute { s_pos, t_pos, .. } => s_pos.min(t_pos),
            EditOp::Insert { t_pos, .. } => t_pos,
            EditOp::Delete { s_pos, .. } => s_pos,
        }
    }

    pub(crate) fn kind_rank(&self) -> u8 {
        match self {
            EditOp::Substitute { .. } => 0,
            EditOp::Insert { .. } => 1,
            EditOp::Delete { .. } => 2,
        }
    }

    /// Returns the op with `S`-side and `T`-side positions shifted
    /// independently; used when the two windows start at different stream
    /// coordinates.
    pub fn shifted_st(&self, s_offset: i64, t_offset: i64) -> EditOp {
        let mv = |p: u64, off: i64| {
            let shifted = p as i64 + off;
            debug_assert!(shifted >= 1);
            shifted as u64
        };
        match *self {
            EditOp::Substitute {
                s_pos,
                t_pos,
                s_sym,
                t_sym,
            } => EditOp::Substitute {
                s_pos: mv(s_pos, s_offset),
                t_pos: mv(t_pos, t_offset),
                s_sym,
                t_sym,
            },
            EditOp::Insert { t_pos, t_sym } => EditOp::Insert {
                t_pos: mv(t_pos, t_offset),
                t_sym,
            },
            EditOp::Delete { s_pos, s_sym } => EditOp::Delete {
                s_pos: mv(s_pos, s_offset),
                s_sym,
            },
        }
    }

    /// Returns the op with every position shifted by `offset`; used to move
    /// between window-local and global stream coordinates.
    pub fn shifted(&self, offset: i64) -> EditOp {
        let mv = |p: u64| {
            let shifted = p as i64 + offset;
            debug_assert!(shifted >= 1);
            shifted as u64
        };
        match *self {
            EditOp::Substitute {
                s_pos,
                t_pos,
                s_sym,
                t_sym,
            } => EditOp::Substitute {
                s_pos: mv(s_pos),
                t_pos: mv(t_pos),
                s_sym,
                t_sym,
            },
            EditOp::Insert { t_pos, t_sym } => EditOp::Insert {
                t_pos: mv(t_pos),
                t_sym,
            },
            EditOp::Delete { s_pos, s_sym } => EditOp::Delete {
                s_pos: mv(s_pos),
                s_sym,
            },
        }
    }
}

/// An ordered sequence of edit operations; cost is the op count.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EditScript {
    pub ops: Vec<EditOp>,
}

impl EditScript {
    pub fn new(ops: Vec<EditOp>) -> Self {
        EditScript { ops }
    }

    pub fn empty() -> Self {
        EditScript::default()
    }

    pub fn cost(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Script with every position shifted by `offset`.
    pub fn shifted(&self, offset: i64) -> EditScript {
        EditScript {
            ops: self.ops.iter().map(|op| op.shifted(offset)).collect(),
        }
    }
}

/// Reorders a script into canonical order: substitutions, then insertions,
/// then deletions, each kind by ascending anchor. The op multiset, the cost
/// and the result of [`apply_script`] are unchanged.
pub fn canonicalize(script: &EditScript) -> EditScript {
    let mut ops = script.ops.clone();
    ops.sort_by_key(|op| (op.kind_rank(), op.anchor()));
    EditScript { ops }
}

/// Which engine produced a [`NearAlignment`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Multiplicative,
    Additive,
    Oracle,
}

/// Parameters the producing engine ran with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlignParams {
    pub d: usize,
    /// Multiplicative slack; present for `Mode::Multiplicative` only.
    pub epsilon: Option<f64>,
    /// Additive slack `E`; present for `Mode::Additive` only.
    pub additive_error: Option<u64>,
}

impl AlignParams {
    pub fn exact(d: usize) -> Self {
        AlignParams {
            d,
            epsilon: None,
            additive_error: None,
        }
    }

    pub fn oracle(d: usize) -> Self {
        AlignParams::exact(d)
    }

    pub fn multiplicative(d: usize, epsilon: f64) -> Self {
        AlignParams {
            d,
            epsilon: Some(epsilon),
            additive_error: None,
        }
    }

    pub fn additive(d: usize, error: u64) -> Self {
        AlignParams {
            d,
            epsilon: None,
            additive_error: Some(error),
        }
    }
}

/// A reported longest near-alignment: the window `[start, end]` (1-based,
/// inclusive), its length and, for script-producing engines, the edit
/// operations in global stream coordinates.
///
/// The empty answer (no window of any length qualifies, possible only for
/// `d = 0`) is represented by the absence of this record.
#[derive(Debug, Clone, PartialEq)]
pub struct NearAlignment {
    pub start: u64,
    pub end: u64,
    pub length: u64,
    pub script: Option<EditScript>,
    pub mode: Mode,
    pub params: AlignParams,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EditError {
    #[error("op position {pos} outside coordinate range 1..={len}")]
    PositionOutOfRange { pos: u64, len: u64 },
    #[error("invalid edit script: {0}")]
    InvalidScript(&'static str),
}

/// Applies `script` to a window of `S`, producing the corresponding window of
/// `T`. Positions are interpreted window-locally: the window occupies
/// coordinates `1..=s_win.len()` on the `S` side and `1..=output.len()` on the
/// `T` side. Shift global scripts with [`EditScript::shifted`] first.
pub fn apply_script(s_win: &[u8], script: &EditScript) -> Result<Vec<u8>, EditError> {
    let s_len = s_win.len() as u64;

    let mut deleted: BTreeSet<u64> = BTreeSet::new();
    let mut substituted: BTreeMap<u64, (u64, u8)> = BTreeMap::new(); // s_pos -> (t_pos, t_sym)
    let mut inserted: BTreeMap<u64, u8> = BTreeMap::new(); // t_pos -> t_sym

    for op in &script.ops {
        match *op {
            EditOp::Delete { s_pos, .. } => {
                if s_pos < 1 || s_pos > s_len {
                    return Err(EditError::PositionOutOfRange {
                        pos: s_pos,
                        len: s_len,
                    });
                }
                if !deleted.insert(s_pos) {
                    return Err(EditError::InvalidScript("duplicate delete position"));
                }
            }
            EditOp::Substitute {
                s_pos,
                t_pos,
                t_sym,
                ..
            } => {
                if s_pos < 1 || s_pos > s_len {
                    return Err(EditError::PositionOutOfRange {
                        pos: s_pos,
                        len: s_len,
                    });
                }
                if substituted.insert(s_pos, (t_pos, t_sym)).is_some() {
                    return Err(EditError::InvalidScript("duplicate substitute position"));
                }
            }
            EditOp::Insert { t_pos, t_sym } => {
                if inserted.insert(t_pos, t_sym).is_some() {
                    return Err(EditError::InvalidScript("duplicate insert position"));
                }
            }
        }
    }
    if let Some(p) = deleted.iter().find(|p| substituted.contains_key(p)) {
        let _ = p;
        return Err(EditError::InvalidScript(
            "position both deleted and substituted",
        ));
    }

    let out_len = s_len - deleted.len() as u64 + inserted.len() as u64;
    for &t_pos in inserted.keys() {
        if t_pos < 1 || t_pos > out_len {
            return Err(EditError::PositionOutOfRange {
                pos: t_pos,
                len: out_len,
            });
        }
    }

    let mut out: Vec<Option<u8>> = vec![None; out_len as usize];
    for (&t_pos, &sym) in &inserted {
        out[(t_pos - 1) as usize] = Some(sym);
    }

    // Surviving S symbols fill the non-inserted T slots left to right; a
    // substituted survivor must land exactly on its declared T position.
    let mut slot = 0usize;
    for (i, &sym) in s_win.iter().enumerate() {
        let s_pos = i as u64 + 1;
        if deleted.contains(&s_pos) {
            continue;
        }
        while slot < out.len() && out[slot].is_some() {
            slot += 1;
        }
        if slot >= out.len() {
            return Err(EditError::InvalidScript("more survivors than output slots"));
        }
        let landing = slot as u64 + 1;
        match substituted.get(&s_pos) {
            Some(&(t_pos, t_sym)) => {
                if t_pos != landing {
                    return Err(EditError::InvalidScript(
                        "substitute lands off its declared position",
                    ));
                }
                out[slot] = Some(t_sym);
            }
            None => out[slot] = Some(sym),
        }
        slot += 1;
    }

    let mut result = Vec::with_capacity(out.len());
    for cell in out {
        match cell {
            Some(sym) => result.push(sym),
            None => return Err(EditError::InvalidScript("unfilled output slot")),
        }
    }
    Ok(result)
}
