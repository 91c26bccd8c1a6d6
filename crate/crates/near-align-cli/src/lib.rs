//! Stream ingestion, mode dispatch and result serialization for the
//! `near-align` binary. The pieces live in a library so the differential
//! tests can drive the same code paths in-process.

use near_align::approx::ApproxState;
use near_align::edit::{EditOp, Mode, NearAlignment, SymbolPair};
use near_align::exact::{StepMode, WindowState};
use near_align::hardgen;
use near_align::oracle;
use serde::Serialize;
use std::fs::File;
use std::io::{BufReader, Read};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("streams differ in length: S has {s_len} bytes, T has {t_len}")]
    LengthMismatch { s_len: u64, t_len: u64 },
    #[error("paired input has odd length {0}")]
    OddPairedInput(u64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Where the synchronized pairs come from.
pub enum InputSpec {
    /// Two raw byte files of equal length.
    Files { s: PathBuf, t: PathBuf },
    /// One file of interleaved records, two bytes each: S then T.
    Paired(PathBuf),
}

const CHUNK: usize = 64 * 1024;

/// Feeds every synchronized pair to `sink` without materializing the
/// streams; returns the stream length. Pair indices are 1-based and strictly
/// increasing for the session.
pub fn stream_pairs(spec: &InputSpec, mut sink: impl FnMut(SymbolPair)) -> Result<u64, CliError> {
    match spec {
        InputSpec::Files { s, t } => {
            let mut rs = BufReader::new(File::open(s).map_err(io_err(s))?);
            let mut rt = BufReader::new(File::open(t).map_err(io_err(t))?);
            let mut bs = vec![0u8; CHUNK];
            let mut bt = vec![0u8; CHUNK];
            let mut total = 0u64;
            loop {
                let ns = read_full(&mut rs, &mut bs).map_err(io_err(s))?;
                let nt = read_full(&mut rt, &mut bt).map_err(io_err(t))?;
                if ns != nt {
                    return Err(CliError::LengthMismatch {
                        s_len: total + ns as u64,
                        t_len: total + nt as u64,
                    });
                }
                if ns == 0 {
                    return Ok(total);
                }
                for i in 0..ns {
                    total += 1;
                    sink(SymbolPair {
                        index: total,
                        s_sym: bs[i],
                        t_sym: bt[i],
                    });
                }
            }
        }
        InputSpec::Paired(path) => {
            let mut r = BufReader::new(File::open(path).map_err(io_err(path))?);
            let mut buf = vec![0u8; CHUNK];
            let mut carry: Option<u8> = None;
            let mut total = 0u64;
            loop {
                let n = read_full(&mut r, &mut buf).map_err(io_err(path))?;
                if n == 0 {
                    if carry.is_some() {
                        return Err(CliError::OddPairedInput(total * 2 + 1));
                    }
                    return Ok(total);
                }
                let mut i = 0;
                if let Some(s_sym) = carry.take() {
                    total += 1;
                    sink(SymbolPair {
                        index: total,
                        s_sym,
                        t_sym: buf[0],
                    });
                    i = 1;
                }
                while i + 1 < n {
                    total += 1;
                    sink(SymbolPair {
                        index: total,
                        s_sym: buf[i],
                        t_sym: buf[i + 1],
                    });
                    i += 2;
                }
                if i < n {
                    carry = Some(buf[i]);
                }
            }
        }
    }
}

fn read_full(r: &mut impl Read, buf: &mut [u8]) -> std::io::Result<usize> {
    let mut filled = 0;
    while filled < buf.len() {
        let n = r.read(&mut buf[filled..])?;
        if n == 0 {
            break;
        }
        filled += n;
    }
    Ok(filled)
}

/// Materializes both streams; only the oracle mode does this.
pub fn read_streams(spec: &InputSpec) -> Result<(Vec<u8>, Vec<u8>), CliError> {
    let mut s = Vec::new();
    let mut t = Vec::new();
    stream_pairs(spec, |pair| {
        s.push(pair.s_sym);
        t.push(pair.t_sym);
    })?;
    Ok((s, t))
}

/// Per-run counters emitted on stderr under `--stats`.
#[derive(Debug, Default, Serialize)]
pub struct RunStats {
    pub steps: u64,
    pub max_window_len: usize,
    pub advances: u64,
    pub alignment_recomputations: u64,
    pub max_live_checkpoints: usize,
    pub max_checkpoint_records: usize,
    pub final_sketch_count: usize,
    /// High-water mark of buffered symbols per stream (window plus margin
    /// for the exact engine, sketch buffers for the checkpoint engines).
    pub max_symbols_held: usize,
    pub elapsed_ns: u128,
    pub ns_per_symbol: u64,
}

pub fn run_exact(
    spec: &InputSpec,
    d: usize,
    mode: StepMode,
) -> Result<(Option<NearAlignment>, RunStats), CliError> {
    let started = std::time::Instant::now();
    let mut st = WindowState::with_mode(d, mode);
    stream_pairs(spec, |pair| st.step(pair.s_sym, pair.t_sym))?;
    let inner = st.stats();
    let elapsed = started.elapsed().as_nanos();
    let stats = RunStats {
        steps: inner.steps,
        max_window_len: inner.max_window_len,
        advances: inner.advances,
        alignment_recomputations: inner.alignment_recomputations,
        max_symbols_held: inner.max_window_len + d,
        elapsed_ns: elapsed,
        ns_per_symbol: (elapsed / u128::from(inner.steps.max(1))) as u64,
        ..RunStats::default()
    };
    Ok((st.result(), stats))
}

pub enum ApproxKind {
    Multiplicative(f64),
    Additive(u64),
}

pub fn run_approx(
    spec: &InputSpec,
    d: usize,
    kind: &ApproxKind,
) -> Result<(Option<NearAlignment>, RunStats), CliError> {
    let started = std::time::Instant::now();
    let mut st = match kind {
        ApproxKind::Multiplicative(eps) => ApproxState::multiplicative(d, *eps)
            .map_err(|e| CliError::InvalidParams(e.to_string()))?,
        ApproxKind::Additive(e) => {
            ApproxState::additive(d, *e).map_err(|e| CliError::InvalidParams(e.to_string()))?
        }
    };
    let mut stats = RunStats::default();
    stream_pairs(spec, |pair| {
        st.step(pair.s_sym, pair.t_sym);
        stats.max_live_checkpoints = stats.max_live_checkpoints.max(st.live_positions());
        stats.max_checkpoint_records = stats.max_checkpoint_records.max(st.live_records());
    })?;
    stats.steps = st.position();
    stats.final_sketch_count = st.live_positions();
    stats.max_symbols_held = stats.max_live_checkpoints * (d + 1);
    stats.elapsed_ns = started.elapsed().as_nanos();
    stats.ns_per_symbol = (stats.elapsed_ns / u128::from(stats.steps.max(1))) as u64;
    Ok((st.result(), stats))
}

pub fn run_oracle(
    spec: &InputSpec,
    d: usize,
) -> Result<(Option<NearAlignment>, RunStats), CliError> {
    let started = std::time::Instant::now();
    let (s, t) = read_streams(spec)?;
    let found =
        oracle::oracle_lmax(&s, &t, d).map_err(|e| CliError::InvalidParams(e.to_string()))?;
    let result = found.map(|(len, start, end)| {
        let lo = (start - 1) as usize;
        let script = oracle::full_edit_distance(&s[lo..end as usize], &t[lo..end as usize])
            .expect("window within oracle limits")
            .1
            .shifted(start as i64 - 1);
        NearAlignment {
            start,
            end,
            length: len as u64,
            script: Some(script),
            mode: Mode::Oracle,
            params: near_align::edit::AlignParams::oracle(d),
        }
    });
    let stats = RunStats {
        steps: s.len() as u64,
        elapsed_ns: started.elapsed().as_nanos(),
        ..RunStats::default()
    };
    Ok((result, stats))
}

// --- serialization -------------------------------------------------------

#[derive(Serialize)]
struct EditJson {
    op: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    s_pos: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t_pos: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s_char: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t_char: Option<String>,
}

#[derive(Serialize)]
struct ParamsJson {
    d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<u64>,
}

#[derive(Serialize)]
struct ReportJson {
    mode: &'static str,
    length: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    start: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    end: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    edits: Option<Vec<EditJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<ParamsJson>,
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Exact => "exact",
        Mode::Multiplicative => "multiplicative",
        Mode::Additive => "additive",
        Mode::Oracle => "oracle",
    }
}

fn byte_str(b: u8) -> String {
    (b as char).to_string()
}

fn edit_json(op: &EditOp) -> EditJson {
    match *op {
        EditOp::Substitute {
            s_pos,
            t_pos,
            s_sym,
            t_sym,
        } => EditJson {
            op: "sub",
            s_pos: Some(s_pos),
            t_pos: Some(t_pos),
            s_char: Some(byte_str(s_sym)),
            t_char: Some(byte_str(t_sym)),
        },
        EditOp::Insert { t_pos, t_sym } => EditJson {
            op: "ins",
            s_pos: None,
            t_pos: Some(t_pos),
            s_char: None,
            t_char: Some(byte_str(t_sym)),
        },
        EditOp::Delete { s_pos, s_sym } => EditJson {
            op: "del",
            s_pos: Some(s_pos),
            t_pos: None,
            s_char: Some(byte_str(s_sym)),
            t_char: None,
        },
    }
}

/// Single-line JSON report. The absent alignment renders as
/// `{"mode":...,"length":0}`; keys otherwise appear in the stable order
/// mode, length, start, end, edits, params.
pub fn render_alignment(mode_when_absent: Mode, result: &Option<NearAlignment>) -> String {
    let report = match result {
        None => ReportJson {
            mode: mode_name(mode_when_absent),
            length: 0,
            start: None,
            end: None,
            edits: None,
            params: None,
        },
        Some(out) => ReportJson {
            mode: mode_name(out.mode),
            length: out.length,
            start: Some(out.start),
            end: Some(out.end),
            edits: out
                .script
                .as_ref()
                .map(|s| s.ops.iter().map(edit_json).collect()),
            params: Some(ParamsJson {
                d: out.params.d,
                epsilon: out.params.epsilon,
                error: out.params.additive_error,
            }),
        },
    };
    serde_json::to_string(&report).expect("report serializes")
}

pub fn render_stats(stats: &RunStats) -> String {
    serde_json::to_string(stats).expect("stats serialize")
}

// --- generation ----------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    HamPair,
    SPair,
    TPair,
}

impl GenKind {
    pub fn parse(s: &str) -> Option<GenKind> {
        match s {
            "ham-pair" => Some(GenKind::HamPair),
            "s-pair" => Some(GenKind::SPair),
            "t-pair" => Some(GenKind::TPair),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            GenKind::HamPair => "ham-pair",
            GenKind::SPair => "s-pair",
            GenKind::TPair => "t-pair",
        }
    }
}

#[derive(Serialize)]
pub struct GenManifest {
    pub kind: &'static str,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub s_len: usize,
    pub t_len: usize,
    pub ham: usize,
    pub s_path: String,
    pub t_path: String,
}

/// Builds the requested instance pair and writes `<out>.s` / `<out>.t`.
pub fn generate(
    kind: GenKind,
    n: usize,
    d: usize,
    seed: u64,
    out: &Path,
) -> Result<GenManifest, CliError> {
    let (x, y) =
        hardgen::sample_ham_pair(n, d, seed).map_err(|e| CliError::InvalidParams(e.to_string()))?;
    let ham = oracle::hamming(&x, &y).expect("equal lengths");
    let (s, t) = match kind {
        GenKind::HamPair => (x, y),
        GenKind::SPair => (hardgen::s_transform(&x, d), hardgen::s_transform(&y, d)),
        GenKind::TPair => {
            let sx = hardgen::s_transform(&x, d);
            let sy = hardgen::s_transform(&y, d);
            let pad_n = sx.len();
            (
                hardgen::t_transform(&sx, d, pad_n),
                hardgen::t_transform(&sy, d, pad_n),
            )
        }
    };
    let s_path = out.with_extension("s");
    let t_path = out.with_extension("t");
    std::fs::write(&s_path, &s).map_err(io_err(&s_path))?;
    std::fs::write(&t_path, &t).map_err(io_err(&t_path))?;
    Ok(GenManifest {
        kind: kind.name(),
        n,
        d,
        seed,
        s_len: s.len(),
        t_len: t.len(),
        ham,
        s_path: s_path.display().to_string(),
        t_path: t_path.display().to_string(),
    })
}
