//! Acceptance suite: one test per shipped guarantee, each printing a
//! PASS/FAIL line with its measured numbers (visible under `--nocapture`).

use near_align::approx::ApproxState;
use near_align::edit::apply_script;
use near_align::exact::{StepMode, WindowState};
use near_align::hardgen;
use near_align::hirschberg::{modified_hirschberg_with_stats, AlignmentOutcome, HirschbergStats};
use near_align::{oracle, testgen};
use std::time::Instant;

const CORPUS_SEED: u64 = 0x5EED_2000;

const EXAMPLE_S: &[u8] = b"1234yyyyyy123456789xxxxx";
const EXAMPLE_T: &[u8] = b"1234xxxxxx123467890yyyyy";

fn drive_exact(s: &[u8], t: &[u8], d: usize, mode: StepMode) -> WindowState {
    let mut st = WindowState::with_mode(d, mode);
    for (&a, &b) in s.iter().zip(t) {
        st.step(a, b);
    }
    st
}

fn drive_mult(s: &[u8], t: &[u8], d: usize, eps: f64) -> ApproxState {
    let mut st = ApproxState::multiplicative(d, eps).unwrap();
    for (&a, &b) in s.iter().zip(t) {
        st.step(a, b);
    }
    st
}

fn drive_add(s: &[u8], t: &[u8], d: usize, e: u64) -> ApproxState {
    let mut st = ApproxState::additive(d, e).unwrap();
    for (&a, &b) in s.iter().zip(t) {
        st.step(a, b);
    }
    st
}

fn assert_script_applies(s: &[u8], t: &[u8], out: &near_align::NearAlignment, d: usize) {
    let script = out.script.as_ref().expect("exact mode emits scripts");
    assert!(
        script.cost() <= d,
        "script cost {} over budget {d}",
        script.cost()
    );
    let lo = (out.start - 1) as usize;
    let hi = out.end as usize;
    let local = script.shifted(-(out.start as i64 - 1));
    assert_eq!(
        apply_script(&s[lo..hi], &local).unwrap(),
        &t[lo..hi],
        "script does not transform the reported window"
    );
}

/// Golden worked example: exact mode must report the inner 9-symbol window
/// with a cost-2 script, in well under a second.
#[test]
fn golden_example_exact_mode() {
    let started = Instant::now();
    let st = drive_exact(EXAMPLE_S, EXAMPLE_T, 2, StepMode::Cached);
    let out = st.result().expect("alignment exists");
    assert_eq!(
        (out.length, out.start, out.end),
        (9, 11, 19),
        "expected the inner digit window"
    );
    assert_eq!(out.script.as_ref().unwrap().cost(), 2);
    assert_script_applies(EXAMPLE_S, EXAMPLE_T, &out, 2);
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("PASS golden example: (9, 11, 19) cost 2 in {elapsed:?}");
}

/// Exactness over the seeded 2000-instance corpus: engine length equals the
/// exhaustive oracle everywhere, every script applies within budget.
#[test]
fn exact_engine_matches_oracle_on_corpus() {
    let started = Instant::now();
    let instances = testgen::corpus(CORPUS_SEED, 2000);
    let mut checked = 0usize;
    for inst in &instances {
        let st = drive_exact(&inst.s, &inst.t, inst.d, StepMode::Cached);
        let want = oracle::oracle_lmax(&inst.s, &inst.t, inst.d).unwrap();
        match (want, st.result()) {
            (None, None) => {}
            (Some((len, _, _)), Some(out)) => {
                assert_eq!(
                    out.length, len as u64,
                    "length mismatch on {} (d={})",
                    inst.label, inst.d
                );
                assert_script_applies(&inst.s, &inst.t, &out, inst.d);
            }
            (want, got) => panic!("{}: oracle {want:?} vs engine {got:?}", inst.label),
        }
        checked += 1;
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 120.0,
        "corpus run exceeded the time budget: {elapsed:?}"
    );
    println!("PASS oracle equivalence: {checked} instances, zero mismatches, {elapsed:?}");
}

/// Multiplicative guarantee: lmax <= (1+eps) * reported <= (1+eps) * lmax,
/// and every reported window is genuinely within budget.
#[test]
fn multiplicative_guarantee() {
    let instances = testgen::approx_corpus(CORPUS_SEED ^ 3, 500, 256);
    let mut violations = 0usize;
    for inst in &instances {
        let lmax = oracle::oracle_lmax(&inst.s, &inst.t, inst.d)
            .unwrap()
            .map_or(0, |(l, _, _)| l as u64);
        for eps in [0.1, 0.5, 1.0] {
            let st = drive_mult(&inst.s, &inst.t, inst.d, eps);
            let got = st.result().map_or(0, |o| o.length);
            if got > lmax || (lmax as f64) > (1.0 + eps) * got as f64 {
                violations += 1;
                eprintln!(
                    "violation: {} d={} eps={eps} lmax={lmax} got={got}",
                    inst.label, inst.d
                );
            }
            if let Some(out) = st.result() {
                let lo = (out.start - 1) as usize;
                let hi = out.end as usize;
                let ed = oracle::full_edit_distance(&inst.s[lo..hi], &inst.t[lo..hi])
                    .unwrap()
                    .0;
                assert!(ed <= inst.d, "reported window over budget");
            }
        }
    }
    assert_eq!(violations, 0);
    println!(
        "PASS multiplicative guarantee: {} instances x 3 epsilons, zero violations",
        instances.len()
    );
}

/// Additive guarantee: lmax - E <= reported <= lmax.
#[test]
fn additive_guarantee() {
    let instances = testgen::approx_corpus(CORPUS_SEED ^ 4, 500, 256);
    let mut violations = 0usize;
    for inst in &instances {
        let lmax = oracle::oracle_lmax(&inst.s, &inst.t, inst.d)
            .unwrap()
            .map_or(0, |(l, _, _)| l as u64);
        for e in [4u64, 16, 64] {
            let st = drive_add(&inst.s, &inst.t, inst.d, e);
            let got = st.result().map_or(0, |o| o.length);
            if got > lmax || got + e < lmax {
                violations += 1;
                eprintln!(
                    "violation: {} d={} E={e} lmax={lmax} got={got}",
                    inst.label, inst.d
                );
            }
        }
    }
    assert_eq!(violations, 0);
    println!(
        "PASS additive guarantee: {} instances x 3 windows, zero violations",
        instances.len()
    );
}

/// Worked additive example with checkpoints every 5 positions. The stated
/// expectation is (start 15, end 19, length 5); the checkpoint at 10,
/// however, legitimately verifies the longer window [10, 15] (edit distance
/// 2 = d) at position 15, before that checkpoint dies at 16, and the
/// best-so-far rule must keep it. This assertion is kept as stated and is
/// expected to fail; see the repository notes on the discrepancy.
#[test]
fn additive_worked_example() {
    let st = drive_add(EXAMPLE_S, EXAMPLE_T, 2, 5);
    let out = st.result().expect("alignment exists");
    let ed_10_15 = oracle::full_edit_distance(&EXAMPLE_S[9..15], &EXAMPLE_T[9..15])
        .unwrap()
        .0;
    assert_eq!(
        (out.start, out.end, out.length),
        (15, 19, 5),
        "engine found [{}..{}] len {} instead; window [10,15] has edit \
         distance {ed_10_15} <= d, so the checkpoint at 10 verifies a longer \
         window at position 15 and the monotone best-so-far rule retains it",
        out.start,
        out.end,
        out.length
    );
    println!("PASS additive worked example: (15, 19, 5)");
}

/// Checkpoint structure while streaming 100k equal symbols at eps = 0.21:
/// exact level spacing, retention windows, and the live-checkpoint bound.
#[test]
fn checkpoint_structure() {
    let n: u64 = 100_000;
    let eps = 0.21f64;
    let mut st = ApproxState::multiplicative(2, eps).unwrap();
    let bound = 8.0 * (n as f64).log2() / (eps * (1.0 + eps).log2());
    let mut max_positions = 0usize;
    let mut max_records = 0usize;
    for i in 0..n {
        let sym = (i % 251) as u8;
        st.step(sym, sym);
        let x = st.position();
        for level in st.levels() {
            let spacing = level.spacing;
            let mut prev: Option<u64> = None;
            for p in level.positions() {
                if let Some(q) = prev {
                    assert_eq!(p - q, spacing, "level {} spacing", level.k);
                }
                assert!(
                    p as f64 >= x as f64 - level.retention,
                    "level {} retains too far back",
                    level.k
                );
                assert!(p <= x);
                prev = Some(p);
            }
        }
        let live = st.live_positions();
        max_positions = max_positions.max(live);
        max_records = max_records.max(st.live_records());
        assert!(
            (live as f64) <= bound,
            "live checkpoints {live} over bound {bound:.0} at x={x}"
        );
    }
    println!(
        "PASS checkpoint structure: n={n}, max live positions {max_positions} \
         (bound {bound:.0}), max (pos, level) records {max_records}"
    );
}

/// Window bound over the exactness corpus: the buffer never exceeds
/// (2d+1)(d+2), and never exceeds (d+1)(d+2) while the window pair itself is
/// within budget.
#[test]
fn window_bound() {
    let instances = testgen::corpus(CORPUS_SEED, 2000);
    let mut worst = (0usize, 0usize);
    for inst in &instances {
        let d = inst.d;
        let st = drive_exact(&inst.s, &inst.t, d, StepMode::Cached);
        let stats = st.stats();
        assert!(
            stats.max_window_len <= (2 * d + 1) * (d + 2),
            "{}: window {} over (2d+1)(d+2)={} for d={d}",
            inst.label,
            stats.max_window_len,
            (2 * d + 1) * (d + 2)
        );
        assert!(
            stats.max_window_len_within_budget <= (d + 1) * (d + 2),
            "{}: in-budget window {} over (d+1)(d+2)={} for d={d}",
            inst.label,
            stats.max_window_len_within_budget,
            (d + 1) * (d + 2)
        );
        worst = worst.max((stats.max_window_len, d));
    }
    println!(
        "PASS window bound: 2000 instances, worst window {} (d={})",
        worst.0, worst.1
    );
}

/// Banded recovery against full DP on 10k random window pairs, plus the
/// frontier-width contract.
#[test]
fn alignment_recovery_matches_full_dp() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 7);
    let mut stats = HirschbergStats::default();
    for case in 0..10_000 {
        let m = rng.gen_range(1..=64);
        let d = rng.gen_range(0..=8);
        let sigma = [2u8, 4, 26][rng.gen_range(0..3)];
        let s: Vec<u8> = (0..m).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
        let t: Vec<u8> = if rng.gen_bool(0.6) {
            let mut t = s.clone();
            for _ in 0..rng.gen_range(0..=d + 2) {
                let p = rng.gen_range(0..t.len());
                t[p] = b'a' + rng.gen_range(0..sigma);
            }
            t
        } else {
            (0..m).map(|_| b'a' + rng.gen_range(0..sigma)).collect()
        };
        let truth = oracle::full_edit_distance(&s, &t).unwrap().0;
        let mut local = HirschbergStats::default();
        match modified_hirschberg_with_stats(&s, &t, d, &mut local) {
            AlignmentOutcome::Aligned(script) => {
                assert!(truth <= d, "case {case}");
                assert_eq!(script.cost(), truth, "case {case}");
                assert_eq!(apply_script(&s, &script).unwrap(), t, "case {case}");
            }
            AlignmentOutcome::ExceedsD => assert!(truth > d, "case {case}"),
        }
        assert!(
            local.max_finite_row_cells <= 2 * d + 1,
            "case {case}: frontier held {} finite scores for d={d}",
            local.max_finite_row_cells
        );
        stats.max_finite_row_cells = stats.max_finite_row_cells.max(local.max_finite_row_cells);
    }
    println!(
        "PASS alignment recovery: 10000 pairs, frontier max {} finite scores",
        stats.max_finite_row_cells
    );
}

/// Hard-instance reduction: the bit expansion collapses edit distance to
/// Hamming distance, and the padded construction aligns fully iff the
/// underlying Hamming distance is within budget.
#[test]
fn hard_instance_reduction() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 8);
    for case in 0..200 {
        let n = rng.gen_range(8..=64);
        let d = rng.gen_range(1..=5);
        let (x, y) = hardgen::sample_ham_pair(n, d, rng.gen()).unwrap();
        let ham = oracle::hamming(&x, &y).unwrap();
        let sx = hardgen::s_transform(&x, d);
        let sy = hardgen::s_transform(&y, d);
        let ed = oracle::full_edit_distance(&sx, &sy).unwrap().0;
        assert_eq!(ed, ham, "case {case}: expansion broke the reduction");

        // Padded pairs stay affordable for the streaming check.
        if n <= 16 && d <= 3 {
            let pad_n = sx.len();
            let ts = hardgen::t_transform(&sx, d, pad_n);
            let tt = hardgen::t_transform(&sy, d, pad_n);
            let st = drive_exact(&ts, &tt, d, StepMode::Cached);
            let got = st.result().map_or(0, |o| o.length) as usize;
            if ham <= d {
                assert_eq!(got, ts.len(), "case {case}: expected a full alignment");
            } else {
                assert!(got < ts.len(), "case {case}: ham={ham} > d={d}");
            }
        }
    }
    println!("PASS hard-instance reduction: 200 sampled pairs");
}
