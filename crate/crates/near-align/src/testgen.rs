//! Seeded instance corpus shared by the verification suites. Not part of the
//! public surface.

use crate::hardgen;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct Instance {
    pub s: Vec<u8>,
    pub t: Vec<u8>,
    pub d: usize,
    pub label: &'static str,
}

fn random_string(rng: &mut ChaCha8Rng, n: usize, sigma: u8) -> Vec<u8> {
    (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect()
}

/// Length-preserving random edits: substitutions, or a deletion paired with a
/// trailing push, or an insertion paired with a truncate.
fn mutate(rng: &mut ChaCha8Rng, t: &mut Vec<u8>, edits: usize, sigma: u8) {
    let n = t.len();
    for _ in 0..edits {
        if t.is_empty() {
            break;
        }
        let p = rng.gen_range(0..t.len());
        match rng.gen_range(0..3) {
            0 => t[p] = b'a' + rng.gen_range(0..sigma),
            1 => {
                t.remove(p);
                t.push(b'a' + rng.gen_range(0..sigma));
            }
            _ => {
                t.insert(p, b'a' + rng.gen_range(0..sigma));
                t.truncate(n);
            }
        }
    }
}

fn sample_n(rng: &mut ChaCha8Rng) -> usize {
    // Log-uniform over [16, 512].
    let u: f64 = rng.gen();
    (16.0 * 32f64.powf(u)).round() as usize
}

fn sample_d(rng: &mut ChaCha8Rng) -> usize {
    rng.gen_range(0..=8)
}

fn sample_sigma(rng: &mut ChaCha8Rng) -> u8 {
    [2u8, 4, 26][rng.gen_range(0..3)]
}

/// Deterministic mixed corpus: random instances across sizes, budgets and
/// alphabets, interleaved with adversarial families (all-equal, all-distinct,
/// periodic and shifted-periodic, expanded hard pairs).
pub fn corpus(seed: u64, count: usize) -> Vec<Instance> {
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(i as u64 + 1)));
        let inst = match i % 25 {
            0 => {
                let n = sample_n(&mut rng);
                let sigma = sample_sigma(&mut rng);
                let s = random_string(&mut rng, n, sigma);
                Instance {
                    t: s.clone(),
                    s,
                    d: sample_d(&mut rng),
                    label: "all-equal",
                }
            }
            1 => {
                let n = sample_n(&mut rng);
                let s: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..13)).collect();
                let t: Vec<u8> = (0..n).map(|_| b'n' + rng.gen_range(0..13)).collect();
                Instance {
                    s,
                    t,
                    d: sample_d(&mut rng),
                    label: "all-distinct",
                }
            }
            2 => {
                // Periodic stream with sparse noise on one side.
                let n = sample_n(&mut rng);
                let p = rng.gen_range(1..=4);
                let pattern: Vec<u8> = random_string(&mut rng, p, 3);
                let s: Vec<u8> = (0..n).map(|j| pattern[j % p]).collect();
                let mut t = s.clone();
                let d = sample_d(&mut rng);
                let edits = rng.gen_range(0..=d + 2);
                mutate(&mut rng, &mut t, edits, 3);
                Instance {
                    s,
                    t,
                    d,
                    label: "periodic",
                }
            }
            3 => {
                // Shifted periodic: T is S slid left by a small offset, the
                // vacated tail refilled; optimal alignments cross uniform
                // stretches off-diagonal.
                let n = sample_n(&mut rng);
                let p = rng.gen_range(1..=3);
                let pattern: Vec<u8> = random_string(&mut rng, p, 2);
                let mut s: Vec<u8> = (0..n).map(|j| pattern[j % p]).collect();
                // Break pure periodicity with a few block symbols.
                for _ in 0..rng.gen_range(0..4) {
                    let q = rng.gen_range(0..n);
                    s[q] = b'z';
                }
                let shift = rng.gen_range(1..=3.min(n - 1));
                let mut t: Vec<u8> = s[shift..].to_vec();
                t.extend(random_string(&mut rng, shift, 2));
                Instance {
                    s,
                    t,
                    d: sample_d(&mut rng),
                    label: "shifted-periodic",
                }
            }
            4 => {
                let bits_n = rng.gen_range(4..=24);
                let d = rng.gen_range(1..=5.min(bits_n - 1));
                let (x, y) = hardgen::sample_ham_pair(bits_n, d, rng.gen()).unwrap();
                Instance {
                    s: hardgen::s_transform(&x, d),
                    t: hardgen::s_transform(&y, d),
                    d,
                    label: "hard-s-pair",
                }
            }
            5 => {
                let bits_n = rng.gen_range(4..=8);
                let d = rng.gen_range(1..=3.min(bits_n - 1));
                let (x, y) = hardgen::sample_ham_pair(bits_n, d, rng.gen()).unwrap();
                let sx = hardgen::s_transform(&x, d);
                let sy = hardgen::s_transform(&y, d);
                let pad_n = sx.len();
                Instance {
                    s: hardgen::t_transform(&sx, d, pad_n),
                    t: hardgen::t_transform(&sy, d, pad_n),
                    d,
                    label: "hard-t-pair",
                }
            }
            k if k < 15 => {
                // Mutated copies: a planted near-alignment plus noise.
                let n = sample_n(&mut rng);
                let sigma = sample_sigma(&mut rng);
                let d = sample_d(&mut rng);
                let s = random_string(&mut rng, n, sigma);
                let mut t = s.clone();
                let edits = rng.gen_range(0..=2 * d + 2);
                mutate(&mut rng, &mut t, edits, sigma);
                Instance {
                    s,
                    t,
                    d,
                    label: "mutated",
                }
            }
            k if k < 20 => {
                // Block-structured: shared blocks with independent patches.
                let n = sample_n(&mut rng);
                let sigma = sample_sigma(&mut rng);
                let d = sample_d(&mut rng);
                let s = random_string(&mut rng, n, sigma);
                let mut t = s.clone();
                for _ in 0..rng.gen_range(1..=3) {
                    let len = rng.gen_range(1..=(n / 4).max(1));
                    let at = rng.gen_range(0..=n - len);
                    for slot in t[at..at + len].iter_mut() {
                        *slot = b'a' + rng.gen_range(0..sigma);
                    }
                }
                Instance {
                    s,
                    t,
                    d,
                    label: "blocky",
                }
            }
            _ => {
                // Independent strings.
                let n = sample_n(&mut rng);
                let sigma = sample_sigma(&mut rng);
                let s = random_string(&mut rng, n, sigma);
                let t = random_string(&mut rng, n, sigma);
                Instance {
                    s,
                    t,
                    d: sample_d(&mut rng),
                    label: "independent",
                }
            }
        };
        debug_assert_eq!(inst.s.len(), inst.t.len());
        out.push(inst);
    }
    out
}

/// Smaller instances for the approximation-guarantee sweeps, where each
/// instance also pays for an exhaustive oracle scan.
pub fn approx_corpus(seed: u64, count: usize, max_n: usize) -> Vec<Instance> {
    corpus(seed, count)
        .into_iter()
        .map(|mut inst| {
            if inst.s.len() > max_n {
                inst.s.truncate(max_n);
                inst.t.truncate(max_n);
            }
            inst
        })
        .collect()
}
