//! Generators for adversarial instance families: bit strings expanded so that
//! edit distance collapses to Hamming distance, padded variants whose longest
//! near-alignment flips between everything and half the stream, and a
//! seedable sampler of bounded-Hamming-distance pairs.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HardGenError {
    #[error("invalid parameters: need d + 1 <= n, got n={n}, d={d}")]
    InvalidParams { n: usize, d: usize },
}

/// Expands a bit string (`'0'`/`'1'` bytes) by following every bit with a run
/// of `d + 1` ones; output length is exactly `n * (d + 2)`.
pub fn s_transform(bits: &[u8], d: usize) -> Vec<u8> {
    debug_assert!(bits.iter().all(|&b| b == b'0' || b == b'1'));
    let mut out = Vec::with_capacity(bits.len() * (d + 2));
    for &bit in bits {
        out.push(bit);
        out.extend(std::iter::repeat_n(b'1', d + 1));
    }
    out
}

/// Sandwiches `x` between two all-ones pads of `(d + 1) * n / 2` symbols
/// each; an odd total rounds the left pad down and the right pad up.
pub fn t_transform(x: &[u8], d: usize, n: usize) -> Vec<u8> {
    let total = (d + 1) * n;
    let left = total / 2;
    let right = total - left;
    let mut out = Vec::with_capacity(x.len() + total);
    out.extend(std::iter::repeat_n(b'1', left));
    out.extend_from_slice(x);
    out.extend(std::iter::repeat_n(b'1', right));
    out
}

/// Samples a pair of length-`n` bit strings: `x` uniform over weight-`d`
/// strings, `y` differing from `x` in exactly `d` or `d + 1` uniformly
/// chosen positions (fair coin which). Deterministic given the seed.
pub fn sample_ham_pair(n: usize, d: usize, seed: u64) -> Result<(Vec<u8>, Vec<u8>), HardGenError> {
    if d + 1 > n {
        return Err(HardGenError::InvalidParams { n, d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![b'0'; n];
    for i in index::sample(&mut rng, n, d) {
        x[i] = b'1';
    }
    let flips = if rng.gen_bool(0.5) { d } else { d + 1 };
    let mut y = x.clone();
    for i in index::sample(&mut rng, n, flips) {
        y[i] = if y[i] == b'0' { b'1' } else { b'0' };
    }
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::hamming;

    #[test]
    fn expansion_follows_each_bit_with_ones() {
        assert_eq!(s_transform(b"01", 1), b"011111");
        assert_eq!(s_transform(b"1", 0), b"11");
        for n in [1usize, 5, 16] {
            let bits: Vec<u8> = (0..n)
                .map(|i| if i % 3 == 0 { b'1' } else { b'0' })
                .collect();
            for d in 0..4 {
                assert_eq!(s_transform(&bits, d).len(), n * (d + 2));
            }
        }
    }

    #[test]
    fn padding_splits_rounding_rightward() {
        assert_eq!(t_transform(b"01", 1, 2), b"110111");
        assert_eq!(t_transform(b"", 3, 0), b"");
        // Odd total: left pad one shorter than right.
        let out = t_transform(b"0", 0, 3);
        assert_eq!(out, b"1011".to_vec());
    }

    #[test]
    fn sampler_hits_requested_distances() {
        for seed in 0..1000u64 {
            let (x, y) = sample_ham_pair(24, 3, seed).unwrap();
            let ham = hamming(&x, &y).unwrap();
            assert!(ham == 3 || ham == 4, "seed {seed} gave ham {ham}");
            assert_eq!(x.iter().filter(|&&b| b == b'1').count(), 3);
        }
    }

    #[test]
    fn sampler_is_reproducible() {
        assert_eq!(
            sample_ham_pair(32, 4, 7).unwrap(),
            sample_ham_pair(32, 4, 7).unwrap()
        );
        assert!(sample_ham_pair(3, 3, 0).is_err());
    }
}
