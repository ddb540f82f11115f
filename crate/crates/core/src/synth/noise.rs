//! Counter-based noise substreams.
//!
//! Every complex noise draw is addressed by `(seed, channel, m)`: the seed
//! keys a ChaCha8 stream, the channel selects the stream id and `m` jumps
//! the block counter. Draws therefore do not depend on evaluation order.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::domain::ChannelAxis;

/// Words reserved per sample in the ChaCha counter space.
const WORDS_PER_SAMPLE: u128 = 1 << 20;

/// Generator for a single `(seed, channel, m)` substream.
pub fn substream(seed: u64, axis: ChannelAxis, m: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(axis.index());
    rng.set_word_pos(m as u128 * WORDS_PER_SAMPLE);
    rng
}

/// Circular complex Gaussian sample with total variance `variance`.
pub fn complex_gaussian(seed: u64, axis: ChannelAxis, m: usize, variance: f64) -> Complex64 {
    if variance == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let mut rng = substream(seed, axis, m);
    let sigma = (variance / 2.0).sqrt();
    let re: f64 = StandardNormal.sample(&mut rng);
    let im: f64 = StandardNormal.sample(&mut rng);
    Complex64::new(sigma * re, sigma * im)
}

/// Folds a list of keys into a child seed (SplitMix64 finalizer per step).
pub fn derive_seed(base: u64, keys: &[u64]) -> u64 {
    keys.iter().fold(mix(base), |acc, &k| mix(acc ^ mix(k.wrapping_add(0x9E37_79B9_7F4A_7C15))))
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
