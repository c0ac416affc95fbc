//! BPSK modulation over AWGN and channel LLR computation.
//!
//! Every Monte Carlo frame draws from its own ChaCha8 stream: the key comes
//! from `(run_seed, point)` via SplitMix64 and the stream id is the frame
//! index. Frames can therefore be generated in any order, on any number of
//! threads, with identical results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Noise variance floor used for noiseless frames, so LLRs stay finite.
const MIN_VARIANCE: f64 = 1e-9;

/// Received BPSK symbols with their noise level.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelFrame {
    pub symbols: Vec<f64>,
    /// Eb/N0 in dB.
    pub snr_db: f64,
    pub noise_sigma: f64,
}

/// `0 -> +1.0`, `1 -> -1.0`.
pub fn bpsk_modulate(bits: &[u8]) -> Vec<f64> {
    bits.iter().map(|&b| if b == 0 { 1.0 } else { -1.0 }).collect()
}

/// Hard decision on symbols or LLRs: negative means bit 1.
pub fn hard_decision(values: &[f64]) -> Vec<u8> {
    values.iter().map(|&v| u8::from(v < 0.0)).collect()
}

/// `σ = sqrt(1 / (2 · rate · 10^(Eb/N0 / 10)))`; zero for `ebn0_db = +∞`.
pub fn noise_sigma(ebn0_db: f64, rate: f64) -> f64 {
    assert!(rate > 0.0 && rate <= 1.0, "code rate {rate} outside (0, 1]");
    if ebn0_db == f64::INFINITY {
        return 0.0;
    }
    (1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0))).sqrt()
}

/// Adds i.i.d. Gaussian noise drawn from `rng`.
pub fn awgn_add<R: Rng + ?Sized>(symbols: &[f64], ebn0_db: f64, rate: f64, rng: &mut R) -> ChannelFrame {
    let sigma = noise_sigma(ebn0_db, rate);
    let symbols = symbols
        .iter()
        .map(|&s| {
            let z: f64 = rng.sample(StandardNormal);
            s + sigma * z
        })
        .collect();
    ChannelFrame { symbols, snr_db: ebn0_db, noise_sigma: sigma }
}

/// [`awgn_add`] with a generator seeded from `seed` alone.
pub fn awgn_add_seeded(symbols: &[f64], ebn0_db: f64, rate: f64, seed: u64) -> ChannelFrame {
    awgn_add(symbols, ebn0_db, rate, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `LLR_i = 2 y_i / σ²`; positive favours bit 0.
pub fn channel_llr(frame: &ChannelFrame) -> Vec<f64> {
    let variance = (frame.noise_sigma * frame.noise_sigma).max(MIN_VARIANCE);
    frame.symbols.iter().map(|&y| 2.0 * y / variance).collect()
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for frame `frame_index` of simulation point `point`.
pub fn frame_rng(run_seed: u64, point: u64, frame_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(run_seed ^ splitmix64(point)));
    rng.set_stream(frame_index);
    rng
}

/// `len` uniformly random bits.
pub fn random_bits<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<u8> {
    (0..len).map(|_| rng.random::<bool>() as u8).collect()
}
