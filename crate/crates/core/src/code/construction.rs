//! Frozen-set construction.
//!
//! Synthetic channel `i` of a length-`N` code is reached from the physical
//! channel by applying one polarization step per bit of `i`, most significant
//! bit first: a zero bit takes the degraded branch, a one bit the upgraded
//! branch. This matches the decoder recursion, where the left half of every
//! node sees the check-node (F) combination of its parent's LLRs.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// How synthetic-channel reliabilities are estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// Gaussian approximation of density evolution on BPSK/AWGN.
    #[default]
    GaussianApproximation,
    /// Bhattacharyya-parameter recursion with the AWGN Bhattacharyya
    /// parameter `exp(-Es/N0)` as starting point.
    Bhattacharyya,
}

impl std::fmt::Display for Construction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Construction::GaussianApproximation => "gaussian_approximation",
            Construction::Bhattacharyya => "bhattacharyya",
        })
    }
}

impl std::str::FromStr for Construction {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ga" | "gaussian_approximation" => Ok(Construction::GaussianApproximation),
            "bhattacharyya" | "bec" => Ok(Construction::Bhattacharyya),
            other => Err(invalid(format!("unknown construction method `{other}`"))),
        }
    }
}

fn check_params(len: usize, k: usize) -> Result<()> {
    if !len.is_power_of_two() {
        return Err(invalid(format!("block length {len} is not a power of two")));
    }
    if k == 0 || k > len {
        return Err(invalid(format!("need 0 < k <= N, got k = {k}, N = {len}")));
    }
    Ok(())
}

/// Expands a per-channel recursion over `log2(len)` polarization steps.
fn polarize<T: Copy>(len: usize, start: T, minus: impl Fn(T) -> T, plus: impl Fn(T) -> T) -> Vec<T> {
    let mut values = vec![start];
    while values.len() < len {
        values = values.iter().flat_map(|&v| [minus(v), plus(v)]).collect();
    }
    values
}

/// `(ln Z, ln(1 - Z))` of every synthetic channel. Both are carried because
/// `z⁻ = 2z - z²` loses all precision in `ln Z` once Z is close to 1, while
/// `1 - z⁻ = (1 - z)²` stays exact there, and the other way round for z⁺.
fn bhattacharyya_pairs(len: usize, log_z0: f64) -> Vec<(f64, f64)> {
    let start = (log_z0, (-log_z0.exp_m1()).ln());
    polarize(
        len,
        start,
        |(lz, l1mz)| (lz + l1mz.exp().ln_1p(), 2.0 * l1mz),
        |(lz, l1mz)| (2.0 * lz, l1mz + lz.exp().ln_1p()),
    )
}

/// A key increasing in Z, read from whichever logarithm is accurate.
fn unreliability((lz, l1mz): (f64, f64)) -> f64 {
    use std::f64::consts::LN_2;
    if lz <= -LN_2 {
        lz
    } else {
        -2.0 * LN_2 - l1mz
    }
}

/// `ln Z` of every synthetic channel, starting from a channel with
/// Bhattacharyya parameter `exp(log_z0)`. Larger is less reliable.
pub fn bhattacharyya_log_params(len: usize, log_z0: f64) -> Vec<f64> {
    bhattacharyya_pairs(len, log_z0).into_iter().map(|(lz, _)| lz).collect()
}

/// Reliabilities from the Bhattacharyya recursion, larger is more reliable.
fn bhattacharyya_reliability(len: usize, log_z0: f64) -> Vec<f64> {
    bhattacharyya_pairs(len, log_z0).into_iter().map(|p| -unreliability(p)).collect()
}

/// Below this mean the curve fit turns positive, so it is replaced by the
/// chord to the origin, keeping `ln φ` continuous and strictly decreasing.
const PHI_LINEAR_BELOW: f64 = 0.1;

/// `ln φ(x)` for the Chung/Trifonov approximation of
/// `φ(x) = 1 - E[tanh(L/2)]`, `L ~ N(x, 2x)`.
fn ln_phi(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x < PHI_LINEAR_BELOW {
        x / PHI_LINEAR_BELOW * ln_phi(PHI_LINEAR_BELOW)
    } else if x < 10.0 {
        -0.4527 * x.powf(0.86) + 0.0218
    } else {
        0.5 * (std::f64::consts::PI / x).ln() - x / 4.0 + (1.0 - 10.0 / (7.0 * x)).ln()
    }
}

/// Inverts [`ln_phi`] by bisection.
fn inv_ln_phi(target: f64) -> f64 {
    if target >= 0.0 {
        return 0.0;
    }
    let mut hi = 1.0;
    while ln_phi(hi) > target {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ln_phi(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Mean LLR of every synthetic channel under the Gaussian approximation,
/// starting from channel mean `mean0 = 2 / σ²`. Larger is more reliable.
pub fn gaussian_approximation_means(len: usize, mean0: f64) -> Vec<f64> {
    polarize(
        len,
        mean0,
        |m| {
            // 1 - (1 - φ)² = φ (2 - φ), kept in the log domain; for small
            // means the two terms nearly cancel, hence ln_1p and exp_m1.
            let lp = ln_phi(m);
            inv_ln_phi(lp + (-lp.exp_m1()).ln_1p())
        },
        |m| 2.0 * m,
    )
}

/// Freezes the `len - k` positions with the smallest `reliability`; ties
/// freeze the lower index first.
fn freeze_least_reliable(reliability: &[f64], k: usize) -> Vec<bool> {
    let mut order: Vec<usize> = (0..reliability.len()).collect();
    order.sort_by(|&a, &b| reliability[a].total_cmp(&reliability[b]).then(a.cmp(&b)));
    let mut frozen = vec![false; reliability.len()];
    for &i in &order[..reliability.len() - k] {
        frozen[i] = true;
    }
    frozen
}

/// Frozen mask (true = frozen) of an `(len, k)` code designed for BPSK/AWGN at
/// `design_snr_db` (Eb/N0, using rate `k / len`).
pub fn construct_frozen_set(len: usize, k: usize, design_snr_db: f64, method: Construction) -> Result<Vec<bool>> {
    check_params(len, k)?;
    let es_n0 = (k as f64 / len as f64) * 10f64.powf(design_snr_db / 10.0);
    let reliability = match method {
        Construction::GaussianApproximation => gaussian_approximation_means(len, 4.0 * es_n0),
        Construction::Bhattacharyya => bhattacharyya_reliability(len, -es_n0),
    };
    Ok(freeze_least_reliable(&reliability, k))
}

/// Frozen mask designed on a binary erasure channel with erasure probability
/// `epsilon`, where the Bhattacharyya recursion is exact.
pub fn construct_frozen_set_erasure(len: usize, k: usize, epsilon: f64) -> Result<Vec<bool>> {
    check_params(len, k)?;
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(invalid(format!("erasure probability {epsilon} outside [0, 1]")));
    }
    Ok(freeze_least_reliable(&bhattacharyya_reliability(len, epsilon.ln()), k))
}
