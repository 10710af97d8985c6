//! Seedable, counter-style random number generation and the photon counting
//! sampler.
//!
//! Per-point streams are derived as `seed XOR splitmix64(index)` so that scan
//! points can be evaluated in any order without changing the result.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::math;

/// SplitMix64 finalizer; maps an index to a well-mixed 64-bit word.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream seed for point `index` of a scan seeded with `seed`.
pub fn stream_seed(seed: u64, index: u64) -> u64 {
    seed ^ splitmix64(index)
}

/// Counter-style generator for a single measurement.
pub fn generator(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw in the open-closed interval (0, 1].
pub fn uniform01(rng: &mut impl RngCore) -> f64 {
    (((rng.next_u64() >> 11) + 1) as f64) * (1.0 / 9007199254740992.0)
}

/// Standard normal draw (Box-Muller).
pub fn standard_normal(rng: &mut impl RngCore) -> f64 {
    let u1 = uniform01(rng);
    let u2 = uniform01(rng);
    math::sqrt(-2.0 * math::ln(u1)) * math::cos(2.0 * core::f64::consts::PI * u2)
}

/// Draw from a counting distribution with variance equal to the mean.
///
/// Exponential-interarrival counting up to mean 1000; above that a rounded
/// normal approximation (clamped at zero) is statistically indistinguishable
/// for this use and O(1).
pub fn counting_draw(rng: &mut impl RngCore, mean: f64) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    if mean > 1000.0 {
        let n = mean + math::sqrt(mean) * standard_normal(rng);
        return if n <= 0.0 { 0 } else { math::round(n) as u64 };
    }
    let mut count = 0u64;
    let mut acc = -math::ln(uniform01(rng));
    while acc < mean {
        count += 1;
        acc -= math::ln(uniform01(rng));
    }
    count
}
