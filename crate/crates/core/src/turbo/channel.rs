//! BPSK over additive white Gaussian noise.

use rand::Rng;
use rand_distr::StandardNormal;

/// Channel LLR magnitude used when `Eb/N0` is infinite.
pub const NOISELESS_LLR: f64 = 64.0;

/// Noise variance `1 / (2 · rate · 10^(Eb/N0 / 10))` for unit-energy symbols.
pub fn noise_variance(ebn0_db: f64, rate: f64) -> f64 {
    1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0))
}

/// Maps bit `b` to `1 − 2b`, adds noise and returns the LLRs `2y/σ²`
/// (positive favours 0). An infinite `ebn0_db` gives noiseless LLRs of
/// magnitude [`NOISELESS_LLR`] and consumes no randomness.
pub fn channel<R: Rng + ?Sized>(bits: &[u8], ebn0_db: f64, rate: f64, rng: &mut R) -> Vec<f64> {
    assert!(rate > 0.0, "code rate must be positive");
    if ebn0_db == f64::INFINITY {
        return bits
            .iter()
            .map(|&b| if b == 0 { NOISELESS_LLR } else { -NOISELESS_LLR })
            .collect();
    }
    let var = noise_variance(ebn0_db, rate);
    let sigma = var.sqrt();
    bits.iter()
        .map(|&b| {
            let x = 1.0 - 2.0 * f64::from(b);
            let n: f64 = rng.sample(StandardNormal);
            2.0 * (x + sigma * n) / var
        })
        .collect()
}
