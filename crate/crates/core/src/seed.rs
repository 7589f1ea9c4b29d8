//! Per-stage seed derivation.
//!
//! Every random stream in the pipeline is seeded from the single top-level
//! seed combined with a stage name, so running a stage on its own reproduces
//! exactly what it does inside a full run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// `u64` seed for `stage`: the first eight bytes (little endian) of
/// SHA-256(seed as 8 LE bytes || stage as UTF-8).
pub fn derive_seed(seed: u64, stage: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(stage.as_bytes());
    let digest = h.finalize();
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(bytes)
}

pub fn stage_rng(seed: u64, stage: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, stage))
}
