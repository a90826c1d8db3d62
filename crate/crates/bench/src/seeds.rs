//! Per-cell seed derivation.

use sha2::{Digest, Sha256};

/// Seed of one run: the first eight bytes of SHA-256 over
/// `master/problem/m/stream/run`. `stream` is a DM id, or a fixed label for
/// runs that do not depend on a DM.
pub fn cell_seed(master: u64, problem: &str, m: usize, stream: &str, run: usize) -> u64 {
    let digest = Sha256::digest(format!("{master}/{problem}/{m}/{stream}/{run}").as_bytes());
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(bytes)
}
