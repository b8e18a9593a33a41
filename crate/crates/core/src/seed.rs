//! Seed derivation.
//!
//! Every random stream in the crate is a ChaCha8 generator keyed by a 64-bit
//! value derived from a user seed and a stream tag. Per-node and
//! per-replicate streams are obtained the same way, so results never depend
//! on the order in which streams are consumed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Tag for the tree-construction stream.
pub const TREE_STREAM: u64 = 0x7472_6565;
/// Tag for the edge-generation stream.
pub const EDGE_STREAM: u64 = 0x6564_6765;
/// Tag for shortest-path source sampling.
pub const SAMPLING_STREAM: u64 = 0x7061_7468;
/// Tag for baseline generators.
pub const BASELINE_STREAM: u64 = 0x6261_7365;

/// One round of the SplitMix64 finalizer.
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent child seed from `seed` and an index or tag.
#[inline]
pub fn derive(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_mul(0xD6E8_FEB8_6659_FD93)))
}

/// ChaCha8 stream for `(seed, tag)`.
pub fn stream(seed: u64, tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive(seed, tag))
}
