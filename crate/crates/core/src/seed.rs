//! Seed derivation. Every random stream is a ChaCha8 generator keyed by the
//! user seed mixed with a tag naming its purpose, so independent parts of a
//! construction never share a stream.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// FNV-1a hash of the tag.
pub fn tag_hash(tag: &str) -> u64 {
    tag.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `splitmix64(seed ^ fnv1a(tag))`.
pub fn derive(seed: u64, tag: &str) -> u64 {
    splitmix64(seed ^ tag_hash(tag))
}

pub fn rng(seed: u64, tag: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive(seed, tag))
}
