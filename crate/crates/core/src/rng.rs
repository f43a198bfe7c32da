//! Seeded, splittable random streams.
//!
//! A [`SeedSpec`] names one ChaCha8 stream: the 64-bit seed keys the cipher
//! and the stream label selects one of its 2^64 independent streams. Work
//! that is split across threads derives child labels with [`SeedSpec::child`],
//! so the output depends only on how the work is partitioned, never on which
//! worker ran which part.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedSpec {
    pub seed: u64,
    pub stream: u64,
}

// splitmix64 finalizer
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl SeedSpec {
    pub fn new(seed: u64) -> Self {
        Self { seed, stream: 0 }
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    /// Substream `index` below this one (e.g. trial `i`, then pair-block `j`).
    pub fn child(&self, index: u64) -> Self {
        Self {
            seed: self.seed,
            stream: mix(self.stream.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(mix(index))),
        }
    }

    /// Substream for a named purpose, so that e.g. the pair sampler and the
    /// binomial counts of one generator never share randomness.
    pub fn labelled(&self, label: &str) -> Self {
        // FNV-1a over the label
        let h = label
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3));
        self.child(h)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}
