//! Seedable, counter-based random streams.
//!
//! Every trial of an experiment owns a stream identified by
//! `(master_seed, stream_id)`. Streams are ChaCha8 key/nonce pairs, so two
//! trials never share state and the output of a trial does not depend on
//! which worker thread ran it.

use rand::{Error as RandError, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random number generator handle passed explicitly to every sampler.
#[derive(Debug, Clone)]
pub struct Rng {
    inner: ChaCha8Rng,
}

impl Rng {
    /// Stream 0 of `seed`.
    pub fn seed_from_u64(seed: u64) -> Self {
        Self::stream(seed, 0)
    }

    /// Independent stream `stream_id` under `master_seed`.
    pub fn stream(master_seed: u64, stream_id: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(master_seed);
        inner.set_stream(stream_id);
        Self { inner }
    }

    /// A child stream keyed by `parts`, for nested grids
    /// (parameter point, trial, ensemble, ...).
    pub fn derive(master_seed: u64, parts: &[u64]) -> Self {
        Self::stream(master_seed, stream_id(parts))
    }
}

/// Mixes a tuple of indices into a single 64-bit stream id (splitmix64 chain).
pub fn stream_id(parts: &[u64]) -> u64 {
    let mut h = 0x243f_6a88_85a3_08d3_u64;
    for &p in parts {
        h = splitmix64(h ^ p);
    }
    h
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngCore for Rng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), RandError> {
        self.inner.try_fill_bytes(dest)
    }
}
