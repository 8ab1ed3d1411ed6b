//! Deterministic sampler used for random sections.
//!
//! The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`,
//! which is specified bit-for-bit and independent of platform and word size.
//! Bounded draws use rejection on raw 64-bit outputs, so every value of
//! `0..n` has probability exactly `1/n`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// A uniform draw from `0..n`.
    pub fn below(&mut self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::EmptyRange);
        }
        // Largest multiple of n that fits in 2^64; draws at or above it are rejected.
        let zone = (1u128 << 64) - ((1u128 << 64) % n as u128);
        loop {
            let x = self.inner.next_u64() as u128;
            if x < zone {
                return Ok((x % n as u128) as u64);
            }
        }
    }

    pub fn index(&mut self, n: usize) -> Result<usize> {
        self.below(n as u64).map(|x| x as usize)
    }

    /// A fair coin.
    pub fn coin(&mut self) -> bool {
        self.inner.next_u64() >> 63 == 1
    }
}

/// Seeded sampler; see [`SeededRng`].
pub fn seeded_rng(seed: u64) -> SeededRng {
    SeededRng::new(seed)
}
