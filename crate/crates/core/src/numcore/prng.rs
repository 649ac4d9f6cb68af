//! Seeded random source.
//!
//! The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`
//! (PCG32 key expansion), both of which are specified bit-for-bit and do not
//! depend on platform or endianness. Reals in `[0, 1)` take the top mantissa
//! bits of one `next_u64` draw each (see [`Scalar::from_unit_bits`]).

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{Scalar, Vector};

#[derive(Clone, Debug)]
pub struct Prng {
    seed: u64,
    rng: ChaCha8Rng,
}

impl Prng {
    pub const ALGORITHM: &'static str = "chacha8-u64";

    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform draw in `[0, 1)`.
    #[inline]
    pub fn next_unit<T: Scalar>(&mut self) -> T {
        T::from_unit_bits(self.next_u64())
    }

    /// Uniform draw in `[lo, hi)`.
    #[inline]
    pub fn next_range<T: Scalar>(&mut self, lo: T, hi: T) -> T {
        lo + (hi - lo) * self.next_unit::<T>()
    }

    /// Bernoulli trial with success probability `p`.
    #[inline]
    pub fn next_bool(&mut self, p: f64) -> bool {
        self.next_unit::<f64>() < p
    }
}

/// `n` independent uniform draws in `[0, 1)`.
pub fn uniform_01<T: Scalar>(prng: &mut Prng, n: usize) -> Vector<T> {
    Vector::from_vec((0..n).map(|_| prng.next_unit()).collect())
}

/// SplitMix64 finaliser, used to derive per-run seeds from coordinates.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
