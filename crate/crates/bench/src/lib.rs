//! Shared inputs for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kstar_core::{BitString, GeneratorSpec};

pub fn random_bits(len: usize, seed: u64) -> BitString {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.random::<bool>()).collect()
}

/// A low-complexity string: `period` random bits repeated to `len`.
pub fn periodic_bits(len: usize, period: usize, seed: u64) -> BitString {
    let unit = random_bits(period, seed);
    (0..len)
        .map(|i| unit.get(i % period).unwrap_or(false))
        .collect()
}

pub fn oatmeal_fixture(slots: usize) -> GeneratorSpec {
    let parts = (0..4).map(|s| random_bits(32, s)).collect();
    GeneratorSpec::oatmeal(parts, slots).expect("distinct random parts")
}
