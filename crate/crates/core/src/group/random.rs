//! Seeded randomness. Every random stream is a ChaCha8 generator whose seed
//! is derived from a user seed plus a stream tag, so independent stages never
//! share state and results are reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Perm;

pub type StreamRng = ChaCha8Rng;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a sub-seed from a seed, a stream tag and an index.
pub fn derive_seed(seed: u64, tag: &str, index: u64) -> u64 {
    let mut h = splitmix(seed);
    for b in tag.bytes() {
        h = splitmix(h ^ b as u64);
    }
    splitmix(h ^ splitmix(index.wrapping_add(0x5851_F42D_4C95_7F2D)))
}

pub fn stream(seed: u64, tag: &str, index: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, tag, index))
}

const SLOTS: usize = 10;
const BURN_IN: usize = 50;

/// Product-replacement random walk with an accumulator ("rattle").
pub struct ProductReplacement {
    slots: Vec<Perm>,
    acc: Perm,
    rng: StreamRng,
}

impl ProductReplacement {
    pub fn new(degree: usize, gens: &[Perm], rng: StreamRng) -> ProductReplacement {
        let nontrivial: Vec<&Perm> = gens.iter().filter(|g| !g.is_identity()).collect();
        let slots: Vec<Perm> = if nontrivial.is_empty() {
            vec![Perm::identity(degree); SLOTS]
        } else {
            (0..SLOTS.max(nontrivial.len()))
                .map(|i| nontrivial[i % nontrivial.len()].clone())
                .collect()
        };
        let mut pr = ProductReplacement { slots, acc: Perm::identity(degree), rng };
        for _ in 0..BURN_IN {
            pr.step();
        }
        pr
    }

    fn step(&mut self) {
        let n = self.slots.len();
        let i = self.rng.random_range(0..n);
        let mut j = self.rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let invert = self.rng.random_bool(0.5);
        let left = self.rng.random_bool(0.5);
        let other = if invert { self.slots[j].inverse() } else { self.slots[j].clone() };
        let cur = &self.slots[i];
        self.slots[i] = if left { other.mul(cur) } else { cur.mul(&other) };
        self.acc.mul_assign(&self.slots[i]);
    }

    /// Advances the walk and returns the accumulator.
    pub fn next_element(&mut self) -> Perm {
        self.step();
        self.acc.clone()
    }

    pub fn rng(&mut self) -> &mut StreamRng {
        &mut self.rng
    }
}
