//! Seeded randomness. Every random input is drawn from a ChaCha stream
//! derived from the master seed and a per-sample label, so results do not
//! depend on evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact_linalg::{rat, Rational};

/// Stream for sample `index` of the check family `label`.
pub fn rng_for(seed: u64, label: &str, index: u64) -> ChaCha8Rng {
    // FNV-1a over the label, mixed with seed and index
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    let mixed = h
        ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ index.wrapping_mul(0xd1b5_4a32_d192_ed03).rotate_left(17);
    ChaCha8Rng::seed_from_u64(mixed)
}

/// Small integer in `[-3, 3]`, zero with probability about one half.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    if rng.gen_bool(0.5) {
        rat(0)
    } else {
        let v = rng.gen_range(1..=3);
        if rng.gen_bool(0.5) {
            rat(v)
        } else {
            rat(-v)
        }
    }
}

pub fn small_vector(rng: &mut impl Rng, len: usize) -> Vec<Rational> {
    (0..len).map(|_| small_rational(rng)).collect()
}
