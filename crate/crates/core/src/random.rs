//! Seeded generators for randomized checks. Streams are reproducible across
//! platforms for a given seed.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::multiset::enumerate;
use crate::numap::{Basis, Table};
use crate::ring::{Int, NumAlgebra};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_int(rng: &mut ChaCha8Rng, range: RangeInclusive<i64>) -> Int {
    Int::from(rng.gen_range(range))
}

pub fn random_vector(rng: &mut ChaCha8Rng, k: usize, range: RangeInclusive<i64>) -> Vec<Int> {
    (0..k).map(|_| random_int(rng, range.clone())).collect()
}

/// A table over every |X| ≤ n with entries from `range`; roughly a quarter of
/// the keys are left at zero so degrees and supports vary.
pub fn random_table<B: Basis>(
    rng: &mut ChaCha8Rng,
    k: usize,
    m: usize,
    n: usize,
    range: RangeInclusive<i64>,
) -> Table<B> {
    let mut t = Table::new(k, m, n);
    for x in enumerate(k, n) {
        if rng.gen_range(0..4) == 0 {
            continue;
        }
        let v = random_vector(rng, m, range.clone());
        t.insert(x, v).expect("keys come from enumerate(k, n)");
    }
    t
}

/// Algebras that can draw random elements.
pub trait RandomElem: NumAlgebra {
    fn random_elem(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
}
