//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the search code it is used to check.
#![allow(dead_code)]

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semiaut::{CayleyTable, Magma, Permutation};

pub fn naive_associative(n: usize, t: &[usize]) -> bool {
    (0..n).all(|a| {
        (0..n).all(|b| (0..n).all(|c| t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]]))
    })
}

/// All associative operations on `0..n`, by filtering all `n^(n^2)` tables.
pub fn naive_semigroups(n: usize) -> Vec<CayleyTable> {
    std::iter::repeat_n(0..n, n * n)
        .multi_cartesian_product()
        .filter(|t| naive_associative(n, t))
        .map(|t| CayleyTable::new(Magma::from_entries(n, t).unwrap()).unwrap())
        .collect()
}

/// Every table of order 1..=3 (labelled).
pub fn corpus_up_to_3() -> Vec<CayleyTable> {
    (1..=3).flat_map(naive_semigroups).collect()
}

/// `Aut` by filtering all `n!` permutations with an inline homomorphism test.
pub fn naive_aut(t: &Magma) -> Vec<Permutation> {
    let n = t.order();
    (0..n)
        .permutations(n)
        .filter(|p| (0..n).all(|x| (0..n).all(|y| p[t.mul(x, y)] == t.mul(p[x], p[y]))))
        .map(|p| Permutation::new(p).unwrap())
        .collect()
}

/// `h` as a pairwise relation matrix.
pub fn naive_h(t: &Magma) -> Vec<Vec<bool>> {
    let n = t.order();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| (0..n).all(|x| t.mul(a, x) == t.mul(b, x) && t.mul(x, a) == t.mul(x, b)))
                .collect()
        })
        .collect()
}

pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
