#![allow(dead_code)]

//! Independent oracles shared by the integration tests. Nothing here calls
//! into the search or lifting code paths.

use std::collections::{BTreeMap, BTreeSet};

/// Definition-level check: the words are exactly the nonzero words of
/// GF(2)^dim and every even-position triple sums to zero.
pub fn naive_is_ternary(dim: u32, words: &[u32]) -> bool {
    let all: BTreeSet<u32> = (1..1u32 << dim).collect();
    let got: BTreeSet<u32> = words.iter().copied().collect();
    if words.len() != all.len() || got != all {
        return false;
    }
    // 1-based i = 2, 4, ..., 2^dim - 2.
    (2..words.len())
        .step_by(2)
        .all(|i| words[i - 2] ^ words[i - 1] ^ words[i] == 0)
}

/// Visits every permutation of `items` (Heap's algorithm).
pub fn for_each_permutation(items: &mut [u32], f: &mut impl FnMut(&[u32])) {
    fn heap(k: usize, a: &mut [u32], f: &mut impl FnMut(&[u32])) {
        if k <= 1 {
            f(a);
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, a, f);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
        heap(k - 1, a, f);
    }
    let n = items.len();
    heap(n, items, f);
}

/// Number of ternary permutations by filtering all `(2^dim - 1)!` orderings.
pub fn naive_count(dim: u32) -> (u64, u64) {
    let mut items: Vec<u32> = (1..1u32 << dim).collect();
    let (mut total, mut good) = (0u64, 0u64);
    for_each_permutation(&mut items, &mut |p| {
        total += 1;
        if naive_is_ternary(dim, p) {
            good += 1;
        }
    });
    (total, good)
}

/// Two-bit modifier values written straight from the construction's table,
/// as (a, b, c, d) at 1-based index `i`.
pub fn table_modifiers(i: usize) -> [u32; 4] {
    match i % 4 {
        1 => [0b00, 0b10, 0b11, 0b01],
        3 => [0b01, 0b10, 0b00, 0b11],
        _ => [0b01, 0b00, 0b11, 0b10],
    }
}

/// Multiset `{v_i a_i, v_i b_i, v_i c_i, v_i d_i} + {z10, z11, z01}`.
pub fn expected_lift_multiset(v: &[u32]) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for (idx, &w) in v.iter().enumerate() {
        for suffix in table_modifiers(idx + 1) {
            *m.entry((w << 2) | suffix).or_insert(0) += 1;
        }
    }
    for splice in [0b10, 0b11, 0b01] {
        *m.entry(splice).or_insert(0) += 1;
    }
    m
}

pub fn multiset(words: &[u32]) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for &w in words {
        *m.entry(w).or_insert(0) += 1;
    }
    m
}

/// Applies the linear map sending basis vector `e_j` to `images[j]`.
pub fn apply_linear(images: &[u32], w: u32) -> u32 {
    images
        .iter()
        .enumerate()
        .filter(|(j, _)| w >> j & 1 == 1)
        .fold(0, |acc, (_, &img)| acc ^ img)
}

/// Whether `images` (one per basis vector) are linearly independent.
pub fn independent(images: &[u32]) -> bool {
    let dim = images.len() as u32;
    (1..1u32 << dim).all(|w| apply_linear(images, w) != 0)
}
