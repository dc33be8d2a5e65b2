//! Seeded generators for random group codes, scrambled copies and pools of
//! indecomposable codes. Used by `selftest` and the test suites.

use std::sync::Arc;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{GroupCode, Word};
use crate::decompose::{decompose_with, Category, DecomposeOptions};
use crate::error::Result;
use crate::fixtures::{klein_four, z};
use crate::group::{Elem, FiniteGroup};
use crate::isometry::{Configuration, Equivalence, Isometry};
use crate::isomorphy::{gc_isomorphic, SearchOptions};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The groups of order at most 4.
pub fn small_groups() -> Vec<Arc<FiniteGroup>> {
    vec![z(2), z(3), z(4), klein_four()]
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, q: usize, n: usize) -> Word {
    Word::new((0..n).map(|_| rng.random_range(0..q as Elem)).collect())
}

/// Subgroup of `G^n` generated by `generators` random words.
pub fn random_group_code<R: Rng + ?Sized>(rng: &mut R, g: &Arc<FiniteGroup>, n: usize, generators: usize) -> GroupCode {
    let gens: Vec<Word> = (0..generators).map(|_| random_word(rng, g.order(), n)).collect();
    GroupCode::generate(g.clone(), n, &gens).expect("random words are valid")
}

/// A random `σ` combined with a random automorphism of `G` on every
/// coordinate. Such isometries map group codes to group codes.
pub fn random_group_isometry<R: Rng + ?Sized>(rng: &mut R, g: &FiniteGroup, n: usize) -> Isometry {
    let auts = g.automorphisms().expect("small alphabet");
    let mut sigma: Vec<usize> = (0..n).collect();
    sigma.shuffle(rng);
    let maps = (0..n)
        .map(|_| auts.choose(rng).expect("identity is an automorphism").mapping.clone())
        .collect();
    Isometry::new(
        Configuration::new(maps, g.order()).expect("automorphisms are bijections"),
        Equivalence::new(sigma).expect("shuffled permutation"),
    )
    .expect("matching lengths")
}

pub fn scramble<R: Rng + ?Sized>(rng: &mut R, c: &GroupCode) -> (GroupCode, Isometry) {
    let phi = random_group_isometry(rng, c.alphabet(), c.length());
    let image = phi.apply_to_code(c).expect("matching lengths");
    (GroupCode::trusted(image), phi)
}

/// Up to `per_group` pairwise non-isomorphic indecomposable codes for each
/// group, of lengths `1..=max_len` and at most `max_size` words.
pub fn indecomposable_pool<R: Rng + ?Sized>(
    rng: &mut R,
    groups: &[Arc<FiniteGroup>],
    per_group: usize,
    max_len: usize,
    max_size: usize,
) -> Result<Vec<Vec<GroupCode>>> {
    let opts = DecomposeOptions::default();
    let search = SearchOptions::default();
    let mut pools = Vec::new();
    for g in groups {
        let mut pool: Vec<GroupCode> = Vec::new();
        let mut attempts = 0;
        while pool.len() < per_group && attempts < 200 * per_group {
            attempts += 1;
            let n = rng.random_range(1..=max_len);
            let k = rng.random_range(1..=2);
            let c = random_group_code(rng, g, n, k);
            if c.len() > max_size || c.len() == 1 {
                continue;
            }
            if !decompose_with(&c, Category::Group, &opts)?.is_indecomposable() {
                continue;
            }
            let mut fresh = true;
            for p in &pool {
                if gc_isomorphic(p, &c, &search)?.is_some() {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                pool.push(c);
            }
        }
        pools.push(pool);
    }
    Ok(pools)
}
