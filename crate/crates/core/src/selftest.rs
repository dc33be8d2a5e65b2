//! Built-in consistency checks run by `groupcode selftest`. Each check
//! compares a library result with an independent computation.

use std::collections::HashSet;
use std::time::Instant;

use itertools::Itertools;
use num_bigint::BigUint;
use rand::seq::IndexedRandom;
use rand::RngExt;
use serde::Serialize;

use crate::code::{distance_unchecked, GroupCode, Word};
use crate::corpus::{indecomposable_pool, rng, scramble, small_groups};
use crate::cyclic::{cyclic_structure, gcd_certificate, interleave, is_cyclic};
use crate::decompose::{decompose_group, indecomposability_certificate, is_decomposable, split_test, Category, DecomposeOptions};
use crate::error::Result;
use crate::fixtures::{even_weight_3, hamming74, repetition, z, z4_example, INTERLEAVE_ROWS};
use crate::group::Elem;
use crate::isometry::{enumerate_isometries, factorial};
use crate::isomorphy::{aut_group, aut_group_with_decomposition, gc_isomorphic, SearchOptions};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: f64,
}

type Check = fn(u64) -> Result<(bool, String)>;

const CHECKS: [(&str, Check); 8] = [
    ("projection-products", projection_products),
    ("interleaving-table", interleaving_table),
    ("isometries-are-monomial", isometries_are_monomial),
    ("certificates-vs-search", certificates_vs_search),
    ("random-sums-decompose", random_sums_decompose),
    ("automorphism-orders", automorphism_orders),
    ("cyclic-structure", cyclic_checks),
    ("decomposable-iff-split", decomposable_iff_split),
];

pub fn run(seed: u64) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|(name, check)| {
            let start = Instant::now();
            let (passed, detail) = match check(seed) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckResult {
                name,
                passed,
                detail,
                millis: start.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect()
}

fn projection_products(_: u64) -> Result<(bool, String)> {
    let c = z4_example();
    let products: Vec<usize> = (0..3)
        .map(|i| {
            let rest: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            c.projection_size(&[i]) * c.projection_size(&rest)
        })
        .collect();
    let indecomposable = is_decomposable(&c)?.is_none();
    Ok((
        products == [16, 16, 16] && c.len() == 8 && indecomposable,
        format!("products {products:?}, |C| = {}", c.len()),
    ))
}

fn interleaving_table(_: u64) -> Result<(bool, String)> {
    let out = interleave(&even_weight_3(), 2)?;
    let expected: HashSet<(Word, Word)> = INTERLEAVE_ROWS
        .iter()
        .map(|(x, y)| (Word::new(x.to_vec()), Word::new(y.to_vec())))
        .collect();
    let got: HashSet<(Word, Word)> = out.rows.iter().cloned().collect();
    Ok((
        got == expected && out.sigma.to_one_based() == [1, 3, 5, 2, 4, 6] && is_cyclic(&out.code),
        format!("{} rows, sigma {:?}", out.rows.len(), out.sigma.to_one_based()),
    ))
}

/// Every distance-preserving bijection of `(Z/2)^n`, found by brute force,
/// appears in the monomial enumeration.
fn isometries_are_monomial(_: u64) -> Result<(bool, String)> {
    let mut counts = Vec::new();
    let mut ok = true;
    for n in 2..=3usize {
        let space: Vec<Vec<Elem>> = (0..n).map(|_| 0..2 as Elem).multi_cartesian_product().collect();
        let monomial: HashSet<Vec<Vec<Elem>>> = enumerate_isometries(2, n)?
            .map(|phi| space.iter().map(|x| phi.apply_pull(x).expect("length n").into_symbols()).collect())
            .collect();
        let mut found = 0;
        for perm in (0..space.len()).permutations(space.len()) {
            let preserves = (0..space.len()).all(|a| {
                (a + 1..space.len()).all(|b| distance_unchecked(&space[a], &space[b]) == distance_unchecked(&space[perm[a]], &space[perm[b]]))
            });
            if preserves {
                found += 1;
                let image: Vec<Vec<Elem>> = perm.iter().map(|&i| space[i].clone()).collect();
                ok &= monomial.contains(&image);
            }
        }
        ok &= found == monomial.len();
        counts.push(found);
    }
    Ok((ok && counts == [8, 48], format!("isometry counts {counts:?}")))
}

fn certificates_vs_search(_: u64) -> Result<(bool, String)> {
    let mut corpus: Vec<GroupCode> = [3, 5, 7, 9].into_iter().map(repetition).collect();
    corpus.push(hamming74());
    corpus.push(even_weight_3());
    let mut checked = 0;
    for c in &corpus {
        if indecomposability_certificate(c, Category::Group).is_some() {
            checked += 1;
            if is_decomposable(c)?.is_some() {
                return Ok((false, format!("certified code of length {} splits", c.length())));
            }
        }
    }
    Ok((checked == corpus.len(), format!("{checked} certified codes confirmed")))
}

fn random_sums_decompose(seed: u64) -> Result<(bool, String)> {
    let mut r = rng(seed);
    let groups = small_groups();
    let pools = indecomposable_pool(&mut r, &groups, 4, 3, 16)?;
    let search = SearchOptions::default();
    let trials = 20;
    for t in 0..trials {
        let gi = r.random_range(0..groups.len());
        let pool = &pools[gi];
        let mut counts = vec![0usize; pool.len()];
        let mut parts = Vec::new();
        let (mut len, mut size) = (0, 1usize);
        for _ in 0..r.random_range(2..=4) {
            let k = r.random_range(0..pool.len());
            let p = &pool[k];
            if len + p.length() > 12 || size * p.len() > 4096 {
                continue;
            }
            len += p.length();
            size *= p.len();
            counts[k] += 1;
            parts.push(p.clone());
        }
        let sum = parts
            .iter()
            .skip(1)
            .try_fold(parts[0].clone(), |acc, p| acc.direct_sum(p))?;
        let (scrambled, _) = scramble(&mut r, &sum);
        let dec = decompose_group(&scrambled)?;
        let mut found = vec![0usize; pool.len()];
        for iso in &dec.isotypes {
            let rep = GroupCode::trusted(dec.components[iso.representative].clone());
            let k = pool.iter().position(|p| matches!(gc_isomorphic(p, &rep, &search), Ok(Some(_))));
            match k {
                Some(k) => found[k] += iso.multiplicity(),
                None => return Ok((false, format!("trial {t}: component matches no pool code"))),
            }
        }
        if found != counts {
            return Ok((false, format!("trial {t}: multiplicities {found:?}, built {counts:?}")));
        }
    }
    Ok((true, format!("{trials} scrambled sums recovered")))
}

fn automorphism_orders(_: u64) -> Result<(bool, String)> {
    let search = SearchOptions::default();
    for g in small_groups() {
        let aut = g.automorphisms()?.len();
        for n in 1..=3usize {
            let c = GroupCode::full_space(g.clone(), n)?;
            let order = aut_group(&c, &search)?.order;
            if order != Some(BigUint::from(aut).pow(n as u32) * factorial(n)) {
                return Ok((false, format!("{}^{n}: order {order:?}", g.label())));
            }
        }
    }
    let sum = even_weight_3().power(2)?.direct_sum(&repetition(2))?;
    let dec = decompose_group(&sum)?;
    let r = aut_group_with_decomposition(&sum, &dec, &search)?;
    Ok((
        r.order == Some(BigUint::from(144u32)),
        format!("order of D^2 + R2 is {}", r.order.map(|o| o.to_string()).unwrap_or_default()),
    ))
}

fn cyclic_checks(_: u64) -> Result<(bool, String)> {
    let opts = DecomposeOptions::default();
    let inter = interleave(&even_weight_3(), 3)?;
    let s = cyclic_structure(&inter.code, &opts)?;
    if s.alpha != 3 {
        return Ok((false, format!("interleaved D^3 has alpha {}", s.alpha)));
    }
    // A certificate must never sit on a decomposable code.
    let mut certified = 0;
    for c in [even_weight_3(), repetition(5), GroupCode::generate(z(3), 4, &[Word::new(vec![1, 1, 1, 1])])?, inter.code.clone()] {
        if gcd_certificate(&c).is_some() {
            certified += 1;
            if is_decomposable(&c)?.is_some() {
                return Ok((false, format!("certificate on a decomposable code of length {}", c.length())));
            }
        }
    }
    // No certificate for (Z/2)^3 (xi = 3 = n), which is cyclic and splits
    // into three copies of Z/2.
    let full = GroupCode::full_space(z(2), 3)?;
    let s = cyclic_structure(&full, &opts)?;
    Ok((
        certified == 3 && gcd_certificate(&full).is_none() && s.alpha == 3,
        format!("{certified} certified codes indecomposable; (Z/2)^3 splits into {} cyclic components", s.alpha),
    ))
}

fn decomposable_iff_split(seed: u64) -> Result<(bool, String)> {
    let mut r = rng(seed ^ 0x5eed);
    let mut checked = 0;
    for _ in 0..40 {
        let g = small_groups().choose(&mut r).expect("non-empty").clone();
        let n = r.random_range(2..=5);
        let k = r.random_range(1..=3);
        let c = crate::corpus::random_group_code(&mut r, &g, n, k);
        let exists = (1..n).any(|k| {
            (1..n).combinations(k - 1).any(|rest| {
                let j: Vec<usize> = std::iter::once(0).chain(rest).collect();
                split_test(&c, &j).expect("valid set")
            })
        });
        if exists != is_decomposable(&c)?.is_some() {
            return Ok((false, format!("disagreement on a code of length {n}")));
        }
        checked += 1;
    }
    Ok((true, format!("{checked} random codes")))
}
