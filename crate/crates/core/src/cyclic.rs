//! Cyclic codes: shift invariance, interleaving, component structure and
//! the coprimality criterion for indecomposability.

use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use crate::code::{Code, GroupCode, Word};
use crate::decompose::{decompose_with, Category, DecomposeOptions};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::isometry::Equivalence;
use crate::isomorphy::gc_isomorphic;

/// `(x_1, …, x_n) ↦ (x_n, x_1, …, x_{n-1})`.
pub fn rotate_right(x: &[Elem]) -> Word {
    let n = x.len();
    Word::new((0..n).map(|j| x[(j + n - 1) % n]).collect())
}

/// Invariance under the right cyclic shift.
pub fn is_cyclic(code: &Code) -> bool {
    code.words().iter().all(|w| code.contains(&rotate_right(w)))
}

/// Orbit sizes of the shift acting on the codewords, listed in order of the
/// least word of each orbit. Empty when the code is not cyclic.
pub fn shift_orbit_sizes(code: &Code) -> Vec<usize> {
    if !is_cyclic(code) {
        return Vec::new();
    }
    let mut seen = vec![false; code.len()];
    let mut sizes = Vec::new();
    for start in 0..code.len() {
        if seen[start] {
            continue;
        }
        let mut w = code.words()[start].clone();
        let mut size = 0;
        loop {
            let idx = code.words().binary_search(&w).expect("cyclic code is shift-closed");
            if seen[idx] {
                break;
            }
            seen[idx] = true;
            size += 1;
            w = rotate_right(&w);
        }
        sizes.push(size);
    }
    sizes
}

/// The coordinate permutation interleaving `copies` words of length `m`:
/// position `s·m + r` (1-based `r`) goes to `(r-1)·copies + s + 1`.
/// Returned 0-based, acting by the push convention.
pub fn interleave_permutation(m: usize, copies: usize) -> Equivalence {
    let mut sigma = vec![0; m * copies];
    for s in 0..copies {
        for r in 0..m {
            sigma[s * m + r] = r * copies + s;
        }
    }
    Equivalence::new(sigma).expect("interleaving is a permutation")
}

#[derive(Clone, Debug)]
pub struct Interleaving {
    pub sigma: Equivalence,
    pub code: GroupCode,
    /// Each word of `D^copies` (sorted) with its interleaved image.
    pub rows: Vec<(Word, Word)>,
}

/// Interleaves `copies` copies of a cyclic group code into one cyclic code
/// of length `copies · m`.
pub fn interleave(d: &GroupCode, copies: usize) -> Result<Interleaving> {
    if copies == 0 {
        return Err(Error::InvalidInput("at least one copy is required".into()));
    }
    if !is_cyclic(d) {
        return Err(Error::Precondition("interleaving needs a cyclic code".into()));
    }
    let sigma = interleave_permutation(d.length(), copies);
    let sum = d.power(copies)?;
    let rows: Vec<(Word, Word)> = sum
        .words()
        .iter()
        .map(|w| Ok((w.clone(), sigma.apply_push(w)?)))
        .collect::<Result<_>>()?;
    let code = Code::new(d.alphabet().clone(), sum.length(), rows.iter().map(|(_, y)| y.clone()).collect())?;
    if !is_cyclic(&code) {
        return Err(Error::TheoremViolation("interleaved code is not cyclic".into()));
    }
    Ok(Interleaving {
        sigma,
        code: GroupCode::trusted(code),
        rows,
    })
}

/// Components of a cyclic group code: all isomorphic to one cyclic
/// indecomposable `D`, with `C ≅ D^alpha`.
#[derive(Clone, Debug)]
pub struct ComponentStructure {
    pub representative: GroupCode,
    pub alpha: usize,
    /// 0-based blocks of the finest product partition.
    pub blocks: Vec<Vec<usize>>,
}

pub fn cyclic_structure(c: &GroupCode, opts: &DecomposeOptions) -> Result<ComponentStructure> {
    if !is_cyclic(c) {
        return Err(Error::Precondition("component structure needs a cyclic code".into()));
    }
    let dec = decompose_with(c, Category::Group, opts)?;
    let components = dec.group_components();
    let first = &components[0];
    for (k, comp) in components.iter().enumerate() {
        if !is_cyclic(comp) {
            return Err(Error::TheoremViolation(format!("component {} is not cyclic", k + 1)));
        }
        if k > 0 && gc_isomorphic(first, comp, &opts.search)?.is_none() {
            return Err(Error::TheoremViolation(format!("component {} differs from component 1", k + 1)));
        }
    }
    Ok(ComponentStructure {
        representative: first.clone(),
        alpha: components.len(),
        blocks: dec.blocks,
    })
}

/// Prime factorisation by trial division, as `(p, e)` pairs.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// `gcd` of the prime exponents of `m`; `0` for `m = 1`.
pub fn exponent_gcd(m: u64) -> u64 {
    factorize(m).into_iter().fold(0, |g, (_, e)| gcd(g, e as u64))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `gcd(xi, n) = 1`, where `xi` is the gcd of the prime exponents of
/// `|C|`. For a cyclic group code this forces indecomposability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GcdCertificate {
    pub xi: u64,
    pub length: usize,
}

/// The exponent-gcd certificate; present only for cyclic codes with
/// `gcd(xi, n) = 1`. Absence says nothing about decomposability.
pub fn gcd_certificate(c: &GroupCode) -> Option<GcdCertificate> {
    if !is_cyclic(c) {
        return None;
    }
    let xi = exponent_gcd(c.len() as u64);
    (gcd(xi, c.length() as u64) == 1).then_some(GcdCertificate { xi, length: c.length() })
}

/// The code over `G_1 × … × G_m` whose words are the coordinatewise tuples
/// of words from each input. All inputs must be cyclic of one length.
pub fn join(codes: &[GroupCode]) -> Result<GroupCode> {
    let Some(first) = codes.first() else {
        return Err(Error::InvalidInput("join needs at least one code".into()));
    };
    let n = first.length();
    for c in codes {
        if c.length() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: c.length(),
            });
        }
        if !is_cyclic(c) {
            return Err(Error::Precondition("join needs cyclic codes".into()));
        }
    }
    let factors: Vec<FiniteGroup> = codes.iter().map(|c| (**c.alphabet()).clone()).collect();
    let product = Arc::new(FiniteGroup::product(&factors)?);
    let radices: Vec<usize> = codes.iter().map(|c| c.q()).collect();
    let words = codes
        .iter()
        .map(|c| c.words().iter())
        .multi_cartesian_product()
        .map(|tuple| {
            Word::new(
                (0..n)
                    .map(|t| {
                        tuple
                            .iter()
                            .zip(&radices)
                            .fold(0usize, |acc, (w, &r)| acc * r + w[t] as usize) as Elem
                    })
                    .collect(),
            )
        })
        .collect();
    let joined = Code::new(product, n, words)?;
    if !is_cyclic(&joined) {
        return Err(Error::TheoremViolation("join of cyclic codes is not cyclic".into()));
    }
    Ok(GroupCode::trusted(joined))
}
