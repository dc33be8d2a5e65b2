//! Structural predicates: trivial, degenerate, MDS, perfect, constant weight.
//!
//! All cardinality comparisons are exact integer arithmetic on `|C|` and
//! `q`; the real-valued dimension is never consulted.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::code::{distance_unchecked, Code, GroupCode, Word};
use crate::error::{Error, Result};
use crate::group::Elem;

/// Default cap on `q^n` for the exhaustive constant-weight center search.
pub const DEFAULT_CENTER_SEARCH_CAP: u64 = 1 << 20;

/// Default cap on `q^n` for covering-enumeration oracles.
pub const DEFAULT_COVERING_CAP: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantWeight {
    pub center: Word,
    pub radius: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub is_trivial: bool,
    pub is_degenerate: bool,
    /// 1-based.
    pub degenerate_coordinates: Vec<usize>,
    pub is_mds: bool,
    pub is_perfect: bool,
    pub constant_weight: Option<ConstantWeight>,
    pub correction_capacity: usize,
}

/// `Σ_{i<=r} C(n,i)(q-1)^i`; `r > n` clamps to `q^n`.
pub fn ball_size(q: usize, n: usize, r: usize) -> BigUint {
    let r = r.min(n);
    let mut total = BigUint::zero();
    let mut binom = BigUint::one();
    let mut power = BigUint::one();
    let qm1 = BigUint::from(q.saturating_sub(1));
    for i in 0..=r {
        if i > 0 {
            binom = binom * BigUint::from(n - i + 1) / BigUint::from(i);
            power *= &qm1;
        }
        total += &binom * &power;
    }
    total
}

pub(crate) fn space_size(q: usize, n: usize) -> BigUint {
    BigUint::from(q).pow(n as u32)
}

/// `C ≅ A^n`, which for codes in `A^n` means `|C| = q^n`.
pub fn is_trivial(code: &Code) -> bool {
    BigUint::from(code.len()) == space_size(code.q(), code.length())
}

/// Constant coordinates (1-based); degenerate iff the list is non-empty.
pub fn is_degenerate(code: &Code) -> (bool, Vec<usize>) {
    let first = &code.words()[0];
    let coords: Vec<usize> = (0..code.length())
        .filter(|&i| code.words().iter().all(|w| w[i] == first[i]))
        .map(|i| i + 1)
        .collect();
    (!coords.is_empty(), coords)
}

/// `|C| = q^(n-d+1)`. Single-word codes are never MDS.
pub fn is_mds(code: &Code) -> bool {
    if code.len() < 2 {
        return false;
    }
    let d = code.min_distance();
    BigUint::from(code.len()) == space_size(code.q(), code.length() - d + 1)
}

/// Sphere-packing equality `|C| · |B_e| = q^n` with `e = ⌊(d-1)/2⌋`.
pub fn is_perfect(code: &Code) -> bool {
    let e = (code.min_distance() - 1) / 2;
    BigUint::from(code.len()) * ball_size(code.q(), code.length(), e) == space_size(code.q(), code.length())
}

/// Covering oracle: every word of `A^n` lies in exactly one radius-`e` ball.
pub fn is_perfect_by_covering(code: &Code, cap: u64) -> Result<bool> {
    let (q, n) = (code.q(), code.length());
    if space_size(q, n) > BigUint::from(cap) {
        return Err(Error::resource(format!("covering enumeration of {q}^{n} words"), cap));
    }
    let e = (code.min_distance() - 1) / 2;
    for x in (0..n).map(|_| 0..q as Elem).multi_cartesian_product() {
        let hits = code.words().iter().filter(|c| distance_unchecked(c, &x) <= e).count();
        if hits != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Common weight `r > 0` of every non-identity codeword, if any.
pub fn constant_weight_group(code: &GroupCode) -> Option<usize> {
    let e = code.identity_word();
    let mut weights = code.words().iter().filter(|w| **w != e).map(|w| distance_unchecked(w, &e));
    let r = weights.next()?;
    weights.all(|w| w == r).then_some(r)
}

/// A center `x0` with all codewords at one distance `r` from it. Centers are
/// tried in lexicographic order, from `candidates` when given, else all of
/// `A^n` (subject to `cap`).
pub fn constant_weight_general(code: &Code, candidates: Option<&[Word]>, cap: u64) -> Result<Option<ConstantWeight>> {
    if code.len() == 1 {
        return Ok(Some(ConstantWeight {
            center: code.words()[0].clone(),
            radius: 0,
        }));
    }
    let check = |x: &[Elem]| {
        let r = distance_unchecked(&code.words()[0], x);
        code.words()[1..]
            .iter()
            .all(|w| distance_unchecked(w, x) == r)
            .then(|| ConstantWeight {
                center: Word::new(x.to_vec()),
                radius: r,
            })
    };
    if let Some(cands) = candidates {
        let mut sorted: Vec<&Word> = cands.iter().collect();
        sorted.sort();
        return Ok(sorted.into_iter().find_map(|x| check(x)));
    }
    let (q, n) = (code.q(), code.length());
    if space_size(q, n) > BigUint::from(cap) {
        return Err(Error::resource(format!("constant-weight center search over {q}^{n} words"), cap));
    }
    Ok((0..n).map(|_| 0..q as Elem).multi_cartesian_product().find_map(|x| check(&x)))
}

/// Classification of a plain code. The constant-weight entry comes from the
/// exhaustive center search.
pub fn classify(code: &Code) -> Result<Classification> {
    let cw = constant_weight_general(code, None, DEFAULT_CENTER_SEARCH_CAP)?;
    Ok(classification_from(code, cw))
}

/// Classification of a group code; constant weight is relative to the
/// identity word.
pub fn classify_group(code: &GroupCode) -> Classification {
    let cw = constant_weight_group(code).map(|radius| ConstantWeight {
        center: code.identity_word(),
        radius,
    });
    classification_from(code, cw)
}

/// Classification with a constant-weight result computed elsewhere.
pub fn classification_from(code: &Code, constant_weight: Option<ConstantWeight>) -> Classification {
    let (is_degenerate, degenerate_coordinates) = is_degenerate(code);
    Classification {
        is_trivial: is_trivial(code),
        is_degenerate,
        degenerate_coordinates,
        is_mds: is_mds(code),
        is_perfect: is_perfect(code),
        constant_weight,
        correction_capacity: (code.min_distance() - 1) / 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use std::sync::Arc;

    fn z(m: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(m).unwrap())
    }

    fn code(q: usize, ws: &[&[Elem]]) -> Code {
        Code::new(z(q), ws[0].len(), ws.iter().map(|w| Word::new(w.to_vec())).collect()).unwrap()
    }

    #[test]
    fn balls() {
        assert_eq!(ball_size(5, 4, 0), BigUint::from(1u32));
        assert_eq!(ball_size(2, 7, 1), BigUint::from(8u32));
        assert_eq!(ball_size(2, 3, 1), BigUint::from(4u32));
        assert_eq!(ball_size(3, 2, 9), BigUint::from(9u32));
        // Brute-force count of B_2 in (Z/3)^4 around the origin.
        let brute = (0..4).map(|_| 0..3u32).multi_cartesian_product().filter(|x| x.iter().filter(|&&s| s != 0).count() <= 2).count();
        assert_eq!(ball_size(3, 4, 2), BigUint::from(brute));
    }

    #[test]
    fn triviality() {
        assert!(is_trivial(&Code::full_space(z(2), 2).unwrap()));
        assert!(!is_trivial(&code(2, &[&[0, 0, 0], &[1, 1, 1]])));
        assert!(!is_trivial(&crate::fixtures::z4_example()));
    }

    #[test]
    fn degeneracy() {
        assert_eq!(is_degenerate(&code(2, &[&[0, 0], &[0, 1]])), (true, vec![1]));
        assert_eq!(is_degenerate(&crate::fixtures::z4_example()), (false, vec![]));
        assert_eq!(is_degenerate(&Code::full_space(z(3), 3).unwrap()), (false, vec![]));
    }

    #[test]
    fn mds() {
        assert!(is_mds(&code(2, &[&[0, 0, 0], &[1, 1, 1]])));
        assert!(is_mds(&Code::full_space(z(3), 2).unwrap()));
        assert!(is_mds(&code(2, &[&[0, 0, 0], &[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])));
        assert!(!is_mds(&code(2, &[&[0, 1, 0]])));
        assert!(!is_mds(&crate::fixtures::z4_example()));
    }

    #[test]
    fn perfect() {
        let rep = code(2, &[&[0, 0, 0], &[1, 1, 1]]);
        assert!(is_perfect(&rep));
        assert!(is_perfect_by_covering(&rep, DEFAULT_COVERING_CAP).unwrap());
        let h = crate::fixtures::hamming74();
        assert!(is_perfect(&h));
        assert!(is_perfect_by_covering(&h, DEFAULT_COVERING_CAP).unwrap());
        let d = code(2, &[&[0, 0, 0], &[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert!(!is_perfect(&d));
        assert!(!is_perfect_by_covering(&d, DEFAULT_COVERING_CAP).unwrap());
        assert!(is_perfect_by_covering(&h, 64).unwrap_err().is_resource_limit());
    }

    #[test]
    fn constant_weights() {
        let only_e = GroupCode::generate(z(2), 3, &[]).unwrap();
        assert_eq!(constant_weight_group(&only_e), None);
        let d = GroupCode::new(code(2, &[&[0, 0, 0], &[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])).unwrap();
        assert_eq!(constant_weight_group(&d), Some(2));
        let rep = GroupCode::new(code(2, &[&[0, 0, 0], &[1, 1, 1]])).unwrap();
        assert_eq!(constant_weight_group(&rep), Some(3));

        let single = code(3, &[&[2, 1]]);
        let cw = constant_weight_general(&single, None, DEFAULT_CENTER_SEARCH_CAP).unwrap().unwrap();
        assert_eq!((cw.center.symbols(), cw.radius), (&[2, 1][..], 0));
        let pair = code(2, &[&[0, 1], &[1, 0]]);
        let cw = constant_weight_general(&pair, None, DEFAULT_CENTER_SEARCH_CAP).unwrap().unwrap();
        assert_eq!((cw.center.symbols(), cw.radius), (&[0, 0][..], 1));
        assert_eq!(constant_weight_general(&Code::full_space(z(2), 2).unwrap(), None, DEFAULT_CENTER_SEARCH_CAP).unwrap(), None);
        let big = Code::full_space(z(2), 3).unwrap();
        assert!(constant_weight_general(&big, None, 4).unwrap_err().is_resource_limit());
        let restricted = constant_weight_general(&pair, Some(&[Word::new(vec![1, 1])]), 4).unwrap().unwrap();
        assert_eq!(restricted.radius, 1);
    }

    #[test]
    fn classification_summary() {
        let rep = code(2, &[&[0, 0, 0], &[1, 1, 1]]);
        let c = classify(&rep).unwrap();
        assert!(c.is_mds && c.is_perfect && !c.is_trivial && !c.is_degenerate);
        assert_eq!(c.correction_capacity, 1);
        let g = classify_group(&crate::fixtures::z4_example());
        assert!(!g.is_mds && !g.is_perfect && !g.is_trivial);
        assert_eq!(g.constant_weight, None);
    }
}
