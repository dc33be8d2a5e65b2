//! Small named codes used by tests, the `selftest` command and examples.

use std::sync::Arc;

use crate::code::{Code, GroupCode, Word};
use crate::group::{Elem, FiniteGroup};

pub fn z(m: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(m).expect("positive modulus"))
}

pub fn klein_four() -> Arc<FiniteGroup> {
    let z2 = FiniteGroup::cyclic(2).expect("positive modulus");
    Arc::new(FiniteGroup::product(&[z2.clone(), z2]).expect("non-empty factor list"))
}

pub fn words(ws: &[&[Elem]]) -> Vec<Word> {
    ws.iter().map(|w| Word::new(w.to_vec())).collect()
}

/// The 8-word subgroup of `(Z/4)^3` generated by `(2,0,0)` and `(1,2,1)`.
pub fn z4_example() -> GroupCode {
    let code = Code::new(
        z(4),
        3,
        words(&[&[0, 0, 0], &[2, 0, 0], &[1, 2, 1], &[3, 2, 1], &[2, 0, 2], &[0, 0, 2], &[3, 2, 3], &[1, 2, 3]]),
    )
    .expect("valid words");
    GroupCode::new(code).expect("subgroup")
}

/// The even-weight code `{000, 110, 011, 101}` over `Z/2`.
pub fn even_weight_3() -> GroupCode {
    GroupCode::generate(z(2), 3, &words(&[&[1, 1, 0], &[0, 1, 1]])).expect("valid generators")
}

/// Binary repetition code of length `n`.
pub fn repetition(n: usize) -> GroupCode {
    GroupCode::generate(z(2), n, &[Word::new(vec![1; n])]).expect("valid generator")
}

/// The binary Hamming [7,4] code with parity checks
/// `x5 = x1+x2+x4`, `x6 = x1+x3+x4`, `x7 = x2+x3+x4`.
pub fn hamming74() -> GroupCode {
    let words = (0..16u32)
        .map(|m| {
            let b: Vec<u32> = (0..4).map(|i| (m >> (3 - i)) & 1).collect();
            Word::new(vec![
                b[0],
                b[1],
                b[2],
                b[3],
                (b[0] + b[1] + b[3]) % 2,
                (b[0] + b[2] + b[3]) % 2,
                (b[1] + b[2] + b[3]) % 2,
            ])
        })
        .collect();
    GroupCode::new(Code::new(z(2), 7, words).expect("valid words")).expect("linear code")
}

/// Rows of the two-copy interleaving of [`even_weight_3`]: each pair maps a
/// word of `D ⊕ D` to its image under the push action of
/// `σ = [1, 3, 5, 2, 4, 6]`.
pub const INTERLEAVE_ROWS: [([Elem; 6], [Elem; 6]); 16] = [
    ([0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0]),
    ([0, 0, 0, 1, 1, 0], [0, 1, 0, 1, 0, 0]),
    ([0, 0, 0, 0, 1, 1], [0, 0, 0, 1, 0, 1]),
    ([0, 0, 0, 1, 0, 1], [0, 1, 0, 0, 0, 1]),
    ([1, 1, 0, 0, 0, 0], [1, 0, 1, 0, 0, 0]),
    ([1, 1, 0, 1, 1, 0], [1, 1, 1, 1, 0, 0]),
    ([1, 1, 0, 0, 1, 1], [1, 0, 1, 1, 0, 1]),
    ([1, 1, 0, 1, 0, 1], [1, 1, 1, 0, 0, 1]),
    ([0, 1, 1, 0, 0, 0], [0, 0, 1, 0, 1, 0]),
    ([0, 1, 1, 1, 1, 0], [0, 1, 1, 1, 1, 0]),
    ([0, 1, 1, 0, 1, 1], [0, 0, 1, 1, 1, 1]),
    ([0, 1, 1, 1, 0, 1], [0, 1, 1, 0, 1, 1]),
    ([1, 0, 1, 0, 0, 0], [1, 0, 0, 0, 1, 0]),
    ([1, 0, 1, 1, 1, 0], [1, 1, 0, 1, 1, 0]),
    ([1, 0, 1, 0, 1, 1], [1, 0, 0, 1, 1, 1]),
    ([1, 0, 1, 1, 0, 1], [1, 1, 0, 0, 1, 1]),
];
