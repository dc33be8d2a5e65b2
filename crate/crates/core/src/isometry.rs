//! Isometries of `A^n` in normal form `f ∘ σ̄`.
//!
//! Two application conventions are provided. The *pull* convention reads
//! `σ̄(x)_j = x_{σ(j)}`, so an isometry acts as `φ(x)_j = f_j(x_{σ(j)})`.
//! The *push* convention moves the symbol at position `t` to position
//! `σ(t)`; it is the pull action of `σ⁻¹`. Interleaving uses push.
//!
//! Permutations are stored 0-based; 1-based forms only appear at the
//! serialization boundary.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;

use crate::code::{Code, Word};
use crate::error::{Error, Result};
use crate::group::Elem;

/// Default cap on the number of isometries [`enumerate_isometries`] will yield.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// A coordinate permutation `σ ∈ S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equivalence {
    sigma: Vec<usize>,
}

impl Equivalence {
    pub fn new(sigma: Vec<usize>) -> Result<Self> {
        let n = sigma.len();
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidInput(format!("{sigma:?} is not a permutation of 0..{n}")));
            }
        }
        Ok(Equivalence { sigma })
    }

    pub fn from_one_based(sigma: &[usize]) -> Result<Self> {
        if sigma.contains(&0) {
            return Err(Error::InvalidInput("1-based permutation contains 0".into()));
        }
        Equivalence::new(sigma.iter().map(|&s| s - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Equivalence { sigma: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    /// `σ(j)`, 0-based.
    #[inline]
    pub fn image(&self, j: usize) -> usize {
        self.sigma[j]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.sigma
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.sigma.iter().map(|&s| s + 1).collect()
    }

    pub fn inverse(&self) -> Equivalence {
        let mut inv = vec![0; self.sigma.len()];
        for (j, &s) in self.sigma.iter().enumerate() {
            inv[s] = j;
        }
        Equivalence { sigma: inv }
    }

    /// Permutation composition `self ∘ other` (apply `other` first).
    pub fn then_after(&self, other: &Equivalence) -> Equivalence {
        Equivalence {
            sigma: other.sigma.iter().map(|&j| self.sigma[j]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(j, &s)| j == s)
    }

    /// Pull action: `y_j = x_{σ(j)}`.
    pub fn apply_pull(&self, x: &[Elem]) -> Result<Word> {
        check_len(self.sigma.len(), x.len())?;
        Ok(Word::new(self.sigma.iter().map(|&s| x[s]).collect()))
    }

    /// Push action: `y_{σ(t)} = x_t`.
    pub fn apply_push(&self, x: &[Elem]) -> Result<Word> {
        check_len(self.sigma.len(), x.len())?;
        let mut y = vec![0; x.len()];
        for (t, &s) in self.sigma.iter().enumerate() {
            y[s] = x[t];
        }
        Ok(Word::new(y))
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// One alphabet permutation per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    maps: Vec<Vec<Elem>>,
}

impl Configuration {
    pub fn new(maps: Vec<Vec<Elem>>, q: usize) -> Result<Self> {
        for (j, m) in maps.iter().enumerate() {
            if !is_bijection(m, q) {
                return Err(Error::InvalidInput(format!(
                    "configuration entry {} is not a bijection of the alphabet: {m:?}",
                    j + 1
                )));
            }
        }
        Ok(Configuration { maps })
    }

    pub fn identity(n: usize, q: usize) -> Self {
        Configuration {
            maps: vec![(0..q as Elem).collect(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[Vec<Elem>] {
        &self.maps
    }

    #[inline]
    pub fn apply_at(&self, j: usize, a: Elem) -> Elem {
        self.maps[j][a as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.maps.iter().all(|m| m.iter().enumerate().all(|(a, &b)| a as Elem == b))
    }

    /// `f_σ(x)_j = f_{σ(j)}(x_j)`.
    pub fn reindexed(&self, sigma: &Equivalence) -> Configuration {
        Configuration {
            maps: sigma.as_slice().iter().map(|&s| self.maps[s].clone()).collect(),
        }
    }
}

fn is_bijection(m: &[Elem], q: usize) -> bool {
    if m.len() != q {
        return false;
    }
    let mut seen = vec![false; q];
    m.iter().all(|&b| (b as usize) < q && !std::mem::replace(&mut seen[b as usize], true))
}

fn invert_map(m: &[Elem]) -> Vec<Elem> {
    let mut inv = vec![0; m.len()];
    for (a, &b) in m.iter().enumerate() {
        inv[b as usize] = a as Elem;
    }
    inv
}

/// `φ = f ∘ σ̄`, acting by `φ(x)_j = f_j(x_{σ(j)})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isometry {
    equiv: Equivalence,
    config: Configuration,
}

impl Isometry {
    pub fn new(config: Configuration, equiv: Equivalence) -> Result<Self> {
        check_len(equiv.len(), config.len())?;
        Ok(Isometry { equiv, config })
    }

    pub fn identity(n: usize, q: usize) -> Self {
        Isometry {
            equiv: Equivalence::identity(n),
            config: Configuration::identity(n, q),
        }
    }

    pub fn from_equivalence(equiv: Equivalence, q: usize) -> Self {
        let n = equiv.len();
        Isometry {
            equiv,
            config: Configuration::identity(n, q),
        }
    }

    pub fn from_configuration(config: Configuration) -> Self {
        Isometry {
            equiv: Equivalence::identity(config.len()),
            config,
        }
    }

    pub fn equivalence(&self) -> &Equivalence {
        &self.equiv
    }

    pub fn configuration(&self) -> &Configuration {
        &self.config
    }

    pub fn length(&self) -> usize {
        self.equiv.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.config.maps.first().map_or(0, Vec::len)
    }

    pub fn is_identity(&self) -> bool {
        self.equiv.is_identity() && self.config.is_identity()
    }

    pub fn apply_pull(&self, x: &[Elem]) -> Result<Word> {
        check_len(self.length(), x.len())?;
        Ok(self.apply_unchecked(x))
    }

    #[inline]
    pub(crate) fn apply_unchecked(&self, x: &[Elem]) -> Word {
        Word::new(
            self.equiv
                .as_slice()
                .iter()
                .enumerate()
                .map(|(j, &s)| self.config.apply_at(j, x[s]))
                .collect(),
        )
    }

    /// `self ∘ other` in normal form: `σ = σ_other ∘ σ_self` and
    /// `f_j = f_self_j ∘ f_other_{σ_self(j)}`.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        check_len(self.length(), other.length())?;
        check_len(self.alphabet_size(), other.alphabet_size())?;
        let equiv = other.equiv.then_after(&self.equiv);
        let maps = (0..self.length())
            .map(|j| {
                let inner = &other.config.maps[self.equiv.image(j)];
                inner.iter().map(|&b| self.config.apply_at(j, b)).collect()
            })
            .collect();
        Ok(Isometry {
            equiv,
            config: Configuration { maps },
        })
    }

    pub fn inverse(&self) -> Isometry {
        let inv_sigma = self.equiv.inverse();
        let maps = inv_sigma
            .as_slice()
            .iter()
            .map(|&j| invert_map(&self.config.maps[j]))
            .collect();
        Isometry {
            equiv: inv_sigma,
            config: Configuration { maps },
        }
    }

    pub fn apply_to_code(&self, code: &Code) -> Result<Code> {
        check_len(self.length(), code.length())?;
        check_len(code.q(), self.alphabet_size())?;
        let words = code.words().iter().map(|w| self.apply_unchecked(w)).collect();
        Code::new(code.alphabet().clone(), code.length(), words)
    }
}

/// Pull application of an isometry to a word.
pub fn apply_pull(iso: &Isometry, x: &[Elem]) -> Result<Word> {
    iso.apply_pull(x)
}

/// Push application of a coordinate permutation to a word.
pub fn apply_push(equiv: &Equivalence, x: &[Elem]) -> Result<Word> {
    equiv.apply_push(x)
}

/// `a ∘ b`.
pub fn compose(a: &Isometry, b: &Isometry) -> Result<Isometry> {
    a.compose(b)
}

/// `|Iso(A^n)| = (q!)^n · n!` for `q >= 2`; the one-point space `A^n` with
/// `q = 1` has a single isometry.
pub fn isometry_group_order(q: usize, n: usize) -> BigUint {
    if q <= 1 {
        return BigUint::one();
    }
    let q_fact = factorial(q);
    q_fact.pow(n as u32) * factorial(n)
}

pub(crate) fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Lazily yields every isometry of `A^n` once, ordered lexicographically
/// over `(σ, f_1, …, f_n)`.
pub fn enumerate_isometries(q: usize, n: usize) -> Result<IsometryIter> {
    enumerate_isometries_capped(q, n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_isometries_capped(q: usize, n: usize, cap: u64) -> Result<IsometryIter> {
    if q == 0 || n == 0 {
        return Err(Error::InvalidInput("enumeration needs q >= 1 and n >= 1".into()));
    }
    let total = isometry_group_order(q, n);
    if total > BigUint::from(cap) {
        return Err(Error::resource(format!("enumerating {total} isometries of {q}^{n}"), cap));
    }
    let (sigmas, perms) = if q == 1 {
        (vec![(0..n).collect()], vec![vec![0]])
    } else {
        (
            (0..n).permutations(n).collect::<Vec<_>>(),
            (0..q as Elem).permutations(q).collect::<Vec<_>>(),
        )
    };
    Ok(IsometryIter {
        sigmas,
        perms,
        sigma_idx: 0,
        digits: vec![0; n],
        done: false,
    })
}

#[derive(Debug)]
pub struct IsometryIter {
    sigmas: Vec<Vec<usize>>,
    perms: Vec<Vec<Elem>>,
    sigma_idx: usize,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for IsometryIter {
    type Item = Isometry;

    fn next(&mut self) -> Option<Isometry> {
        if self.done {
            return None;
        }
        let item = Isometry {
            equiv: Equivalence {
                sigma: self.sigmas[self.sigma_idx].clone(),
            },
            config: Configuration {
                maps: self.digits.iter().map(|&d| self.perms[d].clone()).collect(),
            },
        };
        // Advance the mixed-radix counter; f_n is the least significant digit.
        let base = self.perms.len();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.sigma_idx += 1;
                if self.sigma_idx == self.sigmas.len() {
                    self.done = true;
                }
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < base {
                break;
            }
            self.digits[i] = 0;
        }
        Some(item)
    }
}
