//! Words, codes and group codes with the Hamming metric.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

/// A point of `A^n`: a fixed-length vector of element indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Word(Vec<Elem>);

impl Word {
    pub fn new(symbols: Vec<Elem>) -> Self {
        Word(symbols)
    }

    pub fn identity(g: &FiniteGroup, n: usize) -> Self {
        Word(vec![g.identity(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Elem] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Elem> {
        self.0
    }

    /// Componentwise product in `G^n`.
    pub fn mul(&self, other: &Word, g: &FiniteGroup) -> Word {
        Word(self.0.iter().zip(&other.0).map(|(&a, &b)| g.mul(a, b)).collect())
    }

    pub fn inv(&self, g: &FiniteGroup) -> Word {
        Word(self.0.iter().map(|&a| g.inv(a)).collect())
    }

    /// Restriction to the (0-based) coordinates in `coords`.
    pub fn restrict(&self, coords: &[usize]) -> Word {
        Word(coords.iter().map(|&i| self.0[i]).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Deref for Word {
    type Target = [Elem];
    fn deref(&self) -> &[Elem] {
        &self.0
    }
}

impl From<Vec<Elem>> for Word {
    fn from(v: Vec<Elem>) -> Self {
        Word(v)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// Number of coordinates where `x` and `y` differ.
pub fn hamming_distance(x: &[Elem], y: &[Elem]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::IncompatibleWords {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(distance_unchecked(x, y))
}

#[inline]
pub(crate) fn distance_unchecked(x: &[Elem], y: &[Elem]) -> usize {
    x.iter().zip(y).filter(|(a, b)| a != b).count()
}

/// Weight of `x` relative to the center `x0`.
pub fn weight(x: &[Elem], x0: &[Elem]) -> Result<usize> {
    hamming_distance(x, x0)
}

/// A non-empty set of words of common length over one alphabet, stored
/// sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    alphabet: Arc<FiniteGroup>,
    length: usize,
    words: Vec<Word>,
}

impl Code {
    pub fn new(alphabet: Arc<FiniteGroup>, length: usize, words: Vec<Word>) -> Result<Self> {
        if length == 0 {
            return Err(Error::InvalidInput("code length must be at least 1".into()));
        }
        if words.is_empty() {
            return Err(Error::InvalidInput("a code must contain at least one word".into()));
        }
        let q = alphabet.order();
        for w in &words {
            if w.len() != length {
                return Err(Error::IncompatibleWords {
                    left: length,
                    right: w.len(),
                });
            }
            if let Some(&s) = w.iter().find(|&&s| s as usize >= q) {
                return Err(Error::InvalidInput(format!("symbol {s} in {w:?} is outside the alphabet of order {q}")));
            }
        }
        let mut words = words;
        words.sort_unstable();
        words.dedup();
        Ok(Code {
            alphabet,
            length,
            words,
        })
    }

    /// The whole space `A^n`.
    pub fn full_space(alphabet: Arc<FiniteGroup>, n: usize) -> Result<Self> {
        let q = alphabet.order();
        let total = q
            .checked_pow(n as u32)
            .filter(|&t| t <= 1 << 24)
            .ok_or_else(|| Error::resource(format!("materializing {q}^{n} words"), 1 << 24))?;
        let mut words = Vec::with_capacity(total);
        let mut cur = vec![0 as Elem; n];
        for _ in 0..total {
            words.push(Word(cur.clone()));
            for i in (0..n).rev() {
                cur[i] += 1;
                if (cur[i] as usize) < q {
                    break;
                }
                cur[i] = 0;
            }
        }
        Code::new(alphabet, n, words)
    }

    pub fn alphabet(&self) -> &Arc<FiniteGroup> {
        &self.alphabet
    }

    pub fn q(&self) -> usize {
        self.alphabet.order()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn contains(&self, w: &[Elem]) -> bool {
        self.words.binary_search_by(|x| x.symbols().cmp(w)).is_ok()
    }

    pub fn same_alphabet(&self, other: &Code) -> bool {
        Arc::ptr_eq(&self.alphabet, &other.alphabet) || *self.alphabet == *other.alphabet
    }

    /// Minimum pairwise distance; `n + 1` for a single-word code.
    pub fn min_distance(&self) -> usize {
        let mut best = self.length + 1;
        for (i, x) in self.words.iter().enumerate() {
            for y in &self.words[i + 1..] {
                best = best.min(distance_unchecked(x, y));
                if best == 1 {
                    return 1;
                }
            }
        }
        best
    }

    /// Sorted, deduplicated symbols appearing at coordinate `i` (0-based).
    pub fn coordinate_values(&self, i: usize) -> Vec<Elem> {
        let set: BTreeSet<Elem> = self.words.iter().map(|w| w[i]).collect();
        set.into_iter().collect()
    }

    /// `|π_i(C)|` for every coordinate.
    pub fn coordinate_projection_sizes(&self) -> Vec<usize> {
        (0..self.length).map(|i| self.coordinate_values(i).len()).collect()
    }

    /// The `Y`-projection, with `Y` given as strictly increasing 0-based
    /// coordinates.
    pub fn projection(&self, coords: &[usize]) -> Result<Code> {
        validate_index_set(coords, self.length)?;
        let words = self.words.iter().map(|w| w.restrict(coords)).collect();
        Code::new(self.alphabet.clone(), coords.len(), words)
    }

    /// `|π_Y(C)|` without materializing the projected code.
    pub fn projection_size(&self, coords: &[usize]) -> usize {
        count_distinct_restrictions(&self.words, coords, self.q())
    }

    pub fn direct_sum(&self, other: &Code) -> Result<Code> {
        if !self.same_alphabet(other) {
            return Err(Error::IncompatibleAlphabets(format!(
                "{} and {}",
                self.alphabet.label(),
                other.alphabet.label()
            )));
        }
        let mut words = Vec::with_capacity(self.len() * other.len());
        for x in &self.words {
            for y in &other.words {
                words.push(x.concat(y));
            }
        }
        Code::new(self.alphabet.clone(), self.length + other.length, words)
    }

    /// Direct sum of `self` with itself `copies` times.
    pub fn power(&self, copies: usize) -> Result<Code> {
        if copies == 0 {
            return Err(Error::InvalidInput("power needs at least one copy".into()));
        }
        let mut acc = self.clone();
        for _ in 1..copies {
            acc = acc.direct_sum(self)?;
        }
        Ok(acc)
    }

    /// Weight distribution relative to `x0`: entry `i` counts codewords at
    /// distance `i`.
    pub fn weight_distribution(&self, x0: &[Elem]) -> Vec<usize> {
        let mut dist = vec![0; self.length + 1];
        for w in &self.words {
            dist[distance_unchecked(w, x0)] += 1;
        }
        dist
    }

    pub fn parameters(&self) -> ParameterReport {
        ParameterReport::of(self)
    }

    /// Checks identity membership and closure under products and inverses,
    /// naming the first offending pair.
    pub fn check_group_closure(&self) -> Result<()> {
        let g = &*self.alphabet;
        let e = Word::identity(g, self.length);
        if !self.contains(&e) {
            return Err(Error::ClosureViolation {
                left: e.clone().into_symbols(),
                right: e.into_symbols(),
            });
        }
        for x in &self.words {
            if !self.contains(&x.inv(g)) {
                return Err(Error::ClosureViolation {
                    left: x.symbols().to_vec(),
                    right: e.symbols().to_vec(),
                });
            }
            for y in &self.words {
                if !self.contains(&x.mul(y, g)) {
                    return Err(Error::ClosureViolation {
                        left: x.symbols().to_vec(),
                        right: y.symbols().to_vec(),
                    });
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn validate_index_set(coords: &[usize], n: usize) -> Result<()> {
    if coords.is_empty() {
        return Err(Error::InvalidIndexSet("empty coordinate set".into()));
    }
    if coords.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidIndexSet(format!("{coords:?} is not strictly increasing")));
    }
    if let Some(&last) = coords.last() {
        if last >= n {
            return Err(Error::InvalidIndexSet(format!("coordinate {} exceeds length {n}", last + 1)));
        }
    }
    Ok(())
}

/// Whether `q^len` fits the packed key representation.
pub(crate) fn fits_packed(q: usize, len: usize) -> bool {
    let bits = usize::BITS - q.saturating_sub(1).leading_zeros();
    (bits as usize) * len <= 128
}

#[inline]
pub(crate) fn packed_key(word: &[Elem], coords: &[usize], q: usize) -> u128 {
    coords.iter().fold(0u128, |acc, &i| acc * q as u128 + word[i] as u128)
}

pub(crate) fn count_distinct_restrictions(words: &[Word], coords: &[usize], q: usize) -> usize {
    if fits_packed(q, coords.len()) {
        let mut keys: Vec<u128> = words.iter().map(|w| packed_key(w, coords, q)).collect();
        keys.sort_unstable();
        keys.dedup();
        keys.len()
    } else {
        words.iter().map(|w| w.restrict(coords)).collect::<HashSet<_>>().len()
    }
}

/// A code that is a subgroup of `G^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCode(Code);

impl GroupCode {
    /// Validates subgroup closure of an explicit word list.
    pub fn new(code: Code) -> Result<Self> {
        code.check_group_closure()?;
        Ok(GroupCode(code))
    }

    /// Smallest subgroup of `G^n` containing `generators`.
    pub fn generate(alphabet: Arc<FiniteGroup>, n: usize, generators: &[Word]) -> Result<Self> {
        let e = Word::identity(&alphabet, n);
        // Validates lengths and symbols.
        Code::new(alphabet.clone(), n, generators.iter().cloned().chain([e.clone()]).collect())?;
        let g = &*alphabet;
        let mut seen: HashSet<Word> = HashSet::from([e.clone()]);
        let mut frontier = vec![e];
        while let Some(x) = frontier.pop() {
            for gen in generators {
                let y = x.mul(gen, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        // Finite: closure under multiplication already contains inverses.
        let code = Code::new(alphabet, n, seen.into_iter().collect())?;
        Ok(GroupCode(code))
    }

    pub fn full_space(alphabet: Arc<FiniteGroup>, n: usize) -> Result<Self> {
        Ok(GroupCode(Code::full_space(alphabet, n)?))
    }

    pub fn trusted(code: Code) -> Self {
        debug_assert!(code.len() > 256 || code.check_group_closure().is_ok());
        GroupCode(code)
    }

    pub fn as_code(&self) -> &Code {
        &self.0
    }

    pub fn into_code(self) -> Code {
        self.0
    }

    pub fn identity_word(&self) -> Word {
        Word::identity(self.alphabet(), self.length())
    }

    /// Minimum weight of a non-identity codeword; equals the minimum distance.
    pub fn min_weight_nonidentity(&self) -> usize {
        let e = self.identity_word();
        self.words()
            .iter()
            .filter(|w| **w != e)
            .map(|w| distance_unchecked(w, &e))
            .min()
            .unwrap_or(self.length() + 1)
    }

    pub fn weight_distribution_identity(&self) -> Vec<usize> {
        self.weight_distribution(&self.identity_word())
    }

    pub fn projection(&self, coords: &[usize]) -> Result<GroupCode> {
        Ok(GroupCode(self.0.projection(coords)?))
    }

    pub fn direct_sum(&self, other: &GroupCode) -> Result<GroupCode> {
        Ok(GroupCode(self.0.direct_sum(&other.0)?))
    }

    pub fn power(&self, copies: usize) -> Result<GroupCode> {
        Ok(GroupCode(self.0.power(copies)?))
    }

    /// Greedy generating set of the code as a group, in word order.
    pub fn generating_set(&self) -> Vec<Word> {
        let g = &**self.alphabet();
        let mut gens: Vec<Word> = Vec::new();
        let mut current: HashSet<Word> = HashSet::from([self.identity_word()]);
        for w in self.words() {
            if current.len() == self.len() {
                break;
            }
            if current.contains(w) {
                continue;
            }
            gens.push(w.clone());
            let mut frontier: Vec<Word> = current.iter().cloned().collect();
            while let Some(x) = frontier.pop() {
                for gen in &gens {
                    let y = x.mul(gen, g);
                    if current.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }
}

impl Deref for GroupCode {
    type Target = Code;
    fn deref(&self) -> &Code {
        &self.0
    }
}

/// Dimension `k = log_q |C|`, kept exact when `|C|` is a power of `q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Dimension {
    pub value: f64,
    pub exact: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParameterReport {
    pub length: usize,
    pub cardinality: usize,
    pub q: usize,
    pub dimension: Dimension,
    pub min_distance: usize,
    pub correction_capacity: usize,
}

impl ParameterReport {
    pub fn of(code: &Code) -> Self {
        let q = code.q();
        let size = code.len();
        let d = code.min_distance();
        let exact = exact_log(size, q);
        let value = match exact {
            Some(k) => k as f64,
            None if q > 1 => (size as f64).ln() / (q as f64).ln(),
            None => 0.0,
        };
        let report = ParameterReport {
            length: code.length(),
            cardinality: size,
            q,
            dimension: Dimension { value, exact },
            min_distance: d,
            correction_capacity: (d - 1) / 2,
        };
        debug_assert!(report.satisfies_singleton());
        report
    }

    /// `|C| <= q^(n - d + 1)`, vacuous when `d > n`.
    pub fn satisfies_singleton(&self) -> bool {
        if self.min_distance > self.length {
            return true;
        }
        let exp = (self.length - self.min_distance + 1) as u32;
        match (self.q as u128).checked_pow(exp) {
            Some(bound) => self.cardinality as u128 <= bound,
            None => true,
        }
    }
}

/// `Some(k)` when `size == q^k`.
pub(crate) fn exact_log(size: usize, q: usize) -> Option<u32> {
    if q <= 1 {
        return (size == 1).then_some(0);
    }
    let mut k = 0;
    let mut p = 1usize;
    while p < size {
        p = p.checked_mul(q)?;
        k += 1;
    }
    (p == size).then_some(k)
}
