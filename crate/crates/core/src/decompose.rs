//! Direct-sum decomposition by projection-cardinality tests.
//!
//! A coordinate set `J` splits `C` as `π_J(C) ⊕ π_K(C)` exactly when
//! `|C| = |π_J(C)| · |π_K(C)|`, since `C` always embeds in that product.
//! Repeated splitting yields the finest product partition of the
//! coordinates, which is unique: the common refinement of two product
//! partitions is again one.

use dashmap::DashMap;
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{is_degenerate, is_mds, is_perfect, is_trivial};
use crate::code::{count_distinct_restrictions, distance_unchecked, validate_index_set, Code, GroupCode, Word};
use crate::error::{Error, Result};
use crate::isometry::{Equivalence, Isometry};
use crate::isomorphy::{code_isomorphic, gc_isomorphic, SearchOptions};

/// Largest block for which the subset search runs by default.
pub const DEFAULT_MAX_PARTITION_BITS: usize = 24;

/// Candidates tested per parallel batch. Batches are scanned in lexicographic
/// order so the first split found does not depend on scheduling.
const SPLIT_BATCH: usize = 4096;

/// Whether a code is treated as a plain code or a group code. Only group
/// codes admit the constant-weight certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Plain,
    Group,
}

/// Sufficient conditions for indecomposability, in the order they are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    MdsNontrivial,
    PerfectNontrivial,
    ConstantWeightNondegenerate { radius: usize },
    PrimeCardinalityNondegenerate,
}

impl Certificate {
    pub fn tag(&self) -> &'static str {
        match self {
            Certificate::MdsNontrivial => "mds-nontrivial",
            Certificate::PerfectNontrivial => "perfect-nontrivial",
            Certificate::ConstantWeightNondegenerate { .. } => "constant-weight-nondegenerate",
            Certificate::PrimeCardinalityNondegenerate => "prime-cardinality-nondegenerate",
        }
    }
}

/// How a component was shown to be indecomposable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    SingleCoordinate,
    Certificate(Certificate),
    ExhaustiveSearch,
}

impl Reason {
    pub fn tag(&self) -> &'static str {
        match self {
            Reason::SingleCoordinate => "single-coordinate",
            Reason::Certificate(c) => c.tag(),
            Reason::ExhaustiveSearch => "exhaustive-search",
        }
    }
}

/// Block indices sharing one isomorphism type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isotype {
    /// Index of the first block of this type.
    pub representative: usize,
    pub members: Vec<usize>,
}

impl Isotype {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DecomposeOptions {
    pub max_partition_bits: usize,
    pub search: SearchOptions,
    pub parallel: bool,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self {
            max_partition_bits: DEFAULT_MAX_PARTITION_BITS,
            search: SearchOptions::default(),
            parallel: true,
        }
    }
}

/// Finest product partition of a code together with its components.
///
/// Blocks hold 0-based coordinates in increasing order and are sorted by
/// their smallest coordinate.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub category: Category,
    pub blocks: Vec<Vec<usize>>,
    pub components: Vec<Code>,
    pub reasons: Vec<Reason>,
    pub isotypes: Vec<Isotype>,
    /// Pull isometry with `witness(C) = components[0] ⊕ components[1] ⊕ ...`.
    pub witness: Isometry,
}

impl Decomposition {
    pub fn is_indecomposable(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Isotype index of every block.
    pub fn isotype_of_blocks(&self) -> Vec<usize> {
        let mut out = vec![0; self.blocks.len()];
        for (t, iso) in self.isotypes.iter().enumerate() {
            for &b in &iso.members {
                out[b] = t;
            }
        }
        out
    }

    /// `components[0] ⊕ components[1] ⊕ ...` in block order.
    pub fn direct_sum(&self) -> Result<Code> {
        let mut parts = self.components.iter();
        let first = parts.next().expect("at least one block").clone();
        parts.try_fold(first, |acc, c| acc.direct_sum(c))
    }

    pub fn group_components(&self) -> Vec<GroupCode> {
        self.components.iter().cloned().map(GroupCode::trusted).collect()
    }
}

/// Cardinalities of projections of a fixed code, keyed by coordinate bitmask.
pub struct ProjectionCache<'a> {
    code: &'a Code,
    sizes: DashMap<u64, usize>,
}

impl<'a> ProjectionCache<'a> {
    pub fn new(code: &'a Code) -> Result<Self> {
        if code.length() > 64 {
            return Err(Error::resource("coordinate bitmask width", 64));
        }
        Ok(Self {
            code,
            sizes: DashMap::new(),
        })
    }

    pub fn size(&self, mask: u64) -> usize {
        if let Some(v) = self.sizes.get(&mask) {
            return *v;
        }
        let coords = coords_of(mask);
        let v = count_distinct_restrictions(self.code.words(), &coords, self.code.q());
        self.sizes.insert(mask, v);
        v
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }
}

fn mask_of(coords: &[usize]) -> u64 {
    coords.iter().fold(0, |m, &i| m | 1 << i)
}

fn coords_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Whether `C = π_J(C) ⊕ π_K(C)` for the 0-based coordinate set `J` and its
/// complement `K`. `J` must be a non-empty proper subset in increasing order.
pub fn split_test(code: &Code, j: &[usize]) -> Result<bool> {
    let n = code.length();
    validate_index_set(j, n)?;
    if j.len() == n {
        return Err(Error::InvalidIndexSet("J must be a proper subset".into()));
    }
    let k: Vec<usize> = (0..n).filter(|i| !j.contains(i)).collect();
    let pj = code.projection_size(j);
    let pk = code.projection_size(&k);
    Ok(pj.checked_mul(pk) == Some(code.len()))
}

/// Every applicable certificate, in priority order: MDS, perfect, constant
/// weight (group codes only), prime cardinality.
pub fn indecomposability_certificates(code: &Code, category: Category) -> Vec<Certificate> {
    let mut out = Vec::new();
    let trivial = is_trivial(code);
    if !trivial && is_mds(code) {
        out.push(Certificate::MdsNontrivial);
    }
    if !trivial && is_perfect(code) {
        out.push(Certificate::PerfectNontrivial);
    }
    let nondegenerate = !is_degenerate(code).0;
    if nondegenerate && category == Category::Group {
        if let Some(radius) = identity_constant_weight(code) {
            out.push(Certificate::ConstantWeightNondegenerate { radius });
        }
    }
    if nondegenerate && is_prime(code.len()) {
        out.push(Certificate::PrimeCardinalityNondegenerate);
    }
    out
}

/// The first applicable certificate.
pub fn indecomposability_certificate(code: &Code, category: Category) -> Option<Certificate> {
    indecomposability_certificates(code, category).into_iter().next()
}

fn identity_constant_weight(code: &Code) -> Option<usize> {
    let e = Word::identity(code.alphabet(), code.length());
    let mut weights = code.words().iter().filter(|w| **w != e).map(|w| distance_unchecked(w, &e));
    let r = weights.next()?;
    weights.all(|w| w == r).then_some(r)
}

fn is_prime(m: usize) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| !m.is_multiple_of(d))
}

/// A splitting set `J` (0-based, containing coordinate 0), or `None` when the
/// code is indecomposable. The returned `J` is the smallest, then
/// lexicographically least, splitting set.
pub fn is_decomposable(code: &Code) -> Result<Option<Vec<usize>>> {
    is_decomposable_with(code, &DecomposeOptions::default())
}

pub fn is_decomposable_with(code: &Code, opts: &DecomposeOptions) -> Result<Option<Vec<usize>>> {
    let n = code.length();
    if n == 1 {
        return Ok(None);
    }
    let cache = ProjectionCache::new(code)?;
    let all: Vec<usize> = (0..n).collect();
    let total = code.len();
    if n > opts.max_partition_bits {
        if indecomposability_certificate(code, opts_category(code)).is_some() {
            return Ok(None);
        }
        if is_degenerate(code).1.first() == Some(&1) {
            return Ok(Some(vec![0]));
        }
        return Err(Error::ResourceLimit {
            what: format!("subset search over {n} coordinates"),
            limit: opts.max_partition_bits as u64,
            partial: Some(partial_summary(code)),
        });
    }
    Ok(find_split(&cache, &all, total, opts.parallel).map(coords_of))
}

fn opts_category(code: &Code) -> Category {
    if code.check_group_closure().is_ok() {
        Category::Group
    } else {
        Category::Plain
    }
}

fn partial_summary(code: &Code) -> String {
    let (_, degenerate) = is_degenerate(code);
    format!("no certificate applies; degenerate coordinates {degenerate:?}")
}

/// Smallest, lexicographically least `J ⊂ block` containing `block[0]` with
/// `|π_block| = |π_J| · |π_{block∖J}|`, as a bitmask.
fn find_split(cache: &ProjectionCache<'_>, block: &[usize], total: usize, parallel: bool) -> Option<u64> {
    let full = mask_of(block);
    let first = 1u64 << block[0];
    let rest = &block[1..];
    let splits = |m: &u64| {
        let pj = cache.size(*m);
        if !total.is_multiple_of(pj) {
            return false;
        }
        pj * cache.size(full & !m) == total
    };
    for k in 0..rest.len() {
        let mut combos = rest.iter().combinations(k).map(|c| c.into_iter().fold(first, |m, &i| m | 1 << i));
        loop {
            let batch: Vec<u64> = combos.by_ref().take(SPLIT_BATCH).collect();
            if batch.is_empty() {
                break;
            }
            let hit = if parallel {
                batch.par_iter().find_first(|m| splits(m)).copied()
            } else {
                batch.iter().find(|m| splits(m)).copied()
            };
            if hit.is_some() {
                return hit;
            }
        }
    }
    None
}

/// Decomposes a plain code.
pub fn decompose(code: &Code) -> Result<Decomposition> {
    decompose_with(code, Category::Plain, &DecomposeOptions::default())
}

/// Decomposes a group code; isotypes use group-code isomorphism.
pub fn decompose_group(code: &GroupCode) -> Result<Decomposition> {
    decompose_with(code, Category::Group, &DecomposeOptions::default())
}

pub fn decompose_with(code: &Code, category: Category, opts: &DecomposeOptions) -> Result<Decomposition> {
    let n = code.length();
    let cache = ProjectionCache::new(code)?;
    let (_, degenerate) = is_degenerate(code);
    let mut finished: Vec<(Vec<usize>, Reason)> = Vec::new();
    let mut rest = Vec::new();
    for i in 0..n {
        if degenerate.contains(&(i + 1)) {
            finished.push((vec![i], Reason::SingleCoordinate));
        } else {
            rest.push(i);
        }
    }
    let mut stack = Vec::new();
    if !rest.is_empty() {
        stack.push(rest);
    }
    while let Some(block) = stack.pop() {
        if block.len() == 1 {
            finished.push((block, Reason::SingleCoordinate));
            continue;
        }
        let component = code.projection(&block)?;
        if let Some(cert) = indecomposability_certificate(&component, category) {
            finished.push((block, Reason::Certificate(cert)));
            continue;
        }
        if block.len() > opts.max_partition_bits {
            finished.extend(stack.drain(..).map(|b| (b, Reason::ExhaustiveSearch)));
            return Err(Error::ResourceLimit {
                what: format!("subset search over a block of {} coordinates", block.len()),
                limit: opts.max_partition_bits as u64,
                partial: Some(format!(
                    "unresolved block {:?}; blocks so far {:?}",
                    one_based(&block),
                    finished.iter().map(|(b, _)| one_based(b)).collect::<Vec<_>>()
                )),
            });
        }
        let total = cache.size(mask_of(&block));
        match find_split(&cache, &block, total, opts.parallel) {
            Some(m) => {
                let j = coords_of(m);
                let k: Vec<usize> = block.iter().copied().filter(|i| m >> i & 1 == 0).collect();
                stack.push(k);
                stack.push(j);
            }
            None => finished.push((block, Reason::ExhaustiveSearch)),
        }
    }
    finished.sort_by_key(|(b, _)| b[0]);
    let (blocks, reasons): (Vec<_>, Vec<_>) = finished.into_iter().unzip();
    let components = blocks.iter().map(|b| code.projection(b)).collect::<Result<Vec<_>>>()?;
    let isotypes = group_isotypes(&components, category, &opts.search)?;
    let order: Vec<usize> = blocks.iter().flatten().copied().collect();
    let witness = Isometry::from_equivalence(Equivalence::new(order)?, code.q());
    Ok(Decomposition {
        category,
        blocks,
        components,
        reasons,
        isotypes,
        witness,
    })
}

fn one_based(block: &[usize]) -> Vec<usize> {
    block.iter().map(|i| i + 1).collect()
}

fn group_isotypes(components: &[Code], category: Category, search: &SearchOptions) -> Result<Vec<Isotype>> {
    let mut isotypes: Vec<Isotype> = Vec::new();
    'next: for (i, c) in components.iter().enumerate() {
        for t in isotypes.iter_mut() {
            let rep = &components[t.representative];
            let same = match category {
                Category::Group => {
                    gc_isomorphic(&GroupCode::trusted(rep.clone()), &GroupCode::trusted(c.clone()), search)?.is_some()
                }
                Category::Plain => code_isomorphic(rep, c, search)?.is_some(),
            };
            if same {
                t.members.push(i);
                continue 'next;
            }
        }
        isotypes.push(Isotype {
            representative: i,
            members: vec![i],
        });
    }
    Ok(isotypes)
}

/// The code with its coordinates regrouped so that blocks are contiguous,
/// i.e. the image under the decomposition witness.
pub fn regrouped(code: &Code, decomposition: &Decomposition) -> Result<Code> {
    decomposition.witness.apply_to_code(code)
}
