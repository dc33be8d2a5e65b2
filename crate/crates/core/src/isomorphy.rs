//! Isomorphism testing and automorphism groups.
//!
//! The search assigns, for each target coordinate `j` in turn, a source
//! coordinate `σ(j)` and a local map `f_j` on the source projection. A
//! partial assignment survives only while the multiset of images of the
//! codewords, restricted to the assigned prefix, equals the multiset of
//! target prefixes. Local maps are subgroup isomorphisms for group codes
//! and frequency-preserving bijections for plain codes. Symbols outside a
//! projection never occur in a codeword, so a leaf fixes an isometry only
//! up to those values; leaves are extended canonically (remaining symbols
//! in increasing order).

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::code::{distance_unchecked, fits_packed, Code, GroupCode, Word};
use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::group::{Elem, UNMAPPED};
use crate::isometry::{factorial, Configuration, Equivalence, Isometry};

pub const DEFAULT_MAX_SEARCH_NODES: u64 = 10_000_000;

/// Groups up to this order are listed element by element.
pub const EXPLICIT_ELEMENTS_LIMIT: u64 = 10_000;

/// Groups up to this order get a closure-verified, greedily reduced
/// generating set.
pub const CLOSURE_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub max_nodes: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            max_nodes: DEFAULT_MAX_SEARCH_NODES,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum LocalMaps {
    Homomorphisms,
    Bijections,
}

struct Choice {
    src: usize,
    /// Partial map; `UNMAPPED` outside the source projection.
    map: Vec<Elem>,
}

struct Engine<'a> {
    q: usize,
    words: &'a [Word],
    /// `choices[j]`: admissible (source coordinate, local map) pairs for
    /// target coordinate `j`.
    choices: Vec<Vec<Choice>>,
    /// Sorted prefix keys of the target code, one vector per prefix length.
    targets: Vec<Vec<u128>>,
    /// `|π_{i,k}|` over pairs of source and of target coordinates. An
    /// isometry carries the pair `(σ(j), σ(k))` of `C` onto `(j, k)` of `D`.
    src_pairs: Vec<Vec<usize>>,
    dst_pairs: Vec<Vec<usize>>,
    max_nodes: u64,
    nodes: u64,
}

impl<'a> Engine<'a> {
    fn new(kind: LocalMaps, c: &'a Code, d: &Code, max_nodes: u64) -> Result<Self> {
        let (q, n) = (c.q(), c.length());
        if !fits_packed(q, n) {
            return Err(Error::resource(format!("packed prefix keys for {q}^{n}"), 128));
        }
        let src_vals: Vec<Vec<Elem>> = (0..n).map(|i| c.coordinate_values(i)).collect();
        let dst_vals: Vec<Vec<Elem>> = (0..n).map(|j| d.coordinate_values(j)).collect();
        let src_freq: Vec<Vec<usize>> = (0..n).map(|i| frequencies(c, i)).collect();
        let dst_freq: Vec<Vec<usize>> = (0..n).map(|j| frequencies(d, j)).collect();
        // `|π_{[n] \ {i}}|`, preserved coordinatewise by any isometry.
        let deleted = |code: &Code| -> Vec<usize> {
            (0..n)
                .map(|i| code.projection_size(&(0..n).filter(|&k| k != i).collect::<Vec<_>>()))
                .collect()
        };
        let (src_del, dst_del) = (deleted(c), deleted(d));
        let g = c.alphabet();
        let choices = (0..n)
            .map(|j| {
                let mut out = Vec::new();
                for i in 0..n {
                    if src_vals[i].len() != dst_vals[j].len() || src_del[i] != dst_del[j] {
                        continue;
                    }
                    let maps = match kind {
                        LocalMaps::Homomorphisms => g.subgroup_isomorphisms(&src_vals[i], &dst_vals[j]),
                        LocalMaps::Bijections => frequency_bijections(&src_vals[i], &src_freq[i], &dst_vals[j], &dst_freq[j], q),
                    };
                    out.extend(maps.into_iter().map(|map| Choice { src: i, map }));
                }
                out
            })
            .collect();
        let targets = (0..n)
            .map(|j| {
                let coords: Vec<usize> = (0..=j).collect();
                let mut keys: Vec<u128> = d.words().iter().map(|w| crate::code::packed_key(w, &coords, q)).collect();
                keys.sort_unstable();
                keys
            })
            .collect();
        let pairs = |code: &Code| -> Vec<Vec<usize>> {
            let size = |i: usize, k: usize| match i.cmp(&k) {
                std::cmp::Ordering::Equal => code.projection_size(&[i]),
                _ => code.projection_size(&[i.min(k), i.max(k)]),
            };
            (0..n).map(|i| (0..n).map(|k| size(i, k)).collect()).collect()
        };
        Ok(Self {
            q,
            words: c.words(),
            choices,
            targets,
            src_pairs: pairs(c),
            dst_pairs: pairs(d),
            max_nodes,
            nodes: 0,
        })
    }

    fn n(&self) -> usize {
        self.choices.len()
    }

    /// Choice indices of the first leaf whose leading levels equal `forced`.
    fn first_leaf(&mut self, forced: &[usize]) -> Result<Option<Vec<usize>>> {
        let n = self.n();
        let mut keys = vec![vec![0u128; self.words.len()]; n + 1];
        let mut used = vec![false; n];
        let mut path = Vec::with_capacity(n);
        let found = self.dfs(0, forced, &mut path, &mut used, &mut keys)?;
        Ok(found.then_some(path))
    }

    fn dfs(
        &mut self,
        level: usize,
        forced: &[usize],
        path: &mut Vec<usize>,
        used: &mut [bool],
        keys: &mut [Vec<u128>],
    ) -> Result<bool> {
        if level == self.n() {
            return Ok(true);
        }
        let range = match forced.get(level) {
            Some(&k) => k..k + 1,
            None => 0..self.choices[level].len(),
        };
        for k in range {
            let src = self.choices[level][k].src;
            if used[src] {
                continue;
            }
            let consistent = path
                .iter()
                .enumerate()
                .all(|(j, &p)| self.src_pairs[src][self.choices[j][p].src] == self.dst_pairs[level][j]);
            if !consistent {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::resource("isometry search nodes", self.max_nodes));
            }
            if !self.extend(level, k, keys) {
                continue;
            }
            used[src] = true;
            path.push(k);
            if self.dfs(level + 1, forced, path, used, keys)? {
                return Ok(true);
            }
            path.pop();
            used[src] = false;
        }
        Ok(false)
    }

    /// Writes the level-`level + 1` keys for choice `k` and checks them
    /// against the target multiset.
    fn extend(&self, level: usize, k: usize, keys: &mut [Vec<u128>]) -> bool {
        let choice = &self.choices[level][k];
        let q = self.q as u128;
        let (head, tail) = keys.split_at_mut(level + 1);
        let prev = &head[level];
        let next = &mut tail[0];
        for (slot, (w, &p)) in next.iter_mut().zip(self.words.iter().zip(prev.iter())) {
            *slot = p * q + choice.map[w[choice.src] as usize] as u128;
        }
        let mut sorted = next.clone();
        sorted.sort_unstable();
        sorted == self.targets[level]
    }

    fn leaf_isometry(&self, path: &[usize]) -> Isometry {
        let sigma: Vec<usize> = path.iter().enumerate().map(|(j, &k)| self.choices[j][k].src).collect();
        let maps = path
            .iter()
            .enumerate()
            .map(|(j, &k)| canonical_extension(&self.choices[j][k].map))
            .collect();
        Isometry::new(
            Configuration::new(maps, self.q).expect("canonical extension is a bijection"),
            Equivalence::new(sigma).expect("search assigns each source coordinate once"),
        )
        .expect("matching lengths")
    }

    /// Index of the identity choice at `level`, present when source and
    /// target coincide.
    fn identity_choice(&self, level: usize) -> Option<usize> {
        self.choices[level]
            .iter()
            .position(|c| c.src == level && c.map.iter().enumerate().all(|(a, &b)| b == UNMAPPED || b as usize == a))
    }
}

fn frequencies(c: &Code, i: usize) -> Vec<usize> {
    let mut f = vec![0; c.q()];
    for w in c.words() {
        f[w[i] as usize] += 1;
    }
    f
}

/// Bijections `src -> dst` (as partial maps over `0..q`) preserving symbol
/// frequencies, in lexicographic order.
fn frequency_bijections(src: &[Elem], sf: &[usize], dst: &[Elem], df: &[usize], q: usize) -> Vec<Vec<Elem>> {
    fn go(k: usize, src: &[Elem], sf: &[usize], dst: &[Elem], df: &[usize], used: &mut [bool], map: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if k == src.len() {
            out.push(map.clone());
            return;
        }
        let a = src[k];
        for (t, &b) in dst.iter().enumerate() {
            if used[t] || df[b as usize] != sf[a as usize] {
                continue;
            }
            used[t] = true;
            map[a as usize] = b;
            go(k + 1, src, sf, dst, df, used, map, out);
            map[a as usize] = UNMAPPED;
            used[t] = false;
        }
    }
    let mut out = Vec::new();
    let mut map = vec![UNMAPPED; q];
    let mut used = vec![false; dst.len()];
    go(0, src, sf, dst, df, &mut used, &mut map, &mut out);
    out
}

/// Completes a partial bijection by sending the unmapped symbols, in
/// increasing order, to the unused symbols in increasing order.
fn canonical_extension(partial: &[Elem]) -> Vec<Elem> {
    let q = partial.len();
    let mut hit = vec![false; q];
    for &b in partial.iter().filter(|&&b| b != UNMAPPED) {
        hit[b as usize] = true;
    }
    let mut free = (0..q as Elem).filter(|&b| !hit[b as usize]);
    partial
        .iter()
        .map(|&b| if b == UNMAPPED { free.next().expect("sizes agree") } else { b })
        .collect()
}

fn sorted_projection_sizes(c: &Code) -> Vec<usize> {
    let mut v = c.coordinate_projection_sizes();
    v.sort_unstable();
    v
}

fn distance_distribution(c: &Code) -> Vec<usize> {
    let mut dist = vec![0; c.length() + 1];
    let w = c.words();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            dist[distance_unchecked(&w[i], &w[j])] += 1;
        }
    }
    dist
}

fn check_comparable(c: &Code, d: &Code) -> Result<()> {
    if !c.same_alphabet(d) {
        return Err(Error::IncompatibleAlphabets(format!(
            "{} and {}",
            c.alphabet().label(),
            d.alphabet().label()
        )));
    }
    Ok(())
}

/// An isomorphism between group codes, with the per-coordinate homomorphism
/// property checked explicitly.
#[derive(Clone, Debug)]
pub struct GroupCodeIsomorphism {
    pub isometry: Isometry,
    pub verified_hom: bool,
}

/// Whether `φ` restricts to a group homomorphism on every coordinate
/// projection of `C` it reads from.
pub fn is_projection_homomorphism(c: &GroupCode, phi: &Isometry) -> bool {
    let g = c.alphabet();
    (0..c.length()).all(|j| {
        let src = phi.equivalence().image(j);
        let vals = c.coordinate_values(src);
        let f = &phi.configuration().maps()[j];
        vals.iter()
            .all(|&a| vals.iter().all(|&b| f[g.mul(a, b) as usize] == g.mul(f[a as usize], f[b as usize])))
    })
}

/// A group-code isomorphism `φ` with `φ(C) = D`, if one exists.
pub fn gc_isomorphic(c: &GroupCode, d: &GroupCode, opts: &SearchOptions) -> Result<Option<GroupCodeIsomorphism>> {
    check_comparable(c, d)?;
    if c.length() != d.length()
        || c.len() != d.len()
        || c.weight_distribution_identity() != d.weight_distribution_identity()
        || sorted_projection_sizes(c) != sorted_projection_sizes(d)
    {
        return Ok(None);
    }
    let mut engine = Engine::new(LocalMaps::Homomorphisms, c, d, opts.max_nodes)?;
    let Some(path) = engine.first_leaf(&[])? else {
        return Ok(None);
    };
    let isometry = engine.leaf_isometry(&path);
    if &isometry.apply_to_code(c)? != d.as_code() {
        return Err(Error::TheoremViolation("search leaf does not map C onto D".into()));
    }
    let verified_hom = is_projection_homomorphism(c, &isometry);
    Ok(Some(GroupCodeIsomorphism { isometry, verified_hom }))
}

/// An isometry `φ` of the ambient space with `φ(C) = D`, if one exists.
pub fn code_isomorphic(c: &Code, d: &Code, opts: &SearchOptions) -> Result<Option<Isometry>> {
    check_comparable(c, d)?;
    if c.length() != d.length()
        || c.len() != d.len()
        || sorted_projection_sizes(c) != sorted_projection_sizes(d)
        || distance_distribution(c) != distance_distribution(d)
    {
        return Ok(None);
    }
    let mut engine = Engine::new(LocalMaps::Bijections, c, d, opts.max_nodes)?;
    let Some(path) = engine.first_leaf(&[])? else {
        return Ok(None);
    };
    let isometry = engine.leaf_isometry(&path);
    if &isometry.apply_to_code(c)? != d {
        return Err(Error::TheoremViolation("search leaf does not map C onto D".into()));
    }
    Ok(Some(isometry))
}

/// Automorphism-group order predicted from a decomposition, per isotype.
#[derive(Clone, Debug, Serialize)]
pub struct IsotypeAut {
    /// Index of the representative block.
    pub representative: usize,
    pub component_order: BigUint,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AutStructure {
    pub isotypes: Vec<IsotypeAut>,
    /// `∏ |Aut(D_j)|^{α_j} · α_j!`.
    pub predicted_order: BigUint,
}

/// Automorphisms of a code as isometries of the ambient space. On
/// coordinates where the projection is a proper subset of the alphabet,
/// the symbols outside it may be permuted freely; `extension_factor`
/// counts these choices.
#[derive(Clone, Debug)]
pub struct AutGroupReport {
    /// `None` when the search stopped at the node cap.
    pub order: Option<BigUint>,
    pub complete: bool,
    /// Index of each stabilizer in the previous one, by coordinate.
    pub level_indices: Vec<usize>,
    pub extension_factor: BigUint,
    pub generators: Vec<Isometry>,
    /// Whether `generators` was greedily reduced and its closure checked
    /// against `order`.
    pub generators_verified: bool,
    /// Every element, sorted, for small groups.
    pub elements: Option<Vec<Isometry>>,
    pub nodes: u64,
    pub structure: Option<AutStructure>,
}

/// `Aut(C)` for a group code: isometries mapping `C` onto itself that are
/// homomorphisms on every coordinate projection.
pub fn aut_group(c: &GroupCode, opts: &SearchOptions) -> Result<AutGroupReport> {
    aut_impl(c, LocalMaps::Homomorphisms, opts)
}

/// `Aut(C)` for a plain code: all isometries mapping `C` onto itself.
pub fn code_aut_group(c: &Code, opts: &SearchOptions) -> Result<AutGroupReport> {
    aut_impl(c, LocalMaps::Bijections, opts)
}

fn aut_impl(c: &Code, kind: LocalMaps, opts: &SearchOptions) -> Result<AutGroupReport> {
    let (n, q) = (c.length(), c.q());
    let mut engine = Engine::new(kind, c, c, opts.max_nodes)?;
    let extension_factor = c
        .coordinate_projection_sizes()
        .into_iter()
        .fold(BigUint::one(), |acc, s| acc * factorial(q - s));

    // Stabilizer chain: at level j, with levels < j fixed to the identity,
    // every choice extending to a leaf gives one coset representative.
    let mut level_indices = Vec::with_capacity(n);
    let mut reps = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    let mut complete = true;
    'levels: for j in 0..n {
        let id = engine.identity_choice(j).expect("identity is always admissible");
        let mut count = 0;
        for k in 0..engine.choices[j].len() {
            if k == id {
                count += 1;
                continue;
            }
            let mut forced = prefix.clone();
            forced.push(k);
            match engine.first_leaf(&forced) {
                Ok(Some(path)) => {
                    count += 1;
                    reps.push(engine.leaf_isometry(&path));
                }
                Ok(None) => {}
                Err(e) if e.is_resource_limit() => {
                    complete = false;
                    break 'levels;
                }
                Err(e) => return Err(e),
            }
        }
        level_indices.push(count);
        prefix.push(id);
    }

    let mut kernel = Vec::new();
    for j in 0..n {
        let vals = c.coordinate_values(j);
        let outside: Vec<Elem> = (0..q as Elem).filter(|a| vals.binary_search(a).is_err()).collect();
        for pair in outside.windows(2) {
            let mut maps: Vec<Vec<Elem>> = (0..n).map(|_| (0..q as Elem).collect()).collect();
            maps[j].swap(pair[0] as usize, pair[1] as usize);
            kernel.push(Isometry::from_configuration(Configuration::new(maps, q)?));
        }
    }

    let mut report = AutGroupReport {
        order: None,
        complete,
        level_indices,
        extension_factor,
        generators: Vec::new(),
        generators_verified: false,
        elements: None,
        nodes: engine.nodes,
        structure: None,
    };
    let candidates: Vec<Isometry> = reps.into_iter().chain(kernel).collect();
    if !complete {
        report.generators = candidates;
        return Ok(report);
    }
    let order = report
        .level_indices
        .iter()
        .fold(report.extension_factor.clone(), |acc, &k| acc * BigUint::from(k));
    let small = order
        .to_u64()
        .filter(|&o| o <= CLOSURE_LIMIT && n <= u16::MAX as usize && q <= u16::MAX as usize);
    if let Some(o) = small {
        let (gens, elements) = reduce_generators(candidates, n, q);
        if elements.len() as u64 != o {
            return Err(Error::TheoremViolation(format!(
                "generated group has {} elements, counted {o}",
                elements.len()
            )));
        }
        report.generators = gens;
        report.generators_verified = true;
        if o <= EXPLICIT_ELEMENTS_LIMIT {
            let mut all = elements;
            all.sort();
            report.elements = Some(all);
        }
    } else {
        report.generators = candidates;
    }
    report.order = Some(order);
    Ok(report)
}

/// Keeps each candidate that is not already generated by the earlier ones.
/// Returns the kept generators and the full closure.
///
/// Elements are stored as flat keys `σ(0..n) ++ f_0 ++ … ++ f_{n-1}`. When a
/// generator `g` joins a closed set `H`, the new elements are reached from
/// `H·g` by right multiplication with all generators, so `H` itself is never
/// rescanned.
fn reduce_generators(candidates: Vec<Isometry>, n: usize, q: usize) -> (Vec<Isometry>, Vec<Isometry>) {
    let compose = |a: &[u16], b: &[u16]| -> Box<[u16]> {
        let mut out = vec![0u16; n + n * q];
        for j in 0..n {
            let sa = a[j] as usize;
            out[j] = b[sa];
            let fa = &a[n + j * q..n + (j + 1) * q];
            let fb = &b[n + sa * q..n + (sa + 1) * q];
            for (x, o) in out[n + j * q..n + (j + 1) * q].iter_mut().enumerate() {
                *o = fa[fb[x] as usize];
            }
        }
        out.into_boxed_slice()
    };
    let key = |g: &Isometry| -> Box<[u16]> {
        let mut k: Vec<u16> = g.equivalence().as_slice().iter().map(|&s| s as u16).collect();
        for m in g.configuration().maps() {
            k.extend(m.iter().map(|&x| x as u16));
        }
        k.into_boxed_slice()
    };
    let mut gens: Vec<Isometry> = Vec::new();
    let mut gen_keys: Vec<Box<[u16]>> = Vec::new();
    let mut closure: HashSet<Box<[u16]>> = HashSet::from([key(&Isometry::identity(n, q))]);
    let mut order: Vec<Box<[u16]>> = closure.iter().cloned().collect();
    for g in candidates {
        let gk = key(&g);
        if closure.contains(&gk) {
            continue;
        }
        gens.push(g);
        gen_keys.push(gk);
        let gk = gen_keys.last().expect("just pushed");
        let mut queue: VecDeque<Box<[u16]>> = VecDeque::new();
        for h in &order {
            let y = compose(h, gk);
            if closure.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        while let Some(x) = queue.pop_front() {
            for s in &gen_keys {
                let y = compose(&x, s);
                if closure.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
            order.push(x);
        }
    }
    let elements = order
        .into_iter()
        .map(|k| {
            let sigma = k[..n].iter().map(|&s| s as usize).collect();
            let maps = k[n..].chunks(q.max(1)).map(|m| m.iter().map(|&x| x as Elem).collect()).collect();
            Isometry::new(Configuration::new(maps, q).expect("closed under composition"), Equivalence::new(sigma).expect("permutation"))
                .expect("matching lengths")
        })
        .collect();
    (gens, elements)
}

/// `aut_group` together with the order predicted from a decomposition into
/// indecomposables. A mismatch is reported as an error.
pub fn aut_group_with_decomposition(c: &GroupCode, dec: &Decomposition, opts: &SearchOptions) -> Result<AutGroupReport> {
    let mut report = aut_group(c, opts)?;
    let mut isotypes = Vec::new();
    let mut predicted = BigUint::one();
    for t in &dec.isotypes {
        let rep = GroupCode::trusted(dec.components[t.representative].clone());
        let sub = aut_group(&rep, opts)?;
        let Some(order) = sub.order else {
            return Err(Error::resource("component automorphism search", opts.max_nodes));
        };
        let alpha = t.multiplicity();
        predicted *= order.pow(alpha as u32) * factorial(alpha);
        isotypes.push(IsotypeAut {
            representative: t.representative,
            component_order: order,
            multiplicity: alpha,
        });
    }
    if let Some(order) = &report.order {
        if *order != predicted {
            return Err(Error::TheoremViolation(format!(
                "automorphism group has order {order}, decomposition predicts {predicted}"
            )));
        }
    }
    report.structure = Some(AutStructure {
        isotypes,
        predicted_order: predicted,
    });
    Ok(report)
}

/// Checks that an automorphism `φ` of `C` permutes the blocks of `dec`
/// within isotypes: for every block `B`, `σ⁻¹(B)` is a block of the same
/// isotype and `φ` maps the codewords supported on `B` onto those supported
/// on `σ⁻¹(B)`.
pub fn verify_block_preservation(c: &GroupCode, dec: &Decomposition, phi: &Isometry) -> Result<bool> {
    if &phi.apply_to_code(c)? != c.as_code() || !is_projection_homomorphism(c, phi) {
        return Err(Error::Precondition("isometry is not an automorphism of the code".into()));
    }
    let n = c.length();
    let e = c.alphabet().identity();
    let inv = phi.equivalence().inverse();
    let isotype = dec.isotype_of_blocks();
    let supported_on = |block: &[usize]| -> HashSet<Word> {
        c.words()
            .iter()
            .filter(|w| (0..n).all(|t| block.contains(&t) || w[t] == e))
            .cloned()
            .collect()
    };
    for (b, block) in dec.blocks.iter().enumerate() {
        let mut image: Vec<usize> = block.iter().map(|&t| inv.image(t)).collect();
        image.sort_unstable();
        let Some(k) = dec.blocks.iter().position(|other| *other == image) else {
            return Ok(false);
        };
        if isotype[b] != isotype[k] {
            return Ok(false);
        }
        let mapped: HashSet<Word> = supported_on(block).iter().map(|w| phi.apply_pull(w)).collect::<Result<_>>()?;
        if mapped != supported_on(&image) {
            return Ok(false);
        }
    }
    Ok(true)
}
