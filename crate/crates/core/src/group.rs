//! Finite groups given by explicit multiplication tables.
//!
//! Elements are the dense indices `0..q`. A [`FiniteGroup`] is validated once
//! at construction; every other operation assumes the group axioms hold.

use std::collections::VecDeque;

use crate::error::{Axiom, Error, Result};

/// Element index of a finite group (or of a plain alphabet).
pub type Elem = u32;

/// Marker for "not yet assigned" entries in partial element maps.
pub const UNMAPPED: Elem = Elem::MAX;

/// Default order cap for [`FiniteGroup::automorphisms`].
pub const DEFAULT_AUTOMORPHISM_CAP: usize = 16;

/// Above this order the associativity check only runs over a generating set.
const FULL_ASSOCIATIVITY_LIMIT: usize = 128;

/// How a group was constructed. Only used for labels and serialization.
#[derive(Clone, Debug)]
pub enum GroupKind {
    Cyclic { modulus: usize },
    Product { factors: Vec<FiniteGroup> },
    Table,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
    inverse: Vec<Elem>,
    label: String,
    kind: GroupKind,
}

/// Two groups are the same alphabet iff their tables agree entry by entry.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// The cyclic group `Z/m` with addition modulo `m`.
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let mut table = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                table.push(((a + b) % m) as Elem);
            }
        }
        let inverse = (0..m).map(|a| ((m - a) % m) as Elem).collect();
        Ok(FiniteGroup {
            order: m,
            table,
            identity: 0,
            inverse,
            label: format!("Z/{m}"),
            kind: GroupKind::Cyclic { modulus: m },
        })
    }

    /// Direct product with mixed-radix encoding; the first factor is the most
    /// significant digit, so element indices follow lexicographic tuple order.
    pub fn product(factors: &[FiniteGroup]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("product of an empty list of groups".into()));
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, g| acc.checked_mul(g.order))
            .filter(|&q| q <= u32::MAX as usize / 2)
            .ok_or_else(|| Error::InvalidInput("product group order overflows".into()))?;
        let radices: Vec<usize> = factors.iter().map(|g| g.order).collect();
        let decode = |mut x: usize| {
            let mut digits = vec![0usize; radices.len()];
            for (i, &r) in radices.iter().enumerate().rev() {
                digits[i] = x % r;
                x /= r;
            }
            digits
        };
        let encode = |digits: &[usize]| digits.iter().zip(&radices).fold(0usize, |acc, (&d, &r)| acc * r + d);

        let decoded: Vec<Vec<usize>> = (0..order).map(decode).collect();
        let mut table = Vec::with_capacity(order * order);
        let mut buf = vec![0usize; factors.len()];
        for a in &decoded {
            for b in &decoded {
                for (i, g) in factors.iter().enumerate() {
                    buf[i] = g.mul(a[i] as Elem, b[i] as Elem) as usize;
                }
                table.push(encode(&buf) as Elem);
            }
        }
        let identity = encode(&factors.iter().map(|g| g.identity as usize).collect::<Vec<_>>()) as Elem;
        let inverse = decoded
            .iter()
            .map(|a| {
                let inv: Vec<usize> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, g)| g.inv(a[i] as Elem) as usize)
                    .collect();
                encode(&inv) as Elem
            })
            .collect();
        let label = factors.iter().map(|g| g.label.as_str()).collect::<Vec<_>>().join(" x ");
        Ok(FiniteGroup {
            order,
            table,
            identity,
            inverse,
            label,
            kind: GroupKind::Product {
                factors: factors.to_vec(),
            },
        })
    }

    /// Validates a multiplication table and infers identity and inverses.
    pub fn from_table(rows: &[Vec<Elem>], label: impl Into<String>) -> Result<Self> {
        let q = rows.len();
        if q == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let mut table = Vec::with_capacity(q * q);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != q {
                return Err(Error::InvalidInput(format!(
                    "table row {a} has {} entries, expected {q}",
                    row.len()
                )));
            }
            for (b, &v) in row.iter().enumerate() {
                if v as usize >= q {
                    return Err(Error::NotAGroup {
                        axiom: Axiom::Closure,
                        witness: (a as Elem, b as Elem, v),
                    });
                }
            }
            table.extend_from_slice(row);
        }
        let at = |a: usize, b: usize| table[a * q + b];

        // Latin square: every row and column is a permutation.
        for a in 0..q {
            let mut row_seen = vec![false; q];
            let mut col_seen = vec![false; q];
            for b in 0..q {
                let r = at(a, b) as usize;
                if std::mem::replace(&mut row_seen[r], true) {
                    return Err(Error::NotAGroup {
                        axiom: Axiom::LatinSquare,
                        witness: (a as Elem, b as Elem, r as Elem),
                    });
                }
                let c = at(b, a) as usize;
                if std::mem::replace(&mut col_seen[c], true) {
                    return Err(Error::NotAGroup {
                        axiom: Axiom::LatinSquare,
                        witness: (b as Elem, a as Elem, c as Elem),
                    });
                }
            }
        }

        // The unique e with e*0 = 0 is the only identity candidate.
        let e = (0..q).find(|&x| at(x, 0) == 0).expect("latin square column 0 is a permutation");
        for a in 0..q {
            if at(e, a) as usize != a || at(a, e) as usize != a {
                let bad = if at(e, a) as usize != a { at(e, a) } else { at(a, e) };
                return Err(Error::NotAGroup {
                    axiom: Axiom::Identity,
                    witness: (e as Elem, a as Elem, bad),
                });
            }
        }

        let mut inverse = vec![0 as Elem; q];
        for a in 0..q {
            let b = (0..q).find(|&b| at(a, b) as usize == e).expect("latin square row is a permutation");
            if at(b, a) as usize != e {
                return Err(Error::NotAGroup {
                    axiom: Axiom::Inverse,
                    witness: (a as Elem, b as Elem, at(b, a)),
                });
            }
            inverse[a] = b as Elem;
        }

        let group = FiniteGroup {
            order: q,
            table,
            identity: e as Elem,
            inverse,
            label: label.into(),
            kind: GroupKind::Table,
        };
        group.check_associativity()?;
        Ok(group)
    }

    fn check_associativity(&self) -> Result<()> {
        let q = self.order;
        // Elements b with (ab)c = a(bc) for all a, c are closed under
        // multiplication, so checking a generating set of middles suffices.
        let middles: Vec<Elem> = if q <= FULL_ASSOCIATIVITY_LIMIT {
            (0..q as Elem).collect()
        } else {
            self.generating_set()
        };
        for a in 0..q as Elem {
            for &b in &middles {
                let ab = self.mul(a, b);
                for c in 0..q as Elem {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotAGroup {
                            axiom: Axiom::Associativity,
                            witness: (a, b, c),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn inverses(&self) -> &[Elem] {
        &self.inverse
    }

    /// The table as nested rows, `rows[a][b] = a * b`.
    pub fn table_rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        let q = self.order as Elem;
        (0..q).all(|a| (a + 1..q).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Orders of the direct factors, or `[q]` for a group that is not a product.
    pub fn factor_orders(&self) -> Vec<usize> {
        match &self.kind {
            GroupKind::Product { factors } => factors.iter().map(|g| g.order).collect(),
            _ => vec![self.order],
        }
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut member = vec![false; self.order];
        let mut queue = VecDeque::from([self.identity]);
        member[self.identity as usize] = true;
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !member[b as usize] {
                    member[b as usize] = true;
                    queue.push_back(b);
                }
            }
        }
        (0..self.order as Elem).filter(|&a| member[a as usize]).collect()
    }

    /// Greedy generating set: repeatedly adds the smallest element not yet
    /// in the generated subgroup.
    pub fn generating_set(&self) -> Vec<Elem> {
        let all: Vec<Elem> = (0..self.order as Elem).collect();
        self.generating_set_of(&all)
    }

    /// Greedy generating set of the subgroup whose sorted elements are `elems`.
    pub fn generating_set_of(&self, elems: &[Elem]) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut current = vec![self.identity];
        while current.len() < elems.len() {
            let next = elems
                .iter()
                .copied()
                .find(|a| current.binary_search(a).is_err())
                .expect("subgroup is strictly smaller than the element list");
            gens.push(next);
            current = self.subgroup_generated(&gens);
        }
        gens
    }

    /// All group isomorphisms from the subgroup `source` onto the subgroup
    /// `target`, as partial maps over `0..q` (entries outside `source` are
    /// [`UNMAPPED`]). Both slices must be sorted subgroups of `self`.
    pub fn subgroup_isomorphisms(&self, source: &[Elem], target: &[Elem]) -> Vec<Vec<Elem>> {
        if source.len() != target.len() {
            return Vec::new();
        }
        let gens = self.generating_set_of(source);
        let candidates: Vec<Vec<Elem>> = gens
            .iter()
            .map(|&g| {
                let k = self.element_order(g);
                target.iter().copied().filter(|&t| self.element_order(t) == k).collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut images = Vec::with_capacity(gens.len());
        self.extend_generator_images(&gens, &candidates, &mut images, target.len(), &mut out);
        out.sort();
        out
    }

    fn extend_generator_images(
        &self,
        gens: &[Elem],
        candidates: &[Vec<Elem>],
        images: &mut Vec<Elem>,
        target_size: usize,
        out: &mut Vec<Vec<Elem>>,
    ) {
        let k = images.len();
        if k == gens.len() {
            if let Some(map) = self.homomorphism_from_images(gens, images) {
                let defined = map.iter().filter(|&&x| x != UNMAPPED).count();
                if defined == target_size {
                    out.push(map);
                }
            }
            return;
        }
        for &img in &candidates[k] {
            images.push(img);
            if self.homomorphism_from_images(&gens[..=k], images).is_some() {
                self.extend_generator_images(gens, candidates, images, target_size, out);
            }
            images.pop();
        }
    }

    /// Extends `gens[i] -> images[i]` to an injective homomorphism on the
    /// generated subgroup, or `None` if the assignment is inconsistent.
    fn homomorphism_from_images(&self, gens: &[Elem], images: &[Elem]) -> Option<Vec<Elem>> {
        let q = self.order;
        let mut map = vec![UNMAPPED; q];
        let mut used = vec![false; q];
        map[self.identity as usize] = self.identity;
        used[self.identity as usize] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            let fa = map[a as usize];
            for (&g, &h) in gens.iter().zip(images) {
                let b = self.mul(a, g);
                let fb = self.mul(fa, h);
                match map[b as usize] {
                    UNMAPPED => {
                        if std::mem::replace(&mut used[fb as usize], true) {
                            return None;
                        }
                        map[b as usize] = fb;
                        queue.push_back(b);
                    }
                    existing if existing != fb => return None,
                    _ => {}
                }
            }
        }
        Some(map)
    }

    /// Every automorphism of the group, sorted by mapping. Search backtracks
    /// over images of a greedy generating set.
    pub fn automorphisms(&self) -> Result<Vec<GroupAutomorphism>> {
        self.automorphisms_capped(DEFAULT_AUTOMORPHISM_CAP)
    }

    pub fn automorphisms_capped(&self, max_order: usize) -> Result<Vec<GroupAutomorphism>> {
        if self.order > max_order {
            return Err(Error::resource(
                format!("automorphism search on a group of order {}", self.order),
                max_order as u64,
            ));
        }
        let all: Vec<Elem> = (0..self.order as Elem).collect();
        Ok(self
            .subgroup_isomorphisms(&all, &all)
            .into_iter()
            .map(|mapping| GroupAutomorphism { mapping })
            .collect())
    }
}

/// A bijection of the group's elements that respects multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAutomorphism {
    pub mapping: Vec<Elem>,
}

impl GroupAutomorphism {
    pub fn identity(order: usize) -> Self {
        GroupAutomorphism {
            mapping: (0..order as Elem).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.mapping[a as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        GroupAutomorphism {
            mapping: other.mapping.iter().map(|&a| self.apply(a)).collect(),
        }
    }

    pub fn inverse(&self) -> GroupAutomorphism {
        let mut mapping = vec![0; self.mapping.len()];
        for (a, &b) in self.mapping.iter().enumerate() {
            mapping[b as usize] = a as Elem;
        }
        GroupAutomorphism { mapping }
    }

    /// Checks bijectivity, identity preservation and the homomorphism law.
    pub fn is_automorphism_of(&self, g: &FiniteGroup) -> bool {
        let q = g.order();
        if self.mapping.len() != q {
            return false;
        }
        let mut seen = vec![false; q];
        for &b in &self.mapping {
            if b as usize >= q || std::mem::replace(&mut seen[b as usize], true) {
                return false;
            }
        }
        if self.apply(g.identity()) != g.identity() {
            return false;
        }
        (0..q as Elem).all(|a| (0..q as Elem).all(|b| self.apply(g.mul(a, b)) == g.mul(self.apply(a), self.apply(b))))
    }
}
