use std::sync::Arc;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::partition::{Partition, UnionFind};

/// A finite set with a right action of a finite monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteMSet {
    monoid: Arc<FiniteMonoid>,
    size: usize,
    /// `action[x * |M| + m] = x·m`
    action: Vec<usize>,
}

/// An equivariant map, stored as the image of each source element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MSetMap {
    pub map: Vec<usize>,
}

impl FiniteMSet {
    /// Validates an action given as rows `rows[x][m] = x·m`.
    pub fn new(monoid: Arc<FiniteMonoid>, rows: &[Vec<usize>]) -> Result<Self> {
        let n = monoid.size();
        let k = rows.len();
        let mut action = Vec::with_capacity(k * n);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidAction(format!(
                    "row {x} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= k) {
                return Err(Error::InvalidAction(format!("value {v} in row {x} is out of range")));
            }
            action.extend_from_slice(row);
        }
        let x = Self {
            monoid,
            size: k,
            action,
        };
        x.check_axioms()?;
        Ok(x)
    }

    pub fn from_fn(monoid: Arc<FiniteMonoid>, size: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = monoid.size();
        let rows: Vec<Vec<usize>> = (0..size).map(|x| (0..n).map(|m| f(x, m)).collect()).collect();
        Self::new(monoid, &rows)
    }

    pub(crate) fn from_flat_unchecked(monoid: Arc<FiniteMonoid>, size: usize, action: Vec<usize>) -> Self {
        debug_assert_eq!(action.len(), size * monoid.size());
        let x = Self { monoid, size, action };
        debug_assert!(x.check_axioms().is_ok());
        x
    }

    fn check_axioms(&self) -> Result<()> {
        let m = &self.monoid;
        for x in 0..self.size {
            if self.act(x, 0) != x {
                return Err(Error::InvalidAction(format!("{x}·1 = {} ≠ {x}", self.act(x, 0))));
            }
            for a in m.elements() {
                for b in m.elements() {
                    if self.act(self.act(x, a), b) != self.act(x, m.mul(a, b)) {
                        return Err(Error::InvalidAction(format!("({x}·{a})·{b} ≠ {x}·({a}{b})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `M` acting on itself by right multiplication.
    pub fn representable(monoid: Arc<FiniteMonoid>) -> Self {
        let n = monoid.size();
        let action = (0..n * n).map(|i| monoid.mul(i / n, i % n)).collect();
        Self::from_flat_unchecked(monoid, n, action)
    }

    /// `k` points, each fixed by everything.
    pub fn trivial(monoid: Arc<FiniteMonoid>, k: usize) -> Self {
        let n = monoid.size();
        let action = (0..k * n).map(|i| i / n).collect();
        Self::from_flat_unchecked(monoid, k, action)
    }

    pub fn terminal(monoid: Arc<FiniteMonoid>) -> Self {
        Self::trivial(monoid, 1)
    }

    pub fn empty(monoid: Arc<FiniteMonoid>) -> Self {
        Self::trivial(monoid, 0)
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn act(&self, x: usize, m: usize) -> usize {
        self.action[x * self.monoid.size() + m]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        if self.monoid.size() == 0 {
            return Vec::new();
        }
        self.action.chunks(self.monoid.size()).map(|r| r.to_vec()).collect()
    }

    pub fn same_monoid(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.monoid, &other.monoid) || self.monoid == other.monoid
    }

    pub(crate) fn require_same_monoid(&self, other: &Self) -> Result<()> {
        if self.same_monoid(other) {
            Ok(())
        } else {
            Err(Error::MonoidMismatch)
        }
    }

    /// `Γ(X)`: the points fixed by every element.
    pub fn fixed_points(&self) -> ElementSet {
        ElementSet::from_indices(
            self.size,
            (0..self.size).filter(|&x| self.monoid.elements().all(|m| self.act(x, m) == x)),
        )
    }

    /// `C(X)`: connected components of the action graph.
    pub fn components(&self) -> Partition {
        let mut uf = UnionFind::new(self.size);
        for x in 0..self.size {
            for m in self.monoid.elements() {
                uf.union(x, self.act(x, m));
            }
        }
        uf.into_partition()
    }

    pub fn component_count(&self) -> usize {
        self.components().class_count()
    }

    /// `x·M`.
    pub fn orbit(&self, x: usize) -> ElementSet {
        ElementSet::from_indices(self.size, self.monoid.elements().map(|m| self.act(x, m)))
    }

    pub fn is_closed(&self, subset: &ElementSet) -> bool {
        subset
            .iter()
            .all(|x| self.monoid.elements().all(|m| subset.contains(self.act(x, m))))
    }

    /// The sub-M-set on a closed subset, with its inclusion map.
    pub fn sub_mset(&self, subset: &ElementSet) -> Result<(FiniteMSet, MSetMap)> {
        if !self.is_closed(subset) {
            return Err(Error::InvalidAction("subset is not closed under the action".into()));
        }
        let members = subset.to_vec();
        let mut index = vec![usize::MAX; self.size];
        for (i, &x) in members.iter().enumerate() {
            index[x] = i;
        }
        let n = self.monoid.size();
        let action = members
            .iter()
            .flat_map(|&x| (0..n).map(move |m| (x, m)))
            .map(|(x, m)| index[self.act(x, m)])
            .collect();
        Ok((
            Self::from_flat_unchecked(self.monoid.clone(), members.len(), action),
            MSetMap { map: members },
        ))
    }

    /// `X / ∼` for the least equivariant equivalence containing `pairs`,
    /// together with the quotient map.
    pub fn quotient_by_pairs(&self, pairs: &[(usize, usize)]) -> (FiniteMSet, MSetMap) {
        let classes = self.generated_equivalence(pairs);
        self.quotient_by_partition(&classes)
    }

    /// The least equivalence containing `pairs` and closed under the action.
    pub fn generated_equivalence(&self, pairs: &[(usize, usize)]) -> Partition {
        let mut uf = UnionFind::new(self.size);
        let mut queue: Vec<(usize, usize)> = Vec::new();
        for &(a, b) in pairs {
            if uf.union(a, b) {
                queue.push((a, b));
            }
        }
        while let Some((a, b)) = queue.pop() {
            for m in self.monoid.elements() {
                let (am, bm) = (self.act(a, m), self.act(b, m));
                if uf.union(am, bm) {
                    queue.push((am, bm));
                }
            }
        }
        uf.into_partition()
    }

    /// Quotient by a partition assumed compatible with the action.
    pub fn quotient_by_partition(&self, classes: &Partition) -> (FiniteMSet, MSetMap) {
        let reps = classes.representatives();
        let n = self.monoid.size();
        let action = reps
            .iter()
            .flat_map(|&r| (0..n).map(move |m| (r, m)))
            .map(|(r, m)| classes.class_of(self.act(r, m)))
            .collect();
        (
            Self::from_flat_unchecked(self.monoid.clone(), reps.len(), action),
            MSetMap {
                map: classes.classes_vec().to_vec(),
            },
        )
    }

    /// Same action over a different (equal) monoid handle.
    pub fn rebased(&self, monoid: Arc<FiniteMonoid>) -> Result<Self> {
        if *monoid != *self.monoid {
            return Err(Error::MonoidMismatch);
        }
        Ok(Self {
            monoid,
            size: self.size,
            action: self.action.clone(),
        })
    }
}

impl MSetMap {
    /// Validates that `map` is an equivariant map `source → target`.
    pub fn new(source: &FiniteMSet, target: &FiniteMSet, map: Vec<usize>) -> Result<Self> {
        source.require_same_monoid(target)?;
        if map.len() != source.size() {
            return Err(Error::InvalidAction(format!(
                "map has {} entries, source has {}",
                map.len(),
                source.size()
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.size()) {
            return Err(Error::InvalidAction(format!("image {v} out of range")));
        }
        let f = Self { map };
        if let Some((element, acting)) = f.equivariance_failure(source, target) {
            return Err(Error::NotEquivariant { element, acting });
        }
        Ok(f)
    }

    pub fn identity(size: usize) -> Self {
        Self {
            map: (0..size).collect(),
        }
    }

    pub fn equivariance_failure(&self, source: &FiniteMSet, target: &FiniteMSet) -> Option<(usize, usize)> {
        (0..source.size()).find_map(|x| {
            source
                .monoid()
                .elements()
                .find(|&m| self.map[source.act(x, m)] != target.act(self.map[x], m))
                .map(|m| (x, m))
        })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &MSetMap) -> MSetMap {
        MSetMap {
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.map.iter().all(|y| seen.insert(*y))
    }

    pub fn is_surjective(&self, target_size: usize) -> bool {
        ElementSet::from_indices(target_size, self.map.iter().copied()).len() == target_size
    }

    pub fn image(&self, target_size: usize) -> ElementSet {
        ElementSet::from_indices(target_size, self.map.iter().copied())
    }
}
