//! Partitions of `{0, .., n-1}` in canonical first-occurrence form.

use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;

/// A partition stored as a class index per element. Class indices are
/// assigned in order of first occurrence, so two partitions are equal iff
/// their vectors are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    class_of: Vec<usize>,
    class_count: usize,
}

impl Partition {
    /// Canonicalizes an arbitrary labelling into first-occurrence form.
    pub fn from_labels<T: Eq + std::hash::Hash + Clone>(labels: &[T]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let class_of = labels
            .iter()
            .map(|l| {
                let next = seen.len();
                *seen.entry(l.clone()).or_insert(next)
            })
            .collect();
        Self {
            class_of,
            class_count: seen.len(),
        }
    }

    pub fn discrete(n: usize) -> Self {
        Self {
            class_of: (0..n).collect(),
            class_count: n,
        }
    }

    pub fn total(n: usize) -> Self {
        Self {
            class_of: vec![0; n],
            class_count: usize::from(n > 0),
        }
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes_vec(&self) -> &[usize] {
        &self.class_of
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// The members of each class, classes in index order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.class_count];
        for (x, &c) in self.class_of.iter().enumerate() {
            blocks[c].push(x);
        }
        blocks
    }

    pub fn block_sets(&self) -> Vec<ElementSet> {
        self.blocks()
            .into_iter()
            .map(|b| ElementSet::from_indices(self.len(), b))
            .collect()
    }

    /// Least representative of each class.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.class_count];
        for (x, &c) in self.class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        reps
    }

    /// `self ⊆ other` as relations, i.e. `self` refines `other`.
    pub fn refines(&self, other: &Self) -> bool {
        let mut image = vec![usize::MAX; self.class_count];
        for (x, &c) in self.class_of.iter().enumerate() {
            let d = other.class_of[x];
            if image[c] == usize::MAX {
                image[c] = d;
            } else if image[c] != d {
                return false;
            }
        }
        true
    }

    /// Common refinement.
    pub fn meet(&self, other: &Self) -> Self {
        let pairs: Vec<(usize, usize)> = self
            .class_of
            .iter()
            .zip(&other.class_of)
            .map(|(&a, &b)| (a, b))
            .collect();
        Self::from_labels(&pairs)
    }

    /// Finest common coarsening (as equivalence relations, not closed under
    /// any action).
    pub fn join(&self, other: &Self) -> Self {
        let mut uf = UnionFind::new(self.len());
        for part in [self, other] {
            for block in part.blocks() {
                for w in block.windows(2) {
                    uf.union(w[0], w[1]);
                }
            }
        }
        uf.into_partition()
    }
}

/// Disjoint-set forest with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the two classes were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller root so results do not depend on call order
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&roots)
    }
}
