//! Finite monoids given by multiplication tables.
//!
//! `table[i][j]` is the product `i·j` (row = left factor) and element `0` is
//! always the identity. Loaders that accept an arbitrary identity re-index the
//! table by swapping the identity with `0`.

mod enumerate;
mod iso;
mod profile;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};

pub use enumerate::{enumerate_monoids, MAX_ENUMERATION_SIZE};
pub use iso::{element_invariant, monoid_isomorphism, ElementInvariant};
pub use profile::{algebraic_profile, MonoidProfile};

/// An associative multiplication table with identity `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteMonoid {
    size: usize,
    table: Vec<usize>,
}

/// A validated monoid together with the relabelling applied to its input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeled {
    pub monoid: FiniteMonoid,
    /// `old_to_new[x]` is the index of input element `x` in `monoid`.
    pub old_to_new: Vec<usize>,
}

/// Checks every monoid axiom of `rows` with the given identity and returns
/// the monoid re-indexed so that the identity is element `0`.
pub fn validate_monoid(rows: &[Vec<usize>], identity: usize) -> Result<Relabeled> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                row: i,
                len: row.len(),
                size: n,
            });
        }
        if let Some((j, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::OutOfRange {
                row: i,
                col: j,
                value: v,
                size: n,
            });
        }
    }
    if identity >= n {
        return Err(Error::OutOfRange {
            row: identity,
            col: identity,
            value: identity,
            size: n,
        });
    }
    if let Some(w) = (0..n).find(|&j| rows[identity][j] != j || rows[j][identity] != j) {
        return Err(Error::BadIdentity { identity, witness: w });
    }
    for i in 0..n {
        for j in 0..n {
            let ij = rows[i][j];
            for k in 0..n {
                if rows[ij][k] != rows[i][rows[j][k]] {
                    return Err(Error::NotAssociative(i, j, k));
                }
            }
        }
    }

    let swap = |x: usize| {
        if x == identity {
            0
        } else if x == 0 {
            identity
        } else {
            x
        }
    };
    let old_to_new: Vec<usize> = (0..n).map(swap).collect();
    let mut table = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            table[swap(i) * n + swap(j)] = swap(rows[i][j]);
        }
    }
    Ok(Relabeled {
        monoid: FiniteMonoid { size: n, table },
        old_to_new,
    })
}

/// Returns the first element acting as a two-sided identity in `rows`.
pub fn detect_identity(rows: &[Vec<usize>]) -> Option<usize> {
    let n = rows.len();
    (0..n).find(|&e| rows[e].len() == n && (0..n).all(|j| rows[e].get(j) == Some(&j) && rows[j].get(e) == Some(&j)))
}

impl FiniteMonoid {
    /// Validates `rows` with identity `0`.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        validate_monoid(&rows, 0).map(|r| r.monoid)
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows = (0..size).map(|i| (0..size).map(|j| f(i, j)).collect()).collect();
        Self::new(rows)
    }

    /// Builds from a flat table already known to satisfy the axioms.
    pub(crate) fn from_flat_unchecked(size: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), size * size);
        Self { size, table }
    }

    pub fn trivial() -> Self {
        Self {
            size: 1,
            table: vec![0],
        }
    }

    /// The cyclic group `ℤ/n` under addition.
    pub fn cyclic_group(n: usize) -> Self {
        Self::from_fn(n, |i, j| (i + j) % n).expect("cyclic group")
    }

    /// Identity plus `k` right-absorbing elements (`x·m = x`). With `k = 2`
    /// this is the three-element monoid `{1, a, b}` whose action topos is
    /// the topos of reflexive graphs.
    pub fn with_right_zeros(k: usize) -> Self {
        Self::from_fn(k + 1, |i, j| if i == 0 { j } else { i }).expect("right zeros")
    }

    /// `{1, z}` with `z·z = z`.
    pub fn with_zero() -> Self {
        Self::from_fn(2, |i, j| i.max(j)).expect("two-element semilattice")
    }

    /// Truncated addition on `{0, .., cap}`: `p + q` capped at `cap`.
    pub fn truncated_addition(cap: usize) -> Self {
        Self::from_fn(cap + 1, |i, j| (i + j).min(cap)).expect("truncated addition")
    }

    /// All self-maps of `{0, .., n-1}`, composed left to right: `(f·g)(x) =
    /// g(f(x))`. Element 0 is the identity map; the rest follow in
    /// lexicographic order of their value lists.
    pub fn full_transformation(n: usize) -> Self {
        let mut maps: Vec<Vec<usize>> = Vec::new();
        let total = n.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut f = vec![0; n];
            for slot in f.iter_mut().rev() {
                *slot = c % n;
                c /= n;
            }
            maps.push(f);
        }
        let id: Vec<usize> = (0..n).collect();
        let pos = maps.iter().position(|f| *f == id).expect("identity map");
        let id_map = maps.remove(pos);
        maps.insert(0, id_map);
        let index = |f: &Vec<usize>| maps.iter().position(|g| g == f).expect("closed");
        Self::from_fn(maps.len(), |i, j| {
            let composite: Vec<usize> = (0..n).map(|x| maps[j][maps[i][x]]).collect();
            index(&composite)
        })
        .expect("transformation monoid")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    pub fn idempotents(&self) -> ElementSet {
        ElementSet::from_indices(self.size, self.elements().filter(|&e| self.is_idempotent(e)))
    }

    /// Left inverse search: some `y` with `x·y = 1`.
    pub fn right_inverse(&self, x: usize) -> Option<usize> {
        self.elements().find(|&y| self.mul(x, y) == 0)
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.elements().any(|y| self.mul(x, y) == 0 && self.mul(y, x) == 0)
    }

    /// The least submonoid containing `gens`.
    pub fn submonoid_generated(&self, gens: &ElementSet) -> ElementSet {
        let mut closed = gens.clone();
        closed.insert(0);
        let mut frontier: Vec<usize> = closed.to_vec();
        while let Some(x) = frontier.pop() {
            for y in closed.to_vec() {
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !closed.contains(p) {
                        closed.insert(p);
                        frontier.push(p);
                    }
                }
            }
        }
        closed
    }

    /// The least right-factorable submonoid containing `gens`, computed by
    /// iterating `S ↦ {m | ∃ t ∈ ⟨S⟩, t·m ∈ ⟨S⟩}` to its fixed point.
    pub fn right_factorable_closure(&self, gens: &ElementSet) -> Result<ElementSet> {
        if gens.is_empty() {
            return Err(Error::EmptyGeneratingSet);
        }
        let mut current = gens.clone();
        loop {
            let generated = self.submonoid_generated(&current);
            let next = ElementSet::from_indices(
                self.size,
                self.elements()
                    .filter(|&m| generated.iter().any(|t| generated.contains(self.mul(t, m)))),
            );
            let next = next.union(&current);
            if next == current {
                return Ok(current);
            }
            current = next;
        }
    }

    /// The local submonoid `eMe` with identity `e`, plus its embedding:
    /// `embedding[i]` is the element of `self` that local element `i` is.
    pub fn local_submonoid(&self, e: usize) -> Result<(FiniteMonoid, Vec<usize>)> {
        if !self.is_idempotent(e) {
            return Err(Error::NotIdempotent(e));
        }
        let mut carrier: Vec<usize> = self.elements().filter(|&m| self.mul(self.mul(e, m), e) == m).collect();
        carrier.retain(|&m| m != e);
        carrier.insert(0, e);
        let pos = |x: usize| carrier.iter().position(|&c| c == x).expect("eMe is closed");
        let k = carrier.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &carrier {
            for &b in &carrier {
                table.push(pos(self.mul(a, b)));
            }
        }
        Ok((Self::from_flat_unchecked(k, table), carrier))
    }

    /// Every triple `(e, β, β')` with `e` idempotent, `ββ' = 1` and `βe = β`.
    pub fn morita_witnesses(&self) -> Vec<MoritaWitness> {
        let mut out = Vec::new();
        for e in self.idempotents().iter() {
            for beta in self.elements() {
                if self.mul(beta, e) != beta {
                    continue;
                }
                for beta_prime in self.elements() {
                    if self.mul(beta, beta_prime) == 0 {
                        out.push(MoritaWitness { e, beta, beta_prime });
                    }
                }
            }
        }
        out
    }

    /// `mM`.
    pub fn principal_right_ideal(&self, m: usize) -> ElementSet {
        ElementSet::from_indices(self.size, self.elements().map(|x| self.mul(m, x)))
    }

    /// `Mm`.
    pub fn principal_left_ideal(&self, m: usize) -> ElementSet {
        ElementSet::from_indices(self.size, self.elements().map(|x| self.mul(x, m)))
    }

    pub fn is_right_ideal(&self, set: &ElementSet) -> bool {
        set.iter()
            .all(|a| self.elements().all(|m| set.contains(self.mul(a, m))))
    }

    /// All right ideals, including `∅` and `M`, in canonical order.
    ///
    /// Every right ideal is a union of principal ones, so the list is the
    /// union-closure of `{mM}`.
    pub fn right_ideals(&self) -> Vec<ElementSet> {
        let principals: BTreeSet<ElementSet> = self.elements().map(|m| self.principal_right_ideal(m)).collect();
        let mut all: BTreeSet<ElementSet> = BTreeSet::new();
        all.insert(ElementSet::empty(self.size));
        for p in &principals {
            let snapshot: Vec<ElementSet> = all.iter().cloned().collect();
            for s in snapshot {
                all.insert(s.union(p));
            }
        }
        all.into_iter().collect()
    }

    /// `m*(A) = {x | m·x ∈ A}`.
    pub fn pull_back_set(&self, m: usize, set: &ElementSet) -> ElementSet {
        ElementSet::from_indices(self.size, self.elements().filter(|&x| set.contains(self.mul(m, x))))
    }

    /// The transposed table, same identity.
    pub fn opposite(&self) -> Self {
        Self::from_flat_unchecked(
            self.size,
            (0..self.size * self.size)
                .map(|idx| self.mul(idx % self.size, idx / self.size))
                .collect(),
        )
    }

    /// Relabels elements by a permutation fixing 0: element `x` becomes
    /// `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        assert_eq!(perm.len(), self.size);
        assert_eq!(perm[0], 0, "identity must stay at 0");
        let mut inverse = vec![0; self.size];
        for (x, &p) in perm.iter().enumerate() {
            inverse[p] = x;
        }
        Self::from_fn(self.size, |i, j| perm[self.mul(inverse[i], inverse[j])])
    }

    /// Index (tail length) and period of the power sequence `m, m², ...`.
    pub fn order_profile(&self, m: usize) -> (usize, usize) {
        let mut seen = vec![usize::MAX; self.size];
        let mut x = m;
        let mut k = 1;
        loop {
            if seen[x] != usize::MAX {
                return (seen[x], k - seen[x]);
            }
            seen[x] = k;
            x = self.mul(x, m);
            k += 1;
        }
    }

    pub fn is_right_absorbing(&self, z: usize) -> bool {
        self.elements().all(|m| self.mul(z, m) == z)
    }

    pub fn is_left_absorbing(&self, z: usize) -> bool {
        self.elements().all(|m| self.mul(m, z) == z)
    }

    /// Checks that `map` is a monoid homomorphism `self → target`.
    pub fn is_homomorphism_to(&self, target: &FiniteMonoid, map: &[usize]) -> bool {
        map.len() == self.size
            && map[0] == 0
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b]))
            })
    }
}

/// Data `(e, β, β')` exhibiting an equivalence between actions of `M` and of
/// `eMe`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoritaWitness {
    pub e: usize,
    pub beta: usize,
    pub beta_prime: usize,
}

impl MoritaWitness {
    pub fn holds_in(&self, m: &FiniteMonoid) -> bool {
        m.is_idempotent(self.e) && m.mul(self.beta, self.beta_prime) == 0 && m.mul(self.beta, self.e) == self.beta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3() -> FiniteMonoid {
        FiniteMonoid::with_right_zeros(2)
    }

    fn set(n: usize, xs: &[usize]) -> ElementSet {
        ElementSet::from_indices(n, xs.iter().copied())
    }

    #[test]
    fn validates_small_examples() {
        assert_eq!(FiniteMonoid::new(vec![vec![0]]).unwrap(), FiniteMonoid::trivial());
        let m3 = FiniteMonoid::new(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]]).unwrap();
        assert_eq!(m3, FiniteMonoid::with_right_zeros(2));
        let z2 = FiniteMonoid::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2, FiniteMonoid::cyclic_group(2));
    }

    #[test]
    fn validation_errors_carry_witnesses() {
        assert_eq!(
            FiniteMonoid::new(vec![vec![0, 2], vec![1, 0]]),
            Err(Error::OutOfRange {
                row: 0,
                col: 1,
                value: 2,
                size: 2
            })
        );
        assert!(matches!(
            FiniteMonoid::new(vec![vec![1, 0], vec![0, 1]]),
            Err(Error::BadIdentity { identity: 0, .. })
        ));
        // a² = b, a·b = b, b·a = a, b² = b: (a·b)·a = a but a·(b·a) = b
        let err = FiniteMonoid::new(vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 1, 2]]).unwrap_err();
        assert!(matches!(err, Error::NotAssociative(..)));
        assert_eq!(FiniteMonoid::new(vec![]), Err(Error::Empty));
    }

    #[test]
    fn reindexes_identity_to_zero() {
        // ℤ/2 written with identity at index 1
        let r = validate_monoid(&[vec![1, 0], vec![0, 1]], 1).unwrap();
        assert_eq!(r.monoid, FiniteMonoid::cyclic_group(2));
        assert_eq!(r.old_to_new, vec![1, 0]);
        assert_eq!(detect_identity(&[vec![1, 0], vec![0, 1]]), Some(1));
    }

    #[test]
    fn idempotents_examples() {
        assert_eq!(FiniteMonoid::trivial().idempotents().to_vec(), vec![0]);
        assert_eq!(m3().idempotents().to_vec(), vec![0, 1, 2]);
        assert_eq!(FiniteMonoid::cyclic_group(2).idempotents().to_vec(), vec![0]);
    }

    #[test]
    fn generated_submonoids() {
        assert_eq!(m3().submonoid_generated(&set(3, &[1])).to_vec(), vec![0, 1]);
        assert_eq!(m3().submonoid_generated(&set(3, &[])).to_vec(), vec![0]);
        let z4 = FiniteMonoid::cyclic_group(4);
        assert!(z4.submonoid_generated(&set(4, &[1])).is_full());
    }

    #[test]
    fn right_factorable_closure_examples() {
        assert!(m3().right_factorable_closure(&set(3, &[1])).unwrap().is_full());
        let z2 = FiniteMonoid::cyclic_group(2);
        // only t·m ∈ {1} with t = 1 forces m = 1
        assert_eq!(z2.right_factorable_closure(&set(2, &[0])).unwrap().to_vec(), vec![0]);
        assert!(z2.right_factorable_closure(&set(2, &[1])).unwrap().is_full());
        let t2 = FiniteMonoid::full_transformation(2);
        assert!(t2.right_factorable_closure(&ElementSet::full(4)).unwrap().is_full());
        assert_eq!(
            m3().right_factorable_closure(&set(3, &[])),
            Err(Error::EmptyGeneratingSet)
        );
    }

    #[test]
    fn local_submonoids() {
        let t2 = FiniteMonoid::full_transformation(2);
        // constant maps are the idempotents other than the identity and the swap is a unit
        let constant = (1..4)
            .find(|&f| {
                t2.is_idempotent(f) && t2.is_right_absorbing(f) || t2.is_idempotent(f) && t2.is_left_absorbing(f)
            })
            .expect("a constant map");
        let (local, emb) = t2.local_submonoid(constant).unwrap();
        assert_eq!(local, FiniteMonoid::trivial());
        assert_eq!(emb, vec![constant]);

        let (whole, emb) = m3().local_submonoid(0).unwrap();
        assert_eq!(whole, m3());
        assert_eq!(emb, vec![0, 1, 2]);

        let (at_a, emb) = m3().local_submonoid(1).unwrap();
        assert_eq!(at_a, FiniteMonoid::trivial());
        assert_eq!(emb, vec![1]);

        assert_eq!(
            FiniteMonoid::cyclic_group(2).local_submonoid(1),
            Err(Error::NotIdempotent(1))
        );
    }

    #[test]
    fn morita_witness_examples() {
        assert_eq!(
            FiniteMonoid::trivial().morita_witnesses(),
            vec![MoritaWitness {
                e: 0,
                beta: 0,
                beta_prime: 0
            }]
        );
        let z2 = FiniteMonoid::cyclic_group(2);
        assert_eq!(
            z2.morita_witnesses(),
            vec![
                MoritaWitness {
                    e: 0,
                    beta: 0,
                    beta_prime: 0
                },
                MoritaWitness {
                    e: 0,
                    beta: 1,
                    beta_prime: 1
                },
            ]
        );
        assert_eq!(m3().morita_witnesses().len(), 1);
    }

    #[test]
    fn right_ideal_examples() {
        let z3 = FiniteMonoid::cyclic_group(3);
        assert_eq!(z3.right_ideals().len(), 2);
        let ideals: Vec<Vec<usize>> = m3().right_ideals().iter().map(|s| s.to_vec()).collect();
        assert_eq!(ideals, vec![vec![], vec![1], vec![2], vec![1, 2], vec![0, 1, 2]]);
        assert_eq!(FiniteMonoid::trivial().right_ideals().len(), 2);
    }

    #[test]
    fn opposite_examples() {
        let z4 = FiniteMonoid::cyclic_group(4);
        assert_eq!(z4.opposite(), z4);
        let op = m3().opposite();
        assert!(op.is_left_absorbing(1) && op.is_left_absorbing(2));
        assert!(!op.is_right_absorbing(1));
        assert_eq!(op.opposite(), m3());
    }

    #[test]
    fn transformation_monoid_shape() {
        let t2 = FiniteMonoid::full_transformation(2);
        assert_eq!(t2.size(), 4);
        assert_eq!(t2.idempotents().len(), 3);
        assert_eq!(FiniteMonoid::full_transformation(3).size(), 27);
    }
}
