use std::sync::Arc;

use serde::Serialize;

use super::mset::FiniteMSet;
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::partition::Partition;

pub const DEFAULT_CONGRUENCE_CAP: usize = 9;

/// A partition of `M` with `p ∼ q ⟹ pm ∼ qm`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RightCongruence {
    monoid: Arc<FiniteMonoid>,
    classes: Partition,
}

impl PartialOrd for RightCongruence {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Finest first, then by class vector.
impl Ord for RightCongruence {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .classes
            .class_count()
            .cmp(&self.classes.class_count())
            .then_with(|| self.classes.classes_vec().cmp(other.classes.classes_vec()))
    }
}

impl RightCongruence {
    pub fn new(monoid: Arc<FiniteMonoid>, classes: Partition) -> Result<Self> {
        if classes.len() != monoid.size() {
            return Err(Error::InvalidAction(format!(
                "partition of {} elements for a monoid of size {}",
                classes.len(),
                monoid.size()
            )));
        }
        let r = Self { monoid, classes };
        if let Some((p, q, m)) = r.compatibility_failure() {
            return Err(Error::InvalidAction(format!("{p} ∼ {q} but {p}·{m} ≁ {q}·{m}")));
        }
        Ok(r)
    }

    pub fn from_labels(monoid: Arc<FiniteMonoid>, labels: &[usize]) -> Result<Self> {
        Self::new(monoid, Partition::from_labels(labels))
    }

    pub fn diagonal(monoid: Arc<FiniteMonoid>) -> Self {
        let n = monoid.size();
        Self {
            monoid,
            classes: Partition::discrete(n),
        }
    }

    pub fn total(monoid: Arc<FiniteMonoid>) -> Self {
        let n = monoid.size();
        Self {
            monoid,
            classes: Partition::total(n),
        }
    }

    /// The least right congruence containing `pairs`.
    pub fn generated(monoid: Arc<FiniteMonoid>, pairs: &[(usize, usize)]) -> Self {
        let classes = FiniteMSet::representable(monoid.clone()).generated_equivalence(pairs);
        Self { monoid, classes }
    }

    fn compatibility_failure(&self) -> Option<(usize, usize, usize)> {
        let reps = self.classes.representatives();
        for p in self.monoid.elements() {
            let q = reps[self.classes.class_of(p)];
            for m in self.monoid.elements() {
                if !self.same(self.monoid.mul(p, m), self.monoid.mul(q, m)) {
                    return Some((q, p, m));
                }
            }
        }
        None
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    pub fn partition(&self) -> &Partition {
        &self.classes
    }

    pub fn class_of(&self, p: usize) -> usize {
        self.classes.class_of(p)
    }

    pub fn class_count(&self) -> usize {
        self.classes.class_count()
    }

    pub fn same(&self, p: usize, q: usize) -> bool {
        self.classes.same(p, q)
    }

    pub fn classes(&self) -> Vec<ElementSet> {
        self.classes.block_sets()
    }

    pub fn is_diagonal(&self) -> bool {
        self.class_count() == self.monoid.size()
    }

    pub fn is_total(&self) -> bool {
        self.class_count() <= 1
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Self) -> bool {
        self.classes.refines(&other.classes)
    }

    /// Also left compatible: `p ∼ q ⟹ mp ∼ mq`.
    pub fn is_two_sided(&self) -> bool {
        let reps = self.classes.representatives();
        self.monoid.elements().all(|m| {
            self.monoid.elements().all(|p| {
                let q = reps[self.class_of(p)];
                self.same(self.monoid.mul(m, p), self.monoid.mul(m, q))
            })
        })
    }

    pub fn meet(&self, other: &Self) -> Self {
        Self {
            monoid: self.monoid.clone(),
            classes: self.classes.meet(&other.classes),
        }
    }

    /// The least right congruence containing both.
    pub fn join(&self, other: &Self) -> Self {
        let pairs: Vec<(usize, usize)> = [self, other]
            .iter()
            .flat_map(|r| {
                r.classes
                    .blocks()
                    .into_iter()
                    .flat_map(|b| b.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>())
            })
            .collect();
        Self::generated(self.monoid.clone(), &pairs)
    }

    /// `m*(r)`: `p ∼ q` iff `mp r mq`.
    pub fn pullback(&self, m: usize) -> Self {
        let labels: Vec<usize> = self
            .monoid
            .elements()
            .map(|p| self.class_of(self.monoid.mul(m, p)))
            .collect();
        Self {
            monoid: self.monoid.clone(),
            classes: Partition::from_labels(&labels),
        }
    }

    /// Least element of the class of `m`.
    pub fn canonical(&self, m: usize) -> usize {
        self.classes.representatives()[self.class_of(m)]
    }

    /// `M/r`, generated by the class of `1` (which is class `0`).
    pub fn quotient(&self) -> FiniteMSet {
        FiniteMSet::representable(self.monoid.clone())
            .quotient_by_partition(&self.classes)
            .0
    }

    /// For a two-sided congruence, the quotient monoid and the quotient map.
    pub fn quotient_monoid(&self) -> Option<(FiniteMonoid, Vec<usize>)> {
        if !self.is_two_sided() {
            return None;
        }
        let reps = self.classes.representatives();
        let k = reps.len();
        let table = (0..k * k)
            .map(|i| self.class_of(self.monoid.mul(reps[i / k], reps[i % k])))
            .collect();
        Some((
            FiniteMonoid::from_flat_unchecked(k, table),
            self.classes.classes_vec().to_vec(),
        ))
    }
}

/// `m*(r)` as a free function.
pub fn pullback_congruence(m: usize, r: &RightCongruence) -> RightCongruence {
    r.pullback(m)
}

/// The congruence of the principal sub-M-set of `M/r₁ × M/r₂` generated by
/// `([1], [1])`, which is `r₁ ∩ r₂`.
pub fn joint_cover(r1: &RightCongruence, r2: &RightCongruence) -> RightCongruence {
    r1.meet(r2)
}

/// All right congruences, finest first and coarsest last.
///
/// Partitions are generated as restricted growth strings; a prefix is cut
/// as soon as two related elements have known, unrelated translates.
pub fn right_congruences(monoid: &Arc<FiniteMonoid>, cap: usize) -> Result<Vec<RightCongruence>> {
    let n = monoid.size();
    if n > cap {
        return Err(Error::SizeTooLarge {
            what: "congruence enumeration",
            size: n,
            cap,
        });
    }
    let mut labels = vec![usize::MAX; n];
    let mut out = Vec::new();
    grow(monoid, &mut labels, 0, 0, &mut out);
    let mut congs: Vec<RightCongruence> = out
        .into_iter()
        .map(|l| RightCongruence {
            monoid: monoid.clone(),
            classes: Partition::from_labels(&l),
        })
        .collect();
    congs.sort();
    Ok(congs)
}

fn grow(m: &FiniteMonoid, labels: &mut Vec<usize>, pos: usize, used: usize, out: &mut Vec<Vec<usize>>) {
    let n = m.size();
    if pos == n {
        out.push(labels.clone());
        return;
    }
    for c in 0..=used {
        labels[pos] = c;
        if compatible_so_far(m, labels, pos) {
            grow(m, labels, pos + 1, used.max(c + 1), out);
        }
    }
    labels[pos] = usize::MAX;
}

/// Checks the pairs `(p, pos)` and every pair whose translate lands on `pos`.
fn compatible_so_far(m: &FiniteMonoid, labels: &[usize], pos: usize) -> bool {
    let n = m.size();
    let known = |x: usize| labels[x] != usize::MAX;
    for p in 0..=pos {
        for q in 0..p {
            if labels[p] != labels[q] {
                continue;
            }
            for k in 0..n {
                let (a, b) = (m.mul(p, k), m.mul(q, k));
                if (p == pos || a == pos || b == pos) && known(a) && known(b) && labels[a] != labels[b] {
                    return false;
                }
            }
        }
    }
    true
}

/// A morphism `M/r₁ → M/r₂`, `[p] ↦ [mp]`, stored by the least `m` in its
/// `r₂`-class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CongMorphism {
    pub source: usize,
    pub target: usize,
    pub witness: usize,
}

/// The epi–mono factorization `M/r₁ ↠ M/m*(r₂) ↪ M/r₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongFactorization {
    pub middle: RightCongruence,
    /// `[p] ↦ [p]`
    pub epi_witness: usize,
    /// `[p] ↦ [mp]`
    pub mono_witness: usize,
}

/// A full subcategory of right congruences and the morphisms between them.
#[derive(Debug, Clone)]
pub struct CongruenceCategory {
    pub objects: Vec<RightCongruence>,
    /// `homs[i][j]` lists the morphisms from object `i` to object `j`.
    pub homs: Vec<Vec<Vec<CongMorphism>>>,
}

fn objects_over(monoid: &Arc<FiniteMonoid>, objects: &[RightCongruence]) -> bool {
    objects.iter().all(|r| **r.monoid() == **monoid)
}

pub fn congruence_category(monoid: &Arc<FiniteMonoid>, objects: Vec<RightCongruence>) -> CongruenceCategory {
    let homs = objects
        .iter()
        .enumerate()
        .map(|(i, r1)| {
            objects
                .iter()
                .enumerate()
                .map(|(j, r2)| {
                    r2.classes
                        .representatives()
                        .into_iter()
                        .filter(|&m| r1.refines(&r2.pullback(m)))
                        .map(|m| CongMorphism {
                            source: i,
                            target: j,
                            witness: m,
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    debug_assert!(objects_over(monoid, &objects));
    CongruenceCategory { objects, homs }
}

impl CongruenceCategory {
    pub fn identity(&self, i: usize) -> CongMorphism {
        CongMorphism {
            source: i,
            target: i,
            witness: self.objects[i].canonical(0),
        }
    }

    /// `g ∘ f`: `[p] ↦ [m'·m·p]`.
    pub fn compose(&self, g: &CongMorphism, f: &CongMorphism) -> Option<CongMorphism> {
        if f.target != g.source {
            return None;
        }
        let target = &self.objects[g.target];
        let m = target.monoid().mul(g.witness, f.witness);
        Some(CongMorphism {
            source: f.source,
            target: g.target,
            witness: target.canonical(m),
        })
    }

    pub fn morphism_count(&self) -> usize {
        self.homs.iter().flatten().map(Vec::len).sum()
    }

    pub fn factorize(&self, f: &CongMorphism) -> CongFactorization {
        let middle = self.objects[f.target].pullback(f.witness);
        CongFactorization {
            epi_witness: 0,
            mono_witness: f.witness,
            middle,
        }
    }

    /// Covering relations of the refinement order, as `(finer, coarser)`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let k = self.objects.len();
        let below = |i: usize, j: usize| i != j && self.objects[i].refines(&self.objects[j]);
        let mut edges = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if below(i, j) && !(0..k).any(|l| below(i, l) && below(l, j)) {
                    edges.push((i, j));
                }
            }
        }
        edges
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::hom::hom_count;

    fn m3() -> Arc<FiniteMonoid> {
        Arc::new(FiniteMonoid::with_right_zeros(2))
    }

    #[test]
    fn m3_congruences() {
        let cs = right_congruences(&m3(), DEFAULT_CONGRUENCE_CAP).unwrap();
        let vecs: Vec<&[usize]> = cs.iter().map(|r| r.partition().classes_vec()).collect();
        assert_eq!(vecs, vec![&[0, 1, 2][..], &[0, 1, 1][..], &[0, 0, 0][..]]);
    }

    #[test]
    fn small_congruence_counts() {
        let t = Arc::new(FiniteMonoid::trivial());
        assert_eq!(right_congruences(&t, 9).unwrap().len(), 1);
        let z2 = Arc::new(FiniteMonoid::cyclic_group(2));
        assert_eq!(right_congruences(&z2, 9).unwrap().len(), 2);
        let big = Arc::new(FiniteMonoid::cyclic_group(10));
        assert!(matches!(right_congruences(&big, 9), Err(Error::SizeTooLarge { .. })));
    }

    #[test]
    fn quotients() {
        let d = RightCongruence::diagonal(m3()).quotient();
        assert_eq!(d, FiniteMSet::representable(m3()));
        assert_eq!(RightCongruence::total(m3()).quotient().size(), 1);
        let r = RightCongruence::from_labels(m3(), &[0, 1, 1]).unwrap();
        let q = r.quotient();
        assert_eq!(q.size(), 2);
        assert_eq!(q.fixed_points().to_vec(), vec![1]);
    }

    #[test]
    fn pullbacks() {
        let r = RightCongruence::from_labels(m3(), &[0, 1, 1]).unwrap();
        assert_eq!(r.pullback(0), r);
        assert!(RightCongruence::diagonal(m3()).pullback(1).is_total());
        let m = m3();
        for a in m.elements() {
            for b in m.elements() {
                assert_eq!(r.pullback(m.mul(a, b)), r.pullback(a).pullback(b));
            }
        }
    }

    #[test]
    fn rejects_non_congruences() {
        assert!(RightCongruence::from_labels(m3(), &[0, 0, 1]).is_err());
    }

    #[test]
    fn category_matches_hom_sets() {
        let cs = right_congruences(&m3(), 9).unwrap();
        let cat = congruence_category(&m3(), cs.clone());
        for (i, r1) in cs.iter().enumerate() {
            for (j, r2) in cs.iter().enumerate() {
                assert_eq!(cat.homs[i][j].len(), hom_count(&r1.quotient(), &r2.quotient()).unwrap());
            }
        }
        assert_eq!(cat.homs[0][1].len(), cs[1].class_count());
        assert_eq!(cat.identity(1).witness, 0);
    }

    #[test]
    fn joint_cover_is_meet() {
        let r = RightCongruence::from_labels(m3(), &[0, 1, 1]).unwrap();
        assert_eq!(joint_cover(&r, &RightCongruence::total(m3())), r);
        assert!(joint_cover(&RightCongruence::diagonal(m3()), &r).is_diagonal());
        assert_eq!(joint_cover(&r, &r), r);
    }

    #[test]
    fn hasse_diagram_of_m3_is_a_chain() {
        let cat = congruence_category(&m3(), right_congruences(&m3(), 9).unwrap());
        assert_eq!(cat.hasse_edges(), vec![(0, 1), (1, 2)]);
    }
}
