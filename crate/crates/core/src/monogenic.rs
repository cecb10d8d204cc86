//! Actions of `(ℕ, +)`: a finite set with one endofunction.
//!
//! The principal ℕ-sets are the shapes `N_{a,b}`: a tail of length `a`
//! feeding a cycle of length `b`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::partition::{Partition, UnionFind};
use crate::topology::MonoidTopology;

/// A finite ℕ-set, given by the action of the generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonogenicAction {
    step: Vec<usize>,
}

/// `N_{a,b}` on `{0, …, a+b−1}`: `x ↦ x+1`, except `a+b−1 ↦ a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NabShape {
    pub a: usize,
    pub b: usize,
}

impl NabShape {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidAction("a cycle has length at least 1".into()));
        }
        Ok(Self { a, b })
    }

    pub fn size(&self) -> usize {
        self.a + self.b
    }

    pub fn action(&self) -> MonogenicAction {
        let n = self.size();
        MonogenicAction {
            step: (0..n).map(|x| if x + 1 == n { self.a } else { x + 1 }).collect(),
        }
    }
}

impl std::fmt::Display for NabShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "N_{{{},{}}}", self.a, self.b)
    }
}

impl MonogenicAction {
    pub fn new(step: Vec<usize>) -> Result<Self> {
        let k = step.len();
        if let Some((x, &y)) = step.iter().enumerate().find(|(_, &y)| y >= k) {
            return Err(Error::OutOfRange {
                row: x,
                col: 0,
                value: y,
                size: k,
            });
        }
        Ok(Self { step })
    }

    pub fn size(&self) -> usize {
        self.step.len()
    }

    pub fn step(&self) -> &[usize] {
        &self.step
    }

    pub fn apply(&self, x: usize) -> usize {
        self.step[x]
    }

    /// `x · n`, the `n`-fold iterate.
    pub fn iterate(&self, mut x: usize, n: usize) -> usize {
        for _ in 0..n {
            x = self.step[x];
        }
        x
    }

    /// The shape of the sub-ℕ-set generated by `x`.
    pub fn rho_shape(&self, x: usize) -> NabShape {
        let mut first = vec![usize::MAX; self.size()];
        let (mut y, mut i) = (x, 0);
        while first[y] == usize::MAX {
            first[y] = i;
            y = self.step[y];
            i += 1;
        }
        NabShape {
            a: first[y],
            b: i - first[y],
        }
    }

    pub fn orbit(&self, x: usize) -> ElementSet {
        let mut seen = ElementSet::empty(self.size());
        let mut y = x;
        while !seen.contains(y) {
            seen.insert(y);
            y = self.step[y];
        }
        seen
    }

    pub fn components(&self) -> Partition {
        let mut uf = UnionFind::new(self.size());
        for (x, &y) in self.step.iter().enumerate() {
            uf.union(x, y);
        }
        uf.into_partition()
    }

    /// A least generating set: every element outside the image, plus the
    /// least element of each cycle that nothing else reaches.
    pub fn generators(&self) -> Vec<usize> {
        let k = self.size();
        let mut covered = ElementSet::empty(k);
        let mut gens = Vec::new();
        let has_preimage = ElementSet::from_indices(k, self.step.iter().copied());
        for x in (0..k).filter(|&x| !has_preimage.contains(x)) {
            gens.push(x);
            covered = covered.union(&self.orbit(x));
        }
        for x in 0..k {
            if !covered.contains(x) {
                gens.push(x);
                covered = covered.union(&self.orbit(x));
            }
        }
        gens.sort_unstable();
        gens
    }

    pub fn is_equivariant(&self, map: &[usize], target: &MonogenicAction) -> bool {
        map.len() == self.size()
            && map.iter().all(|&y| y < target.size())
            && (0..self.size()).all(|x| map[self.step[x]] == target.step[map[x]])
    }

    /// Carrier relabelled by `perm` (old index ↦ new index).
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let mut step = vec![0; self.size()];
        for x in 0..self.size() {
            step[perm[x]] = perm[self.step[x]];
        }
        Self::new(step)
    }
}

/// Per-element shapes and the shapes of a least generating set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub element_shapes: Vec<NabShape>,
    pub generators: Vec<usize>,
    /// Shapes of the generators, sorted.
    pub principal_shapes: Vec<NabShape>,
    pub component_count: usize,
    /// Components generated by a single element.
    pub principal_components: usize,
}

pub fn classify(x: &MonogenicAction) -> Classification {
    let element_shapes: Vec<NabShape> = (0..x.size()).map(|p| x.rho_shape(p)).collect();
    let generators = x.generators();
    let mut principal_shapes: Vec<NabShape> = generators.iter().map(|&g| element_shapes[g]).collect();
    principal_shapes.sort();
    let components = x.components();
    let mut per_component = vec![0usize; components.class_count()];
    for &g in &generators {
        per_component[components.class_of(g)] += 1;
    }
    Classification {
        element_shapes,
        principal_shapes,
        component_count: components.class_count(),
        principal_components: per_component.iter().filter(|&&c| c == 1).count(),
        generators,
    }
}

/// An epimorphism `N_{s} ↠ N_{t}` exists.
pub fn epi_exists(s: NabShape, t: NabShape) -> bool {
    t.a <= s.a && s.b.is_multiple_of(t.b)
}

/// A monomorphism `N_{s} ↪ N_{t}` exists.
pub fn mono_exists(s: NabShape, t: NabShape) -> bool {
    s.a <= t.a && s.b == t.b
}

pub fn joint_cover(s: NabShape, t: NabShape) -> NabShape {
    NabShape {
        a: s.a.max(t.a),
        b: s.b.lcm(&t.b),
    }
}

/// Every equivariant map `X → Y`, each determined by where the generators
/// go.
pub fn equivariant_maps(x: &MonogenicAction, y: &MonogenicAction) -> Vec<Vec<usize>> {
    let gens = x.generators();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; x.size()];
    extend_maps(x, y, &gens, &mut map, &mut out);
    out
}

fn extend_maps(
    x: &MonogenicAction,
    y: &MonogenicAction,
    gens: &[usize],
    map: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let Some((&g, rest)) = gens.split_first() else {
        out.push(map.clone());
        return;
    };
    for target in 0..y.size() {
        let mut assigned = Vec::new();
        let (mut p, mut q) = (g, target);
        while map[p] == usize::MAX {
            map[p] = q;
            assigned.push(p);
            p = x.apply(p);
            q = y.apply(q);
        }
        if map[p] == q {
            extend_maps(x, y, rest, map, out);
        }
        for p in assigned {
            map[p] = usize::MAX;
        }
    }
}

/// A left inverse of an injective equivariant map, if one exists. Monos
/// between shapes need not split: `N_{1,2} ↪ N_{3,2}` has no retraction,
/// since nothing in `N_{1,2}` reaches its generator after two steps.
pub fn find_retraction(inclusion: &[usize], x: &MonogenicAction, y: &MonogenicAction) -> Option<Vec<usize>> {
    equivariant_maps(y, x)
        .into_iter()
        .find(|r| (0..x.size()).all(|p| r[inclusion[p]] == p))
}

/// `N_{K,1}` realized as the limit of the truncated-addition monoids
/// `N_{a,1}`, `a ≤ K`, under `x ↦ min(x, a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedProfinite {
    pub depth: usize,
    pub monoid: FiniteMonoid,
    pub topology: MonoidTopology,
    /// Opens that stay open at every greater depth: the finite singletons.
    pub stable_opens: Vec<ElementSet>,
    /// Opens that only exist because of truncation: `{K}`, the stand-in
    /// for `∞`.
    pub unstable_opens: Vec<ElementSet>,
}

pub fn truncated_profinite(depth: usize) -> Result<TruncatedProfinite> {
    if depth == 0 {
        return Err(Error::InvalidAction("the truncation depth is at least 1".into()));
    }
    // compatible tuples (x_0, …, x_K) are determined by x_K
    let tuples: Vec<Vec<usize>> = (0..=depth)
        .map(|top| (0..=depth).map(|a| top.min(a)).collect())
        .collect();
    let compatible = tuples
        .iter()
        .all(|t| (0..=depth).all(|a| (0..a).all(|b| t[a].min(b) == t[b])));
    if !compatible {
        return Err(Error::OracleViolation("truncation tuples are not compatible".into()));
    }
    // componentwise addition in each N_{a,1}
    let monoid = FiniteMonoid::from_fn(depth + 1, |i, j| {
        let sum: Vec<usize> = (0..=depth).map(|a| (tuples[i][a] + tuples[j][a]).min(a)).collect();
        tuples
            .iter()
            .position(|t| *t == sum)
            .expect("the limit is closed under addition")
    })?;
    let n = depth + 1;
    let arc = std::sync::Arc::new(monoid.clone());
    Ok(TruncatedProfinite {
        depth,
        topology: MonoidTopology::discrete(arc),
        stable_opens: (0..depth).map(|x| ElementSet::singleton(n, x)).collect(),
        unstable_opens: vec![ElementSet::singleton(n, depth)],
        monoid,
    })
}

/// The projection `N_{K,1} ↠ N_{K',1}`.
pub fn truncation_projection(depth: usize, smaller: usize) -> Vec<usize> {
    (0..=depth).map(|x| x.min(smaller)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nab(a: usize, b: usize) -> NabShape {
        NabShape::new(a, b).unwrap()
    }

    #[test]
    fn rho_shapes() {
        let x = MonogenicAction::new(vec![1, 2, 1]).unwrap();
        let c = classify(&x);
        assert_eq!(c.element_shapes[0], nab(1, 2));
        assert_eq!(c.generators, vec![0]);
        assert_eq!(c.principal_shapes, vec![nab(1, 2)]);
        let one = MonogenicAction::new(vec![0]).unwrap();
        assert_eq!(classify(&one).principal_shapes, vec![nab(0, 1)]);
        let cycle = MonogenicAction::new(vec![1, 2, 3, 0]).unwrap();
        assert_eq!(classify(&cycle).principal_shapes, vec![nab(0, 4)]);
    }

    #[test]
    fn non_principal_component() {
        // two tails into a fixed point
        let x = MonogenicAction::new(vec![2, 2, 2]).unwrap();
        let c = classify(&x);
        assert_eq!((c.component_count, c.principal_components), (1, 0));
        assert_eq!(c.generators, vec![0, 1]);
    }

    #[test]
    fn shape_laws() {
        assert!(epi_exists(nab(2, 4), nab(1, 2)));
        assert!(!epi_exists(nab(1, 2), nab(1, 4)));
        assert!(mono_exists(nab(1, 2), nab(3, 2)));
        assert!(!mono_exists(nab(1, 2), nab(1, 4)));
        assert_eq!(joint_cover(nab(1, 2), nab(2, 3)), nab(2, 6));
        assert_eq!(joint_cover(nab(0, 1), nab(3, 2)), nab(3, 2));
    }

    #[test]
    fn maps_from_principal_shapes() {
        let s = nab(1, 2).action();
        let t = nab(3, 2).action();
        let maps = equivariant_maps(&s, &t);
        assert!(maps.iter().all(|m| s.is_equivariant(m, &t)));
        let inj = maps
            .iter()
            .find(|m| m[0] != m[1] && m[1] != m[2] && m[0] != m[2])
            .unwrap();
        assert_eq!(inj, &vec![2, 3, 4]);
        assert!(find_retraction(inj, &s, &t).is_none());
        let cycle = nab(0, 2).action();
        let inc = equivariant_maps(&cycle, &t).into_iter().find(|m| m[0] != m[1]).unwrap();
        assert!(find_retraction(&inc, &cycle, &t).is_some());
    }

    #[test]
    fn truncations() {
        let k1 = truncated_profinite(1).unwrap();
        assert_eq!(k1.monoid.size(), 2);
        assert_eq!(k1.monoid.mul(1, 1), 1);
        let k3 = truncated_profinite(3).unwrap();
        assert_eq!(k3.monoid, FiniteMonoid::truncated_addition(3));
        assert_eq!(k3.monoid.mul(1, 3), 3);
        let proj = truncation_projection(3, 1);
        assert!(k3.monoid.is_homomorphism_to(&k1.monoid, &proj));
        assert!(truncated_profinite(0).is_err());
    }
}
