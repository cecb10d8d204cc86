use std::collections::HashMap;

use super::FiniteMonoid;

/// Isomorphism-invariant data attached to a single element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementInvariant {
    pub idempotent: bool,
    /// Tail length and period of `m, m², m³, ...`.
    pub index: usize,
    pub period: usize,
    pub right_absorbing: bool,
    pub left_absorbing: bool,
    pub unit: bool,
    /// `|mM|` and `|Mm|`.
    pub right_ideal_size: usize,
    pub left_ideal_size: usize,
}

pub fn element_invariant(m: &FiniteMonoid, x: usize) -> ElementInvariant {
    let (index, period) = m.order_profile(x);
    ElementInvariant {
        idempotent: m.is_idempotent(x),
        index,
        period,
        right_absorbing: m.is_right_absorbing(x),
        left_absorbing: m.is_left_absorbing(x),
        unit: m.is_unit(x),
        right_ideal_size: m.principal_right_ideal(x).len(),
        left_ideal_size: m.principal_left_ideal(x).len(),
    }
}

/// Sorted multiset of element invariants; equal for isomorphic monoids.
pub(crate) fn signature(m: &FiniteMonoid) -> Vec<ElementInvariant> {
    let mut sig: Vec<ElementInvariant> = m.elements().map(|x| element_invariant(m, x)).collect();
    sig.sort();
    sig
}

/// Finds a bijection `φ` with `φ(0) = 0` and `φ(xy) = φ(x)φ(y)`, returned as
/// `φ[x]`.
///
/// Candidates are restricted to elements with equal invariants, and every
/// assignment forces the images of all products of already-assigned
/// elements, so most branches die immediately.
pub fn monoid_isomorphism(a: &FiniteMonoid, b: &FiniteMonoid) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let inv_a: Vec<ElementInvariant> = a.elements().map(|x| element_invariant(a, x)).collect();
    let inv_b: Vec<ElementInvariant> = b.elements().map(|x| element_invariant(b, x)).collect();
    let mut sa = inv_a.clone();
    let mut sb = inv_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let mut by_inv: HashMap<ElementInvariant, Vec<usize>> = HashMap::new();
    for (y, inv) in inv_b.iter().enumerate() {
        by_inv.entry(*inv).or_default().push(y);
    }
    let candidates: Vec<Vec<usize>> = inv_a.iter().map(|inv| by_inv[inv].clone()).collect();

    let n = a.size();
    let mut search = IsoSearch {
        a,
        b,
        inv_a: &inv_a,
        inv_b: &inv_b,
        forward: vec![usize::MAX; n],
        backward: vec![usize::MAX; n],
        trail: Vec::new(),
    };
    if !search.assign(0, 0) {
        return None;
    }
    // branch on elements with the fewest candidates first
    let mut order: Vec<usize> = (1..n).collect();
    order.sort_by_key(|&x| (candidates[x].len(), x));
    if search.extend(&order, 0, &candidates) {
        Some(search.forward)
    } else {
        None
    }
}

struct IsoSearch<'a> {
    a: &'a FiniteMonoid,
    b: &'a FiniteMonoid,
    inv_a: &'a [ElementInvariant],
    inv_b: &'a [ElementInvariant],
    forward: Vec<usize>,
    backward: Vec<usize>,
    trail: Vec<usize>,
}

impl IsoSearch<'_> {
    fn set(&mut self, x: usize, y: usize) -> bool {
        if self.forward[x] != usize::MAX {
            return self.forward[x] == y;
        }
        if self.backward[y] != usize::MAX || self.inv_a[x] != self.inv_b[y] {
            return false;
        }
        self.forward[x] = y;
        self.backward[y] = x;
        self.trail.push(x);
        true
    }

    /// Assigns `x ↦ y` and propagates through products. On failure the
    /// caller rolls back to its trail mark.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        if !self.set(x, y) {
            return false;
        }
        let mut cursor = self.trail.len() - 1;
        while cursor < self.trail.len() {
            let p = self.trail[cursor];
            cursor += 1;
            let assigned: Vec<usize> = self.trail.clone();
            for &q in &assigned {
                for (l, r) in [(p, q), (q, p)] {
                    let image = self.b.mul(self.forward[l], self.forward[r]);
                    if !self.set(self.a.mul(l, r), image) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("non-empty trail");
            self.backward[self.forward[x]] = usize::MAX;
            self.forward[x] = usize::MAX;
        }
    }

    fn extend(&mut self, order: &[usize], pos: usize, candidates: &[Vec<usize>]) -> bool {
        let Some(&x) = order[pos..].iter().find(|&&x| self.forward[x] == usize::MAX) else {
            return true;
        };
        for &y in &candidates[x] {
            let mark = self.trail.len();
            if self.assign(x, y) && self.extend(order, pos + 1, candidates) {
                return true;
            }
            self.rollback(mark);
        }
        false
    }
}
