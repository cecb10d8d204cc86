//! Tensor products with left M-sets, and flatness.
//!
//! A left M-set is represented as a right action of `M^op`, so `m·b` is
//! `b.act(b, m)`.

use serde::Serialize;

use super::mset::FiniteMSet;
use crate::error::{Error, Result};
use crate::partition::{Partition, UnionFind};

/// `A ⊗ B` as a partition of `A × B` (index `a·|B| + b`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    pub left_size: usize,
    pub right_size: usize,
    pub classes: Partition,
}

impl Tensor {
    pub fn size(&self) -> usize {
        self.classes.class_count()
    }

    pub fn class_of_pair(&self, a: usize, b: usize) -> usize {
        self.classes.class_of(a * self.right_size + b)
    }
}

/// `A ⊗_M B` for `A` a right M-set and `B` a right `M^op`-set.
pub fn tensor(a: &FiniteMSet, b: &FiniteMSet) -> Result<Tensor> {
    if *b.monoid().as_ref() != a.monoid().opposite() {
        return Err(Error::MonoidMismatch);
    }
    let (ka, kb) = (a.size(), b.size());
    let mut uf = UnionFind::new(ka * kb);
    for x in 0..ka {
        for y in 0..kb {
            for m in a.monoid().elements() {
                // (x·m, y) ∼ (x, m·y)
                uf.union(a.act(x, m) * kb + y, x * kb + b.act(y, m));
            }
        }
    }
    Ok(Tensor {
        left_size: ka,
        right_size: kb,
        classes: uf.into_partition(),
    })
}

/// The first flatness condition that fails, with its witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FlatnessFailure {
    Empty,
    /// No `a, m, m'` with `m·a = b` and `m'·a = b'`.
    NotConnected {
        b: usize,
        b_prime: usize,
    },
    /// `m·c = m'·c` but no `d, n` has `n·d = c` and `m·n = m'·n`.
    NotCollapsible {
        m: usize,
        m_prime: usize,
        c: usize,
    },
}

/// Checks the elementwise characterization of flatness of a left M-set.
pub fn is_flat_left(b: &FiniteMSet) -> Result<(), FlatnessFailure> {
    let k = b.size();
    if k == 0 {
        return Err(FlatnessFailure::Empty);
    }
    let m = b.monoid();
    // b.monoid() is M^op, whose multiplication is reversed; `left` acts as M
    let left = |n: usize, x: usize| b.act(x, n);
    let mul = |p: usize, q: usize| m.mul(q, p);
    for x in 0..k {
        for y in 0..k {
            let joined = (0..k).any(|a| m.elements().any(|p| left(p, a) == x) && m.elements().any(|q| left(q, a) == y));
            if !joined {
                return Err(FlatnessFailure::NotConnected { b: x, b_prime: y });
            }
        }
    }
    for p in m.elements() {
        for q in m.elements() {
            for c in 0..k {
                if left(p, c) != left(q, c) {
                    continue;
                }
                let equalized = m
                    .elements()
                    .any(|n| mul(p, n) == mul(q, n) && (0..k).any(|d| left(n, d) == c));
                if !equalized {
                    return Err(FlatnessFailure::NotCollapsible { m: p, m_prime: q, c });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::monoid::FiniteMonoid;

    fn left(m: &FiniteMonoid) -> Arc<FiniteMonoid> {
        Arc::new(m.opposite())
    }

    #[test]
    fn tensor_with_terminal_counts_components() {
        let m = FiniteMonoid::with_right_zeros(2);
        let a = FiniteMSet::trivial(Arc::new(m.clone()), 2);
        let t = tensor(&a, &FiniteMSet::terminal(left(&m))).unwrap();
        assert_eq!(t.size(), 2);
        let rep = FiniteMSet::representable(Arc::new(m.clone()));
        assert_eq!(tensor(&rep, &FiniteMSet::terminal(left(&m))).unwrap().size(), 1);
    }

    #[test]
    fn tensor_with_monoid_is_unit() {
        let m = FiniteMonoid::cyclic_group(3);
        let b = FiniteMSet::trivial(left(&m), 2);
        let rep = FiniteMSet::representable(Arc::new(m));
        assert_eq!(tensor(&rep, &b).unwrap().size(), 2);
    }

    #[test]
    fn tensor_over_trivial_monoid_is_product() {
        let t = Arc::new(FiniteMonoid::trivial());
        let x = tensor(&FiniteMSet::trivial(t.clone(), 3), &FiniteMSet::trivial(t, 4)).unwrap();
        assert_eq!(x.size(), 12);
    }

    #[test]
    fn tensor_needs_the_opposite_monoid() {
        let m = Arc::new(FiniteMonoid::with_right_zeros(2));
        let a = FiniteMSet::terminal(m.clone());
        assert_eq!(tensor(&a, &FiniteMSet::terminal(m)), Err(Error::MonoidMismatch));
    }

    #[test]
    fn flatness_examples() {
        let m3 = FiniteMonoid::with_right_zeros(2);
        assert_eq!(is_flat_left(&FiniteMSet::representable(left(&m3))), Ok(()));
        assert!(matches!(
            is_flat_left(&FiniteMSet::terminal(left(&m3))),
            Err(FlatnessFailure::NotCollapsible { .. })
        ));
        let z2 = FiniteMonoid::cyclic_group(2);
        assert!(is_flat_left(&FiniteMSet::terminal(left(&z2))).is_err());
        assert_eq!(is_flat_left(&FiniteMSet::empty(left(&z2))), Err(FlatnessFailure::Empty));
        let semilattice = FiniteMonoid::with_zero();
        assert_eq!(is_flat_left(&FiniteMSet::terminal(left(&semilattice))), Ok(()));
    }
}
