//! The subobject classifier, the power object `P(M)` and exponentials.

use std::collections::HashMap;
use std::sync::Arc;

use super::hom::hom_set_capped;
use super::limits::product;
use super::mset::{FiniteMSet, MSetMap};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;

pub const DEFAULT_POWER_SET_CAP: usize = 12;
pub const DEFAULT_EXPONENTIAL_CAP: usize = 4096;

/// `Ω`: right ideals of `M` in canonical order, acted on by `I·m = m*(I)`.
pub fn omega(monoid: Arc<FiniteMonoid>) -> (FiniteMSet, Vec<ElementSet>) {
    let ideals = monoid.right_ideals();
    let index: HashMap<&ElementSet, usize> = ideals.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let n = monoid.size();
    let mut action = Vec::with_capacity(ideals.len() * n);
    for ideal in &ideals {
        for m in 0..n {
            action.push(index[&monoid.pull_back_set(m, ideal)]);
        }
    }
    let size = ideals.len();
    (FiniteMSet::from_flat_unchecked(monoid, size, action), ideals)
}

/// `P(M)`: all subsets, acted on by `A·m = m*(A)`. Subset `A` has index
/// equal to its bitmask.
pub fn power_mset(monoid: Arc<FiniteMonoid>, cap: usize) -> Result<FiniteMSet> {
    let n = monoid.size();
    if n > cap || n >= 64 {
        return Err(Error::SizeTooLarge {
            what: "power set of a monoid",
            size: n,
            cap,
        });
    }
    let count = 1usize << n;
    let mut action = Vec::with_capacity(count * n);
    for mask in 0..count {
        let a = ElementSet::from_mask(n, mask as u64);
        for m in 0..n {
            action.push(monoid.pull_back_set(m, &a).mask() as usize);
        }
    }
    Ok(FiniteMSet::from_flat_unchecked(monoid, count, action))
}

/// The inclusion `Ω ↪ P(M)`.
pub fn omega_into_power(ideals: &[ElementSet]) -> MSetMap {
    MSetMap {
        map: ideals.iter().map(|i| i.mask() as usize).collect(),
    }
}

/// Complementation on `P(M)`.
pub fn power_complement(n: usize) -> MSetMap {
    let full = (1usize << n) - 1;
    MSetMap {
        map: (0..1usize << n).map(|a| full ^ a).collect(),
    }
}

/// `Y^X` with carrier `Hom(M × X, Y)` and `(f·m)(n, p) = f(mn, p)`.
///
/// The carrier is listed in the order produced by hom enumeration; each
/// element is a map on `M × X` indexed as `n·|X| + p`.
pub fn exponential(x: &FiniteMSet, y: &FiniteMSet, cap: usize) -> Result<(FiniteMSet, Vec<MSetMap>)> {
    x.require_same_monoid(y)?;
    let monoid = x.monoid().clone();
    let rep = FiniteMSet::representable(monoid.clone());
    let (mx, _, _) = product(&rep, x)?;
    let homs = hom_set_capped(&mx, y, cap).map_err(|e| match e {
        Error::SizeTooLarge { size, cap, .. } => Error::SizeTooLarge {
            what: "exponential carrier",
            size,
            cap,
        },
        other => other,
    })?;
    let index: HashMap<&[usize], usize> = homs.iter().enumerate().map(|(i, f)| (f.map.as_slice(), i)).collect();
    let (n, kx) = (monoid.size(), x.size());
    let mut action = Vec::with_capacity(homs.len() * n);
    for f in &homs {
        for m in 0..n {
            let moved: Vec<usize> = (0..n * kx)
                .map(|i| f.map[monoid.mul(m, i / kx) * kx + i % kx])
                .collect();
            action.push(index[moved.as_slice()]);
        }
    }
    let size = homs.len();
    Ok((FiniteMSet::from_flat_unchecked(monoid, size, action), homs))
}
