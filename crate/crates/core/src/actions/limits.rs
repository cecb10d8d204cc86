//! Limits and colimits, computed on carriers.

use super::mset::{FiniteMSet, MSetMap};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// `X × Y` with carrier index `x·|Y| + y`, and both projections.
pub fn product(x: &FiniteMSet, y: &FiniteMSet) -> Result<(FiniteMSet, MSetMap, MSetMap)> {
    x.require_same_monoid(y)?;
    let (kx, ky) = (x.size(), y.size());
    let n = x.monoid().size();
    let mut action = Vec::with_capacity(kx * ky * n);
    for a in 0..kx {
        for b in 0..ky {
            for m in 0..n {
                action.push(x.act(a, m) * ky + y.act(b, m));
            }
        }
    }
    let p = FiniteMSet::from_flat_unchecked(x.monoid().clone(), kx * ky, action);
    let left = MSetMap {
        map: (0..kx * ky).map(|i| i / ky).collect(),
    };
    let right = MSetMap {
        map: (0..kx * ky).map(|i| i % ky).collect(),
    };
    Ok((p, left, right))
}

/// `X ⊔ Y` with `Y` placed after `X`, and both injections.
pub fn coproduct(x: &FiniteMSet, y: &FiniteMSet) -> Result<(FiniteMSet, MSetMap, MSetMap)> {
    x.require_same_monoid(y)?;
    let (kx, ky) = (x.size(), y.size());
    let n = x.monoid().size();
    let mut action = Vec::with_capacity((kx + ky) * n);
    for a in 0..kx {
        action.extend((0..n).map(|m| x.act(a, m)));
    }
    for b in 0..ky {
        action.extend((0..n).map(|m| kx + y.act(b, m)));
    }
    Ok((
        FiniteMSet::from_flat_unchecked(x.monoid().clone(), kx + ky, action),
        MSetMap::identity(kx),
        MSetMap {
            map: (kx..kx + ky).collect(),
        },
    ))
}

fn check_parallel(f: &MSetMap, g: &MSetMap, source: &FiniteMSet) -> Result<()> {
    if f.map.len() != source.size() || g.map.len() != source.size() {
        return Err(Error::InvalidAction("maps do not share the given source".into()));
    }
    Ok(())
}

/// The largest sub-M-set of `X` on which `f` and `g` agree.
pub fn equalizer(f: &MSetMap, g: &MSetMap, source: &FiniteMSet) -> Result<(FiniteMSet, MSetMap)> {
    check_parallel(f, g, source)?;
    let agree = ElementSet::from_indices(source.size(), (0..source.size()).filter(|&x| f.map[x] == g.map[x]));
    source.sub_mset(&agree)
}

/// `Y / (f(x) ∼ g(x))` and the quotient map from `Y`.
pub fn coequalizer(
    f: &MSetMap,
    g: &MSetMap,
    source: &FiniteMSet,
    target: &FiniteMSet,
) -> Result<(FiniteMSet, MSetMap)> {
    check_parallel(f, g, source)?;
    let pairs: Vec<(usize, usize)> = (0..source.size()).map(|x| (f.map[x], g.map[x])).collect();
    Ok(target.quotient_by_pairs(&pairs))
}

/// Pushout of `f: X → Y` and `g: X → Z`, with the maps from `Y` and `Z`.
pub fn pushout(
    f: &MSetMap,
    g: &MSetMap,
    x: &FiniteMSet,
    y: &FiniteMSet,
    z: &FiniteMSet,
) -> Result<(FiniteMSet, MSetMap, MSetMap)> {
    x.require_same_monoid(y)?;
    x.require_same_monoid(z)?;
    check_parallel(f, g, x)?;
    let (sum, inl, inr) = coproduct(y, z)?;
    let pairs: Vec<(usize, usize)> = (0..x.size())
        .map(|p| (inl.apply(f.map[p]), inr.apply(g.map[p])))
        .collect();
    let (p, q) = sum.quotient_by_pairs(&pairs);
    Ok((p, q.after(&inl), q.after(&inr)))
}

/// The image of `f` as a sub-M-set of its target, with the inclusion.
pub fn image(f: &MSetMap, target: &FiniteMSet) -> Result<(FiniteMSet, MSetMap)> {
    target.sub_mset(&f.image(target.size()))
}

/// Cokernel of `f: X → Y`: the pushout of `f` against `X → 1`. Returns the
/// cokernel object, the map from `Y` and the lower map from `1`.
pub fn cokernel(f: &MSetMap, x: &FiniteMSet, y: &FiniteMSet) -> Result<(FiniteMSet, MSetMap, MSetMap)> {
    let one = FiniteMSet::terminal(x.monoid().clone());
    let bang = MSetMap { map: vec![0; x.size()] };
    pushout(f, &bang, x, y, &one)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::monoid::FiniteMonoid;

    fn m3() -> Arc<FiniteMonoid> {
        Arc::new(FiniteMonoid::with_right_zeros(2))
    }

    #[test]
    fn m3_squared_is_connected() {
        let x = FiniteMSet::representable(m3());
        let (p, l, r) = product(&x, &x).unwrap();
        assert_eq!(p.size(), 9);
        assert_eq!(p.component_count(), 1);
        assert!(MSetMap::new(&p, &x, l.map).is_ok());
        assert!(MSetMap::new(&p, &x, r.map).is_ok());
    }

    #[test]
    fn z2_squared_splits_into_orbits() {
        let x = FiniteMSet::representable(Arc::new(FiniteMonoid::cyclic_group(2)));
        assert_eq!(product(&x, &x).unwrap().0.component_count(), 2);
    }

    #[test]
    fn coproduct_components_add() {
        let x = FiniteMSet::representable(m3());
        let y = FiniteMSet::trivial(m3(), 2);
        assert_eq!(coproduct(&x, &y).unwrap().0.component_count(), 3);
    }

    #[test]
    fn cokernel_of_epi_is_terminal() {
        let x = FiniteMSet::representable(m3());
        let one = FiniteMSet::terminal(m3());
        let (c, _, lower) = cokernel(&MSetMap { map: vec![0; 3] }, &x, &one).unwrap();
        assert_eq!(c.size(), 1);
        assert_eq!(lower.map, vec![0]);
        // a non-surjective map leaves the lower map non-surjective
        let (c, _, lower) = cokernel(&MSetMap { map: vec![1] }, &one, &x).unwrap();
        assert_eq!(c.size(), 3);
        assert!(!lower.is_surjective(c.size()));
    }

    #[test]
    fn image_of_map_from_representable() {
        let x = FiniteMSet::representable(m3());
        let f = MSetMap { map: vec![1, 1, 1] };
        let (img, inc) = image(&f, &x).unwrap();
        assert_eq!(img.size(), 1);
        assert_eq!(inc.map, x.orbit(1).to_vec());
    }

    #[test]
    fn equalizer_and_coequalizer() {
        let x = FiniteMSet::representable(m3());
        let id = MSetMap::identity(3);
        // left multiplication by a is equivariant
        let la = MSetMap { map: vec![1, 1, 1] };
        let (eq, inc) = equalizer(&id, &la, &x).unwrap();
        assert_eq!((eq.size(), inc.map), (1, vec![1]));
        let (coeq, q) = coequalizer(&id, &la, &x, &x).unwrap();
        assert_eq!(coeq.size(), 1);
        assert_eq!(q.map, vec![0, 0, 0]);
    }
}
