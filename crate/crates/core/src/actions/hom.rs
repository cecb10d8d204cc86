use super::mset::{FiniteMSet, MSetMap};
use crate::error::{Error, Result};

/// A set of elements whose orbits cover `X`, chosen greedily by orbit size.
pub fn generating_set(x: &FiniteMSet) -> Vec<usize> {
    let orbits: Vec<_> = (0..x.size()).map(|p| x.orbit(p)).collect();
    let mut covered = crate::bitset::ElementSet::empty(x.size());
    let mut gens = Vec::new();
    while !covered.is_full() {
        let best = (0..x.size())
            .filter(|&p| !covered.contains(p))
            .max_by_key(|&p| (orbits[p].difference(&covered).len(), std::cmp::Reverse(p)))
            .expect("an uncovered point");
        covered = covered.union(&orbits[best]);
        gens.push(best);
    }
    gens
}

/// All equivariant maps `X → Y`, in lexicographic order of generator images.
pub fn hom_set(x: &FiniteMSet, y: &FiniteMSet) -> Result<Vec<MSetMap>> {
    hom_set_capped(x, y, usize::MAX)
}

/// Like [`hom_set`] but fails once more than `cap` maps are found.
pub fn hom_set_capped(x: &FiniteMSet, y: &FiniteMSet, cap: usize) -> Result<Vec<MSetMap>> {
    x.require_same_monoid(y)?;
    let mut out = Vec::new();
    let mut overflow = false;
    for_each_hom(x, y, &mut |f| {
        if out.len() == cap {
            overflow = true;
            return false;
        }
        out.push(f.clone());
        true
    });
    if overflow {
        return Err(Error::SizeTooLarge {
            what: "hom-set",
            size: cap + 1,
            cap,
        });
    }
    Ok(out)
}

pub fn hom_count(x: &FiniteMSet, y: &FiniteMSet) -> Result<usize> {
    x.require_same_monoid(y)?;
    let mut count = 0;
    for_each_hom(x, y, &mut |_| {
        count += 1;
        true
    });
    Ok(count)
}

/// Visits every equivariant map; the visitor returns `false` to stop.
pub fn for_each_hom(x: &FiniteMSet, y: &FiniteMSet, visit: &mut dyn FnMut(&MSetMap) -> bool) {
    let gens = generating_set(x);
    let mut map = vec![usize::MAX; x.size()];
    extend(x, y, &gens, 0, &mut map, visit);
}

fn extend(
    x: &FiniteMSet,
    y: &FiniteMSet,
    gens: &[usize],
    pos: usize,
    map: &mut Vec<usize>,
    visit: &mut dyn FnMut(&MSetMap) -> bool,
) -> bool {
    if pos == gens.len() {
        return visit(&MSetMap { map: map.clone() });
    }
    let g = gens[pos];
    let n = x.monoid().size();
    for target in 0..y.size() {
        let mut written = Vec::new();
        let mut ok = true;
        for m in 0..n {
            let (src, img) = (x.act(g, m), y.act(target, m));
            if map[src] == usize::MAX {
                map[src] = img;
                written.push(src);
            } else if map[src] != img {
                ok = false;
                break;
            }
        }
        if ok && !extend(x, y, gens, pos + 1, map, visit) {
            for w in written {
                map[w] = usize::MAX;
            }
            return false;
        }
        for w in written {
            map[w] = usize::MAX;
        }
    }
    true
}
