//! Oracles shared by the integration tests. Apart from `monoids_up_to`,
//! which only supplies inputs, nothing here calls the library code it checks.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use monact::monoid::{enumerate_monoids, FiniteMonoid};

/// Every monoid of order `1..=max`, as enumerated by the library.
pub fn monoids_up_to(max: usize) -> Vec<Arc<FiniteMonoid>> {
    (1..=max)
        .flat_map(|n| enumerate_monoids(n).expect("within the enumeration cap"))
        .map(Arc::new)
        .collect()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// A second enumerator: brute force over every table with identity `0`,
/// keeping the lexicographically least relabelling of each associative one.
/// Returns the canonical flat tables.
pub fn second_enumerator(n: usize) -> BTreeSet<Vec<usize>> {
    let free: Vec<(usize, usize)> = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
    let mut table = vec![0usize; n * n];
    for a in 0..n {
        table[a] = a;
        table[a * n] = a;
    }
    let perms: Vec<Vec<usize>> = permutations(&(1..n).collect::<Vec<_>>())
        .into_iter()
        .map(|p| std::iter::once(0).chain(p).collect())
        .collect();
    let mut found = BTreeSet::new();
    let total = n.pow(free.len() as u32);
    for code in 0..total {
        let mut c = code;
        for &(a, b) in &free {
            table[a * n + b] = c % n;
            c /= n;
        }
        let assoc = (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| table[table[x * n + y] * n + z] == table[x * n + table[y * n + z]]))
        });
        if !assoc {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|p| {
                // p maps old labels to new ones
                let mut inv = vec![0; n];
                for (old, &new) in p.iter().enumerate() {
                    inv[new] = old;
                }
                (0..n * n)
                    .map(|i| p[table[inv[i / n] * n + inv[i % n]]])
                    .collect::<Vec<_>>()
            })
            .min()
            .expect("at least one permutation");
        found.insert(canonical);
    }
    found
}

/// Every topology on `n` labelled points, as sorted lists of bit masks.
pub fn all_topologies(n: usize) -> Vec<Vec<u64>> {
    let full: u64 = (1u64 << n) - 1;
    let middle: Vec<u64> = (1..full).collect();
    let mut out = Vec::new();
    for choice in 0u64..(1u64 << middle.len()) {
        let mut opens: Vec<u64> = vec![0, full];
        opens.extend(
            middle
                .iter()
                .enumerate()
                .filter(|(i, _)| choice >> i & 1 == 1)
                .map(|(_, &m)| m),
        );
        let set: BTreeSet<u64> = opens.iter().copied().collect();
        let closed = opens
            .iter()
            .all(|a| opens.iter().all(|b| set.contains(&(a | b)) && set.contains(&(a & b))));
        if closed {
            out.push(set.into_iter().collect());
        }
    }
    out
}

/// `N_{a,b}` built directly: a tail `0 → 1 → … → a` feeding a cycle of
/// length `b` on `a, …, a+b−1`.
pub fn nab_step(a: usize, b: usize) -> Vec<usize> {
    (0..a + b).map(|i| if i + 1 < a + b { i + 1 } else { a }).collect()
}

/// All equivariant maps between two step functions, found by trying every
/// image of every point and filtering. Only for small carriers.
pub fn naive_equivariant_maps(x: &[usize], y: &[usize]) -> Vec<Vec<usize>> {
    let (n, m) = (x.len(), y.len());
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    fn go(i: usize, n: usize, m: usize, x: &[usize], y: &[usize], map: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            if (0..n).all(|p| map[x[p]] == y[map[p]]) {
                out.push(map.clone());
            }
            return;
        }
        for v in 0..m {
            map[i] = v;
            go(i + 1, n, m, x, y, map, out);
        }
    }
    go(0, n, m, x, y, &mut map, &mut out);
    out
}

/// Equivariant maps out of a principal step function generated by `0`:
/// each is fixed by the image of `0`.
pub fn maps_from_principal(x: &[usize], y: &[usize]) -> Vec<Vec<usize>> {
    (0..y.len())
        .filter_map(|y0| {
            let mut map = vec![0usize; x.len()];
            let mut cur = y0;
            for slot in map.iter_mut() {
                *slot = cur;
                cur = y[cur];
            }
            // x is laid out so that point i is 0 stepped i times
            (0..x.len()).all(|p| map[x[p]] == y[map[p]]).then_some(map)
        })
        .collect()
}

/// Every right action of `m` on `{0, .., size-1}`, as rows `rows[x][k] = x·k`,
/// found by trying every table and keeping the lawful ones.
pub fn all_actions(m: &FiniteMonoid, size: usize) -> Vec<Vec<Vec<usize>>> {
    let n = m.size();
    let cells: Vec<(usize, usize)> = (0..size).flat_map(|x| (1..n).map(move |k| (x, k))).collect();
    let total = size.pow(cells.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut rows: Vec<Vec<usize>> = (0..size).map(|x| vec![x; n]).collect();
        let mut c = code;
        for &(x, k) in &cells {
            rows[x][k] = c % size;
            c /= size;
        }
        let lawful = (0..size).all(|x| (0..n).all(|a| (0..n).all(|b| rows[rows[x][a]][b] == rows[x][m.mul(a, b)])));
        if lawful {
            out.push(rows);
        }
    }
    out
}
