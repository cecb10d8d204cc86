use std::collections::HashMap;

use super::iso::{monoid_isomorphism, signature, ElementInvariant};
use super::FiniteMonoid;
use crate::error::{Error, Result};

pub const MAX_ENUMERATION_SIZE: usize = 5;

const UNSET: usize = usize::MAX;

/// All monoids of order `n` up to isomorphism, in discovery order.
///
/// Cells of the table outside the identity row and column are filled in
/// row-major order, rejecting any partial table with a fully determined
/// associativity failure. Survivors are bucketed by invariant signature and
/// deduplicated with [`monoid_isomorphism`].
pub fn enumerate_monoids(n: usize) -> Result<Vec<FiniteMonoid>> {
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::SizeTooLarge {
            what: "monoid enumeration",
            size: n,
            cap: MAX_ENUMERATION_SIZE,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut table = vec![UNSET; n * n];
    for x in 0..n {
        table[x] = x;
        table[x * n] = x;
    }
    let cells: Vec<usize> = (1..n).flat_map(|i| (1..n).map(move |j| i * n + j)).collect();

    let mut found: Vec<FiniteMonoid> = Vec::new();
    let mut buckets: HashMap<Vec<ElementInvariant>, Vec<usize>> = HashMap::new();
    fill(n, &mut table, &cells, 0, &mut |flat| {
        let m = FiniteMonoid::from_flat_unchecked(n, flat.to_vec());
        let bucket = buckets.entry(signature(&m)).or_default();
        if bucket.iter().all(|&idx| monoid_isomorphism(&found[idx], &m).is_none()) {
            bucket.push(found.len());
            found.push(m);
        }
    });
    Ok(found)
}

fn fill(n: usize, table: &mut [usize], cells: &[usize], pos: usize, emit: &mut dyn FnMut(&[usize])) {
    if pos == cells.len() {
        emit(table);
        return;
    }
    let cell = cells[pos];
    for v in 0..n {
        table[cell] = v;
        if consistent(n, table, cell / n, cell % n) {
            fill(n, table, cells, pos + 1, emit);
        }
    }
    table[cell] = UNSET;
}

/// Checks every associativity instance that mentions the cell `(i, j)` and
/// whose entries are all known.
fn consistent(n: usize, t: &[usize], i: usize, j: usize) -> bool {
    let at = |a: usize, b: usize| {
        if a == UNSET || b == UNSET {
            UNSET
        } else {
            t[a * n + b]
        }
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let touches =
                    (x == i && y == j) || (y == i && z == j) || at(x, y) == i && z == j || x == i && at(y, z) == j;
                if !touches {
                    continue;
                }
                let left = at(at(x, y), z);
                let right = at(x, at(y, z));
                if left != UNSET && right != UNSET && left != right {
                    return false;
                }
            }
        }
    }
    true
}
