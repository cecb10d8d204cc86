mod common;

use proptest::prelude::*;

use monact::actions::RightCongruence;
use monact::bitset::ElementSet;
use monact::monoid::{algebraic_profile, enumerate_monoids, validate_monoid};

#[test]
fn right_factorable_closure_matches_congruence_class() {
    for m in common::monoids_up_to(4) {
        let n = m.size();
        for mask in 1u64..(1 << n) {
            let s = ElementSet::from_mask(n, mask);
            let closure = m.right_factorable_closure(&s).unwrap();
            let pairs: Vec<(usize, usize)> = s.iter().map(|x| (x, 0)).collect();
            let r = RightCongruence::generated(m.clone(), &pairs);
            let class = ElementSet::from_indices(n, (0..n).filter(|&x| r.same(x, 0)));
            assert_eq!(closure, class, "{:?} with S = {s}", m.rows());
        }
    }
}

#[test]
fn two_right_ideals_iff_group() {
    for m in common::monoids_up_to(4) {
        let p = algebraic_profile(&m);
        assert_eq!(p.right_ideal_count == 2, p.is_group, "{:?}", m.rows());
    }
}

#[test]
fn opposite_swaps_ore_conditions() {
    for m in common::monoids_up_to(4) {
        let op = m.opposite();
        assert_eq!(op.idempotents(), m.idempotents());
        let left_ore = m.elements().all(|a| {
            m.elements()
                .all(|b| m.elements().any(|x| m.elements().any(|y| m.mul(x, a) == m.mul(y, b))))
        });
        assert_eq!(op.is_right_ore(), left_ore, "{:?}", m.rows());
        assert_eq!(op.opposite(), *m);
    }
}

#[test]
fn morita_witness_betas_are_units() {
    for m in common::monoids_up_to(4) {
        for w in m.morita_witnesses() {
            assert!(w.holds_in(&m));
            assert_eq!(m.mul(w.beta_prime, w.beta), 0, "{w:?} in {:?}", m.rows());
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    for n in 1..=4 {
        assert_eq!(enumerate_monoids(n).unwrap(), enumerate_monoids(n).unwrap());
    }
}

fn associative(rows: &[Vec<usize>]) -> bool {
    let n = rows.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| rows[rows[a][b]][c] == rows[a][rows[b][c]])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Changing one entry off the identity row and column either keeps the
    /// table associative or is caught.
    #[test]
    fn planted_defects_are_rejected(index in 0usize..42, a in 1usize..4, b in 1usize..4, v in 0usize..4) {
        let monoids: Vec<_> = (3..=4).flat_map(|n| enumerate_monoids(n).unwrap()).collect();
        let m = &monoids[index % monoids.len()];
        let n = m.size();
        let (a, b, v) = (a % n, b % n, v % n);
        prop_assume!(a != 0 && b != 0 && m.mul(a, b) != v);
        let mut rows = m.rows();
        rows[a][b] = v;
        let verdict = validate_monoid(&rows, 0);
        prop_assert_eq!(verdict.is_ok(), associative(&rows));
    }

    /// Relabelling an enumerated monoid and validating with the moved
    /// identity gives back an isomorphic monoid.
    #[test]
    fn relabelled_tables_validate(index in 0usize..35, shift in 1usize..4) {
        let monoids = enumerate_monoids(4).unwrap();
        let m = &monoids[index];
        let perm: Vec<usize> = (0..4).map(|x| (x + shift) % 4).collect();
        let mut rows = vec![vec![0; 4]; 4];
        for x in 0..4 {
            for y in 0..4 {
                rows[perm[x]][perm[y]] = perm[m.mul(x, y)];
            }
        }
        let back = validate_monoid(&rows, perm[0]).unwrap();
        prop_assert!(monact::monoid::monoid_isomorphism(&back.monoid, m).is_some());
        prop_assert_eq!(back.old_to_new[perm[0]], 0);
    }
}
