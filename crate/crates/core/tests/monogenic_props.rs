mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use monact::monogenic::{
    classify, equivariant_maps, find_retraction, truncated_profinite, truncation_projection, MonogenicAction, NabShape,
};
use monact::monoid::FiniteMonoid;

fn step_fn(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max).prop_flat_map(|n| proptest::collection::vec(0..n, n))
}

fn injective(f: &[usize]) -> bool {
    f.iter().collect::<BTreeSet<_>>().len() == f.len()
}

proptest! {
    #[test]
    fn equivariant_maps_match_naive_search(x in step_fn(5), y in step_fn(5)) {
        let got: BTreeSet<Vec<usize>> = equivariant_maps(&MonogenicAction::new(x.clone()).unwrap(), &MonogenicAction::new(y.clone()).unwrap())
            .into_iter()
            .collect();
        let want: BTreeSet<Vec<usize>> = common::naive_equivariant_maps(&x, &y).into_iter().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn classification_survives_relabelling(step in step_fn(8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let x = MonogenicAction::new(step).unwrap();
        let mut perm: Vec<usize> = (0..x.size()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let y = x.relabeled(&perm).unwrap();
        let (cx, cy) = (classify(&x), classify(&y));
        prop_assert_eq!(&cx.principal_shapes, &cy.principal_shapes);
        prop_assert_eq!(cx.component_count, cy.component_count);
        prop_assert_eq!(cx.principal_components, cy.principal_components);
        for (p, &q) in perm.iter().enumerate() {
            prop_assert_eq!(cx.element_shapes[p], cy.element_shapes[q]);
        }
    }

    #[test]
    fn generators_are_minimal(step in step_fn(8)) {
        let x = MonogenicAction::new(step).unwrap();
        let gens = classify(&x).generators;
        let covered = gens.iter().fold(BTreeSet::new(), |mut acc, &g| {
            acc.extend(x.orbit(g).iter());
            acc
        });
        prop_assert_eq!(covered.len(), x.size());
        for &g in &gens {
            for &h in gens.iter().filter(|&&h| h != g) {
                prop_assert!(!x.orbit(h).contains(g));
            }
        }
    }
}

/// A mono `N_{a,b} ↪ N_{a',b}` splits exactly when `a = a'` or `a = 0`.
#[test]
fn split_monos() {
    for b in 1..=4 {
        for a in 0..=4 {
            for a2 in a..=4 {
                let (s, t) = (NabShape::new(a, b).unwrap(), NabShape::new(a2, b).unwrap());
                let (xs, ys) = (common::nab_step(a, b), common::nab_step(a2, b));
                let back = common::maps_from_principal(&ys, &xs);
                for f in common::maps_from_principal(&xs, &ys).iter().filter(|f| injective(f)) {
                    let oracle = back.iter().any(|r| (0..xs.len()).all(|p| r[f[p]] == p));
                    let found = find_retraction(f, &s.action(), &t.action());
                    assert_eq!(found.is_some(), oracle, "{s} -> {t} via {f:?}");
                    assert_eq!(oracle, a == a2 || a == 0, "{s} -> {t} via {f:?}");
                }
            }
        }
    }
}

#[test]
fn truncations_project_homomorphically() {
    for depth in 1..=6 {
        let p = truncated_profinite(depth).unwrap();
        assert_eq!(p.monoid, FiniteMonoid::truncated_addition(depth));
        assert!(p.topology.is_discrete() && p.topology.is_topological_monoid().is_ok());
        for smaller in 1..depth {
            let map = truncation_projection(depth, smaller);
            assert!(p
                .monoid
                .is_homomorphism_to(&FiniteMonoid::truncated_addition(smaller), &map));
        }
    }
    assert!(truncated_profinite(0).is_err());
}
