mod common;

use std::sync::Arc;

use monact::actions::{
    cokernel, congruence_category, exponential, hom_count, hom_set, joint_cover, product, right_congruences, tensor,
    CongMorphism, FiniteMSet, MSetMap, DEFAULT_CONGRUENCE_CAP, DEFAULT_EXPONENTIAL_CAP,
};
use monact::monoid::FiniteMonoid;

/// All M-sets of size `1..=max` for `m`.
fn msets(m: &Arc<FiniteMonoid>, max: usize) -> Vec<FiniteMSet> {
    (1..=max)
        .flat_map(|k| common::all_actions(m, k))
        .map(|rows| FiniteMSet::new(m.clone(), &rows).unwrap())
        .collect()
}

#[test]
fn yoneda_counts() {
    for m in common::monoids_up_to(4) {
        let rep = FiniteMSet::representable(m.clone());
        for x in msets(&m, 3) {
            assert_eq!(
                hom_count(&rep, &x).unwrap(),
                x.size(),
                "{:?} on {:?}",
                m.rows(),
                x.rows()
            );
        }
    }
}

#[test]
fn tensor_with_terminal_is_components() {
    for m in common::monoids_up_to(4) {
        let one = FiniteMSet::terminal(Arc::new(m.opposite()));
        for x in msets(&m, 3) {
            let t = tensor(&x, &one).unwrap();
            let comps = x.components();
            assert_eq!(t.size(), comps.class_count());
            for a in 0..x.size() {
                for b in 0..x.size() {
                    assert_eq!(t.class_of_pair(a, 0) == t.class_of_pair(b, 0), comps.same(a, b));
                }
            }
        }
    }
}

#[test]
fn exponential_adjunction_counts() {
    for m in common::monoids_up_to(3) {
        let small = msets(&m, 2);
        for z in &small {
            for x in &small {
                for y in &small {
                    let (zx, _, _) = product(z, x).unwrap();
                    let (yx, _) = exponential(x, y, DEFAULT_EXPONENTIAL_CAP).unwrap();
                    assert_eq!(hom_count(&zx, y).unwrap(), hom_count(z, &yx).unwrap());
                }
            }
        }
    }
}

#[test]
fn cokernel_lower_map_iso_iff_surjective() {
    for m in common::monoids_up_to(3) {
        let all = msets(&m, 3);
        for x in &all {
            for y in &all {
                for f in hom_set(x, y).unwrap() {
                    let (c, _, lower) = cokernel(&f, x, y).unwrap();
                    let iso = c.size() == 1 && lower.is_surjective(1);
                    assert_eq!(
                        iso,
                        f.is_surjective(y.size()),
                        "{:?} -> {:?} via {:?}",
                        x.rows(),
                        y.rows(),
                        f
                    );
                }
            }
        }
    }
}

#[test]
fn congruences_form_a_lattice() {
    for m in common::monoids_up_to(4) {
        let all = right_congruences(&m, DEFAULT_CONGRUENCE_CAP).unwrap();
        for r in &all {
            for s in &all {
                let meet = r.meet(s);
                let join = r.join(s);
                assert!(all.contains(&meet) && all.contains(&join));
                assert_eq!(meet.partition(), &r.partition().meet(s.partition()));
                assert_eq!(joint_cover(r, s), meet);
                for t in &all {
                    if t.refines(r) && t.refines(s) {
                        assert!(t.refines(&meet));
                    }
                    if r.refines(t) && s.refines(t) {
                        assert!(join.refines(t));
                    }
                }
                assert!(r.refines(&join) && s.refines(&join) && meet.refines(r) && meet.refines(s));
            }
        }
    }
}

#[test]
fn refinement_induces_epimorphisms() {
    for m in common::monoids_up_to(4) {
        let all = right_congruences(&m, DEFAULT_CONGRUENCE_CAP).unwrap();
        for r in &all {
            for s in all.iter().filter(|s| r.refines(s)) {
                let (qr, qs) = (r.quotient(), s.quotient());
                let reps = r.partition().representatives();
                let map = MSetMap::new(&qr, &qs, reps.iter().map(|&p| s.class_of(p)).collect()).unwrap();
                assert!(map.is_surjective(qs.size()));
            }
        }
    }
}

#[test]
fn congruence_morphisms_factor_as_epi_then_mono() {
    for m in common::monoids_up_to(4) {
        let objects = right_congruences(&m, DEFAULT_CONGRUENCE_CAP).unwrap();
        let cat = congruence_category(&m, objects.clone());
        for row in &cat.homs {
            for f in row.iter().flatten() {
                let fact = cat.factorize(f);
                let mid = objects
                    .iter()
                    .position(|r| *r == fact.middle)
                    .expect("middle is a right congruence");
                let epi = CongMorphism {
                    source: f.source,
                    target: mid,
                    witness: fact.middle.canonical(fact.epi_witness),
                };
                let mono = CongMorphism {
                    source: mid,
                    target: f.target,
                    witness: objects[f.target].canonical(fact.mono_witness),
                };
                assert!(cat.homs[f.source][mid].contains(&epi));
                assert!(cat.homs[mid][f.target].contains(&mono));
                assert_eq!(cat.compose(&mono, &epi).as_ref(), Some(f));
                // [p] ↦ [w·p] is injective on M/middle
                let target = &objects[f.target];
                for p in m.elements() {
                    for q in m.elements() {
                        let same = target.same(m.mul(mono.witness, p), m.mul(mono.witness, q));
                        assert_eq!(same, fact.middle.same(p, q));
                    }
                }
            }
        }
    }
}

/// `− ⊗ B` preserves the terminal object, binary products and equalizers
/// on a corpus that contains `M` itself.
fn preserves_finite_limits(corpus: &[FiniteMSet], b: &FiniteMSet) -> bool {
    use monact::actions::equalizer;
    use std::collections::BTreeSet;
    let m = corpus[0].monoid().clone();
    if tensor(&FiniteMSet::terminal(m), b).unwrap().size() != 1 {
        return false;
    }
    for x in corpus {
        let tx = tensor(x, b).unwrap();
        for y in corpus {
            let ty = tensor(y, b).unwrap();
            let (p, l, r) = product(x, y).unwrap();
            let tp = tensor(&p, b).unwrap();
            let image: BTreeSet<(usize, usize)> = (0..p.size())
                .flat_map(|q| (0..b.size()).map(move |e| (q, e)))
                .map(|(q, e)| (tx.class_of_pair(l.apply(q), e), ty.class_of_pair(r.apply(q), e)))
                .collect();
            if tp.size() != image.len() || image.len() != tx.size() * ty.size() {
                return false;
            }
            for f in hom_set(x, y).unwrap() {
                for g in hom_set(x, y).unwrap() {
                    let (eq, inc) = equalizer(&f, &g, x).unwrap();
                    let te = tensor(&eq, b).unwrap();
                    let on = |h: &MSetMap, c: usize| {
                        let (xx, e) = (0..x.size())
                            .flat_map(|xx| (0..b.size()).map(move |e| (xx, e)))
                            .find(|&(xx, e)| tx.class_of_pair(xx, e) == c)
                            .unwrap();
                        ty.class_of_pair(h.apply(xx), e)
                    };
                    let target: BTreeSet<usize> = (0..tx.size()).filter(|&c| on(&f, c) == on(&g, c)).collect();
                    let image: BTreeSet<usize> = (0..eq.size())
                        .flat_map(|q| (0..b.size()).map(move |e| (q, e)))
                        .map(|(q, e)| tx.class_of_pair(inc.apply(q), e))
                        .collect();
                    if image != target || te.size() != image.len() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[test]
fn flatness_conditions_match_limit_preservation() {
    use monact::actions::is_flat_left;
    for m in common::monoids_up_to(3) {
        let mut corpus = vec![FiniteMSet::representable(m.clone())];
        corpus.extend(msets(&m, 2));
        let op = Arc::new(m.opposite());
        for b in msets(&op, 3) {
            assert_eq!(
                is_flat_left(&b).is_ok(),
                preserves_finite_limits(&corpus, &b),
                "{:?} acting on {:?}",
                m.rows(),
                b.rows()
            );
        }
    }
}
