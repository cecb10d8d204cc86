//! Topos-level properties of `M`-sets read off from the monoid, and
//! brute-force checks of each equivalence over a corpus of small `M`-sets.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::actions::{
    coproduct, equalizer, for_each_hom, omega, product, right_congruences, FiniteMSet, MSetMap, DEFAULT_CONGRUENCE_CAP,
};
use crate::bitset::ElementSet;
use crate::monoid::{algebraic_profile, FiniteMonoid};

/// A boolean together with the criterion that decided it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub value: bool,
    pub criterion: &'static str,
}

impl Flag {
    fn new(value: bool, criterion: &'static str) -> Self {
        Self { value, criterion }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ToposProfile {
    pub boolean_atomic: Flag,
    pub de_morgan: Flag,
    #[serde(rename = "local")]
    pub local_: Flag,
    pub colocal: Flag,
    pub totally_connected: Flag,
    pub strongly_connected: Flag,
    pub bilocal_quality_type: Flag,
    pub strongly_compact: Flag,
    pub two_valued: Flag,
}

pub fn topos_profile(m: &FiniteMonoid) -> ToposProfile {
    let p = algebraic_profile(m);
    let shared = Arc::new(m.clone());
    let rep = FiniteMSet::representable(shared.clone());
    let square = product(&rep, &rep).expect("same monoid").0;
    let (om, _) = omega(shared);
    ToposProfile {
        boolean_atomic: Flag::new(p.is_group, "M is a group"),
        de_morgan: Flag::new(p.is_right_ore, "M satisfies the right Ore condition"),
        local_: Flag::new(p.has_right_absorbing, "M has a right absorbing element"),
        colocal: Flag::new(p.has_left_absorbing, "M has a left absorbing element"),
        totally_connected: Flag::new(p.is_right_collapsible, "M is right collapsible"),
        strongly_connected: Flag::new(square.component_count() == 1, "M × M is indecomposable"),
        bilocal_quality_type: Flag::new(p.has_zero, "M has a zero element"),
        strongly_compact: Flag::new(true, "finite M is right-factorably generated by itself"),
        two_valued: Flag::new(om.fixed_points().len() == 2, "Ω has exactly two fixed points"),
    }
}

/// One named `M`-set in the brute-force corpus.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub mset: FiniteMSet,
    /// Set for principal entries `M/r`.
    pub principal: bool,
}

/// Small `M`-sets: the terminal and empty sets, every quotient `M/r`, the
/// non-empty right ideals, pairwise coproducts and products of quotients,
/// `Ω`, and seeded random equivariant quotients of all of these. Only
/// entries of size at most `size_cap` are kept, except for quotients of
/// `M` itself, which are always present.
pub fn mset_corpus(monoid: &Arc<FiniteMonoid>, size_cap: usize, seed: u64) -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = Vec::new();
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    let mut push = |out: &mut Vec<CorpusEntry>, name: String, mset: FiniteMSet, principal: bool, force: bool| {
        if (force || mset.size() <= size_cap) && seen.insert(mset.rows()) {
            out.push(CorpusEntry { name, mset, principal });
        }
    };
    push(&mut out, "0".into(), FiniteMSet::empty(monoid.clone()), false, true);
    push(&mut out, "1".into(), FiniteMSet::terminal(monoid.clone()), true, true);

    let congs = right_congruences(monoid, DEFAULT_CONGRUENCE_CAP.max(monoid.size())).expect("within cap");
    let quotients: Vec<(String, FiniteMSet)> = congs
        .iter()
        .map(|r| (format!("M/{:?}", r.partition().classes_vec()), r.quotient()))
        .collect();
    for (name, q) in &quotients {
        push(&mut out, name.clone(), q.clone(), true, true);
    }

    let rep = FiniteMSet::representable(monoid.clone());
    for ideal in monoid.right_ideals().into_iter().filter(|i| !i.is_empty()) {
        let (sub, _) = rep.sub_mset(&ideal).expect("ideals are closed");
        push(&mut out, format!("ideal {ideal}"), sub, false, false);
    }

    for (i, (na, a)) in quotients.iter().enumerate() {
        for (nb, b) in quotients.iter().skip(i) {
            if a.size() + b.size() <= size_cap {
                push(
                    &mut out,
                    format!("{na} + {nb}"),
                    coproduct(a, b).expect("same monoid").0,
                    false,
                    false,
                );
            }
            if a.size() * b.size() <= size_cap {
                push(
                    &mut out,
                    format!("{na} × {nb}"),
                    product(a, b).expect("same monoid").0,
                    false,
                    false,
                );
            }
        }
    }
    push(&mut out, "Ω".into(), omega(monoid.clone()).0, false, false);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases: Vec<CorpusEntry> = out.iter().filter(|e| e.mset.size() >= 2).cloned().collect();
    for base in bases {
        for _ in 0..2 {
            let k = base.mset.size();
            let a = rng.gen_range(0..k);
            let b = rng.gen_range(0..k);
            let (q, _) = base.mset.quotient_by_pairs(&[(a, b)]);
            push(&mut out, format!("{} / ({a}~{b})", base.name), q, false, false);
        }
    }
    out
}

/// The canonical map `Γ(X) → C(X)` sending a fixed point to its component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaMap {
    pub fixed_points: Vec<usize>,
    /// Component index of each fixed point.
    pub map: Vec<usize>,
    pub component_count: usize,
    pub is_mono: bool,
    pub is_epi: bool,
    pub is_iso: bool,
}

pub fn alpha_map(x: &FiniteMSet) -> AlphaMap {
    let comps = x.components();
    let fixed = x.fixed_points().to_vec();
    let map: Vec<usize> = fixed.iter().map(|&p| comps.class_of(p)).collect();
    let image: HashSet<usize> = map.iter().copied().collect();
    let is_mono = image.len() == map.len();
    let is_epi = image.len() == comps.class_count();
    AlphaMap {
        fixed_points: fixed,
        map,
        component_count: comps.class_count(),
        is_mono,
        is_epi,
        is_iso: is_mono && is_epi,
    }
}

/// The outcome of comparing a monoid-side predicate with its brute-force
/// topos-side counterpart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crosscheck {
    pub name: &'static str,
    pub algebraic: bool,
    pub brute_force: bool,
    /// First counterexample found by the brute-force side, if any.
    pub witness: Option<String>,
}

impl Crosscheck {
    pub fn agrees(&self) -> bool {
        self.algebraic == self.brute_force
    }
}

fn check(name: &'static str, algebraic: bool, failure: Option<String>) -> Crosscheck {
    Crosscheck {
        name,
        algebraic,
        brute_force: failure.is_none(),
        witness: failure,
    }
}

fn first_failure<'a, T: 'a>(
    items: impl IntoIterator<Item = &'a T>,
    probe: impl FnMut(&'a T) -> Option<String>,
) -> Option<String> {
    items.into_iter().find_map(probe)
}

/// Visits every ordered pair of corpus entries and every map between them.
fn for_each_corpus_map(
    corpus: &[CorpusEntry],
    mut visit: impl FnMut(&CorpusEntry, &CorpusEntry, &MSetMap) -> Option<String>,
) -> Option<String> {
    for x in corpus {
        for y in corpus {
            let mut found = None;
            for_each_hom(&x.mset, &y.mset, &mut |f| {
                found = visit(x, y, f);
                found.is_none()
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// Fixed points and global sections against right absorbing elements.
pub fn crosscheck_gamma(monoid: &Arc<FiniteMonoid>, size_cap: usize, seed: u64) -> Vec<Crosscheck> {
    let corpus = mset_corpus(monoid, size_cap, seed);
    let local = algebraic_profile(monoid).has_right_absorbing;
    let principal_fixed = first_failure(corpus.iter().filter(|e| e.principal && !e.mset.is_empty()), |e| {
        e.mset
            .fixed_points()
            .is_empty()
            .then(|| format!("{} has no fixed point", e.name))
    });
    let all_fixed = first_failure(corpus.iter().filter(|e| !e.mset.is_empty()), |e| {
        e.mset
            .fixed_points()
            .is_empty()
            .then(|| format!("{} has no fixed point", e.name))
    });
    let gamma_epi = for_each_corpus_map(&corpus, |x, y, f| {
        if !f.is_surjective(y.mset.size()) {
            return None;
        }
        let image: HashSet<usize> = x.mset.fixed_points().iter().map(|p| f.apply(p)).collect();
        (image.len() != y.mset.fixed_points().len())
            .then(|| format!("Γ of {:?}: {} → {} is not onto", f.map, x.name, y.name))
    });
    let alpha_epi = first_failure(&corpus, |e| {
        (!alpha_map(&e.mset).is_epi).then(|| format!("α is not epic on {}", e.name))
    });
    vec![
        check("every non-empty quotient M/r has a fixed point", local, principal_fixed),
        check("every non-empty M-set has a fixed point", local, all_fixed),
        check("Γ preserves epimorphisms", local, gamma_epi),
        check("α: Γ → C is epic", local, alpha_epi),
    ]
}

/// Components functor checks against the right Ore condition, right
/// collapsibility and indecomposability of `M × M`.
pub fn crosscheck_c(monoid: &Arc<FiniteMonoid>, size_cap: usize, seed: u64) -> Vec<Crosscheck> {
    let corpus = mset_corpus(monoid, size_cap, seed);
    let p = algebraic_profile(monoid);
    let (om, _) = omega(monoid.clone());
    let omega_two = (om.component_count() != 2).then(|| format!("C(Ω) has {} elements", om.component_count()));
    let alpha_mono = first_failure(&corpus, |e| {
        (!alpha_map(&e.mset).is_mono).then(|| format!("α is not monic on {}", e.name))
    });
    let c_mono = for_each_corpus_map(&corpus, |x, y, f| {
        if !f.is_injective() {
            return None;
        }
        let (cx, cy) = (x.mset.components(), y.mset.components());
        let images: HashSet<usize> = (0..x.mset.size()).map(|a| cy.class_of(f.apply(a))).collect();
        (images.len() != cx.class_count()).then(|| format!("C({:?}): {} → {} is not injective", f.map, x.name, y.name))
    });
    let c_equalizers = equalizer_failure(&corpus);
    let principal: Vec<&CorpusEntry> = corpus.iter().filter(|e| e.principal).collect();
    let mut c_products = None;
    'outer: for a in &principal {
        for b in &principal {
            let prod = product(&a.mset, &b.mset).expect("same monoid").0;
            let expected = a.mset.component_count() * b.mset.component_count();
            if prod.component_count() != expected {
                c_products = Some(format!(
                    "C({} × {}) has {} elements",
                    a.name,
                    b.name,
                    prod.component_count()
                ));
                break 'outer;
            }
        }
    }
    let rep = FiniteMSet::representable(monoid.clone());
    let square_connected = product(&rep, &rep).expect("same monoid").0.component_count() == 1;
    vec![
        check("C(Ω) has two elements", p.is_right_ore, omega_two),
        check("α: Γ → C is monic", p.is_right_ore, alpha_mono),
        check("C preserves monomorphisms", p.is_right_ore, c_mono),
        check("C preserves equalizers", p.is_right_collapsible, c_equalizers),
        check("C preserves products of principal M-sets", square_connected, c_products),
    ]
}

/// `C(Eq(f, g)) → Eq(C f, C g)` must be a bijection for every parallel pair.
fn equalizer_failure(corpus: &[CorpusEntry]) -> Option<String> {
    for x in corpus {
        for y in corpus {
            let mut homs = Vec::new();
            for_each_hom(&x.mset, &y.mset, &mut |f| {
                homs.push(f.clone());
                true
            });
            let (cx, cy) = (x.mset.components(), y.mset.components());
            let reps = cx.representatives();
            for (i, f) in homs.iter().enumerate() {
                for g in &homs[i + 1..] {
                    let (eq, inc) = equalizer(f, g, &x.mset).expect("parallel maps");
                    let ce = eq.components();
                    let from_eq: HashSet<(usize, usize)> = (0..eq.size())
                        .map(|e| (ce.class_of(e), cx.class_of(inc.apply(e))))
                        .collect();
                    let image: HashSet<usize> = from_eq.iter().map(|&(_, c)| c).collect();
                    let target: HashSet<usize> = (0..cx.class_count())
                        .filter(|&c| cy.same(f.apply(reps[c]), g.apply(reps[c])))
                        .collect();
                    if image.len() != ce.class_count() || image != target {
                        return Some(format!(
                            "equalizer of {:?}, {:?}: {} → {} has {} components, expected {}",
                            f.map,
                            g.map,
                            x.name,
                            y.name,
                            ce.class_count(),
                            target.len()
                        ));
                    }
                }
            }
        }
    }
    None
}

/// Left absorbing elements against minimal ideals and large powers.
pub fn crosscheck_colocal(monoid: &Arc<FiniteMonoid>) -> Vec<Crosscheck> {
    let p = algebraic_profile(monoid);
    let rep = FiniteMSet::representable(monoid.clone());
    let ideals: Vec<ElementSet> = monoid.right_ideals().into_iter().filter(|i| !i.is_empty()).collect();
    // the least non-empty ideal, read as contained in every other one
    let least = ideals.iter().find(|i| ideals.iter().all(|j| i.is_subset(j)));
    let rigid_least = least.is_some_and(|ideal| {
        let (sub, _) = rep.sub_mset(ideal).expect("ideals are closed");
        crate::actions::hom_count(&sub, &sub).expect("same monoid") == 1
    });
    let minimal_failure = (!rigid_least).then(|| match least {
        None => "no least non-empty right ideal".to_string(),
        Some(i) => format!("the least non-empty right ideal {i} has a non-trivial endomorphism"),
    });
    let power_failure =
        (!diagonal_meets_constant(monoid)).then(|| "the orbits of (m)_m and (1)_m in M^|M| are disjoint".to_string());
    vec![
        check(
            "the least non-empty right ideal has trivial endomorphisms",
            p.has_left_absorbing,
            minimal_failure,
        ),
        check(
            "(m)_m and (1)_m have a common translate in M^|M|",
            p.has_left_absorbing,
            power_failure,
        ),
    ]
}

/// Whether the orbits of the tuples `(m)_{m ∈ M}` and `(1)_{m ∈ M}` in
/// `M^{|M|}` intersect. Indecomposability of the power alone is not enough
/// outside the right Ore case: `{1, a, b}` with `a, b` right absorbing has a
/// connected `M³` but no left absorbing element.
fn diagonal_meets_constant(monoid: &FiniteMonoid) -> bool {
    let from_identity: HashSet<Vec<usize>> = monoid.elements().map(|t| vec![t; monoid.size()]).collect();
    monoid.elements().any(|s| {
        let moved: Vec<usize> = monoid.elements().map(|m| monoid.mul(m, s)).collect();
        from_identity.contains(&moved)
    })
}

/// Complemented subobjects against groups, and `α` iso against zero
/// elements.
pub fn crosscheck_boolean_and_zero(monoid: &Arc<FiniteMonoid>, size_cap: usize, seed: u64) -> Vec<Crosscheck> {
    let corpus = mset_corpus(monoid, size_cap, seed);
    let p = algebraic_profile(monoid);
    let complemented = first_failure(&corpus, |e| {
        let k = e.mset.size();
        (0..1u64 << k).find_map(|mask| {
            let s = ElementSet::from_mask(k, mask);
            (e.mset.is_closed(&s) && !e.mset.is_closed(&s.complement()))
                .then(|| format!("sub-M-set {s} of {} has no complement", e.name))
        })
    });
    let alpha_iso = first_failure(&corpus, |e| {
        (!alpha_map(&e.mset).is_iso).then(|| format!("α is not an isomorphism on {}", e.name))
    });
    vec![
        check("every subobject is complemented", p.is_group, complemented),
        check("α: Γ → C is an isomorphism", p.has_zero, alpha_iso),
    ]
}

/// Flatness of the terminal left `M`-set against right collapsibility.
pub fn crosscheck_flat_terminal(monoid: &FiniteMonoid) -> Crosscheck {
    let left = FiniteMSet::terminal(Arc::new(monoid.opposite()));
    let failure = crate::actions::is_flat_left(&left).err().map(|f| format!("{f:?}"));
    check(
        "the terminal left M-set is flat",
        monoid.is_right_collapsible(),
        failure,
    )
}

/// Every crosscheck for one monoid.
pub fn crosscheck_all(monoid: &Arc<FiniteMonoid>, size_cap: usize, seed: u64) -> Vec<Crosscheck> {
    let mut all = crosscheck_gamma(monoid, size_cap, seed);
    all.extend(crosscheck_c(monoid, size_cap, seed));
    all.extend(crosscheck_colocal(monoid));
    all.extend(crosscheck_boolean_and_zero(monoid, size_cap, seed));
    all.push(crosscheck_flat_terminal(monoid));
    all
}
