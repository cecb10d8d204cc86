//! Topologies on finite monoids, action topologies, powder quotients and
//! completions.

mod completion;
mod continuity;

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::partition::Partition;

pub use completion::{
    base_reduce, completion, factor_topology, open_congruences, subset_congruence, BaseReduction, CompletionMonoid,
    CongruenceFilter, FactorTopology,
};
pub use continuity::{
    action_topology, continuous_core, continuous_exponential, is_continuous, necessary_clopens, powder_quotient,
    ActionTopology, DiscontinuityWitness, PowderQuotient,
};

/// A topology on the carrier of a monoid, stored as the full list of opens
/// in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidTopology {
    monoid: Arc<FiniteMonoid>,
    opens: Vec<ElementSet>,
}

/// Why `μ⁻¹(U)` fails to be open in `τ × τ`: `p·q ∈ U` but the product of
/// their minimal neighbourhoods contains `(p', q')` with `p'·q' ∉ U`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicationWitness {
    pub open: ElementSet,
    pub p: usize,
    pub q: usize,
    pub p_prime: usize,
    pub q_prime: usize,
}

/// The finite topology generated by `family`: a set is open iff it contains
/// the minimal neighbourhood `U_x = ⋂{B ∈ family ∪ {M} | x ∈ B}` of each of
/// its points.
pub fn topology_from_base(monoid: Arc<FiniteMonoid>, family: &[ElementSet]) -> MonoidTopology {
    let n = monoid.size();
    let hoods: Vec<ElementSet> = (0..n)
        .map(|x| {
            family
                .iter()
                .filter(|b| b.contains(x))
                .fold(ElementSet::full(n), |acc, b| acc.intersection(b))
        })
        .collect();
    MonoidTopology {
        opens: unions_of(n, &hoods),
        monoid,
    }
}

/// All unions of the given neighbourhoods, canonical order.
fn unions_of(n: usize, hoods: &[ElementSet]) -> Vec<ElementSet> {
    let mut seen: BTreeSet<ElementSet> = BTreeSet::new();
    let mut queue = VecDeque::from([ElementSet::empty(n)]);
    seen.insert(ElementSet::empty(n));
    while let Some(open) = queue.pop_front() {
        for h in hoods {
            let next = open.union(h);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.into_iter().collect()
}

impl MonoidTopology {
    /// Validates an explicit list of opens.
    pub fn from_opens(monoid: Arc<FiniteMonoid>, opens: Vec<ElementSet>) -> Result<Self> {
        let n = monoid.size();
        if let Some(bad) = opens.iter().find(|o| o.universe() != n) {
            return Err(Error::InvalidTopology(format!(
                "open {bad} is not a subset of the monoid"
            )));
        }
        let set: BTreeSet<ElementSet> = opens.into_iter().collect();
        if !set.contains(&ElementSet::empty(n)) || !set.contains(&ElementSet::full(n)) {
            return Err(Error::InvalidTopology("the empty set and M must be open".into()));
        }
        for a in &set {
            for b in &set {
                if !set.contains(&a.union(b)) {
                    return Err(Error::InvalidTopology(format!("{a} ∪ {b} is not open")));
                }
                if !set.contains(&a.intersection(b)) {
                    return Err(Error::InvalidTopology(format!("{a} ∩ {b} is not open")));
                }
            }
        }
        Ok(Self {
            monoid,
            opens: set.into_iter().collect(),
        })
    }

    pub fn discrete(monoid: Arc<FiniteMonoid>) -> Self {
        let n = monoid.size();
        let singletons: Vec<ElementSet> = (0..n).map(|x| ElementSet::singleton(n, x)).collect();
        topology_from_base(monoid, &singletons)
    }

    pub fn indiscrete(monoid: Arc<FiniteMonoid>) -> Self {
        topology_from_base(monoid, &[])
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    pub fn opens(&self) -> &[ElementSet] {
        &self.opens
    }

    pub fn is_open(&self, set: &ElementSet) -> bool {
        self.opens.binary_search(set).is_ok()
    }

    /// The least open set containing `x`.
    pub fn neighbourhood(&self, x: usize) -> ElementSet {
        self.opens
            .iter()
            .filter(|o| o.contains(x))
            .fold(ElementSet::full(self.monoid.size()), |acc, o| acc.intersection(o))
    }

    pub fn neighbourhoods(&self) -> Vec<ElementSet> {
        self.monoid.elements().map(|x| self.neighbourhood(x)).collect()
    }

    /// Every open of `self` is open in `other`.
    pub fn is_coarser_than(&self, other: &Self) -> bool {
        self.opens.iter().all(|o| other.is_open(o))
    }

    /// Points with the same open neighbourhoods.
    pub fn indistinguishability(&self) -> Partition {
        Partition::from_labels(&self.neighbourhoods())
    }

    pub fn is_t0(&self) -> bool {
        self.indistinguishability().class_count() == self.monoid.size()
    }

    pub fn is_discrete(&self) -> bool {
        self.opens.len() == 1 << self.monoid.size().min(63)
            && self.monoid.elements().all(|x| self.neighbourhood(x).len() == 1)
    }

    /// Whether a subset of `M × M`, given as a membership test, is open in
    /// the product topology. Minimal neighbourhoods in `τ × τ` are products
    /// of minimal neighbourhoods, so this is exact.
    pub fn is_open_in_square(&self, member: impl Fn(usize, usize) -> bool) -> Option<(usize, usize, usize, usize)> {
        let hoods = self.neighbourhoods();
        for p in self.monoid.elements() {
            for q in self.monoid.elements() {
                if !member(p, q) {
                    continue;
                }
                for pp in hoods[p].iter() {
                    for qq in hoods[q].iter() {
                        if !member(pp, qq) {
                            return Some((p, q, pp, qq));
                        }
                    }
                }
            }
        }
        None
    }

    /// Checks that multiplication is continuous `τ × τ → τ`.
    pub fn is_topological_monoid(&self) -> Result<(), MultiplicationWitness> {
        let m = &self.monoid;
        for open in &self.opens {
            if let Some((p, q, p_prime, q_prime)) = self.is_open_in_square(|a, b| open.contains(m.mul(a, b))) {
                return Err(MultiplicationWitness {
                    open: open.clone(),
                    p,
                    q,
                    p_prime,
                    q_prime,
                });
            }
        }
        Ok(())
    }

    /// Images of the opens along a surjection `M → N` whose fibres are
    /// unions of indistinguishable points.
    pub(crate) fn pushed_forward(&self, target: Arc<FiniteMonoid>, map: &[usize]) -> MonoidTopology {
        let n = target.size();
        let family: Vec<ElementSet> = self
            .opens
            .iter()
            .map(|o| ElementSet::from_indices(n, o.iter().map(|x| map[x])))
            .collect();
        topology_from_base(target, &family)
    }
}
