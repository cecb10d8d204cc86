//! Filters of open congruences, the completion monoid and the topology
//! that a filter factors through.

use std::collections::HashMap;
use std::sync::Arc;

use super::{topology_from_base, MonoidTopology};
use crate::actions::{right_congruences, RightCongruence, DEFAULT_CONGRUENCE_CAP};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::partition::Partition;

/// A non-empty, upward closed, downward directed set of right congruences
/// closed under `m*(-)`. Members are kept finest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceFilter {
    monoid: Arc<FiniteMonoid>,
    members: Vec<RightCongruence>,
}

impl CongruenceFilter {
    pub fn new(monoid: Arc<FiniteMonoid>, mut members: Vec<RightCongruence>) -> Result<Self> {
        members.sort();
        members.dedup();
        if members.is_empty() {
            return Err(Error::InvalidFilter("a filter is non-empty".into()));
        }
        if members.iter().any(|r| r.monoid() != &monoid) {
            return Err(Error::MonoidMismatch);
        }
        let f = Self { monoid, members };
        let all = right_congruences(&f.monoid, DEFAULT_CONGRUENCE_CAP)?;
        for r in &f.members {
            if let Some(up) = all.iter().find(|s| r.refines(s) && !f.contains(s)) {
                return Err(Error::InvalidFilter(format!(
                    "not upward closed: {:?} is missing",
                    up.partition().classes_vec()
                )));
            }
            for s in &f.members {
                if !f.contains(&r.meet(s)) {
                    return Err(Error::InvalidFilter("not closed under meets".into()));
                }
            }
            if let Some(m) = f.monoid.elements().find(|&m| !f.contains(&r.pullback(m))) {
                return Err(Error::InvalidFilter(format!("not closed under pullback along {m}")));
            }
        }
        Ok(f)
    }

    /// Every right congruence.
    pub fn all(monoid: Arc<FiniteMonoid>) -> Result<Self> {
        let members = right_congruences(&monoid, DEFAULT_CONGRUENCE_CAP)?;
        Self::new(monoid, members)
    }

    /// The congruences coarser than `r`; valid when `r` is two-sided.
    pub fn above(r: &RightCongruence) -> Result<Self> {
        let monoid = r.monoid().clone();
        let members = right_congruences(&monoid, DEFAULT_CONGRUENCE_CAP)?
            .into_iter()
            .filter(|s| r.refines(s))
            .collect();
        Self::new(monoid, members)
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    pub fn members(&self) -> &[RightCongruence] {
        &self.members
    }

    pub fn contains(&self, r: &RightCongruence) -> bool {
        self.members.binary_search(r).is_ok()
    }

    fn index_of_partition(&self, p: &Partition) -> Option<usize> {
        self.members.iter().position(|r| r.partition() == p)
    }

    /// The meet of all members, which is itself a member.
    pub fn least(&self) -> &RightCongruence {
        // finest first, and a filter on a finite monoid has a least element
        &self.members[0]
    }
}

/// Congruences whose quotient is continuous: every class of every `m*(r)`
/// is open.
pub fn open_congruences(tau: &MonoidTopology) -> Result<CongruenceFilter> {
    let monoid = tau.monoid().clone();
    let members = right_congruences(&monoid, DEFAULT_CONGRUENCE_CAP)?
        .into_iter()
        .filter(|r| {
            monoid
                .elements()
                .all(|m| r.pullback(m).classes().iter().all(|c| tau.is_open(c)))
        })
        .collect();
    CongruenceFilter::new(monoid, members)
}

/// The limit of the quotients `M/r` over a filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionMonoid {
    pub monoid: Arc<FiniteMonoid>,
    /// For each carrier element, its class in each filter member.
    pub tuples: Vec<Vec<usize>>,
    pub topology: MonoidTopology,
    /// `u: M → L`.
    pub unit: Vec<usize>,
}

impl CompletionMonoid {
    pub fn is_unit_injective(&self) -> bool {
        let mut seen = vec![false; self.monoid.size()];
        self.unit.iter().all(|&u| !std::mem::replace(&mut seen[u], true))
    }

    pub fn is_unit_surjective(&self) -> bool {
        let img = ElementSet::from_indices(self.monoid.size(), self.unit.iter().copied());
        img.is_full()
    }
}

pub fn completion(filter: &CongruenceFilter) -> Result<CompletionMonoid> {
    let monoid = filter.monoid().clone();
    let members = filter.members();
    let least = filter.least();
    let reps = least.partition().representatives();
    let tuples: Vec<Vec<usize>> = reps
        .iter()
        .map(|&rep| members.iter().map(|r| r.class_of(rep)).collect())
        .collect();
    let index: HashMap<&[usize], usize> = tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    if index.len() != tuples.len() {
        return Err(Error::OracleViolation(
            "distinct classes of the least member collide".into(),
        ));
    }
    let member_reps: Vec<Vec<usize>> = members.iter().map(|r| r.partition().representatives()).collect();
    let k = tuples.len();
    let mut table = Vec::with_capacity(k * k);
    for alpha in &tuples {
        for beta in &tuples {
            // (αβ)_r = [a_r · b_{a_r*(r)}]
            let mut product = Vec::with_capacity(members.len());
            for (i, r) in members.iter().enumerate() {
                let a = member_reps[i][alpha[i]];
                let j = filter
                    .index_of_partition(r.pullback(a).partition())
                    .ok_or_else(|| Error::InvalidFilter("not closed under pullback".into()))?;
                let b = member_reps[j][beta[j]];
                product.push(r.class_of(monoid.mul(a, b)));
            }
            let idx = index
                .get(product.as_slice())
                .ok_or_else(|| Error::OracleViolation("product of compatible tuples is not compatible".into()))?;
            table.push(*idx);
        }
    }
    let limit = Arc::new(FiniteMonoid::from_flat_unchecked(k, table));
    match least.quotient_monoid() {
        Some((quotient, _)) if quotient == *limit => {}
        _ => {
            return Err(Error::OracleViolation(
                "the limit multiplication disagrees with the quotient by the least member".into(),
            ))
        }
    }
    let mut basic = Vec::new();
    for (i, r) in members.iter().enumerate() {
        for c in 0..r.class_count() {
            basic.push(ElementSet::from_indices(k, (0..k).filter(|&t| tuples[t][i] == c)));
        }
    }
    let unit: Vec<usize> = monoid.elements().map(|m| least.class_of(m)).collect();
    let image = ElementSet::from_indices(k, unit.iter().copied());
    if basic.iter().any(|b| !b.is_empty() && !b.intersects(&image)) {
        return Err(Error::OracleViolation("the unit does not have dense image".into()));
    }
    let topology = topology_from_base(limit.clone(), &basic);
    Ok(CompletionMonoid {
        monoid: limit,
        tuples,
        topology,
        unit,
    })
}

/// Minimal members of a filter and whether they are two-sided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseReduction {
    pub base: Vec<RightCongruence>,
    pub least: RightCongruence,
    /// A finite base exists, so the prodiscrete topology is discrete.
    pub discrete: bool,
    pub prodiscrete_two_sided: bool,
    /// `M/r` as a monoid for each base member, when all are two-sided.
    pub quotient_monoids: Vec<FiniteMonoid>,
}

pub fn base_reduce(filter: &CongruenceFilter) -> BaseReduction {
    let members = filter.members();
    let base: Vec<RightCongruence> = members
        .iter()
        .filter(|r| !members.iter().any(|s| s != *r && s.refines(r)))
        .cloned()
        .collect();
    let quotients: Option<Vec<FiniteMonoid>> = base.iter().map(|r| r.quotient_monoid().map(|q| q.0)).collect();
    BaseReduction {
        least: filter.least().clone(),
        discrete: !base.is_empty(),
        prodiscrete_two_sided: quotients.is_some(),
        quotient_monoids: quotients.unwrap_or_default(),
        base,
    }
}

/// The coarsest topology whose open congruences include the filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorTopology {
    pub clopens: Vec<ElementSet>,
    pub topology: MonoidTopology,
    /// The open congruences of the topology are exactly the filter.
    pub exact: bool,
}

/// `𝔯_A`: `p ∼ q` iff `p*(A) = q*(A)`.
pub fn subset_congruence(monoid: &Arc<FiniteMonoid>, a: &ElementSet) -> RightCongruence {
    let labels: Vec<u64> = monoid.elements().map(|p| monoid.pull_back_set(p, a).mask()).collect();
    RightCongruence::from_labels(monoid.clone(), Partition::from_labels(&labels).classes_vec())
        .expect("p*(A) = q*(A) is right compatible")
}

pub fn factor_topology(filter: &CongruenceFilter, power_cap: usize) -> Result<FactorTopology> {
    let monoid = filter.monoid().clone();
    let n = monoid.size();
    if n > power_cap || n >= 64 {
        return Err(Error::SizeTooLarge {
            what: "power set of a monoid",
            size: n,
            cap: power_cap,
        });
    }
    let clopens: Vec<ElementSet> = (0..1u64 << n)
        .map(|mask| ElementSet::from_mask(n, mask))
        .filter(|a| filter.contains(&subset_congruence(&monoid, a)))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let topology = topology_from_base(monoid, &clopens);
    let exact = open_congruences(&topology)? == *filter;
    Ok(FactorTopology {
        clopens,
        topology,
        exact,
    })
}
