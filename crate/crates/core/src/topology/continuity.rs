//! Continuity of actions, the continuous core, action topologies and the
//! powder quotient.

use std::sync::Arc;

use serde::Serialize;

use super::{topology_from_base, MonoidTopology};
use crate::actions::{exponential, power_mset, FiniteMSet, MSetMap, RightCongruence};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::monoid::FiniteMonoid;
use crate::partition::Partition;

/// For each `x`, the partition `𝔯_x` of `M` whose classes are the
/// necessary clopens `I_x^p = {m | x·m = x·p}`.
pub fn necessary_clopens(x: &FiniteMSet) -> Vec<Partition> {
    (0..x.size()).map(|p| orbit_partition(x, p)).collect()
}

fn orbit_partition(x: &FiniteMSet, point: usize) -> Partition {
    let labels: Vec<usize> = x.monoid().elements().map(|m| x.act(point, m)).collect();
    Partition::from_labels(&labels)
}

/// Every class of `𝔯_x` is open.
fn point_is_continuous(x: &FiniteMSet, point: usize, tau: &MonoidTopology) -> Option<usize> {
    let part = orbit_partition(x, point);
    part.block_sets()
        .iter()
        .zip(part.representatives())
        .find(|(block, _)| !tau.is_open(block))
        .map(|(_, p)| p)
}

/// A necessary clopen `I_x^p` that is not open.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscontinuityWitness {
    pub x: usize,
    pub p: usize,
    pub clopen: ElementSet,
}

/// Checks that every necessary clopen of `X` is open in `τ`. Points are
/// scanned in order and `p` is the least element of the failing class.
pub fn is_continuous(x: &FiniteMSet, tau: &MonoidTopology) -> Result<(), DiscontinuityWitness> {
    for point in 0..x.size() {
        if let Some(p) = point_is_continuous(x, point, tau) {
            let clopen = ElementSet::from_indices(
                x.monoid().size(),
                x.monoid().elements().filter(|&m| x.act(point, m) == x.act(point, p)),
            );
            return Err(DiscontinuityWitness { x: point, p, clopen });
        }
    }
    Ok(())
}

/// `R(X) = {x | ∀q, x·q is continuous}`, with its inclusion into `X`.
pub fn continuous_core(x: &FiniteMSet, tau: &MonoidTopology) -> Result<(FiniteMSet, MSetMap)> {
    if x.monoid() != tau.monoid() {
        return Err(Error::MonoidMismatch);
    }
    let good: Vec<bool> = (0..x.size())
        .map(|p| point_is_continuous(x, p, tau).is_none())
        .collect();
    let core = ElementSet::from_indices(
        x.size(),
        (0..x.size()).filter(|&p| x.monoid().elements().all(|q| good[x.act(p, q)])),
    );
    x.sub_mset(&core)
}

/// The clopen base `T` and the topology `τ̃` it generates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionTopology {
    pub clopens: Vec<ElementSet>,
    pub topology: MonoidTopology,
}

/// `T` is the carrier of `R(P(M))`, read back as subsets of `M`.
pub fn action_topology(tau: &MonoidTopology, power_cap: usize) -> Result<ActionTopology> {
    let monoid = tau.monoid().clone();
    let n = monoid.size();
    let power = power_mset(monoid.clone(), power_cap)?;
    let (_, inclusion) = continuous_core(&power, tau)?;
    let mut clopens: Vec<ElementSet> = inclusion
        .map
        .iter()
        .map(|&mask| ElementSet::from_mask(n, mask as u64))
        .collect();
    clopens.sort();
    let topology = topology_from_base(monoid, &clopens);
    Ok(ActionTopology { clopens, topology })
}

/// The quotient of `(M, τ̃)` by topological indistinguishability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowderQuotient {
    pub monoid: Arc<FiniteMonoid>,
    pub topology: MonoidTopology,
    pub quotient: Vec<usize>,
}

pub fn powder_quotient(tau: &MonoidTopology, power_cap: usize) -> Result<PowderQuotient> {
    let tilde = action_topology(tau, power_cap)?.topology;
    let classes = tilde.indistinguishability();
    let congruence = RightCongruence::new(tau.monoid().clone(), classes)
        .map_err(|e| Error::OracleViolation(format!("indistinguishability is not a right congruence: {e}")))?;
    let (quotient_monoid, quotient) = congruence
        .quotient_monoid()
        .ok_or_else(|| Error::OracleViolation("indistinguishability is not two-sided".into()))?;
    let monoid = Arc::new(quotient_monoid);
    let topology = tilde.pushed_forward(monoid.clone(), &quotient);
    Ok(PowderQuotient {
        monoid,
        topology,
        quotient,
    })
}

/// The continuous part of `Y^X`.
pub fn continuous_exponential(x: &FiniteMSet, y: &FiniteMSet, tau: &MonoidTopology, cap: usize) -> Result<FiniteMSet> {
    let (exp, _) = exponential(x, y, cap)?;
    Ok(continuous_core(&exp, tau)?.0)
}
