//! A Fraïssé-style chain builder over extension systems.
//!
//! Systems are given on the extension side: every link of the chain is an
//! extension `U_k → U_{k+1}`, and injectivity asks that every extension
//! `e: A → B` and map `f: A → U_k` be completed by some `g: B → U_{k'}`.

mod builtin;
mod category;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use builtin::{builtin_system, CyclicPGroups, FinsetInj, LinOrders, CYCLIC_CARRIER_CAP};
pub use category::{
    ofs_validate, CategorySpec, CategorySystem, Check, ClassSpec, FiniteCategory, MorphismSpec, OfsReport,
};

/// Objects are identified by their position in the system's enumeration.
pub type Object = usize;

/// A morphism between enumerated objects. Builtin systems store the
/// underlying function as an index array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub source: Object,
    pub target: Object,
    pub map: Vec<usize>,
}

impl Morphism {
    /// `x ↦ x` from a carrier of size `source` into one of size `target`.
    pub fn index_identity(source: Object, target: Object) -> Self {
        Self {
            source,
            target,
            map: (0..source).collect(),
        }
    }
}

/// A countable category with a class of extensions, square completion and
/// joint embedding.
pub trait ExtensionSystem {
    fn name(&self) -> String;

    /// The `index`-th object; `None` past the end of a finite enumeration.
    fn object(&self, index: usize) -> Option<Object>;

    /// `None` for infinite enumerations.
    fn object_count(&self) -> Option<usize> {
        None
    }

    fn describe(&self, a: Object) -> String;

    fn hom_count(&self, a: Object, b: Object) -> usize;

    fn nth_hom(&self, a: Object, b: Object, j: usize) -> Option<Morphism>;

    fn homs(&self, a: Object, b: Object) -> Vec<Morphism> {
        (0..).map_while(|j| self.nth_hom(a, b, j)).collect()
    }

    fn is_extension(&self, f: &Morphism) -> bool;

    fn identity(&self, a: Object) -> Morphism;

    /// `g ∘ f`.
    fn compose(&self, g: &Morphism, f: &Morphism) -> Morphism {
        Morphism {
            source: f.source,
            target: g.target,
            map: f.map.iter().map(|&x| g.map[x]).collect(),
        }
    }

    /// Given an extension `e: A → B` and `f: A → C`, an extension
    /// `e': C → P` and `g: B → P` with `e' ∘ f = g ∘ e`.
    fn costabilize(&self, e: &Morphism, f: &Morphism) -> Result<(Morphism, Morphism)>;

    /// Extensions `A → W ← B`.
    fn joint_embed(&self, a: Object, b: Object) -> Result<(Morphism, Morphism)>;

    /// Some `g: B → U` with `g ∘ e = h`, for `e: A → B` and `h: A → U`.
    fn lift(&self, e: &Morphism, h: &Morphism) -> Option<Morphism> {
        (0..)
            .map_while(|j| self.nth_hom(e.target, h.target, j))
            .find(|g| self.compose(g, e) == *h)
    }

    /// The `i`-th extension, scanning object pairs along the Cantor
    /// diagonal and homs in enumeration order.
    fn extension(&self, i: usize) -> Option<Morphism> {
        let bound = match self.object_count() {
            Some(0) => return None,
            Some(n) => cantor_pair(n - 1, n - 1),
            None => cantor_pair(i, i),
        };
        let mut seen = 0;
        for z in 0..=bound {
            let (s, t) = cantor_unpair(z);
            let (Some(a), Some(b)) = (self.object(s), self.object(t)) else {
                continue;
            };
            for f in (0..).map_while(|j| self.nth_hom(a, b, j)) {
                if self.is_extension(&f) {
                    if seen == i {
                        return Some(f);
                    }
                    seen += 1;
                }
            }
        }
        None
    }
}

/// `c(a, b) = (a+b)(a+b+1)/2 + b`.
pub fn cantor_pair(a: usize, b: usize) -> usize {
    (a + b) * (a + b + 1) / 2 + b
}

pub fn cantor_unpair(z: usize) -> (usize, usize) {
    let mut w = (((8.0 * z as f64 + 1.0).sqrt() - 1.0) / 2.0) as usize;
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    let b = z - w * (w + 1) / 2;
    (w - b, b)
}

/// `π(i, j, k) = c(c(i, j), k)`, which is at least `k`.
pub fn triple_pair(i: usize, j: usize, k: usize) -> usize {
    cantor_pair(cantor_pair(i, j), k)
}

pub fn triple_unpair(n: usize) -> (usize, usize, usize) {
    let (ij, k) = cantor_unpair(n);
    let (i, j) = cantor_unpair(ij);
    (i, j, k)
}

/// What happened at one step of the chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    /// The decoded `(i', j', k')`.
    pub problem: (usize, usize, usize),
    /// `t_{i'}`, when it exists.
    pub extension: Option<Morphism>,
    /// `f_{i',j',k'}: A_{i'} → U_{k'}`, when it exists.
    pub map: Option<Morphism>,
    pub amalgamated: bool,
    /// Index of the object joint-embedded, when it exists.
    pub joint_embedded: Option<usize>,
    /// The joint embedding strictly enlarged the stage.
    pub joint_embedding_grew: bool,
    pub stage: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub system: String,
    pub stages: Vec<Object>,
    /// `links[k]: U_k → U_{k+1}`.
    pub links: Vec<Morphism>,
    pub provenance: Vec<StepRecord>,
}

impl Chain {
    /// `u_k^{k'}: U_k → U_{k'}` for `k ≤ k'`.
    pub fn transition(&self, sys: &dyn ExtensionSystem, k: usize, k_prime: usize) -> Morphism {
        (k..k_prime).fold(sys.identity(self.stages[k]), |acc, i| sys.compose(&self.links[i], &acc))
    }

    pub fn last_stage(&self) -> usize {
        self.stages.len() - 1
    }
}

fn check_square(sys: &dyn ExtensionSystem, what: &str, ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::OracleViolation(format!(
            "{} returned bad data for {what}",
            sys.name()
        )))
    }
}

/// Builds `U_0 → U_1 → …` for `steps` steps starting at object `seed`.
pub fn build_chain(sys: &dyn ExtensionSystem, steps: usize, seed: usize) -> Result<Chain> {
    let u0 = sys
        .object(seed)
        .ok_or_else(|| Error::InvalidAction(format!("seed object {seed} does not exist")))?;
    let mut chain = Chain {
        system: sys.name(),
        stages: vec![u0],
        links: Vec::new(),
        provenance: Vec::new(),
    };
    for k in 0..steps {
        let (i, j, kp) = triple_unpair(k);
        let uk = chain.stages[k];
        let extension = sys.extension(i);
        let map = extension
            .as_ref()
            .and_then(|t| sys.nth_hom(t.source, chain.stages[kp], j));
        let (mut current, mut link) = (uk, sys.identity(uk));
        let mut amalgamated = false;
        if let (Some(t), Some(f)) = (&extension, &map) {
            let h = sys.compose(&chain.transition(sys, kp, k), f);
            let (e_prime, g) = sys.costabilize(t, &h)?;
            check_square(
                sys,
                "costability",
                e_prime.source == uk
                    && g.source == t.target
                    && e_prime.target == g.target
                    && sys.is_extension(&e_prime)
                    && sys.compose(&e_prime, &h) == sys.compose(&g, t),
            )?;
            current = e_prime.target;
            link = e_prime;
            amalgamated = true;
        }
        let next_object = sys.object(k + 1);
        let mut grew = false;
        if let Some(a) = next_object {
            let (left, right) = sys.joint_embed(current, a)?;
            check_square(
                sys,
                "joint embedding",
                left.source == current
                    && right.source == a
                    && left.target == right.target
                    && sys.is_extension(&left)
                    && sys.is_extension(&right),
            )?;
            grew = left.target != current;
            link = sys.compose(&left, &link);
        }
        check_square(sys, "the chain link", sys.is_extension(&link))?;
        let stage = link.target;
        chain.provenance.push(StepRecord {
            step: k,
            problem: (i, j, kp),
            extension,
            map,
            amalgamated,
            joint_embedded: next_object.map(|_| k + 1),
            joint_embedding_grew: grew,
            stage: sys.describe(stage),
        });
        chain.stages.push(stage);
        chain.links.push(link);
    }
    Ok(chain)
}

/// An extension problem the chain has not solved within the bounds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Problem {
    pub extension: Morphism,
    pub stage: usize,
    pub map: Morphism,
}

/// Problems `(e: A → B, f: A → U_k)` with `A, B` among the first
/// `problem_bound` objects and `k ≤ problem_bound` that no `U_{k'}` with
/// `k ≤ k' ≤ stage_bound` solves.
pub fn injectivity_deficit(
    sys: &dyn ExtensionSystem,
    chain: &Chain,
    stage_bound: usize,
    problem_bound: usize,
) -> Vec<Problem> {
    let last = chain.last_stage();
    let top = stage_bound.min(last);
    let objects: Vec<Object> = (0..problem_bound).map_while(|i| sys.object(i)).collect();
    let mut out = Vec::new();
    for &a in &objects {
        for &b in &objects {
            for e in sys.homs(a, b).into_iter().filter(|e| sys.is_extension(e)) {
                for k in 0..=problem_bound.min(last) {
                    for f in sys.homs(a, chain.stages[k]) {
                        let solved = (k..=top.max(k)).filter(|&kp| kp <= top).any(|kp| {
                            let h = sys.compose(&chain.transition(sys, k, kp), &f);
                            sys.lift(&e, &h).is_some()
                        });
                        if !solved {
                            out.push(Problem {
                                extension: e.clone(),
                                stage: k,
                                map: f,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// The least stage receiving an extension from `a`.
pub fn universality_stage(sys: &dyn ExtensionSystem, chain: &Chain, a: Object) -> Option<usize> {
    chain
        .stages
        .iter()
        .position(|&u| (0..).map_while(|j| sys.nth_hom(a, u, j)).any(|f| sys.is_extension(&f)))
}

/// Identities and composites of extensions among the first `bound`
/// objects stay extensions.
pub fn spot_check_system(sys: &dyn ExtensionSystem, bound: usize) -> Result<()> {
    let objects: Vec<Object> = (0..bound).map_while(|i| sys.object(i)).collect();
    for &a in &objects {
        check_square(sys, "an identity", sys.is_extension(&sys.identity(a)))?;
        for &b in &objects {
            for f in sys.homs(a, b).into_iter().filter(|f| sys.is_extension(f)) {
                for &c in &objects {
                    for g in sys.homs(b, c).into_iter().filter(|g| sys.is_extension(g)) {
                        check_square(sys, "a composite", sys.is_extension(&sys.compose(&g, &f)))?;
                    }
                }
            }
        }
    }
    Ok(())
}
