//! Fully presented finite categories and factorization-system checks.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{ExtensionSystem, Morphism, Object};
use crate::error::{Error, Result};

/// A finite category. Morphism `i < objects.len()` is the identity on
/// object `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    names: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    /// `compose[g·m + f] = g∘f` when `target(f) = source(g)`.
    compose: Vec<Option<usize>>,
    classes: BTreeMap<String, Vec<usize>>,
}

/// JSON form. Identities `id_X` are implicit; `compose` lists
/// `[g, f, g∘f]` for every composable pair of non-identities. The classes
/// `T`, `M` (factorization) and `E` (extensions, for chain building) are
/// lists of morphism ids or one of the keywords `identities`, `all`,
/// `split_epis`, `split_monos`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismSpec>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<ClassSpec>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub m: Option<ClassSpec>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<ClassSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassSpec {
    Keyword(String),
    Names(Vec<String>),
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedCategory(msg.into())
}

impl FiniteCategory {
    pub fn from_spec(spec: &CategorySpec) -> Result<Self> {
        let n = spec.objects.len();
        if n == 0 {
            return Err(malformed("a category needs at least one object"));
        }
        let obj: HashMap<&str, usize> = spec.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        if obj.len() != n {
            return Err(malformed("duplicate object names"));
        }
        let mut names: Vec<String> = spec.objects.iter().map(|o| format!("id_{o}")).collect();
        let mut source: Vec<usize> = (0..n).collect();
        let mut target: Vec<usize> = (0..n).collect();
        for m in &spec.morphisms {
            let s = *obj
                .get(m.dom.as_str())
                .ok_or_else(|| malformed(format!("unknown object {}", m.dom)))?;
            let t = *obj
                .get(m.cod.as_str())
                .ok_or_else(|| malformed(format!("unknown object {}", m.cod)))?;
            names.push(m.id.clone());
            source.push(s);
            target.push(t);
        }
        let index: HashMap<String, usize> = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        if index.len() != names.len() {
            return Err(malformed("duplicate morphism names"));
        }
        let count = names.len();
        let mut compose = vec![None; count * count];
        for f in 0..count {
            compose[target[f] * count + f] = Some(f);
            compose[f * count + source[f]] = Some(f);
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| malformed(format!("unknown morphism {name}")))
        };
        for [g, f, gf] in &spec.compose {
            let (g, f, gf) = (lookup(g)?, lookup(f)?, lookup(gf)?);
            if target[f] != source[g] {
                return Err(malformed(format!("{} ∘ {} is not composable", names[g], names[f])));
            }
            if source[gf] != source[f] || target[gf] != target[g] {
                return Err(malformed(format!(
                    "{} has the wrong type for {} ∘ {}",
                    names[gf], names[g], names[f]
                )));
            }
            match compose[g * count + f] {
                Some(existing) if existing != gf => {
                    return Err(malformed(format!("{} ∘ {} is defined twice", names[g], names[f])));
                }
                _ => compose[g * count + f] = Some(gf),
            }
        }
        let mut cat = Self {
            objects: spec.objects.clone(),
            names,
            source,
            target,
            compose,
            classes: BTreeMap::new(),
        };
        cat.validate()?;
        let named = [("T", &spec.t), ("M", &spec.m), ("E", &spec.e)];
        for (name, class) in named.iter().filter_map(|(n, c)| c.as_ref().map(|c| (*n, c))) {
            let members = match class {
                ClassSpec::Keyword(k) => cat.keyword_class(k)?,
                ClassSpec::Names(list) => {
                    let mut v = list.iter().map(|s| lookup(s)).collect::<Result<Vec<_>>>()?;
                    v.sort_unstable();
                    v.dedup();
                    v
                }
            };
            cat.classes.insert(name.to_string(), members);
        }
        Ok(cat)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: CategorySpec = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        Self::from_spec(&spec)
    }

    /// One object and only its identity.
    pub fn trivial() -> Self {
        Self::from_spec(&CategorySpec {
            objects: vec!["*".into()],
            morphisms: vec![],
            compose: vec![],
            t: None,
            m: None,
            e: None,
        })
        .expect("the terminal category is valid")
    }

    fn validate(&self) -> Result<()> {
        let m = self.morphism_count();
        for g in 0..m {
            for f in 0..m {
                let defined = self.compose[g * m + f].is_some();
                if defined != (self.target[f] == self.source[g]) {
                    return Err(malformed(format!("{} ∘ {} is missing", self.names[g], self.names[f])));
                }
            }
        }
        for h in 0..m {
            for g in 0..m {
                for f in 0..m {
                    let (Some(gf), Some(hg)) = (self.comp(g, f), self.comp(h, g)) else {
                        continue;
                    };
                    if self.comp(h, gf) != self.comp(hg, f) {
                        return Err(malformed(format!(
                            "composition is not associative at ({}, {}, {})",
                            self.names[h], self.names[g], self.names[f]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn keyword_class(&self, k: &str) -> Result<Vec<usize>> {
        Ok(match k {
            "identities" => (0..self.object_count()).collect(),
            "all" => (0..self.morphism_count()).collect(),
            "split_epis" => self.split_epis(),
            "split_monos" => self.split_monos(),
            other => return Err(malformed(format!("unknown class keyword {other}"))),
        })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.names.len()
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn name(&self, f: usize) -> &str {
        &self.names[f]
    }

    pub fn source(&self, f: usize) -> usize {
        self.source[f]
    }

    pub fn target(&self, f: usize) -> usize {
        self.target[f]
    }

    pub fn identity(&self, o: usize) -> usize {
        o
    }

    /// `g ∘ f`, if composable.
    pub fn comp(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g * self.morphism_count() + f]
    }

    pub fn homs(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphism_count())
            .filter(|&f| self.source[f] == a && self.target[f] == b)
            .collect()
    }

    /// The canonical JSON form: morphisms in index order, every
    /// non-identity composite listed, classes as explicit id lists.
    pub fn to_spec(&self) -> CategorySpec {
        let n = self.object_count();
        let m = self.morphism_count();
        let morphisms = (n..m)
            .map(|f| MorphismSpec {
                id: self.names[f].clone(),
                dom: self.objects[self.source[f]].clone(),
                cod: self.objects[self.target[f]].clone(),
            })
            .collect();
        let mut compose = Vec::new();
        for g in n..m {
            for f in n..m {
                if let Some(gf) = self.comp(g, f) {
                    compose.push([self.names[g].clone(), self.names[f].clone(), self.names[gf].clone()]);
                }
            }
        }
        let class = |k: &str| {
            self.classes
                .get(k)
                .map(|v| ClassSpec::Names(v.iter().map(|&f| self.names[f].clone()).collect()))
        };
        CategorySpec {
            objects: self.objects.clone(),
            morphisms,
            compose,
            t: class("T"),
            m: class("M"),
            e: class("E"),
        }
    }

    pub fn class(&self, name: &str) -> Option<&[usize]> {
        self.classes.get(name).map(Vec::as_slice)
    }

    pub fn split_epis(&self) -> Vec<usize> {
        (0..self.morphism_count())
            .filter(|&f| {
                self.homs(self.target[f], self.source[f])
                    .into_iter()
                    .any(|s| self.comp(f, s) == Some(self.target[f]))
            })
            .collect()
    }

    pub fn split_monos(&self) -> Vec<usize> {
        (0..self.morphism_count())
            .filter(|&f| {
                self.homs(self.target[f], self.source[f])
                    .into_iter()
                    .any(|r| self.comp(r, f) == Some(self.source[f]))
            })
            .collect()
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.homs(self.target[f], self.source[f])
            .into_iter()
            .any(|g| self.comp(g, f) == Some(self.source[f]) && self.comp(f, g) == Some(self.target[f]))
    }
}

/// Outcome of one check, with a human-readable counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub ok: bool,
    pub witness: Option<String>,
}

impl Check {
    fn pass() -> Self {
        Self {
            ok: true,
            witness: None,
        }
    }

    fn fail(w: String) -> Self {
        Self {
            ok: false,
            witness: Some(w),
        }
    }

    fn first(witness: Option<String>) -> Self {
        witness.map_or_else(Self::pass, Self::fail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OfsReport {
    pub factorization: Check,
    pub uniqueness: Check,
    pub lifting: Check,
    pub stability: Check,
    pub joint_covering: Check,
}

impl OfsReport {
    pub fn all_ok(&self) -> bool {
        [
            &self.factorization,
            &self.uniqueness,
            &self.lifting,
            &self.stability,
            &self.joint_covering,
        ]
        .iter()
        .all(|c| c.ok)
    }
}

/// Checks that `(T, M)` is an orthogonal factorization system, that `T` is
/// a stable class, and that every pair of objects has a span of
/// `T`-morphisms.
pub fn ofs_validate(c: &FiniteCategory, t: &[usize], m: &[usize]) -> Result<OfsReport> {
    let count = c.morphism_count();
    if let Some(&bad) = t.iter().chain(m).find(|&&f| f >= count) {
        return Err(malformed(format!("class member {bad} is not a morphism")));
    }
    let in_t = |f: usize| t.contains(&f);
    let in_m = |f: usize| m.contains(&f);
    let n = |f: usize| c.name(f).to_string();

    let factorizations = |h: usize| -> Vec<(usize, usize)> {
        t.iter()
            .filter(|&&tt| c.source(tt) == c.source(h))
            .flat_map(|&tt| m.iter().map(move |&mm| (tt, mm)))
            .filter(|&(tt, mm)| c.comp(mm, tt) == Some(h))
            .collect()
    };

    let factorization = Check::first(
        (0..count)
            .find(|&h| factorizations(h).is_empty())
            .map(|h| format!("{} has no factorization", n(h))),
    );

    let uniqueness = Check::first((0..count).find_map(|h| {
        let fs = factorizations(h);
        for &(t1, m1) in &fs {
            for &(t2, m2) in &fs {
                let linked = c
                    .homs(c.target(t1), c.target(t2))
                    .into_iter()
                    .any(|phi| c.is_iso(phi) && c.comp(phi, t1) == Some(t2) && c.comp(m2, phi) == Some(m1));
                if !linked {
                    return Some(format!(
                        "{} = {}∘{} = {}∘{} with no comparison isomorphism",
                        n(h),
                        n(m1),
                        n(t1),
                        n(m2),
                        n(t2)
                    ));
                }
            }
        }
        None
    }));

    let mut lifting_witness = None;
    'outer: for &tt in t {
        for &mm in m {
            for u in c.homs(c.source(tt), c.source(mm)) {
                for v in c.homs(c.target(tt), c.target(mm)) {
                    if c.comp(mm, u) != c.comp(v, tt) {
                        continue;
                    }
                    let fillers = c
                        .homs(c.target(tt), c.source(mm))
                        .into_iter()
                        .filter(|&d| c.comp(d, tt) == Some(u) && c.comp(mm, d) == Some(v))
                        .count();
                    if fillers != 1 {
                        lifting_witness = Some(format!(
                            "square {}∘{} = {}∘{} has {fillers} diagonal fillers",
                            n(mm),
                            n(u),
                            n(v),
                            n(tt)
                        ));
                        break 'outer;
                    }
                }
            }
        }
    }
    let lifting = Check::first(lifting_witness);

    let stability = Check::first(stability_failure(c, t));

    let joint_covering = Check::first((0..c.object_count()).find_map(|x| {
        (0..c.object_count()).find_map(|y| {
            let covered = (0..c.object_count())
                .any(|z| c.homs(z, x).into_iter().any(&in_t) && c.homs(z, y).into_iter().any(&in_t));
            (!covered).then(|| {
                format!(
                    "there is no joint cover of {} and {}",
                    c.object_name(x),
                    c.object_name(y)
                )
            })
        })
    }));
    let _ = in_m;

    Ok(OfsReport {
        factorization,
        uniqueness,
        lifting,
        stability,
        joint_covering,
    })
}

fn stability_failure(c: &FiniteCategory, t: &[usize]) -> Option<String> {
    let in_t = |f: usize| t.contains(&f);
    if let Some(o) = (0..c.object_count()).find(|&o| !in_t(c.identity(o))) {
        return Some(format!("{} is not in the class", c.name(o)));
    }
    for &g in t {
        for &f in t {
            if let Some(gf) = c.comp(g, f) {
                if !in_t(gf) {
                    return Some(format!("{} ∘ {} leaves the class", c.name(g), c.name(f)));
                }
            }
        }
    }
    // f: C → D in T and g: B → D need f': A → B in T, g': A → C with g∘f' = f∘g'
    for &f in t {
        for g in (0..c.morphism_count()).filter(|&g| c.target(g) == c.target(f)) {
            let square = t.iter().filter(|&&fp| c.target(fp) == c.source(g)).any(|&fp| {
                c.homs(c.source(fp), c.source(f))
                    .into_iter()
                    .any(|gp| c.comp(g, fp) == c.comp(f, gp))
            });
            if !square {
                return Some(format!("no stable square for {} against {}", c.name(f), c.name(g)));
            }
        }
    }
    None
}

/// A finite category used as an extension system with class `E`.
/// Morphisms are carried as one-element maps holding the morphism index.
#[derive(Debug, Clone)]
pub struct CategorySystem {
    category: FiniteCategory,
    extensions: Vec<usize>,
}

impl CategorySystem {
    pub fn new(category: FiniteCategory, extensions: Vec<usize>) -> Result<Self> {
        if let Some(w) = stability_failure_dual_identities(&category, &extensions) {
            return Err(malformed(w));
        }
        Ok(Self { category, extensions })
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    fn wrap(&self, f: usize) -> Morphism {
        Morphism {
            source: self.category.source(f),
            target: self.category.target(f),
            map: vec![f],
        }
    }
}

fn stability_failure_dual_identities(c: &FiniteCategory, e: &[usize]) -> Option<String> {
    if let Some(o) = (0..c.object_count()).find(|&o| !e.contains(&o)) {
        return Some(format!("extension class misses {}", c.name(o)));
    }
    for &g in e {
        for &f in e {
            if let Some(gf) = c.comp(g, f) {
                if !e.contains(&gf) {
                    return Some(format!("{} ∘ {} leaves the extension class", c.name(g), c.name(f)));
                }
            }
        }
    }
    None
}

impl ExtensionSystem for CategorySystem {
    fn name(&self) -> String {
        format!("category({} objects)", self.category.object_count())
    }

    fn object(&self, index: usize) -> Option<Object> {
        (index < self.category.object_count()).then_some(index)
    }

    fn object_count(&self) -> Option<usize> {
        Some(self.category.object_count())
    }

    fn describe(&self, a: Object) -> String {
        self.category.object_name(a).to_string()
    }

    fn hom_count(&self, a: Object, b: Object) -> usize {
        self.category.homs(a, b).len()
    }

    fn nth_hom(&self, a: Object, b: Object, j: usize) -> Option<Morphism> {
        self.category.homs(a, b).get(j).map(|&f| self.wrap(f))
    }

    fn is_extension(&self, f: &Morphism) -> bool {
        f.map.len() == 1 && self.extensions.contains(&f.map[0])
    }

    fn identity(&self, a: Object) -> Morphism {
        self.wrap(self.category.identity(a))
    }

    fn compose(&self, g: &Morphism, f: &Morphism) -> Morphism {
        let gf = self.category.comp(g.map[0], f.map[0]).expect("composable morphisms");
        self.wrap(gf)
    }

    fn costabilize(&self, e: &Morphism, f: &Morphism) -> Result<(Morphism, Morphism)> {
        let c = &self.category;
        for p in 0..c.object_count() {
            for &ep in self
                .extensions
                .iter()
                .filter(|&&x| c.source(x) == f.target && c.target(x) == p)
            {
                for g in c.homs(e.target, p) {
                    if c.comp(ep, f.map[0]) == c.comp(g, e.map[0]) {
                        return Ok((self.wrap(ep), self.wrap(g)));
                    }
                }
            }
        }
        Err(Error::OracleViolation(format!(
            "no costable square for {} along {}",
            c.name(e.map[0]),
            c.name(f.map[0])
        )))
    }

    fn joint_embed(&self, a: Object, b: Object) -> Result<(Morphism, Morphism)> {
        let c = &self.category;
        for w in 0..c.object_count() {
            let left = self.extensions.iter().find(|&&x| c.source(x) == a && c.target(x) == w);
            let right = self.extensions.iter().find(|&&x| c.source(x) == b && c.target(x) == w);
            if let (Some(&l), Some(&r)) = (left, right) {
                return Ok((self.wrap(l), self.wrap(r)));
            }
        }
        Err(Error::OracleViolation(format!(
            "no joint embedding of {} and {}",
            c.object_name(a),
            c.object_name(b)
        )))
    }
}
