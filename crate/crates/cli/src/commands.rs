//! One function per subcommand. Each returns an [`Outcome`] whose payload
//! uses canonical orderings only, so reports are reproducible.

use std::path::Path;

use serde_json::{json, Value};

use monact::actions::{congruence_category, right_congruences, CongruenceCategory, RightCongruence};
use monact::bitset::ElementSet;
use monact::dictionary::{crosscheck_all, topos_profile};
use monact::fraisse::{
    build_chain, builtin_system, injectivity_deficit, ofs_validate, universality_stage, CategorySpec, CategorySystem,
    ExtensionSystem, FiniteCategory,
};
use monact::monogenic::{
    classify, epi_exists, equivariant_maps, find_retraction, joint_cover, mono_exists, truncated_profinite,
    truncation_projection, NabShape,
};
use monact::monoid::{algebraic_profile, monoid_isomorphism, FiniteMonoid};
use monact::topology::{action_topology, base_reduce, completion, factor_topology, open_congruences, powder_quotient};
use monact::Partition;

use crate::input::{self, LoadedMonoid, MonogenicFile, MonoidFile, TopologyFile};
use crate::report::{CliError, InputDigest, Outcome};

/// Seed for the random part of the brute-force `M`-set corpus.
pub const CORPUS_SEED: u64 = 0;

/// Resource caps shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub mset_size: usize,
    pub subsets: usize,
    pub congruences: usize,
}

fn sets(xs: &[ElementSet]) -> Vec<Vec<usize>> {
    xs.iter().map(ElementSet::to_vec).collect()
}

fn show_sets(xs: &[ElementSet]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn monoid_json(m: &FiniteMonoid) -> Value {
    json!({ "size": m.size(), "table": m.rows() })
}

fn load_monoid(path: &Path) -> Result<(LoadedMonoid, InputDigest), CliError> {
    let (text, digest) = input::read(path)?;
    let file: MonoidFile = input::parse(&digest.path, &text)?;
    Ok((file.load()?, digest))
}

fn loaded_json(m: &LoadedMonoid) -> Value {
    json!({
        "size": m.monoid.size(),
        "table": m.monoid.rows(),
        "input_identity": m.identity,
        "relabel": m.old_to_new,
    })
}

fn relabel_note(m: &LoadedMonoid) -> Option<String> {
    (m.identity != 0).then(|| {
        format!(
            "identity was input element {}; relabelled as {:?}",
            m.identity, m.old_to_new
        )
    })
}

pub fn analyze(path: &Path, caps: Caps) -> Result<Outcome, CliError> {
    let (loaded, digest) = load_monoid(path)?;
    let m = &loaded.monoid;
    let profile = algebraic_profile(m);
    let topos = topos_profile(m);
    let checks = crosscheck_all(m, caps.mset_size, CORPUS_SEED);
    let disagreements: Vec<&str> = checks.iter().filter(|c| !c.agrees()).map(|c| c.name).collect();

    let mut text = vec![format!("monoid of order {}", m.size())];
    text.extend(relabel_note(&loaded));
    let topos_json = serde_json::to_value(topos).expect("serializable");
    text.push("topos profile:".into());
    if let Value::Object(fields) = &topos_json {
        for (name, flag) in fields {
            text.push(format!(
                "  {name} = {}  ({})",
                flag["value"],
                flag["criterion"].as_str().unwrap_or("")
            ));
        }
    }
    text.push(format!(
        "crosschecks: {} agree, {} disagree (corpus cap {})",
        checks.len() - disagreements.len(),
        disagreements.len(),
        caps.mset_size
    ));
    let failure = checks.iter().find(|c| !c.agrees()).map(|c| {
        format!(
            "crosscheck {} disagrees: algebraic {} vs brute force {} ({})",
            c.name,
            c.algebraic,
            c.brute_force,
            c.witness.as_deref().unwrap_or("no witness")
        )
    });
    let crosschecks: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "algebraic": c.algebraic,
                "brute_force": c.brute_force,
                "agrees": c.agrees(),
                "witness": c.witness,
            })
        })
        .collect();
    Ok(Outcome {
        inputs: vec![digest],
        payload: json!({
            "monoid": loaded_json(&loaded),
            "profile": profile,
            "topos": topos_json,
            "corpus": { "size_cap": caps.mset_size, "seed": CORPUS_SEED },
            "crosschecks": crosschecks,
            "disagreements": disagreements,
        }),
        text,
        warnings: Vec::new(),
        failure,
    })
}

/// Associativity and identity laws over every composable triple, and the
/// epi–mono factorization of every morphism.
fn category_spot_checks(cat: &CongruenceCategory) -> (Value, Option<String>) {
    let k = cat.objects.len();
    let mut triples = 0usize;
    let mut failure = None;
    for i in 0..k {
        for j in 0..k {
            for f in &cat.homs[i][j] {
                let left = cat.compose(&cat.identity(j), f);
                let right = cat.compose(f, &cat.identity(i));
                if left.as_ref() != Some(f) || right.as_ref() != Some(f) {
                    failure.get_or_insert(format!("identity law fails at {f:?}"));
                }
                let fact = cat.factorize(f);
                let target = &cat.objects[f.target];
                if !cat.objects[f.source].refines(&fact.middle) || !target.same(fact.mono_witness, f.witness) {
                    failure.get_or_insert(format!("factorization fails at {f:?}"));
                }
                for l in 0..k {
                    for g in &cat.homs[j][l] {
                        for h in (0..k).flat_map(|o| &cat.homs[l][o]) {
                            triples += 1;
                            let a = cat.compose(h, &cat.compose(g, f).expect("composable"));
                            let b = cat.compose(&cat.compose(h, g).expect("composable"), f);
                            if a != b {
                                failure.get_or_insert(format!("associativity fails at {h:?} {g:?} {f:?}"));
                            }
                        }
                    }
                }
            }
        }
    }
    (
        json!({
            "triples_checked": triples,
            "morphisms_factorized": cat.morphism_count(),
            "ok": failure.is_none(),
        }),
        failure,
    )
}

pub fn congruences(path: &Path, caps: Caps) -> Result<Outcome, CliError> {
    let (loaded, digest) = load_monoid(path)?;
    let m = &loaded.monoid;
    let objects = right_congruences(m, caps.congruences)?;
    let cat = congruence_category(m, objects);
    let edges = cat.hasse_edges();
    let k = cat.objects.len();
    let is_chain = edges.len() + 1 == k && {
        let mut out = vec![0usize; k];
        let mut inn = vec![0usize; k];
        for &(a, b) in &edges {
            out[a] += 1;
            inn[b] += 1;
        }
        out.iter().chain(&inn).all(|&d| d <= 1)
    };
    let hom_counts: Vec<Vec<usize>> = cat.homs.iter().map(|row| row.iter().map(Vec::len).collect()).collect();
    let (spot, failure) = category_spot_checks(&cat);
    let nodes: Vec<Value> = cat
        .objects
        .iter()
        .enumerate()
        .map(|(i, r)| {
            json!({
                "index": i,
                "classes": r.partition().blocks(),
                "class_count": r.class_count(),
                "two_sided": r.is_two_sided(),
            })
        })
        .collect();

    let mut text = vec![format!("{k} right congruences on a monoid of order {}", m.size())];
    text.extend(relabel_note(&loaded));
    for (i, r) in cat.objects.iter().enumerate() {
        let two = if r.is_two_sided() { "  two-sided" } else { "" };
        text.push(format!("  r{i}: {:?}{two}", r.partition().blocks()));
    }
    let shown: Vec<String> = edges.iter().map(|(a, b)| format!("r{a} < r{b}")).collect();
    text.push(format!("hasse edges: {}", shown.join(", ")));
    text.push(format!("lattice is a chain: {is_chain}"));
    text.push(format!("morphisms: {}", cat.morphism_count()));
    text.push(format!(
        "spot checks: {} triples, ok = {}",
        spot["triples_checked"], spot["ok"]
    ));
    Ok(Outcome {
        inputs: vec![digest],
        payload: json!({
            "monoid": loaded_json(&loaded),
            "congruences": nodes,
            "hasse_edges": edges,
            "is_chain": is_chain,
            "hom_counts": hom_counts,
            "morphism_count": cat.morphism_count(),
            "spot_checks": spot,
        }),
        text,
        warnings: Vec::new(),
        failure,
    })
}

fn congruence_blocks(rs: &[RightCongruence]) -> Vec<Vec<Vec<usize>>> {
    rs.iter().map(|r| r.partition().blocks()).collect()
}

pub fn complete(monoid_path: &Path, topology_path: &Path, caps: Caps) -> Result<Outcome, CliError> {
    let (loaded, m_digest) = load_monoid(monoid_path)?;
    let (text, t_digest) = input::read(topology_path)?;
    let file: TopologyFile = input::parse(&t_digest.path, &text)?;
    let tau = file.load(&loaded)?;
    let m = loaded.monoid.clone();

    let tilde = action_topology(&tau, caps.subsets)?;
    let powder = powder_quotient(&tau, caps.subsets)?;
    let filter = open_congruences(&tau)?;
    let base = base_reduce(&filter);
    let limit = completion(&filter)?;
    let factor = factor_topology(&filter, caps.subsets)?;

    let mut invariants: Vec<(&str, bool, String)> = Vec::new();
    invariants.push((
        "action topology is coarser than the input",
        tilde.topology.is_coarser_than(&tau),
        String::new(),
    ));
    let mult = tilde.topology.is_topological_monoid();
    invariants.push((
        "action topology makes multiplication continuous",
        mult.is_ok(),
        mult.err().map(|w| format!("{w:?}")).unwrap_or_default(),
    ));
    invariants.push(("powder quotient is T0", powder.topology.is_t0(), String::new()));
    let least_classes = filter.least().partition().clone();
    invariants.push((
        "powder quotient is the quotient by the least open congruence",
        Partition::from_labels(&powder.quotient) == least_classes,
        format!("{:?} vs {:?}", powder.quotient, least_classes.classes_vec()),
    ));
    invariants.push((
        "completion is isomorphic to the powder quotient",
        monoid_isomorphism(&limit.monoid, &powder.monoid).is_some(),
        String::new(),
    ));
    invariants.push((
        "unit is a homomorphism",
        m.is_homomorphism_to(&limit.monoid, &limit.unit),
        String::new(),
    ));
    invariants.push((
        "completion topology is topological",
        limit.topology.is_topological_monoid().is_ok(),
        String::new(),
    ));
    invariants.push(("factor topology recovers the filter", factor.exact, String::new()));
    let failure = invariants.iter().find(|(_, ok, _)| !ok).map(|(name, _, w)| {
        if w.is_empty() {
            format!("invariant failed: {name}")
        } else {
            format!("invariant failed: {name}: {w}")
        }
    });

    let mut lines = vec![format!("monoid of order {}, {} opens", m.size(), tau.opens().len())];
    lines.extend(relabel_note(&loaded));
    lines.push(format!("T = {}", show_sets(&tilde.clopens)));
    lines.push(format!("action topology = {}", show_sets(tilde.topology.opens())));
    lines.push(format!(
        "powder quotient: order {}, map {:?}",
        powder.monoid.size(),
        powder.quotient
    ));
    lines.push(format!("open congruences: {:?}", congruence_blocks(filter.members())));
    lines.push(format!("base: {:?}", congruence_blocks(&base.base)));
    lines.push(format!(
        "completion: order {}, table {:?}, unit {:?} (injective {}, surjective {})",
        limit.monoid.size(),
        limit.monoid.rows(),
        limit.unit,
        limit.is_unit_injective(),
        limit.is_unit_surjective()
    ));
    lines.push(format!("completion topology = {}", show_sets(limit.topology.opens())));
    for (name, ok, _) in &invariants {
        lines.push(format!("  [{}] {name}", if *ok { "ok" } else { "FAIL" }));
    }

    let invariants_json: Vec<Value> = invariants
        .iter()
        .map(|(name, ok, _)| json!({ "name": name, "ok": ok }))
        .collect();
    Ok(Outcome {
        inputs: vec![m_digest, t_digest],
        payload: json!({
            "monoid": loaded_json(&loaded),
            "tau": sets(tau.opens()),
            "T": sets(&tilde.clopens),
            "tau_tilde": sets(tilde.topology.opens()),
            "powder_quotient": {
                "monoid": monoid_json(&powder.monoid),
                "quotient": powder.quotient,
                "opens": sets(powder.topology.opens()),
            },
            "open_congruences": congruence_blocks(filter.members()),
            "least_open_congruence": filter.least().partition().blocks(),
            "base": congruence_blocks(&base.base),
            "prodiscrete_two_sided": base.prodiscrete_two_sided,
            "completion": {
                "monoid": monoid_json(&limit.monoid),
                "tuples": limit.tuples,
                "unit": limit.unit,
                "unit_injective": limit.is_unit_injective(),
                "unit_surjective": limit.is_unit_surjective(),
                "opens": sets(limit.topology.opens()),
            },
            "factor_topology": { "opens": sets(factor.topology.opens()), "exact": factor.exact },
            "invariants": invariants_json,
        }),
        text: lines,
        warnings: Vec::new(),
        failure,
    })
}

/// Idempotents `e` of `m` with `eMe` isomorphic to `other`, plus the order
/// of every local submonoid.
fn local_audit(m: &FiniteMonoid, other: &FiniteMonoid) -> Result<Vec<Value>, CliError> {
    m.idempotents()
        .iter()
        .map(|e| {
            let (local, _) = m.local_submonoid(e)?;
            Ok(json!({
                "e": e,
                "order": local.size(),
                "isomorphic_to_other": monoid_isomorphism(&local, other).is_some(),
            }))
        })
        .collect()
}

pub fn morita(a_path: &Path, b_path: &Path) -> Result<Outcome, CliError> {
    let (a, a_digest) = load_monoid(a_path)?;
    let (b, b_digest) = load_monoid(b_path)?;
    let iso = monoid_isomorphism(&a.monoid, &b.monoid);
    let mut failure = None;
    let mut warnings = Vec::new();
    let mut sides = Vec::new();
    for (name, this, other) in [("first", &a, &b), ("second", &b, &a)] {
        let witnesses = this.monoid.morita_witnesses();
        for w in &witnesses {
            let (local, _) = this.monoid.local_submonoid(w.e)?;
            if !w.holds_in(&this.monoid) || monoid_isomorphism(&local, &this.monoid).is_none() {
                failure.get_or_insert(format!("witness {w:?} of the {name} monoid fails its audit"));
            }
        }
        let locals = local_audit(&this.monoid, &other.monoid)?;
        for l in &locals {
            if iso.is_none() && l["isomorphic_to_other"] == json!(true) {
                warnings.push(format!(
                    "local submonoid of the {name} monoid at e = {} is isomorphic to the other monoid, but no witness (e, β, β') exists there",
                    l["e"]
                ));
            }
        }
        sides.push(json!({
            "monoid": loaded_json(this),
            "witnesses": witnesses,
            "local_submonoids": locals,
        }));
    }
    let verdict = if iso.is_some() {
        "isomorphic, hence Morita-equivalent"
    } else {
        "not isomorphic, hence not Morita-equivalent"
    };
    let text = vec![
        format!("orders {} and {}", a.monoid.size(), b.monoid.size()),
        match &iso {
            Some(map) => format!("isomorphism {map:?}"),
            None => "no isomorphism".into(),
        },
        format!("verdict: {verdict}"),
    ];
    Ok(Outcome {
        inputs: vec![a_digest, b_digest],
        payload: json!({
            "isomorphism": iso,
            "morita_equivalent": iso.is_some(),
            "verdict": verdict,
            "first": sides[0],
            "second": sides[1],
        }),
        text,
        warnings,
        failure,
    })
}

pub fn monogenic_classify(path: &Path) -> Result<Outcome, CliError> {
    let (text, digest) = input::read(path)?;
    let file: MonogenicFile = input::parse(&digest.path, &text)?;
    let x = file.load()?;
    let c = classify(&x);
    let mut lines = vec![format!("{} points, {} components", x.size(), c.component_count)];
    lines.push("element  shape".into());
    for (p, s) in c.element_shapes.iter().enumerate() {
        lines.push(format!("{p:>7}  {s}"));
    }
    let shown: Vec<String> = c.principal_shapes.iter().map(ToString::to_string).collect();
    lines.push(format!(
        "generators {:?} with shapes {}",
        c.generators,
        shown.join(", ")
    ));
    Ok(Outcome {
        inputs: vec![digest],
        payload: json!({ "step": x.step(), "classification": c }),
        text: lines,
        warnings: Vec::new(),
        failure: None,
    })
}

pub fn monogenic_compare(s: (usize, usize), t: (usize, usize)) -> Result<Outcome, CliError> {
    let s = NabShape::new(s.0, s.1)?;
    let t = NabShape::new(t.0, t.1)?;
    let (x, y) = (s.action(), t.action());
    let maps = equivariant_maps(&x, &y);
    let searched_epi = maps.iter().any(|f| {
        let img = ElementSet::from_indices(t.size(), f.iter().copied());
        img.is_full()
    });
    let injective: Vec<&Vec<usize>> = maps.iter().filter(|f| is_injective(f)).collect();
    let searched_mono = !injective.is_empty();
    let splits: Vec<bool> = injective.iter().map(|f| find_retraction(f, &x, &y).is_some()).collect();
    let cover = joint_cover(s, t);
    let mut failure = None;
    if searched_epi != epi_exists(s, t) || searched_mono != mono_exists(s, t) {
        failure = Some(format!("shape rules disagree with exhaustive search for {s} and {t}"));
    }
    let text = vec![
        format!("{s} -> {t}: {} equivariant maps", maps.len()),
        format!("epi exists: {}", epi_exists(s, t)),
        format!("mono exists: {}", mono_exists(s, t)),
        format!(
            "monos that split: {} of {}",
            splits.iter().filter(|&&b| b).count(),
            splits.len()
        ),
        format!("joint cover: {cover}"),
    ];
    Ok(Outcome {
        inputs: Vec::new(),
        payload: json!({
            "source": s,
            "target": t,
            "equivariant_maps": maps.len(),
            "epi_exists": epi_exists(s, t),
            "mono_exists": mono_exists(s, t),
            "searched_epi": searched_epi,
            "searched_mono": searched_mono,
            "monos_split": splits,
            "joint_cover": cover,
        }),
        text,
        warnings: Vec::new(),
        failure,
    })
}

fn is_injective(f: &[usize]) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    f.iter().all(|x| seen.insert(*x))
}

pub fn monogenic_profinite(depth: usize) -> Result<Outcome, CliError> {
    let p = truncated_profinite(depth)?;
    let projections: Vec<Value> = (1..depth)
        .map(|k| {
            let target = FiniteMonoid::truncated_addition(k);
            let map = truncation_projection(depth, k);
            json!({ "depth": k, "homomorphism": p.monoid.is_homomorphism_to(&target, &map) })
        })
        .collect();
    let failure = projections
        .iter()
        .find(|v| v["homomorphism"] == json!(false))
        .map(|v| format!("projection to depth {} is not a homomorphism", v["depth"]));
    let text = vec![
        format!("depth {depth}: order {}", p.monoid.size()),
        format!("stable opens: {}", show_sets(&p.stable_opens)),
        format!("truncation artefacts: {}", show_sets(&p.unstable_opens)),
    ];
    Ok(Outcome {
        inputs: Vec::new(),
        payload: json!({
            "depth": depth,
            "monoid": monoid_json(&p.monoid),
            "stable_opens": sets(&p.stable_opens),
            "unstable_opens": sets(&p.unstable_opens),
            "projections": projections,
        }),
        text,
        warnings: Vec::new(),
        failure,
    })
}

fn load_category(path: &Path) -> Result<(FiniteCategory, InputDigest), CliError> {
    let (text, digest) = input::read(path)?;
    let spec: CategorySpec = input::parse(&digest.path, &text)?;
    Ok((input::load_category(&spec)?, digest))
}

/// A built-in system name, or a category file with an `E` class.
fn system_for(name: &str) -> Result<(Box<dyn ExtensionSystem>, Vec<InputDigest>), CliError> {
    let path = Path::new(name);
    if path.is_file() {
        let (cat, digest) = load_category(path)?;
        let e = cat
            .class("E")
            .ok_or_else(|| CliError::Invalid(format!("{name} has no `E` class")))?
            .to_vec();
        return Ok((Box::new(CategorySystem::new(cat, e)?), vec![digest]));
    }
    Ok((builtin_system(name)?, Vec::new()))
}

/// Bounds for a chain run.
#[derive(Debug, Clone, Copy)]
pub struct FraisseRun {
    pub steps: usize,
    pub seed: usize,
    pub deficit_stage: usize,
    pub deficit_problems: usize,
    pub universality: usize,
}

pub fn fraisse_run(system: &str, run: FraisseRun) -> Result<Outcome, CliError> {
    let (sys, inputs) = system_for(system)?;
    let sys = sys.as_ref();
    let chain = build_chain(sys, run.steps, run.seed)?;
    let deficit = injectivity_deficit(sys, &chain, run.deficit_stage, run.deficit_problems);
    let universality: Vec<Value> = (0..run.universality)
        .map_while(|i| sys.object(i))
        .map(|a| json!({ "object": sys.describe(a), "stage": universality_stage(sys, &chain, a) }))
        .collect();
    let mut text = vec![format!(
        "{} from object {} for {} steps",
        chain.system, run.seed, run.steps
    )];
    let stages: Vec<String> = chain.stages.iter().map(|&u| sys.describe(u)).collect();
    text.push(format!("stages: {}", stages.join(" -> ")));
    text.push(format!(
        "injectivity deficit (solve by stage {}, first {} objects): {} open problems",
        run.deficit_stage,
        run.deficit_problems,
        deficit.len()
    ));
    for u in &universality {
        text.push(format!(
            "  {} first embeds at stage {}",
            u["object"].as_str().unwrap_or("?"),
            u["stage"]
        ));
    }
    Ok(Outcome {
        inputs,
        payload: json!({
            "system": chain.system,
            "seed": run.seed,
            "steps": run.steps,
            "stages": stages,
            "chain": chain,
            "deficit": {
                "stage_bound": run.deficit_stage,
                "problem_bound": run.deficit_problems,
                "problems": deficit,
            },
            "universality": universality,
        }),
        text,
        warnings: Vec::new(),
        failure: None,
    })
}

pub fn fraisse_ofs(path: &Path) -> Result<Outcome, CliError> {
    let (cat, digest) = load_category(path)?;
    let class = |n: &str| {
        cat.class(n)
            .map(<[usize]>::to_vec)
            .ok_or_else(|| CliError::Invalid(format!("the category file has no `{n}` class")))
    };
    let (t, m) = (class("T")?, class("M")?);
    let report = ofs_validate(&cat, &t, &m)?;
    let names = |xs: &[usize]| xs.iter().map(|&f| cat.name(f).to_string()).collect::<Vec<_>>();
    let checks = [
        ("factorization", &report.factorization),
        ("uniqueness", &report.uniqueness),
        ("lifting", &report.lifting),
        ("stability", &report.stability),
        ("joint_covering", &report.joint_covering),
    ];
    let mut payload = json!({
        "objects": cat.object_count(),
        "morphisms": cat.morphism_count(),
        "T": names(&t),
        "M": names(&m),
        "all_ok": report.all_ok(),
        "checks": report,
    });
    let mut text = vec![format!(
        "{} objects, {} morphisms",
        cat.object_count(),
        cat.morphism_count()
    )];
    let failure = checks
        .iter()
        .find_map(|(name, c)| c.witness.as_ref().map(|w| format!("{name}: {w}")));
    for (name, check) in checks {
        payload[format!("{name}_ok")] = json!(check.ok);
        match &check.witness {
            Some(w) => text.push(format!("{name}: fails ({w})")),
            None => text.push(format!("{name}: ok")),
        }
    }
    Ok(Outcome {
        inputs: vec![digest],
        payload,
        text,
        warnings: Vec::new(),
        failure,
    })
}
