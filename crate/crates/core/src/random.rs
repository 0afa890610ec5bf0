//! Seeded generators for languages, sentences, structures and systems.
//!
//! Every generator draws only from the supplied RNG, so a fixed seed gives a
//! fixed sequence of values.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::error::Result;
use crate::folf::{Folf, Formula, Signature};
use crate::ifl::{Classification, If, IfLanguage, Infomorphism, Sequent, TypeMap};
use crate::institution::{Institution, LanguageMorphism};
use crate::logic_flow::Logic;
use crate::shape::ShapeGraph;
use crate::spec_flow::{Engine, Specification};
use crate::systems::InformationSystem;

const TYPE_NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

/// A language with between 1 and `max_types` types (at most 8).
pub fn random_if_language<R: Rng>(rng: &mut R, max_types: usize) -> IfLanguage {
    let n = rng.random_range(1..=max_types.clamp(1, TYPE_NAMES.len()));
    IfLanguage::new(TYPE_NAMES[..n].iter().copied())
}

/// Uniform over the `4^n` sequents of `lang`.
pub fn random_sequent<R: Rng>(rng: &mut R, lang: &IfLanguage) -> Sequent {
    let mut antecedent = BTreeSet::new();
    let mut succedent = BTreeSet::new();
    for y in lang.types() {
        if rng.random_bool(0.5) {
            antecedent.insert(y.clone());
        }
        if rng.random_bool(0.5) {
            succedent.insert(y.clone());
        }
    }
    Sequent::new(antecedent, succedent)
}

pub fn random_if_spec<R: Rng>(rng: &mut R, lang: &IfLanguage, max_sentences: usize) -> Specification<If> {
    let k = rng.random_range(0..=max_sentences);
    let sentences = (0..k).map(|_| random_sequent(rng, lang)).collect();
    Specification::from_parts(lang.clone(), sentences)
}

pub fn random_row<R: Rng>(rng: &mut R, lang: &IfLanguage) -> BTreeSet<String> {
    lang.types().iter().filter(|_| rng.random_bool(0.5)).cloned().collect()
}

/// Instances `x0, x1, ...` with independent random rows.
pub fn random_classification<R: Rng>(rng: &mut R, lang: &IfLanguage, max_instances: usize) -> Classification {
    let k = rng.random_range(0..=max_instances);
    let rows = (0..k).map(|i| (format!("x{i}"), random_row(rng, lang))).collect();
    Classification::new(lang.types().iter().cloned(), rows).expect("rows use language types")
}

/// A random function between type sets. `target` must be nonempty.
pub fn random_type_map<R: Rng>(rng: &mut R, source: &IfLanguage, target: &IfLanguage) -> TypeMap {
    let images: Vec<&String> = target.types().iter().collect();
    let map = source
        .types()
        .iter()
        .map(|y| (y.clone(), (*images.choose(rng).expect("nonempty target")).clone()))
        .collect();
    LanguageMorphism::new(source.clone(), target.clone(), map).expect("total into target")
}

/// A random logic over a random classification.
pub fn random_if_logic<R: Rng>(rng: &mut R, max_types: usize, max_instances: usize, max_sentences: usize) -> Logic<If> {
    let lang = random_if_language(rng, max_types);
    let m = random_classification(rng, &lang, max_instances);
    let t = random_if_spec(rng, &lang, max_sentences);
    Logic::new(&If::default(), m, t).expect("spec over the structure language")
}

/// Size limits for random IF systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemParams {
    pub max_nodes: usize,
    pub max_types: usize,
    pub max_edges: usize,
    /// Instances added at each node beyond those forced by outgoing edges.
    pub max_extra_instances: usize,
    /// Random sentences added at each node before edge images are added.
    pub max_sentences: usize,
}

/// A random IF information system over an acyclic shape whose edges run
/// from lower to higher node index; zero edges gives a discrete system.
///
/// Classifications are built from the last node backwards: every instance
/// `x` of an edge target yields a fresh source instance whose row is the
/// preimage of `x`'s row, so each edge is an infomorphism. Theories are built
/// forwards and contain the image of every incoming theory, so each edge is
/// a specification morphism.
pub fn random_if_system<R: Rng>(
    rng: &mut R,
    engine: &Engine<'_, If>,
    params: &SystemParams,
) -> Result<InformationSystem<If>> {
    let n = rng.random_range(1..=params.max_nodes.max(1));
    let languages: Vec<IfLanguage> = (0..n).map(|_| random_if_language(rng, params.max_types)).collect();
    let edge_count = if n < 2 {
        0
    } else {
        rng.random_range(0..=params.max_edges)
    };
    let mut edges: Vec<(usize, usize)> = (0..edge_count)
        .map(|_| {
            let i = rng.random_range(0..n - 1);
            (i, rng.random_range(i + 1..n))
        })
        .collect();
    edges.sort_unstable();
    let type_maps: Vec<TypeMap> = edges
        .iter()
        .map(|&(i, j)| random_type_map(rng, &languages[i], &languages[j]))
        .collect();

    let mut classifications: Vec<Option<Classification>> = vec![None; n];
    let mut instance_maps: Vec<BTreeMap<String, String>> = vec![BTreeMap::new(); edges.len()];
    for i in (0..n).rev() {
        let mut rows: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (e, &(src, tgt)) in edges.iter().enumerate() {
            if src != i {
                continue;
            }
            let target = classifications[tgt].as_ref().expect("targets built first");
            for (x, row) in target.rows() {
                let pre: BTreeSet<String> = languages[i]
                    .types()
                    .iter()
                    .filter(|y| row.contains(type_maps[e].apply(y).expect("total")))
                    .cloned()
                    .collect();
                let fresh = format!("e{e}.{x}");
                instance_maps[e].insert(x.clone(), fresh.clone());
                rows.insert(fresh, pre);
            }
        }
        for k in 0..rng.random_range(0..=params.max_extra_instances) {
            rows.insert(format!("x{k}"), random_row(rng, &languages[i]));
        }
        classifications[i] = Some(Classification::new(languages[i].types().iter().cloned(), rows)?);
    }
    let classifications: Vec<Classification> = classifications.into_iter().map(Option::unwrap).collect();

    let mut specs: Vec<Specification<If>> = Vec::with_capacity(n);
    for (i, lang) in languages.iter().enumerate() {
        let mut sentences = random_if_spec(rng, lang, params.max_sentences).sentences().clone();
        for (e, &(src, tgt)) in edges.iter().enumerate() {
            if tgt == i {
                let image = engine.dir(&type_maps[e], &specs[src])?;
                sentences.extend(image.sentences().iter().cloned());
            }
        }
        specs.push(Specification::from_parts(lang.clone(), sentences));
    }

    let shape = ShapeGraph::new(
        (0..n).map(|i| format!("n{i}")),
        edges
            .iter()
            .enumerate()
            .map(|(e, &(i, j))| (format!("e{e}"), format!("n{i}"), format!("n{j}"))),
    )?;
    let logics = classifications
        .into_iter()
        .zip(specs)
        .map(|(m, t)| Logic::new(engine.inst, m, t))
        .collect::<Result<Vec<_>>>()?;
    let morphisms = type_maps
        .into_iter()
        .zip(instance_maps)
        .map(|(f, g)| Infomorphism::new(f, g))
        .collect();
    InformationSystem::new(engine, shape, logics, morphisms)
}

/// A signature of `P`, `Q` (unary) and `R`, `S` (binary), keeping each with
/// probability one half but never empty.
pub fn random_signature<R: Rng>(rng: &mut R) -> Signature {
    let all = [("P", 1), ("Q", 1), ("R", 2), ("S", 2)];
    let mut picked: Vec<(&str, usize)> = all.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
    if picked.is_empty() {
        picked.push(*all.choose(rng).expect("nonempty"));
    }
    Signature::new(picked).expect("valid symbols")
}

/// Up to `max_sentences` sentences drawn from the universe of `sig`.
pub fn random_folf_spec<R: Rng>(
    rng: &mut R,
    inst: &Folf,
    sig: &Signature,
    max_sentences: usize,
) -> Result<Specification<Folf>> {
    let universe = inst.sentence_universe(sig)?;
    let k = rng.random_range(0..=max_sentences.min(universe.len()));
    let sentences: BTreeSet<Formula> = universe.choose_multiple(rng, k).cloned().collect();
    Ok(Specification::from_parts(sig.clone(), sentences))
}
