//! System description files.
//!
//! A document is one JSON object with the keys `institution`, `languages`,
//! `structures`, `morphisms`, `shape`, `nodes` and `options`. Unknown keys
//! are rejected, and so are nodes that embed another system. A document is
//! semantic when every node names a structure and formal when every node
//! names a language instead.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::Deserialize;
use syscons_core::folf::{parse_formula, FiniteStructure, Folf, SchemaSet, Signature, Template};
use syscons_core::ifl::{Classification, If, IfLanguage, Infomorphism};
use syscons_core::logic_flow::Logic;
use syscons_core::shape::ShapeGraph;
use syscons_core::spec_flow::{Engine, Specification};
use syscons_core::systems::{FormalSystem, InformationSystem};
use syscons_core::{Bound, Institution, LanguageMorphism};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstitutionTag {
    If,
    Folf,
}

/// IF languages are lists of types; FOLf languages map symbols to arities.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum LanguageDoc {
    Types(Vec<String>),
    Symbols(BTreeMap<String, usize>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDoc {
    pub language: String,
    /// IF: instance to the types classifying it.
    pub instances: Option<BTreeMap<String, Vec<String>>>,
    /// FOLf: carrier size.
    pub size: Option<usize>,
    /// FOLf: symbol to the tuples in its table.
    pub relations: Option<BTreeMap<String, Vec<Vec<usize>>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    /// A structure name in semantic documents, a language name in formal ones.
    pub from: String,
    pub to: String,
    /// Symbol (type) map, source to target.
    pub map: BTreeMap<String, String>,
    /// IF only: target instance to source instance.
    pub instances: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub source: String,
    pub target: String,
    pub morphism: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeDoc {
    pub nodes: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub structure: Option<String>,
    pub language: Option<String>,
    #[serde(default)]
    pub theory: Vec<String>,
    /// Present only to reject nested systems with a clear message.
    pub system: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemplateDoc {
    pub formula: String,
    pub params: Vec<usize>,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsDoc {
    pub bound: Option<usize>,
    #[serde(default = "yes")]
    pub default_schemas: bool,
    #[serde(default = "yes")]
    pub schemas_from_theories: bool,
    #[serde(default)]
    pub schemas: Vec<TemplateDoc>,
}

impl Default for OptionsDoc {
    fn default() -> Self {
        Self {
            bound: None,
            default_schemas: true,
            schemas_from_theories: true,
            schemas: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub institution: InstitutionTag,
    #[serde(default)]
    pub languages: BTreeMap<String, LanguageDoc>,
    #[serde(default)]
    pub structures: BTreeMap<String, StructureDoc>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, MorphismDoc>,
    pub shape: ShapeDoc,
    pub nodes: BTreeMap<String, NodeDoc>,
    #[serde(default)]
    pub options: OptionsDoc,
}

impl SystemDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }
}

pub enum SystemKind<I: Institution> {
    Semantic(InformationSystem<I>),
    Formal(FormalSystem<I>),
}

/// A validated system together with its institution and bound.
pub struct Built<I: Institution> {
    pub inst: I,
    pub bound: Bound,
    pub system: SystemKind<I>,
}

impl<I: Institution> Built<I> {
    pub fn engine(&self) -> Engine<'_, I> {
        Engine::new(&self.inst, self.bound)
    }

    pub fn shape(&self) -> &ShapeGraph {
        match &self.system {
            SystemKind::Semantic(is) => is.shape(),
            SystemKind::Formal(fs) => fs.shape(),
        }
    }

    pub fn spec(&self, node: usize) -> &Specification<I> {
        match &self.system {
            SystemKind::Semantic(is) => is.logics()[node].spec(),
            SystemKind::Formal(fs) => &fs.specs()[node],
        }
    }
}

pub enum Loaded {
    If(Built<If>),
    Folf(Built<Folf>),
}

/// Institution-specific parts of loading.
trait Front: Institution + Sized {
    fn language(name: &str, doc: &LanguageDoc) -> Result<Self::Language, CliError>;
    fn structure(name: &str, doc: &StructureDoc, lang: &Self::Language) -> Result<Self::Structure, CliError>;
    fn struc_morphism(
        name: &str,
        sigma: LanguageMorphism<Self::Language>,
        instances: Option<&BTreeMap<String, String>>,
    ) -> Result<Self::StrucMorphism, CliError>;
}

impl Front for If {
    fn language(name: &str, doc: &LanguageDoc) -> Result<IfLanguage, CliError> {
        match doc {
            LanguageDoc::Types(types) => Ok(IfLanguage::new(types.iter().cloned())),
            LanguageDoc::Symbols(_) => Err(CliError::Invalid(format!(
                "language `{name}`: IF languages are lists of types"
            ))),
        }
    }

    fn structure(name: &str, doc: &StructureDoc, lang: &IfLanguage) -> Result<Classification, CliError> {
        if doc.size.is_some() || doc.relations.is_some() {
            return Err(CliError::Invalid(format!(
                "structure `{name}`: IF structures take `instances`, not `size` or `relations`"
            )));
        }
        let rows = doc
            .instances
            .as_ref()
            .ok_or_else(|| CliError::Invalid(format!("structure `{name}` has no `instances`")))?
            .iter()
            .map(|(x, types)| (x.clone(), types.iter().cloned().collect()))
            .collect();
        Classification::new(lang.types().iter().cloned(), rows)
            .map_err(|e| CliError::context(format!("structure `{name}`"), e))
    }

    fn struc_morphism(
        name: &str,
        sigma: LanguageMorphism<IfLanguage>,
        instances: Option<&BTreeMap<String, String>>,
    ) -> Result<Infomorphism, CliError> {
        let instances = instances
            .ok_or_else(|| CliError::Invalid(format!("morphism `{name}`: infomorphisms need an `instances` map")))?;
        Ok(Infomorphism::new(sigma, instances.clone()))
    }
}

impl Front for Folf {
    fn language(name: &str, doc: &LanguageDoc) -> Result<Signature, CliError> {
        match doc {
            LanguageDoc::Symbols(symbols) => Signature::new(symbols.iter().map(|(s, n)| (s.clone(), *n)))
                .map_err(|e| CliError::context(format!("language `{name}`"), e)),
            LanguageDoc::Types(_) => Err(CliError::Invalid(format!(
                "language `{name}`: FOLf languages map symbols to arities"
            ))),
        }
    }

    fn structure(name: &str, doc: &StructureDoc, sig: &Signature) -> Result<FiniteStructure, CliError> {
        if doc.instances.is_some() {
            return Err(CliError::Invalid(format!(
                "structure `{name}`: FOLf structures take `size` and `relations`, not `instances`"
            )));
        }
        let size = doc
            .size
            .ok_or_else(|| CliError::Invalid(format!("structure `{name}` has no `size`")))?;
        let tables: BTreeMap<String, BTreeSet<Vec<usize>>> = doc
            .relations
            .clone()
            .unwrap_or_default()
            .into_iter()
            .map(|(s, tuples)| (s, tuples.into_iter().collect()))
            .collect();
        FiniteStructure::new(sig.clone(), size, tables).map_err(|e| CliError::context(format!("structure `{name}`"), e))
    }

    fn struc_morphism(
        name: &str,
        sigma: LanguageMorphism<Signature>,
        instances: Option<&BTreeMap<String, String>>,
    ) -> Result<LanguageMorphism<Signature>, CliError> {
        if instances.is_some() {
            return Err(CliError::Invalid(format!(
                "morphism `{name}`: FOLf morphisms have no `instances` map"
            )));
        }
        Ok(sigma)
    }
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, what: &str, name: &str, from: &str) -> Result<&'a T, CliError> {
    map.get(name)
        .ok_or_else(|| CliError::Reference(format!("{from} refers to unknown {what} `{name}`")))
}

/// Resolves every name, builds the institution values and validates the
/// system. `bound` overrides `options.bound`.
pub fn load(doc: &SystemDocument, bound: Option<usize>) -> Result<Loaded, CliError> {
    let bound = Bound::new(bound.or(doc.options.bound).unwrap_or(Bound::DEFAULT.get()))?;
    for (id, node) in &doc.nodes {
        if node.system.is_some() {
            return Err(CliError::Invalid(format!(
                "node `{id}` embeds a system; nested systems are not supported"
            )));
        }
    }
    match doc.institution {
        InstitutionTag::If => {
            if !doc.options.schemas.is_empty() {
                return Err(CliError::Invalid("schemas apply to FOLf documents only".into()));
            }
            Ok(Loaded::If(build(doc, If::default(), bound)?))
        }
        InstitutionTag::Folf => Ok(Loaded::Folf(build(doc, folf_institution(doc)?, bound)?)),
    }
}

/// The FOLf universe: default templates, declared templates, and the
/// abstraction of every node sentence.
fn folf_institution(doc: &SystemDocument) -> Result<Folf, CliError> {
    let mut schemas = if doc.options.default_schemas {
        SchemaSet::default()
    } else {
        SchemaSet::empty()
    };
    for t in &doc.options.schemas {
        schemas.insert(
            Template::parse(&t.formula, &t.params)
                .map_err(|e| CliError::context(format!("schema `{}`", t.formula), e))?,
        );
    }
    if doc.options.schemas_from_theories {
        let mut formulas = Vec::new();
        for (id, node) in &doc.nodes {
            let lang_name = node_language_name(doc, id, node)?;
            let sig = Folf::language(
                lang_name,
                lookup(&doc.languages, "language", lang_name, &format!("node `{id}`"))?,
            )?;
            for (k, text) in node.theory.iter().enumerate() {
                formulas.push(parse_formula(text, &sig).map_err(|e| sentence_error(id, k, e))?);
            }
        }
        schemas = schemas.with_sentences(&formulas);
    }
    Ok(Folf::with_schemas(schemas))
}

fn sentence_error(node: &str, k: usize, e: syscons_core::Error) -> CliError {
    CliError::context(format!("node `{node}`, sentence {}", k + 1), e)
}

fn node_language_name<'a>(doc: &'a SystemDocument, id: &str, node: &'a NodeDoc) -> Result<&'a str, CliError> {
    match (&node.structure, &node.language) {
        (Some(m), None) => Ok(&lookup(&doc.structures, "structure", m, &format!("node `{id}`"))?.language),
        (None, Some(l)) => Ok(l),
        _ => Err(CliError::Invalid(format!(
            "node `{id}` must name exactly one of `structure` or `language`"
        ))),
    }
}

fn build<I: Front>(doc: &SystemDocument, inst: I, bound: Bound) -> Result<Built<I>, CliError> {
    let engine = Engine::new(&inst, bound);
    let mut languages = BTreeMap::new();
    for (name, l) in &doc.languages {
        languages.insert(name.clone(), I::language(name, l)?);
    }
    let mut structures = BTreeMap::new();
    for (name, m) in &doc.structures {
        let lang = lookup(&languages, "language", &m.language, &format!("structure `{name}`"))?;
        structures.insert(name.clone(), I::structure(name, m, lang)?);
    }

    for id in doc.nodes.keys() {
        if !doc.shape.nodes.contains(id) {
            return Err(CliError::Reference(format!("node `{id}` is not in the shape")));
        }
    }
    let nodes: Vec<&NodeDoc> = doc
        .shape
        .nodes
        .iter()
        .map(|id| lookup(&doc.nodes, "node", id, "shape"))
        .collect::<Result<_, _>>()?;
    let semantic = nodes.iter().all(|n| n.structure.is_some());
    if !semantic && nodes.iter().any(|n| n.structure.is_some()) {
        return Err(CliError::Invalid(
            "either every node names a structure or none does".into(),
        ));
    }

    let shape = ShapeGraph::new(
        doc.shape.nodes.iter().cloned(),
        doc.shape
            .edges
            .iter()
            .map(|e| (e.id.clone(), e.source.clone(), e.target.clone())),
    )?;

    let mut specs = Vec::with_capacity(nodes.len());
    for (id, node) in doc.shape.nodes.iter().zip(&nodes) {
        let lang_name = node_language_name(doc, id, node)?;
        let lang = lookup(&languages, "language", lang_name, &format!("node `{id}`"))?;
        let sentences = node
            .theory
            .iter()
            .enumerate()
            .map(|(k, text)| inst.parse_sentence(lang, text).map_err(|e| sentence_error(id, k, e)))
            .collect::<Result<Vec<_>, _>>()?;
        specs.push(
            Specification::new(&inst, lang.clone(), sentences)
                .map_err(|e| CliError::context(format!("node `{id}`"), e))?,
        );
    }

    let mut sigmas = Vec::new();
    let mut struc_morphisms = Vec::new();
    for e in &doc.shape.edges {
        let from = format!("edge `{}`", e.id);
        let m = lookup(&doc.morphisms, "morphism", &e.morphism, &from)?;
        let (src, tgt) = (
            nodes[shape.node_index(&e.source).expect("shape checked")],
            nodes[shape.node_index(&e.target).expect("shape checked")],
        );
        let (want_from, want_to) = if semantic {
            (src.structure.as_deref(), tgt.structure.as_deref())
        } else {
            (src.language.as_deref(), tgt.language.as_deref())
        };
        if Some(m.from.as_str()) != want_from || Some(m.to.as_str()) != want_to {
            return Err(CliError::Reference(format!(
                "edge `{}` runs {} → {} but morphism `{}` runs {} → {}",
                e.id,
                want_from.unwrap_or("?"),
                want_to.unwrap_or("?"),
                e.morphism,
                m.from,
                m.to
            )));
        }
        let lang_of = |name: &str| -> Result<I::Language, CliError> {
            if semantic {
                Ok(inst.structure_language(lookup(&structures, "structure", name, &from)?))
            } else {
                Ok(lookup(&languages, "language", name, &from)?.clone())
            }
        };
        let sigma = LanguageMorphism::new(lang_of(&m.from)?, lang_of(&m.to)?, m.map.clone())
            .map_err(|err| CliError::context(format!("morphism `{}`", e.morphism), err))?;
        inst.check_morphism(&sigma)
            .map_err(|err| CliError::context(format!("morphism `{}`", e.morphism), err))?;
        if semantic {
            struc_morphisms.push(I::struc_morphism(&e.morphism, sigma, m.instances.as_ref())?);
        } else {
            if m.instances.is_some() {
                return Err(CliError::Invalid(format!(
                    "morphism `{}`: formal documents have no instance maps",
                    e.morphism
                )));
            }
            sigmas.push(sigma);
        }
    }

    let system = if semantic {
        let logics = nodes
            .iter()
            .zip(specs)
            .map(|(n, t)| {
                let m = structures[n.structure.as_deref().expect("semantic")].clone();
                Logic::new(&inst, m, t)
            })
            .collect::<Result<Vec<_>, _>>()?;
        SystemKind::Semantic(InformationSystem::new(&engine, shape, logics, struc_morphisms)?)
    } else {
        SystemKind::Formal(FormalSystem::new(&engine, shape, specs, sigmas)?)
    };
    Ok(Built { inst, bound, system })
}
