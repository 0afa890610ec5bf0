//! The contract every logical system implements.
//!
//! An institution supplies languages, sentences over a language, structures
//! over a language, and satisfaction between them. Language morphisms move
//! sentences forward (`translate`) and structures backward (`reduct`), and
//! satisfaction is invariant under that change of notation:
//!
//! ```text
//! reduct(σ, M2) ⊨ s1   iff   M2 ⊨ translate(σ, s1)
//! ```
//!
//! Consequence is semantic and bounded: every institution enumerates a finite,
//! deterministic list of structures per language and bound, and a finite
//! sentence universe per language. All downstream operators (consequence,
//! flows, fusion) are computed against these finite surrogates.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::num::NonZeroUsize;

use crate::colimit::{colimit_of_finite_sets, ColimitClass, FiniteSetDiagram};
use crate::error::{Error, Result};
use crate::shape::ShapeGraph;

/// A language: a finite, canonically ordered vocabulary of named symbols.
pub trait Vocabulary: Clone + Eq + Ord + Hash + Debug + Display {
    /// Symbols in canonical (lexicographic) order.
    fn symbols(&self) -> Vec<String>;
    fn contains(&self, symbol: &str) -> bool;
}

/// A symbol map between two languages, total on the source.
///
/// Equality is extensional: two morphisms are equal when they have the same
/// endpoints and the same symbol map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LanguageMorphism<L> {
    source: L,
    target: L,
    map: BTreeMap<String, String>,
}

impl<L: Vocabulary> LanguageMorphism<L> {
    pub fn new(source: L, target: L, map: BTreeMap<String, String>) -> Result<Self> {
        for sym in source.symbols() {
            match map.get(&sym) {
                None => return Err(Error::NotTotal(sym)),
                Some(img) if !target.contains(img) => {
                    return Err(Error::ImageOutsideTarget {
                        symbol: sym,
                        image: img.clone(),
                    })
                }
                Some(_) => {}
            }
        }
        if let Some(extra) = map.keys().find(|k| !source.contains(k)) {
            return Err(Error::UnknownSourceSymbol { symbol: extra.clone() });
        }
        Ok(Self { source, target, map })
    }

    /// Convenience constructor from string pairs.
    pub fn from_pairs<'a>(source: L, target: L, pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let map = pairs.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        Self::new(source, target, map)
    }

    pub fn identity(lang: &L) -> Self {
        let map = lang.symbols().into_iter().map(|s| (s.clone(), s)).collect();
        Self {
            source: lang.clone(),
            target: lang.clone(),
            map,
        }
    }

    pub fn source(&self) -> &L {
        &self.source
    }

    pub fn target(&self) -> &L {
        &self.target
    }

    pub fn map(&self) -> &BTreeMap<String, String> {
        &self.map
    }

    /// Image of a source symbol.
    pub fn apply(&self, symbol: &str) -> Option<&str> {
        self.map.get(symbol).map(String::as_str)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.map.iter().all(|(a, b)| a == b)
    }

    /// Diagrammatic composite: `self` followed by `next`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        if self.target != next.source {
            return Err(Error::EndpointMismatch {
                expected: self.target.to_string(),
                found: next.source.to_string(),
            });
        }
        let map = self.map.iter().map(|(a, b)| (a.clone(), next.map[b].clone())).collect();
        Ok(Self {
            source: self.source.clone(),
            target: next.target.clone(),
            map,
        })
    }
}

/// `compose(σ1, σ2)` is σ1 followed by σ2; requires `target(σ1) = source(σ2)`.
pub fn compose<L: Vocabulary>(
    first: &LanguageMorphism<L>,
    second: &LanguageMorphism<L>,
) -> Result<LanguageMorphism<L>> {
    first.then(second)
}

impl<L: Display> Display for LanguageMorphism<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|(a, b)| format!("{a}↦{b}")).collect();
        write!(f, "{} → {} [{}]", self.source, self.target, parts.join(", "))
    }
}

/// Enumeration bound: carrier size for first-order structures, number of
/// instance rows for classifications.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bound(NonZeroUsize);

impl Bound {
    pub const DEFAULT: Bound = Bound(NonZeroUsize::new(3).unwrap());

    pub fn new(n: usize) -> Result<Self> {
        NonZeroUsize::new(n).map(Bound).ok_or(Error::ZeroBound)
    }

    pub fn get(self) -> usize {
        self.0.get()
    }
}

impl Default for Bound {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type StructureIter<'a, S> = Box<dyn Iterator<Item = S> + 'a>;

/// A logical system with finite, bounded semantics.
pub trait Institution: Clone + Debug + PartialEq + Eq {
    type Language: Vocabulary;
    type Sentence: Clone + Ord + Hash + Debug + Display;
    type Structure: Clone + Eq + Debug + Display;
    /// Morphisms between indexed structures. Their underlying language
    /// morphism is given by [`Institution::struc_language`].
    type StrucMorphism: Clone + Eq + Debug;

    fn name(&self) -> &'static str;

    /// Institution-specific well-formedness of a language morphism (arity
    /// preservation, for example).
    fn check_morphism(&self, _sigma: &LanguageMorphism<Self::Language>) -> Result<()> {
        Ok(())
    }

    fn check_sentence(&self, lang: &Self::Language, s: &Self::Sentence) -> Result<()>;

    fn parse_sentence(&self, lang: &Self::Language, text: &str) -> Result<Self::Sentence>;

    /// The finite sentence universe of a language, canonically sorted.
    fn sentence_universe(&self, lang: &Self::Language) -> Result<Vec<Self::Sentence>>;

    /// Membership in the sentence universe of `lang`.
    fn in_universe(&self, lang: &Self::Language, s: &Self::Sentence) -> Result<bool> {
        if self.check_sentence(lang, s).is_err() {
            return Ok(false);
        }
        Ok(self.sentence_universe(lang)?.binary_search(s).is_ok())
    }

    /// All structures over `lang` within `bound`, in canonical order.
    fn structures<'a>(&'a self, lang: &'a Self::Language, bound: Bound) -> Result<StructureIter<'a, Self::Structure>>;

    /// A subfamily of [`Institution::structures`] that refutes every sentence
    /// refuted by some model enumerated at `bound`, for any specification.
    /// Consequence and entailment only look at these.
    fn refutation_basis<'a>(
        &'a self,
        lang: &'a Self::Language,
        bound: Bound,
    ) -> Result<StructureIter<'a, Self::Structure>> {
        self.structures(lang, bound)
    }

    fn structure_language(&self, m: &Self::Structure) -> Self::Language;

    /// Satisfaction. Callers guarantee `s` is over the language of `m`.
    fn satisfies(&self, m: &Self::Structure, s: &Self::Sentence) -> bool;

    fn translate(&self, sigma: &LanguageMorphism<Self::Language>, s: &Self::Sentence) -> Self::Sentence;

    fn reduct(&self, sigma: &LanguageMorphism<Self::Language>, m: &Self::Structure) -> Self::Structure;

    fn struc_language<'m>(&self, f: &'m Self::StrucMorphism) -> &'m LanguageMorphism<Self::Language>;

    /// Institution-specific conditions on a structure morphism beyond
    /// satisfaction preservation (the infomorphism condition, for example).
    fn check_struc_morphism(
        &self,
        f: &Self::StrucMorphism,
        source: &Self::Structure,
        target: &Self::Structure,
    ) -> Result<()>;

    fn identity_struc(&self, m: &Self::Structure) -> Self::StrucMorphism;

    /// Diagrammatic composite: `first` followed by `second`.
    fn compose_struc(&self, first: &Self::StrucMorphism, second: &Self::StrucMorphism) -> Result<Self::StrucMorphism>;

    /// Builds the colimit language from the classes of the symbol colimit.
    fn merge_language(&self, classes: &[ColimitClass], node_languages: &[&Self::Language]) -> Result<Self::Language>;

    /// Core structure of the minimal cover of a distributed system, given the
    /// colimit language and the language injections.
    fn structure_colimit(
        &self,
        shape: &ShapeGraph,
        structures: &[&Self::Structure],
        morphisms: &[&Self::StrucMorphism],
        core_language: &Self::Language,
        injections: &[LanguageMorphism<Self::Language>],
    ) -> Result<(Self::Structure, Vec<Self::StrucMorphism>)>;

    /// Lifts a language-level refinement `rho` between two channel cores to a
    /// structure morphism, using the channel components.
    fn refinement(
        &self,
        rho: LanguageMorphism<Self::Language>,
        min_core: &Self::Structure,
        min_components: &[Self::StrucMorphism],
        other_core: &Self::Structure,
        other_components: &[Self::StrucMorphism],
    ) -> Result<Self::StrucMorphism>;
}

/// A core language with one injection per node.
pub type LanguageCocone<L> = (L, Vec<LanguageMorphism<L>>);

/// Colimit of a diagram of languages.
pub fn language_colimit<I: Institution>(
    inst: &I,
    shape: &ShapeGraph,
    languages: &[&I::Language],
    morphisms: &[&LanguageMorphism<I::Language>],
) -> Result<LanguageCocone<I::Language>> {
    if languages.len() != shape.node_count() || morphisms.len() != shape.edges().len() {
        return Err(Error::ShapeMismatch("language diagram does not match its shape".into()));
    }
    for (edge, m) in shape.edges().iter().zip(morphisms) {
        expect_language(languages[edge.source], m.source())?;
        expect_language(languages[edge.target], m.target())?;
    }
    let diagram = FiniteSetDiagram {
        shape,
        sets: languages.iter().map(|l| l.symbols().into_iter().collect()).collect(),
        functions: morphisms.iter().map(|m| m.map().clone()).collect(),
    };
    let colimit = colimit_of_finite_sets(&diagram)?;
    let core = inst.merge_language(&colimit.classes, languages)?;
    let injections = languages
        .iter()
        .zip(colimit.injections)
        .map(|(l, inj)| LanguageMorphism::new((*l).clone(), core.clone(), inj))
        .collect::<Result<Vec<_>>>()?;
    for inj in &injections {
        inst.check_morphism(inj)?;
    }
    Ok((core, injections))
}

pub(crate) fn expect_language<L: Vocabulary>(expected: &L, found: &L) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::EndpointMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        })
    }
}

/// Checks `reduct(σ, M2) ⊨ s1 ⇔ M2 ⊨ translate(σ, s1)` for every sentence of
/// the source universe.
pub fn check_satisfaction_invariance<I: Institution>(
    inst: &I,
    sigma: &LanguageMorphism<I::Language>,
    target_structure: &I::Structure,
) -> Result<bool> {
    expect_language(sigma.target(), &inst.structure_language(target_structure))?;
    let reduct = inst.reduct(sigma, target_structure);
    Ok(invariance_counterexample(inst, sigma, &reduct, target_structure)?.is_none())
}

/// First source-universe sentence on which the given `reduct` of
/// `target_structure` disagrees with the translated sentence, if any.
pub fn invariance_counterexample<I: Institution>(
    inst: &I,
    sigma: &LanguageMorphism<I::Language>,
    reduct: &I::Structure,
    target_structure: &I::Structure,
) -> Result<Option<I::Sentence>> {
    for s in inst.sentence_universe(sigma.source())? {
        let translated = inst.translate(sigma, &s);
        if inst.satisfies(reduct, &s) != inst.satisfies(target_structure, &translated) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}
