//! Specifications, bounded consequence and flow along language morphisms.
//!
//! `T1 ≤ T2` means `T1` is more specialized: it entails every sentence of
//! `T2`. Meets are unions and joins are intersections of consequences.
//! `dir(σ)` is the direct image of sentences and `inv(σ)(T2)` is the set of
//! source universe sentences whose translation `T2` entails; they form an
//! adjunction `inv(σ)(T2) ≤ T1 ⇔ T2 ≤ dir(σ)(T1)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::institution::{expect_language, Bound, Institution, LanguageMorphism};

/// A language and a finite set of sentences from its universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Specification<I: Institution> {
    language: I::Language,
    sentences: BTreeSet<I::Sentence>,
}

impl<I: Institution> Specification<I> {
    /// Checks every sentence is in the universe of `language`.
    pub fn new(inst: &I, language: I::Language, sentences: impl IntoIterator<Item = I::Sentence>) -> Result<Self> {
        let sentences: BTreeSet<_> = sentences.into_iter().collect();
        for s in &sentences {
            inst.check_sentence(&language, s)?;
            if !inst.in_universe(&language, s)? {
                return Err(Error::NotInUniverse(s.to_string()));
            }
        }
        Ok(Self { language, sentences })
    }

    /// Parses each line of `texts` as a sentence over `language`.
    pub fn parse<'t>(inst: &I, language: I::Language, texts: impl IntoIterator<Item = &'t str>) -> Result<Self> {
        let sentences = texts
            .into_iter()
            .map(|t| inst.parse_sentence(&language, t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(inst, language, sentences)
    }

    pub fn empty(language: I::Language) -> Self {
        Self {
            language,
            sentences: BTreeSet::new(),
        }
    }

    /// Sentences are trusted to lie in the universe.
    pub(crate) fn from_parts(language: I::Language, sentences: BTreeSet<I::Sentence>) -> Self {
        Self { language, sentences }
    }

    pub fn language(&self) -> &I::Language {
        &self.language
    }

    pub fn sentences(&self) -> &BTreeSet<I::Sentence> {
        &self.sentences
    }

    pub fn contains(&self, s: &I::Sentence) -> bool {
        self.sentences.contains(s)
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }
}

impl<I: Institution> fmt::Display for Specification<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{", self.language)?;
        for (i, s) in self.sentences.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, " {s}")?;
        }
        write!(f, " }}")
    }
}

/// Outcome of an entailment query. `witness` is the first counter-model in
/// canonical order and is present exactly when `holds` is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntailmentReport<S> {
    pub holds: bool,
    pub witness: Option<S>,
}

/// Bounded semantic consequence for one institution.
#[derive(Debug, Clone, Copy)]
pub struct Engine<'a, I: Institution> {
    pub inst: &'a I,
    pub bound: Bound,
}

impl<'a, I: Institution> Engine<'a, I> {
    pub fn new(inst: &'a I, bound: Bound) -> Self {
        Self { inst, bound }
    }

    fn is_model(&self, m: &I::Structure, t: &Specification<I>) -> bool {
        t.sentences.iter().all(|s| self.inst.satisfies(m, s))
    }

    /// Flags which candidates hold in every model of `t`. Candidates must be
    /// over `t`'s language.
    fn entailed_mask(&self, t: &Specification<I>, candidates: &[I::Sentence]) -> Result<Vec<bool>> {
        let mut alive = vec![true; candidates.len()];
        let mut remaining = candidates.len();
        for m in self.inst.refutation_basis(&t.language, self.bound)? {
            if remaining == 0 {
                break;
            }
            if !self.is_model(&m, t) {
                continue;
            }
            for (flag, s) in alive.iter_mut().zip(candidates) {
                if *flag && !self.inst.satisfies(&m, s) {
                    *flag = false;
                    remaining -= 1;
                }
            }
        }
        Ok(alive)
    }

    /// `T•`: the universe sentences satisfied by every model of `T`.
    pub fn consequence(&self, t: &Specification<I>) -> Result<Specification<I>> {
        let universe = self.inst.sentence_universe(&t.language)?;
        let mask = self.entailed_mask(t, &universe)?;
        let sentences = universe
            .into_iter()
            .zip(mask)
            .filter(|(_, keep)| *keep)
            .map(|(s, _)| s)
            .collect();
        Ok(Specification::from_parts(t.language.clone(), sentences))
    }

    /// Whether every model of `t` satisfies `s`; `s` may lie outside the
    /// universe.
    pub fn entails(&self, t: &Specification<I>, s: &I::Sentence) -> Result<EntailmentReport<I::Structure>> {
        self.inst.check_sentence(&t.language, s)?;
        for m in self.inst.refutation_basis(&t.language, self.bound)? {
            if self.is_model(&m, t) && !self.inst.satisfies(&m, s) {
                return Ok(EntailmentReport {
                    holds: false,
                    witness: Some(m),
                });
            }
        }
        Ok(EntailmentReport {
            holds: true,
            witness: None,
        })
    }

    pub fn entails_all<'s>(
        &self,
        t: &Specification<I>,
        sentences: impl IntoIterator<Item = &'s I::Sentence>,
    ) -> Result<bool>
    where
        I::Sentence: 's,
    {
        let candidates: Vec<I::Sentence> = sentences.into_iter().cloned().collect();
        for s in &candidates {
            self.inst.check_sentence(&t.language, s)?;
        }
        Ok(self.entailed_mask(t, &candidates)?.into_iter().all(|b| b))
    }

    /// First sentence of `t2` not entailed by `t1`.
    pub fn leq_violation(&self, t1: &Specification<I>, t2: &Specification<I>) -> Result<Option<I::Sentence>> {
        same_language(t1, t2)?;
        let candidates: Vec<I::Sentence> = t2.sentences.iter().cloned().collect();
        let mask = self.entailed_mask(t1, &candidates)?;
        Ok(candidates.into_iter().zip(mask).find(|(_, ok)| !ok).map(|(s, _)| s))
    }

    /// `T1 ≤ T2`: `T1` entails every sentence of `T2`.
    pub fn leq(&self, t1: &Specification<I>, t2: &Specification<I>) -> Result<bool> {
        Ok(self.leq_violation(t1, t2)?.is_none())
    }

    pub fn equivalent(&self, t1: &Specification<I>, t2: &Specification<I>) -> Result<bool> {
        Ok(self.leq(t1, t2)? && self.leq(t2, t1)?)
    }

    pub fn is_closed(&self, t: &Specification<I>) -> Result<bool> {
        Ok(self.consequence(t)?.sentences == t.sentences)
    }

    /// Greatest lower bound: the union of the sentence sets.
    pub fn meet(&self, specs: &[&Specification<I>]) -> Result<Specification<I>> {
        let first = specs.first().ok_or(Error::EmptyList)?;
        let mut sentences = BTreeSet::new();
        for t in specs {
            same_language(first, t)?;
            sentences.extend(t.sentences.iter().cloned());
        }
        Ok(Specification::from_parts(first.language.clone(), sentences))
    }

    /// Least upper bound: the intersection of the consequences.
    pub fn join(&self, specs: &[&Specification<I>]) -> Result<Specification<I>> {
        let first = specs.first().ok_or(Error::EmptyList)?;
        let mut acc: Option<BTreeSet<I::Sentence>> = None;
        for t in specs {
            same_language(first, t)?;
            let closed = self.consequence(t)?.sentences;
            acc = Some(match acc {
                None => closed,
                Some(a) => a.intersection(&closed).cloned().collect(),
            });
        }
        Ok(Specification::from_parts(
            first.language.clone(),
            acc.unwrap_or_default(),
        ))
    }

    /// Direct image of `t1` along `sigma`.
    pub fn dir(&self, sigma: &LanguageMorphism<I::Language>, t1: &Specification<I>) -> Result<Specification<I>> {
        expect_language(sigma.source(), &t1.language)?;
        let sentences = t1.sentences.iter().map(|s| self.inst.translate(sigma, s)).collect();
        Ok(Specification::from_parts(sigma.target().clone(), sentences))
    }

    /// Source universe sentences whose translation `t2` entails.
    pub fn inv(&self, sigma: &LanguageMorphism<I::Language>, t2: &Specification<I>) -> Result<Specification<I>> {
        expect_language(sigma.target(), &t2.language)?;
        let universe = self.inst.sentence_universe(sigma.source())?;
        let translated: Vec<I::Sentence> = universe.iter().map(|s| self.inst.translate(sigma, s)).collect();
        let mask = self.entailed_mask(t2, &translated)?;
        let sentences = universe
            .into_iter()
            .zip(mask)
            .filter(|(_, keep)| *keep)
            .map(|(s, _)| s)
            .collect();
        Ok(Specification::from_parts(sigma.source().clone(), sentences))
    }

    /// Whether `sigma: T1 → T2` preserves entailment. Both formulations are
    /// computed: `T1 ⊢ s ⇒ T2 ⊢ σ(s)` over the universe, and
    /// `T2 ≤ dir(σ)(T1)`. They must agree.
    pub fn is_spec_morphism(
        &self,
        sigma: &LanguageMorphism<I::Language>,
        t1: &Specification<I>,
        t2: &Specification<I>,
    ) -> Result<bool> {
        expect_language(sigma.source(), &t1.language)?;
        expect_language(sigma.target(), &t2.language)?;
        let closed = self.consequence(t1)?;
        let images: Vec<I::Sentence> = closed.sentences.iter().map(|s| self.inst.translate(sigma, s)).collect();
        let preserving = self.entailed_mask(t2, &images)?.into_iter().all(|b| b);
        let ordered = self.leq(t2, &self.dir(sigma, t1)?)?;
        if preserving != ordered {
            return Err(Error::Inconsistent(format!(
                "specification morphism formulations disagree on {sigma}"
            )));
        }
        Ok(preserving)
    }

    /// First sentence of `t1` whose translation `t2` does not entail.
    pub fn spec_morphism_violation(
        &self,
        sigma: &LanguageMorphism<I::Language>,
        t1: &Specification<I>,
        t2: &Specification<I>,
    ) -> Result<Option<I::Sentence>> {
        expect_language(sigma.source(), &t1.language)?;
        expect_language(sigma.target(), &t2.language)?;
        let images: Vec<I::Sentence> = t1.sentences.iter().map(|s| self.inst.translate(sigma, s)).collect();
        let mask = self.entailed_mask(t2, &images)?;
        Ok(t1
            .sentences
            .iter()
            .zip(mask)
            .find(|(_, ok)| !ok)
            .map(|(s, _)| s.clone()))
    }
}

fn same_language<I: Institution>(a: &Specification<I>, b: &Specification<I>) -> Result<()> {
    if a.language == b.language {
        Ok(())
    } else {
        Err(Error::LanguageMismatch {
            left: a.language.to_string(),
            right: b.language.to_string(),
        })
    }
}
