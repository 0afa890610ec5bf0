//! Structures, logics and their flow along structure morphisms.
//!
//! The intent `M^Σ` of a structure is the set of universe sentences it
//! satisfies. Structures are ordered by reverse inclusion of intents, in line
//! with the specification order. A logic `⟨Σ, M, T⟩` is sound when `M`
//! satisfies every consequence of `T` and complete when every sentence of
//! `M^Σ` is a consequence of `T`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::institution::{expect_language, Institution, LanguageMorphism};
use crate::spec_flow::{Engine, Specification};

/// A structure paired with its language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedStructure<I: Institution> {
    language: I::Language,
    structure: I::Structure,
}

impl<I: Institution> IndexedStructure<I> {
    pub fn new(inst: &I, structure: I::Structure) -> Self {
        Self {
            language: inst.structure_language(&structure),
            structure,
        }
    }

    pub fn language(&self) -> &I::Language {
        &self.language
    }

    pub fn structure(&self) -> &I::Structure {
        &self.structure
    }
}

/// A language, a structure and a specification over the same language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Logic<I: Institution> {
    structure: I::Structure,
    spec: Specification<I>,
}

impl<I: Institution> Logic<I> {
    pub fn new(inst: &I, structure: I::Structure, spec: Specification<I>) -> Result<Self> {
        expect_language(spec.language(), &inst.structure_language(&structure))?;
        Ok(Self { structure, spec })
    }

    pub fn language(&self) -> &I::Language {
        self.spec.language()
    }

    pub fn structure(&self) -> &I::Structure {
        &self.structure
    }

    pub fn spec(&self) -> &Specification<I> {
        &self.spec
    }

    pub fn with_spec(&self, spec: Specification<I>) -> Self {
        debug_assert!(spec.language() == self.spec.language());
        Self {
            structure: self.structure.clone(),
            spec,
        }
    }
}

impl<I: Institution> fmt::Display for Logic<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}⟩", self.structure, self.spec)
    }
}

/// A base logic and a sound logic sharing language and specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeLogic<I: Institution> {
    pub base: Logic<I>,
    pub sound: Logic<I>,
}

impl<I: Institution> Engine<'_, I> {
    /// `M^Σ`: the universe sentences `m` satisfies.
    pub fn intent(&self, m: &I::Structure) -> Result<Specification<I>> {
        let lang = self.inst.structure_language(m);
        let sentences = self
            .inst
            .sentence_universe(&lang)?
            .into_iter()
            .filter(|s| self.inst.satisfies(m, s))
            .collect();
        Ok(Specification::from_parts(lang, sentences))
    }

    /// `M1 ≤ M2` iff `M1^Σ ⊇ M2^Σ`.
    pub fn structure_leq(&self, m1: &I::Structure, m2: &I::Structure) -> Result<bool> {
        expect_language(&self.inst.structure_language(m1), &self.inst.structure_language(m2))?;
        let (i1, i2) = (self.intent(m1)?, self.intent(m2)?);
        Ok(i1.sentences().is_superset(i2.sentences()))
    }

    /// First universe sentence `m1` satisfies whose translation `m2` refutes.
    pub fn structure_morphism_violation(
        &self,
        sigma: &LanguageMorphism<I::Language>,
        m1: &I::Structure,
        m2: &I::Structure,
    ) -> Result<Option<I::Sentence>> {
        expect_language(sigma.source(), &self.inst.structure_language(m1))?;
        expect_language(sigma.target(), &self.inst.structure_language(m2))?;
        Ok(self
            .inst
            .sentence_universe(sigma.source())?
            .into_iter()
            .find(|s| self.inst.satisfies(m1, s) && !self.inst.satisfies(m2, &self.inst.translate(sigma, s))))
    }

    /// Whether `sigma` preserves satisfaction from `m1` to `m2`. Checked
    /// directly and as `reduct(σ, M2) ≤ M1`; the two must agree.
    pub fn is_structure_morphism(
        &self,
        sigma: &LanguageMorphism<I::Language>,
        m1: &I::Structure,
        m2: &I::Structure,
    ) -> Result<bool> {
        let direct = self.structure_morphism_violation(sigma, m1, m2)?.is_none();
        let via_reduct = self.structure_leq(&self.inst.reduct(sigma, m2), m1)?;
        if direct != via_reduct {
            return Err(Error::Inconsistent(format!(
                "structure morphism formulations disagree on {sigma}"
            )));
        }
        Ok(direct)
    }

    fn require_structure_morphism(
        &self,
        sigma: &LanguageMorphism<I::Language>,
        m1: &I::Structure,
        m2: &I::Structure,
    ) -> Result<()> {
        match self.structure_morphism_violation(sigma, m1, m2)? {
            Some(s) => Err(Error::NotStructureMorphism {
                sentence: s.to_string(),
            }),
            None => Ok(()),
        }
    }

    /// First consequence of the theory that the structure refutes.
    pub fn soundness_violation(&self, l: &Logic<I>) -> Result<Option<I::Sentence>> {
        Ok(self
            .consequence(&l.spec)?
            .sentences()
            .iter()
            .find(|s| !self.inst.satisfies(&l.structure, s))
            .cloned())
    }

    pub fn is_sound(&self, l: &Logic<I>) -> Result<bool> {
        Ok(self.soundness_violation(l)?.is_none())
    }

    /// `T• ≤ M^Σ`.
    pub fn is_complete(&self, l: &Logic<I>) -> Result<bool> {
        let closed = self.consequence(&l.spec)?;
        Ok(closed.sentences().is_superset(self.intent(&l.structure)?.sentences()))
    }

    /// The natural logic `⟨Σ, M, M^Σ⟩`.
    pub fn nat(&self, m: &I::Structure) -> Result<Logic<I>> {
        Ok(Logic {
            structure: m.clone(),
            spec: self.intent(m)?,
        })
    }

    /// The restriction `⟨Σ, M, M^Σ ∩ T•⟩`.
    pub fn res(&self, l: &Logic<I>) -> Result<Logic<I>> {
        let intent = self.intent(&l.structure)?;
        let closed = self.consequence(&l.spec)?;
        let sentences: BTreeSet<_> = intent.sentences().intersection(closed.sentences()).cloned().collect();
        Ok(l.with_spec(Specification::from_parts(l.language().clone(), sentences)))
    }

    /// Inclusion of a sound logic into all logics.
    pub fn inc(&self, l: &Logic<I>) -> Result<Logic<I>> {
        match self.soundness_violation(l)? {
            Some(s) => Err(Error::NotSound(s.to_string())),
            None => Ok(l.clone()),
        }
    }

    /// Order within the fiber over a language: structures and theories are
    /// both compared. For logics sharing a structure this is the
    /// specification order.
    pub fn logic_leq(&self, l1: &Logic<I>, l2: &Logic<I>) -> Result<bool> {
        if l1.structure == l2.structure {
            return self.leq(&l1.spec, &l2.spec);
        }
        Ok(self.structure_leq(&l1.structure, &l2.structure)? && self.leq(&l1.spec, &l2.spec)?)
    }

    /// `⟨Σ2, M2, σ(T1)⟩`.
    pub fn dir_logic(
        &self,
        sigma: &LanguageMorphism<I::Language>,
        l1: &Logic<I>,
        m2: &I::Structure,
    ) -> Result<Logic<I>> {
        self.require_structure_morphism(sigma, &l1.structure, m2)?;
        Ok(Logic {
            structure: m2.clone(),
            spec: self.dir(sigma, &l1.spec)?,
        })
    }

    /// `⟨Σ1, M1, σ⁻¹(T2•)⟩`.
    pub fn inv_logic(
        &self,
        sigma: &LanguageMorphism<I::Language>,
        m1: &I::Structure,
        l2: &Logic<I>,
    ) -> Result<Logic<I>> {
        self.require_structure_morphism(sigma, m1, &l2.structure)?;
        Ok(Logic {
            structure: m1.clone(),
            spec: self.inv(sigma, &l2.spec)?,
        })
    }

    /// Inverse flow of sound logics: `σ⁻¹(T2•) ∩ M1^Σ`.
    pub fn inv_sound(
        &self,
        sigma: &LanguageMorphism<I::Language>,
        m1: &I::Structure,
        l2: &Logic<I>,
    ) -> Result<Logic<I>> {
        if let Some(s) = self.soundness_violation(l2)? {
            return Err(Error::NotSound(s.to_string()));
        }
        let pulled = self.inv_logic(sigma, m1, l2)?;
        let intent = self.intent(m1)?;
        let sentences = pulled
            .spec
            .sentences()
            .intersection(intent.sentences())
            .cloned()
            .collect();
        Ok(pulled.with_spec(Specification::from_parts(sigma.source().clone(), sentences)))
    }

    /// Checks the composite invariants and describes the first violation.
    pub fn composite_violation(&self, c: &CompositeLogic<I>) -> Result<Option<String>> {
        if c.base.language() != c.sound.language() {
            return Ok(Some(format!(
                "languages differ: {} vs {}",
                c.base.language(),
                c.sound.language()
            )));
        }
        if c.base.spec != c.sound.spec {
            return Ok(Some("base and sound part have different specifications".into()));
        }
        if let Some(s) = self.soundness_violation(&c.sound)? {
            return Ok(Some(format!("sound part is not sound: it refutes `{s}`")));
        }
        let sound_intent = self.intent(&c.sound.structure)?;
        if let Some(s) = self
            .intent(&c.base.structure)?
            .sentences()
            .iter()
            .find(|s| !sound_intent.contains(s))
        {
            return Ok(Some(format!(
                "base structure satisfies `{s}` but the sound structure does not"
            )));
        }
        Ok(None)
    }

    pub fn validate_composite(&self, c: &CompositeLogic<I>) -> Result<bool> {
        Ok(self.composite_violation(c)?.is_none())
    }
}
