//! The logical system of information flow.
//!
//! Languages are finite sets of type symbols, sentences are sequents
//! `Γ ⊢ Δ`, structures are classifications and structure morphisms are
//! infomorphisms. A classification satisfies `Γ ⊢ Δ` when every instance
//! classified by all of `Γ` is classified by some member of `Δ`.
//!
//! Satisfaction only depends on the set of realized type rows, so bounded
//! enumeration ranges over row-set classifications. The bound is the maximum
//! number of rows. Because satisfaction quantifies over instances one at a
//! time, a row-set refutes `Γ ⊢ Δ` exactly when one of its rows does, and the
//! single-row classifications form a refutation basis at every bound.

mod colimit;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use colimit::classification_colimit;

use crate::colimit::ColimitClass;
use crate::error::{Error, Result};
use crate::institution::{Bound, Institution, LanguageMorphism, StructureIter, Vocabulary};
use crate::shape::ShapeGraph;

pub type TypeMap = LanguageMorphism<IfLanguage>;

/// A finite set of type symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IfLanguage(BTreeSet<String>);

impl IfLanguage {
    pub fn new<T: Into<String>>(types: impl IntoIterator<Item = T>) -> Self {
        Self(types.into_iter().map(Into::into).collect())
    }

    pub fn types(&self) -> &BTreeSet<String> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn row_of_mask(&self, mask: u64) -> BTreeSet<String> {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, t)| t.clone())
            .collect()
    }
}

impl Vocabulary for IfLanguage {
    fn symbols(&self) -> Vec<String> {
        self.0.iter().cloned().collect()
    }

    fn contains(&self, symbol: &str) -> bool {
        self.0.contains(symbol)
    }
}

impl fmt::Display for IfLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_set(f, &self.0)
    }
}

fn write_set(f: &mut fmt::Formatter<'_>, set: &BTreeSet<String>) -> fmt::Result {
    write!(f, "{{")?;
    for (i, x) in set.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "}}")
}

fn set_label(set: &BTreeSet<String>) -> String {
    format!("{{{}}}", set.iter().cloned().collect::<Vec<_>>().join(","))
}

/// A sequent `Γ ⊢ Δ` of type symbols. Written `a, b |- c` in text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub antecedent: BTreeSet<String>,
    pub succedent: BTreeSet<String>,
}

impl Sequent {
    pub fn new<A, B>(antecedent: A, succedent: B) -> Self
    where
        A: IntoIterator,
        A::Item: Into<String>,
        B: IntoIterator,
        B::Item: Into<String>,
    {
        Self {
            antecedent: antecedent.into_iter().map(Into::into).collect(),
            succedent: succedent.into_iter().map(Into::into).collect(),
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = &String> {
        self.antecedent.iter().chain(&self.succedent)
    }

    /// Parses `a, b |- c, d`; either side may be empty.
    pub fn parse(text: &str) -> Result<Self> {
        let Some((lhs, rhs)) = text.split_once("|-") else {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!("expected `|-` in sequent `{text}`"),
            });
        };
        let side = |part: &str, offset: usize| -> Result<BTreeSet<String>> {
            let mut out = BTreeSet::new();
            if part.trim().is_empty() {
                return Ok(out);
            }
            for item in part.split(',') {
                let name = item.trim();
                if name.is_empty() || name.contains(char::is_whitespace) || name.contains("|-") {
                    return Err(Error::Parse {
                        line: 1,
                        column: offset + 1,
                        message: format!("bad type symbol `{name}`"),
                    });
                }
                out.insert(name.to_string());
            }
            Ok(out)
        };
        Ok(Self {
            antecedent: side(lhs, 0)?,
            succedent: side(rhs, lhs.len() + 2)?,
        })
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(", ");
        match (self.antecedent.is_empty(), self.succedent.is_empty()) {
            (true, true) => write!(f, "|-"),
            (true, false) => write!(f, "|- {}", join(&self.succedent)),
            (false, true) => write!(f, "{} |-", join(&self.antecedent)),
            (false, false) => write!(f, "{} |- {}", join(&self.antecedent), join(&self.succedent)),
        }
    }
}

/// Instances, types and an incidence relation between them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Classification {
    types: BTreeSet<String>,
    rows: BTreeMap<String, BTreeSet<String>>,
}

impl Classification {
    /// Builds a classification from each instance's row of types.
    pub fn new(types: impl IntoIterator<Item = String>, rows: BTreeMap<String, BTreeSet<String>>) -> Result<Self> {
        let types: BTreeSet<String> = types.into_iter().collect();
        for (x, row) in &rows {
            if let Some(y) = row.iter().find(|y| !types.contains(*y)) {
                return Err(Error::InvalidClassification(format!(
                    "instance `{x}` is classified by unknown type `{y}`"
                )));
            }
        }
        Ok(Self { types, rows })
    }

    /// Builds a classification from explicit incidence pairs `(instance, type)`.
    pub fn from_incidence<'a>(
        instances: impl IntoIterator<Item = &'a str>,
        types: impl IntoIterator<Item = &'a str>,
        incidence: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut rows: BTreeMap<String, BTreeSet<String>> = instances
            .into_iter()
            .map(|x| (x.to_string(), BTreeSet::new()))
            .collect();
        for (x, y) in incidence {
            rows.get_mut(x)
                .ok_or_else(|| Error::InvalidClassification(format!("incidence names unknown instance `{x}`")))?
                .insert(y.to_string());
        }
        Self::new(types.into_iter().map(str::to_string), rows)
    }

    /// The row-set classification whose instances are the given rows, each
    /// classified by exactly its row. Instances are named after their row.
    pub fn from_rows(types: &IfLanguage, rows: impl IntoIterator<Item = BTreeSet<String>>) -> Self {
        let rows = rows.into_iter().map(|r| (set_label(&r), r)).collect();
        Self {
            types: types.0.clone(),
            rows,
        }
    }

    pub fn types(&self) -> &BTreeSet<String> {
        &self.types
    }

    pub fn language(&self) -> IfLanguage {
        IfLanguage(self.types.clone())
    }

    pub fn instances(&self) -> impl Iterator<Item = &String> {
        self.rows.keys()
    }

    pub fn instance_count(&self) -> usize {
        self.rows.len()
    }

    pub fn has_instance(&self, x: &str) -> bool {
        self.rows.contains_key(x)
    }

    pub fn row(&self, x: &str) -> Option<&BTreeSet<String>> {
        self.rows.get(x)
    }

    pub fn rows(&self) -> &BTreeMap<String, BTreeSet<String>> {
        &self.rows
    }

    pub fn classifies(&self, x: &str, y: &str) -> bool {
        self.rows.get(x).is_some_and(|r| r.contains(y))
    }

    /// The set of realized type rows.
    pub fn row_set(&self) -> BTreeSet<BTreeSet<String>> {
        self.rows.values().cloned().collect()
    }

    /// The row-set abstraction: one instance per distinct row.
    pub fn row_set_abstraction(&self) -> Classification {
        Self::from_rows(&self.language(), self.row_set())
    }

    pub fn satisfies(&self, s: &Sequent) -> bool {
        self.rows
            .values()
            .all(|row| !s.antecedent.is_subset(row) || s.succedent.iter().any(|y| row.contains(y)))
    }

    /// Flips the incidence of one (instance, type) pair.
    pub fn with_flipped(&self, x: &str, y: &str) -> Classification {
        let mut out = self.clone();
        if let Some(row) = out.rows.get_mut(x) {
            if !row.remove(y) {
                row.insert(y.to_string());
            }
        }
        out
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "types ")?;
        write_set(f, &self.types)?;
        write!(f, "; instances")?;
        if self.rows.is_empty() {
            write!(f, " none")?;
        }
        for (x, row) in &self.rows {
            write!(f, " {x}:")?;
            write_set(f, row)?;
        }
        Ok(())
    }
}

/// A covariant type map with a contravariant instance map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Infomorphism {
    types: TypeMap,
    /// Target instance to source instance.
    instances: BTreeMap<String, String>,
}

impl Infomorphism {
    pub fn new(types: TypeMap, instances: BTreeMap<String, String>) -> Self {
        Self { types, instances }
    }

    pub fn identity(a: &Classification) -> Self {
        Self {
            types: LanguageMorphism::identity(&a.language()),
            instances: a.instances().map(|x| (x.clone(), x.clone())).collect(),
        }
    }

    pub fn type_map(&self) -> &TypeMap {
        &self.types
    }

    pub fn instance_map(&self) -> &BTreeMap<String, String> {
        &self.instances
    }

    /// Verifies `instance_map(x2) ⊨₁ y1 ⇔ x2 ⊨₂ type_map(y1)` for all target
    /// instances `x2` and source types `y1`.
    pub fn check(&self, source: &Classification, target: &Classification) -> Result<()> {
        crate::institution::expect_language(&source.language(), self.types.source())?;
        crate::institution::expect_language(&target.language(), self.types.target())?;
        for x2 in target.instances() {
            let Some(x1) = self.instances.get(x2) else {
                return Err(Error::InvalidClassification(format!(
                    "instance map is not defined on target instance `{x2}`"
                )));
            };
            if !source.has_instance(x1) {
                return Err(Error::InvalidClassification(format!(
                    "instance map sends `{x2}` to unknown source instance `{x1}`"
                )));
            }
            for y1 in source.types() {
                let y2 = self.types.apply(y1).expect("total type map");
                if source.classifies(x1, y1) != target.classifies(x2, y2) {
                    return Err(Error::InfomorphismViolation {
                        instance: x2.clone(),
                        ty: y1.clone(),
                    });
                }
            }
        }
        if let Some(extra) = self.instances.keys().find(|x| !target.has_instance(x)) {
            return Err(Error::InvalidClassification(format!(
                "instance map names unknown target instance `{extra}`"
            )));
        }
        Ok(())
    }

    /// Diagrammatic composite `self` then `next`.
    pub fn then(&self, next: &Infomorphism) -> Result<Infomorphism> {
        let types = self.types.then(&next.types)?;
        let mut instances = BTreeMap::new();
        for (x3, x2) in &next.instances {
            let x1 = self
                .instances
                .get(x2)
                .ok_or_else(|| Error::Inconsistent(format!("instance `{x2}` missing from instance map")))?;
            instances.insert(x3.clone(), x1.clone());
        }
        Ok(Infomorphism { types, instances })
    }
}

/// The IF institution with its enumeration caps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct If {
    /// Maximum language size for sentence universes (4^n sequents).
    pub universe_cap: usize,
    /// Maximum language size for full row-set enumeration (2^(2^n) structures).
    pub enumeration_cap: usize,
    /// Maximum number of structures produced by bounded enumeration.
    pub structure_cap: u128,
    /// Maximum language size for the refutation basis (2^n single rows).
    pub basis_cap: usize,
}

impl Default for If {
    fn default() -> Self {
        Self {
            universe_cap: 8,
            enumeration_cap: 4,
            structure_cap: 1 << 20,
            basis_cap: 16,
        }
    }
}

impl If {
    pub fn satisfies(&self, m: &Classification, s: &Sequent) -> Result<bool> {
        if let Some(y) = s.symbols().find(|y| !m.types.contains(*y)) {
            return Err(Error::UnknownSymbol(y.clone()));
        }
        Ok(m.satisfies(s))
    }

    /// Every row-set classification over `lang`: one per subset of the
    /// powerset of the types, ordered by the bitmask of chosen rows (row `r`
    /// is the subset whose bitmask over the sorted types is `r`).
    pub fn enumerate_canonical_structures(&self, lang: &IfLanguage) -> Result<Vec<Classification>> {
        if lang.len() > self.enumeration_cap {
            return Err(Error::CapExceeded {
                what: "full structure enumeration",
                size: lang.len(),
                cap: self.enumeration_cap,
            });
        }
        let rows = 1u64 << lang.len();
        let count = 1u64 << rows;
        Ok((0..count)
            .map(|mask| {
                Classification::from_rows(
                    lang,
                    (0..rows).filter(|r| mask >> r & 1 == 1).map(|r| lang.row_of_mask(r)),
                )
            })
            .collect())
    }

    fn check_universe_cap(&self, lang: &IfLanguage) -> Result<()> {
        if lang.len() > self.universe_cap {
            return Err(Error::CapExceeded {
                what: "sentence universes",
                size: lang.len(),
                cap: self.universe_cap,
            });
        }
        Ok(())
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Lexicographic k-combinations of `0..n`.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

impl Institution for If {
    type Language = IfLanguage;
    type Sentence = Sequent;
    type Structure = Classification;
    type StrucMorphism = Infomorphism;

    fn name(&self) -> &'static str {
        "if"
    }

    fn check_sentence(&self, lang: &IfLanguage, s: &Sequent) -> Result<()> {
        match s.symbols().find(|y| !lang.contains(y)) {
            Some(_) => Err(Error::SentenceNotOverLanguage {
                sentence: s.to_string(),
                language: lang.to_string(),
            }),
            None => Ok(()),
        }
    }

    fn parse_sentence(&self, lang: &IfLanguage, text: &str) -> Result<Sequent> {
        let s = Sequent::parse(text)?;
        if let Some(y) = s.symbols().find(|y| !lang.contains(y)) {
            return Err(Error::UnknownSymbol(y.clone()));
        }
        Ok(s)
    }

    /// Every sequent over `lang` is in its universe; no cap applies.
    fn in_universe(&self, lang: &IfLanguage, s: &Sequent) -> Result<bool> {
        Ok(self.check_sentence(lang, s).is_ok())
    }

    /// All `4^n` sequents, sorted.
    fn sentence_universe(&self, lang: &IfLanguage) -> Result<Vec<Sequent>> {
        self.check_universe_cap(lang)?;
        let rows = 1u64 << lang.len();
        let mut out: Vec<Sequent> = (0..rows)
            .flat_map(|g| (0..rows).map(move |d| (g, d)))
            .map(|(g, d)| Sequent {
                antecedent: lang.row_of_mask(g),
                succedent: lang.row_of_mask(d),
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// Row-set classifications with at most `bound` rows, ordered by row
    /// count and then lexicographically by row bitmasks.
    fn structures<'a>(&'a self, lang: &'a IfLanguage, bound: Bound) -> Result<StructureIter<'a, Classification>> {
        self.check_universe_cap(lang)?;
        let rows = 1usize << lang.len();
        let max = bound.get().min(rows);
        let required: u128 = (0..=max).map(|k| binomial(rows as u128, k as u128)).sum();
        if required > self.structure_cap {
            return Err(Error::EnumerationCap {
                required,
                cap: self.structure_cap,
            });
        }
        Ok(Box::new((0..=max).flat_map(move |k| {
            Combinations::new(rows, k).map(move |combo| {
                Classification::from_rows(lang, combo.into_iter().map(|r| lang.row_of_mask(r as u64)))
            })
        })))
    }

    /// The empty classification followed by the single-row classifications.
    fn refutation_basis<'a>(&'a self, lang: &'a IfLanguage, bound: Bound) -> Result<StructureIter<'a, Classification>> {
        if lang.len() > self.basis_cap {
            return Err(Error::CapExceeded {
                what: "refutation bases",
                size: lang.len(),
                cap: self.basis_cap,
            });
        }
        let _ = bound;
        let rows = 1u64 << lang.len();
        let empty = std::iter::once(Classification::from_rows(lang, []));
        Ok(Box::new(empty.chain(
            (0..rows).map(move |r| Classification::from_rows(lang, [lang.row_of_mask(r)])),
        )))
    }

    fn structure_language(&self, m: &Classification) -> IfLanguage {
        m.language()
    }

    fn satisfies(&self, m: &Classification, s: &Sequent) -> bool {
        m.satisfies(s)
    }

    fn translate(&self, sigma: &TypeMap, s: &Sequent) -> Sequent {
        let image = |set: &BTreeSet<String>| -> BTreeSet<String> {
            set.iter()
                .map(|y| sigma.apply(y).expect("sequent over source").to_string())
                .collect()
        };
        Sequent {
            antecedent: image(&s.antecedent),
            succedent: image(&s.succedent),
        }
    }

    fn reduct(&self, sigma: &TypeMap, m: &Classification) -> Classification {
        let rows = m
            .rows
            .iter()
            .map(|(x, row)| {
                let pulled = sigma
                    .map()
                    .iter()
                    .filter(|(_, y2)| row.contains(*y2))
                    .map(|(y1, _)| y1.clone())
                    .collect();
                (x.clone(), pulled)
            })
            .collect();
        Classification {
            types: sigma.source().0.clone(),
            rows,
        }
    }

    fn struc_language<'m>(&self, f: &'m Infomorphism) -> &'m TypeMap {
        &f.types
    }

    fn check_struc_morphism(&self, f: &Infomorphism, source: &Classification, target: &Classification) -> Result<()> {
        f.check(source, target)
    }

    fn identity_struc(&self, m: &Classification) -> Infomorphism {
        Infomorphism::identity(m)
    }

    fn compose_struc(&self, first: &Infomorphism, second: &Infomorphism) -> Result<Infomorphism> {
        first.then(second)
    }

    fn merge_language(&self, classes: &[ColimitClass], _node_languages: &[&IfLanguage]) -> Result<IfLanguage> {
        Ok(IfLanguage::new(classes.iter().map(|c| c.label.clone())))
    }

    fn structure_colimit(
        &self,
        shape: &ShapeGraph,
        structures: &[&Classification],
        morphisms: &[&Infomorphism],
        core_language: &IfLanguage,
        injections: &[TypeMap],
    ) -> Result<(Classification, Vec<Infomorphism>)> {
        colimit::core_from_type_colimit(shape, structures, morphisms, core_language, injections)
    }

    fn refinement(
        &self,
        rho: TypeMap,
        min_core: &Classification,
        min_components: &[Infomorphism],
        other_core: &Classification,
        other_components: &[Infomorphism],
    ) -> Result<Infomorphism> {
        let mut by_tuple: BTreeMap<Vec<&String>, &String> = BTreeMap::new();
        for t in min_core.instances() {
            let tuple = min_components.iter().map(|g| &g.instances[t]).collect::<Vec<_>>();
            by_tuple.insert(tuple, t);
        }
        let mut instances = BTreeMap::new();
        for c in other_core.instances() {
            let tuple = other_components
                .iter()
                .map(|g| {
                    g.instances
                        .get(c)
                        .ok_or_else(|| Error::NoRefinement(format!("component instance map misses `{c}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            let t = by_tuple.get(&tuple).ok_or_else(|| {
                Error::NoRefinement(format!(
                    "core instance `{c}` projects to a tuple outside the minimal core"
                ))
            })?;
            instances.insert(c.clone(), (*t).clone());
        }
        Ok(Infomorphism { types: rho, instances })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lang(xs: &[&str]) -> IfLanguage {
        IfLanguage::new(xs.iter().copied())
    }

    fn rows(xs: &[&[&str]]) -> Vec<BTreeSet<String>> {
        xs.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
    }

    #[test]
    fn identity_sequent_always_holds() {
        let ab = lang(&["a", "b"]);
        for m in If::default().enumerate_canonical_structures(&ab).unwrap() {
            assert!(m.satisfies(&Sequent::new(["a"], ["a"])));
        }
    }

    #[test]
    fn single_row_refutes() {
        let m = Classification::from_rows(&lang(&["a", "b"]), rows(&[&["a"]]));
        assert!(!m.satisfies(&Sequent::new(["a"], ["b"])));
    }

    #[test]
    fn rows_with_ab_satisfy_a_entails_b() {
        let m = Classification::from_rows(&lang(&["a", "b"]), rows(&[&[], &["b"], &["a", "b"]]));
        assert!(m.satisfies(&Sequent::new(["a"], ["b"])));
    }

    #[test]
    fn unknown_type_is_an_error() {
        let m = Classification::from_rows(&lang(&["a"]), rows(&[&["a"]]));
        assert!(matches!(
            If::default().satisfies(&m, &Sequent::new(["z"], ["a"])),
            Err(Error::UnknownSymbol(_))
        ));
    }

    #[test]
    fn translate_is_direct_image() {
        let inst = If::default();
        let ab = lang(&["a", "b"]);
        let id = LanguageMorphism::identity(&ab);
        let s = Sequent::new(["a"], ["b"]);
        assert_eq!(inst.translate(&id, &s), s);

        let p = lang(&["p"]);
        let collapse = LanguageMorphism::from_pairs(ab.clone(), p, [("a", "p"), ("b", "p")]).unwrap();
        assert_eq!(inst.translate(&collapse, &s), Sequent::new(["p"], ["p"]));

        let pq = lang(&["p", "q"]);
        let sigma = LanguageMorphism::from_pairs(ab, pq, [("a", "p"), ("b", "q")]).unwrap();
        let s = Sequent::new(["a", "b"], Vec::<String>::new());
        assert_eq!(
            inst.translate(&sigma, &s),
            Sequent::new(["p", "q"], Vec::<String>::new())
        );
    }

    #[test]
    fn reduct_pulls_back_incidence() {
        let inst = If::default();
        let m2 = Classification::from_incidence(["x"], ["p"], [("x", "p")]).unwrap();
        assert_eq!(inst.reduct(&LanguageMorphism::identity(&m2.language()), &m2), m2);
        let sigma = LanguageMorphism::from_pairs(lang(&["a"]), lang(&["p"]), [("a", "p")]).unwrap();
        let r = inst.reduct(&sigma, &m2);
        assert!(r.classifies("x", "a"));
        assert_eq!(r.instance_count(), 1);
    }

    #[test]
    fn universe_sizes() {
        let inst = If::default();
        let empty = inst.sentence_universe(&lang(&[])).unwrap();
        assert_eq!(empty, vec![Sequent::new(Vec::<String>::new(), Vec::<String>::new())]);
        assert_eq!(inst.sentence_universe(&lang(&["a"])).unwrap().len(), 4);
        assert_eq!(inst.sentence_universe(&lang(&["a", "b"])).unwrap().len(), 16);
        let nine: Vec<String> = (0..9).map(|i| format!("t{i}")).collect();
        assert!(matches!(
            inst.sentence_universe(&IfLanguage::new(nine)),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn canonical_enumeration() {
        let inst = If::default();
        let a = lang(&["a"]);
        let all = inst.enumerate_canonical_structures(&a).unwrap();
        let row_sets: Vec<_> = all.iter().map(|m| m.row_set()).collect();
        let e = BTreeSet::new;
        let ra: BTreeSet<String> = ["a".to_string()].into();
        assert_eq!(
            row_sets,
            vec![BTreeSet::new(), [e()].into(), [ra.clone()].into(), [e(), ra].into(),]
        );
        assert_eq!(
            inst.enumerate_canonical_structures(&lang(&["a", "b"])).unwrap().len(),
            16
        );
        assert!(inst
            .enumerate_canonical_structures(&lang(&["a", "b", "c", "d", "e"]))
            .is_err());
    }

    #[test]
    fn bounded_enumeration_counts() {
        let inst = If::default();
        let ab = lang(&["a", "b"]);
        // C(4,0)+C(4,1)+C(4,2) row-sets with at most two rows
        assert_eq!(inst.structures(&ab, Bound::new(2).unwrap()).unwrap().count(), 11);
        assert_eq!(inst.structures(&ab, Bound::new(9).unwrap()).unwrap().count(), 16);
        assert_eq!(inst.refutation_basis(&ab, Bound::DEFAULT).unwrap().count(), 5);
    }

    #[test]
    fn sequent_text_round_trip() {
        for text in ["|-", "a |-", "|- b", "a, b |- c"] {
            assert_eq!(Sequent::parse(text).unwrap().to_string(), text);
        }
        assert!(Sequent::parse("a b").is_err());
    }

    #[test]
    fn infomorphism_violation_names_witness() {
        let a1 = Classification::from_incidence(["u"], ["a"], [("u", "a")]).unwrap();
        let a2 = Classification::from_incidence(["v"], ["p"], []).unwrap();
        let types = LanguageMorphism::from_pairs(a1.language(), a2.language(), [("a", "p")]).unwrap();
        let f = Infomorphism::new(types, [("v".to_string(), "u".to_string())].into());
        assert_eq!(
            f.check(&a1, &a2),
            Err(Error::InfomorphismViolation {
                instance: "v".into(),
                ty: "a".into()
            })
        );
    }

    #[test]
    fn combinations_are_lexicographic() {
        let c: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(c.len(), 6);
        assert_eq!(c[0], vec![0, 1]);
        assert_eq!(c[5], vec![2, 3]);
        assert_eq!(Combinations::new(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
    }
}
