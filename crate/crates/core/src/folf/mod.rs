//! Unsorted relational first-order logic over finite carriers.
//!
//! Signatures hold relation symbols with positive arities; there are no
//! function symbols or constants. Structures are enumerated up to a carrier
//! size bound, so entailment is refutation-sound: a counter-model within the
//! bound is always found, while entailments that only fail on larger
//! carriers are reported as holding.

mod formula;
mod parser;
mod schema;
mod structure;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use formula::{Formula, Hint};
pub use parser::parse_formula;
pub use schema::{SchemaSet, Template};
pub use structure::{enumerate_structures, FiniteStructure};

use crate::colimit::ColimitClass;
use crate::error::{Error, Result};
use crate::institution::{Bound, Institution, LanguageMorphism, StructureIter, Vocabulary};
use crate::shape::ShapeGraph;

pub type SignatureMorphism = LanguageMorphism<Signature>;

/// Relation symbols with their arities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Signature(BTreeMap<String, usize>);

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "forall"
        && s != "exists"
}

impl Signature {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (name, arity) in symbols {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(Error::InvalidStructure(format!(
                    "`{name}` is not a valid relation symbol"
                )));
            }
            if arity == 0 {
                return Err(Error::InvalidStructure(format!(
                    "relation symbol `{name}` must have positive arity"
                )));
            }
            if map.insert(name.clone(), arity).is_some() {
                return Err(Error::InvalidStructure(format!("duplicate relation symbol `{name}`")));
            }
        }
        Ok(Self(map))
    }

    pub fn arity(&self, symbol: &str) -> Option<usize> {
        self.0.get(symbol).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.0.iter().map(|(s, &n)| (s.as_str(), n))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Vocabulary for Signature {
    fn symbols(&self) -> Vec<String> {
        self.0.keys().cloned().collect()
    }

    fn contains(&self, symbol: &str) -> bool {
        self.0.contains_key(symbol)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(s, n)| format!("{s}/{n}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The finite-model first-order institution.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Folf {
    pub schemas: SchemaSet,
    /// Maximum number of structures enumerated per carrier size.
    pub structure_cap: u128,
}

impl Default for Folf {
    fn default() -> Self {
        Self {
            schemas: SchemaSet::default(),
            structure_cap: 1 << 20,
        }
    }
}

impl Folf {
    pub fn with_schemas(schemas: SchemaSet) -> Self {
        Self {
            schemas,
            ..Self::default()
        }
    }
}

impl Institution for Folf {
    type Language = Signature;
    type Sentence = Formula;
    type Structure = FiniteStructure;
    type StrucMorphism = SignatureMorphism;

    fn name(&self) -> &'static str {
        "folf"
    }

    fn check_morphism(&self, sigma: &SignatureMorphism) -> Result<()> {
        for (s, n) in sigma.source().iter() {
            let image = sigma.apply(s).expect("total");
            let m = sigma.target().arity(image).expect("image in target");
            if m != n {
                return Err(Error::ArityNotPreserved {
                    symbol: s.to_string(),
                    source_arity: n,
                    image: image.to_string(),
                    target_arity: m,
                });
            }
        }
        Ok(())
    }

    fn check_sentence(&self, lang: &Signature, s: &Formula) -> Result<()> {
        let fits = s.is_closed() && s.symbol_uses().iter().all(|(sym, n)| lang.arity(sym) == Some(*n));
        if fits {
            Ok(())
        } else {
            Err(Error::SentenceNotOverLanguage {
                sentence: s.to_string(),
                language: lang.to_string(),
            })
        }
    }

    fn parse_sentence(&self, lang: &Signature, text: &str) -> Result<Formula> {
        parse_formula(text, lang)
    }

    fn sentence_universe(&self, lang: &Signature) -> Result<Vec<Formula>> {
        Ok(self.schemas.universe(lang))
    }

    fn structures<'a>(&'a self, lang: &'a Signature, bound: Bound) -> Result<StructureIter<'a, FiniteStructure>> {
        enumerate_structures(lang, bound.get(), self.structure_cap)
    }

    fn structure_language(&self, m: &FiniteStructure) -> Signature {
        m.signature().clone()
    }

    fn satisfies(&self, m: &FiniteStructure, s: &Formula) -> bool {
        m.eval(s)
    }

    fn translate(&self, sigma: &SignatureMorphism, s: &Formula) -> Formula {
        s.rename(&|r| sigma.apply(r).map(str::to_string))
    }

    fn reduct(&self, sigma: &SignatureMorphism, m: &FiniteStructure) -> FiniteStructure {
        m.pull_back(sigma.source(), |r| sigma.apply(r).expect("total").to_string())
    }

    fn struc_language<'m>(&self, f: &'m SignatureMorphism) -> &'m SignatureMorphism {
        f
    }

    fn check_struc_morphism(
        &self,
        f: &SignatureMorphism,
        source: &FiniteStructure,
        target: &FiniteStructure,
    ) -> Result<()> {
        crate::institution::expect_language(source.signature(), f.source())?;
        crate::institution::expect_language(target.signature(), f.target())?;
        self.check_morphism(f)
    }

    fn identity_struc(&self, m: &FiniteStructure) -> SignatureMorphism {
        LanguageMorphism::identity(m.signature())
    }

    fn compose_struc(&self, first: &SignatureMorphism, second: &SignatureMorphism) -> Result<SignatureMorphism> {
        first.then(second)
    }

    fn merge_language(&self, classes: &[ColimitClass], node_languages: &[&Signature]) -> Result<Signature> {
        let mut symbols = Vec::with_capacity(classes.len());
        for class in classes {
            let arities: BTreeSet<usize> = class
                .members
                .iter()
                .map(|(node, s)| node_languages[*node].arity(s).expect("member symbol"))
                .collect();
            if arities.len() > 1 {
                let members: Vec<String> = class
                    .members
                    .iter()
                    .map(|(node, s)| format!("{s}/{}", node_languages[*node].arity(s).unwrap_or(0)))
                    .collect();
                return Err(Error::ArityClash(format!(
                    "`{}` merges {}",
                    class.label,
                    members.join(", ")
                )));
            }
            symbols.push((class.label.clone(), *arities.iter().next().expect("nonempty class")));
        }
        Signature::new(symbols)
    }

    /// Amalgamation: all nodes share one carrier and merged symbols carry
    /// identical tables, which become the core's tables.
    fn structure_colimit(
        &self,
        shape: &ShapeGraph,
        structures: &[&FiniteStructure],
        morphisms: &[&SignatureMorphism],
        core_language: &Signature,
        injections: &[SignatureMorphism],
    ) -> Result<(FiniteStructure, Vec<SignatureMorphism>)> {
        if structures.len() != shape.node_count()
            || morphisms.len() != shape.edges().len()
            || injections.len() != structures.len()
        {
            return Err(Error::ShapeMismatch(
                "structure diagram does not match its shape".into(),
            ));
        }
        let size = match structures.first() {
            Some(m) => m.size(),
            None => 1,
        };
        if let Some((i, m)) = structures.iter().enumerate().find(|(_, m)| m.size() != size) {
            return Err(Error::Amalgamation(format!(
                "node `{}` has carrier size {} but node `{}` has {size}",
                shape.nodes()[i],
                m.size(),
                shape.nodes()[0]
            )));
        }
        let mut tables: BTreeMap<String, (usize, String, Vec<bool>)> = BTreeMap::new();
        for (node, inj) in injections.iter().enumerate() {
            for (s, c) in inj.map() {
                let table = structures[node].table(s).expect("symbol in signature").to_vec();
                match tables.get(c) {
                    None => {
                        tables.insert(c.clone(), (node, s.clone(), table));
                    }
                    Some((first_node, first_sym, first)) if *first != table => {
                        let arity = core_language.arity(c).unwrap_or(0);
                        let differing: Vec<String> = (0..table.len())
                            .filter(|&k| first[k] != table[k])
                            .map(|k| {
                                let mut t = vec![0; arity];
                                let mut r = k;
                                for slot in t.iter_mut().rev() {
                                    *slot = r % size;
                                    r /= size;
                                }
                                format!("({})", t.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
                            })
                            .collect();
                        return Err(Error::Amalgamation(format!(
                            "merged symbol `{c}` disagrees between `{first_sym}` at node `{}` and `{s}` at node `{}` on {}",
                            shape.nodes()[*first_node],
                            shape.nodes()[node],
                            differing.join(", ")
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let tables = tables.into_iter().map(|(c, (_, _, t))| (c, t)).collect();
        let core = FiniteStructure::from_tables(core_language.clone(), size, tables);
        Ok((core, injections.to_vec()))
    }

    fn refinement(
        &self,
        rho: SignatureMorphism,
        _min_core: &FiniteStructure,
        _min_components: &[SignatureMorphism],
        _other_core: &FiniteStructure,
        _other_components: &[SignatureMorphism],
    ) -> Result<SignatureMorphism> {
        self.check_morphism(&rho)?;
        Ok(rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::institution::{check_satisfaction_invariance, language_colimit};

    fn sig(xs: &[(&str, usize)]) -> Signature {
        Signature::new(xs.iter().copied()).unwrap()
    }

    #[test]
    fn translate_renames_symbols_only() {
        let inst = Folf::default();
        let src = sig(&[("R", 2), ("S0", 1)]);
        let tgt = sig(&[("S", 2), ("S0", 1)]);
        let sigma = LanguageMorphism::from_pairs(src.clone(), tgt.clone(), [("R", "S"), ("S0", "S0")]).unwrap();
        let f = parse_formula("forall x. R(x,x) -> S0(x)", &src).unwrap();
        assert_eq!(
            inst.translate(&sigma, &f),
            parse_formula("forall x. S(x,x) -> S0(x)", &tgt).unwrap()
        );
        let id = LanguageMorphism::identity(&src);
        assert_eq!(inst.translate(&id, &f), f);
    }

    #[test]
    fn reduct_copies_image_tables() {
        let inst = Folf::default();
        let src = sig(&[("R", 2)]);
        let tgt = sig(&[("S", 2)]);
        let sigma = LanguageMorphism::from_pairs(src, tgt.clone(), [("R", "S")]).unwrap();
        let m2 = FiniteStructure::new(tgt, 2, [("S".to_string(), [vec![0, 1]].into())].into()).unwrap();
        let r = inst.reduct(&sigma, &m2);
        assert_eq!(r.tuples("R"), m2.tuples("S"));
        assert!(check_satisfaction_invariance(&inst, &sigma, &m2).unwrap());
    }

    #[test]
    fn arity_must_be_preserved() {
        let inst = Folf::default();
        let sigma = LanguageMorphism::from_pairs(sig(&[("R", 2)]), sig(&[("P", 1)]), [("R", "P")]).unwrap();
        assert!(matches!(
            inst.check_morphism(&sigma),
            Err(Error::ArityNotPreserved { .. })
        ));
    }

    #[test]
    fn merging_clashing_arities_fails() {
        let inst = Folf::default();
        let shape = ShapeGraph::new(["a", "b"], vec![("e".into(), "a".into(), "b".into())]).unwrap();
        let (la, lb) = (sig(&[("R", 2)]), sig(&[("P", 1)]));
        let bad = LanguageMorphism::from_pairs(la.clone(), lb.clone(), [("R", "P")]).unwrap();
        assert!(matches!(
            language_colimit(&inst, &shape, &[&la, &lb], &[&bad]),
            Err(Error::ArityClash(_))
        ));
    }

    #[test]
    fn amalgamation_reports_disagreement() {
        let inst = Folf::default();
        let shape = ShapeGraph::new(["a", "b"], vec![("e".into(), "a".into(), "b".into())]).unwrap();
        let l = sig(&[("R", 2)]);
        let id = LanguageMorphism::identity(&l);
        let (core, inj) = language_colimit(&inst, &shape, &[&l, &l], &[&id]).unwrap();
        let m0 = FiniteStructure::new(l.clone(), 2, [("R".to_string(), [vec![0, 0]].into())].into()).unwrap();
        let m1 = FiniteStructure::new(l.clone(), 2, BTreeMap::new()).unwrap();
        let err = inst
            .structure_colimit(&shape, &[&m0, &m1], &[&id], &core, &inj)
            .unwrap_err();
        assert!(err.to_string().contains("(0,0)"), "{err}");
        let (c, _) = inst
            .structure_colimit(&shape, &[&m0, &m0], &[&id], &core, &inj)
            .unwrap();
        assert_eq!(c.tuples("R"), vec![vec![0, 0]]);
        let m2 = FiniteStructure::new(l, 3, BTreeMap::new()).unwrap();
        assert!(matches!(
            inst.structure_colimit(&shape, &[&m0, &m2], &[&id], &core, &inj),
            Err(Error::Amalgamation(_))
        ));
    }

    #[test]
    fn signature_rejects_bad_symbols() {
        assert!(Signature::new([("R", 0)]).is_err());
        assert!(Signature::new([("forall", 1)]).is_err());
        assert!(Signature::new([("1R", 1)]).is_err());
        assert_eq!(sig(&[("R", 2), ("P", 1)]).to_string(), "{P/1, R/2}");
    }
}
