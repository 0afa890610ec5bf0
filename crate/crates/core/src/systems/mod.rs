//! Systems of structures and logics indexed by a shape graph.
//!
//! A distributed system assigns a structure to every node and a structure
//! morphism to every edge. An information system assigns logics and logic
//! morphisms: edges must preserve satisfaction between the structures and
//! entailment between the theories. A formal system drops structures and
//! keeps languages, theories and specification morphisms.

mod channel;
mod consequence;
mod formal;

use std::fmt;

pub use channel::{covering_violation, is_covering, mediator, minimal_cover, Channel};
pub use consequence::{
    find_strictness_witness, fusion, include_system, non_reflecting_node, pointwise_leq, restrict_system,
    sound_system_consequence, system_consequence, system_entails, StrictnessWitness, WitnessBounds,
};
pub use formal::{
    formal_fusion, formal_mediator, formal_minimal_cover, formal_pointwise_leq, formal_system_consequence,
    FormalSystem, LanguageChannel,
};

use crate::error::{Error, Result};
use crate::institution::{Institution, LanguageMorphism};
use crate::logic_flow::Logic;
use crate::shape::ShapeGraph;
use crate::spec_flow::Engine;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributedSystem<I: Institution> {
    shape: ShapeGraph,
    structures: Vec<I::Structure>,
    morphisms: Vec<I::StrucMorphism>,
}

impl<I: Institution> DistributedSystem<I> {
    /// Checks every edge morphism between its endpoint structures.
    pub fn new(
        engine: &Engine<'_, I>,
        shape: ShapeGraph,
        structures: Vec<I::Structure>,
        morphisms: Vec<I::StrucMorphism>,
    ) -> Result<Self> {
        check_counts(&shape, structures.len(), morphisms.len())?;
        for (edge, f) in shape.edges().iter().zip(&morphisms) {
            let (m1, m2) = (&structures[edge.source], &structures[edge.target]);
            engine
                .inst
                .check_struc_morphism(f, m1, m2)
                .map_err(|e| at_edge(&edge.id, e))?;
            let sigma = engine.inst.struc_language(f);
            if let Some(s) = engine.structure_morphism_violation(sigma, m1, m2)? {
                return Err(at_edge(
                    &edge.id,
                    Error::NotStructureMorphism {
                        sentence: s.to_string(),
                    },
                ));
            }
        }
        Ok(Self {
            shape,
            structures,
            morphisms,
        })
    }

    pub fn shape(&self) -> &ShapeGraph {
        &self.shape
    }

    pub fn structures(&self) -> &[I::Structure] {
        &self.structures
    }

    pub fn morphisms(&self) -> &[I::StrucMorphism] {
        &self.morphisms
    }

    pub fn language_morphism<'s>(&'s self, inst: &I, edge: usize) -> &'s LanguageMorphism<I::Language> {
        inst.struc_language(&self.morphisms[edge])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InformationSystem<I: Institution> {
    shape: ShapeGraph,
    logics: Vec<Logic<I>>,
    morphisms: Vec<I::StrucMorphism>,
}

impl<I: Institution> InformationSystem<I> {
    /// Checks every edge is a structure morphism and a specification
    /// morphism between its endpoint logics.
    pub fn new(
        engine: &Engine<'_, I>,
        shape: ShapeGraph,
        logics: Vec<Logic<I>>,
        morphisms: Vec<I::StrucMorphism>,
    ) -> Result<Self> {
        let structures = logics.iter().map(|l| l.structure().clone()).collect();
        DistributedSystem::new(engine, shape.clone(), structures, morphisms.clone())?;
        for (edge, f) in shape.edges().iter().zip(&morphisms) {
            let sigma = engine.inst.struc_language(f);
            let (t1, t2) = (logics[edge.source].spec(), logics[edge.target].spec());
            if let Some(s) = engine.spec_morphism_violation(sigma, t1, t2)? {
                return Err(Error::NotSpecMorphism {
                    edge: edge.id.clone(),
                    sentence: s.to_string(),
                });
            }
        }
        Ok(Self {
            shape,
            logics,
            morphisms,
        })
    }

    pub fn shape(&self) -> &ShapeGraph {
        &self.shape
    }

    pub fn logics(&self) -> &[Logic<I>] {
        &self.logics
    }

    pub fn logic(&self, node: &str) -> Option<&Logic<I>> {
        self.shape.node_index(node).map(|i| &self.logics[i])
    }

    pub fn morphisms(&self) -> &[I::StrucMorphism] {
        &self.morphisms
    }

    /// The same shape and edges with every node's structure.
    pub fn underlying(&self) -> DistributedSystem<I> {
        DistributedSystem {
            shape: self.shape.clone(),
            structures: self.logics.iter().map(|l| l.structure().clone()).collect(),
            morphisms: self.morphisms.clone(),
        }
    }

    /// Replaces node logics, re-verifying every edge.
    pub fn with_logics(&self, engine: &Engine<'_, I>, logics: Vec<Logic<I>>) -> Result<Self> {
        Self::new(engine, self.shape.clone(), logics, self.morphisms.clone())
    }
}

impl<I: Institution> fmt::Display for InformationSystem<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (node, l) in self.shape.nodes().iter().zip(&self.logics) {
            writeln!(f, "{node}: {}", l.spec())?;
        }
        Ok(())
    }
}

fn check_counts(shape: &ShapeGraph, nodes: usize, edges: usize) -> Result<()> {
    if nodes != shape.node_count() || edges != shape.edges().len() {
        return Err(Error::ShapeMismatch(format!(
            "shape has {} nodes and {} edges, system has {nodes} and {edges}",
            shape.node_count(),
            shape.edges().len()
        )));
    }
    Ok(())
}

fn at_edge(edge: &str, e: Error) -> Error {
    Error::AtEdge {
        edge: edge.to_string(),
        inner: Box::new(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folf::{FiniteStructure, Folf, Signature};
    use crate::ifl::{Classification, If, IfLanguage, Infomorphism, Sequent};
    use crate::institution::{Bound, Vocabulary};
    use crate::spec_flow::Specification;

    const REFL: &str = "forall x. R(x,x)";
    const SYM: &str = "forall x. forall y. R(x,y) -> R(y,x)";
    const TRANS: &str = "forall x. forall y. forall z. R(x,y) & R(y,z) -> R(x,z)";

    fn equivalence_structure(sig: &Signature) -> FiniteStructure {
        let pairs = [[0, 0], [0, 1], [1, 0], [1, 1], [2, 2]].map(|p| p.to_vec());
        FiniteStructure::new(sig.clone(), 3, [("R".to_string(), pairs.into_iter().collect())].into()).unwrap()
    }

    fn span(inst: &Folf) -> InformationSystem<Folf> {
        let e = Engine::new(inst, Bound::DEFAULT);
        let sig = Signature::new([("R", 2)]).unwrap();
        let m = equivalence_structure(&sig);
        let logic = |texts: &[&str]| {
            let t = Specification::parse(inst, sig.clone(), texts.iter().copied()).unwrap();
            Logic::new(inst, m.clone(), t).unwrap()
        };
        let shape = ShapeGraph::new(
            ["C", "L0", "L1"],
            vec![
                ("e0".into(), "C".into(), "L0".into()),
                ("e1".into(), "C".into(), "L1".into()),
            ],
        )
        .unwrap();
        let id = LanguageMorphism::identity(&sig);
        InformationSystem::new(
            &e,
            shape,
            vec![logic(&[REFL]), logic(&[REFL, TRANS]), logic(&[REFL, SYM])],
            vec![id.clone(), id],
        )
        .unwrap()
    }

    #[test]
    fn span_consequence_is_equivalence_theory() {
        let inst = Folf::default();
        let e = Engine::new(&inst, Bound::DEFAULT);
        let is = span(&inst);
        let sig = is.logics()[0].language().clone();
        let eq = Specification::parse(&inst, sig, [REFL, SYM, TRANS]).unwrap();

        let fused = fusion(&e, &is).unwrap();
        assert_eq!(fused.spec().len(), 3);
        let star = system_consequence(&e, &is).unwrap();
        for l in star.logics() {
            assert!(e.equivalent(l.spec(), &eq).unwrap());
            assert!(e.is_closed(l.spec()).unwrap());
        }
        assert!(system_entails(&e, &is, &is).unwrap());
        assert!(pointwise_leq(&e, &star, &is).unwrap());
        assert!(!pointwise_leq(&e, &is, &star).unwrap());
    }

    #[test]
    fn span_mediator_from_itself_is_identity() {
        let inst = Folf::default();
        let is = span(&inst);
        let ds = is.underlying();
        let min = minimal_cover(&inst, &ds).unwrap();
        assert!(is_covering(&inst, &min, &ds).unwrap());
        let rho = mediator(&inst, &min, &min, &ds).unwrap();
        assert!(rho.is_identity());
    }

    #[test]
    fn renamed_cover_has_renaming_mediator() {
        let inst = Folf::default();
        let is = span(&inst);
        let ds = is.underlying();
        let min = minimal_cover(&inst, &ds).unwrap();
        let core_sig = inst.structure_language(&min.core);
        let renamed = Signature::new([("E", 2)]).unwrap();
        let r = LanguageMorphism::new(
            core_sig.clone(),
            renamed.clone(),
            core_sig.symbols().into_iter().map(|s| (s, "E".to_string())).collect(),
        )
        .unwrap();
        let pairs = [[0, 0], [0, 1], [1, 0], [1, 1], [2, 2]].map(|p| p.to_vec());
        let core = FiniteStructure::new(renamed, 3, [("E".to_string(), pairs.into_iter().collect())].into()).unwrap();
        let components = min.components.iter().map(|g| g.then(&r).unwrap()).collect();
        let other = Channel { core, components };
        assert_eq!(mediator(&inst, &min, &other, &ds).unwrap(), r);
    }

    #[test]
    fn non_covering_channel_is_rejected() {
        let inst = Folf::default();
        let is = span(&inst);
        let ds = is.underlying();
        let sig = is.logics()[0].language().clone();
        let two = Signature::new([("R", 2), ("S", 2)]).unwrap();
        let to = |target: &str| {
            LanguageMorphism::new(sig.clone(), two.clone(), [("R".to_string(), target.to_string())].into()).unwrap()
        };
        let pairs: std::collections::BTreeSet<Vec<usize>> = [[0, 0], [0, 1], [1, 0], [1, 1], [2, 2]]
            .map(|p| p.to_vec())
            .into_iter()
            .collect();
        let core = FiniteStructure::new(
            two.clone(),
            3,
            [("R".to_string(), pairs.clone()), ("S".to_string(), pairs)].into(),
        )
        .unwrap();
        let ch = Channel {
            core,
            components: vec![to("R"), to("R"), to("S")],
        };
        assert_eq!(covering_violation(&inst, &ch, &ds).unwrap(), Some("e1".to_string()));
        let min = minimal_cover(&inst, &ds).unwrap();
        assert!(matches!(
            mediator(&inst, &min, &ch, &ds),
            Err(Error::NotCovering { .. })
        ));
    }

    #[test]
    fn formal_span_matches_information_span() {
        let inst = Folf::default();
        let e = Engine::new(&inst, Bound::DEFAULT);
        let is = span(&inst);
        let fs = FormalSystem::new(
            &e,
            is.shape().clone(),
            is.logics().iter().map(|l| l.spec().clone()).collect(),
            is.morphisms().to_vec(),
        )
        .unwrap();
        let star = formal_system_consequence(&e, &fs).unwrap();
        let logic_star = system_consequence(&e, &is).unwrap();
        for (t, l) in star.specs().iter().zip(logic_star.logics()) {
            assert_eq!(t, l.spec());
        }
        assert_eq!(&formal_fusion(&e, &fs).unwrap(), fusion(&e, &is).unwrap().spec());
        let min = formal_minimal_cover(&inst, &fs).unwrap();
        assert!(formal_mediator(&inst, &min, &min, &fs).unwrap().is_identity());
        assert!(formal_pointwise_leq(&e, &star, &fs).unwrap());
    }

    fn discrete_if(t0: &[&str], t1: &[&str]) -> InformationSystem<If> {
        let inst = If::default();
        let e = Engine::new(&inst, Bound::DEFAULT);
        let a = IfLanguage::new(["a"]);
        let b = IfLanguage::new(["b"]);
        let m0 = Classification::from_rows(&a, [["a".to_string()].into()]);
        let m1 = Classification::from_rows(&b, [["b".to_string()].into()]);
        let spec =
            |lang: &IfLanguage, ts: &[&str]| Specification::parse(&inst, lang.clone(), ts.iter().copied()).unwrap();
        InformationSystem::new(
            &e,
            ShapeGraph::discrete(["n0", "n1"]).unwrap(),
            vec![
                Logic::new(&inst, m0, spec(&a, t0)).unwrap(),
                Logic::new(&inst, m1, spec(&b, t1)).unwrap(),
            ],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn discrete_consistent_nodes_do_not_interact() {
        let inst = If::default();
        let e = Engine::new(&inst, Bound::DEFAULT);
        let is = discrete_if(&["|- a"], &[]);
        let star = system_consequence(&e, &is).unwrap();
        for (l, s) in is.logics().iter().zip(star.logics()) {
            assert_eq!(e.consequence(l.spec()).unwrap(), *s.spec());
        }
    }

    #[test]
    fn inconsistent_node_spreads_and_restriction_is_strict() {
        let inst = If::default();
        let e = Engine::new(&inst, Bound::DEFAULT);
        let is = discrete_if(&["|-"], &[]);
        let star = system_consequence(&e, &is).unwrap();
        assert_eq!(star.logics()[1].spec().len(), 4);
        let a = restrict_system(&e, &star).unwrap();
        let b = system_consequence(&e, &restrict_system(&e, &is).unwrap()).unwrap();
        assert!(pointwise_leq(&e, &a, &b).unwrap());
        assert!(a.logics()[1].spec().contains(&Sequent::new([] as [&str; 0], ["b"])));
        assert!(!b.logics()[1].spec().contains(&Sequent::new([] as [&str; 0], ["b"])));
        assert!(matches!(include_system(&e, &is), Err(Error::NotSound(_))));
    }

    #[test]
    fn witness_search_is_deterministic() {
        let inst = If::default();
        let e = Engine::new(&inst, Bound::DEFAULT);
        let w1 = find_strictness_witness(&e, 7, WitnessBounds::default())
            .unwrap()
            .unwrap();
        let w2 = find_strictness_witness(&e, 7, WitnessBounds::default())
            .unwrap()
            .unwrap();
        assert_eq!(w1, w2);
        let a = restrict_system(&e, &system_consequence(&e, &w1.system).unwrap()).unwrap();
        assert!(a.logic(&w1.node).unwrap().spec().contains(&w1.sentence));
    }

    #[test]
    fn random_if_systems_are_valid_and_single_nodes_never_witness() {
        use crate::random::{random_if_system, SystemParams};
        use rand::SeedableRng;
        let inst = If::default();
        let e = Engine::new(&inst, Bound::DEFAULT);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let params = SystemParams {
            max_nodes: 3,
            max_types: 2,
            max_edges: 3,
            max_extra_instances: 2,
            max_sentences: 3,
        };
        for _ in 0..40 {
            random_if_system(&mut rng, &e, &params).unwrap();
        }
        let single = WitnessBounds {
            params: SystemParams { max_nodes: 1, ..params },
            attempts: 60,
        };
        assert_eq!(find_strictness_witness(&e, 3, single).unwrap(), None);
    }

    #[test]
    fn broken_edge_is_reported_at_edge() {
        let inst = If::default();
        let e = Engine::new(&inst, Bound::DEFAULT);
        let a = IfLanguage::new(["a"]);
        let m0 = Classification::from_rows(&a, [["a".to_string()].into()]);
        let m1 = Classification::from_rows(&a, [std::collections::BTreeSet::new()]);
        let f = Infomorphism::new(
            LanguageMorphism::identity(&a),
            [("{}".to_string(), "{a}".to_string())].into(),
        );
        let err = DistributedSystem::new(
            &e,
            ShapeGraph::new(["p", "q"], vec![("f".into(), "p".into(), "q".into())]).unwrap(),
            vec![m0, m1],
            vec![f],
        )
        .unwrap_err();
        assert!(matches!(err, Error::AtEdge { ref edge, .. } if edge == "f"), "{err}");
    }
}
