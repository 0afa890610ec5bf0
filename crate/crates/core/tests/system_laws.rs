use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syscons_core::ifl::{Classification, If, IfLanguage, Infomorphism, Sequent};
use syscons_core::logic_flow::Logic;
use syscons_core::random::{random_classification, random_if_language, random_if_spec, random_if_system, SystemParams};
use syscons_core::shape::ShapeGraph;
use syscons_core::spec_flow::{Engine, Specification};
use syscons_core::systems::{
    fusion, include_system, non_reflecting_node, pointwise_leq, restrict_system, sound_system_consequence,
    system_consequence, system_entails, InformationSystem,
};
use syscons_core::{Bound, Institution};

const PARAMS: SystemParams = SystemParams {
    max_nodes: 3,
    max_types: 2,
    max_edges: 2,
    max_extra_instances: 2,
    max_sentences: 3,
};

fn system(seed: u64, params: &SystemParams) -> InformationSystem<If> {
    let inst = If::default();
    let e = Engine::new(&inst, Bound::DEFAULT);
    random_if_system(&mut ChaCha8Rng::seed_from_u64(seed), &e, params).unwrap()
}

/// Adds random sentences at every node and pushes them along edges, so the
/// result is pointwise below `is`.
fn strengthen(e: &Engine<'_, If>, is: &InformationSystem<If>, r: &mut ChaCha8Rng) -> InformationSystem<If> {
    let mut specs: Vec<Specification<If>> = Vec::new();
    for (i, l) in is.logics().iter().enumerate() {
        let extra = random_if_spec(r, l.language(), 2);
        let mut parts = vec![l.spec().clone(), extra];
        for (edge, f) in is.shape().edges().iter().zip(is.morphisms()) {
            if edge.target == i {
                parts.push(e.dir(f.type_map(), &specs[edge.source]).unwrap());
            }
        }
        specs.push(e.meet(&parts.iter().collect::<Vec<_>>()).unwrap());
    }
    let logics = is.logics().iter().zip(specs).map(|(l, t)| l.with_spec(t)).collect();
    is.with_logics(e, logics).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn system_consequence_is_a_closure_operator(seed in any::<u64>()) {
        let inst = If::default();
        let e = Engine::new(&inst, Bound::DEFAULT);
        let is = system(seed, &PARAMS);
        let star = system_consequence(&e, &is).unwrap();
        prop_assert!(pointwise_leq(&e, &star, &is).unwrap());
        prop_assert_eq!(&system_consequence(&e, &star).unwrap(), &star);
        let stronger = strengthen(&e, &is, &mut ChaCha8Rng::seed_from_u64(!seed));
        prop_assert!(pointwise_leq(&e, &stronger, &is).unwrap());
        let stronger_star = system_consequence(&e, &stronger).unwrap();
        prop_assert!(pointwise_leq(&e, &stronger_star, &star).unwrap());
        prop_assert!(system_entails(&e, &is, &star).unwrap() && system_entails(&e, &star, &is).unwrap());
        prop_assert!(system_entails(&e, &stronger, &is).unwrap());
    }

    /// Pointwise exactly when no node is inconsistent; an inconsistent node
    /// makes the fusion inconsistent and every node receives its universe.
    #[test]
    fn discrete_consequence_is_pointwise_unless_a_node_is_inconsistent(seed in any::<u64>()) {
        let inst = If::default();
        let e = Engine::new(&inst, Bound::DEFAULT);
        let is = system(seed, &SystemParams { max_edges: 0, ..PARAMS });
        let star = system_consequence(&e, &is).unwrap();
        let closures: Vec<_> = is.logics().iter().map(|l| e.consequence(l.spec()).unwrap()).collect();
        let inconsistent = closures.iter().any(|c| c.contains(&Sequent::new(NONE, NONE)));
        for (c, s) in closures.iter().zip(star.logics()) {
            if inconsistent {
                prop_assert_eq!(s.spec().len(), inst.sentence_universe(c.language()).unwrap().len());
            } else {
                prop_assert_eq!(c, s.spec());
            }
        }
    }

    #[test]
    fn restriction_before_fusion_is_weaker_when_components_reflect(seed in any::<u64>()) {
        let inst = If::default();
        let e = Engine::new(&inst, Bound::DEFAULT);
        let is = system(seed, &PARAMS);
        let star = system_consequence(&e, &is).unwrap();
        let restricted = restrict_system(&e, &is).unwrap();
        let a = restrict_system(&e, &star).unwrap();
        let b = system_consequence(&e, &restricted).unwrap();
        if non_reflecting_node(&e, &is).unwrap().is_none() {
            prop_assert!(pointwise_leq(&e, &a, &b).unwrap());
        }

        let sound = include_system(&e, &restricted).unwrap();
        let sound_star = sound_system_consequence(&e, &sound).unwrap();
        let via_inclusion = restrict_system(&e, &system_consequence(&e, &sound).unwrap()).unwrap();
        prop_assert_eq!(&via_inclusion, &sound_star);
        prop_assert_eq!(&restrict_system(&e, &sound).unwrap(), &sound);
        prop_assert!(e.is_sound(&fusion(&e, &sound).unwrap()).unwrap());
    }
}

const NONE: [&str; 0] = [];

/// A sound discrete system whose empty node forces an empty core: the
/// restriction of the system consequence is then strictly weaker than the
/// system consequence of the restriction at the other node.
#[test]
fn empty_node_breaks_the_restriction_inequality() {
    let inst = If::default();
    let e = Engine::new(&inst, Bound::DEFAULT);
    let a = IfLanguage::new(["a"]);
    let b = IfLanguage::new(["b"]);
    let empty = Classification::from_rows(&a, []);
    let one = Classification::from_rows(&b, [["b".to_string()].into()]);
    let is = InformationSystem::new(
        &e,
        ShapeGraph::discrete(["n0", "n1"]).unwrap(),
        vec![
            Logic::new(&inst, empty, Specification::parse(&inst, a, ["|-"]).unwrap()).unwrap(),
            Logic::new(&inst, one, Specification::empty(b)).unwrap(),
        ],
        vec![],
    )
    .unwrap();
    assert!(include_system(&e, &is).is_ok());
    assert_eq!(non_reflecting_node(&e, &is).unwrap(), Some("n1".to_string()));
    let lhs = restrict_system(&e, &system_consequence(&e, &is).unwrap()).unwrap();
    let rhs = system_consequence(&e, &restrict_system(&e, &is).unwrap()).unwrap();
    assert!(!pointwise_leq(&e, &lhs, &rhs).unwrap());
    assert!(pointwise_leq(&e, &rhs, &lhs).unwrap());
    assert_eq!(lhs.logics()[1].spec().len(), 2);
    assert_eq!(rhs.logics()[1].spec().len(), 4);
}

/// Across random systems every violation of the inequality comes with a
/// non-reflecting component.
#[test]
fn restriction_inequality_fails_only_without_reflection() {
    let inst = If::default();
    let e = Engine::new(&inst, Bound::DEFAULT);
    let mut violations = 0;
    for seed in 0..300 {
        let is = system(seed, &PARAMS);
        let lhs = restrict_system(&e, &system_consequence(&e, &is).unwrap()).unwrap();
        let rhs = system_consequence(&e, &restrict_system(&e, &is).unwrap()).unwrap();
        if !pointwise_leq(&e, &lhs, &rhs).unwrap() {
            violations += 1;
            assert!(non_reflecting_node(&e, &is).unwrap().is_some(), "seed {seed}");
        }
    }
    assert!(violations > 0);
}

fn constant_system(seed: u64) -> InformationSystem<If> {
    let inst = If::default();
    let e = Engine::new(&inst, Bound::DEFAULT);
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let lang = random_if_language(&mut r, 2);
    let m = random_classification(&mut r, &lang, 3);
    let n = r.random_range(1..=3);
    let edges: Vec<(usize, usize)> = (1..n).map(|j| (r.random_range(0..j), j)).collect();
    let mut specs: Vec<Specification<If>> = Vec::new();
    for j in 0..n {
        let mut parts = vec![random_if_spec(&mut r, &lang, 2)];
        parts.extend(edges.iter().filter(|(_, t)| *t == j).map(|(s, _)| specs[*s].clone()));
        specs.push(e.meet(&parts.iter().collect::<Vec<_>>()).unwrap());
    }
    let shape = ShapeGraph::new(
        (0..n).map(|i| format!("n{i}")),
        edges
            .iter()
            .enumerate()
            .map(|(k, (i, j))| (format!("e{k}"), format!("n{i}"), format!("n{j}"))),
    )
    .unwrap();
    let logics = specs
        .into_iter()
        .map(|t| Logic::new(&inst, m.clone(), t).unwrap())
        .collect();
    let id = Infomorphism::identity(&m);
    InformationSystem::new(&e, shape, logics, vec![id; edges.len()]).unwrap()
}

#[test]
fn constant_system_consequence_is_the_closed_meet_everywhere() {
    let inst = If::default();
    let e = Engine::new(&inst, Bound::DEFAULT);
    for seed in 0..100 {
        let is = constant_system(seed);
        let specs: Vec<&Specification<If>> = is.logics().iter().map(|l| l.spec()).collect();
        let closed = e.consequence(&e.meet(&specs).unwrap()).unwrap();
        let star = system_consequence(&e, &is).unwrap();
        for l in star.logics() {
            assert_eq!(l.spec(), &closed, "seed {seed}");
        }
    }
}

#[test]
fn pointwise_order_implies_system_entailment() {
    let inst = If::default();
    let e = Engine::new(&inst, Bound::DEFAULT);
    let mut r = ChaCha8Rng::seed_from_u64(17);
    for seed in 0..100 {
        let is = system(seed, &PARAMS);
        let other = strengthen(&e, &is, &mut r);
        assert!(pointwise_leq(&e, &other, &is).unwrap());
        assert!(system_entails(&e, &other, &is).unwrap());
        let underlying: BTreeSet<_> = is
            .underlying()
            .structures()
            .iter()
            .map(|m| inst.structure_language(m))
            .collect();
        let other_langs: BTreeSet<_> = other
            .underlying()
            .structures()
            .iter()
            .map(|m| inst.structure_language(m))
            .collect();
        assert_eq!(underlying, other_langs);
    }
}
