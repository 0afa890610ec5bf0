mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syscons_core::ifl::If;
use syscons_core::random::{random_if_language, random_if_spec, random_type_map};
use syscons_core::spec_flow::{Engine, Specification};
use syscons_core::{Bound, Institution};

use common::*;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn engine(inst: &If) -> Engine<'_, If> {
    Engine::new(inst, Bound::DEFAULT)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn consequence_matches_brute_force(seed in any::<u64>(), bound in 1usize..=4) {
        let inst = If::default();
        let e = Engine::new(&inst, Bound::new(bound).unwrap());
        let mut r = rng(seed);
        let lang = random_if_language(&mut r, 3);
        let t = random_if_spec(&mut r, &lang, 4);
        let types = type_index(&lang);
        let masks: Vec<_> = t.sentences().iter().map(|s| sequent_masks(&types, s)).collect();
        let expected = oracle_consequence(types.len(), &masks, bound);
        let got: BTreeSet<_> = e.consequence(&t).unwrap().sentences().iter().map(|s| sequent_masks(&types, s)).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn consequence_is_a_closure_operator(seed in any::<u64>()) {
        let inst = If::default();
        let e = engine(&inst);
        let mut r = rng(seed);
        let lang = random_if_language(&mut r, 3);
        let t1 = random_if_spec(&mut r, &lang, 3);
        let extra = random_if_spec(&mut r, &lang, 2);
        let t2 = e.meet(&[&t1, &extra]).unwrap();
        let c1 = e.consequence(&t1).unwrap();
        prop_assert!(t1.sentences().is_subset(c1.sentences()));
        prop_assert!(c1.sentences().is_subset(e.consequence(&t2).unwrap().sentences()));
        prop_assert_eq!(e.consequence(&c1).unwrap(), c1.clone());
        prop_assert!(e.is_closed(&c1).unwrap());
        prop_assert!(e.leq(&t2, &t1).unwrap());
    }

    #[test]
    fn meet_and_join_bound_their_arguments(seed in any::<u64>()) {
        let inst = If::default();
        let e = engine(&inst);
        let mut r = rng(seed);
        let lang = random_if_language(&mut r, 3);
        let t1 = random_if_spec(&mut r, &lang, 3);
        let t2 = random_if_spec(&mut r, &lang, 3);
        let meet = e.meet(&[&t1, &t2]).unwrap();
        let join = e.join(&[&t1, &t2]).unwrap();
        for t in [&t1, &t2] {
            prop_assert!(e.leq(&meet, t).unwrap());
            prop_assert!(e.leq(t, &join).unwrap());
        }
    }

    #[test]
    fn flows_form_an_adjunction(seed in any::<u64>()) {
        let inst = If::default();
        let e = engine(&inst);
        let mut r = rng(seed);
        let l1 = random_if_language(&mut r, 3);
        let l2 = random_if_language(&mut r, 3);
        let sigma = random_type_map(&mut r, &l1, &l2);
        let t1 = random_if_spec(&mut r, &l1, 3);
        let t2 = random_if_spec(&mut r, &l2, 3);
        let left = e.leq(&e.inv(&sigma, &t2).unwrap(), &t1).unwrap();
        let right = e.leq(&t2, &e.dir(&sigma, &t1).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn dir_commutes_with_consequence_and_inv_is_closed(seed in any::<u64>()) {
        let inst = If::default();
        let e = engine(&inst);
        let mut r = rng(seed);
        let l1 = random_if_language(&mut r, 3);
        let l2 = random_if_language(&mut r, 3);
        let sigma = random_type_map(&mut r, &l1, &l2);
        let t1 = random_if_spec(&mut r, &l1, 3);
        let t2 = random_if_spec(&mut r, &l2, 3);
        let direct = e.consequence(&e.dir(&sigma, &t1).unwrap()).unwrap();
        let closed_first = e.consequence(&e.dir(&sigma, &e.consequence(&t1).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(direct, closed_first);
        prop_assert!(e.is_closed(&e.inv(&sigma, &t2).unwrap()).unwrap());
    }

    #[test]
    fn spec_morphism_matches_definition(seed in any::<u64>()) {
        let inst = If::default();
        let e = engine(&inst);
        let mut r = rng(seed);
        let l1 = random_if_language(&mut r, 2);
        let l2 = random_if_language(&mut r, 3);
        let sigma = random_type_map(&mut r, &l1, &l2);
        let t1 = random_if_spec(&mut r, &l1, 2);
        let t2 = if r.clone().next_u32().is_multiple_of(2) {
            e.meet(&[&random_if_spec(&mut r, &l2, 2), &e.dir(&sigma, &t1).unwrap()]).unwrap()
        } else {
            random_if_spec(&mut r, &l2, 3)
        };
        let (types1, types2) = (type_index(&l1), type_index(&l2));
        let m1: Vec<_> = t1.sentences().iter().map(|s| sequent_masks(&types1, s)).collect();
        let m2: Vec<_> = t2.sentences().iter().map(|s| sequent_masks(&types2, s)).collect();
        let c2 = oracle_consequence(types2.len(), &m2, 3);
        let expected = oracle_consequence(types1.len(), &m1, 3).into_iter().all(|s| {
            let image = inst.translate(&sigma, &to_sequent(&types1, s));
            c2.contains(&sequent_masks(&types2, &image))
        });
        prop_assert_eq!(e.is_spec_morphism(&sigma, &t1, &t2).unwrap(), expected);
    }
}

#[test]
fn empty_theory_over_one_type_entails_only_identity() {
    let inst = If::default();
    let e = engine(&inst);
    let lang = syscons_core::ifl::IfLanguage::new(["a"]);
    let c = e.consequence(&Specification::empty(lang.clone())).unwrap();
    let expected = Specification::parse(&inst, lang, ["a |- a"]).unwrap();
    assert_eq!(c, expected);
}
