use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syscons_core::ifl::{Classification, If, IfLanguage, Infomorphism, TypeMap};
use syscons_core::logic_flow::Logic;
use syscons_core::random::{
    random_classification, random_if_language, random_if_logic, random_if_spec, random_row, random_type_map,
};
use syscons_core::spec_flow::Engine;
use syscons_core::{Bound, Institution};

/// `σ: L1 → L2` with `M1` the reduct of `M2` plus extra rows, so `σ` is a
/// structure morphism `M1 → M2`.
fn morphism_pair(r: &mut ChaCha8Rng) -> (TypeMap, Logic<If>, Logic<If>) {
    let inst = If::default();
    let l1 = random_if_language(r, 3);
    let l2 = random_if_language(r, 3);
    let sigma = random_type_map(r, &l1, &l2);
    let m2 = random_classification(r, &l2, 3);
    let mut rows: BTreeSet<BTreeSet<String>> = inst.reduct(&sigma, &m2).row_set();
    for _ in 0..r.random_range(0..=2) {
        rows.insert(random_row(r, &l1));
    }
    let m1 = Classification::from_rows(&l1, rows);
    let t1 = random_if_spec(r, &l1, 3);
    let t2 = random_if_spec(r, &l2, 3);
    (
        sigma,
        Logic::new(&inst, m1, t1).unwrap(),
        Logic::new(&inst, m2, t2).unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn restriction_is_a_sound_coreflection(seed in any::<u64>()) {
        let inst = If::default();
        let e = Engine::new(&inst, Bound::DEFAULT);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let l = random_if_logic(&mut r, 3, 3, 3);
        let res = e.res(&l).unwrap();
        prop_assert!(e.is_sound(&res).unwrap());
        prop_assert!(e.logic_leq(&l, &res).unwrap());
        let back = e.inc(&res).unwrap();
        prop_assert_eq!(&back, &res);
        if e.is_sound(&l).unwrap() {
            prop_assert!(e.equivalent(res.spec(), l.spec()).unwrap());
        } else {
            prop_assert!(e.inc(&l).is_err());
        }
        let nat = e.nat(l.structure()).unwrap();
        prop_assert!(e.is_sound(&nat).unwrap() && e.is_complete(&nat).unwrap());
        prop_assert!(e.logic_leq(&nat, &res).unwrap());
    }

    #[test]
    fn flows_preserve_soundness_and_completeness(seed in any::<u64>()) {
        let inst = If::default();
        let e = Engine::new(&inst, Bound::DEFAULT);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (sigma, l1, l2) = morphism_pair(&mut r);
        prop_assert!(e.is_structure_morphism(&sigma, l1.structure(), l2.structure()).unwrap());
        let sound1 = e.res(&l1).unwrap();
        let forward = e.dir_logic(&sigma, &sound1, l2.structure()).unwrap();
        prop_assert!(e.is_sound(&forward).unwrap());
        let complete2 = e.nat(l2.structure()).unwrap();
        let back = e.inv_logic(&sigma, l1.structure(), &complete2).unwrap();
        prop_assert!(e.is_complete(&back).unwrap());
    }

    #[test]
    fn sound_flows_form_an_adjunction(seed in any::<u64>()) {
        let inst = If::default();
        let e = Engine::new(&inst, Bound::DEFAULT);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (sigma, l1, l2) = morphism_pair(&mut r);
        let (s1, s2) = (e.res(&l1).unwrap(), e.res(&l2).unwrap());
        let pulled = e.inv_sound(&sigma, l1.structure(), &s2).unwrap();
        prop_assert!(e.is_sound(&pulled).unwrap());
        let pushed = e.res(&e.dir_logic(&sigma, &s1, l2.structure()).unwrap()).unwrap();
        prop_assert_eq!(
            e.logic_leq(&pulled, &s1).unwrap(),
            e.logic_leq(&s2, &pushed).unwrap()
        );
    }

    #[test]
    fn restriction_preserves_logic_morphisms(seed in any::<u64>()) {
        let inst = If::default();
        let e = Engine::new(&inst, Bound::DEFAULT);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (sigma, l1, l2) = morphism_pair(&mut r);
        let t2 = e.meet(&[l2.spec(), &e.dir(&sigma, l1.spec()).unwrap()]).unwrap();
        let l2 = l2.with_spec(t2);
        prop_assert!(e.is_spec_morphism(&sigma, l1.spec(), l2.spec()).unwrap());
        let (r1, r2) = (e.res(&l1).unwrap(), e.res(&l2).unwrap());
        prop_assert!(e.is_spec_morphism(&sigma, r1.spec(), r2.spec()).unwrap());
    }

    #[test]
    fn row_set_abstraction_is_adequate(seed in any::<u64>()) {
        let inst = If::default();
        let e = Engine::new(&inst, Bound::DEFAULT);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let lang = IfLanguage::new(["a", "b"]);
        let m = random_classification(&mut r, &lang, 3);
        prop_assert_eq!(e.intent(&m).unwrap(), e.intent(&m.row_set_abstraction()).unwrap());
    }
}

/// Every infomorphism between random classifications over at most two
/// types preserves satisfaction, and its instance map drives the reduct.
#[test]
fn infomorphisms_are_structure_morphisms() {
    let inst = If::default();
    let e = Engine::new(&inst, Bound::DEFAULT);
    let mut r = ChaCha8Rng::seed_from_u64(9);
    let mut found = 0;
    for _ in 0..400 {
        let l1 = random_if_language(&mut r, 2);
        let l2 = random_if_language(&mut r, 2);
        let sigma = random_type_map(&mut r, &l1, &l2);
        let a = random_classification(&mut r, &l1, 3);
        let b = random_classification(&mut r, &l2, 2);
        let sources: Vec<&String> = a.instances().collect();
        if sources.is_empty() && b.instance_count() > 0 {
            continue;
        }
        let g = b
            .instances()
            .map(|x| (x.clone(), sources[r.random_range(0..sources.len())].clone()))
            .collect();
        let f = Infomorphism::new(sigma.clone(), g);
        if f.check(&a, &b).is_ok() {
            found += 1;
            assert!(e.is_structure_morphism(&sigma, &a, &b).unwrap(), "{sigma} {a} {b}");
        }
    }
    assert!(found > 20, "only {found} infomorphisms sampled");
}
