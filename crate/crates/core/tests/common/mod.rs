//! Brute-force IF semantics on bitmasks, written without the engine.
//!
//! A row is a bitmask over the sorted types; a structure is a bitmask over
//! rows; a sequent is a pair of type masks.

#![allow(dead_code)]

use std::collections::BTreeSet;

use syscons_core::ifl::{IfLanguage, Sequent};

pub fn type_index(lang: &IfLanguage) -> Vec<String> {
    lang.types().iter().cloned().collect()
}

pub fn mask_of(types: &[String], set: &BTreeSet<String>) -> u32 {
    set.iter()
        .map(|y| 1u32 << types.iter().position(|t| t == y).expect("type in language"))
        .fold(0, |a, b| a | b)
}

pub fn set_of(types: &[String], mask: u32) -> BTreeSet<String> {
    (0..types.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| types[i].clone())
        .collect()
}

pub fn sequent_masks(types: &[String], s: &Sequent) -> (u32, u32) {
    (mask_of(types, &s.antecedent), mask_of(types, &s.succedent))
}

pub fn row_satisfies(row: u32, (a, b): (u32, u32)) -> bool {
    a & row != a || b & row != 0
}

pub fn structure_satisfies(rows: u64, n: usize, s: (u32, u32)) -> bool {
    (0..1u32 << n).all(|r| rows >> r & 1 == 0 || row_satisfies(r, s))
}

/// Every sequent over `n` types as masks, in no particular order.
pub fn all_sequents(n: usize) -> Vec<(u32, u32)> {
    let k = 1u32 << n;
    (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect()
}

/// `T•` at a row-count bound: every structure with at most `bound` rows,
/// every sequent.
pub fn oracle_consequence(n: usize, theory: &[(u32, u32)], bound: usize) -> BTreeSet<(u32, u32)> {
    let structures: Vec<u64> = (0..1u64 << (1u32 << n))
        .filter(|m| m.count_ones() as usize <= bound)
        .collect();
    let mut out = BTreeSet::new();
    for s in all_sequents(n) {
        let holds = structures
            .iter()
            .all(|&m| !theory.iter().all(|&t| structure_satisfies(m, n, t)) || structure_satisfies(m, n, s));
        if holds {
            out.insert(s);
        }
    }
    out
}

pub fn to_sequent(types: &[String], (a, b): (u32, u32)) -> Sequent {
    Sequent::new(set_of(types, a), set_of(types, b))
}
