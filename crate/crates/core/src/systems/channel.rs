//! Channels, covering and minimal covers.
//!
//! A channel covers a distributed system when `γ_i = σ_e · γ_j` for every
//! edge `e: i → j`, compared extensionally. The minimal cover is the colimit
//! channel; every covering channel factors through it by a unique
//! refinement `ρ` with `ι_i · ρ = γ_i`.

use std::collections::BTreeMap;

use super::DistributedSystem;
use crate::error::{Error, Result};
use crate::institution::{language_colimit, Institution, LanguageMorphism, Vocabulary};

/// A core structure and one component morphism per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Channel<I: Institution> {
    pub core: I::Structure,
    pub components: Vec<I::StrucMorphism>,
}

fn check_components<I: Institution>(inst: &I, ch: &Channel<I>, ds: &DistributedSystem<I>) -> Result<()> {
    if ch.components.len() != ds.shape().node_count() {
        return Err(Error::ShapeMismatch(format!(
            "channel has {} components for {} nodes",
            ch.components.len(),
            ds.shape().node_count()
        )));
    }
    for (m, g) in ds.structures().iter().zip(&ch.components) {
        inst.check_struc_morphism(g, m, &ch.core)?;
    }
    Ok(())
}

/// The first edge where `γ_i ≠ σ_e · γ_j`.
pub fn covering_violation<I: Institution>(
    inst: &I,
    ch: &Channel<I>,
    ds: &DistributedSystem<I>,
) -> Result<Option<String>> {
    check_components(inst, ch, ds)?;
    for (edge, f) in ds.shape().edges().iter().zip(ds.morphisms()) {
        let via = inst.compose_struc(f, &ch.components[edge.target])?;
        if via != ch.components[edge.source] {
            return Ok(Some(edge.id.clone()));
        }
    }
    Ok(None)
}

pub fn is_covering<I: Institution>(inst: &I, ch: &Channel<I>, ds: &DistributedSystem<I>) -> Result<bool> {
    Ok(covering_violation(inst, ch, ds)?.is_none())
}

/// The colimit channel of a distributed system.
pub fn minimal_cover<I: Institution>(inst: &I, ds: &DistributedSystem<I>) -> Result<Channel<I>> {
    let languages: Vec<I::Language> = ds.structures().iter().map(|m| inst.structure_language(m)).collect();
    let lang_refs: Vec<&I::Language> = languages.iter().collect();
    let sigmas: Vec<&LanguageMorphism<I::Language>> = ds.morphisms().iter().map(|f| inst.struc_language(f)).collect();
    let (core_language, injections) = language_colimit(inst, ds.shape(), &lang_refs, &sigmas)?;
    let structures: Vec<&I::Structure> = ds.structures().iter().collect();
    let morphisms: Vec<&I::StrucMorphism> = ds.morphisms().iter().collect();
    let (core, components) =
        inst.structure_colimit(ds.shape(), &structures, &morphisms, &core_language, &injections)?;
    let ch = Channel { core, components };
    if let Some(edge) = covering_violation(inst, &ch, ds)? {
        return Err(Error::Inconsistent(format!(
            "minimal cover fails to cover edge `{edge}`"
        )));
    }
    Ok(ch)
}

/// Maximum number of symbol assignments searched when confirming a
/// refinement is unique.
pub const ASSIGNMENT_CAP: u128 = 1 << 20;

/// Solves `ι_i · ρ = γ_i` for `ρ` on symbols. The equations force `ρ` on
/// every core symbol; uniqueness is then confirmed by exhausting all
/// assignments when there are at most [`ASSIGNMENT_CAP`] of them.
pub(crate) fn solve_refinement<L: Vocabulary>(
    injections: &[&LanguageMorphism<L>],
    components: &[&LanguageMorphism<L>],
    min_core: &L,
    other_core: &L,
) -> Result<LanguageMorphism<L>> {
    let mut forced: BTreeMap<String, String> = BTreeMap::new();
    for (iota, gamma) in injections.iter().zip(components) {
        for (y, c) in iota.map() {
            let want = gamma
                .apply(y)
                .ok_or_else(|| Error::NoRefinement(format!("component does not map `{y}`")))?;
            match forced.get(c) {
                Some(prev) if prev != want => {
                    return Err(Error::NoRefinement(format!(
                        "core symbol `{c}` must map to both `{prev}` and `{want}`"
                    )))
                }
                _ => {
                    forced.insert(c.clone(), want.to_string());
                }
            }
        }
    }
    let rho = LanguageMorphism::new(min_core.clone(), other_core.clone(), forced)
        .map_err(|e| Error::NoRefinement(e.to_string()))?;

    let (src, tgt) = (min_core.symbols(), other_core.symbols());
    let total = (tgt.len() as u128).checked_pow(src.len() as u32);
    if let Some(total) = total.filter(|&t| t <= ASSIGNMENT_CAP) {
        let mut solutions = 0usize;
        for code in 0..total {
            let mut rest = code;
            let mut map = BTreeMap::new();
            for s in &src {
                map.insert(s.clone(), tgt[(rest % tgt.len() as u128) as usize].clone());
                rest /= tgt.len() as u128;
            }
            let candidate = LanguageMorphism::new(min_core.clone(), other_core.clone(), map)?;
            let solves = injections
                .iter()
                .zip(components)
                .all(|(iota, gamma)| iota.then(&candidate).as_ref() == Ok(*gamma));
            if solves {
                solutions += 1;
            }
        }
        if solutions != 1 {
            return Err(Error::RefinementNotUnique(solutions));
        }
    }
    Ok(rho)
}

/// The unique refinement from the minimal cover `min` to a covering
/// channel `other`, verified as a structure morphism that factors every
/// component.
pub fn mediator<I: Institution>(
    inst: &I,
    min: &Channel<I>,
    other: &Channel<I>,
    ds: &DistributedSystem<I>,
) -> Result<I::StrucMorphism> {
    if let Some(edge) = covering_violation(inst, other, ds)? {
        return Err(Error::NotCovering { edge });
    }
    let injections: Vec<&LanguageMorphism<I::Language>> =
        min.components.iter().map(|g| inst.struc_language(g)).collect();
    let components: Vec<&LanguageMorphism<I::Language>> =
        other.components.iter().map(|g| inst.struc_language(g)).collect();
    let min_core = inst.structure_language(&min.core);
    let other_core = inst.structure_language(&other.core);
    let rho = solve_refinement(&injections, &components, &min_core, &other_core)?;
    inst.check_morphism(&rho)?;
    let f = inst.refinement(rho, &min.core, &min.components, &other.core, &other.components)?;
    inst.check_struc_morphism(&f, &min.core, &other.core)
        .map_err(|e| Error::NoRefinement(e.to_string()))?;
    for (node, (iota, gamma)) in min.components.iter().zip(&other.components).enumerate() {
        if inst.compose_struc(iota, &f)? != *gamma {
            return Err(Error::NoRefinement(format!(
                "refinement does not factor the component at node `{}`",
                ds.shape().nodes()[node]
            )));
        }
    }
    Ok(f)
}
