//! Fusion, system consequence and the system orders.
//!
//! Fusion flows every node theory along its minimal-cover injection and
//! takes the meet (union) at the core, without closing it. System
//! consequence pulls the fused theory back to every node: node `i` receives
//! the source universe sentences whose translation the fusion entails.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::channel::minimal_cover;
use super::{Channel, InformationSystem};
use crate::error::{Error, Result};
use crate::ifl::{If, Sequent};
use crate::institution::{Institution, LanguageMorphism};
use crate::logic_flow::Logic;
use crate::random::{random_if_system, SystemParams};
use crate::spec_flow::{Engine, Specification};

fn fuse<I: Institution>(engine: &Engine<'_, I>, is: &InformationSystem<I>) -> Result<(Channel<I>, Logic<I>)> {
    let ch = minimal_cover(engine.inst, &is.underlying())?;
    let flowed = is
        .logics()
        .iter()
        .zip(&ch.components)
        .map(|(l, g)| engine.dir(engine.inst.struc_language(g), l.spec()))
        .collect::<Result<Vec<_>>>()?;
    let core_language = engine.inst.structure_language(&ch.core);
    let fused = if flowed.is_empty() {
        Specification::empty(core_language)
    } else {
        engine.meet(&flowed.iter().collect::<Vec<_>>())?
    };
    let logic = Logic::new(engine.inst, ch.core.clone(), fused)?;
    Ok((ch, logic))
}

/// The fused logic at the core of the minimal cover. Its theory is the
/// union of the directly flowed node theories and is left unclosed.
pub fn fusion<I: Institution>(engine: &Engine<'_, I>, is: &InformationSystem<I>) -> Result<Logic<I>> {
    Ok(fuse(engine, is)?.1)
}

/// `IS◆`: every node theory replaced by the inverse flow of the fusion.
pub fn system_consequence<I: Institution>(
    engine: &Engine<'_, I>,
    is: &InformationSystem<I>,
) -> Result<InformationSystem<I>> {
    let (ch, fused) = fuse(engine, is)?;
    let logics = is
        .logics()
        .iter()
        .zip(&ch.components)
        .map(|(l, g)| {
            let iota: &LanguageMorphism<I::Language> = engine.inst.struc_language(g);
            Ok(l.with_spec(engine.inv(iota, fused.spec())?))
        })
        .collect::<Result<Vec<_>>>()?;
    is.with_logics(engine, logics)
        .map_err(|e| Error::Inconsistent(format!("system consequence broke an edge: {e}")))
}

/// System consequence among sound systems: the fusion of a sound system is
/// sound, and every node receives the sound inverse flow `inv(ι_i)(F•) ∩ M_i^Σ`.
pub fn sound_system_consequence<I: Institution>(
    engine: &Engine<'_, I>,
    is: &InformationSystem<I>,
) -> Result<InformationSystem<I>> {
    include_system(engine, is)?;
    let (ch, fused) = fuse(engine, is)?;
    if let Some(s) = engine.soundness_violation(&fused)? {
        return Err(Error::Inconsistent(format!("fusion of a sound system refutes `{s}`")));
    }
    let logics = is
        .logics()
        .iter()
        .zip(&ch.components)
        .map(|(l, g)| engine.inv_sound(engine.inst.struc_language(g), l.structure(), &fused))
        .collect::<Result<Vec<_>>>()?;
    is.with_logics(engine, logics)
        .map_err(|e| Error::Inconsistent(format!("sound system consequence broke an edge: {e}")))
}

/// First node whose minimal-cover component does not reflect satisfaction:
/// the core's reduct to the node satisfies a sentence the node structure
/// refutes. When every component reflects, `res(IS◆) ≤ (res IS)◆`.
pub fn non_reflecting_node<I: Institution>(
    engine: &Engine<'_, I>,
    is: &InformationSystem<I>,
) -> Result<Option<String>> {
    let ch = minimal_cover(engine.inst, &is.underlying())?;
    for ((node, l), g) in is.shape().nodes().iter().zip(is.logics()).zip(&ch.components) {
        let seen = engine.inst.reduct(engine.inst.struc_language(g), &ch.core);
        if engine.intent(&seen)? != engine.intent(l.structure())? {
            return Ok(Some(node.clone()));
        }
    }
    Ok(None)
}

/// Node-by-node logic order.
pub fn pointwise_leq<I: Institution>(
    engine: &Engine<'_, I>,
    a: &InformationSystem<I>,
    b: &InformationSystem<I>,
) -> Result<bool> {
    a.shape().check_same(b.shape())?;
    for (l1, l2) in a.logics().iter().zip(b.logics()) {
        if !engine.logic_leq(l1, l2)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `IS1 ⪯ IS2` iff `IS1◆` is pointwise below `IS2`.
pub fn system_entails<I: Institution>(
    engine: &Engine<'_, I>,
    a: &InformationSystem<I>,
    b: &InformationSystem<I>,
) -> Result<bool> {
    a.shape().check_same(b.shape())?;
    pointwise_leq(engine, &system_consequence(engine, a)?, b)
}

/// Nodewise restriction to sound logics.
pub fn restrict_system<I: Institution>(
    engine: &Engine<'_, I>,
    is: &InformationSystem<I>,
) -> Result<InformationSystem<I>> {
    let logics = is.logics().iter().map(|l| engine.res(l)).collect::<Result<Vec<_>>>()?;
    is.with_logics(engine, logics)
}

/// Inclusion of a sound system; fails on the first unsound node.
pub fn include_system<I: Institution>(
    engine: &Engine<'_, I>,
    is: &InformationSystem<I>,
) -> Result<InformationSystem<I>> {
    for (node, l) in is.shape().nodes().iter().zip(is.logics()) {
        if let Some(s) = engine.soundness_violation(l)? {
            return Err(Error::NotSound(format!("{s}` at node `{node}")));
        }
    }
    Ok(is.clone())
}

/// Size limits for the strictness search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessBounds {
    pub params: SystemParams,
    pub attempts: usize,
}

impl Default for WitnessBounds {
    fn default() -> Self {
        Self {
            params: SystemParams {
                max_nodes: 2,
                max_types: 2,
                max_edges: 1,
                max_extra_instances: 2,
                max_sentences: 3,
            },
            attempts: 200,
        }
    }
}

/// A system where restricting before fusing loses a sentence: `sentence`
/// is in the theory of `res(IS◆)` at `node` but not in `(res IS)◆`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictnessWitness {
    pub system: InformationSystem<If>,
    pub node: String,
    pub sentence: Sequent,
    pub attempt: usize,
}

/// Seeded search over random IF systems for a strict instance of
/// `res(IS◆) ≤ (res IS)◆`.
pub fn find_strictness_witness(
    engine: &Engine<'_, If>,
    seed: u64,
    bounds: WitnessBounds,
) -> Result<Option<StrictnessWitness>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..bounds.attempts {
        let is = random_if_system(&mut rng, engine, &bounds.params)?;
        let fuse_then_restrict = restrict_system(engine, &system_consequence(engine, &is)?)?;
        let restrict_then_fuse = system_consequence(engine, &restrict_system(engine, &is)?)?;
        for (node, (a, b)) in is
            .shape()
            .nodes()
            .iter()
            .zip(fuse_then_restrict.logics().iter().zip(restrict_then_fuse.logics()))
        {
            if let Some(s) = a.spec().sentences().difference(b.spec().sentences()).next() {
                return Ok(Some(StrictnessWitness {
                    system: is.clone(),
                    node: node.clone(),
                    sentence: s.clone(),
                    attempt,
                }));
            }
        }
    }
    Ok(None)
}
