//! Formal systems: languages, theories and specification morphisms with
//! no structures. Fusion and consequence work over the colimit language.

use std::fmt;

use super::channel::solve_refinement;
use crate::error::{Error, Result};
use crate::institution::{language_colimit, Institution, LanguageMorphism};
use crate::shape::ShapeGraph;
use crate::spec_flow::{Engine, Specification};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSystem<I: Institution> {
    shape: ShapeGraph,
    specs: Vec<Specification<I>>,
    morphisms: Vec<LanguageMorphism<I::Language>>,
}

impl<I: Institution> FormalSystem<I> {
    /// Checks every edge is a specification morphism.
    pub fn new(
        engine: &Engine<'_, I>,
        shape: ShapeGraph,
        specs: Vec<Specification<I>>,
        morphisms: Vec<LanguageMorphism<I::Language>>,
    ) -> Result<Self> {
        super::check_counts(&shape, specs.len(), morphisms.len())?;
        for (edge, sigma) in shape.edges().iter().zip(&morphisms) {
            engine
                .inst
                .check_morphism(sigma)
                .map_err(|e| super::at_edge(&edge.id, e))?;
            let (t1, t2) = (&specs[edge.source], &specs[edge.target]);
            if let Some(s) = engine
                .spec_morphism_violation(sigma, t1, t2)
                .map_err(|e| super::at_edge(&edge.id, e))?
            {
                return Err(Error::NotSpecMorphism {
                    edge: edge.id.clone(),
                    sentence: s.to_string(),
                });
            }
        }
        Ok(Self {
            shape,
            specs,
            morphisms,
        })
    }

    pub fn shape(&self) -> &ShapeGraph {
        &self.shape
    }

    pub fn specs(&self) -> &[Specification<I>] {
        &self.specs
    }

    pub fn spec(&self, node: &str) -> Option<&Specification<I>> {
        self.shape.node_index(node).map(|i| &self.specs[i])
    }

    pub fn morphisms(&self) -> &[LanguageMorphism<I::Language>] {
        &self.morphisms
    }
}

impl<I: Institution> fmt::Display for FormalSystem<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (node, t) in self.shape.nodes().iter().zip(&self.specs) {
            writeln!(f, "{node}: {t}")?;
        }
        Ok(())
    }
}

/// A core language and one language morphism per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageChannel<L> {
    pub core: L,
    pub components: Vec<LanguageMorphism<L>>,
}

fn language_covering_violation<I: Institution>(
    ch: &LanguageChannel<I::Language>,
    fs: &FormalSystem<I>,
) -> Result<Option<String>> {
    if ch.components.len() != fs.shape.node_count() {
        return Err(Error::ShapeMismatch(format!(
            "channel has {} components for {} nodes",
            ch.components.len(),
            fs.shape.node_count()
        )));
    }
    for (edge, sigma) in fs.shape.edges().iter().zip(&fs.morphisms) {
        if sigma.then(&ch.components[edge.target])? != ch.components[edge.source] {
            return Ok(Some(edge.id.clone()));
        }
    }
    Ok(None)
}

/// The colimit of the language diagram.
pub fn formal_minimal_cover<I: Institution>(inst: &I, fs: &FormalSystem<I>) -> Result<LanguageChannel<I::Language>> {
    let languages: Vec<&I::Language> = fs.specs.iter().map(|t| t.language()).collect();
    let sigmas: Vec<&LanguageMorphism<I::Language>> = fs.morphisms.iter().collect();
    let (core, components) = language_colimit(inst, &fs.shape, &languages, &sigmas)?;
    Ok(LanguageChannel { core, components })
}

/// The unique language morphism `ρ` with `ι_i · ρ = γ_i` for every node.
pub fn formal_mediator<I: Institution>(
    inst: &I,
    min: &LanguageChannel<I::Language>,
    other: &LanguageChannel<I::Language>,
    fs: &FormalSystem<I>,
) -> Result<LanguageMorphism<I::Language>> {
    if let Some(edge) = language_covering_violation(other, fs)? {
        return Err(Error::NotCovering { edge });
    }
    let injections: Vec<_> = min.components.iter().collect();
    let components: Vec<_> = other.components.iter().collect();
    let rho = solve_refinement(&injections, &components, &min.core, &other.core)?;
    inst.check_morphism(&rho)?;
    Ok(rho)
}

fn formal_fuse<I: Institution>(
    engine: &Engine<'_, I>,
    fs: &FormalSystem<I>,
) -> Result<(LanguageChannel<I::Language>, Specification<I>)> {
    let ch = formal_minimal_cover(engine.inst, fs)?;
    let flowed = fs
        .specs
        .iter()
        .zip(&ch.components)
        .map(|(t, iota)| engine.dir(iota, t))
        .collect::<Result<Vec<_>>>()?;
    let fused = if flowed.is_empty() {
        Specification::empty(ch.core.clone())
    } else {
        engine.meet(&flowed.iter().collect::<Vec<_>>())?
    };
    Ok((ch, fused))
}

/// Union of the directly flowed node theories over the colimit language.
pub fn formal_fusion<I: Institution>(engine: &Engine<'_, I>, fs: &FormalSystem<I>) -> Result<Specification<I>> {
    Ok(formal_fuse(engine, fs)?.1)
}

/// Every node theory replaced by the inverse flow of the fusion.
pub fn formal_system_consequence<I: Institution>(
    engine: &Engine<'_, I>,
    fs: &FormalSystem<I>,
) -> Result<FormalSystem<I>> {
    let (ch, fused) = formal_fuse(engine, fs)?;
    let specs = ch
        .components
        .iter()
        .map(|iota| engine.inv(iota, &fused))
        .collect::<Result<Vec<_>>>()?;
    FormalSystem::new(engine, fs.shape.clone(), specs, fs.morphisms.clone())
        .map_err(|e| Error::Inconsistent(format!("system consequence broke an edge: {e}")))
}

/// Node-by-node specification order.
pub fn formal_pointwise_leq<I: Institution>(
    engine: &Engine<'_, I>,
    a: &FormalSystem<I>,
    b: &FormalSystem<I>,
) -> Result<bool> {
    a.shape.check_same(&b.shape)?;
    for (t1, t2) in a.specs.iter().zip(&b.specs) {
        if !engine.leq(t1, t2)? {
            return Ok(false);
        }
    }
    Ok(true)
}
