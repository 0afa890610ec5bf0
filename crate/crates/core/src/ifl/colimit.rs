//! Colimits of classification diagrams.
//!
//! Types are the colimit of the type sets. Instances are the compatible
//! tuples `(x_i)` with `x_i = g_e(x_j)` for every edge `e: i → j`, where `g_e`
//! is the contravariant instance map. A tuple is classified by a merged type
//! when its component at any member node is classified by that member.

use std::collections::{BTreeMap, BTreeSet};

use super::{Classification, If, Infomorphism, TypeMap};
use crate::error::{Error, Result};
use crate::institution::language_colimit;
use crate::shape::ShapeGraph;

/// Colimit of a diagram of classifications and infomorphisms: the core and
/// one injection per node.
pub fn classification_colimit(
    shape: &ShapeGraph,
    classifications: &[&Classification],
    infomorphisms: &[&Infomorphism],
) -> Result<(Classification, Vec<Infomorphism>)> {
    let languages: Vec<_> = classifications.iter().map(|c| c.language()).collect();
    let lang_refs: Vec<_> = languages.iter().collect();
    let type_maps: Vec<&TypeMap> = infomorphisms.iter().map(|f| f.type_map()).collect();
    let (core_language, injections) = language_colimit(&If::default(), shape, &lang_refs, &type_maps)?;
    core_from_type_colimit(shape, classifications, infomorphisms, &core_language, &injections)
}

pub(super) fn core_from_type_colimit(
    shape: &ShapeGraph,
    classifications: &[&Classification],
    infomorphisms: &[&Infomorphism],
    core_language: &super::IfLanguage,
    injections: &[TypeMap],
) -> Result<(Classification, Vec<Infomorphism>)> {
    let n = shape.node_count();
    if classifications.len() != n || infomorphisms.len() != shape.edges().len() || injections.len() != n {
        return Err(Error::ShapeMismatch(
            "classification diagram does not match its shape".into(),
        ));
    }
    for (edge, f) in shape.edges().iter().zip(infomorphisms) {
        f.check(classifications[edge.source], classifications[edge.target])?;
    }

    let tuples = compatible_tuples(shape, classifications, infomorphisms);

    let mut labels = Vec::with_capacity(tuples.len());
    let mut seen = BTreeSet::new();
    for t in &tuples {
        let label = tuple_label(t);
        if !seen.insert(label.clone()) {
            return Err(Error::Inconsistent(format!(
                "core instance label `{label}` is ambiguous"
            )));
        }
        labels.push(label);
    }

    // members of each core type, in node order
    let mut members: BTreeMap<&str, Vec<(usize, &str)>> = BTreeMap::new();
    for (node, inj) in injections.iter().enumerate() {
        for (y, c) in inj.map() {
            members.entry(c.as_str()).or_default().push((node, y.as_str()));
        }
    }

    let mut rows = BTreeMap::new();
    for (t, label) in tuples.iter().zip(&labels) {
        let mut row = BTreeSet::new();
        for (c, ms) in &members {
            let (rep_node, rep_ty) = ms[0];
            let holds = classifications[rep_node].classifies(t[rep_node], rep_ty);
            if let Some((node, ty)) = ms[1..]
                .iter()
                .find(|(node, ty)| classifications[*node].classifies(t[*node], ty) != holds)
            {
                return Err(Error::Inconsistent(format!(
                    "incidence of `{c}` on `{label}` differs between `{rep_ty}` and `{ty}` at node {node}"
                )));
            }
            if holds {
                row.insert((*c).to_string());
            }
        }
        rows.insert(label.clone(), row);
    }
    let core = Classification::new(core_language.types().iter().cloned(), rows)?;

    let components = injections
        .iter()
        .enumerate()
        .map(|(node, inj)| {
            let instances = tuples
                .iter()
                .zip(&labels)
                .map(|(t, label)| (label.clone(), t[node].to_string()))
                .collect();
            Infomorphism::new(inj.clone(), instances)
        })
        .collect::<Vec<_>>();
    for (node, g) in components.iter().enumerate() {
        g.check(classifications[node], &core)?;
    }
    Ok((core, components))
}

fn tuple_label(t: &[&str]) -> String {
    match t.first() {
        Some(first) if t.iter().all(|x| x == first) => (*first).to_string(),
        _ => format!("({})", t.join(",")),
    }
}

/// All tuples compatible with every edge, in lexicographic order.
fn compatible_tuples<'a>(
    shape: &ShapeGraph,
    classifications: &[&'a Classification],
    infomorphisms: &[&'a Infomorphism],
) -> Vec<Vec<&'a str>> {
    let n = shape.node_count();
    let candidates: Vec<Vec<&str>> = classifications
        .iter()
        .map(|c| c.instances().map(String::as_str).collect())
        .collect();
    // edges whose later endpoint is `k`, checked once both ends are assigned
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, edge) in shape.edges().iter().enumerate() {
        checks[edge.source.max(edge.target)].push(e);
    }

    let mut out = Vec::new();
    let mut current: Vec<&str> = Vec::with_capacity(n);
    fn go<'a>(
        k: usize,
        current: &mut Vec<&'a str>,
        out: &mut Vec<Vec<&'a str>>,
        candidates: &[Vec<&'a str>],
        checks: &[Vec<usize>],
        shape: &ShapeGraph,
        infomorphisms: &[&Infomorphism],
    ) {
        if k == candidates.len() {
            out.push(current.clone());
            return;
        }
        for &x in &candidates[k] {
            current.push(x);
            let ok = checks[k].iter().all(|&e| {
                let edge = &shape.edges()[e];
                infomorphisms[e]
                    .instance_map()
                    .get(current[edge.target])
                    .map(String::as_str)
                    == Some(current[edge.source])
            });
            if ok {
                go(k + 1, current, out, candidates, checks, shape, infomorphisms);
            }
            current.pop();
        }
    }
    go(0, &mut current, &mut out, &candidates, &checks, shape, infomorphisms);
    out
}

impl Infomorphism {
    /// The infomorphism with the given type map whose instance map is the
    /// identity; used for systems where every node shares one instance set.
    pub fn with_identity_instances(types: TypeMap, instances: &Classification) -> Self {
        Infomorphism::new(types, instances.instances().map(|x| (x.clone(), x.clone())).collect())
    }
}
