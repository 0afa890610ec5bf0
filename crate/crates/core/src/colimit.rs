//! Colimits of finite set diagrams.
//!
//! The colimit of a diagram of finite sets is the disjoint union of the node
//! sets quotiented by the equivalence generated by `x ~ f_e(x)` for every edge
//! `e`. Language colimits in every shipped institution are built on this.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::shape::ShapeGraph;

/// A shape together with a finite set per node and a function per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSetDiagram<'a> {
    pub shape: &'a ShapeGraph,
    pub sets: Vec<BTreeSet<String>>,
    pub functions: Vec<BTreeMap<String, String>>,
}

/// One equivalence class of the colimit: its label and the `(node, element)`
/// pairs it contains, sorted by node index then element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimitClass {
    pub label: String,
    pub members: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetColimit {
    /// Classes sorted by label.
    pub classes: Vec<ColimitClass>,
    /// Per node, the element-to-class-label map.
    pub injections: Vec<BTreeMap<String, String>>,
}

impl SetColimit {
    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.classes.iter().map(|c| c.label.as_str())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // smaller index stays the root so class order follows first occurrence
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

impl FiniteSetDiagram<'_> {
    pub fn validate(&self) -> Result<()> {
        let n = self.shape.node_count();
        if self.sets.len() != n || self.functions.len() != self.shape.edges().len() {
            return Err(Error::ShapeMismatch("diagram does not match its shape".into()));
        }
        for (edge, f) in self.shape.edges().iter().zip(&self.functions) {
            for x in &self.sets[edge.source] {
                match f.get(x) {
                    None => {
                        return Err(Error::EdgeNotTotal {
                            edge: edge.id.clone(),
                            element: x.clone(),
                        })
                    }
                    Some(y) if !self.sets[edge.target].contains(y) => {
                        return Err(Error::ImageOutsideTarget {
                            symbol: x.clone(),
                            image: y.clone(),
                        })
                    }
                    Some(_) => {}
                }
            }
            if let Some(extra) = f.keys().find(|k| !self.sets[edge.source].contains(*k)) {
                return Err(Error::UnknownSourceSymbol { symbol: extra.clone() });
            }
        }
        Ok(())
    }
}

/// Computes the colimit of a finite set diagram.
///
/// Class labels: a class whose members all carry the same element name is
/// labelled by that name; a class merging several names is labelled by the
/// sorted distinct names joined with `_`. Labels that would collide are
/// qualified with their node ids (`node_element`), then numbered if needed.
pub fn colimit_of_finite_sets(d: &FiniteSetDiagram<'_>) -> Result<SetColimit> {
    d.validate()?;
    let mut index = Vec::new();
    let mut offsets = Vec::with_capacity(d.sets.len());
    for (node, set) in d.sets.iter().enumerate() {
        offsets.push(index.len());
        index.extend(set.iter().map(|x| (node, x.clone())));
    }
    let position = |node: usize, x: &str| -> usize {
        let set = &d.sets[node];
        offsets[node] + set.iter().position(|y| y == x).expect("validated element")
    };

    let mut uf = UnionFind::new(index.len());
    for (edge, f) in d.shape.edges().iter().zip(&d.functions) {
        for (x, y) in f {
            uf.union(position(edge.source, x), position(edge.target, y));
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..index.len() {
        let r = uf.find(i);
        groups.entry(r).or_default().push(i);
    }
    let groups: Vec<Vec<usize>> = groups.into_values().collect();

    let bare: Vec<String> = groups
        .iter()
        .map(|g| {
            let names: BTreeSet<&str> = g.iter().map(|&i| index[i].1.as_str()).collect();
            names.into_iter().collect::<Vec<_>>().join("_")
        })
        .collect();
    let qualified: Vec<String> = groups
        .iter()
        .map(|g| {
            let names: BTreeSet<String> = g
                .iter()
                .map(|&i| format!("{}_{}", d.shape.nodes()[index[i].0], index[i].1))
                .collect();
            names.into_iter().collect::<Vec<_>>().join("_")
        })
        .collect();

    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for b in &bare {
        *counts.entry(b.as_str()).or_default() += 1;
    }
    let mut labels: Vec<String> = bare
        .iter()
        .zip(&qualified)
        .map(|(b, q)| if counts[b.as_str()] > 1 { q.clone() } else { b.clone() })
        .collect();
    let mut taken: BTreeSet<String> = BTreeSet::new();
    for label in labels.iter_mut() {
        if !taken.insert(label.clone()) {
            let mut k = 1;
            while taken.contains(&format!("{label}_{k}")) {
                k += 1;
            }
            *label = format!("{label}_{k}");
            taken.insert(label.clone());
        }
    }

    let mut injections = vec![BTreeMap::new(); d.sets.len()];
    let mut classes: Vec<ColimitClass> = groups
        .iter()
        .zip(labels)
        .map(|(g, label)| {
            let members: Vec<(usize, String)> = g.iter().map(|&i| index[i].clone()).collect();
            for (node, x) in &members {
                injections[*node].insert(x.clone(), label.clone());
            }
            ColimitClass { label, members }
        })
        .collect();
    classes.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(SetColimit { classes, injections })
}
