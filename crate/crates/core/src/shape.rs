//! Finite shape graphs indexing systems and set diagrams.
//!
//! A shape is a finite directed multigraph. Systems over a shape assign a value
//! to every node and a morphism to every edge; composites are never stored, the
//! free category on the graph is implicit.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShapeEdge {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShapeGraph {
    nodes: Vec<String>,
    edges: Vec<ShapeEdge>,
}

impl ShapeGraph {
    /// Builds a shape from node ids and `(edge id, source id, target id)` triples.
    pub fn new<N, E>(nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let nodes: Vec<String> = nodes.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for n in &nodes {
            if !seen.insert(n.as_str()) {
                return Err(Error::ShapeMismatch(format!("duplicate node `{n}`")));
            }
        }
        let mut edge_ids = BTreeSet::new();
        let mut out = Vec::new();
        for (id, s, t) in edges {
            let find = |name: &str| {
                nodes.iter().position(|n| n == name).ok_or_else(|| Error::UnknownNode {
                    edge: id.clone(),
                    node: name.to_string(),
                })
            };
            let source = find(&s)?;
            let target = find(&t)?;
            if !edge_ids.insert(id.clone()) {
                return Err(Error::ShapeMismatch(format!("duplicate edge `{id}`")));
            }
            out.push(ShapeEdge { id, source, target });
        }
        Ok(Self { nodes, edges: out })
    }

    /// A shape with the given nodes and no edges.
    pub fn discrete<N>(nodes: N) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
    {
        Self::new(nodes, Vec::new())
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[ShapeEdge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == id)
    }

    pub fn is_discrete(&self) -> bool {
        self.edges.is_empty()
    }

    /// Node indices in an order where every edge source precedes its target,
    /// or `None` when the shape has a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.nodes.len();
        let mut indegree = vec![0usize; n];
        for e in &self.edges {
            indegree[e.target] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        ready.reverse();
        let mut order = Vec::with_capacity(n);
        while let Some(i) = ready.pop() {
            order.push(i);
            let mut next = Vec::new();
            for e in self.edges.iter().filter(|e| e.source == i) {
                indegree[e.target] -= 1;
                if indegree[e.target] == 0 {
                    next.push(e.target);
                }
            }
            next.sort_unstable_by(|a, b| b.cmp(a));
            ready.extend(next);
            ready.sort_unstable_by(|a, b| b.cmp(a));
        }
        (order.len() == n).then_some(order)
    }

    /// Number of connected components of the underlying undirected graph.
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn root(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for e in &self.edges {
            let (a, b) = (root(&mut parent, e.source), root(&mut parent, e.target));
            parent[a] = b;
        }
        (0..self.nodes.len()).filter(|&i| root(&mut parent, i) == i).count()
    }

    pub(crate) fn check_same(&self, other: &ShapeGraph) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ShapeMismatch("systems have different shapes".into()))
        }
    }
}
