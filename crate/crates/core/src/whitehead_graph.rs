//! Weighted Whitehead graphs on the signed generators `X_i^±`.

use std::collections::BTreeMap;

use rustworkx_core::petgraph::graph::UnGraph;
use rustworkx_core::planar::is_planar;
use serde::Serialize;

use crate::presentation::Presentation;
use crate::word::{SignedGenerator, Word};

/// Undirected weighted multigraph on `2m` vertices. Every cyclically
/// adjacent letter pair `(u, v)` of a relator adds one edge from the exit
/// side of `u` to the entry side of `v`; parallel edges are merged into a
/// weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteheadGraph {
    generator_count: usize,
    edges: BTreeMap<(usize, usize), u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedEdge {
    pub a: SignedGenerator,
    pub b: SignedGenerator,
    pub weight: u64,
}

impl WhiteheadGraph {
    /// Whitehead graph of the cyclically reduced relators of `p`.
    pub fn of(p: &Presentation) -> Self {
        let reduced = p.reduced();
        Self::from_words(p.generator_count(), reduced.relators())
    }

    /// Graph of the words exactly as given. Unreduced words produce loops at
    /// the vertex carrying the switchback.
    pub fn from_words(generator_count: usize, words: &[Word]) -> Self {
        let mut edges = BTreeMap::new();
        for w in words {
            for (u, v) in w.cyclic_pairs() {
                let a = u.exit_vertex().index();
                let b = v.entry_vertex().index();
                *edges.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        WhiteheadGraph {
            generator_count,
            edges,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.generator_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = SignedGenerator> {
        (0..self.vertex_count()).map(SignedGenerator::from_index)
    }

    pub fn edges(&self) -> impl Iterator<Item = WeightedEdge> + '_ {
        self.edges.iter().map(|(&(a, b), &weight)| WeightedEdge {
            a: SignedGenerator::from_index(a),
            b: SignedGenerator::from_index(b),
            weight,
        })
    }

    pub fn distinct_edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, a: SignedGenerator, b: SignedGenerator) -> u64 {
        let (a, b) = (a.index(), b.index());
        self.edges.get(&(a.min(b), a.max(b))).copied().unwrap_or(0)
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.values().sum()
    }

    /// Weighted degree; a loop contributes twice its weight.
    pub fn weighted_degree(&self, v: SignedGenerator) -> u64 {
        let v = v.index();
        self.edges
            .iter()
            .map(|(&(a, b), &w)| match (a == v, b == v) {
                (true, true) => 2 * w,
                (true, false) | (false, true) => w,
                _ => 0,
            })
            .sum()
    }

    /// Total weight of edges with both endpoints in the vertex set given as
    /// a bitmask over vertex indices.
    pub fn internal_weight(&self, mask: u64) -> u64 {
        self.edges
            .iter()
            .filter(|(&(a, b), _)| mask >> a & 1 == 1 && mask >> b & 1 == 1)
            .map(|(_, &w)| w)
            .sum()
    }

    /// Planarity of the underlying abstract multigraph. Loops and parallel
    /// edges never affect planarity, so only the simple graph is tested.
    pub fn is_planar(&self) -> bool {
        let simple: Vec<(u32, u32)> = self
            .edges
            .keys()
            .filter(|(a, b)| a != b)
            .map(|&(a, b)| (a as u32, b as u32))
            .collect();
        let mut g = UnGraph::<(), ()>::with_capacity(self.vertex_count(), simple.len());
        for _ in 0..self.vertex_count() {
            g.add_node(());
        }
        g.extend_with_edges(simple);
        is_planar(&g)
    }
}
