//! Face tracing and the genus of the ribbon surface of a diagram.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diagram::{CrossingTable, Diagram};
use crate::word::SignedGenerator;

/// A face as the cyclic sequence of half-edges it traverses.
pub type Face = Vec<usize>;

/// Partitions all half-edges into faces. Faces are listed by their least
/// half-edge, each starting there.
pub fn trace_faces(d: &Diagram) -> Vec<Face> {
    let n = d.half_edge_count();
    let mut seen = vec![false; n];
    let mut faces = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            face.push(h);
            h = d.face_successor(h);
        }
        debug_assert_eq!(h, start, "face successor is not a permutation");
        faces.push(face);
    }
    faces
}

/// Component structure and genus of the ribbon surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceSummary {
    pub component_count: usize,
    /// Genus per component, keyed by the component's least vertex label.
    pub genus_per_component: BTreeMap<String, u64>,
    pub total_genus: u64,
    pub face_count: usize,
    pub vertex_count: usize,
    pub arc_count: usize,
}

impl SurfaceSummary {
    pub fn is_planar(&self) -> bool {
        self.total_genus == 0
    }
}

/// Union-find over dense vertex indices.
pub(crate) struct Components {
    parent: Vec<usize>,
}

impl Components {
    pub(crate) fn new(n: usize) -> Self {
        Components {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Number of connected components of the arc graph on the used vertices.
pub(crate) fn component_count(table: &CrossingTable) -> usize {
    let used = table.used_vertices();
    let mut comps = Components::new(2 * table.generator_count());
    for c in 0..table.crossing_count() {
        let arc = table.arc(c);
        comps.union(arc.tail.index(), arc.head.index());
    }
    let mut roots: Vec<usize> = used.iter().map(|v| comps.find(v.index())).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

pub fn surface_summary(d: &Diagram) -> SurfaceSummary {
    let table = d.table();
    let names = d.presentation().generator_names();
    let used = table.used_vertices();
    let mut comps = Components::new(2 * table.generator_count());
    for arc in d.arcs() {
        comps.union(arc.tail.index(), arc.head.index());
    }

    // (vertices, arcs, faces) per component root
    let mut tally: BTreeMap<usize, (i64, i64, i64)> = BTreeMap::new();
    for v in &used {
        tally.entry(comps.find(v.index())).or_default().0 += 1;
    }
    for arc in d.arcs() {
        tally.entry(comps.find(arc.tail.index())).or_default().1 += 1;
    }
    let faces = trace_faces(d);
    for f in &faces {
        let v = table.half_edge_vertex(f[0]);
        tally.entry(comps.find(v.index())).or_default().2 += 1;
    }

    let mut genus_per_component = BTreeMap::new();
    let mut total_genus = 0;
    for (root, (v, e, f)) in tally {
        let chi = v - e + f;
        assert!(
            chi <= 2 && chi % 2 == 0,
            "Euler characteristic {chi} of a closed orientable component must be even and at most 2"
        );
        let genus = ((2 - chi) / 2) as u64;
        let label = vertex_label(names, SignedGenerator::from_index(root));
        genus_per_component.insert(label, genus);
        total_genus += genus;
    }

    SurfaceSummary {
        component_count: genus_per_component.len(),
        genus_per_component,
        total_genus,
        face_count: faces.len(),
        vertex_count: used.len(),
        arc_count: d.degree(),
    }
}

/// `x+` / `x-` for generator `x`.
pub fn vertex_label(names: &[String], v: SignedGenerator) -> String {
    format!("{}{}", names[v.generator], v.side.symbol())
}

/// Exact s-diagram test: no switchbacks (the words are cyclically reduced,
/// so geometric and algebraic degree agree) and every component of the
/// ribbon surface has genus zero.
pub fn is_exact_s_diagram(d: &Diagram) -> bool {
    d.presentation().all_cyclically_reduced() && surface_summary(d).is_planar()
}
