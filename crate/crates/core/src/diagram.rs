//! Diagrams as rotation systems on the cut-open surface.
//!
//! Every letter occurrence of a relator is a crossing of the relator curve
//! with a generator curve. Cutting along generator `i` produces two boundary
//! circles `X_i^+` and `X_i^-`; each crossing leaves one half-edge on each.
//! The arc leaving crossing `c` starts on the exit side of `c` and ends on
//! the entry side of the next crossing of the same relator.
//!
//! A diagram fixes, per generator, the cyclic order of its crossings along
//! the curve. That order is the rotation at `X_i^+`; the rotation at `X_i^-`
//! is its reverse, since the two sides of a cut curve carry opposite
//! boundary orientations. Twist offsets are not modelled.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Letter, Sign, SignedGenerator, Word};

/// One letter occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Crossing {
    pub relator: usize,
    pub position: usize,
    pub generator: usize,
    pub sign: Sign,
}

impl Crossing {
    pub fn letter(&self) -> Letter {
        Letter::new(self.generator, self.sign)
    }

    /// Identifier `r<relator>:<position>` used in witness serialization.
    pub fn label(&self) -> String {
        format!("r{}:{}", self.relator, self.position)
    }
}

/// A component of the relator curves minus the generator curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub from_crossing: usize,
    pub to_crossing: usize,
    pub tail: SignedGenerator,
    pub head: SignedGenerator,
}

impl Arc {
    /// Both ends on the same side of the same generator curve: the
    /// geometric counterpart of a trivial pair `x x^-1` in the relator.
    pub fn is_switchback(&self) -> bool {
        self.tail == self.head
    }
}

/// Crossings of a list of words and the arc-pairing of their half-edges.
/// Depends only on the words, not on any ordering.
///
/// Half-edge `2c` sits on `X^+` and `2c + 1` on `X^-` of crossing `c`'s
/// generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingTable {
    generator_count: usize,
    crossings: Vec<Crossing>,
    next: Vec<usize>,
    prev: Vec<usize>,
    by_generator: Vec<Vec<usize>>,
    relator_offsets: Vec<usize>,
}

impl CrossingTable {
    pub fn new(generator_count: usize, words: &[Word]) -> Self {
        let mut crossings = Vec::new();
        let mut next = Vec::new();
        let mut prev = Vec::new();
        let mut relator_offsets = Vec::with_capacity(words.len() + 1);
        let mut by_generator = vec![Vec::new(); generator_count];
        for (r, w) in words.iter().enumerate() {
            let base = crossings.len();
            relator_offsets.push(base);
            let len = w.len();
            for (p, l) in w.iter().enumerate() {
                by_generator[l.generator].push(crossings.len());
                crossings.push(Crossing {
                    relator: r,
                    position: p,
                    generator: l.generator,
                    sign: l.sign,
                });
                next.push(base + (p + 1) % len);
                prev.push(base + (p + len - 1) % len);
            }
        }
        relator_offsets.push(crossings.len());
        CrossingTable {
            generator_count,
            crossings,
            next,
            prev,
            by_generator,
            relator_offsets,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Crossing ids on generator `g`, ascending.
    pub fn on_generator(&self, g: usize) -> &[usize] {
        &self.by_generator[g]
    }

    pub fn crossing_id(&self, relator: usize, position: usize) -> Option<usize> {
        let lo = *self.relator_offsets.get(relator)?;
        let hi = self.relator_offsets[relator + 1];
        (position < hi - lo).then_some(lo + position)
    }

    pub fn half_edge(c: usize, side: Sign) -> usize {
        2 * c + usize::from(side == Sign::Minus)
    }

    pub fn half_edge_crossing(h: usize) -> usize {
        h / 2
    }

    pub fn half_edge_side(h: usize) -> Sign {
        if h.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn half_edge_vertex(&self, h: usize) -> SignedGenerator {
        SignedGenerator::new(self.crossings[h / 2].generator, Self::half_edge_side(h))
    }

    /// The other end of the arc through half-edge `h`.
    pub fn twin(&self, h: usize) -> usize {
        let c = h / 2;
        let cr = self.crossings[c];
        if Self::half_edge_side(h) == cr.sign {
            // exit side: arc runs to the entry side of the next crossing
            let n = self.next[c];
            Self::half_edge(n, self.crossings[n].sign.flip())
        } else {
            let p = self.prev[c];
            Self::half_edge(p, self.crossings[p].sign)
        }
    }

    pub fn arc(&self, from: usize) -> Arc {
        let to = self.next[from];
        Arc {
            from_crossing: from,
            to_crossing: to,
            tail: self.crossings[from].letter().exit_vertex(),
            head: self.crossings[to].letter().entry_vertex(),
        }
    }

    /// Signed generators carrying at least one half-edge.
    pub fn used_vertices(&self) -> Vec<SignedGenerator> {
        (0..self.generator_count)
            .filter(|&g| !self.by_generator[g].is_empty())
            .flat_map(|g| {
                [
                    SignedGenerator::new(g, Sign::Plus),
                    SignedGenerator::new(g, Sign::Minus),
                ]
            })
            .collect()
    }
}

/// An element of the fixed-degree diagram class of some words: the words
/// plus a cyclic ordering of each generator's crossings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    presentation: Presentation,
    table: CrossingTable,
    orderings: Vec<Vec<usize>>,
    position_in_ordering: Vec<usize>,
}

impl Diagram {
    /// Builds the diagram of `p`'s words as written (no reduction) with
    /// `orderings[g]` the crossing ids of generator `g` in curve order.
    pub fn build(p: &Presentation, orderings: Vec<Vec<usize>>) -> Result<Self> {
        let table = CrossingTable::new(p.generator_count(), p.relators());
        Self::from_table(p.clone(), table, orderings)
    }

    pub(crate) fn from_table(
        presentation: Presentation,
        table: CrossingTable,
        orderings: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if orderings.len() != table.generator_count() {
            return Err(Error::OrderingCount {
                expected: table.generator_count(),
                found: orderings.len(),
            });
        }
        let mut position_in_ordering = vec![usize::MAX; table.crossing_count()];
        for (g, ord) in orderings.iter().enumerate() {
            let invalid = || Error::InvalidOrdering {
                generator: presentation.generator_names()[g].clone(),
                expected: table.on_generator(g).len(),
            };
            if ord.len() != table.on_generator(g).len() {
                return Err(invalid());
            }
            for (pos, &c) in ord.iter().enumerate() {
                if c >= table.crossing_count()
                    || table.crossings()[c].generator != g
                    || position_in_ordering[c] != usize::MAX
                {
                    return Err(invalid());
                }
                position_in_ordering[c] = pos;
            }
        }
        Ok(Diagram {
            presentation,
            table,
            orderings,
            position_in_ordering,
        })
    }

    /// Builds from per-generator lists of `r<relator>:<position>` labels.
    pub fn from_labels(p: &Presentation, labels: &[Vec<String>]) -> Result<Self> {
        let table = CrossingTable::new(p.generator_count(), p.relators());
        let orderings = labels
            .iter()
            .map(|ord| {
                ord.iter()
                    .map(|label| {
                        parse_label(label)
                            .and_then(|(r, pos)| table.crossing_id(r, pos))
                            .ok_or_else(|| Error::UnknownCrossing(label.clone()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(p.clone(), table, orderings)
    }

    /// The diagram whose every ordering is ascending crossing order.
    pub fn identity(p: &Presentation) -> Self {
        let table = CrossingTable::new(p.generator_count(), p.relators());
        let orderings = (0..p.generator_count())
            .map(|g| table.on_generator(g).to_vec())
            .collect();
        Self::from_table(p.clone(), table, orderings).expect("ascending orderings are valid")
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn table(&self) -> &CrossingTable {
        &self.table
    }

    pub fn orderings(&self) -> &[Vec<usize>] {
        &self.orderings
    }

    pub fn crossings(&self) -> &[Crossing] {
        self.table.crossings()
    }

    /// Geometric degree: total number of crossings.
    pub fn degree(&self) -> usize {
        self.table.crossing_count()
    }

    pub fn arcs(&self) -> Vec<Arc> {
        (0..self.degree()).map(|c| self.table.arc(c)).collect()
    }

    pub fn switchback_count(&self) -> usize {
        (0..self.degree())
            .filter(|&c| self.table.arc(c).is_switchback())
            .count()
    }

    pub fn half_edge_count(&self) -> usize {
        2 * self.degree()
    }

    /// Next half-edge around the boundary circle carrying `h`.
    pub fn rotation_successor(&self, h: usize) -> usize {
        let c = CrossingTable::half_edge_crossing(h);
        let g = self.table.crossings()[c].generator;
        let ord = &self.orderings[g];
        let k = ord.len();
        let pos = self.position_in_ordering[c];
        match CrossingTable::half_edge_side(h) {
            Sign::Plus => CrossingTable::half_edge(ord[(pos + 1) % k], Sign::Plus),
            Sign::Minus => CrossingTable::half_edge(ord[(pos + k - 1) % k], Sign::Minus),
        }
    }

    /// Cyclic sequence of half-edges around a boundary circle.
    pub fn rotation_at(&self, v: SignedGenerator) -> Vec<usize> {
        let ord = &self.orderings[v.generator];
        let mut out: Vec<usize> = ord
            .iter()
            .map(|&c| CrossingTable::half_edge(c, v.side))
            .collect();
        if v.side == Sign::Minus {
            out.reverse();
        }
        out
    }

    /// Face-tracing successor: the rotation successor of the reversed dart.
    pub fn face_successor(&self, h: usize) -> usize {
        self.rotation_successor(self.table.twin(h))
    }

    pub fn record(&self) -> DiagramRecord {
        let names = self.presentation.generator_names();
        DiagramRecord {
            relators: self.presentation.relator_strings(),
            orderings: self
                .orderings
                .iter()
                .enumerate()
                .map(|(g, ord)| OrderingRecord {
                    generator: names[g].clone(),
                    crossings: ord.iter().map(|&c| self.crossings()[c].label()).collect(),
                })
                .collect(),
        }
    }
}

fn parse_label(label: &str) -> Option<(usize, usize)> {
    let rest = label.strip_prefix('r')?;
    let (r, p) = rest.split_once(':')?;
    Some((r.parse().ok()?, p.parse().ok()?))
}

/// Serialized witness: the words the diagram is drawn for and, per
/// generator, its crossing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramRecord {
    pub relators: Vec<String>,
    pub orderings: Vec<OrderingRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingRecord {
    pub generator: String,
    pub crossings: Vec<String>,
}

impl DiagramRecord {
    /// Rebuilds the diagram; the generator list comes from `names`.
    pub fn to_diagram(&self, names: &[String]) -> Result<Diagram> {
        let text = format!(
            "gens: {}\n{}",
            names.join(" "),
            self.relators
                .iter()
                .map(|r| format!("rel: {r}\n"))
                .collect::<String>()
        );
        let p = Presentation::parse(&text)?;
        let mut labels = vec![Vec::new(); names.len()];
        for o in &self.orderings {
            let g = p
                .generator_index(&o.generator)
                .ok_or_else(|| Error::UnknownCrossing(o.generator.clone()))?;
            labels[g] = o.crossings.clone();
        }
        Diagram::from_labels(&p, &labels)
    }
}
