//! Whitehead automorphisms of the free group acting on presentations.
//!
//! A move `(A, A₀)` with `A₀ = X_j^σ` is normalized to `A₀ = X_j^+` by first
//! replacing `x_j` with `x_j^{-1}` when `σ = −`. The normalized move then
//! acts by the table `x_j ↦ z`, `x_i ↦ z⁻¹x_iz, x_iz, z⁻¹x_i, x_i` according
//! to which sides of `x_i` lie in `A`, and `z` is written back as `x_j`.
//! Letter by letter, a non-pivot letter `ℓ` becomes `[x_j⁻¹] ℓ [x_j]` with
//! the prefix present when the side `ℓ` enters from lies in `A` and the
//! suffix when the side it exits to does; a pivot letter becomes
//! `x_j^{±σ}`.
//!
//! Adjacent letters `u v` produce a cancelling pair exactly when the
//! Whitehead-graph edge from the exit side of `u` to the entry side of `v`
//! has both ends in `A`, and no further cancellation follows. Hence the
//! change of algebraic degree is the insertion count minus twice the weight
//! of the edges inside `A`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::budget::Meter;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::whitehead_graph::WhiteheadGraph;
use crate::word::{Letter, Sign, SignedGenerator, Word};

/// Largest generator count whose signed generators fit the 64-bit set.
pub const MAX_GENERATORS: usize = 32;

/// A nondegenerate Whitehead move. Ordered by pivot, then pivot side
/// (`+` first), then the set as a bitmask over vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WhiteheadMove {
    pivot: usize,
    pivot_side: Sign,
    set: u64,
    generator_count: usize,
}

impl WhiteheadMove {
    pub fn new(
        generator_count: usize,
        pivot: usize,
        pivot_side: Sign,
        set: &[SignedGenerator],
    ) -> Result<Self> {
        let mut mask = 0u64;
        for v in set {
            if v.generator >= generator_count {
                return Err(Error::InvalidMove(format!(
                    "generator index {} out of range",
                    v.generator
                )));
            }
            mask |= 1 << v.index();
        }
        Self::from_mask(generator_count, pivot, pivot_side, mask)
    }

    pub fn from_mask(
        generator_count: usize,
        pivot: usize,
        pivot_side: Sign,
        set: u64,
    ) -> Result<Self> {
        if generator_count > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(generator_count));
        }
        if pivot >= generator_count {
            return Err(Error::InvalidMove(format!(
                "pivot index {pivot} out of range"
            )));
        }
        let all = full_mask(generator_count);
        if set & !all != 0 {
            return Err(Error::InvalidMove(
                "set mentions undeclared generators".into(),
            ));
        }
        let a0 = SignedGenerator::new(pivot, pivot_side);
        if set & bit(a0) == 0 {
            return Err(Error::InvalidMove("set must contain the pivot side".into()));
        }
        if set & bit(a0.opposite()) != 0 {
            return Err(Error::InvalidMove(
                "set must not contain the opposite pivot side".into(),
            ));
        }
        if set == bit(a0) {
            return Err(Error::DegenerateMove("set is the pivot side alone".into()));
        }
        if set == all & !bit(a0.opposite()) {
            return Err(Error::DegenerateMove(
                "set is every side but the opposite pivot side".into(),
            ));
        }
        Ok(WhiteheadMove {
            pivot,
            pivot_side,
            set,
            generator_count,
        })
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn pivot_side(&self) -> Sign {
        self.pivot_side
    }

    pub fn pivot_vertex(&self) -> SignedGenerator {
        SignedGenerator::new(self.pivot, self.pivot_side)
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    /// The set as a bitmask over vertex indices `2g` (`+`) and `2g+1` (`−`).
    pub fn mask(&self) -> u64 {
        self.set
    }

    pub fn contains(&self, v: SignedGenerator) -> bool {
        self.set & bit(v) != 0
    }

    pub fn set(&self) -> Vec<SignedGenerator> {
        (0..2 * self.generator_count)
            .map(SignedGenerator::from_index)
            .filter(|&v| self.contains(v))
            .collect()
    }

    /// `x_j^σ`: the pivot letter as it reads before normalization.
    pub fn pivot_letter(&self) -> Letter {
        Letter::new(self.pivot, self.pivot_side)
    }

    /// Image of one letter under the substitution.
    pub fn image(&self, l: Letter) -> Vec<Letter> {
        if l.generator == self.pivot {
            let sign = if self.pivot_side == Sign::Plus {
                l.sign
            } else {
                l.sign.flip()
            };
            return vec![Letter::new(l.generator, sign)];
        }
        let z = Letter::pos(self.pivot);
        let mut out = Vec::with_capacity(3);
        if self.contains(l.entry_vertex()) {
            out.push(z.inverse());
        }
        out.push(l);
        if self.contains(l.exit_vertex()) {
            out.push(z);
        }
        out
    }

    /// A move undoing this one up to conjugation by `x_j`. With pivot side
    /// `+` it swaps every non-pivot side in or out of the set; a move with
    /// pivot side `−` is its own inverse, since the inversion of `x_j` it
    /// includes turns it into the complementary `+` move.
    pub fn inverse(&self) -> WhiteheadMove {
        if self.pivot_side == Sign::Minus {
            return *self;
        }
        let pivot_bits = bit(SignedGenerator::new(self.pivot, Sign::Plus))
            | bit(SignedGenerator::new(self.pivot, Sign::Minus));
        let others = full_mask(self.generator_count) & !pivot_bits;
        let set = bit(self.pivot_vertex()) | (others & !self.set);
        WhiteheadMove { set, ..*self }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> MoveDisplay<'a> {
        MoveDisplay { mv: self, names }
    }
}

fn bit(v: SignedGenerator) -> u64 {
    1 << v.index()
}

fn full_mask(m: usize) -> u64 {
    if 2 * m >= 64 {
        u64::MAX
    } else {
        (1 << (2 * m)) - 1
    }
}

/// `(j=<gen>, A0=<+|->, A={<signed gens>})`.
pub struct MoveDisplay<'a> {
    mv: &'a WhiteheadMove,
    names: &'a [String],
}

impl fmt::Display for MoveDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set: Vec<String> = self
            .mv
            .set()
            .into_iter()
            .map(|v| format!("{}{}", self.names[v.generator], v.side.symbol()))
            .collect();
        write!(
            f,
            "(j={}, A0={}, A={{{}}})",
            self.names[self.mv.pivot],
            self.mv.pivot_side.symbol(),
            set.join(", ")
        )
    }
}

/// Every nondegenerate move on `m` generators, in the move order.
/// There are `2m · (4^{m−1} − 2)` of them.
pub fn enumerate_moves(m: usize) -> Result<Vec<WhiteheadMove>> {
    if m > MAX_GENERATORS {
        return Err(Error::TooManyGenerators(m));
    }
    let mut moves = Vec::new();
    for pivot in 0..m {
        for side in [Sign::Plus, Sign::Minus] {
            let a0 = SignedGenerator::new(pivot, side);
            let others: Vec<u64> = (0..2 * m)
                .map(SignedGenerator::from_index)
                .filter(|v| v.generator != pivot)
                .map(bit)
                .collect();
            for subset in 0u64..(1u64 << others.len()) {
                let set = others
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| subset >> i & 1 == 1)
                    .fold(bit(a0), |acc, (_, b)| acc | b);
                if let Ok(mv) = WhiteheadMove::from_mask(m, pivot, side, set) {
                    moves.push(mv);
                }
            }
        }
    }
    moves.sort();
    Ok(moves)
}

/// Partition of the non-pivot generators and the degree accounting of a move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveEffect {
    /// Generators with only their `+` side in the set.
    pub b: Vec<usize>,
    /// Generators with only their `−` side in the set.
    pub c: Vec<usize>,
    /// Generators with both sides in the set.
    pub g: Vec<usize>,
    /// Letters inserted by the substitution: `Σn(b) + Σn(c) + 2Σn(g)`.
    pub unreduced_growth: u64,
    /// Exact change of algebraic degree.
    pub delta: i64,
    /// `Σ_B n(x_j b⁻¹) + Σ_C n(x_j c) + Σ_G n(x_j g)`, read after
    /// normalization: the cancellations against the pivot counted by the
    /// classical inequality.
    pub pivot_cancellations: u64,
}

impl MoveEffect {
    pub fn is_reducing(&self) -> bool {
        self.delta < 0
    }

    /// `unreduced_growth − 2·pivot_cancellations`. Agrees with `delta` when
    /// every cancellation involves the pivot, in particular for two
    /// generators; in general it is only an upper bound.
    pub fn lemma_delta(&self) -> i64 {
        self.unreduced_growth as i64 - 2 * self.pivot_cancellations as i64
    }
}

pub fn move_effect(p: &Presentation, mv: &WhiteheadMove) -> MoveEffect {
    let reduced = p.reduced();
    let graph = WhiteheadGraph::of(&reduced);
    move_effect_with(&reduced, &graph, mv)
}

fn move_effect_with(p: &Presentation, graph: &WhiteheadGraph, mv: &WhiteheadMove) -> MoveEffect {
    let z = mv.pivot_letter();
    let (mut b, mut c, mut g) = (Vec::new(), Vec::new(), Vec::new());
    let mut growth = 0u64;
    let mut pivot_cancellations = 0u64;
    for i in (0..p.generator_count()).filter(|&i| i != mv.pivot) {
        let plus = mv.contains(SignedGenerator::new(i, Sign::Plus));
        let minus = mv.contains(SignedGenerator::new(i, Sign::Minus));
        let n = p.occurrences(i) as u64;
        match (plus, minus) {
            (true, false) => {
                b.push(i);
                growth += n;
                pivot_cancellations += p.pair_occurrences(z, Letter::neg(i)) as u64;
            }
            (false, true) => {
                c.push(i);
                growth += n;
                pivot_cancellations += p.pair_occurrences(z, Letter::pos(i)) as u64;
            }
            (true, true) => {
                g.push(i);
                growth += 2 * n;
                pivot_cancellations += p.pair_occurrences(z, Letter::pos(i)) as u64;
            }
            (false, false) => {}
        }
    }
    let delta = growth as i64 - 2 * graph.internal_weight(mv.set) as i64;
    MoveEffect {
        b,
        c,
        g,
        unreduced_growth: growth,
        delta,
        pivot_cancellations,
    }
}

/// Result of substituting a move into every relator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveApplication {
    /// Cyclically reduced image.
    pub reduced: Presentation,
    /// Verbatim substitution image.
    pub unreduced: Presentation,
    /// Inverse pairs cancelled while reducing.
    pub switchbacks: usize,
}

/// Literal substitution followed by cyclic reduction. The input is reduced
/// first.
pub fn apply_move(p: &Presentation, mv: &WhiteheadMove) -> Result<MoveApplication> {
    if mv.generator_count != p.generator_count() {
        return Err(Error::InvalidMove(format!(
            "move is over {} generators, presentation has {}",
            mv.generator_count,
            p.generator_count()
        )));
    }
    let p = p.reduced();
    let mut unreduced = Vec::with_capacity(p.relators().len());
    let mut reduced = Vec::with_capacity(p.relators().len());
    let mut switchbacks = 0;
    for r in p.relators() {
        let image: Word = r.iter().flat_map(|&l| mv.image(l)).collect();
        let (red, cancelled) = image.cyclic_reduce_counted();
        switchbacks += cancelled;
        unreduced.push(image);
        reduced.push(red);
    }
    Ok(MoveApplication {
        reduced: p.with_relators(reduced).reduced(),
        unreduced: p.with_relators(unreduced),
        switchbacks,
    })
}

/// One step of a reduction or orbit path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveStep {
    pub mv: WhiteheadMove,
    pub delta: i64,
    /// The presentation after the move (reduced).
    pub result: Presentation,
}

/// Reducing moves of `p` with their effects, in the move order.
pub fn reducing_moves(p: &Presentation) -> Result<Vec<(WhiteheadMove, MoveEffect)>> {
    let p = p.reduced();
    let graph = WhiteheadGraph::of(&p);
    Ok(enumerate_moves(p.generator_count())?
        .into_iter()
        .map(|mv| {
            let e = move_effect_with(&p, &graph, &mv);
            (mv, e)
        })
        .filter(|(_, e)| e.is_reducing())
        .collect())
}

/// Greedy descent: applies the least reducing move until none is left.
pub fn reduce_monotone(p: &Presentation) -> Result<(Presentation, Vec<MoveStep>)> {
    let mut current = p.reduced();
    let mut path = Vec::new();
    while let Some((mv, effect)) = reducing_moves(&current)?.into_iter().next() {
        let next = apply_move(&current, &mv)?.reduced;
        debug_assert_eq!(
            next.algebraic_degree() as i64,
            current.algebraic_degree() as i64 + effect.delta
        );
        path.push(MoveStep {
            mv,
            delta: effect.delta,
            result: next.clone(),
        });
        current = next;
    }
    Ok((current, path))
}

/// A member of a move orbit with the edge it was first reached by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitMember {
    /// Canonical form.
    pub presentation: Presentation,
    pub parent: Option<usize>,
    pub via: Option<(WhiteheadMove, i64)>,
    pub depth: usize,
}

#[derive(Debug, Clone)]
pub struct Orbit {
    /// Breadth-first order; the start is member 0.
    pub members: Vec<OrbitMember>,
    /// The closure was cut short by the budget.
    pub truncated: bool,
}

impl Orbit {
    /// Moves leading from the start to member `i`.
    pub fn path_to(&self, mut i: usize) -> Vec<MoveStep> {
        let mut steps = Vec::new();
        while let (Some(parent), Some((mv, delta))) = (self.members[i].parent, self.members[i].via)
        {
            steps.push(MoveStep {
                mv,
                delta,
                result: self.members[i].presentation.clone(),
            });
            i = parent;
        }
        steps.reverse();
        steps
    }
}

/// Breadth-first closure of `p` under the moves keeping the algebraic
/// degree at most `degree_cap`, deduplicated by canonical form.
/// `max_members` and the meter's clock bound the exploration.
pub fn orbit_bfs(
    p: &Presentation,
    degree_cap: usize,
    meter: &Meter,
    max_members: Option<usize>,
) -> Result<Orbit> {
    let start = p.canonical();
    let moves = enumerate_moves(p.generator_count())?;
    let mut index: HashMap<Presentation, usize> = HashMap::new();
    index.insert(start.clone(), 0);
    let mut members = vec![OrbitMember {
        presentation: start,
        parent: None,
        via: None,
        depth: 0,
    }];
    let mut queue = VecDeque::from([0usize]);
    let mut truncated = false;
    'bfs: while let Some(i) = queue.pop_front() {
        let current = members[i].presentation.clone();
        let degree = current.algebraic_degree() as i64;
        let graph = WhiteheadGraph::of(&current);
        for mv in &moves {
            let effect = move_effect_with(&current, &graph, mv);
            if degree + effect.delta > degree_cap as i64 {
                continue;
            }
            let next = apply_move(&current, mv)?.reduced.canonical();
            if index.contains_key(&next) {
                continue;
            }
            if max_members.is_some_and(|cap| members.len() >= cap) || !meter.check() {
                truncated = true;
                break 'bfs;
            }
            index.insert(next.clone(), members.len());
            queue.push_back(members.len());
            members.push(OrbitMember {
                presentation: next,
                parent: Some(i),
                via: Some((*mv, effect.delta)),
                depth: members[i].depth + 1,
            });
        }
    }
    Ok(Orbit { members, truncated })
}
