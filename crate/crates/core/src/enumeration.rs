//! Exhaustive and pruned search over the fixed-degree diagram class.
//!
//! A diagram of some words is determined by the cyclic crossing order of
//! each generator. The first crossing of every generator is held fixed,
//! which quotients out cyclic rotation and leaves `Π (k_i − 1)!` diagrams.
//!
//! The pruned search extends the orderings one position at a time. Every
//! placement fixes two rotation successors, hence two links of the
//! face-tracing permutation. Linked half-edges form chains; a link either
//! merges two chains or closes one into a face. A genus-zero diagram closes
//! exactly `E − V + 2C` faces, so at most `E + V − 2C` links may be merges;
//! a partial configuration that has already spent more is abandoned.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use num_bigint::BigUint;
use serde::Serialize;

use crate::budget::Meter;
use crate::diagram::{CrossingTable, Diagram};
use crate::presentation::Presentation;
use crate::surface::{component_count, surface_summary};
use crate::whitehead_graph::WhiteheadGraph;

/// `Π max(k_i − 1, 0)!` over the crossing counts of the words as written.
pub fn search_space_size(p: &Presentation) -> BigUint {
    p.crossing_counts()
        .into_iter()
        .filter(|&k| k > 1)
        .flat_map(|k| 2..k)
        .fold(BigUint::from(1u32), |acc, f| acc * BigUint::from(f))
}

/// Every diagram of `p`'s words, each once, in lexicographic order of the
/// concatenated orderings (generator 0 most significant).
pub fn enumerate_diagrams(p: &Presentation) -> DiagramEnumerator {
    let table = CrossingTable::new(p.generator_count(), p.relators());
    let orderings = (0..p.generator_count())
        .map(|g| table.on_generator(g).to_vec())
        .collect();
    DiagramEnumerator {
        presentation: p.clone(),
        table,
        orderings,
        finished: false,
    }
}

pub struct DiagramEnumerator {
    presentation: Presentation,
    table: CrossingTable,
    orderings: Vec<Vec<usize>>,
    finished: bool,
}

impl Iterator for DiagramEnumerator {
    type Item = Diagram;

    fn next(&mut self) -> Option<Diagram> {
        if self.finished {
            return None;
        }
        let current = Diagram::from_table(
            self.presentation.clone(),
            self.table.clone(),
            self.orderings.clone(),
        )
        .expect("enumerated orderings are permutations");
        // odometer: the last generator varies fastest
        self.finished = true;
        for ord in self.orderings.iter_mut().rev() {
            let from = ord.len().min(1);
            if next_permutation(&mut ord[from..]) {
                self.finished = false;
                break;
            }
        }
        Some(current)
    }
}

/// Advances to the next lexicographic permutation; on the last one, resets
/// to ascending order and returns `false`.
fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Abandon partial configurations whose closed faces force positive genus.
    pub prune: bool,
    /// Report not-found at once when the arc multigraph is non-planar.
    pub planarity_prefilter: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            prune: true,
            planarity_prefilter: true,
        }
    }
}

impl SearchOptions {
    pub fn naive() -> Self {
        SearchOptions {
            prune: false,
            planarity_prefilter: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Complete diagrams examined (search leaves).
    pub diagrams_examined: u64,
    /// Partial configurations visited, leaves included.
    pub nodes_visited: u64,
    /// Partial configurations abandoned by the genus bound.
    pub prune_cuts: u64,
    /// Searches answered by the non-planarity filter alone.
    pub prefilter_rejections: u64,
    /// Total size of the diagram classes searched.
    #[serde(serialize_with = "serialize_big")]
    pub search_space: BigUint,
    /// Wall-clock time; omitted from deterministic reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

fn serialize_big<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

impl SearchStats {
    pub fn absorb(&mut self, other: &SearchStats) {
        self.diagrams_examined += other.diagrams_examined;
        self.nodes_visited += other.nodes_visited;
        self.prune_cuts += other.prune_cuts;
        self.prefilter_rejections += other.prefilter_rejections;
        self.search_space += &other.search_space;
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed_ms = Some(elapsed.as_millis() as u64);
        self
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub witness: Option<Diagram>,
    /// The whole class was searched (or ruled out by the filter).
    pub exhausted: bool,
    pub budget_stopped: bool,
    pub stats: SearchStats,
}

/// First genus-zero diagram of `p`'s words as written.
///
/// With `budget.deterministic` set, or a single worker, the witness is the
/// lexicographically least one.
pub fn find_planar_diagram(
    p: &Presentation,
    meter: &Meter,
    parallelism: usize,
    deterministic: bool,
    options: SearchOptions,
) -> SearchOutcome {
    let table = CrossingTable::new(p.generator_count(), p.relators());
    let mut stats = SearchStats {
        search_space: search_space_size(p),
        ..SearchStats::default()
    };
    if options.planarity_prefilter
        && !WhiteheadGraph::from_words(p.generator_count(), p.relators()).is_planar()
    {
        stats.prefilter_rejections = 1;
        return SearchOutcome {
            witness: None,
            exhausted: true,
            budget_stopped: false,
            stats,
        };
    }
    let engine = Engine::new(&table);
    let counters = Counters::default();
    let found = if parallelism <= 1 {
        let mut w = Worker::new(
            &engine,
            engine.genus_zero_limit(),
            options.prune,
            meter,
            &counters,
        );
        let mut witness = None;
        w.run(0, &mut |_, order| {
            witness = Some(order.to_vec());
            LeafAction::Stop
        });
        witness
    } else {
        engine.parallel_first(meter, parallelism, deterministic, options.prune, &counters)
    };
    counters.drain_into(&mut stats);
    let budget_stopped = found.is_none() && meter.is_stopped();
    SearchOutcome {
        exhausted: found.is_none() && !budget_stopped,
        witness: found.map(|o| engine.diagram(p, &table, &o)),
        budget_stopped,
        stats,
    }
}

/// Reference search: enumerate every diagram and compute its genus by full
/// face tracing. Used to check the pruned search.
pub fn find_planar_diagram_naive(p: &Presentation, meter: &Meter) -> SearchOutcome {
    let mut stats = SearchStats {
        search_space: search_space_size(p),
        ..SearchStats::default()
    };
    for d in enumerate_diagrams(p) {
        if !meter.charge_diagram() {
            return SearchOutcome {
                witness: None,
                exhausted: false,
                budget_stopped: true,
                stats,
            };
        }
        stats.diagrams_examined += 1;
        stats.nodes_visited += 1;
        if surface_summary(&d).is_planar() {
            return SearchOutcome {
                witness: Some(d),
                exhausted: false,
                budget_stopped: false,
                stats,
            };
        }
    }
    SearchOutcome {
        witness: None,
        exhausted: true,
        budget_stopped: false,
        stats,
    }
}

/// Streams every genus-zero diagram in lexicographic order until `visit`
/// returns `false` or the budget runs out. Returns the statistics and
/// whether the class was exhausted.
pub fn for_each_planar_diagram(
    p: &Presentation,
    meter: &Meter,
    mut visit: impl FnMut(Diagram) -> bool,
) -> (SearchStats, bool) {
    let table = CrossingTable::new(p.generator_count(), p.relators());
    let mut stats = SearchStats {
        search_space: search_space_size(p),
        ..SearchStats::default()
    };
    if !WhiteheadGraph::from_words(p.generator_count(), p.relators()).is_planar() {
        stats.prefilter_rejections = 1;
        return (stats, true);
    }
    let engine = Engine::new(&table);
    let counters = Counters::default();
    let mut w = Worker::new(&engine, engine.genus_zero_limit(), true, meter, &counters);
    let mut halted = false;
    let complete = w.run(0, &mut |_, order| {
        if visit(engine.diagram(p, &table, order)) {
            LeafAction::Continue
        } else {
            halted = true;
            LeafAction::Stop
        }
    });
    counters.drain_into(&mut stats);
    (stats, complete && !halted && !meter.is_stopped())
}

/// Minimum total genus over the diagram class, by branch and bound.
/// Returns the best diagram found and whether the search was complete.
pub fn min_genus_diagram(
    p: &Presentation,
    meter: &Meter,
) -> (Option<(u64, Diagram)>, bool, SearchStats) {
    let table = CrossingTable::new(p.generator_count(), p.relators());
    let mut stats = SearchStats {
        search_space: search_space_size(p),
        ..SearchStats::default()
    };
    let engine = Engine::new(&table);
    let counters = Counters::default();
    let base = engine.genus_zero_limit();
    let mut w = Worker::new(&engine, u32::MAX, true, meter, &counters);
    let mut best: Option<(u32, Vec<Vec<u32>>)> = None;
    let complete = w.run(0, &mut |merges, order| {
        best = Some((merges, order.to_vec()));
        if merges <= base {
            LeafAction::Stop
        } else {
            LeafAction::Tighten(merges - 2)
        }
    });
    counters.drain_into(&mut stats);
    let exhausted = complete || best.as_ref().is_some_and(|(m, _)| *m <= base);
    let best = best.map(|(m, o)| (u64::from((m - base) / 2), engine.diagram(p, &table, &o)));
    (best, exhausted, stats)
}

const NONE: u32 = u32::MAX;
const CHECK_INTERVAL: u64 = 1 << 12;

enum LeafAction {
    Continue,
    Stop,
    /// Keep searching, admitting only leaves with at most this many merges.
    Tighten(u32),
}

/// Immutable search description derived from the words.
struct Engine {
    twin: Vec<u32>,
    crossings_of: Vec<Vec<u32>>,
    slots: Vec<(usize, usize)>,
    fixed_links: Vec<(u32, u32)>,
    half_edges: usize,
    crossing_count: usize,
    merge_budget: u32,
}

fn plus(c: u32) -> u32 {
    2 * c
}

fn minus(c: u32) -> u32 {
    2 * c + 1
}

impl Engine {
    fn new(table: &CrossingTable) -> Self {
        let half_edges = 2 * table.crossing_count();
        let twin = (0..half_edges).map(|h| table.twin(h) as u32).collect();
        let crossings_of: Vec<Vec<u32>> = (0..table.generator_count())
            .map(|g| table.on_generator(g).iter().map(|&c| c as u32).collect())
            .collect();
        let mut slots = Vec::new();
        let mut fixed_links = Vec::new();
        for (g, cs) in crossings_of.iter().enumerate() {
            if cs.len() == 1 {
                fixed_links.push((plus(cs[0]), plus(cs[0])));
                fixed_links.push((minus(cs[0]), minus(cs[0])));
            }
            slots.extend((1..cs.len()).map(|t| (g, t)));
        }
        let e = table.crossing_count() as u32;
        let v = table.used_vertices().len() as u32;
        let c = component_count(table) as u32;
        Engine {
            twin,
            crossings_of,
            slots,
            fixed_links,
            half_edges,
            crossing_count: table.crossing_count(),
            merge_budget: e + v - 2 * c,
        }
    }

    fn genus_zero_limit(&self) -> u32 {
        self.merge_budget
    }

    fn diagram(&self, p: &Presentation, table: &CrossingTable, order: &[Vec<u32>]) -> Diagram {
        let orderings = order
            .iter()
            .map(|o| o.iter().map(|&c| c as usize).collect())
            .collect();
        Diagram::from_table(p.clone(), table.clone(), orderings)
            .expect("search produced a valid ordering")
    }

    /// All pruned partial configurations of the first `depth` slots, in
    /// lexicographic order, as their placed crossings.
    fn prefixes(
        &self,
        depth: usize,
        prune: bool,
        meter: &Meter,
        counters: &Counters,
    ) -> Vec<Vec<u32>> {
        let mut w = Worker::new(self, self.genus_zero_limit(), prune, meter, counters);
        let mut out = Vec::new();
        w.collect_prefixes(0, depth, &mut Vec::new(), &mut out);
        out
    }

    fn parallel_first(
        &self,
        meter: &Meter,
        jobs: usize,
        deterministic: bool,
        prune: bool,
        counters: &Counters,
    ) -> Option<Vec<Vec<u32>>> {
        let scratch = Counters::default();
        let mut depth = 0;
        let mut prefixes = vec![Vec::new()];
        while depth < self.slots.len() && prefixes.len() < 16 * jobs {
            depth += 1;
            prefixes = self.prefixes(depth, prune, meter, &scratch);
        }
        let best = AtomicUsize::new(usize::MAX);
        let next = AtomicUsize::new(0);
        let results: Mutex<Vec<Option<Vec<Vec<u32>>>>> = Mutex::new(vec![None; prefixes.len()]);
        std::thread::scope(|s| {
            for _ in 0..jobs {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= prefixes.len() || meter.is_stopped() {
                        break;
                    }
                    let cancelled = || {
                        let b = best.load(Ordering::Relaxed);
                        if deterministic {
                            b < i
                        } else {
                            b != usize::MAX
                        }
                    };
                    if cancelled() {
                        continue;
                    }
                    let mut w = Worker::new(self, self.genus_zero_limit(), prune, meter, counters);
                    w.cancel = Some(&cancelled);
                    if !w.replay(&prefixes[i]) {
                        continue;
                    }
                    let mut witness = None;
                    w.run(depth, &mut |_, order| {
                        witness = Some(order.to_vec());
                        LeafAction::Stop
                    });
                    if let Some(o) = witness {
                        results.lock().expect("result lock")[i] = Some(o);
                        best.fetch_min(i, Ordering::Relaxed);
                    }
                });
            }
        });
        let b = best.load(Ordering::Relaxed);
        if b == usize::MAX {
            None
        } else {
            results.into_inner().expect("result lock")[b].take()
        }
    }
}

#[derive(Default)]
struct Counters {
    leaves: AtomicU64,
    nodes: AtomicU64,
    cuts: AtomicU64,
}

impl Counters {
    fn drain_into(&self, stats: &mut SearchStats) {
        stats.diagrams_examined += self.leaves.load(Ordering::Relaxed);
        stats.nodes_visited += self.nodes.load(Ordering::Relaxed);
        stats.prune_cuts += self.cuts.load(Ordering::Relaxed);
    }
}

enum Undo {
    Close {
        from: u32,
    },
    Merge {
        from: u32,
        head: u32,
        tail: u32,
        old_head: u32,
        old_tail: u32,
    },
}

/// Mutable search state: partial orderings and the partial face permutation.
struct Worker<'a> {
    engine: &'a Engine,
    /// Face successor, or `NONE`.
    next: Vec<u32>,
    /// For a chain endpoint, the opposite endpoint of its chain.
    other_end: Vec<u32>,
    merges: u32,
    order: Vec<Vec<u32>>,
    used: Vec<bool>,
    undo: Vec<Undo>,
    limit: u32,
    prune: bool,
    meter: &'a Meter,
    counters: &'a Counters,
    cancel: Option<&'a dyn Fn() -> bool>,
    nodes: u64,
    leaves: u64,
    cuts: u64,
    halted: bool,
}

impl<'a> Worker<'a> {
    fn new(
        engine: &'a Engine,
        limit: u32,
        prune: bool,
        meter: &'a Meter,
        counters: &'a Counters,
    ) -> Self {
        let mut used = vec![false; engine.crossing_count];
        let order = engine
            .crossings_of
            .iter()
            .map(|cs| {
                let mut o = Vec::with_capacity(cs.len());
                if let Some(&first) = cs.first() {
                    used[first as usize] = true;
                    o.push(first);
                }
                o
            })
            .collect();
        let mut w = Worker {
            engine,
            next: vec![NONE; engine.half_edges],
            other_end: (0..engine.half_edges as u32).collect(),
            merges: 0,
            order,
            used,
            undo: Vec::new(),
            limit,
            prune,
            meter,
            counters,
            cancel: None,
            nodes: 0,
            leaves: 0,
            cuts: 0,
            halted: false,
        };
        for &(rot_from, rot_to) in &engine.fixed_links {
            w.link_rotation(rot_from, rot_to);
        }
        w.undo.clear();
        w
    }

    /// Sets the rotation successor of half-edge `from` to `to`, i.e. the
    /// face successor of `twin(from)`.
    fn link_rotation(&mut self, from: u32, to: u32) {
        let a = self.engine.twin[from as usize];
        let b = to;
        let head = self.other_end[a as usize];
        let tail = self.other_end[b as usize];
        debug_assert_eq!(self.next[a as usize], NONE);
        self.next[a as usize] = b;
        if head == b {
            self.undo.push(Undo::Close { from: a });
        } else {
            self.undo.push(Undo::Merge {
                from: a,
                head,
                tail,
                old_head: self.other_end[head as usize],
                old_tail: self.other_end[tail as usize],
            });
            self.other_end[head as usize] = tail;
            self.other_end[tail as usize] = head;
            self.merges += 1;
        }
    }

    fn unwind(&mut self, mark: usize) {
        while self.undo.len() > mark {
            match self.undo.pop().expect("undo record") {
                Undo::Close { from } => {
                    self.next[from as usize] = NONE;
                }
                Undo::Merge {
                    from,
                    head,
                    tail,
                    old_head,
                    old_tail,
                } => {
                    self.next[from as usize] = NONE;
                    self.other_end[tail as usize] = old_tail;
                    self.other_end[head as usize] = old_head;
                    self.merges -= 1;
                }
            }
        }
    }

    /// Places crossing `c` at slot `(g, t)`.
    fn place(&mut self, g: usize, t: usize, c: u32) {
        let prev = self.order[g][t - 1];
        self.used[c as usize] = true;
        self.order[g].push(c);
        // X+ follows the curve order, X- runs against it
        self.link_rotation(plus(prev), plus(c));
        self.link_rotation(minus(c), minus(prev));
        if t + 1 == self.engine.crossings_of[g].len() {
            let first = self.order[g][0];
            self.link_rotation(plus(c), plus(first));
            self.link_rotation(minus(first), minus(c));
        }
    }

    fn unplace(&mut self, g: usize, mark: usize) {
        self.unwind(mark);
        let c = self.order[g].pop().expect("placed crossing");
        self.used[c as usize] = false;
    }

    fn over_limit(&self) -> bool {
        self.merges > self.limit
    }

    fn replay(&mut self, prefix: &[u32]) -> bool {
        for (depth, &c) in prefix.iter().enumerate() {
            let (g, t) = self.engine.slots[depth];
            self.place(g, t, c);
            if self.prune && self.over_limit() {
                return false;
            }
        }
        true
    }

    fn collect_prefixes(
        &mut self,
        depth: usize,
        stop: usize,
        acc: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if depth == stop {
            out.push(acc.clone());
            return;
        }
        let (g, t) = self.engine.slots[depth];
        let engine = self.engine;
        for &c in &engine.crossings_of[g][1..] {
            if self.used[c as usize] {
                continue;
            }
            let mark = self.undo.len();
            self.place(g, t, c);
            if !(self.prune && self.over_limit()) {
                acc.push(c);
                self.collect_prefixes(depth + 1, stop, acc, out);
                acc.pop();
            }
            self.unplace(g, mark);
        }
    }

    /// Depth-first search from slot `depth`. Returns `true` when the subtree
    /// was fully explored.
    fn run(
        &mut self,
        depth: usize,
        on_leaf: &mut dyn FnMut(u32, &[Vec<u32>]) -> LeafAction,
    ) -> bool {
        self.dfs(depth, on_leaf);
        self.counters
            .leaves
            .fetch_add(self.leaves, Ordering::Relaxed);
        self.counters.nodes.fetch_add(self.nodes, Ordering::Relaxed);
        self.counters.cuts.fetch_add(self.cuts, Ordering::Relaxed);
        self.leaves = 0;
        self.nodes = 0;
        self.cuts = 0;
        !self.halted
    }

    /// Returns `false` to unwind the whole search.
    fn dfs(
        &mut self,
        depth: usize,
        on_leaf: &mut dyn FnMut(u32, &[Vec<u32>]) -> LeafAction,
    ) -> bool {
        self.nodes += 1;
        if self.nodes.is_multiple_of(CHECK_INTERVAL)
            && (!self.meter.check() || self.cancel.is_some_and(|c| c()))
        {
            self.halted = true;
            return false;
        }
        if depth == self.engine.slots.len() {
            if !self.meter.charge_diagram() {
                self.halted = true;
                return false;
            }
            self.leaves += 1;
            if self.merges <= self.limit {
                match on_leaf(self.merges, &self.order) {
                    LeafAction::Continue => {}
                    LeafAction::Stop => {
                        self.halted = true;
                        return false;
                    }
                    LeafAction::Tighten(limit) => self.limit = limit,
                }
            }
            return true;
        }
        let (g, t) = self.engine.slots[depth];
        let engine = self.engine;
        for &c in &engine.crossings_of[g][1..] {
            if self.used[c as usize] {
                continue;
            }
            let mark = self.undo.len();
            self.place(g, t, c);
            let keep_going = if self.prune && self.over_limit() {
                self.cuts += 1;
                true
            } else {
                self.dfs(depth + 1, on_leaf)
            };
            self.unplace(g, mark);
            if !keep_going {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::is_exact_s_diagram;

    fn parse(t: &str) -> Presentation {
        Presentation::parse(t).unwrap()
    }

    const DEGREE_18: &str = "gens: x1 x2 x3; rel: x1 x2^-1 x1^-1 x3 x2^-1 x1^-1 x3 x1 x2^-1 x1^-1 x3 x2 x1 x1 x3^-1 x1 x2^-1 x2^-1";

    #[test]
    fn space_sizes() {
        assert_eq!(
            search_space_size(&parse(DEGREE_18)),
            BigUint::from(3_628_800u32)
        );
        assert_eq!(
            search_space_size(&parse("gens: x; rel: x x")),
            BigUint::from(1u32)
        );
        assert_eq!(
            search_space_size(&parse(
                "gens: x1 x2; rel: x1^2 x2 x1 x2 x1^4; rel: x1 x2^3 x1 x2"
            )),
            BigUint::from(4_838_400u32)
        );
        assert_eq!(search_space_size(&parse("gens: x")), BigUint::from(1u32));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_diagrams(&parse("gens: x; rel: x x")).count(), 1);
        assert_eq!(
            enumerate_diagrams(&parse("gens: x y; rel: x y x^-1 y^-1")).count(),
            1
        );
        let p = parse("gens: a b; rel: a a b a^-1 b b; rel: a b");
        assert_eq!(enumerate_diagrams(&p).count(), 6 * 6);
    }

    #[test]
    fn enumeration_is_lexicographic_and_distinct() {
        let p = parse("gens: a b; rel: a a b a b b a");
        let all: Vec<Vec<Vec<usize>>> = enumerate_diagrams(&p)
            .map(|d| d.orderings().to_vec())
            .collect();
        for pair in all.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn next_permutation_cycles() {
        let mut xs = vec![1, 2, 3];
        let mut n = 1;
        while next_permutation(&mut xs) {
            n += 1;
        }
        assert_eq!(n, 6);
        assert_eq!(xs, vec![1, 2, 3]);
    }

    #[test]
    fn prefilter_rejects_degree_18() {
        let out = find_planar_diagram(
            &parse(DEGREE_18),
            &Meter::unlimited(),
            1,
            true,
            SearchOptions::default(),
        );
        assert!(out.witness.is_none());
        assert!(out.exhausted);
        assert_eq!(out.stats.prefilter_rejections, 1);
    }

    #[test]
    fn finds_witness_after_reduction() {
        let p = parse("gens: x1 x2 x3; rel: x1^-1 x2^-1 x3 x2^-1 x3 x1^-1 x2^-1 x3 x2 x1^-1 x1^-1 x3^-1 x2^-1 x2^-1");
        let out = find_planar_diagram(&p, &Meter::unlimited(), 1, true, SearchOptions::default());
        let d = out.witness.expect("planar diagram");
        assert!(is_exact_s_diagram(&d));
        let naive = find_planar_diagram_naive(&p, &Meter::unlimited());
        assert_eq!(naive.witness.unwrap().orderings(), d.orderings());
    }

    #[test]
    fn parallel_agrees_with_serial() {
        let p = parse("gens: x1 x2; rel: x1^2 x2 x1 x2 x1^4; rel: x1 x2^3 x1 x2");
        let serial =
            find_planar_diagram(&p, &Meter::unlimited(), 1, true, SearchOptions::default());
        let par = find_planar_diagram(&p, &Meter::unlimited(), 4, true, SearchOptions::default());
        assert_eq!(
            serial.witness.as_ref().map(|d| d.orderings().to_vec()),
            par.witness.as_ref().map(|d| d.orderings().to_vec())
        );
        let any = find_planar_diagram(&p, &Meter::unlimited(), 4, false, SearchOptions::default());
        assert!(is_exact_s_diagram(&any.witness.unwrap()));
    }

    #[test]
    fn empty_words_give_trivial_witness() {
        let out = find_planar_diagram(
            &parse("gens: x"),
            &Meter::unlimited(),
            1,
            true,
            SearchOptions::default(),
        );
        assert!(out.witness.is_some());
    }

    #[test]
    fn min_genus_of_commutator() {
        let (best, complete, _) =
            min_genus_diagram(&parse("gens: x y; rel: x y x^-1 y^-1"), &Meter::unlimited());
        assert!(complete);
        assert_eq!(best.unwrap().0, 0);
    }

    #[test]
    fn budget_stop_is_reported() {
        let p = parse("gens: a b; rel: a a b a^-1 b b a b a b^-1 a");
        let meter = crate::budget::SearchBudget::unlimited()
            .with_max_diagrams(Some(1))
            .meter();
        let out = find_planar_diagram(&p, &meter, 1, true, SearchOptions::naive());
        if out.witness.is_none() {
            assert!(out.budget_stopped);
            assert!(!out.exhausted);
        }
    }
}
