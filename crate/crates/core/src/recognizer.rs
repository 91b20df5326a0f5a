//! Verdict pipelines: exact search, search along reducing moves, search
//! over trivial-pair insertions, and the two-generator decision.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::Serialize;

use crate::budget::{Meter, SearchBudget};
use crate::diagram::Diagram;
use crate::enumeration::{find_planar_diagram, min_genus_diagram, SearchOptions, SearchStats};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::surface::{is_exact_s_diagram, surface_summary};
use crate::whitehead::{apply_move, orbit_bfs, reducing_moves, MoveStep};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    ExactS,
    SViaReduction,
    SViaExpansion,
    NotSComplete,
    NotFoundBudget,
}

impl VerdictKind {
    pub fn is_s(self) -> bool {
        matches!(
            self,
            VerdictKind::ExactS | VerdictKind::SViaReduction | VerdictKind::SViaExpansion
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::ExactS => "EXACT_S",
            VerdictKind::SViaReduction => "S_VIA_REDUCTION",
            VerdictKind::SViaExpansion => "S_VIA_EXPANSION",
            VerdictKind::NotSComplete => "NOT_S_COMPLETE",
            VerdictKind::NotFoundBudget => "NOT_FOUND_BUDGET",
        }
    }
}

/// One trivial pair `letter letter⁻¹` inserted before `position` of
/// relator `relator`, counted in the words after the earlier insertions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Insertion {
    pub relator: usize,
    pub position: usize,
    pub letter: Letter,
}

#[derive(Debug, Clone)]
pub struct Witness {
    /// The words the diagram is drawn for.
    pub presentation: Presentation,
    /// Moves from the input to `presentation` (reduction verdicts).
    pub path: Vec<MoveStep>,
    /// Pairs inserted into the input (expansion verdicts).
    pub insertions: Vec<Insertion>,
    pub diagram: Diagram,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub witness: Option<Witness>,
    /// Every search behind a negative verdict covered its whole space.
    pub exhausted: bool,
    pub stats: SearchStats,
    /// Presentations whose diagram class was searched.
    pub presentations_searched: usize,
}

impl Verdict {
    fn failure(exhausted: bool, stats: SearchStats, searched: usize) -> Self {
        Verdict {
            kind: VerdictKind::NotFoundBudget,
            witness: None,
            exhausted,
            stats,
            presentations_searched: searched,
        }
    }
}

/// Runs one diagram search under the shared meter.
fn search(
    p: &Presentation,
    budget: &SearchBudget,
    meter: &Meter,
    stats: &mut SearchStats,
) -> (Option<Diagram>, bool) {
    let out = find_planar_diagram(
        p,
        meter,
        budget.parallelism,
        budget.deterministic,
        SearchOptions::default(),
    );
    stats.absorb(&out.stats);
    (out.witness, out.exhausted)
}

pub fn recognize_exact(p: &Presentation, budget: &SearchBudget) -> Verdict {
    recognize_exact_with(p, budget, &budget.meter())
}

pub fn recognize_exact_with(p: &Presentation, budget: &SearchBudget, meter: &Meter) -> Verdict {
    let p = p.reduced();
    let mut stats = SearchStats::default();
    match search(&p, budget, meter, &mut stats) {
        (Some(diagram), _) => Verdict {
            kind: VerdictKind::ExactS,
            witness: Some(Witness {
                presentation: p,
                path: Vec::new(),
                insertions: Vec::new(),
                diagram,
            }),
            exhausted: false,
            stats,
            presentations_searched: 1,
        },
        (None, exhausted) => Verdict::failure(exhausted, stats, 1),
    }
}

/// The input followed by every presentation reachable by strictly reducing
/// moves, breadth first and deduplicated by canonical form, each with the
/// moves reaching it.
fn reducing_closure(p: &Presentation, meter: &Meter) -> Result<Vec<(Presentation, Vec<MoveStep>)>> {
    let root = p.reduced();
    let mut seen = HashSet::from([root.canonical()]);
    let mut nodes = vec![(root, Vec::new())];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if !meter.check() {
            break;
        }
        let (current, path) = nodes[i].clone();
        for (mv, effect) in reducing_moves(&current)? {
            let next = apply_move(&current, &mv)?.reduced.canonical();
            if seen.insert(next.clone()) {
                let mut path = path.clone();
                path.push(MoveStep {
                    mv,
                    delta: effect.delta,
                    result: next.clone(),
                });
                queue.push_back(nodes.len());
                nodes.push((next, path));
            }
        }
    }
    Ok(nodes)
}

pub fn recognize_with_reduction(p: &Presentation, budget: &SearchBudget) -> Result<Verdict> {
    recognize_with_reduction_with(p, budget, &budget.meter())
}

pub fn recognize_with_reduction_with(
    p: &Presentation,
    budget: &SearchBudget,
    meter: &Meter,
) -> Result<Verdict> {
    let nodes = reducing_closure(p, meter)?;
    let complete_closure = !meter.is_stopped();
    let mut stats = SearchStats::default();
    let mut exhausted = complete_closure;
    for (i, (q, path)) in nodes.iter().enumerate() {
        let (found, done) = search(q, budget, meter, &mut stats);
        exhausted &= done;
        if let Some(diagram) = found {
            return Ok(Verdict {
                kind: if path.is_empty() {
                    VerdictKind::ExactS
                } else {
                    VerdictKind::SViaReduction
                },
                witness: Some(Witness {
                    presentation: q.clone(),
                    path: path.clone(),
                    insertions: Vec::new(),
                    diagram,
                }),
                exhausted: false,
                stats,
                presentations_searched: i + 1,
            });
        }
        if meter.is_stopped() {
            return Ok(Verdict::failure(false, stats, i + 1));
        }
    }
    Ok(Verdict::failure(exhausted, stats, nodes.len()))
}

pub fn recognize_with_expansion(
    p: &Presentation,
    pair_budget: usize,
    budget: &SearchBudget,
) -> Verdict {
    expansion_tiers(p, 0, pair_budget, budget, &budget.meter())
}

/// Every way of inserting one trivial pair into `words`, keyed by the
/// canonical raw form.
fn one_insertion(p: &Presentation) -> Vec<(Presentation, Insertion)> {
    let mut out = Vec::new();
    for (r, word) in p.relators().iter().enumerate() {
        for position in 0..word.len().max(1) {
            for g in 0..p.generator_count() {
                for letter in [Letter::pos(g), Letter::neg(g)] {
                    let mut relators: Vec<Word> = p.relators().to_vec();
                    relators[r] = word.with_trivial_pair(position, letter);
                    out.push((
                        p.with_relators(relators),
                        Insertion {
                            relator: r,
                            position,
                            letter,
                        },
                    ));
                }
            }
        }
    }
    out
}

/// Searches tiers `first..=last` of the insertion hierarchy: tier `t` holds
/// every presentation obtained from the reduced input by `t` insertions,
/// deduplicated across tiers by canonical raw form and sorted by it.
pub fn expansion_tiers(
    p: &Presentation,
    first: usize,
    last: usize,
    budget: &SearchBudget,
    meter: &Meter,
) -> Verdict {
    let root = p.reduced();
    let mut seen = HashSet::from([root.canonical_raw()]);
    let mut tier: Vec<(Presentation, Vec<Insertion>)> = vec![(root, Vec::new())];
    let mut stats = SearchStats::default();
    let mut exhausted = true;
    let mut searched = 0;
    for t in 0..=last {
        if t > 0 {
            let mut next: BTreeMap<Presentation, (Presentation, Vec<Insertion>)> = BTreeMap::new();
            for (q, ins) in &tier {
                for (candidate, insertion) in one_insertion(q) {
                    let key = candidate.canonical_raw();
                    if seen.insert(key.clone()) {
                        let mut ins = ins.clone();
                        ins.push(insertion);
                        next.insert(key, (candidate, ins));
                    }
                }
            }
            tier = next.into_values().collect();
        }
        if t < first {
            continue;
        }
        for (q, ins) in &tier {
            let (found, done) = search(q, budget, meter, &mut stats);
            searched += 1;
            exhausted &= done;
            if let Some(diagram) = found {
                return Verdict {
                    kind: if t == 0 {
                        VerdictKind::ExactS
                    } else {
                        VerdictKind::SViaExpansion
                    },
                    witness: Some(Witness {
                        presentation: q.clone(),
                        path: Vec::new(),
                        insertions: ins.clone(),
                        diagram,
                    }),
                    exhausted: false,
                    stats,
                    presentations_searched: searched,
                };
            }
            if meter.is_stopped() {
                return Verdict::failure(false, stats, searched);
            }
        }
    }
    Verdict::failure(exhausted, stats, searched)
}

/// Complete decision for two generators: searches the closure of the input
/// under moves that never raise the algebraic degree.
pub fn solve_two_generator(p: &Presentation, budget: &SearchBudget) -> Result<Verdict> {
    solve_two_generator_with(p, budget, &budget.meter())
}

pub fn solve_two_generator_with(
    p: &Presentation,
    budget: &SearchBudget,
    meter: &Meter,
) -> Result<Verdict> {
    if p.generator_count() != 2 {
        return Err(Error::GeneratorCount {
            expected: 2,
            found: p.generator_count(),
        });
    }
    let root = p.reduced();
    let orbit = orbit_bfs(&root, root.algebraic_degree(), meter, None)?;
    let mut stats = SearchStats::default();
    let mut exhausted = !orbit.truncated;
    for (i, member) in orbit.members.iter().enumerate() {
        // the start is searched as given so its witness uses the input words
        let q = if i == 0 { &root } else { &member.presentation };
        let (found, done) = search(q, budget, meter, &mut stats);
        exhausted &= done;
        if let Some(diagram) = found {
            return Ok(Verdict {
                kind: if i == 0 {
                    VerdictKind::ExactS
                } else {
                    VerdictKind::SViaReduction
                },
                witness: Some(Witness {
                    presentation: q.clone(),
                    path: orbit.path_to(i),
                    insertions: Vec::new(),
                    diagram,
                }),
                exhausted: false,
                stats,
                presentations_searched: i + 1,
            });
        }
        if meter.is_stopped() {
            return Ok(Verdict::failure(false, stats, i + 1));
        }
    }
    if exhausted {
        Ok(Verdict {
            kind: VerdictKind::NotSComplete,
            witness: None,
            exhausted: true,
            stats,
            presentations_searched: orbit.members.len(),
        })
    } else {
        Ok(Verdict::failure(false, stats, orbit.members.len()))
    }
}

/// Least total genus found over the diagrams of the input and of the
/// presentations along its reducing moves. An upper bound only.
#[derive(Debug, Clone)]
pub struct GenusBound {
    pub genus: u64,
    pub presentation: Presentation,
    pub diagram: Diagram,
    /// The minimum over every searched class was established.
    pub exhaustive: bool,
    pub stats: SearchStats,
}

pub fn genus_upper_bound(p: &Presentation, budget: &SearchBudget) -> Result<Option<GenusBound>> {
    genus_upper_bound_with(p, &budget.meter())
}

pub fn genus_upper_bound_with(p: &Presentation, meter: &Meter) -> Result<Option<GenusBound>> {
    let nodes = reducing_closure(p, meter)?;
    let mut best: Option<GenusBound> = None;
    let mut stats = SearchStats::default();
    let mut exhaustive = !meter.is_stopped();
    for (q, _) in &nodes {
        let (found, complete, s) = min_genus_diagram(q, meter);
        stats.absorb(&s);
        exhaustive &= complete;
        if let Some((genus, diagram)) = found {
            if best.as_ref().is_none_or(|b| genus < b.genus) {
                best = Some(GenusBound {
                    genus,
                    presentation: q.clone(),
                    diagram,
                    exhaustive: false,
                    stats: SearchStats::default(),
                });
            }
        }
        if best.as_ref().is_some_and(|b| b.genus == 0) || meter.is_stopped() {
            break;
        }
    }
    Ok(best.map(|mut b| {
        b.exhaustive = exhaustive || b.genus == 0;
        b.stats = stats;
        b
    }))
}

/// Independent re-verification of a verdict's witness: genus zero by full
/// face tracing, no switchbacks unless it is an expansion witness, and the
/// witness words reducing to the end of its path (or to the input).
pub fn verify_witness(input: &Presentation, verdict: &Verdict) -> bool {
    let Some(w) = &verdict.witness else {
        return !verdict.kind.is_s();
    };
    if !surface_summary(&w.diagram).is_planar() || w.diagram.presentation() != &w.presentation {
        return false;
    }
    match verdict.kind {
        VerdictKind::SViaExpansion => {
            w.presentation.reduced().canonical() == input.canonical()
                && w.presentation.raw_degree() == input.algebraic_degree() + 2 * w.insertions.len()
        }
        VerdictKind::ExactS | VerdictKind::SViaReduction => {
            let mut q = input.reduced();
            for step in &w.path {
                match apply_move(&q, &step.mv) {
                    Ok(a) => q = a.reduced,
                    Err(_) => return false,
                }
            }
            is_exact_s_diagram(&w.diagram) && q.canonical() == w.presentation.canonical()
        }
        _ => false,
    }
}

/// Moves of a witness path as displayable strings.
pub fn path_strings(p: &Presentation, path: &[MoveStep]) -> Vec<String> {
    path.iter()
        .map(|s| s.mv.display(p.generator_names()).to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(t: &str) -> Presentation {
        Presentation::parse(t).unwrap()
    }

    const DEGREE_18: &str = "gens: x1 x2 x3; rel: x1 x2^-1 x1^-1 x3 x2^-1 x1^-1 x3 x1 x2^-1 x1^-1 x3 x2 x1 x1 x3^-1 x1 x2^-1 x2^-1";
    const POSITIVE_15: &str = "gens: x1 x2; rel: x1^2 x2 x1 x2 x1^4; rel: x1 x2^3 x1 x2";

    fn unlimited() -> SearchBudget {
        SearchBudget::unlimited()
    }

    #[test]
    fn square_is_exact() {
        let p = parse("gens: x; rel: x x");
        let v = recognize_exact(&p, &unlimited());
        assert_eq!(v.kind, VerdictKind::ExactS);
        assert!(verify_witness(&p, &v));
    }

    #[test]
    fn degree_18_is_exhausted_then_reduced() {
        let p = parse(DEGREE_18);
        let v = recognize_exact(&p, &unlimited());
        assert_eq!(v.kind, VerdictKind::NotFoundBudget);
        assert!(v.exhausted);
        let v = recognize_with_reduction(&p, &unlimited()).unwrap();
        assert_eq!(v.kind, VerdictKind::SViaReduction);
        assert!(verify_witness(&p, &v));
        assert!(v.witness.unwrap().presentation.algebraic_degree() < 18);
    }

    #[test]
    fn zero_pair_budget_matches_exact() {
        for text in [
            DEGREE_18,
            "gens: x; rel: x x",
            "gens: x y; rel: x y x^-1 y^-1",
        ] {
            let p = parse(text);
            let a = recognize_exact(&p, &unlimited());
            let b = recognize_with_expansion(&p, 0, &unlimited());
            assert_eq!(a.kind, b.kind);
            assert_eq!(a.exhausted, b.exhausted);
        }
    }

    #[test]
    fn two_generator_verdicts() {
        let v = solve_two_generator(&parse(POSITIVE_15), &unlimited()).unwrap();
        assert_eq!(v.kind, VerdictKind::ExactS);
        assert_eq!(v.witness.as_ref().unwrap().diagram.degree(), 15);
        let v = solve_two_generator(&parse("gens: x y; rel: x; rel: y"), &unlimited()).unwrap();
        assert_eq!(v.kind, VerdictKind::ExactS);
        assert!(solve_two_generator(&parse(DEGREE_18), &unlimited()).is_err());
    }

    #[test]
    fn genus_bounds() {
        let b = genus_upper_bound(&parse("gens: x; rel: x x"), &unlimited())
            .unwrap()
            .unwrap();
        assert_eq!(b.genus, 0);
        let b = genus_upper_bound(&parse("gens: x y; rel: x y x^-1 y^-1"), &unlimited())
            .unwrap()
            .unwrap();
        assert_eq!(b.genus, 0);
        assert!(b.exhaustive);
    }

    #[test]
    fn tight_budget_is_inconclusive() {
        let p = parse("gens: x; rel: x x x");
        let budget = unlimited().with_max_diagrams(Some(0));
        let v = recognize_with_expansion(&p, 1, &budget);
        assert_eq!(v.kind, VerdictKind::NotFoundBudget);
        assert!(!v.exhausted);
    }
}
