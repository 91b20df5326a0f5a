//! The JSON report assembled from the verdict pipelines.

use num_bigint::BigInt;
use serde::Serialize;

use crate::abelian::AbelianInvariants;
use crate::budget::{Meter, SearchBudget};
use crate::diagram::DiagramRecord;
use crate::enumeration::SearchStats;
use crate::error::Result;
use crate::presentation::Presentation;
use crate::recognizer::{
    expansion_tiers, genus_upper_bound_with, recognize_exact_with, recognize_with_reduction_with,
    solve_two_generator_with, GenusBound, Verdict, VerdictKind, Witness,
};
use crate::surface::vertex_label;
use crate::whitehead::MoveStep;
use crate::whitehead_graph::WhiteheadGraph;

const BUDGET_NOTE: &str = "Recognition with three or more generators is only semi-decidable. \
NOT_FOUND_BUDGET means no witness was found within these limits, not that none exists.";

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub input: InputRecord,
    pub flags: Flags,
    pub degrees: Degrees,
    /// Smith-normal-form diagonal of the abelianization.
    pub abelianization: Vec<String>,
    pub whitehead_graph: GraphRecord,
    pub verdict: VerdictRecord,
    pub genus_upper_bound: Option<GenusRecord>,
    pub statistics: Statistics,
    pub budgets: BudgetRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputRecord {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Flags {
    pub unused_generators: Vec<String>,
    pub empty_relators: Vec<usize>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Degrees {
    pub raw: usize,
    pub reduced: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphRecord {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    pub planar: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeRecord {
    pub a: String,
    pub b: String,
    pub weight: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictRecord {
    pub kind: VerdictKind,
    pub exhausted: bool,
    pub witness: Option<WitnessRecord>,
    pub path: Vec<StepRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessRecord {
    pub relators: Vec<String>,
    pub degree: usize,
    pub insertions: Vec<InsertionRecord>,
    pub diagram: DiagramRecord,
}

#[derive(Debug, Clone, Serialize)]
pub struct InsertionRecord {
    pub relator: usize,
    pub position: usize,
    pub pair: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct StepRecord {
    #[serde(rename = "move")]
    pub mv: String,
    pub delta: i64,
    pub relators: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GenusRecord {
    pub genus: u64,
    pub exhaustive: bool,
    pub relators: Vec<String>,
    pub diagram: DiagramRecord,
}

#[derive(Debug, Clone, Serialize)]
pub struct Statistics {
    #[serde(flatten)]
    pub search: SearchStats,
    pub presentations_searched: usize,
    pub budget_stopped: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BudgetRecord {
    #[serde(flatten)]
    pub budget: SearchBudget,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair_budget: Option<usize>,
    pub note: &'static str,
}

pub fn graph_record(p: &Presentation) -> GraphRecord {
    let g = WhiteheadGraph::of(p);
    let names = p.generator_names();
    GraphRecord {
        vertices: g.vertices().map(|v| vertex_label(names, v)).collect(),
        edges: g
            .edges()
            .map(|e| EdgeRecord {
                a: vertex_label(names, e.a),
                b: vertex_label(names, e.b),
                weight: e.weight,
            })
            .collect(),
        planar: g.is_planar(),
    }
}

pub fn path_records(p: &Presentation, path: &[MoveStep]) -> Vec<StepRecord> {
    path.iter()
        .map(|s| StepRecord {
            mv: s.mv.display(p.generator_names()).to_string(),
            delta: s.delta,
            relators: s.result.relator_strings(),
        })
        .collect()
}

fn witness_record(w: &Witness) -> WitnessRecord {
    let names = w.presentation.generator_names();
    WitnessRecord {
        relators: w.presentation.relator_strings(),
        degree: w.diagram.degree(),
        insertions: w
            .insertions
            .iter()
            .map(|i| InsertionRecord {
                relator: i.relator,
                position: i.position,
                pair: format!(
                    "{n}^{} {n}^{}",
                    i.letter.sign.as_i64(),
                    -i.letter.sign.as_i64(),
                    n = names[i.letter.generator]
                ),
            })
            .collect(),
        diagram: w.diagram.record(),
    }
}

pub fn genus_record(b: &GenusBound) -> GenusRecord {
    GenusRecord {
        genus: b.genus,
        exhaustive: b.exhaustive,
        relators: b.presentation.relator_strings(),
        diagram: b.diagram.record(),
    }
}

impl Report {
    /// Report for one verdict on `p`. Timing fields are dropped in
    /// deterministic mode.
    pub fn new(
        p: &Presentation,
        verdict: &Verdict,
        genus: Option<&GenusBound>,
        budget: &SearchBudget,
        pair_budget: Option<usize>,
        meter: &Meter,
    ) -> Report {
        let unused: Vec<String> = p
            .unused_generators()
            .into_iter()
            .map(|g| p.generator_names()[g].clone())
            .collect();
        let empty = p.empty_relators();
        let mut search = verdict.stats.clone();
        if let Some(g) = genus {
            search.absorb(&g.stats);
        }
        if !budget.deterministic {
            search = search.with_elapsed(meter.elapsed());
        }
        Report {
            input: InputRecord {
                generators: p.generator_names().to_vec(),
                relators: p.relator_strings(),
            },
            flags: Flags {
                degenerate: !unused.is_empty() || !empty.is_empty(),
                unused_generators: unused,
                empty_relators: empty,
            },
            degrees: Degrees {
                raw: p.raw_degree(),
                reduced: p.algebraic_degree(),
            },
            abelianization: AbelianInvariants::<BigInt>::of(p)
                .diagonal
                .iter()
                .map(ToString::to_string)
                .collect(),
            whitehead_graph: graph_record(p),
            verdict: VerdictRecord {
                kind: verdict.kind,
                exhausted: verdict.exhausted,
                witness: verdict.witness.as_ref().map(witness_record),
                path: verdict
                    .witness
                    .as_ref()
                    .map(|w| path_records(p, &w.path))
                    .unwrap_or_default(),
            },
            genus_upper_bound: genus.map(genus_record),
            statistics: Statistics {
                search,
                presentations_searched: verdict.presentations_searched,
                budget_stopped: meter.is_stopped(),
            },
            budgets: BudgetRecord {
                budget: budget.clone(),
                pair_budget,
                note: BUDGET_NOTE,
            },
            generated_at_unix: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Full pipeline. Two-generator inputs get the complete decision; otherwise
/// the exact search, the reducing closure and the insertion tiers run in
/// turn under one shared budget. The genus bound gets its own allowance of
/// the same size.
pub fn recognize(p: &Presentation, budget: &SearchBudget, pair_budget: usize) -> Result<Report> {
    let meter = budget.meter();
    let mut verdict = if p.generator_count() == 2 {
        solve_two_generator_with(p, budget, &meter)?
    } else {
        let exact = recognize_exact_with(p, budget, &meter);
        if exact.kind.is_s() || meter.is_stopped() {
            exact
        } else {
            let reduction = recognize_with_reduction_with(p, budget, &meter)?;
            if reduction.kind.is_s() || meter.is_stopped() {
                merge(exact, reduction)
            } else {
                let expansion = expansion_tiers(p, 1, pair_budget, budget, &meter);
                merge(merge(exact, reduction), expansion)
            }
        }
    };
    if verdict.kind == VerdictKind::NotFoundBudget {
        // the insertion tiers are never complete, so neither is the verdict
        verdict.exhausted &= p.generator_count() == 2;
    }
    let genus = match &verdict.witness {
        Some(w) if verdict.kind != VerdictKind::SViaExpansion => Some(GenusBound {
            genus: 0,
            presentation: w.presentation.clone(),
            diagram: w.diagram.clone(),
            exhaustive: true,
            stats: SearchStats::default(),
        }),
        _ => genus_upper_bound_with(p, &budget.meter())?,
    };
    Ok(Report::new(
        p,
        &verdict,
        genus.as_ref(),
        budget,
        Some(pair_budget),
        &meter,
    ))
}

/// Keeps the later verdict, accumulating the earlier one's statistics.
fn merge(earlier: Verdict, mut later: Verdict) -> Verdict {
    later.stats.absorb(&earlier.stats);
    later.presentations_searched += earlier.presentations_searched;
    later.exhausted &= earlier.exhausted;
    later
}

/// Process exit status for a verdict: 0 for an s-verdict, 1 for a complete
/// negative decision, 2 when inconclusive.
pub fn exit_code(kind: VerdictKind) -> i32 {
    match kind {
        VerdictKind::ExactS | VerdictKind::SViaReduction | VerdictKind::SViaExpansion => 0,
        VerdictKind::NotSComplete => 1,
        VerdictKind::NotFoundBudget => 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(t: &str) -> Presentation {
        Presentation::parse(t).unwrap()
    }

    #[test]
    fn heisenberg_report_fields() {
        let p =
            parse("gens: x y z; rel: x y x^-1 y^-1 z^-1; rel: x z x^-1 z^-1; rel: y z y^-1 z^-1");
        let budget = SearchBudget::desk().with_max_diagrams(Some(10_000));
        let r = recognize(&p, &budget, 0).unwrap();
        assert_eq!(r.degrees.reduced, 13);
        assert_eq!(r.whitehead_graph.vertices.len(), 6);
        assert_eq!(
            r.whitehead_graph
                .edges
                .iter()
                .map(|e| e.weight)
                .sum::<u64>(),
            13
        );
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in [
            "input",
            "degrees",
            "whitehead_graph",
            "verdict",
            "genus_upper_bound",
            "statistics",
            "budgets",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert!(json["verdict"].get("kind").is_some());
        assert!(json["verdict"].get("witness").is_some());
        assert!(json["verdict"].get("path").is_some());
    }

    #[test]
    fn empty_relators_are_flagged() {
        let p = parse("gens: x y\nrel:");
        let r = recognize(&p, &SearchBudget::unlimited(), 0).unwrap();
        assert!(r.flags.degenerate);
        assert_eq!(r.verdict.kind, VerdictKind::ExactS);
    }

    #[test]
    fn deterministic_reports_are_identical() {
        let p = parse("gens: a b c; rel: a b c a^-1 b^-1 c^-1");
        let budget = SearchBudget::unlimited();
        assert_eq!(
            recognize(&p, &budget, 1).unwrap().to_json(),
            recognize(&p, &budget, 1).unwrap().to_json()
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(VerdictKind::SViaExpansion), 0);
        assert_eq!(exit_code(VerdictKind::NotSComplete), 1);
        assert_eq!(exit_code(VerdictKind::NotFoundBudget), 2);
    }
}
