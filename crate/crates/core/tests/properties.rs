mod common;

use heegaard::abelian::smith_diagonal;
use heegaard::diagram::CrossingTable;
use heegaard::enumeration::{
    enumerate_diagrams, find_planar_diagram, find_planar_diagram_naive, for_each_planar_diagram,
    min_genus_diagram, SearchOptions,
};
use heegaard::surface::trace_faces;
use heegaard::whitehead::{apply_move, enumerate_moves, move_effect};
use heegaard::{
    surface_summary, AbelianInvariants, Diagram, Letter, Meter, Presentation, Sign,
    SignedGenerator, WhiteheadGraph, Word,
};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::sample::Index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn letter(m: usize) -> impl Strategy<Value = Letter> {
    (0..m, any::<bool>())
        .prop_map(|(g, plus)| Letter::new(g, if plus { Sign::Plus } else { Sign::Minus }))
}

/// Up to three words over `m` generators, total length `1..=max_degree`.
fn raw_presentation(max_degree: usize) -> impl Strategy<Value = Presentation> {
    (1..=3usize)
        .prop_flat_map(move |m| {
            (
                Just(m),
                prop::collection::vec(prop::collection::vec(letter(m), 1..=max_degree), 1..=3),
            )
        })
        .prop_filter("total length", move |(_, ws)| {
            ws.iter().map(Vec::len).sum::<usize>() <= max_degree
        })
        .prop_map(|(m, ws)| common::presentation(m, ws))
}

fn reduced_presentation(m: usize, max_degree: usize) -> impl Strategy<Value = Presentation> {
    any::<u64>().prop_map(move |seed| {
        common::random_reduced(&mut ChaCha8Rng::seed_from_u64(seed), m, 3, max_degree)
    })
}

/// A diagram of `p` with crossing orders picked by `picks`.
fn shuffled_diagram(p: &Presentation, picks: &[Index]) -> Diagram {
    let table = CrossingTable::new(p.generator_count(), p.relators());
    let mut k = 0;
    let orderings = (0..p.generator_count())
        .map(|g| {
            let mut pool = table.on_generator(g).to_vec();
            let mut order = Vec::with_capacity(pool.len());
            while !pool.is_empty() {
                order.push(pool.remove(picks[k % picks.len()].index(pool.len())));
                k += 1;
            }
            order
        })
        .collect();
    Diagram::build(p, orderings).unwrap()
}

fn vertex(g: usize, side: Sign) -> SignedGenerator {
    SignedGenerator::new(g, side)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn face_successor_is_a_permutation(p in raw_presentation(10), picks in prop::collection::vec(any::<Index>(), 1..16)) {
        let d = shuffled_diagram(&p, &picks);
        let mut image: Vec<usize> = (0..d.half_edge_count()).map(|h| d.face_successor(h)).collect();
        image.sort_unstable();
        prop_assert!(image.into_iter().eq(0..d.half_edge_count()));
        let faces = trace_faces(&d);
        prop_assert_eq!(faces.iter().map(Vec::len).sum::<usize>(), d.half_edge_count());
    }

    #[test]
    fn euler_characteristic_per_component(p in raw_presentation(10), picks in prop::collection::vec(any::<Index>(), 1..16)) {
        let d = shuffled_diagram(&p, &picks);
        let s = surface_summary(&d);
        let chi = s.vertex_count as i64 - s.arc_count as i64 + s.face_count as i64;
        prop_assert_eq!(chi, 2 * s.component_count as i64 - 2 * s.total_genus as i64);
        prop_assert_eq!(s.genus_per_component.values().sum::<u64>(), s.total_genus);
        prop_assert_eq!(s.arc_count, p.raw_degree());
    }

    #[test]
    fn pruned_search_matches_naive(p in raw_presentation(8)) {
        let naive = find_planar_diagram_naive(&p, &Meter::unlimited());
        for options in [SearchOptions::default(), SearchOptions { prune: true, planarity_prefilter: false }] {
            let pruned = find_planar_diagram(&p, &Meter::unlimited(), 1, true, options);
            prop_assert_eq!(pruned.exhausted, naive.exhausted);
            prop_assert_eq!(
                pruned.witness.as_ref().map(|d| d.orderings().to_vec()),
                naive.witness.as_ref().map(|d| d.orderings().to_vec())
            );
        }
        let parallel = find_planar_diagram(&p, &Meter::unlimited(), 3, true, SearchOptions::default());
        prop_assert_eq!(
            parallel.witness.map(|d| d.orderings().to_vec()),
            naive.witness.map(|d| d.orderings().to_vec())
        );
    }

    #[test]
    fn planar_stream_matches_naive_count(p in raw_presentation(7)) {
        let naive = enumerate_diagrams(&p).filter(|d| surface_summary(d).is_planar()).count();
        let mut streamed = 0;
        let (_, exhausted) = for_each_planar_diagram(&p, &Meter::unlimited(), |_| { streamed += 1; true });
        prop_assert!(exhausted);
        prop_assert_eq!(streamed, naive);
    }

    #[test]
    fn least_genus_matches_naive(p in raw_presentation(7)) {
        let naive = enumerate_diagrams(&p).map(|d| surface_summary(&d).total_genus).min();
        let (found, exhaustive, _) = min_genus_diagram(&p, &Meter::unlimited());
        prop_assert!(exhaustive);
        prop_assert_eq!(found.map(|(g, _)| g), naive);
    }

    #[test]
    fn move_delta_is_exact(p in reduced_presentation(3, 12)) {
        let deg = p.algebraic_degree() as i64;
        for mv in enumerate_moves(3).unwrap() {
            let effect = move_effect(&p, &mv);
            let applied = apply_move(&p, &mv).unwrap();
            prop_assert_eq!(applied.unreduced.raw_degree() as i64, deg + effect.unreduced_growth as i64);
            prop_assert_eq!(applied.reduced.algebraic_degree() as i64, deg + effect.delta);
            prop_assert_eq!(effect.unreduced_growth as i64 - 2 * applied.switchbacks as i64, effect.delta);
            prop_assert!(effect.lemma_delta() >= effect.delta);
        }
    }

    #[test]
    fn moves_preserve_abelianization(p in reduced_presentation(3, 12)) {
        let before = AbelianInvariants::<i64>::of(&p);
        for mv in enumerate_moves(3).unwrap() {
            let after = apply_move(&p, &mv).unwrap().reduced;
            prop_assert_eq!(&AbelianInvariants::<i64>::of(&after), &before);
        }
    }

    #[test]
    fn inverse_move_round_trips(p in reduced_presentation(3, 12)) {
        for mv in enumerate_moves(3).unwrap() {
            let there = apply_move(&p, &mv).unwrap().reduced;
            let back = apply_move(&there, &mv.inverse()).unwrap().reduced;
            prop_assert_eq!(back.canonical(), p.canonical());
        }
    }

    #[test]
    fn two_generator_lemma_delta_is_exact(p in reduced_presentation(2, 16)) {
        for mv in enumerate_moves(2).unwrap() {
            let effect = move_effect(&p, &mv);
            prop_assert_eq!(effect.lemma_delta(), effect.delta);
        }
    }

    #[test]
    fn pair_counts_are_inverse_symmetric(p in raw_presentation(12), a in letter(3), b in letter(3)) {
        let m = p.generator_count();
        let (a, b) = (Letter::new(a.generator % m, a.sign), Letter::new(b.generator % m, b.sign));
        prop_assert_eq!(p.pair_occurrences(a, b), p.pair_occurrences(b.inverse(), a.inverse()));
    }

    #[test]
    fn whitehead_graph_weights(p in raw_presentation(14)) {
        let g = WhiteheadGraph::of(&p);
        let q = p.reduced();
        prop_assert_eq!(g.total_weight() as usize, q.algebraic_degree());
        for i in 0..p.generator_count() {
            let both = g.weighted_degree(vertex(i, Sign::Plus)) + g.weighted_degree(vertex(i, Sign::Minus));
            prop_assert_eq!(both as usize, 2 * q.occurrences(i));
        }
        for v in g.vertices() {
            prop_assert_eq!(g.weight(v, v), 0);
        }
    }

    #[test]
    fn canonical_form_ignores_rotation_inversion_and_order(
        p in raw_presentation(12),
        shifts in prop::collection::vec(0..12usize, 3),
        flips in prop::collection::vec(any::<bool>(), 3),
    ) {
        let q = p.reduced();
        let mut words: Vec<Word> = q
            .relators()
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let w = w.rotated(shifts[i] % w.len().max(1));
                if flips[i] { w.inverse() } else { w }
            })
            .collect();
        words.reverse();
        prop_assert_eq!(q.with_relators(words).canonical(), q.canonical());
    }

    #[test]
    fn smith_form_matches_determinantal_divisors(
        rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..=3)
    ) {
        let small = smith_diagonal(rows.clone(), 3);
        let big = smith_diagonal(
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
            3,
        );
        prop_assert_eq!(
            small.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>(),
            big
        );
        let divisors = common::determinantal_divisors(&rows);
        let mut product = 1i64;
        for (k, d) in divisors.iter().enumerate() {
            product *= small[k];
            prop_assert_eq!(product, *d);
        }
        for k in 1..small.len() {
            if small[k] != 0 {
                prop_assert_eq!(small[k] % small[k - 1], 0);
            }
        }
    }
}

#[test]
fn tiny_single_relators_exhaustively() {
    for p in common::all_single_relators(2, 5) {
        let naive = find_planar_diagram_naive(&p, &Meter::unlimited());
        let pruned =
            find_planar_diagram(&p, &Meter::unlimited(), 1, true, SearchOptions::default());
        assert_eq!(
            pruned.witness.map(|d| d.orderings().to_vec()),
            naive.witness.map(|d| d.orderings().to_vec()),
            "{:?}",
            p.relator_strings()
        );
        let q = p.reduced();
        let deg = q.algebraic_degree() as i64;
        for mv in enumerate_moves(2).unwrap() {
            let effect = move_effect(&q, &mv);
            assert_eq!(
                apply_move(&q, &mv).unwrap().reduced.algebraic_degree() as i64,
                deg + effect.delta
            );
        }
    }
}
