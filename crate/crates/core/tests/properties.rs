//! Randomized invariants, one group per `mod`.

mod common;

use eternal_core::certificate::{solve, Certificate};
use eternal_core::interval_model::{normalize, random_model, IntervalModel, ModelKind};
use proptest::prelude::*;

/// Raw models on a coarse half-integer grid so that shared endpoints are common.
fn raw_model() -> impl Strategy<Value = IntervalModel> {
    prop::collection::vec((0u32..24, 1u32..8), 0..14).prop_map(|spans| {
        IntervalModel::from_triples(
            spans
                .into_iter()
                .enumerate()
                .map(|(i, (s, len))| (format!("x{i}"), s as f64 / 2.0, (s + len) as f64 / 2.0)),
        )
        .unwrap()
    })
}

fn canonical_model() -> impl Strategy<Value = eternal_core::CanonicalModel> {
    (0usize..40, any::<u64>(), prop::bool::ANY).prop_map(|(n, seed, proper)| {
        let kind = if proper {
            ModelKind::Proper
        } else {
            ModelKind::General
        };
        random_model(n, seed, kind)
    })
}

mod normalization {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(80))]

        #[test]
        fn preserves_the_intersection_graph(model in raw_model()) {
            let canonical = normalize(&model);
            prop_assert!(canonical.to_model().is_canonical());
            prop_assert_eq!(
                common::graph_edges(&canonical.intersection_graph()),
                common::overlap_edges(&model)
            );
            prop_assert_eq!(
                common::overlap_edges(&canonical.to_model()),
                common::overlap_edges(&model)
            );
        }

        #[test]
        fn is_idempotent(model in raw_model()) {
            let once = normalize(&model);
            prop_assert_eq!(normalize(&once.to_model()), once);
        }

        #[test]
        fn coordinates_are_a_permutation(model in canonical_model()) {
            let n = model.len();
            let mut coords: Vec<usize> = (0..n).flat_map(|i| [model.start(i), model.end(i)]).collect();
            coords.sort_unstable();
            prop_assert_eq!(coords, (1..=2 * n).collect::<Vec<_>>());
            let mut ends: Vec<usize> = (0..n).map(|i| model.end(i)).collect();
            ends.sort_unstable();
            prop_assert!(ends.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn properness_matches_containment_scan(model in canonical_model()) {
            let n = model.len();
            let contains = (0..n).any(|i| (0..n).any(|j| {
                i != j && model.start(i) < model.start(j) && model.end(j) < model.end(i)
            }));
            prop_assert_eq!(model.is_proper(), !contains);
            let mut by_start: Vec<usize> = (0..n).collect();
            by_start.sort_by_key(|&i| model.start(i));
            let mut by_end: Vec<usize> = (0..n).collect();
            by_end.sort_by_key(|&i| model.end(i));
            prop_assert_eq!(model.is_proper(), by_start == by_end);
        }
    }
}

mod sequences {
    use super::*;
    use eternal_core::verify::{check_attack_distances, check_selection_rules};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn selection_rules_and_distances(model in canonical_model()) {
            let solution = solve(&model);
            prop_assert_eq!(check_selection_rules(&model, &solution.greedy), Ok(()));
            prop_assert_eq!(
                check_attack_distances(&model.intersection_graph(), &solution.greedy),
                Ok(())
            );
            let r = &solution.greedy;
            prop_assert!(r.anchors.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(r.anchors.first(), Some(&0));
            prop_assert_eq!(r.anchors.last(), Some(&(r.k() + 1)));
            for i in 0..r.k() {
                prop_assert!(r.d[i] == r.a[i] || Some(r.d[i]) == r.b[i]);
            }
        }
    }
}

mod partition {
    use super::*;
    use eternal_core::verify::check_blocks;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn blocks_partition_and_weights_sum_to_k(model in canonical_model()) {
            let graph = model.intersection_graph();
            let solution = solve(&model);
            let neo = &solution.neocolonization;
            prop_assert_eq!(check_blocks(&model, &graph, &solution.greedy, neo), Ok(()));
            prop_assert_eq!(neo.total_weight, solution.greedy.k());
            let mut all: Vec<usize> = neo.blocks.iter().flat_map(|b| b.members.clone()).collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..model.len()).collect::<Vec<_>>());
            for b in &neo.blocks {
                prop_assert!(graph.is_connected_subset(&b.members));
            }
        }
    }
}

mod strategy {
    use super::*;
    use eternal_core::game::{
        strategy_from_neocolonization, DefenderStrategy, GameParams, GameState,
    };
    use eternal_core::neocolonization::BlockKind;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn block_invariant_holds_after_every_attack(
            model in canonical_model(),
            attacks in prop::collection::vec(any::<prop::sample::Index>(), 1..40),
        ) {
            prop_assume!(!model.is_empty());
            let graph = model.intersection_graph();
            let neo = solve(&model).neocolonization;
            let (strategy, initial) = strategy_from_neocolonization(&neo, &graph);
            let mut state = strategy.start(&initial).unwrap();
            let mut game = GameState::new(&graph, GameParams::ALL_SIMPLE, initial).unwrap();
            for idx in attacks {
                let attack = idx.index(graph.n());
                let (moves, next) = strategy.respond(&state, attack).expect("strategy answers");
                game = game.apply_turn(attack, &moves).expect("legal and repelling");
                prop_assert_eq!(&game.config, &next.config);
                state = next;
                for (b, block) in neo.blocks.iter().enumerate() {
                    let held: usize = block.members.iter().map(|&v| game.config.count(v)).sum();
                    prop_assert_eq!(held, block.weight);
                    if block.kind == BlockKind::Cds {
                        for &c in &block.cds {
                            prop_assert_eq!(game.config.count(c), 1);
                        }
                    }
                    prop_assert!(block.members.contains(&state.rovers[b]));
                }
            }
        }
    }
}

mod certificates {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn json_round_trip(model in canonical_model()) {
            let cert = Certificate::new(&model, &solve(&model));
            prop_assert!(cert.is_consistent());
            let back = Certificate::from_json(&cert.to_json()).unwrap();
            prop_assert_eq!(back, cert);
        }

        #[test]
        fn model_text_round_trip(model in canonical_model()) {
            let parsed = IntervalModel::parse(&model.to_text()).unwrap();
            prop_assert_eq!(normalize(&parsed), model);
        }
    }
}
