//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use eternal_core::certificate::{solve, Certificate};
use eternal_core::game::{
    strategy_from_neocolonization, verify_eternal, DefenderStrategy, GameParams, GameState,
};
use eternal_core::greedy::compute_sequences;
use eternal_core::interval_model::{
    normalize, random_model, sample_model, IntervalModel, ModelKind,
};
use eternal_core::neocolonization::BlockKind;
use eternal_core::oracle::Oracle;
use eternal_core::scaling;
use eternal_core::verify::{check_attack_distances, check_blocks};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// 1. Golden values of the 15-interval sample model.
fn sample_golden() -> Outcome {
    let start = Instant::now();
    let raw = sample_model();
    let model = normalize(&raw);
    let solution = solve(&model);
    let cert = Certificate::new(&model, &solution);
    let elapsed = start.elapsed();

    let coords = |ids: &[String]| -> Vec<(f64, f64)> {
        ids.iter()
            .map(|id| {
                let iv = raw.intervals().iter().find(|iv| &iv.id == id).unwrap();
                (iv.start, iv.end)
            })
            .collect()
    };
    let a_expected = [
        (0., 3.),
        (6., 7.),
        (8., 9.),
        (12., 13.),
        (18., 19.),
        (22., 23.),
        (24., 25.),
        (28., 31.),
    ];
    let d_expected = [
        (0., 3.),
        (6., 7.),
        (4., 11.),
        (10., 15.),
        (18., 19.),
        (22., 23.),
        (20., 27.),
        (28., 31.),
    ];
    ensure(cert.k == 8, || format!("k = {}", cert.k))?;
    ensure(coords(&cert.a) == a_expected, || {
        format!("A = {:?}", coords(&cert.a))
    })?;
    ensure(coords(&cert.d) == d_expected, || {
        format!("D = {:?}", coords(&cert.d))
    })?;
    ensure(cert.anchors == [0, 1, 2, 5, 6, 8, 9], || {
        format!("anchors {:?}", cert.anchors)
    })?;
    let weights: Vec<usize> = cert.blocks.iter().map(|b| b.weight).collect();
    ensure(weights == [1, 3, 1, 2, 1], || {
        format!("weights {weights:?}")
    })?;
    let mut set = coords(&cert.eternal_set);
    set.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut expected_set = d_expected.to_vec();
    expected_set.sort_by(|a, b| a.0.total_cmp(&b.0));
    ensure(set == expected_set, || format!("eternal set {set:?}"))?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("k=8, 5 blocks, {elapsed:?}"))
}

/// 2. Greedy k equals both all-guards eternal numbers and θ_c on random models.
fn cover_equivalence() -> Outcome {
    let oracle = Oracle::default();
    let trials = 140;
    for t in 0..trials {
        let n = 1 + t % 7;
        let model = random_model(n, 1000 + t as u64, ModelKind::General);
        let g = model.intersection_graph();
        let k = compute_sequences(&model).k();
        let simple = oracle
            .eternal_domination_number(&g, GameParams::ALL_SIMPLE)
            .map_err(|e| e.to_string())?;
        let multi = oracle
            .eternal_domination_number(&g, GameParams::ALL_MULTI)
            .map_err(|e| e.to_string())?;
        let cover = oracle
            .clique_connected_cover_number(&g)
            .map_err(|e| e.to_string())?;
        ensure(k == simple && k == multi && k == cover, || {
            format!(
                "trial {t} (n={n}): k={k}, all-simple={simple}, all-multi={multi}, theta_c={cover}"
            )
        })?;
    }
    Ok(format!("{trials}/{trials} models agree"))
}

/// 3. Both bound chains on random graphs and all connected graphs on at most 5 vertices.
fn bound_chains() -> Outcome {
    let oracle = Oracle::default();
    let mut checked = 0;
    for seed in 0..60u64 {
        let n = 1 + (seed as usize) % 6;
        let g = common::random_graph(n, seed);
        let r = oracle.parameter_report(&g).map_err(|e| e.to_string())?;
        ensure(r.domination_chain_holds && r.cover_chain_holds, || {
            format!("random seed {seed}: {r:?}")
        })?;
        checked += 1;
    }
    for n in 1..=5 {
        for g in common::all_graphs(n).filter(|g| g.is_connected()) {
            let r = oracle.parameter_report(&g).map_err(|e| e.to_string())?;
            ensure(r.domination_chain_holds && r.cover_chain_holds, || {
                format!("{r:?}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} graphs, both chains hold"))
}

/// 4. Strategy verification, distance invariant and exhaustive lower bound.
fn strategy_verification() -> Outcome {
    let oracle = Oracle::default();
    let mut models = 0;
    for n in 1..=12 {
        for seed in 0..8u64 {
            let model = random_model(n, 77 * n as u64 + seed, ModelKind::General);
            let g = model.intersection_graph();
            let solution = solve(&model);
            let k = solution.greedy.k();
            let (strategy, initial) = strategy_from_neocolonization(&solution.neocolonization, &g);
            let verdict =
                verify_eternal(&g, &strategy, &initial, GameParams::ALL_SIMPLE, 1_000_000)
                    .map_err(|e| e.to_string())?;
            ensure(verdict.is_eternal(), || {
                format!("n={n} seed={seed}: {verdict:?}")
            })?;
            check_attack_distances(&g, &solution.greedy)
                .map_err(|e| format!("n={n} seed={seed}: {e}"))?;
            if n <= 7 && k > 0 {
                for params in [GameParams::ALL_SIMPLE, GameParams::ALL_MULTI] {
                    let fp = oracle
                        .safety_fixpoint(&g, params, k - 1)
                        .map_err(|e| e.to_string())?;
                    ensure(fp.survivors.is_empty(), || {
                        format!(
                            "n={n} seed={seed}: {} configs of {} guards survive",
                            fp.survivors.len(),
                            k - 1
                        )
                    })?;
                }
            }
            models += 1;
        }
    }
    Ok(format!("{models} models eternal within 1e6 states"))
}

/// 5. Linear scaling of sweep + blocks.
fn linear_time() -> Outcome {
    let sizes = [100_000, 200_000, 400_000, 800_000, 1_000_000];
    let timings = scaling::measure(&sizes, 42, 11);
    let ratios = scaling::successive_ratios(&timings);
    let largest = timings.last().unwrap().median_secs;
    let table: Vec<String> = timings
        .iter()
        .map(|t| format!("{}:{:.4}s", t.size, t.median_secs))
        .collect();
    ensure(ratios.iter().all(|&r| r <= 2.5), || {
        format!("ratios {ratios:.2?} ({})", table.join(" "))
    })?;
    ensure(largest <= 5.0, || format!("n=1e6 took {largest:.3}s"))?;
    Ok(format!("{} ratios {ratios:.2?}", table.join(" ")))
}

/// 6. Proper models: A = D, independent attacks, clique blocks, k = α = θ.
fn proper_models() -> Outcome {
    let oracle = Oracle::default();
    let trials = 70;
    for t in 0..trials {
        let n = 1 + t % 7;
        let model = random_model(n, 5000 + t as u64, ModelKind::Proper);
        let g = model.intersection_graph();
        let solution = solve(&model);
        let r = &solution.greedy;
        ensure(r.a == r.d, || format!("trial {t}: A != D"))?;
        ensure(
            r.a.iter()
                .enumerate()
                .all(|(i, &u)| r.a[i + 1..].iter().all(|&v| !g.has_edge(u, v))),
            || format!("trial {t}: A not independent"),
        )?;
        ensure(
            solution
                .neocolonization
                .blocks
                .iter()
                .all(|b| b.kind == BlockKind::Clique),
            || format!("trial {t}: non-clique block"),
        )?;
        let alpha = oracle.independence_number(&g).map_err(|e| e.to_string())?;
        let theta = oracle.clique_cover_number(&g).map_err(|e| e.to_string())?;
        ensure(r.k() == alpha && alpha == theta, || {
            format!("trial {t}: k={} alpha={alpha} theta={theta}", r.k())
        })?;
    }
    Ok(format!("{trials}/{trials} proper models"))
}

/// 7. Property groups with 240 randomized cases in total.
fn property_groups() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cases_per_group = 60;

    // Normalization preserves the graph.
    for case in 0..cases_per_group {
        let n = rng.gen_range(0..14);
        let model = IntervalModel::from_triples((0..n).map(|i| {
            let s = rng.gen_range(0..24) as f64 / 2.0;
            let len = rng.gen_range(1..8) as f64 / 2.0;
            (format!("x{i}"), s, s + len)
        }))
        .unwrap();
        let canonical = normalize(&model);
        ensure(
            common::graph_edges(&canonical.intersection_graph()) == common::overlap_edges(&model),
            || format!("normalization case {case} changed the graph"),
        )?;
        ensure(normalize(&canonical.to_model()) == canonical, || {
            format!("normalization case {case} not idempotent")
        })?;
    }

    let random = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(0..40);
        let kind = if rng.gen_bool(0.5) {
            ModelKind::Proper
        } else {
            ModelKind::General
        };
        random_model(n, rng.gen(), kind)
    };

    // Partition and weight sum.
    for case in 0..cases_per_group {
        let model = random(&mut rng);
        let g = model.intersection_graph();
        let s = solve(&model);
        check_blocks(&model, &g, &s.greedy, &s.neocolonization)
            .map_err(|e| format!("partition case {case}: {e}"))?;
    }

    // Strategy block invariant under random attacks.
    for case in 0..cases_per_group {
        let model = random(&mut rng);
        if model.is_empty() {
            continue;
        }
        let g = model.intersection_graph();
        let neo = solve(&model).neocolonization;
        let (strategy, initial) = strategy_from_neocolonization(&neo, &g);
        let mut state = strategy.start(&initial).map_err(|e| e.to_string())?;
        let mut game =
            GameState::new(&g, GameParams::ALL_SIMPLE, initial).map_err(|e| e.to_string())?;
        for _ in 0..30 {
            let attack = rng.gen_range(0..g.n());
            let (moves, next) = strategy
                .respond(&state, attack)
                .ok_or_else(|| format!("strategy case {case}: no answer"))?;
            game = game
                .apply_turn(attack, &moves)
                .map_err(|e| format!("strategy case {case}: {e}"))?;
            state = next;
            for block in &neo.blocks {
                let held: usize = block.members.iter().map(|&v| game.config.count(v)).sum();
                ensure(held == block.weight, || {
                    format!("strategy case {case}: block holds {held} guards")
                })?;
                ensure(block.cds.iter().all(|&c| game.config.count(c) == 1), || {
                    format!("strategy case {case}: dominating vertex left empty")
                })?;
            }
        }
    }

    // Certificate round trip.
    for case in 0..cases_per_group {
        let model = random(&mut rng);
        let cert = Certificate::new(&model, &solve(&model));
        let back = Certificate::from_json(&cert.to_json()).map_err(|e| e.to_string())?;
        ensure(back == cert && cert.is_consistent(), || {
            format!("certificate case {case}")
        })?;
    }
    Ok(format!("4 groups x {cases_per_group} cases"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 sample-model golden", sample_golden),
        ("2 cover equivalence (n<=7)", cover_equivalence),
        ("3 bound chains", bound_chains),
        ("4 strategy verification", strategy_verification),
        ("5 linear time", linear_time),
        ("6 proper models", proper_models),
        ("7 property groups", property_groups),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(why) => {
                failures += 1;
                println!("FAIL  {name}: {why} [{:.2?}]", start.elapsed());
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
