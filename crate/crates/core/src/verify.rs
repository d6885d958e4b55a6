//! Cross-checks of a solved instance against brute force and the game oracle.
//!
//! Each check is reported separately. Oracle-backed checks are skipped when
//! the instance is beyond the oracle's limits; a strategy exploration that
//! runs out of budget is reported as such rather than as a failure.

use std::fmt;

use crate::certificate::{solve, Solution};
use crate::exec::Execution;
use crate::game::{strategy_from_neocolonization, verify_eternal_with, GameParams, Verdict};
use crate::graph::Graph;
use crate::greedy::{attacker_sequence, GreedyResult};
use crate::interval_model::{random_model, CanonicalModel, ModelKind};
use crate::neocolonization::{BlockKind, Neocolonization};
use crate::oracle::{Oracle, OracleError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail(String),
    Skipped(String),
    BudgetExceeded(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceReport {
    pub label: String,
    pub n: usize,
    pub k: usize,
    pub checks: Vec<Check>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| matches!(c.status, CheckStatus::Pass | CheckStatus::Skipped(_)))
    }

    pub fn failed(&self) -> bool {
        self.checks
            .iter()
            .any(|c| matches!(c.status, CheckStatus::Fail(_)))
    }

    pub fn budget_exceeded(&self) -> bool {
        self.checks
            .iter()
            .any(|c| matches!(c.status, CheckStatus::BudgetExceeded(_)))
    }
}

impl fmt::Display for InstanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.failed() {
            "FAIL"
        } else if self.budget_exceeded() {
            "BUDGET"
        } else {
            "pass"
        };
        write!(f, "{} n={} k={} {}", self.label, self.n, self.k, verdict)?;
        for c in &self.checks {
            match &c.status {
                CheckStatus::Pass => {}
                CheckStatus::Fail(why) => write!(f, "\n  {}: FAIL {}", c.name, why)?,
                CheckStatus::Skipped(why) => write!(f, "\n  {}: skipped ({})", c.name, why)?,
                CheckStatus::BudgetExceeded(why) => {
                    write!(f, "\n  {}: budget exceeded ({})", c.name, why)?
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// State budget for strategy exploration.
    pub budget: usize,
    pub oracle: Oracle,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: 1_000_000,
            oracle: Oracle::default(),
        }
    }
}

fn status(ok: bool, why: impl FnOnce() -> String) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail(why())
    }
}

fn oracle_status<T>(
    r: Result<T, OracleError>,
    judge: impl FnOnce(T) -> CheckStatus,
) -> CheckStatus {
    match r {
        Ok(v) => judge(v),
        Err(e @ (OracleError::LimitExceeded { .. } | OracleError::TooManyConfigs { .. })) => {
            CheckStatus::Skipped(e.to_string())
        }
        Err(e) => CheckStatus::Fail(e.to_string()),
    }
}

/// Brute-force check of the greedy selection rules: optimal choices of `A`
/// and `B`, increasing `t(D_i)`, and no interval beginning after `t(D_k)`.
pub fn check_selection_rules(model: &CanonicalModel, r: &GreedyResult) -> Result<(), String> {
    let n = model.len();
    let k = r.k();
    if n == 0 {
        return if k == 0 {
            Ok(())
        } else {
            Err("k > 0 on empty model".into())
        };
    }
    if r.d.len() != k || r.b.len() != k {
        return Err("sequence lengths differ".into());
    }
    let first = (0..n).min_by_key(|&i| model.end(i)).unwrap();
    if r.a[0] != first || r.d[0] != first {
        return Err("A_1 = D_1 is not the interval with the smallest end".into());
    }
    for i in 1..=k {
        let t_d = model.end(r.d[i - 1]);
        if i < k {
            let a_best = (0..n)
                .filter(|&j| model.start(j) > t_d)
                .min_by_key(|&j| model.end(j));
            if a_best != Some(r.a[i]) {
                return Err(format!(
                    "A_{} is not the earliest-ending interval after t(D_{i})",
                    i + 1
                ));
            }
            let b_best = (0..n)
                .filter(|&j| model.start(j) < t_d)
                .max_by_key(|&j| model.end(j));
            if b_best != r.b[i] {
                return Err(format!(
                    "B_{} is not the latest-ending interval before t(D_{i})",
                    i + 1
                ));
            }
            let b = r.b[i].unwrap();
            let expected_d = if model.end(r.a[i]) > model.end(b) {
                r.a[i]
            } else {
                b
            };
            if r.d[i] != expected_d {
                return Err(format!("D_{} violates the choice rule", i + 1));
            }
            if model.end(r.d[i]) <= t_d || model.start(r.a[i]) <= t_d {
                return Err(format!("monotonicity broken at step {}", i + 1));
            }
        } else if (0..n).any(|j| model.start(j) > t_d) {
            return Err("sequence is not maximal".into());
        }
    }
    Ok(())
}

/// `dist(v(A_i), v(A_{i+j})) >= j + 1` for all pairs, by breadth-first search.
pub fn check_attack_distances(graph: &Graph, r: &GreedyResult) -> Result<(), String> {
    let attacks = attacker_sequence(r);
    for (i, &from) in attacks.iter().enumerate() {
        let dist = graph.distances_from(from);
        for (j, &to) in attacks.iter().enumerate().skip(i + 1) {
            let gap = j - i;
            if let Some(d) = dist[to] {
                if d < gap + 1 {
                    return Err(format!(
                        "dist(A_{}, A_{}) = {d} < {}",
                        i + 1,
                        j + 1,
                        gap + 1
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Partition, weight sum, clique and connected-domination properties of the blocks.
pub fn check_blocks(
    model: &CanonicalModel,
    graph: &Graph,
    r: &GreedyResult,
    neo: &Neocolonization,
) -> Result<(), String> {
    let n = model.len();
    let mut seen = vec![false; n];
    for (b, block) in neo.blocks.iter().enumerate() {
        if block.members.is_empty() {
            return Err(format!("block {} is empty", b + 1));
        }
        for &v in &block.members {
            if std::mem::replace(&mut seen[v], true) {
                return Err(format!("{} is in two blocks", model.id(v)));
            }
        }
        let (p, q) = block.anchors;
        if block.weight != q - p {
            return Err(format!("block {} weight differs from anchor gap", b + 1));
        }
        match block.kind {
            BlockKind::Clique => {
                if !graph.is_clique(&block.members) {
                    return Err(format!("clique block {} is not a clique", b + 1));
                }
            }
            BlockKind::Cds => {
                if block.weight != 1 + block.cds.len() {
                    return Err(format!("cds block {} weight is not 1 + |cds|", b + 1));
                }
                if !graph.is_connected_subset(&block.cds) {
                    return Err(format!("cds of block {} is not connected", b + 1));
                }
                if !graph.dominates(&block.cds, &block.members) {
                    return Err(format!("cds of block {} does not dominate it", b + 1));
                }
                let lo = block.cds.iter().map(|&c| model.start(c)).min().unwrap();
                let hi = block.cds.iter().map(|&c| model.end(c)).max().unwrap();
                if lo != model.start(block.cds[0]) || hi != model.end(*block.cds.last().unwrap()) {
                    return Err(format!(
                        "cds union of block {} is not (s(D_p+1), t(D_q-1))",
                        b + 1
                    ));
                }
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err("blocks do not cover every interval".into());
    }
    if neo.total_weight != r.k() {
        return Err(format!(
            "total weight {} != k = {}",
            neo.total_weight,
            r.k()
        ));
    }
    Ok(())
}

fn as_status(r: Result<(), String>) -> CheckStatus {
    match r {
        Ok(()) => CheckStatus::Pass,
        Err(e) => CheckStatus::Fail(e),
    }
}

/// Runs every check on one model.
pub fn verify_instance(
    label: impl Into<String>,
    model: &CanonicalModel,
    opts: &VerifyOptions,
) -> InstanceReport {
    let graph = model.intersection_graph();
    let Solution {
        greedy,
        neocolonization: neo,
    } = solve(model);
    let k = greedy.k();
    let oracle = opts.oracle.with_execution(Execution::Sequential);
    let mut checks = vec![
        Check {
            name: "selection-rules",
            status: as_status(check_selection_rules(model, &greedy)),
        },
        Check {
            name: "attack-distances",
            status: as_status(check_attack_distances(&graph, &greedy)),
        },
        Check {
            name: "blocks",
            status: as_status(check_blocks(model, &graph, &greedy, &neo)),
        },
    ];

    for params in [GameParams::ALL_SIMPLE, GameParams::ALL_MULTI] {
        let name = if params == GameParams::ALL_SIMPLE {
            "oracle-eternal-all-simple"
        } else {
            "oracle-eternal-all-multi"
        };
        checks.push(Check {
            name,
            status: oracle_status(oracle.eternal_domination_number(&graph, params), |g| {
                status(g == k, || format!("oracle gives {g}, greedy gives {k}"))
            }),
        });
    }
    checks.push(Check {
        name: "oracle-theta-c",
        status: oracle_status(oracle.clique_connected_cover_number(&graph), |t| {
            status(t == k, || format!("oracle gives {t}, greedy gives {k}"))
        }),
    });

    let (strategy, initial) = strategy_from_neocolonization(&neo, &graph);
    let strategy_status = match verify_eternal_with(
        Execution::Sequential,
        &graph,
        &strategy,
        &initial,
        GameParams::ALL_SIMPLE,
        opts.budget,
    ) {
        Ok(Verdict::Eternal { .. }) => CheckStatus::Pass,
        Ok(Verdict::Defeated { witness, .. }) => {
            let ids: Vec<&str> = witness.iter().map(|&v| graph.id(v)).collect();
            CheckStatus::Fail(format!("defeated by attacks {}", ids.join(",")))
        }
        Ok(Verdict::BudgetExceeded { explored, frontier }) => {
            CheckStatus::BudgetExceeded(format!("{explored} states explored, frontier {frontier}"))
        }
        Err(e) => CheckStatus::Fail(e.to_string()),
    };
    checks.push(Check {
        name: "strategy-eternal",
        status: strategy_status,
    });

    let lower = if k == 0 {
        CheckStatus::Pass
    } else {
        let attacks = attacker_sequence(&greedy);
        oracle_status(
            (|| -> Result<CheckStatus, OracleError> {
                for params in [GameParams::ALL_SIMPLE, GameParams::ALL_MULTI] {
                    let fp = oracle.safety_fixpoint(&graph, params, k - 1)?;
                    if !fp.survivors.is_empty() {
                        return Ok(CheckStatus::Fail(format!(
                            "{} guards survive in {params}",
                            k - 1
                        )));
                    }
                }
                // The multi-occupancy defender is the strongest one.
                match oracle.attack_sequence_defeats_all(
                    &graph,
                    GameParams::ALL_MULTI,
                    k - 1,
                    &attacks,
                )? {
                    Some(_) => Ok(CheckStatus::Pass),
                    None => Ok(CheckStatus::Fail(format!(
                        "attack sequence does not defeat {} guards",
                        k - 1
                    ))),
                }
            })(),
            |s| s,
        )
    };
    checks.push(Check {
        name: "lower-bound",
        status: lower,
    });

    InstanceReport {
        label: label.into(),
        n: model.len(),
        k,
        checks,
    }
}

/// Seed of trial `t` in a batch started from `seed`.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(trial as u64)
}

/// Verifies `trials` random general models with `n` intervals each.
pub fn verify_random(
    n: usize,
    seed: u64,
    trials: usize,
    opts: &VerifyOptions,
    exec: Execution,
) -> Vec<InstanceReport> {
    exec.map_range(trials, |t| {
        let model = random_model(n, trial_seed(seed, t), ModelKind::General);
        verify_instance(format!("trial {}", t + 1), &model, opts)
    })
}
