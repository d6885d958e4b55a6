//! Exhaustive ground truth on small graphs.
//!
//! Graph parameters are computed by subset enumeration or subset dynamic
//! programming over bitmasks. Eternal domination numbers come from the
//! greatest fixpoint of a safety game on guard configurations: a
//! configuration survives a round when every attack can be answered by one
//! legal move into a surviving configuration that occupies the attacked vertex.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::game::{GameParams, GuardConfig, MoveMode, Occupancy};
use crate::graph::Graph;

/// Hard ceiling imposed by the bitmask representation.
pub const MAX_VERTICES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Vertex limit for γ, γ_c, α and θ.
    pub exhaustive: usize,
    /// Vertex limit for the clique-connected cover number.
    pub cover: usize,
    /// Vertex limit for the safety-game computations.
    pub game: usize,
    /// Largest configuration space a single fixpoint may build.
    pub max_configs: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            exhaustive: 16,
            cover: 10,
            game: 8,
            max_configs: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{what}: graph has {n} vertices, limit is {limit}")]
    LimitExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("{count} guard configurations exceed the limit of {limit}")]
    TooManyConfigs { count: usize, limit: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex set does not induce a connected subgraph")]
    DisconnectedSet,
}

/// Bitmask view of a graph with at most [`MAX_VERTICES`] vertices.
#[derive(Clone, Debug)]
struct Masks {
    n: usize,
    /// Closed neighborhoods.
    closed: Vec<u32>,
}

impl Masks {
    fn new(g: &Graph) -> Self {
        assert!(g.n() <= MAX_VERTICES);
        let closed = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(1u32 << v, |m, &w| m | (1 << w)))
            .collect();
        Masks { n: g.n(), closed }
    }

    fn full(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    fn closed_union(&self, set: u32) -> u32 {
        bits(set).fold(0, |acc, v| acc | self.closed[v])
    }

    fn is_connected(&self, set: u32) -> bool {
        if set == 0 {
            return false;
        }
        let mut reach = set & set.wrapping_neg();
        loop {
            let next = self.closed_union(reach) & set;
            if next == reach {
                return reach == set;
            }
            reach = next;
        }
    }

    fn is_clique(&self, set: u32) -> bool {
        bits(set).all(|v| self.closed[v] & set == set)
    }

    fn is_independent(&self, set: u32) -> bool {
        bits(set).all(|v| self.closed[v] & set == 1 << v)
    }
}

fn bits(mut set: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

/// Subsets of `{0..n}` with exactly `size` elements, in increasing numeric order.
fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = u32> {
    let limit: u64 = 1 << n;
    let mut cur: u64 = if size == 0 { 0 } else { (1u64 << size) - 1 };
    let mut done = size > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur as u32;
        if cur == 0 {
            done = true;
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            cur = (((r ^ cur) >> 2) / c) | r;
            if cur >= limit {
                done = true;
            }
        }
        Some(out)
    })
}

/// Guard configurations packed as per-vertex counts, four bits per vertex.
type Packed = u64;

fn count_at(cfg: Packed, v: usize) -> u64 {
    (cfg >> (4 * v)) & 0xF
}

fn occupied(cfg: Packed, n: usize) -> u32 {
    (0..n)
        .filter(|&v| count_at(cfg, v) > 0)
        .fold(0, |m, v| m | 1 << v)
}

fn unpack(cfg: Packed, n: usize) -> GuardConfig {
    let mut positions = Vec::new();
    for v in 0..n {
        for _ in 0..count_at(cfg, v) {
            positions.push(v);
        }
    }
    GuardConfig::new(positions)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Result of a safety fixpoint run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixpoint {
    /// Winning configurations for the defender.
    pub survivors: Vec<GuardConfig>,
    /// Number of live configurations before each round, then the final count.
    pub live_per_round: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterReport {
    pub n: usize,
    pub gamma: usize,
    /// `None` when the graph is disconnected.
    pub gamma_c: Option<usize>,
    pub alpha: usize,
    pub theta: usize,
    pub theta_c: usize,
    pub eternal: BTreeMap<GameParams, usize>,
    /// γ ≤ Γ∞(all,multi) ≤ Γ∞(all,simple) ≤ α ≤ Γ∞(single,simple) ≤ θ.
    pub domination_chain_holds: bool,
    /// Γ∞(all,simple) ≤ θ_c ≤ min{θ, γ_c + 1}, the last term only when γ_c is defined.
    pub cover_chain_holds: bool,
}

impl ParameterReport {
    pub fn eternal_for(&self, params: GameParams) -> usize {
        self.eternal[&params]
    }
}

/// Exhaustive solver with configurable limits and execution mode.
#[derive(Clone, Copy, Debug, Default)]
pub struct Oracle {
    pub limits: OracleLimits,
    pub execution: Execution,
}

impl Oracle {
    pub fn new(limits: OracleLimits) -> Self {
        Oracle {
            limits,
            execution: Execution::default(),
        }
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    fn masks(&self, g: &Graph, what: &'static str, limit: usize) -> Result<Masks, OracleError> {
        let limit = limit.min(MAX_VERTICES);
        if g.n() > limit {
            return Err(OracleError::LimitExceeded {
                what,
                n: g.n(),
                limit,
            });
        }
        Ok(Masks::new(g))
    }

    /// γ: minimum size of a dominating set.
    pub fn domination_number(&self, g: &Graph) -> Result<usize, OracleError> {
        let m = self.masks(g, "domination number", self.limits.exhaustive)?;
        Ok(min_size(m.n, |s| m.closed_union(s) == m.full()))
    }

    /// γ_c: minimum size of a connected dominating set. Defined for connected graphs only;
    /// the empty graph gets 0.
    pub fn connected_domination_number(&self, g: &Graph) -> Result<usize, OracleError> {
        let m = self.masks(g, "connected domination number", self.limits.exhaustive)?;
        if !g.is_connected() {
            return Err(OracleError::Disconnected);
        }
        Ok(min_size(m.n, |s| {
            (s == 0 && m.n == 0) || (m.closed_union(s) == m.full() && m.is_connected(s))
        }))
    }

    /// α: maximum size of an independent set.
    pub fn independence_number(&self, g: &Graph) -> Result<usize, OracleError> {
        let m = self.masks(g, "independence number", self.limits.exhaustive)?;
        Ok((0..=m.full())
            .filter(|&s| m.is_independent(s))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0))
    }

    /// θ: minimum number of cliques partitioning the vertex set.
    pub fn clique_cover_number(&self, g: &Graph) -> Result<usize, OracleError> {
        let m = self.masks(g, "clique cover number", self.limits.exhaustive)?;
        let cost: Vec<Option<usize>> = (0..=m.full())
            .map(|s| m.is_clique(s).then_some(1))
            .collect();
        Ok(min_partition(&m, &cost))
    }

    /// θ_c: minimum weight of a partition into connected sets, where a part weighs 1 if it is
    /// a clique and 1 + γ_c of its induced subgraph otherwise.
    pub fn clique_connected_cover_number(&self, g: &Graph) -> Result<usize, OracleError> {
        let m = self.masks(g, "clique-connected cover number", self.limits.cover)?;
        let cost: Vec<Option<usize>> = (0..=m.full()).map(|s| part_weight(&m, s)).collect();
        Ok(min_partition(&m, &cost))
    }

    /// ω of a connected vertex set: 1 for a clique, else 1 + γ_c of the induced subgraph.
    pub fn set_weight(&self, g: &Graph, set: &[usize]) -> Result<usize, OracleError> {
        if !g.is_connected_subset(set) {
            return Err(OracleError::DisconnectedSet);
        }
        if g.is_clique(set) {
            return Ok(1);
        }
        Ok(1 + self.connected_domination_number(&g.induced(set))?)
    }

    fn game_masks(&self, g: &Graph) -> Result<Masks, OracleError> {
        self.masks(g, "eternal domination game", self.limits.game)
    }

    fn configs(
        &self,
        n: usize,
        guards: usize,
        occupancy: Occupancy,
    ) -> Result<Vec<Packed>, OracleError> {
        let count = match occupancy {
            Occupancy::Simple => binomial(n, guards),
            Occupancy::Multi => binomial(n + guards - 1, guards),
        };
        if count > self.limits.max_configs as u128 || guards > 15 {
            return Err(OracleError::TooManyConfigs {
                count: count.min(usize::MAX as u128) as usize,
                limit: self.limits.max_configs,
            });
        }
        let mut out = Vec::with_capacity(count as usize);
        match occupancy {
            Occupancy::Simple => {
                out.extend(
                    subsets_of_size(n, guards)
                        .map(|s| bits(s).map(|v| 1u64 << (4 * v)).sum::<u64>()),
                );
            }
            Occupancy::Multi => {
                // Nondecreasing sequences of length `guards` over 0..n.
                fn rec(n: usize, from: usize, left: usize, acc: Packed, out: &mut Vec<Packed>) {
                    if left == 0 {
                        out.push(acc);
                        return;
                    }
                    for v in from..n {
                        rec(n, v, left - 1, acc + (1 << (4 * v)), out);
                    }
                }
                if n > 0 || guards == 0 {
                    rec(n, 0, guards, 0, &mut out);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Configurations reachable from `cfg` in one defender move.
    fn successors(&self, m: &Masks, cfg: Packed, params: GameParams) -> Vec<Packed> {
        let simple = params.occupancy == Occupancy::Simple;
        let mut out = match params.move_mode {
            MoveMode::AllGuards => {
                let mut partial: Vec<Packed> = vec![0];
                for u in 0..m.n {
                    for _ in 0..count_at(cfg, u) {
                        let mut next = Vec::with_capacity(partial.len() * 4);
                        for &p in &partial {
                            for w in bits(m.closed[u]) {
                                if simple && count_at(p, w) > 0 {
                                    continue;
                                }
                                next.push(p + (1 << (4 * w)));
                            }
                        }
                        next.sort_unstable();
                        next.dedup();
                        partial = next;
                    }
                }
                partial
            }
            MoveMode::SingleGuard => {
                let mut out = vec![cfg];
                for u in bits(occupied(cfg, m.n)) {
                    for w in bits(m.closed[u] & !(1 << u)) {
                        if simple && count_at(cfg, w) > 0 {
                            continue;
                        }
                        out.push(cfg - (1 << (4 * u)) + (1 << (4 * w)));
                    }
                }
                out
            }
        };
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Greatest fixpoint of the safety game with `guards` guards.
    pub fn safety_fixpoint(
        &self,
        g: &Graph,
        params: GameParams,
        guards: usize,
    ) -> Result<Fixpoint, OracleError> {
        let m = self.game_masks(g)?;
        let configs = self.configs(m.n, guards, params.occupancy)?;
        let index: HashMap<Packed, u32> = configs
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as u32))
            .collect();
        let succ: Vec<Vec<u32>> = self.execution.map(&configs, |&c| {
            self.successors(&m, c, params)
                .into_iter()
                .map(|s| index[&s])
                .collect()
        });
        let occ: Vec<u32> = configs.iter().map(|&c| occupied(c, m.n)).collect();
        let full = m.full();

        let mut alive = vec![true; configs.len()];
        let mut live_per_round = vec![configs.len()];
        loop {
            let next = self.execution.map_range(configs.len(), |i| {
                alive[i]
                    && succ[i]
                        .iter()
                        .filter(|&&s| alive[s as usize])
                        .fold(0u32, |acc, &s| acc | occ[s as usize])
                        == full
            });
            let live = next.iter().filter(|&&a| a).count();
            let changed = live != *live_per_round.last().unwrap();
            alive = next;
            live_per_round.push(live);
            if !changed {
                break;
            }
        }
        let survivors = configs
            .iter()
            .zip(&alive)
            .filter(|(_, &a)| a)
            .map(|(&c, _)| unpack(c, m.n))
            .collect();
        Ok(Fixpoint {
            survivors,
            live_per_round,
        })
    }

    /// Exact Γ∞ for the given game, ascending from a cheap lower bound.
    pub fn eternal_domination_number(
        &self,
        g: &Graph,
        params: GameParams,
    ) -> Result<usize, OracleError> {
        self.game_masks(g)?;
        if g.n() == 0 {
            return Ok(0);
        }
        let lower = match params {
            GameParams {
                move_mode: MoveMode::SingleGuard,
                occupancy: Occupancy::Simple,
            } => self.independence_number(g)?,
            _ => self.domination_number(g)?,
        };
        for guards in lower.max(1)..=g.n() {
            if !self
                .safety_fixpoint(g, params, guards)?
                .survivors
                .is_empty()
            {
                return Ok(guards);
            }
        }
        // A guard on every vertex always wins.
        unreachable!("n guards defend any graph")
    }

    /// Whether `config` is a winning start for the defender.
    pub fn is_eternal_config(
        &self,
        g: &Graph,
        params: GameParams,
        config: &GuardConfig,
    ) -> Result<bool, OracleError> {
        let fp = self.safety_fixpoint(g, params, config.len())?;
        Ok(fp.survivors.contains(config))
    }

    /// Plays `attacks` against every defender holding `guards` guards from every legal
    /// start. Returns the first turn (1-based) after which no defender survives, or
    /// `None` if some defender repels the whole sequence.
    pub fn attack_sequence_defeats_all(
        &self,
        g: &Graph,
        params: GameParams,
        guards: usize,
        attacks: &[usize],
    ) -> Result<Option<usize>, OracleError> {
        let m = self.game_masks(g)?;
        let mut current: Vec<Packed> = self.configs(m.n, guards, params.occupancy)?;
        for (turn, &attack) in attacks.iter().enumerate() {
            let expanded = self.execution.map(&current, |&c| {
                self.successors(&m, c, params)
                    .into_iter()
                    .filter(|&s| count_at(s, attack) > 0)
                    .collect::<Vec<_>>()
            });
            let next: HashSet<Packed> = expanded.into_iter().flatten().collect();
            if next.is_empty() {
                return Ok(Some(turn + 1));
            }
            current = next.into_iter().collect();
            current.sort_unstable();
        }
        Ok(None)
    }

    /// Every parameter together with the two bound chains.
    pub fn parameter_report(&self, g: &Graph) -> Result<ParameterReport, OracleError> {
        let gamma = self.domination_number(g)?;
        let gamma_c = match self.connected_domination_number(g) {
            Ok(v) => Some(v),
            Err(OracleError::Disconnected) => None,
            Err(e) => return Err(e),
        };
        let alpha = self.independence_number(g)?;
        let theta = self.clique_cover_number(g)?;
        let theta_c = self.clique_connected_cover_number(g)?;
        let mut eternal = BTreeMap::new();
        for params in [
            GameParams::ALL_MULTI,
            GameParams::ALL_SIMPLE,
            GameParams::SINGLE_SIMPLE,
        ] {
            eternal.insert(params, self.eternal_domination_number(g, params)?);
        }
        let all_multi = eternal[&GameParams::ALL_MULTI];
        let all_simple = eternal[&GameParams::ALL_SIMPLE];
        let single = eternal[&GameParams::SINGLE_SIMPLE];
        let domination_chain_holds = gamma <= all_multi
            && all_multi <= all_simple
            && all_simple <= alpha
            && alpha <= single
            && single <= theta;
        let cover_cap = gamma_c.map_or(theta, |gc| theta.min(gc + 1));
        let cover_chain_holds = all_simple <= theta_c && theta_c <= cover_cap;
        Ok(ParameterReport {
            n: g.n(),
            gamma,
            gamma_c,
            alpha,
            theta,
            theta_c,
            eternal,
            domination_chain_holds,
            cover_chain_holds,
        })
    }
}

/// Smallest subset size satisfying `pred`, scanning sizes upward.
fn min_size(n: usize, pred: impl Fn(u32) -> bool) -> usize {
    (0..=n)
        .find(|&size| subsets_of_size(n, size).any(&pred))
        .unwrap_or(n)
}

/// ω of a vertex set as a bitmask; `None` for sets that cannot be a part.
fn part_weight(m: &Masks, set: u32) -> Option<usize> {
    if !m.is_connected(set) {
        return None;
    }
    if m.is_clique(set) {
        return Some(1);
    }
    // γ_c of the induced subgraph: smallest connected submask dominating `set`.
    let dominated = |d: u32| bits(d).fold(0, |acc, v| acc | m.closed[v]) & set == set;
    let mut best = usize::MAX;
    let mut d = set;
    while d != 0 {
        let size = d.count_ones() as usize;
        if size < best && dominated(d) && m.is_connected(d) {
            best = size;
        }
        d = (d - 1) & set;
    }
    Some(1 + best)
}

/// Minimum total cost of a partition of all vertices into parts with defined cost.
fn min_partition(m: &Masks, cost: &[Option<usize>]) -> usize {
    let full = m.full() as usize;
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        // Parts containing the lowest vertex of `s`.
        let mut sub = rest;
        loop {
            let part = sub | low;
            if let Some(c) = cost[part] {
                let tail = best[s ^ part];
                if tail != usize::MAX {
                    best[s] = best[s].min(c + tail);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full]
}
