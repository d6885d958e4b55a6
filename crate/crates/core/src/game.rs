//! The eternal domination game: legality of defender moves, defender
//! strategies, exhaustive strategy verification and attack replay.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::graph::Graph;
use crate::neocolonization::{BlockKind, Neocolonization};

/// How many guards may move per turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveMode {
    /// At most one guard (x = 1).
    SingleGuard,
    /// Any number of guards (x = n).
    AllGuards,
}

/// How many guards may share a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Occupancy {
    /// At most one (y = 1).
    Simple,
    /// Unbounded (y = n).
    Multi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct GameParams {
    pub move_mode: MoveMode,
    pub occupancy: Occupancy,
}

impl GameParams {
    pub const ALL_MULTI: GameParams = GameParams {
        move_mode: MoveMode::AllGuards,
        occupancy: Occupancy::Multi,
    };
    pub const ALL_SIMPLE: GameParams = GameParams {
        move_mode: MoveMode::AllGuards,
        occupancy: Occupancy::Simple,
    };
    pub const SINGLE_SIMPLE: GameParams = GameParams {
        move_mode: MoveMode::SingleGuard,
        occupancy: Occupancy::Simple,
    };
    pub const SINGLE_MULTI: GameParams = GameParams {
        move_mode: MoveMode::SingleGuard,
        occupancy: Occupancy::Multi,
    };
    pub const ALL: [GameParams; 4] = [
        Self::ALL_MULTI,
        Self::ALL_SIMPLE,
        Self::SINGLE_SIMPLE,
        Self::SINGLE_MULTI,
    ];
}

impl fmt::Display for GameParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let moves = match self.move_mode {
            MoveMode::SingleGuard => "single",
            MoveMode::AllGuards => "all",
        };
        let occ = match self.occupancy {
            Occupancy::Simple => "simple",
            Occupancy::Multi => "multi",
        };
        write!(f, "{moves}-{occ}")
    }
}

impl FromStr for GameParams {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GameParams::ALL
            .into_iter()
            .find(|p| p.to_string() == s)
            .ok_or_else(|| format!("unknown game `{s}`"))
    }
}

impl From<GameParams> for String {
    fn from(p: GameParams) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for GameParams {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Multiset of guard positions, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GuardConfig {
    positions: Vec<usize>,
}

impl GuardConfig {
    pub fn new(mut positions: Vec<usize>) -> Self {
        positions.sort_unstable();
        GuardConfig { positions }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.positions.binary_search(&v).is_ok()
    }

    pub fn count(&self, v: usize) -> usize {
        let lo = self.positions.partition_point(|&p| p < v);
        let hi = self.positions.partition_point(|&p| p <= v);
        hi - lo
    }

    pub fn has_stacked_guards(&self) -> bool {
        self.positions.windows(2).any(|w| w[0] == w[1])
    }

    fn is_legal_for(&self, params: GameParams, n: usize) -> bool {
        self.positions.iter().all(|&v| v < n)
            && (params.occupancy == Occupancy::Multi || !self.has_stacked_guards())
    }
}

/// One guard moving from `from` to `to`. `from == to` means the guard stays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Relocation {
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IllegalMove {
    #[error("no guard left at vertex {0}")]
    NoGuard(usize),
    #[error("{from} and {to} are not adjacent")]
    NotAdjacent { from: usize, to: usize },
    #[error("{moved} guards moved, at most {allowed} allowed")]
    TooManyMoves { moved: usize, allowed: usize },
    #[error("vertex {0} would hold more than one guard")]
    Stacked(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TurnRejection {
    #[error("illegal move: {0}")]
    IllegalMove(IllegalMove),
    #[error("attack on {0} not repelled")]
    NotRepelled(usize),
    #[error("attacked vertex {0} is not in the graph")]
    UnknownVertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("initial configuration is not legal: {0}")]
    InvalidInitial(String),
    #[error("attack sequence is empty")]
    EmptyAttackSequence,
    #[error("attacked vertex {0} is not in the graph")]
    UnknownVertex(usize),
}

#[derive(Clone, Debug)]
pub struct GameState<'g> {
    pub graph: &'g Graph,
    pub params: GameParams,
    pub config: GuardConfig,
    pub turn: usize,
}

impl<'g> GameState<'g> {
    pub fn new(
        graph: &'g Graph,
        params: GameParams,
        config: GuardConfig,
    ) -> Result<Self, GameError> {
        if !config.is_legal_for(params, graph.n()) {
            return Err(GameError::InvalidInitial(format!(
                "{:?} for {params}",
                config.positions()
            )));
        }
        Ok(GameState {
            graph,
            params,
            config,
            turn: 0,
        })
    }

    /// Plays one turn: `attack`, then the defender's `moves`.
    pub fn apply_turn(
        &self,
        attack: usize,
        moves: &[Relocation],
    ) -> Result<GameState<'g>, TurnRejection> {
        let n = self.graph.n();
        if attack >= n {
            return Err(TurnRejection::UnknownVertex(attack));
        }
        let illegal = TurnRejection::IllegalMove;
        let moved = moves.iter().filter(|r| r.from != r.to).count();
        if self.params.move_mode == MoveMode::SingleGuard && moved > 1 {
            return Err(illegal(IllegalMove::TooManyMoves { moved, allowed: 1 }));
        }
        for r in moves {
            if r.to >= n || r.from >= n {
                return Err(illegal(IllegalMove::NoGuard(r.from)));
            }
            if r.from != r.to && !self.graph.has_edge(r.from, r.to) {
                return Err(illegal(IllegalMove::NotAdjacent {
                    from: r.from,
                    to: r.to,
                }));
            }
        }

        // Remove every source from the multiset, then add the targets.
        let mut sources: Vec<usize> = moves.iter().map(|r| r.from).collect();
        sources.sort_unstable();
        let mut kept = Vec::with_capacity(self.config.len());
        let mut it = sources.iter().peekable();
        for &p in self.config.positions() {
            match it.peek() {
                Some(&&s) if s == p => {
                    it.next();
                }
                Some(&&s) if s < p => return Err(illegal(IllegalMove::NoGuard(s))),
                _ => kept.push(p),
            }
        }
        if let Some(&s) = it.next() {
            return Err(illegal(IllegalMove::NoGuard(s)));
        }
        kept.extend(moves.iter().map(|r| r.to));
        let config = GuardConfig::new(kept);
        if self.params.occupancy == Occupancy::Simple {
            if let Some(w) = config.positions.windows(2).find(|w| w[0] == w[1]) {
                return Err(illegal(IllegalMove::Stacked(w[0])));
            }
        }
        if !config.contains(attack) {
            return Err(TurnRejection::NotRepelled(attack));
        }
        Ok(GameState {
            graph: self.graph,
            params: self.params,
            config,
            turn: self.turn + 1,
        })
    }
}

/// A deterministic defender. The strategy state must determine the guard
/// configuration and everything the strategy remembers.
pub trait DefenderStrategy: Sync {
    type State: Clone + Eq + Hash + Send + Sync;

    /// State for a game starting from `initial`.
    fn start(&self, initial: &GuardConfig) -> Result<Self::State, GameError>;

    fn config<'s>(&self, state: &'s Self::State) -> &'s GuardConfig;

    /// The response to `attack`, or `None` when the strategy has no answer.
    fn respond(&self, state: &Self::State, attack: usize)
        -> Option<(Vec<Relocation>, Self::State)>;
}

/// Moves the lowest-numbered adjacent guard onto an unoccupied attacked vertex.
#[derive(Clone, Copy, Debug)]
pub struct ChaseStrategy<'g> {
    pub graph: &'g Graph,
}

impl DefenderStrategy for ChaseStrategy<'_> {
    type State = GuardConfig;

    fn start(&self, initial: &GuardConfig) -> Result<GuardConfig, GameError> {
        Ok(initial.clone())
    }

    fn config<'s>(&self, state: &'s GuardConfig) -> &'s GuardConfig {
        state
    }

    fn respond(
        &self,
        state: &GuardConfig,
        attack: usize,
    ) -> Option<(Vec<Relocation>, GuardConfig)> {
        if state.contains(attack) {
            return Some((Vec::new(), state.clone()));
        }
        let &from = state
            .positions()
            .iter()
            .find(|&&p| self.graph.has_edge(p, attack))?;
        let mut next = state.positions().to_vec();
        let at = next.iter().position(|&p| p == from).unwrap();
        next[at] = attack;
        Some((
            vec![Relocation { from, to: attack }],
            GuardConfig::new(next),
        ))
    }
}

#[derive(Clone, Debug)]
struct BlockPlan {
    clique: bool,
    in_cds: Vec<bool>,
}

/// Per-block defense derived from a neocolonization.
///
/// Every cds block keeps one guard on each of its connected dominating
/// vertices plus one rover; a clique block has just the rover. An attack on an
/// empty vertex of a block is answered inside that block only: the rover
/// steps onto it (clique), or every guard on a shortest rover-to-target path
/// through the block's dominating set advances one step.
#[derive(Clone, Debug)]
pub struct BlockStrategy<'g> {
    graph: &'g Graph,
    plans: Vec<BlockPlan>,
    block_of: Vec<usize>,
    /// Block-local position of each vertex, used to index `BlockPlan::in_cds`.
    local: Vec<usize>,
    initial: GuardConfig,
    initial_rovers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockState {
    pub config: GuardConfig,
    /// Rover vertex of each block.
    pub rovers: Vec<usize>,
}

/// Builds the block strategy and its starting configuration, which is the
/// eternal dominating set `{v(D_1), ..., v(D_k)}`.
pub fn strategy_from_neocolonization<'g>(
    neo: &Neocolonization,
    graph: &'g Graph,
) -> (BlockStrategy<'g>, GuardConfig) {
    let n = graph.n();
    let mut block_of = vec![usize::MAX; n];
    let mut local = vec![usize::MAX; n];
    let mut plans = Vec::with_capacity(neo.blocks.len());
    let mut guards = Vec::new();
    let mut rovers = Vec::with_capacity(neo.blocks.len());
    for (b, block) in neo.blocks.iter().enumerate() {
        for (i, &v) in block.members.iter().enumerate() {
            block_of[v] = b;
            local[v] = i;
        }
        let mut in_cds = vec![false; block.members.len()];
        for &c in &block.cds {
            in_cds[local[c]] = true;
        }
        plans.push(BlockPlan {
            clique: block.kind == BlockKind::Clique,
            in_cds,
        });
        guards.push(block.rover);
        guards.extend(&block.cds);
        rovers.push(block.rover);
    }
    let initial = GuardConfig::new(guards);
    let strategy = BlockStrategy {
        graph,
        plans,
        block_of,
        local,
        initial: initial.clone(),
        initial_rovers: rovers,
    };
    (strategy, initial)
}

impl BlockStrategy<'_> {
    fn is_cds(&self, v: usize) -> bool {
        let b = self.block_of[v];
        self.plans[b].in_cds[self.local[v]]
    }

    /// Shortest path from `from` to `to` with interior in the dominating set of
    /// `to`'s block; ties go to the lexicographically smallest id sequence.
    fn rover_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let block = self.block_of[to];
        let g = self.graph;
        // Distances to `to` through dominating vertices only.
        let mut dist: HashMap<usize, usize> = HashMap::new();
        dist.insert(to, 0);
        let mut queue = VecDeque::from([to]);
        while let Some(u) = queue.pop_front() {
            let d = dist[&u];
            for &w in g.neighbors(u) {
                if self.block_of[w] == block && self.is_cds(w) && !dist.contains_key(&w) {
                    dist.insert(w, d + 1);
                    queue.push_back(w);
                }
            }
        }
        // Among equally short continuations take the smallest id.
        let closest = |u: usize, want: Option<usize>| -> Option<(usize, usize)> {
            g.neighbors(u)
                .iter()
                .filter_map(|&w| dist.get(&w).map(|&d| (d, w)))
                .filter(|&(d, _)| want.is_none_or(|x| d == x))
                .min_by(|a, b| a.0.cmp(&b.0).then_with(|| g.id(a.1).cmp(g.id(b.1))))
                .map(|(d, w)| (w, d))
        };
        let mut path = vec![from];
        let (mut cur, mut d) = closest(from, None)?;
        path.push(cur);
        while d > 0 {
            (cur, d) = closest(cur, Some(d - 1))?;
            path.push(cur);
        }
        Some(path)
    }
}

impl DefenderStrategy for BlockStrategy<'_> {
    type State = BlockState;

    fn start(&self, initial: &GuardConfig) -> Result<BlockState, GameError> {
        if *initial != self.initial {
            return Err(GameError::InvalidInitial(
                "block strategy starts from its own eternal dominating set".into(),
            ));
        }
        Ok(BlockState {
            config: initial.clone(),
            rovers: self.initial_rovers.clone(),
        })
    }

    fn config<'s>(&self, state: &'s BlockState) -> &'s GuardConfig {
        &state.config
    }

    fn respond(&self, state: &BlockState, attack: usize) -> Option<(Vec<Relocation>, BlockState)> {
        if state.config.contains(attack) {
            return Some((Vec::new(), state.clone()));
        }
        let b = *self.block_of.get(attack)?;
        let rover = state.rovers[b];
        let path = if self.plans[b].clique {
            vec![rover, attack]
        } else {
            self.rover_path(rover, attack)?
        };
        let moves: Vec<Relocation> = path
            .windows(2)
            .map(|w| Relocation {
                from: w[0],
                to: w[1],
            })
            .collect();
        // Net effect: the rover's vertex empties, the attacked vertex fills.
        let mut positions = state.config.positions().to_vec();
        let at = positions.iter().position(|&p| p == rover)?;
        positions[at] = attack;
        let mut rovers = state.rovers.clone();
        rovers[b] = attack;
        Some((
            moves,
            BlockState {
                config: GuardConfig::new(positions),
                rovers,
            },
        ))
    }
}

/// Outcome of exhaustively exploring a strategy's reachable states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every reachable state answers every attack; `states` were explored.
    Eternal {
        states: usize,
    },
    /// `witness` is an attack sequence the strategy fails to repel at its last attack.
    Defeated {
        witness: Vec<usize>,
        reason: Option<TurnRejection>,
    },
    BudgetExceeded {
        explored: usize,
        frontier: usize,
    },
}

impl Verdict {
    pub fn is_eternal(&self) -> bool {
        matches!(self, Verdict::Eternal { .. })
    }
}

/// Checks that `strategy` started from `initial` repels every attack sequence
/// forever, by breadth-first exploration of its (finite) state closure.
pub fn verify_eternal<S: DefenderStrategy>(
    graph: &Graph,
    strategy: &S,
    initial: &GuardConfig,
    params: GameParams,
    budget: usize,
) -> Result<Verdict, GameError> {
    verify_eternal_with(
        Execution::default(),
        graph,
        strategy,
        initial,
        params,
        budget,
    )
}

pub fn verify_eternal_with<S: DefenderStrategy>(
    exec: Execution,
    graph: &Graph,
    strategy: &S,
    initial: &GuardConfig,
    params: GameParams,
    budget: usize,
) -> Result<Verdict, GameError> {
    GameState::new(graph, params, initial.clone())?;
    let n = graph.n();
    let mut states = vec![strategy.start(initial)?];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut index: HashMap<S::State, usize> = HashMap::from([(states[0].clone(), 0)]);
    let mut frontier = vec![0usize];

    let witness = |parent: &[Option<(usize, usize)>], mut s: usize, last: usize| {
        let mut seq = vec![last];
        while let Some((p, a)) = parent[s] {
            seq.push(a);
            s = p;
        }
        seq.reverse();
        seq
    };

    while !frontier.is_empty() {
        let expanded = exec.map(&frontier, |&si| {
            let state = &states[si];
            let game = GameState {
                graph,
                params,
                config: strategy.config(state).clone(),
                turn: 0,
            };
            (0..n)
                .map(|attack| match strategy.respond(state, attack) {
                    None => Err((attack, None)),
                    Some((moves, next)) => match game.apply_turn(attack, &moves) {
                        Ok(after) if after.config == *strategy.config(&next) => Ok((attack, next)),
                        Ok(_) => Err((attack, None)),
                        Err(rej) => Err((attack, Some(rej))),
                    },
                })
                .collect::<Vec<_>>()
        });
        let mut next_frontier = Vec::new();
        for (&si, outcomes) in frontier.iter().zip(expanded) {
            for outcome in outcomes {
                match outcome {
                    Err((attack, reason)) => {
                        return Ok(Verdict::Defeated {
                            witness: witness(&parent, si, attack),
                            reason,
                        })
                    }
                    Ok((attack, next)) => {
                        if index.contains_key(&next) {
                            continue;
                        }
                        if states.len() >= budget {
                            return Ok(Verdict::BudgetExceeded {
                                explored: states.len(),
                                frontier: frontier.len() + next_frontier.len(),
                            });
                        }
                        let id = states.len();
                        index.insert(next.clone(), id);
                        states.push(next);
                        parent.push(Some((si, attack)));
                        next_frontier.push(id);
                    }
                }
            }
        }
        frontier = next_frontier;
    }
    Ok(Verdict::Eternal {
        states: states.len(),
    })
}

/// One played turn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TurnRecord {
    pub turn: usize,
    pub attack: usize,
    pub moves: Vec<Relocation>,
    pub repelled: bool,
}

impl TurnRecord {
    /// `turn <i> attack <id> move <from>-><to>,... status repelled|defeated`;
    /// a turn without moving guards prints `move -`.
    pub fn render(&self, graph: &Graph) -> String {
        let moves: Vec<String> = self
            .moves
            .iter()
            .filter(|r| r.from != r.to)
            .map(|r| format!("{}->{}", graph.id(r.from), graph.id(r.to)))
            .collect();
        format!(
            "turn {} attack {} move {} status {}",
            self.turn,
            graph.id(self.attack),
            if moves.is_empty() {
                "-".to_string()
            } else {
                moves.join(",")
            },
            if self.repelled {
                "repelled"
            } else {
                "defeated"
            }
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttackOutcome {
    AllRepelled,
    /// 1-based turn of the first unrepelled attack.
    DefeatedAt(usize),
}

/// Plays `attacks` against `strategy`, stopping at the first failure.
pub fn play_trace<S: DefenderStrategy>(
    graph: &Graph,
    strategy: &S,
    initial: &GuardConfig,
    params: GameParams,
    attacks: &[usize],
) -> Result<Vec<TurnRecord>, GameError> {
    if attacks.is_empty() {
        return Err(GameError::EmptyAttackSequence);
    }
    let mut game = GameState::new(graph, params, initial.clone())?;
    let mut state = strategy.start(initial)?;
    let mut records = Vec::with_capacity(attacks.len());
    for (i, &attack) in attacks.iter().enumerate() {
        if attack >= graph.n() {
            return Err(GameError::UnknownVertex(attack));
        }
        let turn = i + 1;
        let played = strategy.respond(&state, attack).and_then(|(moves, next)| {
            let after = game.apply_turn(attack, &moves).ok()?;
            (after.config == *strategy.config(&next)).then_some((moves, next, after))
        });
        match played {
            Some((moves, next, after)) => {
                records.push(TurnRecord {
                    turn,
                    attack,
                    moves,
                    repelled: true,
                });
                state = next;
                game = after;
            }
            None => {
                let moves = strategy
                    .respond(&state, attack)
                    .map(|(m, _)| m)
                    .unwrap_or_default();
                records.push(TurnRecord {
                    turn,
                    attack,
                    moves,
                    repelled: false,
                });
                break;
            }
        }
    }
    Ok(records)
}

pub fn run_attack_sequence<S: DefenderStrategy>(
    graph: &Graph,
    strategy: &S,
    initial: &GuardConfig,
    params: GameParams,
    attacks: &[usize],
) -> Result<AttackOutcome, GameError> {
    let records = play_trace(graph, strategy, initial, params, attacks)?;
    Ok(match records.last() {
        Some(r) if !r.repelled => AttackOutcome::DefeatedAt(r.turn),
        _ => AttackOutcome::AllRepelled,
    })
}
