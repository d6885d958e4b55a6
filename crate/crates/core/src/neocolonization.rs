//! Block decomposition of a greedy run into a minimum-weight neocolonization,
//! and the matching minimum eternal dominating set.
//!
//! For consecutive anchors `p < q`, block `I_i` holds every interval beginning
//! strictly between `t(D_{p-1})` and `t(D_{q-1})`. A block with `q = p + 1` is a
//! clique; otherwise `D_{p+1}..D_{q-1}` is a connected dominating set of it.
//! Either way the block weighs `q - p`, so the weights add up to `k`.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::greedy::{compute_sequences, GreedyResult};
use crate::interval_model::{CanonicalModel, EndpointKind};
use crate::oracle::{Oracle, OracleError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Clique,
    Cds,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Interval indices, in order of increasing begin.
    pub members: Vec<usize>,
    pub kind: BlockKind,
    /// `D_{p+1}..D_{q-1}`; empty for cliques.
    pub cds: Vec<usize>,
    /// `D_p`, the block's mobile guard.
    pub rover: usize,
    pub weight: usize,
    /// Anchor pair `(p, q)`.
    pub anchors: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neocolonization {
    pub blocks: Vec<Block>,
    pub total_weight: usize,
}

impl Neocolonization {
    /// Block index of every vertex.
    pub fn block_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in &block.members {
                out[v] = b;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NeocolonizationError {
    #[error("greedy result was not computed from this model")]
    Inconsistent,
}

/// Splits the model into blocks along the anchors of `result`.
pub fn compute_blocks(
    model: &CanonicalModel,
    result: &GreedyResult,
) -> Result<Neocolonization, NeocolonizationError> {
    if *result != compute_sequences(model) {
        return Err(NeocolonizationError::Inconsistent);
    }
    let k = result.k();
    let t_d = |i: usize| if i == 0 { 0 } else { model.end(result.d_at(i)) };

    let mut blocks: Vec<Block> = result
        .anchors
        .windows(2)
        .skip(1)
        .map(|w| {
            let (p, q) = (w[0], w[1]);
            let kind = if q == p + 1 {
                BlockKind::Clique
            } else {
                BlockKind::Cds
            };
            Block {
                members: Vec::new(),
                kind,
                cds: (p + 1..q).map(|i| result.d_at(i)).collect(),
                rover: result.d_at(p),
                weight: q - p,
                anchors: (p, q),
            }
        })
        .collect();

    // Begins come in increasing order, so the owning block only moves right.
    let mut current = 0;
    for ep in model.endpoints() {
        if ep.kind != EndpointKind::Begin {
            continue;
        }
        let s = model.start(ep.interval);
        while current < blocks.len() && s > t_d(blocks[current].anchors.1 - 1) {
            current += 1;
        }
        let block = blocks
            .get_mut(current)
            .ok_or(NeocolonizationError::Inconsistent)?;
        block.members.push(ep.interval);
    }

    let total_weight = blocks.iter().map(|b| b.weight).sum();
    debug_assert_eq!(total_weight, k);
    Ok(Neocolonization {
        blocks,
        total_weight,
    })
}

/// `{v(D_1), ..., v(D_k)}` in greedy order; the entries are distinct.
pub fn eternal_dominating_set(result: &GreedyResult) -> Vec<usize> {
    result.d.clone()
}

/// Recomputes ω of a block from scratch: 1 for a clique, else 1 + γ_c of the
/// induced subgraph (by exhaustive search).
pub fn weight(members: &[usize], graph: &Graph, oracle: &Oracle) -> Result<usize, OracleError> {
    oracle.set_weight(graph, members)
}
