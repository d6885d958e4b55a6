//! The linear sweep computing the greedy sequences `A_1..A_k` and `D_1..D_k`.
//!
//! Starting from the interval with the smallest end, each step looks at the
//! current guard interval `D_i` and picks
//!
//! * `A_{i+1}`: the interval with the smallest end among those beginning after `t(D_i)`;
//! * `B_{i+1}`: the interval with the largest end among those beginning before `t(D_i)`;
//! * `D_{i+1}`: `A_{i+1}` if it ends after `B_{i+1}`, otherwise `B_{i+1}`.
//!
//! The sweep stops when no interval begins after `t(D_i)`. Both scans only
//! move right, so every endpoint is visited a constant number of times.

use serde::{Deserialize, Serialize};

use crate::interval_model::{CanonicalModel, EndpointKind};

/// Output of [`compute_sequences`]. All entries are interval indices of the model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyResult {
    /// `A_1..A_k`.
    pub a: Vec<usize>,
    /// `D_1..D_k`.
    pub d: Vec<usize>,
    /// `B_1..B_k`; `b[0]` is always `None` since `B_1` is undefined.
    pub b: Vec<Option<usize>>,
    /// Steps `p` with `D_p = A_p`, including the sentinels `0` and `k + 1`.
    pub anchors: Vec<usize>,
}

impl GreedyResult {
    pub fn k(&self) -> usize {
        self.a.len()
    }

    /// Interval of `D_i` for 1-based `i`.
    pub fn d_at(&self, i: usize) -> usize {
        self.d[i - 1]
    }
}

/// Runs the sweep on a canonical model.
pub fn compute_sequences(model: &CanonicalModel) -> GreedyResult {
    let n2 = 2 * model.len();

    let mut a = Vec::new();
    let mut d = Vec::new();
    let mut b = Vec::new();

    // `t(D_0) = 0`: the first step is an ordinary A-step with no B candidate.
    let mut t_d = 0usize;
    // Next coordinate to inspect when looking for an end (A-scan) and a begin (B-scan).
    let mut end_cursor = 1usize;
    let mut begin_cursor = 1usize;
    // Interval with the largest end among all begins seen so far.
    let mut widest: Option<usize> = None;

    loop {
        // A-scan: first end after t(D_i) whose interval begins after t(D_i).
        end_cursor = end_cursor.max(t_d + 1);
        let mut next_a = None;
        while end_cursor <= n2 {
            let ep = model.endpoint(end_cursor);
            end_cursor += 1;
            if ep.kind == EndpointKind::End && model.start(ep.interval) > t_d {
                next_a = Some(ep.interval);
                break;
            }
        }
        let Some(next_a) = next_a else { break };

        // B-scan: fold in every begin before t(D_i).
        while begin_cursor < t_d {
            let ep = model.endpoint(begin_cursor);
            begin_cursor += 1;
            if ep.kind == EndpointKind::Begin
                && widest.is_none_or(|w| model.end(ep.interval) > model.end(w))
            {
                widest = Some(ep.interval);
            }
        }

        let (next_b, next_d) = if d.is_empty() {
            (None, next_a)
        } else {
            let wb = widest.expect("D_i begins before its own end");
            let chosen = if model.end(next_a) > model.end(wb) {
                next_a
            } else {
                wb
            };
            (Some(wb), chosen)
        };
        a.push(next_a);
        b.push(next_b);
        d.push(next_d);
        t_d = model.end(next_d);
    }

    let k = a.len();
    let mut anchors = vec![0];
    anchors.extend((1..=k).filter(|&i| a[i - 1] == d[i - 1]));
    anchors.push(k + 1);
    GreedyResult { a, d, b, anchors }
}

/// `k`, the eternal domination number of the intersection graph in the all-guards games.
pub fn eternal_domination_number(model: &CanonicalModel) -> usize {
    compute_sequences(model).k()
}

/// The attack schedule `v(A_1), ..., v(A_k)`; vertex `i` is interval `i`.
pub fn attacker_sequence(result: &GreedyResult) -> Vec<usize> {
    result.a.clone()
}
