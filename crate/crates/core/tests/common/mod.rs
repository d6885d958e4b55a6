#![allow(dead_code)]

use eternal_core::graph::Graph;
use eternal_core::interval_model::{CanonicalModel, IntervalModel};

/// Edge set of a model by pairwise closed-interval overlap, keyed by id pairs.
pub fn overlap_edges(model: &IntervalModel) -> Vec<(String, String)> {
    let ivs = model.intervals();
    let mut edges = Vec::new();
    for i in 0..ivs.len() {
        for j in i + 1..ivs.len() {
            let (a, b) = (&ivs[i], &ivs[j]);
            if a.start.max(b.start) <= a.end.min(b.end) {
                let (x, y) = if a.id < b.id {
                    (&a.id, &b.id)
                } else {
                    (&b.id, &a.id)
                };
                edges.push((x.clone(), y.clone()));
            }
        }
    }
    edges.sort();
    edges
}

pub fn graph_edges(g: &Graph) -> Vec<(String, String)> {
    let mut edges: Vec<(String, String)> = g
        .edges()
        .map(|(u, v)| {
            let (a, b) = (g.id(u).to_string(), g.id(v).to_string());
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    edges.sort();
    edges
}

/// Canonical model from `(begin, end)` coordinate pairs, ids `v1..`.
pub fn canonical(pairs: &[(usize, usize)]) -> CanonicalModel {
    let model = IntervalModel::from_triples(
        pairs
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| (format!("v{}", i + 1), s as f64, t as f64)),
    )
    .unwrap();
    CanonicalModel::try_from_model(&model).unwrap()
}

/// Every canonical model on `n` intervals up to relabeling: all ways to pair
/// coordinates `1..=2n` into intervals.
pub fn all_canonical_models(n: usize) -> Vec<CanonicalModel> {
    fn rec(
        free: &mut Vec<usize>,
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if free.is_empty() {
            out.push(acc.clone());
            return;
        }
        let first = free.remove(0);
        for i in 0..free.len() {
            let other = free.remove(i);
            acc.push((first, other));
            rec(free, acc, out);
            acc.pop();
            free.insert(i, other);
        }
        free.insert(0, first);
    }
    let mut out = Vec::new();
    rec(&mut (1..=2 * n).collect(), &mut Vec::new(), &mut out);
    out.iter().map(|pairs| canonical(pairs)).collect()
}

/// All graphs on `n` labeled vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::with_numbered_vertices(n, edges).unwrap()
    })
}

/// Every tree on `n` vertices appears (up to isomorphism) among the recursive
/// trees where vertex `i > 0` hangs off some parent `< i`.
pub fn recursive_trees(n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    let mut parents = vec![0usize; n.saturating_sub(1)];
    loop {
        let edges: Vec<(usize, usize)> = parents
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i + 1))
            .collect();
        out.push(Graph::with_numbered_vertices(n, edges).unwrap());
        // Odometer over parent choices, parent of vertex i+1 ranges over 0..=i.
        let mut i = 0;
        loop {
            if i == parents.len() {
                return out;
            }
            if parents[i] < i {
                parents[i] += 1;
                break;
            }
            parents[i] = 0;
            i += 1;
        }
    }
}

/// Random graph on `n` vertices with edge probability 1/2, from a splitmix sequence.
pub fn random_graph(n: usize, seed: u64) -> Graph {
    let mut state = seed;
    let mut next = || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| next() & 1 == 1)
        .collect();
    Graph::with_numbered_vertices(n, edges).unwrap()
}
