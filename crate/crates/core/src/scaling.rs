//! Wall-clock scaling of the sweep plus block decomposition.

use std::hint::black_box;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::greedy::compute_sequences;
use crate::interval_model::CanonicalModel;
use crate::neocolonization::compute_blocks;

/// Most intervals open at any coordinate in [`workload`].
const MAX_DEPTH: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Timing {
    pub size: usize,
    pub median_secs: f64,
    pub ns_per_interval: f64,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

/// Random canonical model with at most [`MAX_DEPTH`] intervals open at once.
///
/// Coordinates are walked left to right; each one either opens an interval or
/// closes a randomly chosen open one. Since every interval is short, `k` grows
/// linearly with `n` and the sweep runs over the whole endpoint list.
pub fn workload(n: usize, seed: u64) -> CanonicalModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut start = vec![0; n];
    let mut end = vec![0; n];
    let mut open: Vec<usize> = Vec::with_capacity(MAX_DEPTH);
    let mut opened = 0;
    for c in 1..=2 * n {
        let begin =
            opened < n && (open.is_empty() || (open.len() < MAX_DEPTH && rng.gen_bool(0.5)));
        if begin {
            start[opened] = c;
            open.push(opened);
            opened += 1;
        } else {
            let i = open.swap_remove(rng.gen_range(0..open.len()));
            end[i] = c;
        }
    }
    let ids = (1..=n).map(|i| format!("v{i}")).collect();
    CanonicalModel::assemble(ids, start, end)
}

/// Times `compute_sequences` followed by `compute_blocks` on one [`workload`]
/// model per size. Model generation is not timed.
pub fn measure(sizes: &[usize], seed: u64, repeats: usize) -> Vec<Timing> {
    let repeats = repeats.max(1);
    sizes
        .iter()
        .map(|&size| {
            let model = workload(size, seed);
            // Warm-up run.
            black_box(compute_blocks(&model, &compute_sequences(&model)).unwrap());
            let samples = (0..repeats)
                .map(|_| {
                    let start = Instant::now();
                    let result = compute_sequences(black_box(&model));
                    black_box(compute_blocks(&model, &result).unwrap());
                    start.elapsed().as_secs_f64()
                })
                .collect();
            let median_secs = median(samples);
            Timing {
                size,
                median_secs,
                ns_per_interval: median_secs * 1e9 / size.max(1) as f64,
            }
        })
        .collect()
}

/// Ratios of successive medians.
pub fn successive_ratios(timings: &[Timing]) -> Vec<f64> {
    timings
        .windows(2)
        .map(|w| w[1].median_secs / w[0].median_secs)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn workload_is_canonical_and_shallow() {
        for n in [0, 1, 5, 200] {
            let m = workload(n, 9);
            assert_eq!(m.len(), n);
            assert!(m.to_model().is_canonical());
            let mut depth = 0usize;
            for ep in m.endpoints() {
                match ep.kind {
                    crate::interval_model::EndpointKind::Begin => depth += 1,
                    crate::interval_model::EndpointKind::End => depth -= 1,
                }
                assert!(depth <= MAX_DEPTH);
            }
        }
        let r = compute_sequences(&workload(3000, 1));
        assert!(r.k() > 3000 / (2 * MAX_DEPTH));
    }

    #[test]
    fn one_row_per_size() {
        let t = measure(&[100, 200], 1, 3);
        assert_eq!(t.len(), 2);
        assert_eq!(t[1].size, 200);
        assert!(t.iter().all(|x| x.median_secs >= 0.0));
        assert_eq!(successive_ratios(&t).len(), 1);
    }
}
