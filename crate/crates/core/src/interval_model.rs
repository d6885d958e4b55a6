//! Interval models: parsing, normalization to canonical integer endpoints,
//! random generation and intersection graphs.
//!
//! Input intervals are closed, so two intervals that merely touch are
//! adjacent. [`normalize`] turns any valid model into a [`CanonicalModel`]
//! whose `2n` endpoints are exactly `1..=2n`; everything downstream works on
//! canonical models only.

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::ParseError;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub id: String,
    pub start: f64,
    pub end: f64,
}

impl Interval {
    pub fn new(id: impl Into<String>, start: f64, end: f64) -> Self {
        Interval {
            id: id.into(),
            start,
            end,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("duplicate interval id `{0}`")]
    DuplicateId(String),
    #[error("interval `{id}` is empty or not finite: begin {start}, end {end}")]
    InvalidInterval { id: String, start: f64, end: f64 },
    #[error("model is not canonical: endpoints must be exactly the integers 1..=2n")]
    NotCanonical,
    #[error("model and graph ids differ: {0}")]
    IdMismatch(String),
}

/// A family of named intervals in input order. Coordinates are arbitrary
/// finite reals; ties between endpoints are allowed.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct IntervalModel {
    intervals: Vec<Interval>,
}

impl IntervalModel {
    pub fn new(intervals: Vec<Interval>) -> Result<Self, ModelError> {
        let mut seen = HashSet::with_capacity(intervals.len());
        for iv in &intervals {
            if !(iv.start.is_finite() && iv.end.is_finite() && iv.start < iv.end) {
                return Err(ModelError::InvalidInterval {
                    id: iv.id.clone(),
                    start: iv.start,
                    end: iv.end,
                });
            }
            if !seen.insert(iv.id.as_str()) {
                return Err(ModelError::DuplicateId(iv.id.clone()));
            }
        }
        Ok(IntervalModel { intervals })
    }

    /// Convenience constructor from `(id, begin, end)` triples.
    pub fn from_triples<S: Into<String>>(
        triples: impl IntoIterator<Item = (S, f64, f64)>,
    ) -> Result<Self, ModelError> {
        Self::new(
            triples
                .into_iter()
                .map(|(id, s, t)| Interval::new(id, s, t))
                .collect(),
        )
    }

    /// Parses the model file format: a count line `n` followed by `n` lines
    /// `<id> <begin> <end>`. Lines starting with `#` and blank lines are ignored;
    /// text without a count line is the empty model.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut expected: Option<usize> = None;
        let mut intervals = Vec::new();
        let mut seen = HashSet::new();
        let mut last_line = 0;

        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            last_line = lineno;
            let fields: Vec<&str> = line.split_whitespace().collect();
            let Some(n) = expected else {
                if fields.len() != 1 {
                    return Err(ParseError::malformed(lineno, "expected the interval count"));
                }
                let n = fields[0].parse::<usize>().map_err(|_| {
                    ParseError::malformed(lineno, format!("invalid interval count `{}`", fields[0]))
                })?;
                expected = Some(n);
                continue;
            };
            if intervals.len() == n {
                return Err(ParseError::malformed(
                    lineno,
                    format!("more than the declared {n} intervals"),
                ));
            }
            if fields.len() != 3 {
                return Err(ParseError::malformed(
                    lineno,
                    "expected `<id> <begin> <end>`",
                ));
            }
            let coord = |tok: &str| -> Result<f64, ParseError> {
                tok.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| {
                        ParseError::malformed(lineno, format!("invalid coordinate `{tok}`"))
                    })
            };
            let id = fields[0].to_string();
            let (start, end) = (coord(fields[1])?, coord(fields[2])?);
            if start >= end {
                return Err(ParseError::EmptyInterval {
                    line: lineno,
                    id,
                    start,
                    end,
                });
            }
            if !seen.insert(id.clone()) {
                return Err(ParseError::DuplicateId { line: lineno, id });
            }
            intervals.push(Interval { id, start, end });
        }

        match expected {
            // A file with nothing but blanks and comments is the empty model.
            None => Ok(IntervalModel { intervals }),
            Some(n) if intervals.len() < n => Err(ParseError::malformed(
                last_line,
                format!("declared {n} intervals, found {}", intervals.len()),
            )),
            Some(_) => Ok(IntervalModel { intervals }),
        }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// True when the endpoints are exactly the integers `1..=2n`, each used once.
    pub fn is_canonical(&self) -> bool {
        let n2 = 2 * self.intervals.len();
        let mut used = vec![false; n2 + 1];
        for iv in &self.intervals {
            for x in [iv.start, iv.end] {
                if x.fract() != 0.0 || x < 1.0 || x > n2 as f64 {
                    return false;
                }
                let c = x as usize;
                if used[c] {
                    return false;
                }
                used[c] = true;
            }
        }
        true
    }

    /// Pairwise closed-interval overlap test, quadratic. Used to cross-check
    /// adjacency on models that are not (yet) canonical.
    pub fn overlaps(&self, a: usize, b: usize) -> bool {
        let (x, y) = (&self.intervals[a], &self.intervals[b]);
        x.start.max(y.start) <= x.end.min(y.end)
    }
}

impl fmt::Display for IntervalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.intervals.len())?;
        for iv in &self.intervals {
            writeln!(f, "{} {} {}", iv.id, iv.start, iv.end)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndpointKind {
    Begin,
    End,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Endpoint {
    pub interval: usize,
    pub kind: EndpointKind,
}

/// An interval model whose endpoints are exactly the integers `1..=2n`.
///
/// Intervals keep their input order; `endpoint(c)` gives constant-time access
/// to the interval owning coordinate `c`. Coordinates are stored as `u32`, so
/// a model holds at most [`CanonicalModel::MAX_LEN`] intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalModel {
    ids: Vec<String>,
    start: Vec<u32>,
    end: Vec<u32>,
    /// `interval << 1 | is_end` for coordinates `1..=2n`.
    slots: Vec<u32>,
}

fn unpack(slot: u32) -> Endpoint {
    Endpoint {
        interval: (slot >> 1) as usize,
        kind: if slot & 1 == 0 {
            EndpointKind::Begin
        } else {
            EndpointKind::End
        },
    }
}

impl CanonicalModel {
    pub const MAX_LEN: usize = 1 << 30;

    /// Accepts a model that is already canonical, keeping its coordinates.
    pub fn try_from_model(model: &IntervalModel) -> Result<Self, ModelError> {
        if !model.is_canonical() || model.len() > Self::MAX_LEN {
            return Err(ModelError::NotCanonical);
        }
        let ids = model.intervals.iter().map(|iv| iv.id.clone()).collect();
        let start = model.intervals.iter().map(|iv| iv.start as usize).collect();
        let end = model.intervals.iter().map(|iv| iv.end as usize).collect();
        Ok(Self::assemble(ids, start, end))
    }

    pub(crate) fn assemble(ids: Vec<String>, start: Vec<usize>, end: Vec<usize>) -> Self {
        let n = ids.len();
        assert!(
            n <= Self::MAX_LEN,
            "canonical models hold at most 2^30 intervals"
        );
        let mut slots = vec![u32::MAX; 2 * n];
        for i in 0..n {
            slots[start[i] - 1] = (i as u32) << 1;
            slots[end[i] - 1] = (i as u32) << 1 | 1;
        }
        CanonicalModel {
            ids,
            start: start.into_iter().map(|c| c as u32).collect(),
            end: end.into_iter().map(|c| c as u32).collect(),
            slots,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn start(&self, i: usize) -> usize {
        self.start[i] as usize
    }

    pub fn end(&self, i: usize) -> usize {
        self.end[i] as usize
    }

    /// The endpoint at coordinate `c`, for `1 <= c <= 2n`.
    pub fn endpoint(&self, c: usize) -> Endpoint {
        unpack(self.slots[c - 1])
    }

    /// Endpoints in increasing coordinate order; the `j`-th item has coordinate `j + 1`.
    pub fn endpoints(&self) -> impl ExactSizeIterator<Item = Endpoint> + '_ {
        self.slots.iter().map(|&slot| unpack(slot))
    }

    pub fn to_model(&self) -> IntervalModel {
        IntervalModel {
            intervals: (0..self.len())
                .map(|i| {
                    Interval::new(
                        self.ids[i].clone(),
                        self.start[i] as f64,
                        self.end[i] as f64,
                    )
                })
                .collect(),
        }
    }

    /// Intersection graph with vertex `i` standing for interval `i`.
    /// Runs in `O(n + m)` with a single left-to-right sweep.
    pub fn intersection_graph(&self) -> Graph {
        let n = self.len();
        let mut active: Vec<usize> = Vec::new();
        let mut pos = vec![usize::MAX; n];
        let mut edges = Vec::new();
        for ep in self.endpoints() {
            match ep.kind {
                EndpointKind::Begin => {
                    edges.extend(active.iter().map(|&u| (u, ep.interval)));
                    pos[ep.interval] = active.len();
                    active.push(ep.interval);
                }
                EndpointKind::End => {
                    let at = pos[ep.interval];
                    active.swap_remove(at);
                    if let Some(&moved) = active.get(at) {
                        pos[moved] = at;
                    }
                }
            }
        }
        Graph::from_edges(self.ids.clone(), edges).expect("interval ids are unique")
    }

    /// True when no interval contains another, i.e. sorting by begin and by end agree.
    pub fn is_proper(&self) -> bool {
        let mut last_end = 0;
        for ep in self.endpoints() {
            if ep.kind == EndpointKind::Begin {
                let t = self.end(ep.interval);
                if t < last_end {
                    return false;
                }
                last_end = t;
            }
        }
        true
    }

    /// Serializes in the model file format.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 * (self.len() + 1));
        writeln!(out, "{}", self.len()).unwrap();
        for i in 0..self.len() {
            writeln!(out, "{} {} {}", self.ids[i], self.start[i], self.end[i]).unwrap();
        }
        out
    }
}

/// Replaces coordinates by their ranks `1..=2n`.
///
/// Ties are broken by (coordinate, begins before ends, interval id), which keeps
/// touching intervals adjacent and makes the result independent of input order.
/// The intersection graph is preserved under the identity map on ids.
pub fn normalize(model: &IntervalModel) -> CanonicalModel {
    let n = model.len();
    let mut events: Vec<(f64, EndpointKind, usize)> = Vec::with_capacity(2 * n);
    for (i, iv) in model.intervals.iter().enumerate() {
        events.push((iv.start, EndpointKind::Begin, i));
        events.push((iv.end, EndpointKind::End, i));
    }
    let kind_rank = |k: EndpointKind| match k {
        EndpointKind::Begin => 0u8,
        EndpointKind::End => 1u8,
    };
    events.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(kind_rank(a.1).cmp(&kind_rank(b.1)))
            .then_with(|| model.intervals[a.2].id.cmp(&model.intervals[b.2].id))
    });
    let mut start = vec![0; n];
    let mut end = vec![0; n];
    for (rank, &(_, kind, i)) in events.iter().enumerate() {
        match kind {
            EndpointKind::Begin => start[i] = rank + 1,
            EndpointKind::End => end[i] = rank + 1,
        }
    }
    let ids = model.intervals.iter().map(|iv| iv.id.clone()).collect();
    CanonicalModel::assemble(ids, start, end)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    General,
    Proper,
}

impl std::str::FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "general" => Ok(ModelKind::General),
            "proper" => Ok(ModelKind::Proper),
            other => Err(format!(
                "unknown model kind `{other}` (expected general or proper)"
            )),
        }
    }
}

/// Deterministic random canonical model. Intervals are listed by increasing
/// begin and named `v1..vn` in that order.
///
/// `General` pairs a uniformly shuffled set of coordinates; `Proper` draws a
/// random begin/end pattern and matches the j-th begin with the j-th end.
pub fn random_model(n: usize, seed: u64, kind: ModelKind) -> CanonicalModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = match kind {
        ModelKind::General => {
            let mut coords: Vec<usize> = (1..=2 * n).collect();
            coords.shuffle(&mut rng);
            coords
                .chunks_exact(2)
                .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
                .collect()
        }
        ModelKind::Proper => {
            let mut begins = Vec::with_capacity(n);
            let mut ends = Vec::with_capacity(n);
            let (mut b_left, mut e_left) = (n, n);
            for c in 1..=2 * n {
                let open = begins.len() - ends.len();
                let begin = if open == 0 {
                    true
                } else if b_left == 0 {
                    false
                } else {
                    rng.gen_range(0..b_left + e_left) < b_left
                };
                if begin {
                    begins.push(c);
                    b_left -= 1;
                } else {
                    ends.push(c);
                    e_left -= 1;
                }
            }
            begins.into_iter().zip(ends).collect()
        }
    };
    pairs.sort_unstable();
    let ids = (1..=n).map(|i| format!("v{i}")).collect();
    let (start, end) = pairs.into_iter().unzip();
    CanonicalModel::assemble(ids, start, end)
}

/// Checks that `graph` is exactly the intersection graph of `model`, matching
/// vertices by id.
pub fn validate_model_graph(model: &CanonicalModel, graph: &Graph) -> Result<bool, ModelError> {
    if model.len() != graph.n() {
        return Err(ModelError::IdMismatch(format!(
            "model has {} intervals, graph has {} vertices",
            model.len(),
            graph.n()
        )));
    }
    let mut to_graph = Vec::with_capacity(model.len());
    for id in model.ids() {
        let v = graph
            .index_of(id)
            .ok_or_else(|| ModelError::IdMismatch(format!("`{id}` not in graph")))?;
        to_graph.push(v);
    }
    let derived = model.intersection_graph();
    if derived.edge_count() != graph.edge_count() {
        return Ok(false);
    }
    let same = derived
        .edges()
        .all(|(u, v)| graph.has_edge(to_graph[u], to_graph[v]));
    Ok(same)
}

/// A 15-interval sample model with ids `I1..I15` listed left to right
/// by drawing position.
pub fn sample_model() -> IntervalModel {
    const COORDS: [(f64, f64); 15] = [
        (0.0, 3.0),
        (2.0, 5.0),
        (6.0, 7.0),
        (8.0, 9.0),
        (4.0, 11.0),
        (12.0, 13.0),
        (10.0, 15.0),
        (14.0, 17.0),
        (16.0, 21.0),
        (18.0, 19.0),
        (22.0, 23.0),
        (24.0, 25.0),
        (20.0, 27.0),
        (26.0, 29.0),
        (28.0, 31.0),
    ];
    IntervalModel::from_triples(
        COORDS
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| (format!("I{}", i + 1), s, t)),
    )
    .expect("valid model")
}
