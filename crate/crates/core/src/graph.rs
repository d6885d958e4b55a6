//! Simple undirected graphs with string vertex ids.
//!
//! Vertices are addressed by dense indices `0..n`; ids are kept alongside for
//! I/O. Adjacency lists are sorted and free of duplicates and self-loops.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateId(String),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex index {index} out of range for {n} vertices")]
    OutOfRange { index: usize, n: usize },
}

impl Graph {
    /// Builds a graph from ids and an edge list over indices. Parallel edges are merged.
    pub fn from_edges<I>(ids: Vec<String>, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = ids.len();
        let mut index = HashMap::with_capacity(n);
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(GraphError::DuplicateId(id.clone()));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::OutOfRange { index: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { ids, index, adj })
    }

    /// Graph on `n` vertices named `1..=n`.
    pub fn with_numbered_vertices<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges((1..=n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Returns a copy of the graph with the edge `{u, v}` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.adj[u].retain(|&x| x != v);
        g.adj[v].retain(|&x| x != u);
        g
    }

    /// Subgraph induced by `set`, with vertices renumbered in the order given.
    pub fn induced(&self, set: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in set.iter().enumerate() {
            local[v] = i;
        }
        let ids = set.iter().map(|&v| self.ids[v].clone()).collect();
        let edges: Vec<(usize, usize)> = set
            .iter()
            .enumerate()
            .flat_map(|(i, &v)| {
                let local = &local;
                self.adj[v]
                    .iter()
                    .filter(move |&&w| local[w] != usize::MAX && local[w] > i)
                    .map(move |&w| (i, local[w]))
            })
            .collect();
        Graph::from_edges(ids, edges).expect("induced subgraph of a valid graph")
    }

    /// Breadth-first distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap() + 1;
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// True when `set` induces a connected subgraph. The empty set is not connected.
    pub fn is_connected_subset(&self, set: &[usize]) -> bool {
        let Some(&first) = set.first() else {
            return false;
        };
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![first];
        seen[first] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        let distinct = {
            let mut s = set.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len()
        };
        reached == distinct
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    /// Whether `dominators` dominates `targets`: each target is in it or adjacent to it.
    pub fn dominates(&self, dominators: &[usize], targets: &[usize]) -> bool {
        let mut covered = vec![false; self.n()];
        for &d in dominators {
            covered[d] = true;
            for &w in &self.adj[d] {
                covered[w] = true;
            }
        }
        targets.iter().all(|&t| covered[t])
    }

    /// Parses the DIMACS-like graph format.
    ///
    /// ```text
    /// p <n> <m>
    /// v <index> <id>      (optional, 1-based index)
    /// e <u> <v>           (1-based indices, or ids when a `v` block was given)
    /// ```
    /// Lines starting with `c` or `#` are comments.
    pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
        let mut header: Option<(usize, usize)> = None;
        let mut names: Option<Vec<Option<String>>> = None;
        let mut edges = Vec::new();
        let mut raw_edges: Vec<(usize, String, String)> = Vec::new();

        for (lineno, line) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "p" => {
                    if header.is_some() {
                        return Err(ParseError::malformed(lineno, "duplicate `p` line"));
                    }
                    // Accept both `p <n> <m>` and `p edge <n> <m>`.
                    let nums: Vec<&str> = fields[1..]
                        .iter()
                        .copied()
                        .filter(|f| f.parse::<usize>().is_ok())
                        .collect();
                    if nums.len() != 2 || fields.len() > 4 {
                        return Err(ParseError::malformed(lineno, "expected `p <n> <m>`"));
                    }
                    let n = parse_count(nums[0], lineno)?;
                    let m = parse_count(nums[1], lineno)?;
                    header = Some((n, m));
                }
                "v" => {
                    let (n, _) = header
                        .ok_or_else(|| ParseError::malformed(lineno, "`v` line before `p` line"))?;
                    if fields.len() != 3 {
                        return Err(ParseError::malformed(lineno, "expected `v <index> <id>`"));
                    }
                    if !raw_edges.is_empty() {
                        return Err(ParseError::malformed(lineno, "`v` line after edges"));
                    }
                    let idx = parse_count(fields[1], lineno)?;
                    if idx == 0 || idx > n {
                        return Err(ParseError::malformed(lineno, "vertex index out of range"));
                    }
                    let slots = names.get_or_insert_with(|| vec![None; n]);
                    if slots[idx - 1].is_some() {
                        return Err(ParseError::malformed(lineno, "vertex index declared twice"));
                    }
                    slots[idx - 1] = Some(fields[2].to_string());
                }
                "e" => {
                    if header.is_none() {
                        return Err(ParseError::malformed(lineno, "`e` line before `p` line"));
                    }
                    if fields.len() != 3 {
                        return Err(ParseError::malformed(lineno, "expected `e <u> <v>`"));
                    }
                    raw_edges.push((lineno, fields[1].to_string(), fields[2].to_string()));
                }
                other => {
                    return Err(ParseError::malformed(
                        lineno,
                        format!("unknown line type `{other}`"),
                    ))
                }
            }
        }

        let (n, m) = header.ok_or_else(|| ParseError::malformed(0, "missing `p` line"))?;
        let ids: Vec<String> = match &names {
            Some(slots) => slots
                .iter()
                .enumerate()
                .map(|(i, s)| s.clone().unwrap_or_else(|| (i + 1).to_string()))
                .collect(),
            None => (1..=n).map(|i| i.to_string()).collect(),
        };
        let lookup: HashMap<&str, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i))
            .collect();
        for (lineno, a, b) in &raw_edges {
            let resolve = |tok: &str| -> Result<usize, ParseError> {
                if names.is_some() {
                    lookup.get(tok).copied().ok_or_else(|| {
                        ParseError::malformed(*lineno, format!("unknown vertex `{tok}`"))
                    })
                } else {
                    let i = parse_count(tok, *lineno)?;
                    if i == 0 || i > n {
                        return Err(ParseError::malformed(*lineno, "vertex index out of range"));
                    }
                    Ok(i - 1)
                }
            };
            let (u, v) = (resolve(a)?, resolve(b)?);
            if u == v {
                return Err(ParseError::malformed(*lineno, "self-loop"));
            }
            edges.push((u, v));
        }
        if raw_edges.len() != m {
            return Err(ParseError::malformed(
                0,
                format!("header declares {m} edges, found {}", raw_edges.len()),
            ));
        }
        Graph::from_edges(ids, edges).map_err(|e| ParseError::malformed(0, e.to_string()))
    }

    /// Writes the graph in the format read by [`Graph::parse_dimacs`], with a `v` block.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p {} {}", self.n(), self.edge_count()).unwrap();
        for (i, id) in self.ids.iter().enumerate() {
            writeln!(out, "v {} {}", i + 1, id).unwrap();
        }
        for (u, v) in self.edges() {
            writeln!(out, "e {} {}", self.ids[u], self.ids[v]).unwrap();
        }
        out
    }
}

fn parse_count(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse::<usize>().map_err(|_| {
        ParseError::malformed(
            line,
            format!("expected a non-negative integer, got `{tok}`"),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::with_numbered_vertices(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn builds_symmetric_adjacency() {
        let g = c4();
        assert_eq!(g.edge_count(), 4);
        assert!(g.has_edge(0, 3) && g.has_edge(3, 0));
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn rejects_self_loops_and_duplicates() {
        assert_eq!(
            Graph::with_numbered_vertices(2, [(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert!(matches!(
            Graph::from_edges(vec!["a".into(), "a".into()], []),
            Err(GraphError::DuplicateId(_))
        ));
    }

    #[test]
    fn parses_indexed_and_named_edges() {
        let g = Graph::parse_dimacs("c cycle\np 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n").unwrap();
        assert_eq!(g, c4());

        let named = Graph::parse_dimacs("p 3 2\nv 1 a\nv 2 b\nv 3 c\ne a b\ne b c\n").unwrap();
        assert_eq!(named.ids(), &["a", "b", "c"]);
        assert!(named.has_edge(0, 1) && named.has_edge(1, 2) && !named.has_edge(0, 2));
    }

    #[test]
    fn dimacs_round_trip() {
        let g =
            Graph::from_edges(vec!["x".into(), "y".into(), "z".into()], [(0, 2), (1, 2)]).unwrap();
        assert_eq!(Graph::parse_dimacs(&g.to_dimacs()).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Graph::parse_dimacs("p 2 1\ne 1 3\n").unwrap_err();
        assert_eq!(err.line(), 2);
        let err = Graph::parse_dimacs("p 2 1\nq 1 2\n").unwrap_err();
        assert_eq!(err.line(), 2);
        assert!(Graph::parse_dimacs("p 2 2\ne 1 2\n").is_err());
    }

    #[test]
    fn connectivity_helpers() {
        let g = Graph::with_numbered_vertices(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert!(g.is_connected_subset(&[2, 3]));
        assert!(!g.is_connected_subset(&[1, 2]));
        assert_eq!(g.distances_from(0), vec![Some(0), Some(1), None, None]);
        assert!(c4().dominates(&[0, 2], &[0, 1, 2, 3]));
        assert!(!c4().dominates(&[0], &[0, 1, 2, 3]));
    }
}
