//! Simple undirected graphs on the dense node set `0..n`.
//!
//! Graphs are immutable once built. Edges are stored twice: as a sorted list
//! of `(u, v)` pairs with `u < v` (the canonical iteration order every
//! codelength and enumeration routine relies on) and as a hash set for
//! constant-time membership tests.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate_graphs`]: 2^15 graphs at n = 6.
pub const MAX_ENUMERATE_N: usize = 6;

/// An unordered pair stored as `(min, max)`.
pub type Edge = (usize, usize);

/// Number of unordered node pairs, `n(n-1)/2`.
pub fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// All unordered pairs of `0..n` in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = Edge> + Clone {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    lookup: HashSet<Edge>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge iterator. Pairs may come in either
    /// orientation and duplicates are merged.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut lookup = HashSet::new();
        for (a, b) in edges {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::NodeOutOfRange { index, n });
                }
            }
            if a == b {
                return Err(Error::Domain(format!(
                    "self-loop {a}-{a} (simple graphs only)"
                )));
            }
            lookup.insert((a.min(b), a.max(b)));
        }
        Ok(Self::from_lookup(n, lookup))
    }

    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_lookup(n, HashSet::new())
    }

    /// The complete graph on `n` nodes.
    pub fn complete(n: usize) -> Self {
        Self::from_lookup(n, pairs(n).collect())
    }

    fn from_lookup(n: usize, lookup: HashSet<Edge>) -> Self {
        let mut edges: Vec<Edge> = lookup.iter().copied().collect();
        edges.sort_unstable();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self {
            n,
            edges,
            lookup,
            adjacency,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.lookup.contains(&(u.min(v), u.max(v)))
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Checks that every member of `subset` is a node of this graph.
    pub fn check_subset(&self, subset: &VertexSubset) -> Result<()> {
        match subset.last() {
            Some(index) if index >= self.n => Err(Error::NodeOutOfRange { index, n: self.n }),
            _ => Ok(()),
        }
    }

    /// True iff every pair inside `subset` is an edge. Vacuously true for
    /// subsets of size 0 or 1.
    pub fn is_clique(&self, subset: &VertexSubset) -> Result<bool> {
        self.check_subset(subset)?;
        Ok(self.first_missing_pair(subset).is_none())
    }

    /// Like [`Graph::is_clique`] but reports the first missing pair.
    pub fn require_clique(&self, subset: &VertexSubset) -> Result<()> {
        self.check_subset(subset)?;
        match self.first_missing_pair(subset) {
            Some((u, v)) => Err(Error::NotAClique(u, v)),
            None => Ok(()),
        }
    }

    fn first_missing_pair(&self, subset: &VertexSubset) -> Option<Edge> {
        let members = subset.as_slice();
        members.iter().enumerate().find_map(|(i, &u)| {
            members[i + 1..]
                .iter()
                .find(|&&v| !self.has_edge(u, v))
                .map(|&v| (u, v))
        })
    }

    /// The remainder graph: same node set, with every pair inside the clique
    /// removed. Adding those pairs back ([`Graph::add_clique_edges`])
    /// reconstructs `self`.
    pub fn remove_clique_edges(&self, clique: &VertexSubset) -> Result<Graph> {
        self.require_clique(clique)?;
        let mut lookup = self.lookup.clone();
        for pair in clique.pairs() {
            lookup.remove(&pair);
        }
        Ok(Self::from_lookup(self.n, lookup))
    }

    /// Adds every pair inside `subset` as an edge (a planted clique).
    pub fn add_clique_edges(&self, subset: &VertexSubset) -> Result<Graph> {
        self.check_subset(subset)?;
        let mut lookup = self.lookup.clone();
        lookup.extend(subset.pairs());
        Ok(Self::from_lookup(self.n, lookup))
    }

    /// Serializes to the edge-list text format: an `n <count>` directive
    /// followed by one `u v` line per edge, `u < v`, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(8 + self.edges.len() * 8);
        let _ = writeln!(out, "n {}", self.n);
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.edges.hash(state);
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

/// A set of nodes, kept as a strictly increasing list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSubset(Vec<usize>);

impl VertexSubset {
    /// Wraps an already strictly increasing list.
    pub fn new(members: Vec<usize>) -> Result<Self> {
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedSubset);
        }
        Ok(Self(members))
    }

    /// Sorts the given members; repeated members are an error.
    pub fn from_unsorted(mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        Self::new(members)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `{0, 1, ..., k-1}`.
    pub fn range(k: usize) -> Self {
        Self((0..k).collect())
    }

    /// Subset encoded by the set bits of `mask`.
    pub fn from_mask(mask: u64) -> Self {
        Self((0..64).filter(|b| mask >> b & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &VertexSubset) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Pairs inside the subset, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(move |(i, &u)| self.0[i + 1..].iter().map(move |&v| (u, v)))
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl Serialize for VertexSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// Parses the edge-list text format.
///
/// Blank lines and lines starting with `#` are skipped. The first content
/// line may be an `n <count>` directive fixing the node count; otherwise
/// `n` is one more than the largest index seen (0 for an empty file).
/// Every other content line holds exactly two non-negative integers.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared_n = None;
    let mut raw = Vec::new();
    let mut seen_content = false;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let first_content = !seen_content;
        seen_content = true;

        if tokens[0] == "n" {
            if !first_content {
                return Err(parse_error(line_no, "'n' directive must be the first line"));
            }
            if tokens.len() != 2 {
                return Err(parse_error(line_no, "expected 'n <count>'"));
            }
            declared_n = Some(parse_index(tokens[1], line_no)?);
            continue;
        }
        if tokens.len() != 2 {
            return Err(parse_error(
                line_no,
                &format!("expected two node indices, found {} tokens", tokens.len()),
            ));
        }
        let u = parse_index(tokens[0], line_no)?;
        let v = parse_index(tokens[1], line_no)?;
        if u == v {
            return Err(Error::SelfLoop {
                line: line_no,
                node: u,
            });
        }
        if let Some(n) = declared_n {
            for index in [u, v] {
                if index >= n {
                    return Err(parse_error(
                        line_no,
                        &format!("node index {index} out of range for declared n = {n}"),
                    ));
                }
            }
        }
        raw.push((u, v));
    }

    let n = declared_n.unwrap_or_else(|| raw.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::new(n, raw)
}

fn parse_index(token: &str, line: usize) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| parse_error(line, &format!("malformed node index '{token}'")))
}

fn parse_error(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

/// Every labeled simple undirected graph on `n` nodes, each exactly once.
/// The i-th graph contains pair j (in [`pairs`] order) iff bit j of i is set.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > MAX_ENUMERATE_N {
        return Err(Error::Guard {
            what: "graph enumeration",
            n,
            limit: MAX_ENUMERATE_N,
            hint: "",
        });
    }
    let all_pairs: Vec<Edge> = pairs(n).collect();
    let total = 1u64 << all_pairs.len();
    Ok((0..total).map(move |mask| {
        let lookup = all_pairs
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask >> bit & 1 == 1)
            .map(|(_, &pair)| pair)
            .collect();
        Graph::from_lookup(n, lookup)
    }))
}
