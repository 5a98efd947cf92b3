//! Finding candidate cliques.
//!
//! Search quality only affects the power of a test, never its validity: a
//! missed clique cannot cause a false rejection. The greedy search is the
//! default; the exact search serves small graphs and oracle duty.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSubset};
use crate::rng::{derive_seed, rng_from_seed};

/// Default node limit for [`exact_max_clique`].
pub const DEFAULT_MAX_EXACT_N: usize = 64;
/// Node limit for [`enumerate_all_cliques`].
pub const MAX_ENUMERATE_CLIQUES_N: usize = 16;

/// Above this many nodes greedy search works on adjacency lists instead of a
/// dense bit matrix.
const DENSE_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Greedy,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub strategy: Strategy,
    /// Greedy restarts.
    pub seeds: usize,
    pub max_exact_n: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::Greedy,
            seeds: 1,
            max_exact_n: DEFAULT_MAX_EXACT_N,
        }
    }
}

impl SearchConfig {
    pub fn greedy(seeds: usize) -> Self {
        Self {
            strategy: Strategy::Greedy,
            seeds,
            ..Self::default()
        }
    }

    pub fn exact() -> Self {
        Self {
            strategy: Strategy::Exact,
            ..Self::default()
        }
    }

    /// Runs the configured search and returns candidate cliques.
    pub fn candidates(&self, graph: &Graph, seed: u64) -> Result<Vec<VertexSubset>> {
        if self.seeds == 0 || self.max_exact_n == 0 {
            return Err(Error::Config(
                "seeds and max_exact_n must be at least 1".into(),
            ));
        }
        match self.strategy {
            Strategy::Greedy => Ok(greedy_cliques(graph, self.seeds, seed)),
            Strategy::Exact => Ok(vec![exact_max_clique_bounded(graph, self.max_exact_n)?]),
        }
    }
}

/// Row-major adjacency bit matrix.
struct BitMatrix {
    words: usize,
    rows: Vec<u64>,
}

impl BitMatrix {
    fn new(graph: &Graph) -> Self {
        let words = graph.n().div_ceil(64).max(1);
        let mut rows = vec![0u64; words * graph.n()];
        for &(u, v) in graph.edges() {
            rows[u * words + v / 64] |= 1 << (v % 64);
            rows[v * words + u / 64] |= 1 << (u % 64);
        }
        Self { words, rows }
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }
}

fn ones(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut bits = word;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let tz = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(w * 64 + tz)
        })
    })
}

fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

/// Vertex order and tie-break priority for one greedy restart.
struct Restart {
    start: usize,
    /// `rank[v]`: lower wins ties.
    rank: Option<Vec<usize>>,
}

impl Restart {
    fn rank(&self, v: usize) -> usize {
        self.rank.as_ref().map_or(v, |r| r[v])
    }
}

/// Greedy maximal cliques from `seeds` restarts.
///
/// Restart `i < n` starts at the i-th vertex by descending degree (ties by
/// index) and breaks ties by lowest index. Later restarts start and break
/// ties according to a seeded random permutation, one per pass over the
/// vertices. Each restart grows its clique by the common neighbour with the
/// most neighbours among the remaining common neighbours until none is left.
/// Returns the distinct cliques found, sorted. The empty graph yields `[{}]`.
pub fn greedy_cliques(graph: &Graph, seeds: usize, seed: u64) -> Vec<VertexSubset> {
    let n = graph.n();
    if n == 0 {
        return vec![VertexSubset::empty()];
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));

    let restart = |i: usize| -> Restart {
        if i < n {
            return Restart {
                start: order[i],
                rank: None,
            };
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng_from_seed(derive_seed(seed, (i / n) as u64)));
        let mut rank = vec![0; n];
        for (pos, &v) in perm.iter().enumerate() {
            rank[v] = pos;
        }
        Restart {
            start: perm[i % n],
            rank: Some(rank),
        }
    };

    let dense = (n <= DENSE_LIMIT).then(|| BitMatrix::new(graph));
    let grow = |i: usize| {
        let r = restart(i);
        let members = match &dense {
            Some(bits) => grow_dense(bits, &r),
            None => grow_sparse(graph, &r),
        };
        VertexSubset::from_unsorted(members).expect("greedy members are distinct")
    };

    let found: Vec<VertexSubset> = if graph.m().saturating_mul(seeds) > 1 << 20 {
        (0..seeds).into_par_iter().map(grow).collect()
    } else {
        (0..seeds).map(grow).collect()
    };
    let distinct: BTreeSet<VertexSubset> = found.into_iter().collect();
    for clique in &distinct {
        assert!(
            graph.is_clique(clique).unwrap_or(false),
            "greedy produced a non-clique"
        );
    }
    distinct.into_iter().collect()
}

fn grow_dense(bits: &BitMatrix, restart: &Restart) -> Vec<usize> {
    let mut members = vec![restart.start];
    let mut candidates = bits.row(restart.start).to_vec();
    loop {
        let best = ones(&candidates)
            .map(|u| (and_count(bits.row(u), &candidates), u))
            .min_by_key(|&(score, u)| (std::cmp::Reverse(score), restart.rank(u)));
        let Some((_, u)) = best else { break };
        members.push(u);
        for (c, r) in candidates.iter_mut().zip(bits.row(u)) {
            *c &= r;
        }
    }
    members
}

fn grow_sparse(graph: &Graph, restart: &Restart) -> Vec<usize> {
    let mut members = vec![restart.start];
    let mut candidates: Vec<usize> = graph.neighbors(restart.start).to_vec();
    loop {
        let best = candidates
            .iter()
            .map(|&u| {
                let score = candidates.iter().filter(|&&w| graph.has_edge(u, w)).count();
                (score, u)
            })
            .min_by_key(|&(score, u)| (std::cmp::Reverse(score), restart.rank(u)));
        let Some((_, u)) = best else { break };
        members.push(u);
        candidates.retain(|&w| graph.has_edge(u, w));
    }
    members
}

/// A maximum clique; among several, the lexicographically smallest.
pub fn exact_max_clique(graph: &Graph) -> Result<VertexSubset> {
    exact_max_clique_bounded(graph, DEFAULT_MAX_EXACT_N)
}

/// [`exact_max_clique`] with an explicit node limit.
pub fn exact_max_clique_bounded(graph: &Graph, max_exact_n: usize) -> Result<VertexSubset> {
    if graph.n() > max_exact_n {
        return Err(Error::Guard {
            what: "exact clique search",
            n: graph.n(),
            limit: max_exact_n,
            hint: "; use greedy search for larger graphs",
        });
    }
    let bits = BitMatrix::new(graph);
    let mut all = vec![0u64; bits.words];
    for v in 0..graph.n() {
        all[v / 64] |= 1 << (v % 64);
    }
    let mut search = MaxClique {
        bits: &bits,
        best: Vec::new(),
        current: Vec::new(),
    };
    search.expand(all, vec![0u64; bits.words]);
    let mut best = search.best;
    best.sort_unstable();
    Ok(VertexSubset::new(best).expect("clique members are distinct"))
}

struct MaxClique<'a> {
    bits: &'a BitMatrix,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl MaxClique<'_> {
    /// Bron-Kerbosch with Tomita pivoting, pruned when even taking every
    /// remaining candidate cannot reach the incumbent's size.
    fn expand(&mut self, mut candidates: Vec<u64>, mut excluded: Vec<u64>) {
        let remaining: usize = candidates.iter().map(|w| w.count_ones() as usize).sum();
        if self.current.len() + remaining < self.best.len() {
            return;
        }
        if remaining == 0 {
            if excluded.iter().all(|&w| w == 0) {
                self.offer();
            }
            return;
        }
        let pivot = ones(&candidates)
            .chain(ones(&excluded))
            .max_by_key(|&u| {
                (
                    and_count(self.bits.row(u), &candidates),
                    std::cmp::Reverse(u),
                )
            })
            .expect("candidates are non-empty");
        let branch: Vec<usize> = ones(&candidates)
            .filter(|&v| self.bits.row(pivot)[v / 64] >> (v % 64) & 1 == 0)
            .collect();
        for v in branch {
            let row = self.bits.row(v);
            let next_candidates = candidates.iter().zip(row).map(|(c, r)| c & r).collect();
            let next_excluded = excluded.iter().zip(row).map(|(x, r)| x & r).collect();
            self.current.push(v);
            self.expand(next_candidates, next_excluded);
            self.current.pop();
            candidates[v / 64] &= !(1 << (v % 64));
            excluded[v / 64] |= 1 << (v % 64);
        }
    }

    fn offer(&mut self) {
        let mut clique = self.current.clone();
        clique.sort_unstable();
        if clique.len() > self.best.len() || (clique.len() == self.best.len() && clique < self.best)
        {
            self.best = clique;
        }
    }
}

/// Every clique of the graph, including the empty set and the singletons,
/// each exactly once.
pub fn enumerate_all_cliques(graph: &Graph) -> Result<Vec<VertexSubset>> {
    if graph.n() > MAX_ENUMERATE_CLIQUES_N {
        return Err(Error::Guard {
            what: "clique enumeration",
            n: graph.n(),
            limit: MAX_ENUMERATE_CLIQUES_N,
            hint: "",
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_cliques(graph, 0, &mut current, &mut out);
    Ok(out)
}

/// Emits `current`, then every extension by a vertex `>= from` adjacent to
/// all of `current`.
fn extend_cliques(
    graph: &Graph,
    from: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<VertexSubset>,
) {
    out.push(VertexSubset::new(current.clone()).expect("built in increasing order"));
    for v in from..graph.n() {
        if current.iter().all(|&u| graph.has_edge(u, v)) {
            current.push(v);
            extend_cliques(graph, v + 1, current, out);
            current.pop();
        }
    }
}
