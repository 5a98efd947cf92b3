//! Brute-force oracles and the Monte Carlo harness for the
//! no-hypercompression inequality.

use rayon::prelude::*;
use serde::Serialize;

use crate::clique_code::CliqueCode;
use crate::codes::{codelength_mix, Bits};
use crate::error::{Error, Result};
use crate::graph::{enumerate_graphs, pair_count, Graph, VertexSubset};
use crate::mdl_test::test_best_clique;
use crate::null_model::NullModel;
use crate::rng::derive_seed;
use crate::search::{enumerate_all_cliques, greedy_cliques, MAX_ENUMERATE_CLIQUES_N};

/// Largest `n` for which [`kraft_sum`] enumerates the codeword set.
pub const MAX_KRAFT_N: usize = 4;
/// Smallest sample count [`mc_tail_check`] accepts.
pub const MIN_TAIL_SAMPLES: usize = 1000;

/// A code whose full codeword set over graphs of a given size can be listed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KraftCode {
    /// The null bound of the uniform or G(n,p) model, over every graph.
    NullBound(NullModel),
    /// The G(n,m) bound over the graphs with exactly `m` edges.
    GnmGivenEdges(u64),
    /// The clique code with a uniform or G(n,p) remainder, over every
    /// (subset, remainder) codeword.
    CliqueCode(NullModel),
    /// The clique code with a G(n,m) remainder and `m` known to the decoder.
    /// Sizes whose clique alone exceeds `m` have no codewords, so this sum
    /// falls short of 1.
    CliqueCodeGivenEdges(u64),
}

/// `sum 2^-L` over every codeword of `code` for graphs on `n` nodes.
pub fn kraft_sum(code: KraftCode, n: usize) -> Result<f64> {
    if n > MAX_KRAFT_N {
        return Err(Error::Guard {
            what: "Kraft enumeration",
            n,
            limit: MAX_KRAFT_N,
            hint: "",
        });
    }
    let graphs: Vec<Graph> = enumerate_graphs(n)?.collect();
    match code {
        KraftCode::NullBound(NullModel::Gnm) | KraftCode::CliqueCode(NullModel::Gnm) => {
            Err(Error::Config(
                "G(n,m) is a code only once m is fixed; use the GivenEdges variants".into(),
            ))
        }
        KraftCode::NullBound(model) => Ok(graphs
            .iter()
            .map(|g| model.bound_codelength(g).probability())
            .sum()),
        KraftCode::GnmGivenEdges(m) => Ok(graphs
            .iter()
            .filter(|g| g.m() as u64 == m)
            .map(|g| NullModel::Gnm.bound_codelength(g).probability())
            .sum()),
        KraftCode::CliqueCode(model) => clique_code_mass(model, n, &graphs, None),
        KraftCode::CliqueCodeGivenEdges(m) => clique_code_mass(NullModel::Gnm, n, &graphs, Some(m)),
    }
}

/// Every subset `C` paired with every remainder that has no edge inside `C`.
fn clique_code_mass(
    model: NullModel,
    n: usize,
    graphs: &[Graph],
    edges: Option<u64>,
) -> Result<f64> {
    let code = CliqueCode::new(model);
    let mut total = 0.0;
    for mask in 0u64..1 << n {
        let subset = VertexSubset::from_mask(mask);
        let inside = pair_count(subset.len());
        for remainder in graphs {
            if subset.pairs().any(|(u, v)| remainder.has_edge(u, v)) {
                continue;
            }
            let remainder_edges = remainder.m() as u64;
            if edges.is_some_and(|m| remainder_edges + inside != m) {
                continue;
            }
            total += code
                .codeword_parts(n, subset.len(), remainder_edges)?
                .total
                .probability();
        }
    }
    Ok(total)
}

/// `-log2 sum_C 2^-L(G; C)` over every clique `C` of the graph: the clique
/// code with one codeword per graph.
pub fn clique_star_codelength(graph: &Graph, model: NullModel) -> Result<Bits> {
    if graph.n() > MAX_ENUMERATE_CLIQUES_N {
        return Err(Error::Guard {
            what: "summed clique code",
            n: graph.n(),
            limit: MAX_ENUMERATE_CLIQUES_N,
            hint: "",
        });
    }
    let code = CliqueCode::new(model);
    let lengths = enumerate_all_cliques(graph)?
        .iter()
        .map(|c| code.codelength(graph, c).map(|parts| parts.total))
        .collect::<Result<Vec<_>>>()?;
    codelength_mix(&lengths)
}

/// Empirical tail `P(delta >= k)` under the null, next to its bound `2^-k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailEstimate {
    pub k: f64,
    pub empirical: f64,
    pub bound: f64,
    pub samples: usize,
    pub std_error: f64,
    pub within_bound: bool,
}

impl TailEstimate {
    fn new(k: f64, hits: usize, samples: usize) -> Self {
        let empirical = hits as f64 / samples as f64;
        let bound = (-k).exp2().min(1.0);
        let std_error = (empirical * (1.0 - empirical) / samples as f64).sqrt();
        Self {
            k,
            empirical,
            bound,
            samples,
            std_error,
            within_bound: empirical <= bound + 3.0 * std_error,
        }
    }
}

/// One Monte Carlo run of the full pipeline (sample, greedy search, best-of
/// test) under a null model.
#[derive(Debug, Clone, PartialEq)]
pub struct TailCheck {
    pub model: NullModel,
    pub n: usize,
    /// Edge count for G(n,m) samples; defaults to half the pairs.
    pub m: Option<u64>,
    pub samples: usize,
    pub ks: Vec<f64>,
    pub base_seed: u64,
    /// Greedy restarts per sample; defaults to `n`.
    pub greedy_seeds: usize,
}

impl TailCheck {
    pub fn new(model: NullModel, n: usize, samples: usize, ks: Vec<f64>, base_seed: u64) -> Self {
        Self {
            model,
            n,
            m: model.uses_edge_count().then(|| pair_count(n) / 2),
            samples,
            ks,
            base_seed,
            greedy_seeds: n.max(1),
        }
    }

    /// Gains of the best greedy clique for each seeded null sample, in
    /// trial order. Trial `i` uses seed `derive_seed(base_seed, i)`, so the
    /// output does not depend on how trials are scheduled.
    pub fn deltas(&self) -> Result<Vec<f64>> {
        if self.samples < MIN_TAIL_SAMPLES {
            return Err(Error::Domain(format!(
                "{} samples is below the floor of {MIN_TAIL_SAMPLES}",
                self.samples
            )));
        }
        if self.greedy_seeds == 0 {
            return Err(Error::Config("greedy_seeds must be at least 1".into()));
        }
        if let Some(&k) = self.ks.iter().find(|k| !k.is_finite() || **k < 0.0) {
            return Err(Error::Domain(format!(
                "threshold {k} is not a finite non-negative number of bits"
            )));
        }
        (0..self.samples as u64)
            .into_par_iter()
            .map(|trial| {
                let seed = derive_seed(self.base_seed, trial);
                let graph = self.model.sample(self.n, self.m, seed)?;
                let candidates = greedy_cliques(&graph, self.greedy_seeds, seed);
                Ok(test_best_clique(&graph, &candidates, self.model, 1.0)?.delta_bits)
            })
            .collect()
    }

    pub fn run(&self) -> Result<Vec<TailEstimate>> {
        let deltas = self.deltas()?;
        Ok(self
            .ks
            .iter()
            .map(|&k| {
                TailEstimate::new(k, deltas.iter().filter(|&&d| d >= k).count(), deltas.len())
            })
            .collect())
    }
}

/// [`TailCheck`] with default edge count and restarts.
pub fn mc_tail_check(
    model: NullModel,
    n: usize,
    samples: usize,
    ks: &[f64],
    base_seed: u64,
) -> Result<Vec<TailEstimate>> {
    TailCheck::new(model, n, samples, ks.to_vec(), base_seed).run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clique_code::clique_codelength;

    const TOL: f64 = 1e-9;

    #[test]
    fn kraft_examples() {
        assert!(
            (kraft_sum(KraftCode::NullBound(NullModel::UniformGivenN), 3).unwrap() - 1.0).abs()
                < TOL
        );
        assert!(
            (kraft_sum(KraftCode::CliqueCode(NullModel::UniformGivenN), 3).unwrap() - 1.0).abs()
                < TOL
        );
        let gnp = NullModel::gnp(0.3).unwrap();
        assert!((kraft_sum(KraftCode::NullBound(gnp), 4).unwrap() - 1.0).abs() < TOL);
        assert!(kraft_sum(KraftCode::NullBound(NullModel::Gnm), 3).is_err());
        assert!(matches!(
            kraft_sum(KraftCode::NullBound(NullModel::UniformGivenN), 5),
            Err(Error::Guard { .. })
        ));
    }

    #[test]
    fn kraft_for_all_shipped_codes() {
        for n in 0..=MAX_KRAFT_N {
            for p in [0.1, 0.3, 0.5, 0.9] {
                let gnp = NullModel::gnp(p).unwrap();
                assert!((kraft_sum(KraftCode::NullBound(gnp), n).unwrap() - 1.0).abs() < TOL);
                assert!((kraft_sum(KraftCode::CliqueCode(gnp), n).unwrap() - 1.0).abs() < TOL);
            }
            for m in 0..=pair_count(n) {
                assert!((kraft_sum(KraftCode::GnmGivenEdges(m), n).unwrap() - 1.0).abs() < TOL);
                assert!(kraft_sum(KraftCode::CliqueCodeGivenEdges(m), n).unwrap() <= 1.0 + TOL);
            }
        }
    }

    #[test]
    fn clique_star_with_a_single_codeword() {
        let g = Graph::empty(0);
        let only = clique_codelength(&g, &VertexSubset::empty(), NullModel::UniformGivenN).unwrap();
        assert_eq!(
            clique_star_codelength(&g, NullModel::UniformGivenN).unwrap(),
            only.total
        );
    }

    #[test]
    fn clique_star_of_triangle() {
        let g = Graph::complete(3);
        let model = NullModel::UniformGivenN;
        let cliques = enumerate_all_cliques(&g).unwrap();
        assert_eq!(cliques.len(), 8);
        let code = CliqueCode::new(model);
        let lengths: Vec<f64> = cliques
            .iter()
            .map(|c| code.codelength(&g, c).unwrap().total.0)
            .collect();
        let min = lengths.iter().copied().fold(f64::INFINITY, f64::min);
        let mass: f64 = lengths.iter().map(|l| (-l).exp2()).sum();
        let star = clique_star_codelength(&g, model).unwrap().0;
        assert!((star + mass.log2()).abs() < 1e-12);
        assert!(star < min);
    }

    #[test]
    fn tail_estimates() {
        let e = TailEstimate::new(0.0, 1000, 1000);
        assert_eq!((e.empirical, e.bound, e.std_error), (1.0, 1.0, 0.0));
        assert!(e.within_bound);
        let e = TailEstimate::new(1.0, 250, 1000);
        assert!((e.std_error - (0.25f64 * 0.75 / 1000.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn tail_check_parameter_validation() {
        assert!(mc_tail_check(NullModel::UniformGivenN, 10, 500, &[1.0], 0).is_err());
        assert!(mc_tail_check(NullModel::UniformGivenN, 10, 1000, &[-1.0], 0).is_err());
        assert!(mc_tail_check(NullModel::UniformGivenN, 10, 1000, &[f64::NAN], 0).is_err());
    }

    #[test]
    fn tail_check_k_zero_is_trivial() {
        let rows = mc_tail_check(NullModel::UniformGivenN, 10, 1000, &[0.0, 1.0], 5).unwrap();
        assert_eq!(rows[0].bound, 1.0);
        assert!(rows[0].empirical <= 1.0);
        assert!(rows.iter().all(|r| r.within_bound));
    }

    #[test]
    fn fair_gnp_and_uniform_give_identical_tails() {
        let ks: Vec<f64> = (0..=8).map(f64::from).collect();
        let uniform = mc_tail_check(NullModel::UniformGivenN, 20, 2000, &ks, 77).unwrap();
        let gnp = mc_tail_check(NullModel::gnp(0.5).unwrap(), 20, 2000, &ks, 77).unwrap();
        assert_eq!(uniform, gnp);
    }

    #[test]
    fn tail_check_is_deterministic_across_thread_counts() {
        let check = TailCheck::new(NullModel::Gnm, 12, 1500, vec![1.0, 2.0], 3);
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let many = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let a = single.install(|| check.deltas()).unwrap();
        let b = many.install(|| check.deltas()).unwrap();
        assert_eq!(a, b);
    }
}
