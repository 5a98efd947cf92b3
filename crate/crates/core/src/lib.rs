//! Significance tests for cliques in simple undirected graphs by minimum
//! description length.
//!
//! A graph is scored under a null model and under a clique code that spends
//! bits naming a clique and then saves the bits of every pair inside it. If
//! the clique code wins by `k` bits, the null probability of such a win is
//! at most `2^-k`, so the null can be rejected at level `alpha` once
//! `k >= -log2(alpha)`.
//!
//! ```
//! use cliquemdl::{test_clique, Graph, NullModel, VertexSubset};
//!
//! let clique = VertexSubset::range(12);
//! let graph = NullModel::UniformGivenN
//!     .sample(50, None, 7)
//!     .unwrap()
//!     .add_clique_edges(&clique)
//!     .unwrap();
//! let result = test_clique(&graph, &clique, NullModel::UniformGivenN, 0.001).unwrap();
//! assert!(result.reject);
//! ```

pub mod clique_code;
pub mod codes;
pub mod error;
pub mod graph;
pub mod null_model;
pub mod rng;
pub mod search;
pub mod verify;

pub use clique_code::{clique_codelength, delta, CliqueCode, CliqueCodeParts, SizeCode};
pub use codes::{codelength_mix, integer_codelength, log2_binomial, Bits, IntegerCode};
pub use error::{Error, Result};
pub use graph::{enumerate_graphs, pair_count, parse_edge_list, Graph, VertexSubset};
pub use mdl_test::{
    completion_gains, k_alpha, significance_bound, test_best_clique, test_clique, CompletionGain,
    TestResult,
};
pub use null_model::{EdgeProbability, NullModel};
pub use search::{
    enumerate_all_cliques, exact_max_clique, exact_max_clique_bounded, greedy_cliques,
    SearchConfig, Strategy,
};
pub use verify::{
    clique_star_codelength, kraft_sum, mc_tail_check, KraftCode, TailCheck, TailEstimate,
};
