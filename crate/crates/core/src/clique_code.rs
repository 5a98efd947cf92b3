//! The clique code: an alternative model that describes a graph by first
//! naming a clique `C` and then the rest of the graph with the clique's
//! pairs left out.
//!
//! A codeword is the triple (clique size `k`, which `k` nodes, remainder).
//! The remainder lists the presence of each of the
//! `q = n(n-1)/2 - k(k-1)/2` non-clique pairs under the same null family
//! that is being tested, so any gain over the null is due to the clique.
//! The decoder knows `n` (and `m` for G(n,m)), exactly the context the null
//! bound gets for free. Every clique of a graph yields its own codeword.

use serde::Serialize;

use crate::codes::{integer_codelength, log2_binomial, Bits, IntegerCode};
use crate::error::{Error, Result};
use crate::graph::{pair_count, Graph, VertexSubset};
use crate::null_model::NullModel;

/// How the clique size `k` is coded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum SizeCode {
    /// Uniform over `0..=n`: `log2(n + 1)` bits.
    #[default]
    Uniform,
    /// An integer code on `k`, for sensitivity checks.
    Integer(IntegerCode),
}

/// Bit budget of one clique codeword.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CliqueCodeParts {
    pub size_bits: Bits,
    pub subset_bits: Bits,
    pub remainder_bits: Bits,
    pub total: Bits,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliqueCode {
    model: NullModel,
    size_code: SizeCode,
}

impl CliqueCode {
    pub fn new(model: NullModel) -> Self {
        Self {
            model,
            size_code: SizeCode::default(),
        }
    }

    pub fn with_size_code(mut self, size_code: SizeCode) -> Self {
        self.size_code = size_code;
        self
    }

    pub fn model(&self) -> NullModel {
        self.model
    }

    /// Length of the codeword for a `k`-clique on `n` nodes whose remainder
    /// has `remainder_edges` edges.
    pub fn codeword_parts(
        &self,
        n: usize,
        k: usize,
        remainder_edges: u64,
    ) -> Result<CliqueCodeParts> {
        if k > n {
            return Err(Error::Domain(format!(
                "clique of size {k} in a graph of {n} nodes"
            )));
        }
        let size_bits = match self.size_code {
            SizeCode::Uniform => Bits(((n + 1) as f64).log2()),
            SizeCode::Integer(code) => integer_codelength(code, k as u64)?,
        };
        let subset_bits = log2_binomial(n as u64, k as u64)?;
        let free_pairs = pair_count(n) - pair_count(k);
        let remainder_bits = self.model.pairs_codelength(free_pairs, remainder_edges)?;
        Ok(CliqueCodeParts {
            size_bits,
            subset_bits,
            remainder_bits,
            total: size_bits + subset_bits + remainder_bits,
        })
    }

    /// `L^clique(G; C)`. Fails unless `clique` is a clique of `graph`.
    pub fn codelength(&self, graph: &Graph, clique: &VertexSubset) -> Result<CliqueCodeParts> {
        graph.require_clique(clique)?;
        let remainder_edges = graph.m() as u64 - pair_count(clique.len());
        self.codeword_parts(graph.n(), clique.len(), remainder_edges)
    }

    /// Compression gain of the clique codeword over the null bound. Negative
    /// when the clique does not pay for its own description.
    pub fn delta(&self, graph: &Graph, clique: &VertexSubset) -> Result<f64> {
        let alt = self.codelength(graph, clique)?;
        Ok(self.model.bound_codelength(graph).0 - alt.total.0)
    }
}

/// [`CliqueCode::codelength`] with the default size code.
pub fn clique_codelength(
    graph: &Graph,
    clique: &VertexSubset,
    model: NullModel,
) -> Result<CliqueCodeParts> {
    CliqueCode::new(model).codelength(graph, clique)
}

/// [`CliqueCode::delta`] with the default size code.
pub fn delta(graph: &Graph, clique: &VertexSubset, model: NullModel) -> Result<f64> {
    CliqueCode::new(model).delta(graph, clique)
}
