//! Null models: uniform-given-n, G(n,m) and G(n,p).
//!
//! Each model gives every graph a single codeword. [`NullModel::bound_codelength`]
//! is the data-given-parameters part with the discrete parameters (`n`, and
//! `m` for G(n,m)) handed over for free. It lower-bounds every two-part
//! completion [`NullModel::complete_codelength`], whatever integer code is
//! used for the parameters, and is what significance tests compare against.

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use serde::{Serialize, Serializer};

use crate::codes::{integer_codelength, log2_binomial, Bits, IntegerCode};
use crate::error::{Error, Result};
use crate::graph::{pair_count, Edge, Graph};
use crate::rng::rng_from_seed;

/// Edge probability of G(n,p), strictly inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EdgeProbability(f64);

impl EdgeProbability {
    pub fn new(p: f64) -> Result<Self> {
        if p > 0.0 && p < 1.0 {
            Ok(Self(p))
        } else {
            Err(Error::Domain(format!(
                "edge probability {p} is not in (0, 1)"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NullModel {
    /// Uniform over all graphs with `n` nodes: one bit per node pair.
    UniformGivenN,
    /// Uniform over all graphs with `n` nodes and `m` edges.
    Gnm,
    /// Every pair independently present with a fixed probability `p`.
    /// `p` is a model constant and is never encoded.
    Gnp(EdgeProbability),
}

impl NullModel {
    pub fn gnp(p: f64) -> Result<Self> {
        EdgeProbability::new(p).map(NullModel::Gnp)
    }

    /// Codelength of a graph whose free pairs number `pairs`, `edges` of
    /// them present, with the model's discrete parameters already known to
    /// the decoder. This is the "canonical description" both the null bound
    /// and the remainder of the clique code use.
    pub fn pairs_codelength(&self, pairs: u64, edges: u64) -> Result<Bits> {
        if edges > pairs {
            return Err(Error::Domain(format!("{edges} edges among {pairs} pairs")));
        }
        Ok(match self {
            NullModel::UniformGivenN => Bits(pairs as f64),
            NullModel::Gnm => log2_binomial(pairs, edges)?,
            NullModel::Gnp(p) => {
                let p = p.get();
                let absent = (pairs - edges) as f64;
                Bits(-(edges as f64) * p.log2() - absent * (-p).ln_1p() / std::f64::consts::LN_2)
            }
        })
    }

    /// The bound `B(G)`: `log2 |G_n|` for the uniform model,
    /// `log2 C(n(n-1)/2, m)` for G(n,m), and the Bernoulli codelength for
    /// G(n,p).
    pub fn bound_codelength(&self, graph: &Graph) -> Bits {
        self.pairs_codelength(pair_count(graph.n()), graph.m() as u64)
            .expect("a simple graph never has more edges than pairs")
    }

    /// Two-part codelength: the parameters under the given integer codes,
    /// then the graph given the parameters. G(n,m) needs `m_code`.
    pub fn complete_codelength(
        &self,
        graph: &Graph,
        n_code: IntegerCode,
        m_code: Option<IntegerCode>,
    ) -> Result<Bits> {
        let parameters = self.parameter_codelength(graph, n_code, m_code)?;
        Ok(parameters + self.bound_codelength(graph))
    }

    /// Just the parameter part of [`NullModel::complete_codelength`].
    pub fn parameter_codelength(
        &self,
        graph: &Graph,
        n_code: IntegerCode,
        m_code: Option<IntegerCode>,
    ) -> Result<Bits> {
        let n_bits = integer_codelength(n_code, graph.n() as u64)?;
        match (self, m_code) {
            (NullModel::Gnm, Some(code)) => {
                Ok(n_bits + integer_codelength(code, graph.m() as u64)?)
            }
            (NullModel::Gnm, None) => Err(Error::Config(
                "the G(n,m) model needs an integer code for m".into(),
            )),
            _ => Ok(n_bits),
        }
    }

    /// Whether this model's free parameters include the edge count.
    pub fn uses_edge_count(&self) -> bool {
        matches!(self, NullModel::Gnm)
    }

    /// Draws a graph from the model. G(n,m) requires `m`; the other models
    /// reject it. Deterministic in `seed`.
    pub fn sample(&self, n: usize, m: Option<u64>, seed: u64) -> Result<Graph> {
        let total = pair_count(n);
        let mut rng = rng_from_seed(seed);
        let edges: Vec<Edge> = match (self, m) {
            (NullModel::UniformGivenN, None) => bernoulli_pairs(n, 0.5, &mut rng),
            (NullModel::Gnp(p), None) => bernoulli_pairs(n, p.get(), &mut rng),
            (NullModel::Gnm, Some(m)) => {
                if m > total {
                    return Err(Error::Domain(format!(
                        "m = {m} exceeds the {total} node pairs of n = {n}"
                    )));
                }
                rand::seq::index::sample(&mut rng, total as usize, m as usize)
                    .into_iter()
                    .map(|i| pair_at(n, i as u64))
                    .collect()
            }
            (NullModel::Gnm, None) => {
                return Err(Error::Config(
                    "sampling G(n,m) needs an edge count m".into(),
                ))
            }
            (_, Some(_)) => return Err(Error::Config(format!("model {self} takes no edge count"))),
        };
        Graph::new(n, edges)
    }
}

/// The uniform model is the fair-coin case, so both models share this path
/// and produce identical streams at p = 1/2.
fn bernoulli_pairs(n: usize, p: f64, rng: &mut crate::rng::Rng) -> Vec<Edge> {
    crate::graph::pairs(n)
        .filter(|_| rng.random::<f64>() < p)
        .collect()
}

/// The `index`-th pair of `0..n` in lexicographic order.
pub(crate) fn pair_at(n: usize, index: u64) -> Edge {
    let n = n as u64;
    // Row u starts at offset u*n - u(u+1)/2.
    let offset = |u: u64| u * n - u * (u + 1) / 2;
    let (mut lo, mut hi) = (0u64, n - 1);
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if offset(mid) <= index {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let u = lo;
    let v = u + 1 + (index - offset(u));
    (u as usize, v as usize)
}

impl fmt::Display for NullModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NullModel::UniformGivenN => f.write_str("uniform"),
            NullModel::Gnm => f.write_str("gnm"),
            NullModel::Gnp(p) => write!(f, "gnp:{}", p.get()),
        }
    }
}

/// Parses `uniform`, `gnm` or `gnp:<p>`.
impl FromStr for NullModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "uniform" => Ok(NullModel::UniformGivenN),
            "gnm" => Ok(NullModel::Gnm),
            other => match other.strip_prefix("gnp:") {
                Some(p) => {
                    let p: f64 = p.parse().map_err(|_| {
                        Error::Config(format!("malformed edge probability in '{other}'"))
                    })?;
                    NullModel::gnp(p)
                }
                None => Err(Error::Config(format!(
                    "unknown model '{other}' (expected uniform, gnm or gnp:<p>)"
                ))),
            },
        }
    }
}

impl Serialize for NullModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
