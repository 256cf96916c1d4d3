//! Symbol sampling and the random Latin square graph models.
//!
//! * subset model: each symbol kept independently with probability `p`;
//! * multiset model: `k` uniform draws with replacement, simple graph on the
//!   support (loops dropped);
//! * multigraph model: the same draws with multiplicities and loops retained,
//!   giving a `2k`-regular multigraph;
//! * complement of the subset model.

mod text;

pub use text::{parse_graph, parse_multigraph, write_graph, write_multigraph};

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::latin::LatinSquare;
use crate::rng::rng_from_seed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMode {
    SubsetP { p: f64 },
    MultisetK { k: usize },
}

/// Sampled symbols: strictly increasing for subsets, sorted with repetition
/// for multisets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolSample {
    pub mode: SampleMode,
    pub order: usize,
    pub symbols: Vec<usize>,
    pub seed: u64,
}

impl SymbolSample {
    /// Distinct symbols, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        let mut s = self.symbols.clone();
        s.dedup();
        s
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

pub fn sample_symbols_p(n: usize, p: f64, seed: u64) -> Result<SymbolSample> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let mut rng = rng_from_seed(seed);
    let symbols = (0..n).filter(|_| rng.random::<f64>() < p).collect();
    Ok(SymbolSample {
        mode: SampleMode::SubsetP { p },
        order: n,
        symbols,
        seed,
    })
}

pub fn sample_symbols_k(n: usize, k: usize, seed: u64) -> Result<SymbolSample> {
    if n == 0 {
        return Err(Error::OrderTooSmall { min: 1, got: 0 });
    }
    let mut rng = rng_from_seed(seed);
    let mut symbols: Vec<usize> = (0..k).map(|_| rng.random_range(0..n)).collect();
    symbols.sort_unstable();
    Ok(SymbolSample {
        mode: SampleMode::MultisetK { k },
        order: n,
        symbols,
        seed,
    })
}

/// Simple undirected graph on `0..n` stored as bitset rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        complement_graph(&Graph::empty(n))
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    /// Graph on `n` vertices from an edge list; loops are ignored.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            for v in [i, j] {
                if v >= n {
                    return Err(Error::VertexIndex { vertex: v, n });
                }
            }
            g.add_edge(i, j);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `i ~ j`; a loop request is ignored.
    pub fn add_edge(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
        self.bits[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] &= !(1 << (j % 64));
        self.bits[j * self.words + i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Bitset row of `v`.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    /// Neighbourhood of `v` as a single word; only for `n <= 64`.
    pub fn row_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.bits[v * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.neighbors(i).filter(move |&j| j > i).map(move |j| (i, j)))
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) + 1 == self.n)
    }

    pub fn is_regular(&self) -> bool {
        let d = degree_profile(self);
        d.min == d.max
    }
}

/// Symmetric multigraph adjacency with loops counted twice on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    k: usize,
    weights: Vec<u32>,
}

impl MultiGraph {
    /// Validates a symmetric weight matrix whose rows all sum to the same even
    /// value `2k` and whose diagonal is even.
    pub fn from_weights(n: usize, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n,
                row: weights.len() / n.max(1),
                found: weights.len() % n.max(1),
            });
        }
        for i in 0..n {
            if weights[i * n + i] % 2 != 0 {
                return Err(Error::InvalidConfig {
                    field: "weights".into(),
                    reason: format!("diagonal entry {i} is odd"),
                });
            }
            for j in 0..i {
                if weights[i * n + j] != weights[j * n + i] {
                    return Err(Error::InvalidConfig {
                        field: "weights".into(),
                        reason: format!("not symmetric at ({i}, {j})"),
                    });
                }
            }
        }
        let sums: Vec<u64> = weights
            .chunks(n.max(1))
            .map(|r| r.iter().map(|&w| w as u64).sum())
            .collect();
        let degree = sums.first().copied().unwrap_or(0);
        if sums.iter().any(|&s| s != degree) || degree % 2 != 0 {
            return Err(Error::InvalidConfig {
                field: "weights".into(),
                reason: "rows must share one even sum".into(),
            });
        }
        Ok(Self {
            n,
            k: (degree / 2) as usize,
            weights,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Half the common degree: the multiset size.
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> u32 {
        self.weights[i * self.n + j]
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.weights[i * self.n..(i + 1) * self.n]
            .iter()
            .map(|&w| w as u64)
            .sum()
    }

    /// Loops dropped, parallel edges collapsed.
    pub fn simplify(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.weight(i, j) > 0 {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// `T = A / 2k`, row-major.
    pub fn normalized_adjacency(&self) -> Result<Vec<f64>> {
        if self.k == 0 {
            return Err(Error::EmptyMultiset);
        }
        let scale = 1.0 / (2 * self.k) as f64;
        Ok(self.weights.iter().map(|&w| w as f64 * scale).collect())
    }
}

fn check_symbols(l: &LatinSquare, symbols: &[usize]) -> Result<()> {
    match symbols.iter().find(|&&s| s >= l.order()) {
        Some(&s) => Err(Error::SymbolIndex {
            symbol: s,
            order: l.order(),
        }),
        None => Ok(()),
    }
}

/// `i ~ j` iff `L[i][j]` or `L[j][i]` lies in `symbols` (`i != j`).
/// Repeated symbols are harmless.
pub fn build_graph(l: &LatinSquare, symbols: &[usize]) -> Result<Graph> {
    check_symbols(l, symbols)?;
    let n = l.order();
    let mut g = Graph::empty(n);
    for &s in symbols {
        for i in 0..n {
            g.add_edge(i, l.column_of(i, s));
        }
    }
    Ok(g)
}

/// Each occurrence of `s` contributes `P(s) + P(s)^T`, so every row sums to `2k`.
pub fn build_multigraph(l: &LatinSquare, multiset: &[usize]) -> Result<MultiGraph> {
    check_symbols(l, multiset)?;
    let n = l.order();
    let mut weights = vec![0u32; n * n];
    for &s in multiset {
        for i in 0..n {
            let j = l.column_of(i, s);
            weights[i * n + j] += 1;
            weights[j * n + i] += 1;
        }
    }
    Ok(MultiGraph {
        n,
        k: multiset.len(),
        weights,
    })
}

pub fn complement_graph(g: &Graph) -> Graph {
    let mut out = Graph::empty(g.n);
    for i in 0..g.n {
        for j in i + 1..g.n {
            if !g.has_edge(i, j) {
                out.add_edge(i, j);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub min: usize,
    pub max: usize,
    pub degrees: Vec<usize>,
}

pub fn degree_profile(g: &Graph) -> DegreeProfile {
    let degrees: Vec<usize> = (0..g.n).map(|v| g.degree(v)).collect();
    DegreeProfile {
        min: degrees.iter().copied().min().unwrap_or(0),
        max: degrees.iter().copied().max().unwrap_or(0),
        degrees,
    }
}
