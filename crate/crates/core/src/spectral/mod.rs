//! Spectrum of the normalized adjacency matrix and what follows from it:
//! the second eigenvalue `mu`, its probabilistic tail bound, the edge
//! distribution inequality, vertex expansion, and the spectral Hamiltonicity
//! threshold.

mod eigen;

pub use eigen::symmetric_eigenvalues;

use rand::seq::index::sample;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MultiGraph};
use crate::rng::rng_from_seed;

/// Eigenvalue arrays are written in full up to this order.
pub const FULL_SPECTRUM_MAX: usize = 128;
/// Exhaustive expansion check up to this order.
pub const EXPANSION_EXHAUSTIVE_MAX: usize = 24;
pub const EXPANSION_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `T = A / 2k` for a multigraph built from `k` symbols.
    Multigraph { k: usize },
    /// `T = A / d` for a `d`-regular simple graph.
    Regular { degree: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// `|lambda_0 - 1|`
    pub top_eigenvalue: f64,
    /// `max_i |sum_j T_ij - 1|`
    pub row_sums: f64,
    /// `|mu - ||T - J/n|||`
    pub mu_agreement: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub n: usize,
    pub normalization: Normalization,
    /// Eigenvalues of `T`, descending.
    pub eigenvalues: Vec<f64>,
    /// `max(|lambda_1|, |lambda_{n-1}|)`; zero when `n = 1`.
    pub mu: f64,
    /// Largest absolute eigenvalue of `T - J/n`.
    pub mu_via_norm: f64,
    pub residuals: Residuals,
}

/// Serialized form: the full spectrum for small `n`, otherwise only the ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub n: usize,
    pub normalization: Normalization,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub largest: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smallest: Option<Vec<f64>>,
    pub mean: f64,
    pub mu: f64,
    pub mu_via_norm: f64,
    pub residuals: Residuals,
}

impl SpectralReport {
    pub fn summary(&self) -> SpectralSummary {
        let full = self.n <= FULL_SPECTRUM_MAX;
        let ends = 5.min(self.n);
        SpectralSummary {
            n: self.n,
            normalization: self.normalization,
            eigenvalues: full.then(|| self.eigenvalues.clone()),
            largest: (!full).then(|| self.eigenvalues[..ends].to_vec()),
            smallest: (!full).then(|| self.eigenvalues[self.n - ends..].to_vec()),
            mean: self.eigenvalues.iter().sum::<f64>() / self.n.max(1) as f64,
            mu: self.mu,
            mu_via_norm: self.mu_via_norm,
            residuals: self.residuals,
        }
    }

    /// Checks the report's own invariants at the given tolerances.
    pub fn is_consistent(&self, eig_tol: f64, mu_tol: f64) -> bool {
        self.residuals.top_eigenvalue <= eig_tol
            && self.residuals.row_sums <= eig_tol
            && self.eigenvalues.last().is_none_or(|&l| l >= -1.0 - eig_tol)
            && self.residuals.mu_agreement <= mu_tol
    }
}

fn analyze(t: Vec<f64>, n: usize, normalization: Normalization) -> SpectralReport {
    let eigenvalues = symmetric_eigenvalues(&t, n);
    let mu = if n < 2 {
        0.0
    } else {
        eigenvalues[1].abs().max(eigenvalues[n - 1].abs())
    };

    let row_sums = t
        .chunks(n)
        .map(|r| (r.iter().sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max);

    let inv_n = 1.0 / n as f64;
    let b: Vec<f64> = t.iter().map(|&x| x - inv_n).collect();
    let mu_via_norm = symmetric_eigenvalues(&b, n)
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max);

    SpectralReport {
        n,
        normalization,
        residuals: Residuals {
            top_eigenvalue: (eigenvalues[0] - 1.0).abs(),
            row_sums,
            mu_agreement: (mu - mu_via_norm).abs(),
        },
        eigenvalues,
        mu,
        mu_via_norm,
    }
}

/// Full spectral report of a `2k`-regular multigraph.
pub fn spectrum(m: &MultiGraph) -> Result<SpectralReport> {
    let t = m.normalized_adjacency()?;
    Ok(analyze(t, m.n(), Normalization::Multigraph { k: m.k() }))
}

/// Spectral report of a regular simple graph of positive degree.
pub fn spectrum_regular(g: &Graph) -> Result<SpectralReport> {
    let n = g.n();
    if n == 0 {
        return Err(Error::OrderTooSmall { min: 1, got: 0 });
    }
    let degree = g.degree(0);
    if !g.is_regular() || degree == 0 {
        return Err(Error::InvalidParameter {
            name: "graph",
            value: degree as f64,
            domain: "regular of positive degree",
        });
    }
    let scale = 1.0 / degree as f64;
    let mut t = vec![0.0; n * n];
    for (i, j) in g.edges() {
        t[i * n + j] = scale;
        t[j * n + i] = scale;
    }
    Ok(analyze(t, n, Normalization::Regular { degree }))
}

/// `H(x) = x ln(2x) + (1-x) ln(2(1-x))` on `(0, 1)`.
pub fn entropy_h(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidParameter {
            name: "x",
            value: x,
            domain: "0 < x < 1",
        });
    }
    Ok(x * (2.0 * x).ln() + (1.0 - x) * (2.0 * (1.0 - x)).ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailBound {
    /// `min(1, 2n exp(-k H((1+eps)/2)))`
    pub exact: f64,
    /// `min(1, 2n exp(-k eps^2 / 2))`
    pub weak: f64,
}

/// Upper bounds on `Pr(mu >= eps)` for the multigraph model with `k` symbols.
pub fn tail_bound(n: usize, k: usize, eps: f64) -> Result<TailBound> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter {
            name: "eps",
            value: eps,
            domain: "0 < eps < 1",
        });
    }
    if k == 0 {
        return Err(Error::EmptyMultiset);
    }
    let two_n = 2.0 * n as f64;
    let h = entropy_h((1.0 + eps) / 2.0)?;
    Ok(TailBound {
        exact: (two_n * (-(k as f64) * h).exp()).min(1.0),
        weak: (two_n * (-(k as f64) * eps * eps / 2.0).exp()).min(1.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    /// Ordered-pair count `sum_{a in A, b in B} A_ab`.
    pub e_ab: u64,
    /// `|e(A,B) - 2k |A||B| / n|`
    pub lhs: f64,
    /// `2k mu sqrt(|A||B|)`
    pub rhs: f64,
    pub holds: bool,
}

fn dedup_vertices(set: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    if let Some(&bad) = v.iter().find(|&&x| x >= n) {
        return Err(Error::VertexIndex { vertex: bad, n });
    }
    Ok(v)
}

/// Edge distribution inequality `|e(A,B) - (2k/n)|A||B|| <= 2k mu sqrt(|A||B|)`.
///
/// `e(A,B)` counts edges inside `A ∩ B` twice. A relative slack of `1e-9`
/// absorbs rounding in `mu`.
pub fn edge_discrepancy(m: &MultiGraph, a: &[usize], b: &[usize], mu: f64) -> Result<Discrepancy> {
    let n = m.n();
    let a = dedup_vertices(a, n)?;
    let b = dedup_vertices(b, n)?;
    if a.is_empty() || b.is_empty() {
        return Ok(Discrepancy {
            e_ab: 0,
            lhs: 0.0,
            rhs: 0.0,
            holds: true,
        });
    }
    let e_ab: u64 = a
        .iter()
        .map(|&x| b.iter().map(|&y| m.weight(x, y) as u64).sum::<u64>())
        .sum();
    let two_k = 2.0 * m.k() as f64;
    let (sa, sb) = (a.len() as f64, b.len() as f64);
    let lhs = (e_ab as f64 - two_k * sa * sb / n as f64).abs();
    let rhs = two_k * mu * (sa * sb).sqrt();
    Ok(Discrepancy {
        e_ab,
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-9 * rhs.max(1.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMethod {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionVerdict {
    pub expander: bool,
    /// First `W` (by size, then lexicographically) with `|N(W) \ W| < eps |W|`.
    pub witness: Option<Vec<usize>>,
    pub method: CheckMethod,
    pub sets_checked: u64,
}

/// `|N(W) \ W| >= eps |W|` for all `1 <= |W| <= n/2`; exhaustive for
/// `n <= 24`, otherwise [`EXPANSION_SAMPLES`] random sets drawn from `seed`.
pub fn expansion_check(g: &Graph, eps: f64, seed: u64) -> Result<ExpansionVerdict> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter {
            name: "eps",
            value: eps,
            domain: "eps > 0",
        });
    }
    let n = g.n();
    let half = n / 2;
    if n <= EXPANSION_EXHAUSTIVE_MAX {
        let rows: Vec<u32> = (0..n).map(|v| g.row_mask(v) as u32).collect();
        let mut checked = 0u64;
        for size in 1..=half {
            // Gosper's hack walks same-size masks in increasing numeric order.
            let mut w: u32 = (1 << size) - 1;
            while w < (1u32 << n) || (n == 32 && w != 0) {
                checked += 1;
                let mut nbhd = 0u32;
                let mut bits = w;
                while bits != 0 {
                    let v = bits.trailing_zeros();
                    bits &= bits - 1;
                    nbhd |= rows[v as usize];
                }
                let boundary = (nbhd & !w).count_ones() as f64;
                if boundary < eps * size as f64 {
                    return Ok(ExpansionVerdict {
                        expander: false,
                        witness: Some((0..n).filter(|&v| w >> v & 1 == 1).collect()),
                        method: CheckMethod::Exhaustive,
                        sets_checked: checked,
                    });
                }
                let c = w & w.wrapping_neg();
                let r = w + c;
                w = (((r ^ w) >> 2) / c) | r;
            }
        }
        return Ok(ExpansionVerdict {
            expander: true,
            witness: None,
            method: CheckMethod::Exhaustive,
            sets_checked: checked,
        });
    }

    let mut rng = rng_from_seed(seed);
    let mut in_w = vec![false; n];
    let mut in_boundary = vec![false; n];
    for drawn in 1..=EXPANSION_SAMPLES as u64 {
        let size = rng.random_range(1..=half);
        let mut w: Vec<usize> = sample(&mut rng, n, size).into_vec();
        w.sort_unstable();
        in_w.fill(false);
        in_boundary.fill(false);
        for &v in &w {
            in_w[v] = true;
        }
        let mut boundary = 0usize;
        for &v in &w {
            for u in g.neighbors(v) {
                if !in_w[u] && !in_boundary[u] {
                    in_boundary[u] = true;
                    boundary += 1;
                }
            }
        }
        if (boundary as f64) < eps * size as f64 {
            return Ok(ExpansionVerdict {
                expander: false,
                witness: Some(w),
                method: CheckMethod::Sampled,
                sets_checked: drawn,
            });
        }
    }
    Ok(ExpansionVerdict {
        expander: true,
        witness: None,
        method: CheckMethod::Sampled,
        sets_checked: EXPANSION_SAMPLES as u64,
    })
}

/// `(ln ln n)^2 / (1000 ln n ln ln ln n)`: a `d`-regular graph whose `mu` is at
/// most this is Hamiltonian for large `n`. Defined for `n >= 16`.
pub fn hamiltonicity_threshold(n: u64) -> Result<f64> {
    if n < 16 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n as f64,
            domain: "n >= 16 (ln ln ln n > 0)",
        });
    }
    let ln = (n as f64).ln();
    let lnln = ln.ln();
    Ok(lnln * lnln / (1000.0 * ln * lnln.ln()))
}
