//! Exact maximum clique for graphs of at most 64 vertices.
//!
//! Branch and bound over single-word vertex sets; each node greedily colours
//! its candidate set and prunes when `|R| + colours <= best`.

use crate::error::{Error, Result};
use crate::graph::{complement_graph, Graph};

pub const EXACT_CLIQUE_CAP: usize = 64;

struct Search {
    adj: Vec<u64>,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search {
    fn expand(&mut self, mut candidates: u64) {
        let order = self.colour_order(candidates);
        for &(v, colour) in order.iter().rev() {
            if self.current.len() + colour <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next = candidates & self.adj[v];
            if next == 0 {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            candidates &= !(1u64 << v);
        }
    }

    /// Vertices of `set` with their greedy colour numbers, non-decreasing in colour.
    fn colour_order(&self, set: u64) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(set.count_ones() as usize);
        let mut uncoloured = set;
        let mut colour = 0;
        while uncoloured != 0 {
            colour += 1;
            let mut q = uncoloured;
            while q != 0 {
                let v = q.trailing_zeros() as usize;
                q &= !(1u64 << v);
                q &= !self.adj[v];
                uncoloured &= !(1u64 << v);
                out.push((v, colour));
            }
        }
        out
    }
}

/// A maximum clique, vertices ascending.
pub fn maximum_clique(g: &Graph) -> Result<Vec<usize>> {
    let n = g.n();
    if n > EXACT_CLIQUE_CAP {
        return Err(Error::ExactCapExceeded {
            what: "exact clique number",
            cap: EXACT_CLIQUE_CAP,
            n,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut search = Search {
        adj: (0..n).map(|v| g.row_mask(v)).collect(),
        best: vec![0],
        current: Vec::new(),
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search.expand(all);
    let mut best = search.best;
    best.sort_unstable();
    Ok(best)
}

pub fn clique_number_exact(g: &Graph) -> Result<usize> {
    maximum_clique(g).map(|c| c.len())
}

/// `alpha(G) = omega(complement G)`.
pub fn independence_number_exact(g: &Graph) -> Result<usize> {
    if g.n() > EXACT_CLIQUE_CAP {
        return Err(Error::ExactCapExceeded {
            what: "exact independence number",
            cap: EXACT_CLIQUE_CAP,
            n: g.n(),
        });
    }
    clique_number_exact(&complement_graph(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn subset_scan(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&s| {
                (0..n).all(|i| {
                    s >> i & 1 == 0 || (i + 1..n).all(|j| s >> j & 1 == 0 || g.has_edge(i, j))
                })
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn small_cases() {
        assert_eq!(clique_number_exact(&Graph::complete(3)).unwrap(), 3);
        assert_eq!(clique_number_exact(&Graph::empty(5)).unwrap(), 1);
        assert_eq!(clique_number_exact(&Graph::cycle(4)).unwrap(), 2);
        assert_eq!(clique_number_exact(&Graph::empty(0)).unwrap(), 0);
        assert_eq!(independence_number_exact(&Graph::cycle(5)).unwrap(), 2);
        assert_eq!(clique_number_exact(&Graph::complete(64)).unwrap(), 64);
    }

    #[test]
    fn refuses_large_graphs() {
        assert!(matches!(
            clique_number_exact(&Graph::empty(65)),
            Err(Error::ExactCapExceeded { .. })
        ));
    }

    proptest! {
        #[test]
        fn matches_subset_scan(n in 1usize..13, density in 0.1f64..0.9, seed in any::<u64>()) {
            use rand::Rng;
            let mut rng = crate::rng::rng_from_seed(seed);
            let mut g = Graph::empty(n);
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random::<f64>() < density {
                        g.add_edge(i, j);
                    }
                }
            }
            let clique = maximum_clique(&g).unwrap();
            prop_assert_eq!(clique.len(), subset_scan(&g));
            for (x, &i) in clique.iter().enumerate() {
                for &j in &clique[x + 1..] {
                    prop_assert!(g.has_edge(i, j));
                }
            }
            prop_assert_eq!(
                independence_number_exact(&g).unwrap(),
                subset_scan(&complement_graph(&g))
            );
        }
    }
}
