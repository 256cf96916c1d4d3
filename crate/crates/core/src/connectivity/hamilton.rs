use crate::error::{Error, Result};
use crate::graph::Graph;

pub const HAMILTON_CAP: usize = 20;

struct Search {
    adj: Vec<u32>,
    path: Vec<usize>,
}

impl Search {
    /// `unvisited` excludes every vertex on the path, including its end `cur`.
    fn extend(&mut self, cur: usize, unvisited: u32) -> bool {
        if unvisited == 0 {
            return self.adj[cur] & 1 == 1;
        }
        if !self.feasible(cur, unvisited) {
            return false;
        }
        let mut options = self.adj[cur] & unvisited;
        while options != 0 {
            let v = options.trailing_zeros() as usize;
            options &= options - 1;
            self.path.push(v);
            if self.extend(v, unvisited & !(1 << v)) {
                return true;
            }
            self.path.pop();
        }
        false
    }

    fn feasible(&self, cur: usize, unvisited: u32) -> bool {
        // Each remaining vertex needs two usable cycle neighbours.
        let usable = unvisited | 1 << cur | 1;
        let mut rest = unvisited;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (self.adj[v] & usable & !(1 << v)).count_ones() < 2 {
                return false;
            }
        }
        // The rest of the path runs from `cur` through all of `unvisited`.
        let region = unvisited | 1 << cur;
        let mut reached = 1u32 << cur;
        let mut frontier = reached;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & region & !reached;
            reached |= fresh;
            frontier |= fresh;
        }
        reached == region
    }
}

/// A Hamiltonian cycle starting at vertex 0, or `None` when there is none.
pub fn hamiltonian_cycle_exact(g: &Graph) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n > HAMILTON_CAP {
        return Err(Error::ExactCapExceeded {
            what: "exact Hamiltonicity",
            cap: HAMILTON_CAP,
            n,
        });
    }
    if n < 3 {
        return Err(Error::OrderTooSmall { min: 3, got: n });
    }
    let adj: Vec<u32> = (0..n).map(|v| g.row_mask(v) as u32).collect();
    if adj.iter().any(|a| a.count_ones() < 2) {
        return Ok(None);
    }
    let mut search = Search {
        adj,
        path: vec![0],
    };
    let all = (1u32 << n) - 1;
    Ok(search.extend(0, all & !1).then_some(search.path))
}

pub fn is_hamiltonian_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.n();
    let mut seen = vec![false; n];
    cycle.len() == n
        && n >= 3
        && cycle
            .iter()
            .all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
        && (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Tries every ordering of `1..n` after vertex 0, with no pruning.
    fn permutation_oracle(g: &Graph) -> bool {
        fn go(g: &Graph, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
            let n = g.n();
            if perm.len() == n {
                return (0..n).all(|i| g.has_edge(perm[i], perm[(i + 1) % n]));
            }
            for v in 1..n {
                if !used[v] {
                    used[v] = true;
                    perm.push(v);
                    let ok = go(g, perm, used);
                    perm.pop();
                    used[v] = false;
                    if ok {
                        return true;
                    }
                }
            }
            false
        }
        let mut used = vec![false; g.n()];
        used[0] = true;
        go(g, &mut vec![0], &mut used)
    }

    #[test]
    fn examples() {
        assert_eq!(
            hamiltonian_cycle_exact(&Graph::cycle(4)).unwrap(),
            Some(vec![0, 1, 2, 3])
        );
        let k4 = hamiltonian_cycle_exact(&Graph::complete(4)).unwrap().unwrap();
        assert!(is_hamiltonian_cycle(&Graph::complete(4), &k4));
        let matching = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(hamiltonian_cycle_exact(&matching).unwrap(), None);
        assert!(hamiltonian_cycle_exact(&Graph::complete(2)).is_err());
        assert!(hamiltonian_cycle_exact(&Graph::complete(21)).is_err());
        assert!(hamiltonian_cycle_exact(&Graph::complete(20)).unwrap().is_some());
    }

    #[test]
    fn petersen_is_not_hamiltonian() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let g = Graph::from_edges(10, &edges).unwrap();
        assert_eq!(hamiltonian_cycle_exact(&g).unwrap(), None);
    }

    proptest! {
        #[test]
        fn matches_permutation_enumeration(n in 3usize..9, density in 0.2f64..0.8, seed in any::<u64>()) {
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
            let found = hamiltonian_cycle_exact(&g).unwrap();
            prop_assert_eq!(found.is_some(), permutation_oracle(&g));
            if let Some(c) = found {
                prop_assert!(is_hamiltonian_cycle(&g, &c));
            }
        }
    }
}
