//! Connectivity, exact Hamiltonicity and distance statistics of simple graphs.
//!
//! Multigraphs are simplified with [`MultiGraph::simplify`](crate::graph::MultiGraph::simplify)
//! before any of these are computed; loops and parallel edges never affect them.

mod flow;
mod hamilton;

pub use hamilton::{hamiltonian_cycle_exact, is_hamiltonian_cycle, HAMILTON_CAP};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph, degree_profile, Graph};
use crate::latin::{paired_index, FamilyTag, LatinSquare};
use flow::FlowNetwork;

pub const CONNECTIVITY_CAP: usize = 256;

fn check_cap(g: &Graph, what: &'static str) -> Result<()> {
    if g.n() > CONNECTIVITY_CAP {
        return Err(Error::ExactCapExceeded {
            what,
            cap: CONNECTIVITY_CAP,
            n: g.n(),
        });
    }
    Ok(())
}

fn bfs_distances(g: &Graph, root: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// The empty graph and a single vertex count as connected.
pub fn is_connected(g: &Graph) -> bool {
    g.n() <= 1 || bfs_distances(g, 0).iter().all(|&d| d != usize::MAX)
}

/// Number of internally vertex-disjoint `s-t` paths for non-adjacent `s, t`,
/// capped at `limit`.
fn local_vertex_connectivity(g: &Graph, s: usize, t: usize, limit: u32) -> u32 {
    let n = g.n();
    // v_in = 2v, v_out = 2v + 1
    let mut net = FlowNetwork::new(2 * n);
    let big = n as u32;
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, c, 0);
    }
    for (u, v) in g.edges() {
        net.add_arc(2 * u + 1, 2 * v, big, 0);
        net.add_arc(2 * v + 1, 2 * u, big, 0);
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

/// Vertex connectivity `kappa`; `n - 1` for complete graphs.
///
/// Even's scheme: some vertex among the first `kappa + 1` avoids a minimum
/// cut, so only sources `v_0 ..= v_best` need to be tried.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    check_cap(g, "exact vertex connectivity")?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    if !is_connected(g) {
        return Ok(0);
    }
    let mut best = n - 1;
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                let k = local_vertex_connectivity(g, i, j, best as u32) as usize;
                best = best.min(k);
            }
        }
        i += 1;
    }
    Ok(best)
}

/// Edge connectivity `lambda`: the least `0-t` unit-capacity flow over all `t`.
pub fn edge_connectivity(g: &Graph) -> Result<usize> {
    check_cap(g, "exact edge connectivity")?;
    let n = g.n();
    if n <= 1 {
        return Ok(0);
    }
    let mut best = degree_profile(g).min as u32;
    for t in 1..n {
        if best == 0 {
            break;
        }
        let mut net = FlowNetwork::new(n);
        for (u, v) in g.edges() {
            net.add_arc(u, v, 1, 1);
        }
        best = best.min(net.max_flow(0, t, best));
    }
    Ok(best as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityFlags {
    pub kappa_equals_delta: bool,
    pub kappa_equals_delta_minus_one: bool,
    pub lambda_equals_delta: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    pub connected: bool,
    pub kappa: usize,
    pub lambda: usize,
    pub delta: usize,
    pub flags: ConnectivityFlags,
}

impl ConnectivityReport {
    /// `kappa <= lambda <= delta`
    pub fn whitney_chain_holds(&self) -> bool {
        self.kappa <= self.lambda && self.lambda <= self.delta
    }
}

pub fn connectivity_report(g: &Graph) -> Result<ConnectivityReport> {
    let kappa = vertex_connectivity(g)?;
    let lambda = edge_connectivity(g)?;
    let delta = if g.n() == 0 { 0 } else { degree_profile(g).min };
    Ok(ConnectivityReport {
        connected: is_connected(g),
        kappa,
        lambda,
        delta,
        flags: ConnectivityFlags {
            kappa_equals_delta: kappa == delta,
            kappa_equals_delta_minus_one: kappa + 1 == delta,
            lambda_equals_delta: lambda == delta,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceMetrics {
    /// `None` when disconnected.
    pub diameter: Option<usize>,
    /// `None` for forests.
    pub girth: Option<usize>,
    pub triangle_count: u64,
    pub triangles_at_vertex_0: u64,
}

fn common_neighbours(g: &Graph, u: usize, v: usize) -> u64 {
    g.row(u)
        .iter()
        .zip(g.row(v))
        .map(|(a, b)| (a & b).count_ones() as u64)
        .sum()
}

pub fn distance_metrics(g: &Graph) -> DistanceMetrics {
    let n = g.n();
    let mut diameter = Some(0);
    let mut girth: Option<usize> = None;
    for root in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    let len = dist[u] + dist[v] + 1;
                    girth = Some(girth.map_or(len, |g| g.min(len)));
                }
            }
        }
        let far = dist.iter().copied().max().unwrap_or(0);
        diameter = match diameter {
            Some(d) if far != usize::MAX => Some(d.max(far)),
            _ => None,
        };
    }

    let triangle_count = g.edges().map(|(u, v)| common_neighbours(g, u, v)).sum::<u64>() / 3;
    let triangles_at_vertex_0 = if n == 0 {
        0
    } else {
        g.neighbors(0)
            .map(|v| common_neighbours(g, 0, v))
            .sum::<u64>()
            / 2
    };
    DistanceMetrics {
        diameter: if n == 0 { None } else { diameter },
        girth,
        triangle_count,
        triangles_at_vertex_0,
    }
}

/// For the paired family: `N((x,0)) \ {(x,1)} = N((x,1)) \ {(x,0)}` for every `x`.
pub fn paired_neighborhood_check(l: &LatinSquare, symbols: &[usize]) -> Result<bool> {
    let r = match l.tag() {
        FamilyTag::PairedExample { r } => *r,
        other => {
            return Err(Error::WrongFamily(format!(
                "expected the paired example family, found {other:?}"
            )))
        }
    };
    let g = build_graph(l, symbols)?;
    Ok((0..r).all(|x| {
        let a = paired_index(r, x, 0);
        let b = paired_index(r, x, 1);
        (0..g.n())
            .filter(|&v| v != a && v != b)
            .all(|v| g.has_edge(a, v) == g.has_edge(b, v))
    }))
}
