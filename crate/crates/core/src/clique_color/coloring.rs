use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{complement_graph, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    /// Colour of each vertex.
    pub colors: Vec<usize>,
    pub count: usize,
}

impl Coloring {
    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().all(|(i, j)| self.colors[i] != self.colors[j])
    }

    /// Vertices grouped by colour, colours ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.count];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c].push(v);
        }
        classes
    }
}

fn check_ordering(n: usize, ordering: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    if ordering.len() != n {
        return Err(Error::InvalidConfig {
            field: "ordering".into(),
            reason: format!("expected {n} vertices, got {}", ordering.len()),
        });
    }
    for &v in ordering {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidConfig {
                field: "ordering".into(),
                reason: format!("vertex {v} is out of range or repeated"),
            });
        }
    }
    Ok(())
}

pub fn natural_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// First-fit colouring: each vertex in `ordering` takes the least colour not
/// already on one of its neighbours.
pub fn greedy_coloring(g: &Graph, ordering: &[usize]) -> Result<Coloring> {
    let n = g.n();
    check_ordering(n, ordering)?;
    let mut colors = vec![usize::MAX; n];
    let mut blocked = vec![usize::MAX; n + 1];
    let mut count = 0;
    for (step, &v) in ordering.iter().enumerate() {
        for u in g.neighbors(v) {
            if colors[u] != usize::MAX {
                blocked[colors[u]] = step;
            }
        }
        let c = (0..).find(|&c| blocked[c] != step).unwrap();
        colors[v] = c;
        count = count.max(c + 1);
    }
    Ok(Coloring { colors, count })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ListColoringOutcome {
    Colored(Vec<usize>),
    /// Every colour in the list of `vertex` (at 0-based `position` in the
    /// ordering) is already used by an earlier neighbour.
    Failed { position: usize, vertex: usize },
}

/// First-fit list colouring: each vertex takes the smallest colour of its
/// list that no earlier neighbour carries.
pub fn greedy_list_coloring(
    g: &Graph,
    lists: &[Vec<usize>],
    ordering: &[usize],
) -> Result<ListColoringOutcome> {
    let n = g.n();
    check_ordering(n, ordering)?;
    if lists.len() != n {
        return Err(Error::InvalidConfig {
            field: "lists".into(),
            reason: format!("expected {n} lists, got {}", lists.len()),
        });
    }
    if let Some(v) = lists.iter().position(Vec::is_empty) {
        return Err(Error::InvalidConfig {
            field: "lists".into(),
            reason: format!("list of vertex {v} is empty"),
        });
    }
    let mut colors: Vec<Option<usize>> = vec![None; n];
    for (position, &v) in ordering.iter().enumerate() {
        let used: Vec<usize> = g.neighbors(v).filter_map(|u| colors[u]).collect();
        let choice = lists[v]
            .iter()
            .copied()
            .filter(|c| !used.contains(c))
            .min();
        match choice {
            Some(c) => colors[v] = Some(c),
            None => return Ok(ListColoringOutcome::Failed { position, vertex: v }),
        }
    }
    Ok(ListColoringOutcome::Colored(
        colors.into_iter().map(Option::unwrap).collect(),
    ))
}

/// Partition into cliques by first-fit colouring the complement in natural
/// order; `classes.len()` is the greedy clique cover number.
pub fn clique_cover_greedy(g: &Graph) -> Vec<Vec<usize>> {
    let complement = complement_graph(g);
    greedy_coloring(&complement, &natural_order(g.n()))
        .expect("natural order is a permutation")
        .classes()
}
