//! Edge-list export: header `n m`, then `m` lines `i j w` with `i < j` in
//! lexicographic order, loops (`i i w`, `w` = number of loops) last.

use std::io::Write;

use super::{Graph, MultiGraph};
use crate::error::{Error, Result};

pub fn write_graph<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", g.n(), g.edge_count())?;
    for (i, j) in g.edges() {
        writeln!(out, "{i} {j} 1")?;
    }
    Ok(())
}

pub fn write_multigraph<W: Write>(m: &MultiGraph, mut out: W) -> Result<()> {
    let n = m.n();
    let mut lines = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if m.weight(i, j) > 0 {
                lines.push((i, j, m.weight(i, j)));
            }
        }
    }
    for i in 0..n {
        if m.weight(i, i) > 0 {
            lines.push((i, i, m.weight(i, i) / 2));
        }
    }
    writeln!(out, "{n} {}", lines.len())?;
    for (i, j, w) in lines {
        writeln!(out, "{i} {j} {w}")?;
    }
    Ok(())
}

type Triple = (usize, usize, u32);

fn parse_edge_list(text: &str) -> Result<(usize, Vec<Triple>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        reason: "missing `n m` header".into(),
    })?;
    let nums = |line: usize, s: &str| -> Result<Vec<usize>> {
        s.split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    reason: format!("`{t}` is not a non-negative integer"),
                })
            })
            .collect()
    };
    let h = nums(hl, header)?;
    if h.len() != 2 {
        return Err(Error::Parse {
            line: hl,
            reason: "header must be `n m`".into(),
        });
    }
    let (n, m) = (h[0], h[1]);
    let mut edges = Vec::with_capacity(m);
    let mut last = hl;
    for k in 0..m {
        let (ln, line) = lines.next().ok_or(Error::Parse {
            line: last + 1,
            reason: format!("expected {m} edge lines, found {k}"),
        })?;
        last = ln;
        let v = nums(ln, line)?;
        if v.len() != 3 {
            return Err(Error::Parse {
                line: ln,
                reason: "edge line must be `i j w`".into(),
            });
        }
        if v[0] >= n || v[1] >= n {
            return Err(Error::Parse {
                line: ln,
                reason: format!("vertex out of range 0..{n}"),
            });
        }
        edges.push((v[0], v[1], v[2] as u32));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse {
            line: ln,
            reason: "trailing data".into(),
        });
    }
    Ok((n, edges))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let (n, edges) = parse_edge_list(text)?;
    let mut g = Graph::empty(n);
    for (i, j, _) in edges {
        g.add_edge(i, j);
    }
    Ok(g)
}

pub fn parse_multigraph(text: &str) -> Result<MultiGraph> {
    let (n, edges) = parse_edge_list(text)?;
    let mut weights = vec![0u32; n * n];
    for (i, j, w) in edges {
        if i == j {
            weights[i * n + i] += 2 * w;
        } else {
            weights[i * n + j] += w;
            weights[j * n + i] += w;
        }
    }
    MultiGraph::from_weights(n, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, build_multigraph};
    use crate::latin::{cyclic_difference_table, random_latin_square};

    #[test]
    fn graph_export_format() {
        let mut buf = Vec::new();
        write_graph(&Graph::cycle(4), &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "4 4\n0 1 1\n0 3 1\n1 2 1\n2 3 1\n"
        );
    }

    #[test]
    fn multigraph_loops_last() {
        let l = cyclic_difference_table(3).unwrap();
        let m = build_multigraph(&l, &[0, 1]).unwrap();
        let mut buf = Vec::new();
        write_multigraph(&m, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "3 6\n0 1 1\n0 2 1\n1 2 1\n0 0 1\n1 1 1\n2 2 1\n"
        );
        assert_eq!(parse_multigraph(std::str::from_utf8(&buf).unwrap()).unwrap(), m);
    }

    #[test]
    fn round_trips() {
        let l = random_latin_square(11, 4).unwrap();
        let g = build_graph(&l, &[2, 5, 7]).unwrap();
        let mut buf = Vec::new();
        write_graph(&g, &mut buf).unwrap();
        assert_eq!(parse_graph(std::str::from_utf8(&buf).unwrap()).unwrap(), g);
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(
            parse_graph("3 2\n0 1 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n0 5 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
