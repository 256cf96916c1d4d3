//! Cliques, independent sets and colourings.

mod bounds;
mod coloring;
mod exact;
mod patterns;

pub use bounds::{theory_bounds, Bound, BoundSheet};
pub use coloring::{
    clique_cover_greedy, greedy_coloring, greedy_list_coloring, natural_order, Coloring,
    ListColoringOutcome,
};
pub use exact::{
    clique_number_exact, independence_number_exact, maximum_clique, EXACT_CLIQUE_CAP,
};
pub use patterns::{
    derived_symbols, pattern_counts, spread_bound, spread_subset, DerivedSymbols, PatternCounts,
    SearchMethod, SpreadCertificate, EXHAUSTIVE_LIMIT, SAMPLED_DRAWS,
};

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Greedy,
    Skipped,
}

/// Clique / independence / colouring summary of one graph. Exact values are
/// present only up to [`EXACT_CLIQUE_CAP`] vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub omega: Option<usize>,
    pub alpha: Option<usize>,
    pub chi_greedy: usize,
    pub theta_greedy: usize,
    pub omega_method: Method,
    pub alpha_method: Method,
}

pub fn structure_report(g: &Graph) -> StructureReport {
    let omega = clique_number_exact(g).ok();
    let alpha = independence_number_exact(g).ok();
    let method = |v: &Option<usize>| if v.is_some() { Method::Exact } else { Method::Skipped };
    StructureReport {
        omega_method: method(&omega),
        alpha_method: method(&alpha),
        omega,
        alpha,
        chi_greedy: greedy_coloring(g, &natural_order(g.n()))
            .expect("natural order")
            .count,
        theta_greedy: clique_cover_greedy(g).len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, complement_graph, sample_symbols_p};
    use crate::latin::random_latin_square;

    #[test]
    fn report_consistency() {
        for seed in 0..20 {
            let l = random_latin_square(14, seed).unwrap();
            let s = sample_symbols_p(14, 0.4, seed).unwrap();
            let g = build_graph(&l, &s.symbols).unwrap();
            let r = structure_report(&g);
            let alpha = r.alpha.unwrap();
            assert_eq!(Some(alpha), r.omega.map(|_| clique_number_exact(&complement_graph(&g)).unwrap()));
            assert!(r.chi_greedy * alpha >= 14);
            assert!(r.theta_greedy * r.omega.unwrap() >= 14);
        }
        let big = structure_report(&crate::graph::Graph::empty(80));
        assert_eq!(big.omega_method, Method::Skipped);
        assert_eq!(big.chi_greedy, 1);
    }
}
