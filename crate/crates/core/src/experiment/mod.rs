//! Reproducible Monte Carlo sweeps over (Latin family, model, order grid,
//! property).
//!
//! Trial `t` at grid position `g` has global index `g * trials + t` and seed
//! `mix(master_seed, index)`. Everything a trial draws is derived from that
//! seed, and records are gathered by index, so a report does not depend on the
//! thread count. Only the `micros` timing field varies between runs.

mod config;
mod io;
mod stats;

pub use config::{
    ExperimentConfig, LatinFamily, Model, Property, ResolvedModel, PATTERN_ORDER_CAP,
};
pub use io::{
    load_report, record_rows, report_checksum, save_report, write_records_csv, CsvRow,
    SavedPaths,
};
pub use stats::{
    estimate_probability, three_sigma_ceiling, wilson_interval, ProbabilityEstimate, Z_95,
};

use std::fmt;
use std::time::Instant;

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clique_color::{
    clique_cover_greedy, clique_number_exact, greedy_coloring, independence_number_exact,
    natural_order, pattern_counts,
};
use crate::connectivity::{
    distance_metrics, edge_connectivity, hamiltonian_cycle_exact, is_connected,
    vertex_connectivity,
};
use crate::error::{Error, Result};
use crate::graph::{
    build_graph, build_multigraph, complement_graph, degree_profile, sample_symbols_k,
    sample_symbols_p, Graph, MultiGraph,
};
use crate::latin::LatinSquare;
use crate::rng::{mix, rng_from_seed};
use crate::spectral::{edge_discrepancy, spectrum, tail_bound, TailBound};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum PropertyValue {
    Bool(bool),
    Count(u64),
    /// Girth of a forest or diameter of a disconnected graph.
    Infinite,
    Real(f64),
    /// The property does not apply to this sample (e.g. degree bounds for `S = {}`).
    Undefined,
}

impl fmt::Display for PropertyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyValue::Bool(b) => write!(f, "{b}"),
            PropertyValue::Count(c) => write!(f, "{c}"),
            PropertyValue::Infinite => f.write_str("inf"),
            PropertyValue::Real(x) => write!(f, "{x}"),
            PropertyValue::Undefined => f.write_str("undefined"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub n: usize,
    /// `p` or `k` for this order.
    pub param: f64,
    /// Sampled symbols; sorted with repetition for multiset models.
    pub symbols: Vec<usize>,
    pub value: PropertyValue,
    pub micros: u64,
}

impl TrialRecord {
    /// Equality ignoring wall time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        Self { micros: 0, ..self.clone() } == Self { micros: 0, ..other.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub trials: u64,
    pub undefined: u64,
    /// Boolean properties.
    pub frequency: Option<ProbabilityEstimate>,
    /// Numeric properties, over finite values.
    pub mean: Option<f64>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub infinite: u64,
}

pub fn aggregate(values: &[PropertyValue]) -> Aggregate {
    let bools: Vec<bool> = values
        .iter()
        .filter_map(|v| match v {
            PropertyValue::Bool(b) => Some(*b),
            _ => None,
        })
        .collect();
    let numbers: Vec<f64> = values
        .iter()
        .filter_map(|v| match v {
            PropertyValue::Count(c) => Some(*c as f64),
            PropertyValue::Real(x) => Some(*x),
            _ => None,
        })
        .collect();
    let count = |want: PropertyValue| values.iter().filter(|&&v| v == want).count() as u64;
    let nonempty = !numbers.is_empty();
    Aggregate {
        trials: values.len() as u64,
        undefined: count(PropertyValue::Undefined),
        frequency: estimate_probability(&bools).ok(),
        mean: nonempty.then(|| numbers.iter().sum::<f64>() / numbers.len() as f64),
        min: nonempty.then(|| numbers.iter().copied().fold(f64::INFINITY, f64::min)),
        max: nonempty.then(|| numbers.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
        infinite: count(PropertyValue::Infinite),
    }
}

/// Observed `Pr(mu >= eps)` against the tail bound with a 3 sigma allowance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub bound: TailBound,
    pub ceiling: f64,
    pub frequency: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub n: usize,
    pub param: f64,
    pub aggregate: Aggregate,
    pub bound_check: Option<BoundCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub n: usize,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub points: Vec<GridPoint>,
    pub records: Vec<TrialRecord>,
    pub violations: Vec<Violation>,
    /// SHA-256 of the report serialized with this field empty.
    #[serde(default)]
    pub checksum: String,
}

/// The graph(s) one trial produces.
struct Sample {
    symbols: Vec<usize>,
    support_len: usize,
    graph: Graph,
    multigraph: Option<MultiGraph>,
}

fn draw(l: &LatinSquare, model: ResolvedModel, seed: u64) -> Result<Sample> {
    let n = l.order();
    let (sample, complement) = match model {
        ResolvedModel::SubsetP(p) => (sample_symbols_p(n, p, seed)?, false),
        ResolvedModel::ComplementP(p) => (sample_symbols_p(n, p, seed)?, true),
        ResolvedModel::MultisetK(k) | ResolvedModel::MultigraphK(k) => {
            (sample_symbols_k(n, k, seed)?, false)
        }
    };
    let support = sample.support();
    let graph = build_graph(l, &support)?;
    let multigraph = match model.k() {
        Some(_) => Some(build_multigraph(l, &sample.symbols)?),
        None => None,
    };
    Ok(Sample {
        support_len: support.len(),
        symbols: sample.symbols,
        graph: if complement { complement_graph(&graph) } else { graph },
        multigraph,
    })
}

fn random_subset(n: usize, rng: &mut crate::rng::Rng) -> Vec<usize> {
    (0..n).filter(|_| rng.random::<bool>()).collect()
}

fn evaluate(
    property: &Property,
    l: &LatinSquare,
    s: &Sample,
    seed: u64,
) -> Result<PropertyValue> {
    use PropertyValue::*;
    let g = &s.graph;
    let count = |v: usize| Count(v as u64);
    let multigraph = || {
        s.multigraph.as_ref().ok_or_else(|| Error::InvalidConfig {
            field: "model".into(),
            reason: format!("{property} needs a multigraph"),
        })
    };
    Ok(match property {
        Property::Connected => Bool(is_connected(g)),
        Property::MuGeq { eps } => Bool(spectrum(multigraph()?)?.mu >= *eps),
        Property::Omega => count(clique_number_exact(g)?),
        Property::Alpha => count(independence_number_exact(g)?),
        Property::ChiGreedy => count(greedy_coloring(g, &natural_order(g.n()))?.count),
        Property::ThetaGreedy => count(clique_cover_greedy(g).len()),
        Property::Kappa => count(vertex_connectivity(g)?),
        Property::Lambda => count(edge_connectivity(g)?),
        Property::Hamiltonian => Bool(hamiltonian_cycle_exact(g)?.is_some()),
        Property::Girth => distance_metrics(g).girth.map_or(Infinite, count),
        Property::Diameter => distance_metrics(g).diameter.map_or(Infinite, count),
        Property::TriangleAt0 => Bool(distance_metrics(g).triangles_at_vertex_0 > 0),
        Property::DegreeBounds => {
            if s.support_len == 0 {
                Undefined
            } else {
                let d = degree_profile(g);
                Bool(s.support_len - 1 <= d.min && d.max <= 2 * s.support_len)
            }
        }
        Property::EdgeDiscrepancyHolds { pairs } => {
            let m = multigraph()?;
            let mu = spectrum(m)?.mu;
            let mut rng = rng_from_seed(seed);
            let mut all = true;
            for _ in 0..*pairs {
                let a = random_subset(m.n(), &mut rng);
                let b = random_subset(m.n(), &mut rng);
                all &= edge_discrepancy(m, &a, &b, mu)?.holds;
            }
            Bool(all)
        }
        Property::PatternIdentity => {
            let mut rng = rng_from_seed(seed);
            let a = random_subset(l.order(), &mut rng);
            Bool(pattern_counts(l, &a)?.identity_holds())
        }
    })
}

fn run_trial(
    config: &ExperimentConfig,
    shared: Option<&LatinSquare>,
    n: usize,
    model: ResolvedModel,
    index: u64,
) -> Result<TrialRecord> {
    let start = Instant::now();
    let seed = mix(config.master_seed, index);
    let owned;
    let l = match shared {
        Some(l) => l,
        None => {
            owned = config.family.square(n, mix(seed, 1))?;
            &owned
        }
    };
    let sample = draw(l, model, mix(seed, 0))?;
    let value = evaluate(&config.property, l, &sample, mix(seed, 2))?;
    Ok(TrialRecord {
        trial: index,
        seed,
        n,
        param: model.param(),
        symbols: sample.symbols,
        value,
        micros: start.elapsed().as_micros() as u64,
    })
}

fn assess(
    config: &ExperimentConfig,
    n: usize,
    model: ResolvedModel,
    records: &[TrialRecord],
    violations: &mut Vec<Violation>,
) -> Result<GridPoint> {
    let values: Vec<PropertyValue> = records.iter().map(|r| r.value).collect();
    let aggregate = aggregate(&values);
    let mut bound_check = None;

    if let (Property::MuGeq { eps }, Some(k)) = (&config.property, model.k()) {
        let bound = tail_bound(n, k, *eps)?;
        let ceiling = three_sigma_ceiling(bound.exact, config.trials as u64);
        let frequency = aggregate.frequency.map_or(0.0, |f| f.point);
        let passed = frequency <= ceiling;
        if !passed {
            violations.push(Violation {
                n,
                check: "tail_bound".into(),
                detail: format!(
                    "Pr(mu >= {eps}) observed {frequency} exceeds {} + 3 sigma = {ceiling}",
                    bound.exact
                ),
            });
        }
        bound_check = Some(BoundCheck {
            bound,
            ceiling,
            frequency,
            passed,
        });
    }

    if config.property.is_invariant() {
        let failures: Vec<u64> = records
            .iter()
            .filter(|r| r.value == PropertyValue::Bool(false))
            .map(|r| r.trial)
            .collect();
        if !failures.is_empty() {
            violations.push(Violation {
                n,
                check: config.property.to_string(),
                detail: format!("failed in trials {failures:?}"),
            });
        }
    }

    Ok(GridPoint {
        n,
        param: model.param(),
        aggregate,
        bound_check,
    })
}

/// Runs every trial of `config` on `threads` workers (all cores when `None`).
pub fn run_experiment(config: &ExperimentConfig, threads: Option<usize>) -> Result<ExperimentReport> {
    config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(Error::InvalidConfig {
                field: "threads".into(),
                reason: "must be positive".into(),
            });
        }
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Error::InvalidConfig {
        field: "threads".into(),
        reason: e.to_string(),
    })?;

    let trials = config.trials as u64;
    let mut points = Vec::with_capacity(config.n.len());
    let mut records = Vec::with_capacity(config.n.len() * config.trials);
    let mut violations = Vec::new();
    for (pos, &n) in config.n.iter().enumerate() {
        let model = config.model.resolve(n)?;
        let shared = if config.family.per_trial() {
            None
        } else {
            Some(config.family.square(n, 0)?)
        };
        let first = pos as u64 * trials;
        let batch: Vec<TrialRecord> = pool.install(|| {
            (first..first + trials)
                .into_par_iter()
                .map(|index| run_trial(config, shared.as_ref(), n, model, index))
                .collect::<Result<_>>()
        })?;
        points.push(assess(config, n, model, &batch, &mut violations)?);
        records.extend(batch);
    }

    let mut report = ExperimentReport {
        config: config.clone(),
        points,
        records,
        violations,
        checksum: String::new(),
    };
    report.checksum = report_checksum(&report)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::TableMode;

    fn config(property: Property, model: Model, n: Vec<usize>, trials: usize) -> ExperimentConfig {
        ExperimentConfig {
            family: LatinFamily::Cyclic {
                table: TableMode::Division,
            },
            model,
            n,
            property,
            trials,
            master_seed: 2024,
        }
    }

    fn k(k: usize) -> Model {
        Model::MultisetK {
            k: Some(k),
            k_log2: None,
        }
    }

    #[test]
    fn small_mu_experiment() {
        let c = config(Property::MuGeq { eps: 0.9 }, k(2), vec![3], 10);
        let r = run_experiment(&c, Some(2)).unwrap();
        assert_eq!(r.records.len(), 10);
        let f = r.points[0].aggregate.frequency.unwrap();
        assert!((0.0..=1.0).contains(&f.point));
        assert!(r.points[0].bound_check.is_some());
        let again = run_experiment(&c, Some(1)).unwrap();
        assert!(r.records.iter().zip(&again.records).all(|(a, b)| a.same_outcome(b)));
        assert_eq!(r.points, again.points);
    }

    #[test]
    fn seeds_follow_global_index() {
        let c = config(Property::Connected, k(3), vec![5, 7], 4);
        let r = run_experiment(&c, None).unwrap();
        for (i, rec) in r.records.iter().enumerate() {
            assert_eq!(rec.trial, i as u64);
            assert_eq!(rec.seed, mix(2024, i as u64));
            assert_eq!(rec.n, if i < 4 { 5 } else { 7 });
            assert_eq!(rec.symbols.len(), 3);
        }
    }

    #[test]
    fn invariant_properties_never_fail() {
        for property in [
            Property::DegreeBounds,
            Property::PatternIdentity,
            Property::EdgeDiscrepancyHolds { pairs: 20 },
        ] {
            let model = if property == Property::DegreeBounds {
                Model::SubsetP { p: 0.3, p_n_power: 0.0 }
            } else {
                k(4)
            };
            let mut c = config(property, model, vec![9, 16], 20);
            c.family = LatinFamily::Random { seed: None };
            let r = run_experiment(&c, Some(3)).unwrap();
            assert!(r.violations.is_empty(), "{:?}", r.violations);
        }
    }

    #[test]
    fn numeric_aggregates() {
        let c = config(Property::Girth, Model::SubsetP { p: 0.5, p_n_power: 0.0 }, vec![12], 30);
        let r = run_experiment(&c, None).unwrap();
        let a = &r.points[0].aggregate;
        assert!(a.frequency.is_none());
        assert_eq!(a.trials, 30);
        let finite = r.records.iter().filter(|x| matches!(x.value, PropertyValue::Count(_))).count();
        assert_eq!(finite as u64 + a.infinite, 30);
        assert!(a.min.unwrap() >= 3.0);
    }

    #[test]
    fn aggregate_shapes() {
        let a = aggregate(&[PropertyValue::Bool(true), PropertyValue::Undefined]);
        assert_eq!(a.undefined, 1);
        assert_eq!(a.frequency.unwrap().samples, 1);
        let a = aggregate(&[PropertyValue::Count(2), PropertyValue::Real(3.0), PropertyValue::Infinite]);
        assert_eq!((a.mean, a.min, a.max, a.infinite), (Some(2.5), Some(2.0), Some(3.0), 1));
    }

    #[test]
    fn value_json_and_text() {
        let v = serde_json::to_string(&PropertyValue::Count(3)).unwrap();
        assert_eq!(v, r#"{"type":"count","value":3}"#);
        assert_eq!(PropertyValue::Infinite.to_string(), "inf");
        assert_eq!(PropertyValue::Bool(true).to_string(), "true");
    }

    #[test]
    fn rejects_invalid_config_and_threads() {
        let c = config(Property::Connected, k(3), vec![5], 0);
        assert!(matches!(run_experiment(&c, None), Err(Error::InvalidConfig { .. })));
        let c = config(Property::Connected, k(3), vec![5], 2);
        assert!(run_experiment(&c, Some(0)).is_err());
    }
}
