use std::fmt;

use serde::{Deserialize, Serialize};

use crate::clique_color::EXACT_CLIQUE_CAP;
use crate::connectivity::{CONNECTIVITY_CAP, HAMILTON_CAP};
use crate::error::{Error, Result};
use crate::latin::{
    cyclic_difference_table, group_table, paired_example_square, random_latin_square, GroupKind,
    GroupSpec, LatinSquare, TableMode, ORDER_CAP,
};

/// Largest order for `pattern_identity`, whose count is cubic in `|A|`.
pub const PATTERN_ORDER_CAP: usize = 256;

/// Where the Latin square of order `n` comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LatinFamily {
    Cyclic {
        #[serde(default)]
        table: TableMode,
    },
    /// `n` must be a power of `base`.
    ElementaryAbelian {
        base: usize,
        #[serde(default)]
        table: TableMode,
    },
    /// `n = 2m`.
    Dihedral {
        #[serde(default)]
        table: TableMode,
    },
    /// `n = 2r`.
    Paired,
    /// One square per experiment when `seed` is set, otherwise a fresh square
    /// per trial.
    Random {
        #[serde(default)]
        seed: Option<u64>,
    },
}

impl LatinFamily {
    fn exponent(base: usize, n: usize) -> Option<u32> {
        let mut m = 0;
        let mut v = 1usize;
        while v < n {
            v = v.checked_mul(base)?;
            m += 1;
        }
        (v == n && m > 0).then_some(m)
    }

    fn check_order(&self, n: usize) -> Result<()> {
        let bad = |reason: String| Error::InvalidConfig {
            field: "n".into(),
            reason,
        };
        if n == 0 || n > ORDER_CAP {
            return Err(bad(format!("order {n} outside 1..={ORDER_CAP}")));
        }
        match self {
            LatinFamily::ElementaryAbelian { base, .. } => {
                if *base < 2 || Self::exponent(*base, n).is_none() {
                    return Err(bad(format!("{n} is not a positive power of {base}")));
                }
            }
            LatinFamily::Dihedral { .. } if n % 2 == 1 || n < 2 => {
                return Err(bad(format!("dihedral order {n} must be even")));
            }
            LatinFamily::Paired if n % 2 == 1 || n < 4 => {
                return Err(bad(format!("paired order {n} must be even and at least 4")));
            }
            _ => {}
        }
        Ok(())
    }

    /// True when every trial needs its own square.
    pub fn per_trial(&self) -> bool {
        matches!(self, LatinFamily::Random { seed: None })
    }

    /// The square of order `n`; `trial_seed` is used only by per-trial families.
    pub fn square(&self, n: usize, trial_seed: u64) -> Result<LatinSquare> {
        self.check_order(n)?;
        let table = |group: GroupKind, table: TableMode| group_table(&GroupSpec { group, table });
        match self {
            LatinFamily::Cyclic { table: TableMode::Division } => cyclic_difference_table(n),
            LatinFamily::Cyclic { table: t } => table(GroupKind::Cyclic { n }, *t),
            LatinFamily::ElementaryAbelian { base, table: t } => table(
                GroupKind::ElementaryAbelian {
                    base: *base,
                    exponent: Self::exponent(*base, n).expect("checked"),
                },
                *t,
            ),
            LatinFamily::Dihedral { table: t } => table(GroupKind::Dihedral { m: n / 2 }, *t),
            LatinFamily::Paired => paired_example_square(n / 2),
            LatinFamily::Random { seed } => random_latin_square(n, seed.unwrap_or(trial_seed)),
        }
    }
}

/// Random graph model. `p` is multiplied by `n^p_n_power`; `k` is either
/// given or `round(k_log2 * log2 n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Model {
    SubsetP {
        p: f64,
        #[serde(default)]
        p_n_power: f64,
    },
    MultisetK {
        #[serde(default)]
        k: Option<usize>,
        #[serde(default)]
        k_log2: Option<f64>,
    },
    MultigraphK {
        #[serde(default)]
        k: Option<usize>,
        #[serde(default)]
        k_log2: Option<f64>,
    },
    ComplementP {
        p: f64,
        #[serde(default)]
        p_n_power: f64,
    },
}

/// A model with its parameter fixed for one order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResolvedModel {
    SubsetP(f64),
    MultisetK(usize),
    MultigraphK(usize),
    ComplementP(f64),
}

impl ResolvedModel {
    pub fn param(&self) -> f64 {
        match *self {
            ResolvedModel::SubsetP(p) | ResolvedModel::ComplementP(p) => p,
            ResolvedModel::MultisetK(k) | ResolvedModel::MultigraphK(k) => k as f64,
        }
    }

    pub fn k(&self) -> Option<usize> {
        match *self {
            ResolvedModel::MultisetK(k) | ResolvedModel::MultigraphK(k) => Some(k),
            _ => None,
        }
    }
}

impl Model {
    fn is_multiset(&self) -> bool {
        matches!(self, Model::MultisetK { .. } | Model::MultigraphK { .. })
    }

    pub fn resolve(&self, n: usize) -> Result<ResolvedModel> {
        let bad = |reason: String| Error::InvalidConfig {
            field: "model".into(),
            reason,
        };
        let prob = |p: f64, power: f64| {
            let v = p * (n as f64).powf(power);
            if (0.0..=1.0).contains(&v) {
                Ok(v)
            } else {
                Err(bad(format!("p = {v} at n = {n} is not a probability")))
            }
        };
        let count = |k: Option<usize>, k_log2: Option<f64>| match (k, k_log2) {
            (Some(k), None) => Ok(k),
            (None, Some(f)) if f >= 0.0 => Ok((f * (n as f64).log2()).round() as usize),
            _ => Err(bad("give exactly one of k and a non-negative k_log2".into())),
        };
        Ok(match *self {
            Model::SubsetP { p, p_n_power } => ResolvedModel::SubsetP(prob(p, p_n_power)?),
            Model::ComplementP { p, p_n_power } => ResolvedModel::ComplementP(prob(p, p_n_power)?),
            Model::MultisetK { k, k_log2 } => ResolvedModel::MultisetK(count(k, k_log2)?),
            Model::MultigraphK { k, k_log2 } => ResolvedModel::MultigraphK(count(k, k_log2)?),
        })
    }
}

fn default_pairs() -> usize {
    100
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Property {
    Connected,
    /// `mu >= eps`; the report carries the tail bound for comparison.
    MuGeq {
        eps: f64,
    },
    Omega,
    Alpha,
    ChiGreedy,
    ThetaGreedy,
    Kappa,
    Lambda,
    Hamiltonian,
    Girth,
    Diameter,
    TriangleAt0,
    /// `|S| - 1 <= delta <= Delta <= 2|S|` for the sampled support `S`.
    DegreeBounds,
    /// The edge distribution inequality over `pairs` random `(A, B)`.
    EdgeDiscrepancyHolds {
        #[serde(default = "default_pairs")]
        pairs: usize,
    },
    /// The pattern counting identity for a random vertex subset.
    PatternIdentity,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Property::Connected => "connected",
            Property::MuGeq { eps } => return write!(f, "mu_geq({eps})"),
            Property::Omega => "omega",
            Property::Alpha => "alpha",
            Property::ChiGreedy => "chi_greedy",
            Property::ThetaGreedy => "theta_greedy",
            Property::Kappa => "kappa",
            Property::Lambda => "lambda",
            Property::Hamiltonian => "hamiltonian",
            Property::Girth => "girth",
            Property::Diameter => "diameter",
            Property::TriangleAt0 => "triangle_at_0",
            Property::DegreeBounds => "degree_bounds",
            Property::EdgeDiscrepancyHolds { .. } => "edge_discrepancy_holds",
            Property::PatternIdentity => "pattern_identity",
        };
        f.write_str(name)
    }
}

impl Property {
    /// Properties that must hold in every trial.
    pub fn is_invariant(&self) -> bool {
        matches!(
            self,
            Property::DegreeBounds | Property::EdgeDiscrepancyHolds { .. } | Property::PatternIdentity
        )
    }

    fn order_range(&self) -> (usize, usize) {
        match self {
            Property::Omega | Property::Alpha => (1, EXACT_CLIQUE_CAP),
            Property::Kappa | Property::Lambda => (1, CONNECTIVITY_CAP),
            Property::Hamiltonian => (3, HAMILTON_CAP),
            Property::PatternIdentity => (1, PATTERN_ORDER_CAP),
            _ => (1, ORDER_CAP),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub family: LatinFamily,
    pub model: Model,
    pub n: Vec<usize>,
    pub property: Property,
    pub trials: usize,
    pub master_seed: u64,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, reason: String| Error::InvalidConfig {
            field: field.into(),
            reason,
        };
        if self.trials == 0 {
            return Err(bad("trials", "at least one trial is required".into()));
        }
        if self.n.is_empty() {
            return Err(bad("n", "the grid is empty".into()));
        }
        let needs_multiset = matches!(
            self.property,
            Property::MuGeq { .. } | Property::EdgeDiscrepancyHolds { .. }
        );
        if needs_multiset && !self.model.is_multiset() {
            return Err(bad(
                "property",
                format!("{} needs a multiset_k or multigraph_k model", self.property),
            ));
        }
        if self.property == Property::DegreeBounds && matches!(self.model, Model::ComplementP { .. }) {
            return Err(bad("property", "degree_bounds is undefined for complement_p".into()));
        }
        if let Property::MuGeq { eps } = self.property {
            if !(eps > 0.0 && eps < 1.0) {
                return Err(bad("property", format!("eps = {eps} must lie in (0, 1)")));
            }
        }
        if let Property::EdgeDiscrepancyHolds { pairs: 0 } = self.property {
            return Err(bad("property", "pairs must be positive".into()));
        }
        let (lo, hi) = self.property.order_range();
        for &n in &self.n {
            if n < lo || n > hi {
                return Err(bad(
                    "n",
                    format!("{} requires {lo} <= n <= {hi}, got {n}", self.property),
                ));
            }
            self.family.check_order(n)?;
            let model = self.model.resolve(n)?;
            if needs_multiset && model.k() == Some(0) {
                return Err(bad("model", format!("{} needs k >= 1", self.property)));
            }
        }
        Ok(())
    }
}
