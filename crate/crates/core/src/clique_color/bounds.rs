//! Closed-form bounds on clique, independence, chromatic and clique cover
//! numbers of the subset model at edge probability parameter `p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bound value; `None` when the formula is undefined (a non-positive
/// denominator). Vacuous means undefined, `<= 0`, or larger than `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub value: Option<f64>,
    pub vacuous: bool,
}

impl Bound {
    fn new(value: f64, n: f64) -> Self {
        if !value.is_finite() {
            return Self::undefined();
        }
        Self {
            value: Some(value),
            vacuous: value <= 0.0 || value > n,
        }
    }

    fn undefined() -> Self {
        Self {
            value: None,
            vacuous: true,
        }
    }

    /// `n / u`, undefined when `u <= 0`.
    fn ratio(n: f64, u: f64) -> Self {
        if u <= 0.0 {
            Self::undefined()
        } else {
            Self::new(n / u, n)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSheet {
    pub n: u64,
    pub p: f64,
    /// `1 / (2p - p^2)`
    pub d_clique: f64,
    /// `1 / (1 - p)`
    pub d_independence: f64,
    /// `1 / p`
    pub d_cover: f64,

    /// `omega <= 27 (log_d n)^2`, `d = d_clique`.
    pub clique_upper: Bound,
    /// `alpha <= 27 (log_d n)^2`, `d = d_independence`.
    pub independence_upper: Bound,
    /// `theta >= n / clique_upper`.
    pub clique_cover_lower: Bound,
    /// `chi >= n / independence_upper`.
    pub chromatic_lower: Bound,

    /// `1/4 log_d n - 1/2 log_d log_d n - 2`, `d = d_independence`.
    pub u_list: f64,
    /// `chi_l <= n / u_list`.
    pub list_chromatic_upper: Bound,
    /// `chi <= n / u_list`.
    pub chromatic_upper: Bound,

    /// `1/2 log_d n - log_d log_d n - 6`, `d = d_cover`.
    pub u_cover: f64,
    /// As `u_cover` with a natural outer logarithm.
    pub u_cover_natural_log: f64,
    /// `theta <= n / u_cover`.
    pub clique_cover_upper: Bound,
    pub clique_cover_upper_natural_log: Bound,

    /// `alpha >= 1/2 log_d n - log_d log_d n - 6`, `d = d_independence`.
    pub independence_lower: Bound,
    pub independence_lower_natural_log: Bound,
    /// `omega >= 1/4 log_d n - 1/2 log_d log_d n - 2`, `d = d_cover`.
    pub clique_lower: Bound,
}

fn log_base(d: f64, x: f64) -> f64 {
    x.ln() / d.ln()
}

fn quarter_form(n: f64, d: f64) -> f64 {
    let l = log_base(d, n);
    0.25 * l - 0.5 * log_base(d, l) - 2.0
}

fn half_form(n: f64, d: f64, natural_outer: bool) -> f64 {
    let l = log_base(d, n);
    let outer = if natural_outer { l.ln() } else { log_base(d, l) };
    0.5 * l - outer - 6.0
}

fn squared_form(n: f64, d: f64) -> f64 {
    27.0 * log_base(d, n).powi(2)
}

pub fn theory_bounds(n: u64, p: f64) -> Result<BoundSheet> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    if n < 2 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n as f64,
            domain: "n >= 2",
        });
    }
    let nf = n as f64;
    let d_clique = 1.0 / (2.0 * p - p * p);
    let d_independence = 1.0 / (1.0 - p);
    let d_cover = 1.0 / p;

    let clique_upper = squared_form(nf, d_clique);
    let independence_upper = squared_form(nf, d_independence);
    let u_list = quarter_form(nf, d_independence);
    let u_cover = half_form(nf, d_cover, false);
    let u_cover_natural_log = half_form(nf, d_cover, true);

    Ok(BoundSheet {
        n,
        p,
        d_clique,
        d_independence,
        d_cover,
        clique_upper: Bound::new(clique_upper, nf),
        independence_upper: Bound::new(independence_upper, nf),
        clique_cover_lower: Bound::ratio(nf, clique_upper),
        chromatic_lower: Bound::ratio(nf, independence_upper),
        u_list,
        list_chromatic_upper: Bound::ratio(nf, u_list),
        chromatic_upper: Bound::ratio(nf, u_list),
        u_cover,
        u_cover_natural_log,
        clique_cover_upper: Bound::ratio(nf, u_cover),
        clique_cover_upper_natural_log: Bound::ratio(nf, u_cover_natural_log),
        independence_lower: Bound::new(half_form(nf, d_independence, false), nf),
        independence_lower_natural_log: Bound::new(half_form(nf, d_independence, true), nf),
        clique_lower: Bound::new(quarter_form(nf, d_cover), nf),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_1024_half() {
        let b = theory_bounds(1024, 0.5).unwrap();
        assert!((b.d_clique - 4.0 / 3.0).abs() < 1e-12);
        // log_{4/3} 1024 = 24.0942...
        let v = b.clique_upper.value.unwrap();
        assert!((v - 27.0 * 24.0942_f64.powi(2)).abs() < 1.0, "{v}");
        assert!(b.clique_upper.vacuous);
        // 2.5 - 0.5 log2 10 - 2
        assert!((b.u_list - (-1.160964)).abs() < 1e-5, "{}", b.u_list);
        assert!(b.chromatic_upper.vacuous);
        assert_eq!(b.chromatic_upper.value, None);
        assert!(b.clique_cover_upper.vacuous);
        // (1024 / 15674) is a positive lower bound below n
        assert!(!b.clique_cover_lower.vacuous);
    }

    #[test]
    fn n_two_pow_forty_half() {
        let b = theory_bounds(1 << 40, 0.5).unwrap();
        let expected_u = 10.0 - 0.5 * 40f64.log2() - 2.0;
        assert!((b.u_list - expected_u).abs() < 1e-9);
        assert!((b.u_list - 5.339).abs() < 1e-3);
        assert!(!b.chromatic_upper.vacuous);
        let v = b.chromatic_upper.value.unwrap();
        assert!((v - (1u64 << 40) as f64 / expected_u).abs() / v < 1e-12);
    }

    #[test]
    fn both_outer_log_variants() {
        let b = theory_bounds(1 << 40, 0.5).unwrap();
        assert!((b.u_cover - (20.0 - 40f64.log2() - 6.0)).abs() < 1e-9);
        assert!((b.u_cover_natural_log - (20.0 - 40f64.ln() - 6.0)).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(theory_bounds(100, 0.0).is_err());
        assert!(theory_bounds(100, 1.0).is_err());
        assert!(theory_bounds(1, 0.5).is_err());
    }

    #[test]
    fn serializes_all_fields() {
        let v = serde_json::to_value(theory_bounds(1024, 0.3).unwrap()).unwrap();
        for key in [
            "clique_upper",
            "independence_upper",
            "clique_cover_lower",
            "chromatic_lower",
            "list_chromatic_upper",
            "chromatic_upper",
            "clique_cover_upper",
            "clique_cover_upper_natural_log",
            "independence_lower",
            "clique_lower",
        ] {
            assert!(v[key]["vacuous"].is_boolean(), "{key}");
        }
    }
}
