use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityEstimate {
    pub successes: u64,
    pub samples: u64,
    pub point: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

/// Wilson score interval at 95%.
pub fn wilson_interval(successes: u64, samples: u64) -> Result<ProbabilityEstimate> {
    if samples == 0 {
        return Err(Error::EmptySample);
    }
    let n = samples as f64;
    let p = successes as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z_95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    Ok(ProbabilityEstimate {
        successes,
        samples,
        point: p,
        wilson_low: (centre - half).max(0.0),
        wilson_high: (centre + half).min(1.0),
    })
}

pub fn estimate_probability(samples: &[bool]) -> Result<ProbabilityEstimate> {
    wilson_interval(
        samples.iter().filter(|&&b| b).count() as u64,
        samples.len() as u64,
    )
}

/// Largest frequency consistent with `Pr <= bound` at three binomial standard
/// deviations over `trials` draws.
pub fn three_sigma_ceiling(bound: f64, trials: u64) -> f64 {
    bound + 3.0 * (bound * (1.0 - bound) / trials as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_true() {
        let e = estimate_probability(&[true; 100]).unwrap();
        assert_eq!(e.point, 1.0);
        // 100 / (100 + z^2)
        assert!((e.wilson_low - 100.0 / (100.0 + Z_95 * Z_95)).abs() < 1e-12);
        assert!((e.wilson_low - 0.963).abs() < 1e-3);
        assert!((e.wilson_high - 1.0).abs() < 1e-12);
    }

    #[test]
    fn all_false_and_half() {
        let e = estimate_probability(&[false; 40]).unwrap();
        assert_eq!((e.point, e.wilson_low), (0.0, 0.0));
        let half: Vec<bool> = (0..100).map(|i| i % 2 == 0).collect();
        let e = estimate_probability(&half).unwrap();
        assert_eq!(e.point, 0.5);
        assert!((e.wilson_low + e.wilson_high - 1.0).abs() < 1e-12);
        assert!(estimate_probability(&[]).is_err());
    }

    #[test]
    fn interval_contains_point() {
        for n in 1..60u64 {
            for s in 0..=n {
                let e = wilson_interval(s, n).unwrap();
                assert!(e.wilson_low <= e.point + 1e-12 && e.point <= e.wilson_high + 1e-12);
            }
        }
    }

    #[test]
    fn ceiling() {
        assert_eq!(three_sigma_ceiling(1.0, 10), 1.0);
        assert!((three_sigma_ceiling(0.684, 300) - (0.684 + 3.0 * (0.684 * 0.316 / 300.0f64).sqrt())).abs() < 1e-15);
    }
}
