//! Empirical distributions of attenuation over a map.
//!
//! Unreachable cells never enter a curve; the share of reachable cells is
//! reported separately by the engine.

use crate::engine::PathlossMap;
use crate::error::{Error, Result};

/// Empirical CDF: sorted samples with `P(i) = i/n` at the i-th value.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfCurve {
    values: Vec<f64>,
    probabilities: Vec<f64>,
}

impl CdfCurve {
    pub fn from_samples(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::NoReachableCells);
        }
        samples.sort_by(f64::total_cmp);
        let n = samples.len() as f64;
        let probabilities = (1..=samples.len()).map(|i| i as f64 / n).collect();
        Ok(CdfCurve {
            values: samples,
            probabilities,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Fraction of samples `<= v`.
    pub fn eval(&self, v: f64) -> f64 {
        let k = self.values.partition_point(|&x| x <= v);
        k as f64 / self.values.len() as f64
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn median(&self) -> f64 {
        self.quantile(0.5)
    }

    fn quantile(&self, q: f64) -> f64 {
        let n = self.values.len();
        // smallest i (1-based) with i/n >= q
        let i = ((q * n as f64).ceil() as usize).clamp(1, n);
        // guard against q·n rounding just above an integer
        let i = if i > 1 && (i - 1) as f64 / n as f64 >= q { i - 1 } else { i };
        self.values[i - 1]
    }
}

/// Empirical CDF over the reachable cells of `map`.
pub fn cdf(map: &PathlossMap) -> Result<CdfCurve> {
    CdfCurve::from_samples(map.reachable_values().collect())
}

/// Lower empirical quantile: the smallest sample `v` with `CDF(v) >= q`.
pub fn percentile(curve: &CdfCurve, q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::Fraction(q));
    }
    Ok(curve.quantile(q))
}
