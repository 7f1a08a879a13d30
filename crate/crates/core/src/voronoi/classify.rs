//! Nearest-generator classification of a sample through a robust
//! location-scale estimate.

use crate::divergences::{fisher_rao, CauchyParam};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub index: usize,
    pub estimate: CauchyParam,
    pub distance: f64,
}

/// Sample quantile with plotting position `p(n + 1)` (Hyndman-Fan type 6),
/// linearly interpolated and clamped to the sample range. `sorted` must be
/// ascending and non-empty.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let h = p * (n as f64 + 1.0);
    if h <= 1.0 {
        return sorted[0];
    }
    if h >= n as f64 {
        return sorted[n - 1];
    }
    let lo = h.floor() as usize; // 1-based index of the lower order statistic
    let frac = h - lo as f64;
    sorted[lo - 1] + frac * (sorted[lo] - sorted[lo - 1])
}

/// `(median, half interquartile range)`. The standard Cauchy quartiles are
/// `±1`, so half the IQR estimates the scale.
pub fn estimate_location_scale(samples: &[f64]) -> Result<CauchyParam> {
    if samples.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: samples.len(),
        });
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("sample"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = quantile(&sorted, 0.5);
    let iqr = quantile(&sorted, 0.75) - quantile(&sorted, 0.25);
    if !(iqr > 0.0) {
        return Err(Error::ZeroSpread);
    }
    CauchyParam::new(median, 0.5 * iqr)
}

/// Index of the generator nearest (Fisher-Rao) to the sample's estimate;
/// ties go to the lowest index.
pub fn classify_nearest(generators: &[CauchyParam], samples: &[f64]) -> Result<Classification> {
    if generators.is_empty() {
        return Err(Error::EmptyInput);
    }
    let estimate = estimate_location_scale(samples)?;
    let (mut index, mut distance) = (0, f64::INFINITY);
    for (i, &g) in generators.iter().enumerate() {
        let d = fisher_rao(g, estimate);
        if d < distance {
            index = i;
            distance = d;
        }
    }
    Ok(Classification {
        index,
        estimate,
        distance,
    })
}
