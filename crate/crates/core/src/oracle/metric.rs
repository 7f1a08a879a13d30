//! Randomized checks of the metric axioms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::divergences::{fisher_rao, sqrt_kl, CauchyParam};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricTag {
    SqrtKL,
    FisherRao,
}

impl MetricTag {
    pub fn distance(self, a: CauchyParam, b: CauchyParam) -> f64 {
        match self {
            MetricTag::SqrtKL => sqrt_kl(a, b),
            MetricTag::FisherRao => fisher_rao(a, b),
        }
    }
}

/// Outcome of a batch of triangle-inequality trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleReport {
    pub metric: MetricTag,
    pub trials: usize,
    pub seed: u64,
    /// `max d(a,c) − d(a,b) − d(b,c)`; non-positive when the inequality holds.
    pub worst_violation: f64,
    pub worst_triple: [CauchyParam; 3],
}

/// A uniformly random parameter in `l ∈ l_range`, `s ∈ s_range`.
pub fn random_param<R: Rng>(rng: &mut R, l_range: (f64, f64), s_range: (f64, f64)) -> CauchyParam {
    let l = rng.random_range(l_range.0..l_range.1);
    let s = rng.random_range(s_range.0..s_range.1);
    CauchyParam::new(l, s).expect("sampling range lies in the half-plane")
}

/// `d(a,c) − d(a,b) − d(b,c)`.
pub fn triangle_violation(metric: MetricTag, a: CauchyParam, b: CauchyParam, c: CauchyParam) -> f64 {
    metric.distance(a, c) - metric.distance(a, b) - metric.distance(b, c)
}

/// Random triples with `l ∈ [−10, 10]`, `s ∈ [0.05, 20]`.
pub fn triangle_inequality_trials(metric: MetricTag, trials: usize, seed: u64) -> Result<TriangleReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = TriangleReport {
        metric,
        trials,
        seed,
        worst_violation: f64::NEG_INFINITY,
        worst_triple: [CauchyParam::STANDARD; 3],
    };
    for _ in 0..trials {
        let t = [(); 3].map(|_| random_param(&mut rng, (-10.0, 10.0), (0.05, 20.0)));
        let v = triangle_violation(metric, t[0], t[1], t[2]);
        if v > report.worst_violation {
            report.worst_violation = v;
            report.worst_triple = t;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(l: f64, s: f64) -> CauchyParam {
        CauchyParam::new(l, s).unwrap()
    }

    #[test]
    fn degenerate_triple() {
        let a = p(0.4, 2.0);
        assert_eq!(triangle_violation(MetricTag::SqrtKL, a, a, a), 0.0);
        assert_eq!(triangle_violation(MetricTag::FisherRao, a, a, a), 0.0);
    }

    #[test]
    fn geodesic_triple_is_tight() {
        let v = triangle_violation(MetricTag::FisherRao, p(0.0, 1.0), p(0.0, 2.0), p(0.0, 4.0));
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn seeded_trials_are_reproducible() {
        let r1 = triangle_inequality_trials(MetricTag::SqrtKL, 1000, 7).unwrap();
        let r2 = triangle_inequality_trials(MetricTag::SqrtKL, 1000, 7).unwrap();
        assert_eq!(r1, r2);
        assert!(r1.worst_violation <= 1e-12);
        assert!(triangle_inequality_trials(MetricTag::FisherRao, 0, 7).is_err());
    }
}
