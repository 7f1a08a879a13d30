//! Closed-form dissimilarities between Cauchy densities.
//!
//! Every formula here is a function of the single conformal term
//! `δ(λ₁, λ₂) = ‖λ₁ − λ₂‖² / (2 s₁ s₂)`, which is also the chi-square
//! divergence. The dually flat coordinate machinery lives in [`dual`].

pub mod dual;

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

use crate::matrix::Matrix2;
use crate::oracle::quadrature;
use crate::{Error, Result};

pub use dual::{
    bregman_conjugate_energy, bregman_free_energy, conjugate_energy, fenchel_young_gap,
    fenchel_young_gap_conjugate, free_energy, from_dual, from_natural, grad_conjugate_energy,
    grad_free_energy, hessian_conjugate_energy, hessian_free_energy, to_dual, to_natural,
    DualParam, NaturalParam,
};

/// Location-scale pair `(l, s)` of a Cauchy density, `s > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyParam {
    l: f64,
    s: f64,
}

impl CauchyParam {
    pub fn new(l: f64, s: f64) -> Result<Self> {
        if !l.is_finite() {
            return Err(Error::NonFinite("location"));
        }
        if !s.is_finite() {
            return Err(Error::NonFinite("scale"));
        }
        if s <= 0.0 {
            return Err(Error::NonPositiveScale(s));
        }
        Ok(CauchyParam { l, s })
    }

    /// The standard Cauchy density `(0, 1)`.
    pub const STANDARD: CauchyParam = CauchyParam { l: 0.0, s: 1.0 };

    #[inline]
    pub fn location(&self) -> f64 {
        self.l
    }

    #[inline]
    pub fn scale(&self) -> f64 {
        self.s
    }

    /// Density at `x`.
    pub fn pdf(&self, x: f64) -> f64 {
        let d = x - self.l;
        self.s / (PI * (self.s * self.s + d * d))
    }

    /// Express `other` in the standard frame of `self`: `((l₂−l₁)/s₁, s₂/s₁)`.
    pub fn standardize(&self, other: CauchyParam) -> CauchyParam {
        CauchyParam {
            l: (other.l - self.l) / self.s,
            s: other.s / self.s,
        }
    }
}

impl fmt::Display for CauchyParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.l, self.s)
    }
}

/// Which dissimilarity a diagram or labeling refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DivergenceKind {
    FisherRao,
    KL,
    SqrtKL,
    ChiSquare,
    FlatForward,
    FlatReverse,
}

impl DivergenceKind {
    pub const ALL: [DivergenceKind; 6] = [
        DivergenceKind::FisherRao,
        DivergenceKind::KL,
        DivergenceKind::SqrtKL,
        DivergenceKind::ChiSquare,
        DivergenceKind::FlatForward,
        DivergenceKind::FlatReverse,
    ];

    /// The kinds whose Voronoi diagram is the hyperbolic one.
    pub const HYPERBOLIC: [DivergenceKind; 5] = [
        DivergenceKind::FisherRao,
        DivergenceKind::KL,
        DivergenceKind::SqrtKL,
        DivergenceKind::ChiSquare,
        DivergenceKind::FlatForward,
    ];

    pub fn is_hyperbolic(self) -> bool {
        self != DivergenceKind::FlatReverse
    }

    /// Evaluate the dissimilarity from a generator (first slot) to a query.
    ///
    /// For `FlatReverse` this is `flat_divergence(query, generator)`.
    pub fn evaluate(self, generator: CauchyParam, query: CauchyParam) -> f64 {
        match self {
            DivergenceKind::FisherRao => fisher_rao(generator, query),
            DivergenceKind::KL => kl(generator, query),
            DivergenceKind::SqrtKL => sqrt_kl(generator, query),
            DivergenceKind::ChiSquare => chi_square(generator, query),
            DivergenceKind::FlatForward => flat_divergence(generator, query),
            DivergenceKind::FlatReverse => flat_divergence_reverse(generator, query),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DivergenceKind::FisherRao => "fisher-rao",
            DivergenceKind::KL => "kl",
            DivergenceKind::SqrtKL => "sqrt-kl",
            DivergenceKind::ChiSquare => "chi-square",
            DivergenceKind::FlatForward => "flat-forward",
            DivergenceKind::FlatReverse => "flat-reverse",
        }
    }
}

impl fmt::Display for DivergenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for DivergenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DivergenceKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown divergence kind `{s}`")))
    }
}

/// `log(x + √(x² − 1))`, with inputs below `1 + 1e-14` mapped to 0.
pub fn arccosh(x: f64) -> f64 {
    if x < 1.0 + 1e-14 {
        0.0
    } else {
        (x + (x * x - 1.0).sqrt()).ln()
    }
}

/// Chi-square divergence, equal to the conformal term `δ`.
pub fn chi_square(a: CauchyParam, b: CauchyParam) -> f64 {
    let dl = b.l - a.l;
    let ds = b.s - a.s;
    (dl * dl + ds * ds) / (2.0 * a.s * b.s)
}

/// Fisher-Rao distance.
pub fn fisher_rao(a: CauchyParam, b: CauchyParam) -> f64 {
    if a.l == b.l {
        (a.s / b.s).ln().abs() / SQRT_2
    } else {
        arccosh(1.0 + chi_square(a, b)) / SQRT_2
    }
}

/// Kullback-Leibler divergence; symmetric on the Cauchy family.
pub fn kl(a: CauchyParam, b: CauchyParam) -> f64 {
    (0.5 * chi_square(a, b)).ln_1p()
}

/// Square root of the KL divergence, a metric distance.
pub fn sqrt_kl(a: CauchyParam, b: CauchyParam) -> f64 {
    kl(a, b).sqrt()
}

/// Flat (Bregman-Tsallis) divergence `(π/s₁)‖λ₁ − λ₂‖²`.
pub fn flat_divergence(a: CauchyParam, b: CauchyParam) -> f64 {
    let dl = a.l - b.l;
    let ds = a.s - b.s;
    PI / a.s * (dl * dl + ds * ds)
}

/// Reverse flat divergence `flat_divergence(b, a)`.
pub fn flat_divergence_reverse(a: CauchyParam, b: CauchyParam) -> f64 {
    flat_divergence(b, a)
}

/// Chernoff coefficient `∫ p_a³ p_b⁻²`.
pub fn chernoff_coefficient_3(a: CauchyParam, b: CauchyParam) -> f64 {
    let (s1, s2) = (a.s * a.s, b.s * b.s);
    let d = b.l - a.l;
    let d2 = d * d;
    let num = 3.0 * s2 * s2
        + (2.0 * s1 + 6.0 * d2) * s2
        + 3.0 * s1 * s1
        + 6.0 * d2 * s1
        + 3.0 * d2 * d2;
    num / (8.0 * s1 * s2)
}

/// Chernoff coefficient `C_α[a:b] = ∫ p_a^α p_b^{1−α}`.
///
/// Closed forms are used for `α ∈ {0, 1, 2, 3}` and the skew-symmetric
/// partners `α ∈ {−1, −2}`; other orders are integrated numerically.
pub fn chernoff_coefficient(alpha: f64, a: CauchyParam, b: CauchyParam) -> Result<f64> {
    if !alpha.is_finite() {
        return Err(Error::NonFinite("alpha"));
    }
    if alpha == 0.0 || alpha == 1.0 {
        return Ok(1.0);
    }
    if alpha == 2.0 || alpha == -1.0 {
        return Ok(1.0 + chi_square(a, b));
    }
    if alpha == 3.0 || alpha == -2.0 {
        return Ok(chernoff_coefficient_3(a, b));
    }
    Ok(quadrature::integrate_chernoff(alpha, a, b)?.value)
}

/// α-divergence `(1 − C_α) / (α(1 − α))`, `α ∉ {0, 1}`.
pub fn alpha_divergence(alpha: f64, a: CauchyParam, b: CauchyParam) -> Result<f64> {
    if alpha == 0.0 || alpha == 1.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let c = chernoff_coefficient(alpha, a, b)?;
    Ok((1.0 - c) / (alpha * (1.0 - alpha)))
}

/// `t(u) = arccosh(1 + u)/√2`, mapping chi-square values to Fisher-Rao distances.
pub fn convert_chi_to_fr(u: f64) -> Result<f64> {
    if u.is_nan() || u < 0.0 {
        return Err(Error::NegativeArgument(u));
    }
    Ok(arccosh(1.0 + u) / SQRT_2)
}

/// `t(u) = log(1/2 + cosh(√2 u)/2)`, mapping Fisher-Rao distances to KL values.
pub fn convert_fr_to_kl(u: f64) -> Result<f64> {
    if u.is_nan() || u < 0.0 {
        return Err(Error::NegativeArgument(u));
    }
    // cosh(x) − 1 = 2 sinh²(x/2) keeps precision near zero
    let half = (u / SQRT_2).sinh();
    Ok((half * half).ln_1p())
}

/// `log(A/G)` of the arithmetic and geometric means of two scales.
pub fn jensen_bregman_burg(s1: f64, s2: f64) -> Result<f64> {
    if !(s1 > 0.0) {
        return Err(Error::NonPositiveScale(s1));
    }
    if !(s2 > 0.0) {
        return Err(Error::NonPositiveScale(s2));
    }
    let arithmetic = 0.5 * (s1 + s2);
    let geometric = (s1 * s2).sqrt();
    Ok((arithmetic / geometric).ln())
}

/// Fisher information metric `(1/(2s²)) I` in `(l, s)` coordinates.
pub fn fisher_metric(a: CauchyParam) -> Matrix2 {
    Matrix2::scaled_identity(1.0 / (2.0 * a.s * a.s))
}

/// Jacobian `∂θ/∂λ` of the natural parameterization.
pub fn jacobian_natural(a: CauchyParam) -> Matrix2 {
    let (l, s) = (a.l, a.s);
    Matrix2::new(2.0 * PI / s, -2.0 * PI * l / (s * s), 0.0, PI / (s * s))
}

/// Jacobian `∂λ/∂θ` of the inverse map.
pub fn jacobian_location_scale(t: NaturalParam) -> Matrix2 {
    let (t1, t2) = (t.t1(), t.t2());
    Matrix2::new(-1.0 / (2.0 * t2), t1 / (2.0 * t2 * t2), 0.0, PI / (t2 * t2))
}

/// The Hessian metric of the free energy pulled back to `(l, s)` coordinates.
pub fn flat_metric(a: CauchyParam) -> Matrix2 {
    hessian_free_energy(to_natural(a))
        .expect("natural parameters of a valid CauchyParam are in the domain")
        .congruence(&jacobian_natural(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(l: f64, s: f64) -> CauchyParam {
        CauchyParam::new(l, s).unwrap()
    }

    #[test]
    fn rejects_invalid_params() {
        assert_eq!(CauchyParam::new(0.0, 0.0), Err(Error::NonPositiveScale(0.0)));
        assert_eq!(CauchyParam::new(0.0, -1.0), Err(Error::NonPositiveScale(-1.0)));
        assert!(CauchyParam::new(f64::NAN, 1.0).is_err());
        assert!(CauchyParam::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn chi_square_examples() {
        assert_eq!(chi_square(p(0.0, 1.0), p(0.0, 1.0)), 0.0);
        assert_eq!(chi_square(p(0.0, 1.0), p(0.0, 2.0)), 0.25);
        assert_eq!(chi_square(p(0.0, 1.0), p(1.0, 1.0)), 0.5);
    }

    #[test]
    fn fisher_rao_examples() {
        assert_eq!(fisher_rao(p(0.0, 1.0), p(0.0, 1.0)), 0.0);
        let expected = 2f64.ln() / SQRT_2;
        assert!((fisher_rao(p(0.0, 1.0), p(0.0, 2.0)) - expected).abs() < 1e-15);
        // the arccosh branch agrees with the equal-location branch
        assert!((arccosh(1.25) - 2f64.ln()).abs() < 1e-15);
        let fr = fisher_rao(p(0.0, 1.0), p(1.0, 1.0));
        assert!((fr - 0.680_536_289_373_600_4).abs() < 1e-12, "{fr}");
    }

    #[test]
    fn kl_examples() {
        assert_eq!(kl(p(0.0, 1.0), p(0.0, 1.0)), 0.0);
        assert!((kl(p(0.0, 1.0), p(0.0, 2.0)) - (9.0f64 / 8.0).ln()).abs() < 1e-15);
        assert!((kl(p(0.0, 1.0), p(1.0, 1.0)) - 1.25f64.ln()).abs() < 1e-15);
        assert!((sqrt_kl(p(0.0, 1.0), p(0.0, 2.0)) - (9.0f64 / 8.0).ln().sqrt()).abs() < 1e-15);
        assert!((sqrt_kl(p(0.0, 1.0), p(0.0, 2.0)) - 0.34320).abs() < 1e-5);
    }

    #[test]
    fn flat_divergence_examples() {
        assert_eq!(flat_divergence(p(0.0, 1.0), p(0.0, 1.0)), 0.0);
        assert!((flat_divergence(p(0.0, 1.0), p(0.0, 2.0)) - PI).abs() < 1e-15);
        assert!((flat_divergence(p(0.0, 2.0), p(0.0, 1.0)) - PI / 2.0).abs() < 1e-15);
        assert!((flat_divergence_reverse(p(0.0, 1.0), p(0.0, 2.0)) - PI / 2.0).abs() < 1e-15);
        assert!((flat_divergence_reverse(p(0.0, 2.0), p(0.0, 1.0)) - PI).abs() < 1e-15);
        assert_eq!(flat_divergence_reverse(p(3.0, 0.5), p(3.0, 0.5)), 0.0);
    }

    #[test]
    fn flat_divergence_is_conformal_delta() {
        let (a, b) = (p(-1.5, 0.7), p(2.0, 3.1));
        let via_delta = 2.0 * PI * b.scale() * chi_square(a, b);
        assert!((flat_divergence(a, b) - via_delta).abs() < 1e-12);
    }

    #[test]
    fn chernoff_3_examples() {
        assert!((chernoff_coefficient_3(p(1.3, 0.4), p(1.3, 0.4)) - 1.0).abs() < 1e-15);
        assert!((chernoff_coefficient_3(p(0.0, 1.0), p(0.0, 2.0)) - 59.0 / 32.0).abs() < 1e-15);
        let (a, b) = (p(0.0, 1.0), p(3.0, 2.0));
        assert!((chernoff_coefficient_3(a, b) - chernoff_coefficient_3(b, a)).abs() < 1e-12);
    }

    #[test]
    fn chernoff_3_equal_location_form() {
        let (s1, s2) = (0.7, 2.3);
        let a = p(4.0, s1);
        let b = p(4.0, s2);
        let d = s1 * s1 - s2 * s2;
        let expected = 1.0 + 0.75 * d * d / (2.0 * s1 * s1 * s2 * s2);
        assert!((chernoff_coefficient_3(a, b) - expected).abs() < 1e-12);
    }

    #[test]
    fn alpha_divergence_examples() {
        let v = alpha_divergence(3.0, p(0.0, 1.0), p(0.0, 2.0)).unwrap();
        assert!((v - 27.0 / 192.0).abs() < 1e-15);
        assert_eq!(alpha_divergence(3.0, p(1.0, 2.0), p(1.0, 2.0)).unwrap(), 0.0);
        assert_eq!(alpha_divergence(0.0, p(0.0, 1.0), p(0.0, 2.0)), Err(Error::InvalidAlpha(0.0)));
        assert_eq!(alpha_divergence(1.0, p(0.0, 1.0), p(0.0, 2.0)), Err(Error::InvalidAlpha(1.0)));
        // α = 2 is half the chi-square divergence
        let (a, b) = (p(0.0, 1.0), p(1.0, 1.0));
        assert!((alpha_divergence(2.0, a, b).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn conversions() {
        assert_eq!(convert_chi_to_fr(0.0).unwrap(), 0.0);
        assert!((convert_chi_to_fr(0.25).unwrap() - 2f64.ln() / SQRT_2).abs() < 1e-15);
        assert_eq!(convert_fr_to_kl(0.0).unwrap(), 0.0);
        assert!(convert_chi_to_fr(-1e-3).is_err());
        assert!(convert_fr_to_kl(-1.0).is_err());
        let u = 0.9;
        let direct = (0.5 + 0.5 * (SQRT_2 * u).cosh()).ln();
        assert!((convert_fr_to_kl(u).unwrap() - direct).abs() < 1e-14);
    }

    #[test]
    fn jensen_bregman_burg_examples() {
        assert_eq!(jensen_bregman_burg(2.5, 2.5).unwrap(), 0.0);
        let v = jensen_bregman_burg(1.0, 2.0).unwrap();
        assert!((v - (1.5 / SQRT_2).ln()).abs() < 1e-15);
        assert!((v - 0.058_891_517_828_191_64).abs() < 1e-15);
        assert!((2.0 * v - (9.0f64 / 8.0).ln()).abs() < 1e-15);
        assert!((jensen_bregman_burg(2.0, 4.0).unwrap() - v).abs() < 1e-15);
        assert!(jensen_bregman_burg(0.0, 1.0).is_err());
        assert!(jensen_bregman_burg(1.0, -2.0).is_err());
    }

    #[test]
    fn jensen_burg_matches_scale_kl() {
        for (s1, s2) in [(0.3, 4.0), (1.0, 1.1), (7.0, 0.2)] {
            let k = kl(p(-2.0, s1), p(-2.0, s2));
            assert!((k - 2.0 * jensen_bregman_burg(s1, s2).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn fisher_metric_examples() {
        assert_eq!(fisher_metric(p(0.0, 1.0)), Matrix2::diag(0.5, 0.5));
        assert_eq!(fisher_metric(p(0.0, 2.0)), Matrix2::diag(0.125, 0.125));
    }

    #[test]
    fn jacobians_are_mutually_inverse() {
        let a = p(1.7, 0.6);
        let prod = jacobian_natural(a) * jacobian_location_scale(to_natural(a));
        assert!((prod - Matrix2::IDENTITY).max_abs() < 1e-14);
    }

    #[test]
    fn kind_parsing_round_trips() {
        for k in DivergenceKind::ALL {
            assert_eq!(k.name().parse::<DivergenceKind>().unwrap(), k);
        }
        assert!("hellinger".parse::<DivergenceKind>().is_err());
    }
}
