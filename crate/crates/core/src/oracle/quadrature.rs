//! Adaptive Gauss-Kronrod quadrature of f-divergences and Chernoff
//! coefficients between Cauchy densities.
//!
//! With `x = l₁ + s₁ tan t` the first density becomes uniform,
//! `p_a(x) dx = dt/π`, and the likelihood ratio is
//!
//! ```text
//! r(t) = p_b/p_a = s₁ s₂ / (s₂² cos²t + (s₁ sin t − Δ cos t)²),   Δ = l₂ − l₁
//! ```
//!
//! which is bounded on `[−π/2, π/2]` and tends to `s₂/s₁` at both ends. Every
//! integral below is `(1/π) ∫ g(r(t)) dt` for some `g`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::divergences::CauchyParam;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Integrand generator `f` of an f-divergence `∫ p_a f(p_b/p_a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FGenerator {
    /// `−log u`: `KL(a:b)`.
    KL,
    /// `u log u`: `KL(b:a)`.
    ReverseKL,
    /// `(u − 1)²`: Pearson chi-square.
    ChiSquare,
    /// `(u^{1−α} − u)/(α(α − 1))`: the α-divergence, `α ∉ {0, 1}`.
    Alpha(f64),
}

impl FGenerator {
    fn validate(self) -> Result<()> {
        if let FGenerator::Alpha(a) = self {
            if !a.is_finite() {
                return Err(Error::NonFinite("alpha"));
            }
            if a == 0.0 || a == 1.0 {
                return Err(Error::InvalidAlpha(a));
            }
        }
        Ok(())
    }

    pub fn eval(self, u: f64) -> f64 {
        match self {
            FGenerator::KL => -u.ln(),
            FGenerator::ReverseKL => u * u.ln(),
            FGenerator::ChiSquare => (u - 1.0) * (u - 1.0),
            FGenerator::Alpha(a) => (u.powf(1.0 - a) - u) / (a * (a - 1.0)),
        }
    }
}

/// Tolerances and evaluation budget of the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub absolute: f64,
    pub relative: f64,
    pub max_evaluations: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            absolute: 1e-10,
            relative: 1e-12,
            max_evaluations: 1_000_000,
        }
    }
}

impl Tolerance {
    pub fn halved(self) -> Self {
        Tolerance {
            absolute: 0.5 * self.absolute,
            relative: 0.5 * self.relative,
            ..self
        }
    }
}

// 15-point Kronrod nodes and weights with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Globally adaptive integration of `f` over `[breaks[0], breaks[last]]`,
/// starting from the given partition.
pub fn integrate<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: Tolerance) -> Result<QuadratureResult> {
    if breaks.len() < 2 {
        return Err(Error::InvalidArgument("need at least two break points".into()));
    }
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0usize;
    let (mut value, mut error) = (0.0, 0.0);
    for w in breaks.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let (v, e) = gauss_kronrod(&f, w[0], w[1]);
        evaluations += 15;
        value += v;
        error += e;
        heap.push(Segment { a: w[0], b: w[1], value: v, error: e });
    }
    loop {
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::QuadratureNotConverged { value, error, evaluations });
        }
        if error <= tol.absolute.max(tol.relative * value.abs()) {
            return Ok(QuadratureResult { value, error_estimate: error, evaluations });
        }
        if evaluations + 30 > tol.max_evaluations {
            return Err(Error::QuadratureNotConverged { value, error, evaluations });
        }
        let worst = heap.pop().expect("partition is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval cannot be split further in floating point
            return Err(Error::QuadratureNotConverged { value, error, evaluations });
        }
        let (v1, e1) = gauss_kronrod(&f, worst.a, mid);
        let (v2, e2) = gauss_kronrod(&f, mid, worst.b);
        evaluations += 30;
        value += v1 + v2 - worst.value;
        error += e1 + e2 - worst.error;
        heap.push(Segment { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: worst.b, value: v2, error: e2 });
        if heap.len() % 64 == 0 {
            // refresh the running sums to avoid drift from repeated updates
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
}

/// Likelihood ratio `p_b/p_a` at `x = l_a + s_a tan t`.
fn ratio(a: CauchyParam, b: CauchyParam, t: f64) -> f64 {
    let (s1, s2) = (a.scale(), b.scale());
    let d = b.location() - a.location();
    let (sn, cs) = t.sin_cos();
    let off = s1 * sn - d * cs;
    s1 * s2 / (s2 * s2 * cs * cs + off * off)
}

/// Break points in `t`: an even partition plus both modes. Splitting at the
/// modes matters when the locations are far apart relative to the scales,
/// where the second density is a narrow spike in `t`.
fn partition(a: CauchyParam, b: CauchyParam) -> Vec<f64> {
    const PIECES: usize = 8;
    let mut breaks: Vec<f64> = (0..=PIECES)
        .map(|i| -FRAC_PI_2 + PI * i as f64 / PIECES as f64)
        .collect();
    let mode_b = ((b.location() - a.location()) / a.scale()).atan();
    breaks.push(mode_b);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    breaks
}

/// `(1/π) ∫ g(r(t)) dt`.
fn integrate_ratio<G: Fn(f64) -> f64>(
    a: CauchyParam,
    b: CauchyParam,
    g: G,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    let res = integrate(|t| g(ratio(a, b, t)), &partition(a, b), tol)?;
    Ok(QuadratureResult {
        value: res.value / PI,
        error_estimate: res.error_estimate / PI,
        evaluations: res.evaluations,
    })
}

/// `∫ p_a f(p_b/p_a) dx` over the real line.
pub fn integrate_f_divergence(f: FGenerator, a: CauchyParam, b: CauchyParam) -> Result<QuadratureResult> {
    integrate_f_divergence_with(f, a, b, Tolerance::default())
}

pub fn integrate_f_divergence_with(
    f: FGenerator,
    a: CauchyParam,
    b: CauchyParam,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    f.validate()?;
    integrate_ratio(a, b, |u| f.eval(u), tol)
}

/// Chernoff coefficient `∫ p_a^α p_b^{1−α} dx`.
pub fn integrate_chernoff(alpha: f64, a: CauchyParam, b: CauchyParam) -> Result<QuadratureResult> {
    integrate_chernoff_with(alpha, a, b, Tolerance::default())
}

pub fn integrate_chernoff_with(
    alpha: f64,
    a: CauchyParam,
    b: CauchyParam,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    if !alpha.is_finite() {
        return Err(Error::NonFinite("alpha"));
    }
    let e = 1.0 - alpha;
    integrate_ratio(a, b, |u| u.powf(e), tol)
}

/// `∫ p_b² dx`, the quadratic Tsallis term.
pub fn integrate_density_square(b: CauchyParam) -> Result<QuadratureResult> {
    // p_b dx = dt/π and p_b(x) = cos²t / (π s)
    let s = b.scale();
    let res = integrate(
        |t| {
            let c = t.cos();
            c * c / (PI * s)
        },
        &partition(b, b),
        Tolerance::default(),
    )?;
    Ok(QuadratureResult {
        value: res.value / PI,
        error_estimate: res.error_estimate / PI,
        evaluations: res.evaluations,
    })
}

/// The forward flat divergence from its integral definition,
/// `(∫ p_b²/p_a − 1) / ∫ p_b²`.
pub fn integrate_flat_divergence(a: CauchyParam, b: CauchyParam) -> Result<QuadratureResult> {
    let cross = integrate_ratio(a, b, |u| u * u, Tolerance::default())?;
    let square = integrate_density_square(b)?;
    let value = (cross.value - 1.0) / square.value;
    let error = cross.error_estimate / square.value
        + (cross.value - 1.0).abs() * square.error_estimate / (square.value * square.value);
    Ok(QuadratureResult {
        value,
        error_estimate: error,
        evaluations: cross.evaluations + square.evaluations,
    })
}

/// `|I_f[a:b] − I_f[(0,1) : ((l₂−l₁)/s₁, s₂/s₁)]|`, both by quadrature.
pub fn check_location_scale_reduction(f: FGenerator, a: CauchyParam, b: CauchyParam) -> Result<f64> {
    let direct = integrate_f_divergence(f, a, b)?;
    let reduced = integrate_f_divergence(f, CauchyParam::STANDARD, a.standardize(b))?;
    Ok((direct.value - reduced.value).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(l: f64, s: f64) -> CauchyParam {
        CauchyParam::new(l, s).unwrap()
    }

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| x.powi(5) - 3.0 * x * x, &[0.0, 2.0], Tolerance::default()).unwrap();
        assert!((r.value - (64.0 / 6.0 - 8.0)).abs() < 1e-13);
        assert!(r.error_estimate >= 0.0 && r.evaluations > 0);
    }

    #[test]
    fn kl_examples() {
        let r = integrate_f_divergence(FGenerator::KL, p(0.0, 1.0), p(0.0, 1.0)).unwrap();
        assert!(r.value.abs() < 1e-12);
        let r = integrate_f_divergence(FGenerator::KL, p(0.0, 1.0), p(0.0, 2.0)).unwrap();
        assert!((r.value - (9.0f64 / 8.0).ln()).abs() < 1e-9);
    }

    #[test]
    fn chi_square_example() {
        let r = integrate_f_divergence(FGenerator::ChiSquare, p(0.0, 1.0), p(1.0, 1.0)).unwrap();
        assert!((r.value - 0.5).abs() < 1e-9);
    }

    #[test]
    fn chernoff_examples() {
        let a = p(0.7, 1.3);
        let r = integrate_chernoff(0.5, a, a).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = integrate_chernoff(3.0, p(0.0, 1.0), p(0.0, 2.0)).unwrap();
        assert!((r.value - 59.0 / 32.0).abs() < 1e-9);
    }

    #[test]
    fn chernoff_skew_symmetry() {
        let (a, b) = (p(-1.0, 0.4), p(2.5, 3.0));
        for alpha in [-0.7, 0.3, 1.8, 2.5] {
            let x = integrate_chernoff(alpha, a, b).unwrap();
            let y = integrate_chernoff(1.0 - alpha, b, a).unwrap();
            let tol = 2.0 * x.error_estimate.max(y.error_estimate).max(1e-10 * x.value);
            assert!((x.value - y.value).abs() <= tol, "alpha {alpha}");
        }
    }

    #[test]
    fn flat_divergence_integral() {
        let r = integrate_flat_divergence(p(0.0, 1.0), p(0.0, 2.0)).unwrap();
        assert!((r.value - PI).abs() < 1e-8);
        let r = integrate_density_square(p(0.0, 2.0)).unwrap();
        assert!((r.value - 1.0 / (4.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn location_scale_reduction() {
        let r = check_location_scale_reduction(FGenerator::KL, p(0.0, 1.0), p(0.0, 2.0)).unwrap();
        assert!(r < 1e-15);
        let r = check_location_scale_reduction(FGenerator::KL, p(3.0, 2.0), p(5.0, 4.0)).unwrap();
        assert!(r <= 2e-9);
        let x = integrate_f_divergence(FGenerator::ChiSquare, p(0.0, 1.0), p(0.0, 2.0)).unwrap();
        let y = integrate_f_divergence(FGenerator::ChiSquare, p(0.0, 3.0), p(0.0, 6.0)).unwrap();
        assert!((x.value - y.value).abs() <= 2e-9);
    }

    #[test]
    fn far_apart_modes_converge() {
        let r = integrate_f_divergence(FGenerator::KL, p(0.0, 0.1), p(500.0, 0.1)).unwrap();
        let delta: f64 = 500.0f64.powi(2) / (2.0 * 0.01);
        assert!((r.value - (0.5 * delta).ln_1p()).abs() <= 1e-9 * r.value);
    }

    #[test]
    fn alpha_zero_rejected() {
        assert_eq!(
            integrate_f_divergence(FGenerator::Alpha(1.0), p(0.0, 1.0), p(0.0, 2.0)),
            Err(Error::InvalidAlpha(1.0))
        );
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tol = Tolerance {
            absolute: 0.0,
            relative: 0.0,
            max_evaluations: 200,
        };
        let r = integrate_f_divergence_with(FGenerator::KL, p(0.0, 1.0), p(3.0, 0.2), tol);
        assert!(matches!(r, Err(Error::QuadratureNotConverged { .. })));
    }
}
