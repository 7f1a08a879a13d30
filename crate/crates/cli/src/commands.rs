//! Command implementations, independent of argument parsing.

use std::collections::HashSet;
use std::fmt::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use cauchy_voronoi::divergences::*;
use cauchy_voronoi::hyperbolic::KleinPoint;
use cauchy_voronoi::matrix::Matrix2;
use cauchy_voronoi::oracle::quadrature::{
    integrate_chernoff, integrate_f_divergence, integrate_flat_divergence, FGenerator,
};
use cauchy_voronoi::oracle::{brute_force_labels, random_param, triangle_inequality_trials, GridSpec, MetricTag};
use cauchy_voronoi::voronoi::*;

use crate::files::SiteFile;
use crate::CliError;

pub const DEFAULT_L_RANGE: (f64, f64) = (-5.0, 5.0);
pub const DEFAULT_S_RANGE: (f64, f64) = (0.2, 5.0);

/// `n` distinct sites uniform in the box, reproducible from `seed`.
pub fn generate(n: usize, seed: u64, l_range: (f64, f64), s_range: (f64, f64)) -> Result<SiteFile, CliError> {
    if n == 0 {
        return Err(CliError::Input("--n must be at least 1".into()));
    }
    let ok = |r: (f64, f64)| r.0.is_finite() && r.1.is_finite() && r.0 < r.1;
    if !ok(l_range) {
        return Err(CliError::Input(format!("invalid location bounds [{}, {}]", l_range.0, l_range.1)));
    }
    if !ok(s_range) || s_range.0 <= 0.0 {
        return Err(CliError::Input(format!("invalid scale bounds [{}, {}]; need 0 < min < max", s_range.0, s_range.1)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while out.len() < n {
        attempts += 1;
        if attempts > 100 * n + 1000 {
            return Err(CliError::Input("could not draw enough distinct sites in the given box".into()));
        }
        let p = random_param(&mut rng, l_range, s_range);
        if seen.insert((p.location().to_bits(), p.scale().to_bits())) {
            out.push(p);
        }
    }
    Ok(SiteFile::new(&out, Some(seed)))
}

/// Parse `"l,s"`.
pub fn parse_param(text: &str) -> Result<CauchyParam, CliError> {
    let bad = || CliError::Input(format!("expected `l,s`, got `{text}`"));
    let (l, s) = text.split_once(',').ok_or_else(bad)?;
    let l: f64 = l.trim().parse().map_err(|_| bad())?;
    let s: f64 = s.trim().parse().map_err(|_| bad())?;
    CauchyParam::new(l, s).map_err(|e| CliError::Input(format!("`{text}`: {e}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    ChiSquare,
    FisherRao,
    Kl,
    SqrtKl,
    Flat,
    FlatReverse,
    Chernoff3,
}

impl Quantity {
    pub const ALL: [Quantity; 7] = [
        Quantity::ChiSquare,
        Quantity::FisherRao,
        Quantity::Kl,
        Quantity::SqrtKl,
        Quantity::Flat,
        Quantity::FlatReverse,
        Quantity::Chernoff3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::ChiSquare => "chi-square",
            Quantity::FisherRao => "fisher-rao",
            Quantity::Kl => "kl",
            Quantity::SqrtKl => "sqrt-kl",
            Quantity::Flat => "flat",
            Quantity::FlatReverse => "flat-reverse",
            Quantity::Chernoff3 => "chernoff-3",
        }
    }

    pub fn parse_list(text: &str) -> Result<Vec<Quantity>, CliError> {
        if text.trim() == "all" {
            return Ok(Quantity::ALL.to_vec());
        }
        text.split(',')
            .map(|t| {
                let t = t.trim();
                Quantity::ALL
                    .into_iter()
                    .find(|q| q.name() == t)
                    .ok_or_else(|| CliError::Input(format!("unknown quantity `{t}`")))
            })
            .collect()
    }

    pub fn closed_form(self, a: CauchyParam, b: CauchyParam) -> f64 {
        match self {
            Quantity::ChiSquare => chi_square(a, b),
            Quantity::FisherRao => fisher_rao(a, b),
            Quantity::Kl => kl(a, b),
            Quantity::SqrtKl => sqrt_kl(a, b),
            Quantity::Flat => flat_divergence(a, b),
            Quantity::FlatReverse => flat_divergence_reverse(a, b),
            Quantity::Chernoff3 => chernoff_coefficient_3(a, b),
        }
    }

    /// The same quantity from its integral definition.
    pub fn by_quadrature(self, a: CauchyParam, b: CauchyParam) -> Result<f64, CliError> {
        let v = match self {
            Quantity::ChiSquare => integrate_f_divergence(FGenerator::ChiSquare, a, b)?.value,
            Quantity::FisherRao => {
                let chi = integrate_f_divergence(FGenerator::ChiSquare, a, b)?.value;
                convert_chi_to_fr(chi.max(0.0))?
            }
            Quantity::Kl => integrate_f_divergence(FGenerator::KL, a, b)?.value,
            Quantity::SqrtKl => integrate_f_divergence(FGenerator::KL, a, b)?.value.max(0.0).sqrt(),
            Quantity::Flat => integrate_flat_divergence(a, b)?.value,
            Quantity::FlatReverse => integrate_flat_divergence(b, a)?.value,
            Quantity::Chernoff3 => integrate_chernoff(3.0, a, b)?.value,
        };
        Ok(v)
    }
}

/// Residual threshold of the `--check` column.
pub const CHECK_TOLERANCE: f64 = 1e-6;

/// Table of closed forms, optionally with quadrature residuals. The flag is
/// false when a residual exceeds [`CHECK_TOLERANCE`].
pub fn divergence_table(a: CauchyParam, b: CauchyParam, which: &[Quantity], check: bool) -> Result<(String, bool), CliError> {
    let mut out = String::new();
    let mut ok = true;
    let _ = writeln!(out, "a = {a}, b = {b}");
    if check {
        let _ = writeln!(out, "{:<14} {:>22} {:>22} {:>12}", "quantity", "closed form", "quadrature", "|residual|");
    } else {
        let _ = writeln!(out, "{:<14} {:>22}", "quantity", "closed form");
    }
    for &q in which {
        let c = q.closed_form(a, b);
        if check {
            let n = q.by_quadrature(a, b)?;
            let r = (c - n).abs();
            ok &= r <= CHECK_TOLERANCE;
            let _ = writeln!(out, "{:<14} {:>22.15e} {:>22.15e} {:>12.3e}", q.name(), c, n, r);
        } else {
            let _ = writeln!(out, "{:<14} {:>22.15e}", q.name(), c);
        }
    }
    Ok((out, ok))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Coincidence,
    Orthogonality,
    EmptySphere,
    Triangle,
    Crouzeix,
    Quadrature,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Coincidence,
        Suite::Orthogonality,
        Suite::EmptySphere,
        Suite::Triangle,
        Suite::Crouzeix,
        Suite::Quadrature,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Coincidence => "coincidence",
            Suite::Orthogonality => "orthogonality",
            Suite::EmptySphere => "empty-sphere",
            Suite::Triangle => "triangle",
            Suite::Crouzeix => "crouzeix",
            Suite::Quadrature => "quadrature",
        }
    }

    pub fn parse_list(text: &str) -> Result<Vec<Suite>, CliError> {
        if text.trim() == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        text.split(',')
            .map(|t| {
                let t = t.trim();
                Suite::ALL
                    .into_iter()
                    .find(|s| s.name() == t)
                    .ok_or_else(|| CliError::Input(format!("unknown check `{t}`")))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub passed: bool,
    /// The quantity compared against `tolerance`.
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub format: String,
    pub generators: usize,
    pub seed: u64,
    pub trials: usize,
    pub results: Vec<SuiteResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            let _ = writeln!(
                s,
                "{:<14} {}  measured {:.3e} (tolerance {:.1e})  {}",
                r.suite,
                if r.passed { "PASS" } else { "FAIL" },
                r.measured,
                r.tolerance,
                r.detail
            );
        }
        let _ = writeln!(s, "overall: {}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    pub grid: usize,
    /// Move a generator into a Voronoi vertex's circle after construction.
    pub perturb: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { trials: 10_000, seed: 0, grid: 100, perturb: false }
    }
}

fn result(suite: Suite, measured: f64, tolerance: f64, passed: bool, detail: String) -> SuiteResult {
    SuiteResult { suite: suite.name().into(), passed, measured, tolerance, detail }
}

fn matmul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let e = |i, j| a.get(i, 0) * b.get(0, j) + a.get(i, 1) * b.get(1, j);
    Matrix2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
}

/// Run the requested suites on the diagram of `generators`.
pub fn verify(generators: &[CauchyParam], suites: &[Suite], opts: VerifyOptions) -> Result<VerifyReport, CliError> {
    if opts.trials == 0 || opts.grid == 0 {
        return Err(CliError::Input("--trials and --grid must be positive".into()));
    }
    let mut d = cauchy_voronoi(generators, DivergenceKind::FisherRao)?;
    let complex = delaunay_complex(&d)?;
    let mut results = Vec::new();
    for &suite in suites {
        let r = match suite {
            Suite::Coincidence => {
                let (mut lo, mut hi, mut top) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
                for g in generators {
                    lo = lo.min(g.location());
                    hi = hi.max(g.location());
                    top = top.max(g.scale());
                }
                let pad = 0.2 * (hi - lo).max(top).max(1.0);
                let grid = GridSpec::new((lo - pad, hi + pad), (1e-3 * top, top + pad), opts.grid, opts.grid)?;
                let labels = DivergenceKind::HYPERBOLIC
                    .iter()
                    .map(|&k| brute_force_labels(generators, k, &grid))
                    .collect::<Result<Vec<_>, _>>()?;
                let excluded: Vec<bool> = (0..grid.len()).map(|i| labels.iter().any(|l| l.excluded[i])).collect();
                let mismatches = (0..grid.len())
                    .filter(|&i| !excluded[i])
                    .filter(|&i| {
                        let base = labels[0].labels[i];
                        labels.iter().any(|l| l.labels[i] != base) || d.locate(grid.point(i)) != Some(base)
                    })
                    .count();
                let frac = excluded.iter().filter(|&&e| e).count() as f64 / grid.len() as f64;
                result(
                    suite,
                    mismatches as f64,
                    0.0,
                    mismatches == 0 && frac < 0.01,
                    format!("{}x{} grid, excluded fraction {:.4}", opts.grid, opts.grid, frac),
                )
            }
            Suite::Orthogonality => {
                let r = verify_fisher_orthogonality(&d, &complex)?;
                result(
                    suite,
                    r.max_abs_cos,
                    ORTHOGONALITY_TOLERANCE,
                    r.passed,
                    format!("{} crossings, {} edges miss their bisector edge", r.crossings.len(), r.skipped),
                )
            }
            Suite::EmptySphere => {
                let mut note = String::new();
                if opts.perturb {
                    let vertices = d.subdivision.voronoi_vertices();
                    let target = vertices.first().and_then(|(v, cells)| {
                        let m = (0..d.generators.len()).find(|i| !cells.contains(i))?;
                        Some((d.subdivision.vertices[*v], m))
                    });
                    match target {
                        Some((x, m)) => {
                            d.generators[m] = KleinPoint::new(x[0], x[1])?.to_cauchy()?;
                            note = format!(", generator {m} moved onto a Voronoi vertex");
                        }
                        None => note = ", nothing to perturb".into(),
                    }
                }
                let r = verify_empty_sphere(&d, &complex)?;
                result(
                    suite,
                    r.max_slack,
                    EMPTY_SPHERE_TOLERANCE,
                    r.passed,
                    format!("{} vertices{note}", r.vertices_checked),
                )
            }
            Suite::Triangle => {
                let a = triangle_inequality_trials(MetricTag::SqrtKL, opts.trials, opts.seed)?;
                let b = triangle_inequality_trials(MetricTag::FisherRao, opts.trials, opts.seed)?;
                let worst = a.worst_violation.max(b.worst_violation);
                result(
                    suite,
                    worst,
                    1e-12,
                    worst <= 1e-12,
                    format!(
                        "{} triples each; sqrt-kl {:.3e}, fisher-rao {:.3e}",
                        opts.trials, a.worst_violation, b.worst_violation
                    ),
                )
            }
            Suite::Crouzeix => {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                let identity = Matrix2::diag(1.0, 1.0);
                let mut worst = 0.0f64;
                let n = opts.trials.min(100_000);
                for k in 0..n {
                    let a = if k < generators.len() { generators[k] } else { random_param(&mut rng, (-5.0, 5.0), (0.1, 5.0)) };
                    let t = to_natural(a);
                    let p = matmul(&hessian_free_energy(t)?, &hessian_conjugate_energy(grad_free_energy(t))?);
                    for i in 0..2 {
                        for j in 0..2 {
                            worst = worst.max((p.get(i, j) - identity.get(i, j)).abs());
                        }
                    }
                }
                result(suite, worst, 1e-8, worst <= 1e-8, format!("{n} points"))
            }
            Suite::Quadrature => {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                let n = opts.trials.min(200);
                let mut worst = 0.0f64;
                for k in 0..n {
                    let (a, b) = if k + 1 < generators.len() {
                        (generators[k], generators[k + 1])
                    } else {
                        (random_param(&mut rng, (-5.0, 5.0), (0.1, 5.0)), random_param(&mut rng, (-5.0, 5.0), (0.1, 5.0)))
                    };
                    for q in [Quantity::Kl, Quantity::ChiSquare, Quantity::Chernoff3, Quantity::Flat] {
                        let c = q.closed_form(a, b);
                        let r = (q.by_quadrature(a, b)? - c).abs() / c.abs().max(1e-12);
                        worst = worst.max(r);
                    }
                }
                result(suite, worst, 1e-6, worst <= 1e-6, format!("{n} pairs, relative error"))
            }
        };
        results.push(r);
    }
    let passed = results.iter().all(|r| r.passed);
    Ok(VerifyReport {
        format: crate::files::FORMAT.into(),
        generators: generators.len(),
        seed: opts.seed,
        trials: opts.trials,
        results,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifyReport {
    pub index: usize,
    pub label: Option<String>,
    pub estimate: (f64, f64),
    pub distance: f64,
    pub samples: usize,
}

pub fn classify(sites: &SiteFile, samples: &[f64]) -> Result<ClassifyReport, CliError> {
    let generators = sites.params()?;
    let c = classify_nearest(&generators, samples)?;
    Ok(ClassifyReport {
        index: c.index,
        label: sites.labels.as_ref().map(|l| l[c.index].clone()),
        estimate: (c.estimate.location(), c.estimate.scale()),
        distance: c.distance,
        samples: samples.len(),
    })
}

/// Largest relative rise and largest relative drop between consecutive
/// samples of a curve.
pub fn monotonicity(curve: &[[f64; 2]]) -> (f64, f64) {
    let (mut rise, mut drop) = (0.0f64, 0.0f64);
    for w in curve.windows(2) {
        let r = (w[1][1] - w[0][1]) / w[0][1].abs().max(f64::MIN_POSITIVE);
        rise = rise.max(r);
        drop = drop.max(-r);
    }
    (rise, drop)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic_and_distinct() {
        let a = generate(200, 7, DEFAULT_L_RANGE, DEFAULT_S_RANGE).unwrap();
        let b = generate(200, 7, DEFAULT_L_RANGE, DEFAULT_S_RANGE).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sites.len(), 200);
        assert_eq!(generate(1, 0, DEFAULT_L_RANGE, DEFAULT_S_RANGE).unwrap().sites.len(), 1);
        assert!(generate(3, 0, (1.0, 1.0), DEFAULT_S_RANGE).is_err());
        assert!(generate(3, 0, DEFAULT_L_RANGE, (-1.0, 1.0)).is_err());
    }

    #[test]
    fn table_for_reference_pair() {
        let (a, b) = (parse_param("0,1").unwrap(), parse_param("0, 2").unwrap());
        let (text, ok) = divergence_table(a, b, &Quantity::ALL, true).unwrap();
        assert!(ok, "{text}");
        assert!(text.contains("chi-square"));
        assert!(parse_param("0").is_err());
        assert!(parse_param("0,-1").is_err());
    }

    #[test]
    fn equal_arguments() {
        let a = parse_param("1.5,0.5").unwrap();
        for q in Quantity::ALL {
            let expected = if q == Quantity::Chernoff3 { 1.0 } else { 0.0 };
            assert!((q.closed_form(a, a) - expected).abs() < 1e-15, "{}", q.name());
        }
    }

    #[test]
    fn lists_parse() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 6);
        assert_eq!(Suite::parse_list("triangle,crouzeix").unwrap(), vec![Suite::Triangle, Suite::Crouzeix]);
        assert!(Suite::parse_list("bogus").is_err());
        assert_eq!(Quantity::parse_list("kl").unwrap(), vec![Quantity::Kl]);
    }
}
