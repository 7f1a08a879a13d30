//! Brute-force nearest-generator labelings on a regular grid of the
//! `(l, s)` half-plane.

use crate::divergences::{CauchyParam, DivergenceKind};
use crate::{Error, Result};

/// Cell-centred grid over `[l_min, l_max] × [s_min, s_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub l_min: f64,
    pub l_max: f64,
    pub s_min: f64,
    pub s_max: f64,
    pub nl: usize,
    pub ns: usize,
}

impl GridSpec {
    pub fn new(l_range: (f64, f64), s_range: (f64, f64), nl: usize, ns: usize) -> Result<Self> {
        let (l_min, l_max) = l_range;
        let (s_min, s_max) = s_range;
        if ![l_min, l_max, s_min, s_max].iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("grid bounds"));
        }
        if !(l_min < l_max) || !(s_min < s_max) || s_min < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "grid bounds [{l_min}, {l_max}] x [{s_min}, {s_max}] are empty or leave the half-plane"
            )));
        }
        if nl == 0 || ns == 0 {
            return Err(Error::InvalidArgument("grid resolution must be positive".into()));
        }
        Ok(GridSpec { l_min, l_max, s_min, s_max, nl, ns })
    }

    pub fn len(&self) -> usize {
        self.nl * self.ns
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid point `idx` in row-major order (`l` varies fastest).
    pub fn point(&self, idx: usize) -> CauchyParam {
        let (i, j) = (idx % self.nl, idx / self.nl);
        let l = self.l_min + (i as f64 + 0.5) * (self.l_max - self.l_min) / self.nl as f64;
        let s = self.s_min + (j as f64 + 0.5) * (self.s_max - self.s_min) / self.ns as f64;
        CauchyParam::new(l, s).expect("grid points lie in the open half-plane")
    }

    pub fn points(&self) -> impl Iterator<Item = CauchyParam> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridLabeling {
    pub grid: GridSpec,
    pub kind: DivergenceKind,
    pub labels: Vec<usize>,
    /// Points where the two best generators are numerically tied.
    pub excluded: Vec<bool>,
}

impl GridLabeling {
    pub fn excluded_fraction(&self) -> f64 {
        self.excluded.iter().filter(|&&e| e).count() as f64 / self.labels.len() as f64
    }

    /// Indices of points that are not excluded here nor in `other`, and
    /// whose labels differ.
    pub fn disagreements(&self, other: &GridLabeling) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&i| !self.excluded[i] && !other.excluded[i] && self.labels[i] != other.labels[i])
            .collect()
    }
}

/// Relative gap below which the two best values count as tied.
pub const TIE_TOLERANCE: f64 = 1e-7;

/// Index of the smallest value, plus whether the runner-up is within the
/// tie tolerance. Ties resolve to the lowest index.
pub fn argmin_with_tie(values: impl IntoIterator<Item = f64>) -> (usize, bool) {
    let (mut best, mut best_v, mut second_v) = (0usize, f64::INFINITY, f64::INFINITY);
    for (i, v) in values.into_iter().enumerate() {
        if v < best_v {
            second_v = best_v;
            best_v = v;
            best = i;
        } else if v < second_v {
            second_v = v;
        }
    }
    let tied = second_v - best_v < TIE_TOLERANCE * (1.0 + best_v.abs());
    (best, tied)
}

/// Label every grid point with its nearest generator under `kind`
/// (generator in the first slot; `FlatReverse` puts it in the second).
pub fn brute_force_labels(
    generators: &[CauchyParam],
    kind: DivergenceKind,
    grid: &GridSpec,
) -> Result<GridLabeling> {
    if generators.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut labels = Vec::with_capacity(grid.len());
    let mut excluded = Vec::with_capacity(grid.len());
    for x in grid.points() {
        let (best, tied) = argmin_with_tie(generators.iter().map(|&g| kind.evaluate(g, x)));
        labels.push(best);
        excluded.push(tied && generators.len() > 1);
    }
    Ok(GridLabeling { grid: *grid, kind, labels, excluded })
}

/// Same protocol with an arbitrary dissimilarity from each generator to the
/// query point.
pub fn brute_force_labels_with<D: Fn(CauchyParam, CauchyParam) -> f64>(
    generators: &[CauchyParam],
    kind: DivergenceKind,
    grid: &GridSpec,
    dissimilarity: D,
) -> Result<GridLabeling> {
    if generators.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut labels = Vec::with_capacity(grid.len());
    let mut excluded = Vec::with_capacity(grid.len());
    for x in grid.points() {
        let (best, tied) = argmin_with_tie(generators.iter().map(|&g| dissimilarity(g, x)));
        labels.push(best);
        excluded.push(tied && generators.len() > 1);
    }
    Ok(GridLabeling { grid: *grid, kind, labels, excluded })
}
