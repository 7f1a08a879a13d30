//! Central finite differences of the free energy and its conjugate, checked
//! against the analytic gradients and Hessians.

use crate::divergences::{
    conjugate_energy, free_energy, grad_conjugate_energy, grad_free_energy,
    hessian_conjugate_energy, hessian_free_energy, DualParam, NaturalParam,
};
use crate::matrix::Matrix2;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CalculusTarget {
    GradF,
    GradFstar,
    HessF,
    HessFstar,
}

impl CalculusTarget {
    fn is_conjugate(self) -> bool {
        matches!(self, CalculusTarget::GradFstar | CalculusTarget::HessFstar)
    }
}

fn potential(target: CalculusTarget, x: [f64; 2]) -> Result<f64> {
    if target.is_conjugate() {
        Ok(conjugate_energy(DualParam::new(x[0], x[1])?))
    } else {
        Ok(free_energy(NaturalParam::new(x[0], x[1])?))
    }
}

fn shifted(x: [f64; 2], i: usize, h: f64) -> [f64; 2] {
    let mut y = x;
    y[i] += h;
    y
}

/// Central-difference gradient of the potential selected by `target`.
pub fn numeric_gradient(target: CalculusTarget, x: [f64; 2], h: f64) -> Result<[f64; 2]> {
    let mut g = [0.0; 2];
    for (i, gi) in g.iter_mut().enumerate() {
        let fp = potential(target, shifted(x, i, h))?;
        let fm = potential(target, shifted(x, i, -h))?;
        *gi = (fp - fm) / (2.0 * h);
    }
    Ok(g)
}

/// Nested central differences of the potential: entry `(i, j)` differentiates
/// along `j` with step `h` inside, then along `i` with step `2h` outside, so
/// the two mixed partials use different stencils and their agreement is a
/// genuine symmetry check.
pub fn numeric_hessian(target: CalculusTarget, x: [f64; 2], h: f64) -> Result<Matrix2> {
    let inner = |y: [f64; 2], j: usize| -> Result<f64> {
        let fp = potential(target, shifted(y, j, h))?;
        let fm = potential(target, shifted(y, j, -h))?;
        Ok((fp - fm) / (2.0 * h))
    };
    let outer = 2.0 * h;
    let mut m = [[0.0; 2]; 2];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let dp = inner(shifted(x, i, outer), j)?;
            let dm = inner(shifted(x, i, -outer), j)?;
            *entry = (dp - dm) / (2.0 * outer);
        }
    }
    Ok(Matrix2(m))
}

fn relative_error(numeric: &[f64], analytic: &[f64]) -> f64 {
    let scale = analytic.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let scale = if scale > 0.0 { scale } else { 1.0 };
    numeric
        .iter()
        .zip(analytic)
        .map(|(n, a)| (n - a).abs() / a.abs().max(scale))
        .fold(0.0, f64::max)
}

/// Largest entry-wise relative error of the finite-difference approximation
/// against the analytic derivative, at `point` (θ for `F`, η for `F*`).
pub fn finite_difference_check(target: CalculusTarget, point: [f64; 2], step: f64) -> Result<f64> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidArgument(format!("step must be positive, got {step}")));
    }
    let [a, b] = point;
    match target {
        CalculusTarget::GradF => {
            let exact = grad_free_energy(NaturalParam::new(a, b)?).to_array();
            Ok(relative_error(&numeric_gradient(target, point, step)?, &exact))
        }
        CalculusTarget::GradFstar => {
            let exact = grad_conjugate_energy(DualParam::new(a, b)?).to_array();
            Ok(relative_error(&numeric_gradient(target, point, step)?, &exact))
        }
        CalculusTarget::HessF | CalculusTarget::HessFstar => {
            let exact = if target == CalculusTarget::HessF {
                hessian_free_energy(NaturalParam::new(a, b)?)?
            } else {
                hessian_conjugate_energy(DualParam::new(a, b)?)?
            };
            let num = numeric_hessian(target, point, step)?;
            let flat = |m: Matrix2| [m.0[0][0], m.0[0][1], m.0[1][0], m.0[1][1]];
            Ok(relative_error(&flat(num), &flat(exact)))
        }
    }
}

/// `|∂²/∂x₀∂x₁ − ∂²/∂x₁∂x₀|` relative to the Hessian's largest entry.
pub fn hessian_asymmetry(target: CalculusTarget, point: [f64; 2], step: f64) -> Result<f64> {
    let m = numeric_hessian(target, point, step)?;
    Ok((m.get(0, 1) - m.get(1, 0)).abs() / m.max_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divergences::{to_dual, to_natural, CauchyParam};

    #[test]
    fn gradient_of_free_energy() {
        let t = to_natural(CauchyParam::STANDARD).to_array();
        assert!(finite_difference_check(CalculusTarget::GradF, t, 1e-5).unwrap() <= 1e-6);
    }

    #[test]
    fn hessian_of_conjugate() {
        let e = to_dual(CauchyParam::STANDARD).to_array();
        assert!(finite_difference_check(CalculusTarget::HessFstar, e, 1e-4).unwrap() <= 1e-4);
        assert!(hessian_asymmetry(CalculusTarget::HessFstar, e, 1e-4).unwrap() <= 1e-6);
    }

    #[test]
    fn off_centre_points() {
        let a = CauchyParam::new(1.5, 0.7).unwrap();
        let t = to_natural(a).to_array();
        let e = to_dual(a).to_array();
        assert!(finite_difference_check(CalculusTarget::GradFstar, e, 1e-6).unwrap() <= 1e-6);
        assert!(finite_difference_check(CalculusTarget::HessF, t, 1e-4).unwrap() <= 1e-4);
        assert!(hessian_asymmetry(CalculusTarget::HessF, t, 1e-4).unwrap() <= 1e-6);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(finite_difference_check(CalculusTarget::GradF, [0.0, -1.0], 0.0).is_err());
        assert!(finite_difference_check(CalculusTarget::GradF, [0.0, 1.0], 1e-5).is_err());
        assert!(finite_difference_check(CalculusTarget::HessFstar, [2.0, 1.0], 1e-5).is_err());
    }
}
