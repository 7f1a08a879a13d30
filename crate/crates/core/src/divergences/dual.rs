//! Natural (θ) and dual (η) coordinates of the dually flat Cauchy manifold,
//! the free energy `F`, its Legendre conjugate `F*`, and the Bregman and
//! Fenchel-Young divergences they induce.
//!
//! All Hessians here are derived by differentiating the potentials directly:
//!
//! ```text
//! F(θ)  = −π²/θ₂ − θ₁²/(4θ₂) − 1
//! F*(η) = 1 − 2π √(η₂ − η₁²)
//! ```

use std::f64::consts::PI;

use super::CauchyParam;
use crate::matrix::Matrix2;
use crate::{Error, Result};

/// Natural parameter `θ = (2πl/s, −π/s)`, with `t2 < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaturalParam {
    t1: f64,
    t2: f64,
}

impl NaturalParam {
    pub fn new(t1: f64, t2: f64) -> Result<Self> {
        if !t1.is_finite() || !t2.is_finite() {
            return Err(Error::NonFinite("natural parameter"));
        }
        if t2 >= 0.0 {
            return Err(Error::NaturalDomain(t2));
        }
        Ok(NaturalParam { t1, t2 })
    }

    #[inline]
    pub fn t1(&self) -> f64 {
        self.t1
    }

    #[inline]
    pub fn t2(&self) -> f64 {
        self.t2
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.t1, self.t2]
    }

    fn dot(self, e: DualParam) -> f64 {
        self.t1 * e.e1 + self.t2 * e.e2
    }
}

/// Dual parameter `η = (l, l² + s²)`, with `e2 − e1² > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualParam {
    e1: f64,
    e2: f64,
}

impl DualParam {
    pub fn new(e1: f64, e2: f64) -> Result<Self> {
        if !e1.is_finite() || !e2.is_finite() {
            return Err(Error::NonFinite("dual parameter"));
        }
        let gap = e2 - e1 * e1;
        if gap <= 0.0 {
            return Err(Error::DualDomain(gap));
        }
        Ok(DualParam { e1, e2 })
    }

    #[inline]
    pub fn e1(&self) -> f64 {
        self.e1
    }

    #[inline]
    pub fn e2(&self) -> f64 {
        self.e2
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.e1, self.e2]
    }

    /// `e2 − e1²`, the squared scale.
    #[inline]
    fn variance_gap(&self) -> f64 {
        self.e2 - self.e1 * self.e1
    }
}

pub fn to_natural(a: CauchyParam) -> NaturalParam {
    NaturalParam {
        t1: 2.0 * PI * a.location() / a.scale(),
        t2: -PI / a.scale(),
    }
}

pub fn from_natural(t: NaturalParam) -> Result<CauchyParam> {
    CauchyParam::new(-t.t1 / (2.0 * t.t2), -PI / t.t2)
}

pub fn to_dual(a: CauchyParam) -> DualParam {
    let (l, s) = (a.location(), a.scale());
    DualParam {
        e1: l,
        e2: l * l + s * s,
    }
}

pub fn from_dual(e: DualParam) -> Result<CauchyParam> {
    CauchyParam::new(e.e1, e.variance_gap().sqrt())
}

/// Cauchy free energy `F(θ)`.
pub fn free_energy(t: NaturalParam) -> f64 {
    let (t1, t2) = (t.t1, t.t2);
    -PI * PI / t2 - t1 * t1 / (4.0 * t2) - 1.0
}

/// Legendre conjugate `F*(η) = 1 − 2π√(η₂ − η₁²)`.
pub fn conjugate_energy(e: DualParam) -> f64 {
    1.0 - 2.0 * PI * e.variance_gap().sqrt()
}

/// `∇F(θ)`, the dual coordinates of `θ`.
pub fn grad_free_energy(t: NaturalParam) -> DualParam {
    let (t1, t2) = (t.t1, t.t2);
    let t2sq = t2 * t2;
    DualParam {
        e1: -t1 / (2.0 * t2),
        e2: PI * PI / t2sq + t1 * t1 / (4.0 * t2sq),
    }
}

/// `∇F*(η)`, the natural coordinates of `η`.
pub fn grad_conjugate_energy(e: DualParam) -> NaturalParam {
    let root = e.variance_gap().sqrt();
    NaturalParam {
        t1: 2.0 * PI * e.e1 / root,
        t2: -PI / root,
    }
}

/// `∇²F(θ)`.
pub fn hessian_free_energy(t: NaturalParam) -> Result<Matrix2> {
    let (t1, t2) = (t.t1, t.t2);
    if t2 >= 0.0 {
        return Err(Error::NaturalDomain(t2));
    }
    let t2sq = t2 * t2;
    let t2cu = t2sq * t2;
    let a11 = -1.0 / (2.0 * t2);
    let a12 = t1 / (2.0 * t2sq);
    let a22 = -2.0 * PI * PI / t2cu - t1 * t1 / (2.0 * t2cu);
    Ok(Matrix2::new(a11, a12, a12, a22))
}

/// `∇²F*(η)`.
pub fn hessian_conjugate_energy(e: DualParam) -> Result<Matrix2> {
    let gap = e.variance_gap();
    if gap <= 0.0 {
        return Err(Error::DualDomain(gap));
    }
    let g32 = gap * gap.sqrt();
    let a11 = 2.0 * PI * e.e2 / g32;
    let a12 = -PI * e.e1 / g32;
    let a22 = PI / (2.0 * g32);
    Ok(Matrix2::new(a11, a12, a12, a22))
}

/// `B_F(θ₁:θ₂) = F(θ₁) − F(θ₂) − (θ₁ − θ₂)·∇F(θ₂)`.
pub fn bregman_free_energy(t1: NaturalParam, t2: NaturalParam) -> f64 {
    let g = grad_free_energy(t2);
    let d1 = t1.t1 - t2.t1;
    let d2 = t1.t2 - t2.t2;
    free_energy(t1) - free_energy(t2) - (d1 * g.e1 + d2 * g.e2)
}

/// `B_{F*}(η₁:η₂) = F*(η₁) − F*(η₂) − (η₁ − η₂)·∇F*(η₂)`.
pub fn bregman_conjugate_energy(e1: DualParam, e2: DualParam) -> f64 {
    let g = grad_conjugate_energy(e2);
    let d1 = e1.e1 - e2.e1;
    let d2 = e1.e2 - e2.e2;
    conjugate_energy(e1) - conjugate_energy(e2) - (d1 * g.t1 + d2 * g.t2)
}

/// Fenchel-Young gap `A_F(θ:η) = F(θ) + F*(η) − θ·η ≥ 0`.
pub fn fenchel_young_gap(t: NaturalParam, e: DualParam) -> f64 {
    free_energy(t) + conjugate_energy(e) - t.dot(e)
}

/// `A_{F*}(η:θ)`, the same gap with the roles of the potentials swapped.
pub fn fenchel_young_gap_conjugate(e: DualParam, t: NaturalParam) -> f64 {
    conjugate_energy(e) + free_energy(t) - t.dot(e)
}
