//! The upper half-plane, Poincaré disk and Klein disk models of the
//! hyperbolic plane, with conversions, distances, bisectors and geodesics.
//!
//! Conventions: the Cayley map `z ↦ (z − i)/(z + i)` sends the upper
//! half-plane to the Poincaré disk (so `i` maps to the origin), and
//! `k = 2p/(1 + ‖p‖²)` sends the Poincaré disk to the Klein disk. A Cauchy
//! parameter `(l, s)` is the upper half-plane point `x = l, y = s`.

use std::f64::consts::PI;

use crate::divergences::CauchyParam;
use crate::{Error, Result};

/// Disk points with norm at or beyond this are rejected.
pub const DISK_LIMIT: f64 = 1.0 - 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Uhp,
    PoincareDisk,
    Klein,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Uhp, Model::PoincareDisk, Model::Klein];

    pub fn name(self) -> &'static str {
        match self {
            Model::Uhp => "uhp",
            Model::PoincareDisk => "poincare",
            Model::Klein => "klein",
        }
    }
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uhp" | "upper-half-plane" => Ok(Model::Uhp),
            "poincare" | "poincare-disk" | "disk" => Ok(Model::PoincareDisk),
            "klein" => Ok(Model::Klein),
            _ => Err(Error::InvalidArgument(format!("unknown model `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UhpPoint {
    pub x: f64,
    pub y: f64,
}

impl UhpPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::NonFinite("upper half-plane point"));
        }
        if y <= 0.0 {
            return Err(Error::OutOfDomain(x, y));
        }
        Ok(UhpPoint { x, y })
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.x, self.y]
    }
}

impl From<CauchyParam> for UhpPoint {
    fn from(a: CauchyParam) -> Self {
        UhpPoint {
            x: a.location(),
            y: a.scale(),
        }
    }
}

impl TryFrom<UhpPoint> for CauchyParam {
    type Error = Error;

    fn try_from(p: UhpPoint) -> Result<Self> {
        CauchyParam::new(p.x, p.y)
    }
}

fn check_disk(u: f64, v: f64) -> Result<()> {
    if !u.is_finite() || !v.is_finite() {
        return Err(Error::NonFinite("disk point"));
    }
    if u.hypot(v) >= DISK_LIMIT {
        return Err(Error::OutOfDomain(u, v));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    pub u: f64,
    pub v: f64,
}

impl DiskPoint {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        check_disk(u, v)?;
        Ok(DiskPoint { u, v })
    }

    pub fn norm_sq(&self) -> f64 {
        self.u * self.u + self.v * self.v
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.u, self.v]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KleinPoint {
    pub u: f64,
    pub v: f64,
}

impl KleinPoint {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        check_disk(u, v)?;
        Ok(KleinPoint { u, v })
    }

    pub fn norm_sq(&self) -> f64 {
        self.u * self.u + self.v * self.v
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.u, self.v]
    }

    pub fn from_cauchy(a: CauchyParam) -> Self {
        disk_to_klein(uhp_to_disk(a.into()))
    }

    /// Back to `(l, s)`; fails only when the point rounds onto the boundary.
    pub fn to_cauchy(self) -> Result<CauchyParam> {
        let p = disk_to_uhp(klein_to_disk(self))?;
        CauchyParam::new(p.x, p.y)
    }
}

pub fn uhp_to_disk(p: UhpPoint) -> DiskPoint {
    let (x, y) = (p.x, p.y);
    let d = x * x + (y + 1.0) * (y + 1.0);
    DiskPoint {
        u: (x * x + y * y - 1.0) / d,
        v: -2.0 * x / d,
    }
}

pub fn disk_to_uhp(p: DiskPoint) -> Result<UhpPoint> {
    check_disk(p.u, p.v)?;
    let (u, v) = (p.u, p.v);
    let d = (1.0 - u) * (1.0 - u) + v * v;
    Ok(UhpPoint {
        x: -2.0 * v / d,
        y: (1.0 - u * u - v * v) / d,
    })
}

pub fn disk_to_klein(p: DiskPoint) -> KleinPoint {
    let f = 2.0 / (1.0 + p.norm_sq());
    KleinPoint {
        u: f * p.u,
        v: f * p.v,
    }
}

pub fn klein_to_disk(k: KleinPoint) -> DiskPoint {
    let f = 1.0 / (1.0 + (1.0 - k.norm_sq()).max(0.0).sqrt());
    DiskPoint {
        u: f * k.u,
        v: f * k.v,
    }
}

pub fn uhp_to_klein(p: UhpPoint) -> KleinPoint {
    disk_to_klein(uhp_to_disk(p))
}

pub fn klein_to_uhp(k: KleinPoint) -> Result<UhpPoint> {
    disk_to_uhp(klein_to_disk(k))
}

/// `arccosh(1 + x)` without cancellation for small `x`.
fn arccosh_1p(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (x + (x * (x + 2.0)).sqrt()).ln_1p()
    }
}

pub fn dist_uhp(p: UhpPoint, q: UhpPoint) -> f64 {
    let dx = q.x - p.x;
    let dy = q.y - p.y;
    arccosh_1p((dx * dx + dy * dy) / (2.0 * p.y * q.y))
}

/// Klein distance `arccosh((1 − ⟨p,q⟩)/√((1−‖p‖²)(1−‖q‖²)))`.
///
/// The excess over 1 is computed as `(‖p−q‖² − (p×q)²)/(D(N+D))`, which is
/// algebraically identical and stays accurate for nearby points.
pub fn dist_klein(p: KleinPoint, q: KleinPoint) -> f64 {
    let n = 1.0 - (p.u * q.u + p.v * q.v);
    let d = ((1.0 - p.norm_sq()) * (1.0 - q.norm_sq())).sqrt();
    let (du, dv) = (q.u - p.u, q.v - p.v);
    let cross = p.u * q.v - p.v * q.u;
    let excess = (du * du + dv * dv - cross * cross) / (d * (n + d));
    arccosh_1p(excess)
}

/// Poincaré disk distance.
pub fn dist_disk(p: DiskPoint, q: DiskPoint) -> f64 {
    let (du, dv) = (q.u - p.u, q.v - p.v);
    arccosh_1p(2.0 * (du * du + dv * dv) / ((1.0 - p.norm_sq()) * (1.0 - q.norm_sq())))
}

/// Line `a·u + b·v + c = 0` normalized to `a² + b² = 1`, `a > 0` (or `a = 0, b > 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl LineCoeffs {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let n = a.hypot(b);
        if !n.is_finite() || !c.is_finite() {
            return Err(Error::NonFinite("line coefficients"));
        }
        if n == 0.0 {
            return Err(Error::CoincidentPoints);
        }
        let sign = if a > 0.0 || (a == 0.0 && b > 0.0) {
            1.0
        } else {
            -1.0
        };
        let f = sign / n;
        Ok(LineCoeffs {
            a: a * f,
            b: b * f,
            c: c * f,
        })
    }

    /// Signed distance of `x` to the line.
    #[inline]
    pub fn eval(&self, x: [f64; 2]) -> f64 {
        self.a * x[0] + self.b * x[1] + self.c
    }

    /// Max coefficient difference, taking the sign ambiguity at `a ≈ 0` into account.
    pub fn distance(&self, other: &LineCoeffs) -> f64 {
        let same = (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs());
        let flipped = (self.a + other.a)
            .abs()
            .max((self.b + other.b).abs())
            .max((self.c + other.c).abs());
        same.min(flipped)
    }

    /// Chord of the line inside the unit disk, if any.
    pub fn unit_disk_chord(&self) -> Option<([f64; 2], [f64; 2])> {
        // foot of the perpendicular from the origin is (-c a, -c b)
        let h2 = 1.0 - self.c * self.c;
        if h2 <= 0.0 {
            return None;
        }
        let h = h2.sqrt();
        let foot = [-self.c * self.a, -self.c * self.b];
        let dir = [-self.b, self.a];
        Some((
            [foot[0] - h * dir[0], foot[1] - h * dir[1]],
            [foot[0] + h * dir[0], foot[1] + h * dir[1]],
        ))
    }
}

/// Klein bisector of `p` and `q`; a straight line.
pub fn klein_bisector(p: KleinPoint, q: KleinPoint) -> Result<LineCoeffs> {
    if p == q {
        return Err(Error::CoincidentPoints);
    }
    let rp = (1.0 - p.norm_sq()).sqrt();
    let rq = (1.0 - q.norm_sq()).sqrt();
    LineCoeffs::new(rp * q.u - rq * p.u, rp * q.v - rq * p.v, rq - rp)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeodesicShape {
    /// Straight segment between the endpoints.
    Straight,
    /// Circular arc from `start_angle` to `end_angle` (radians, `|end − start| < π`).
    Arc {
        center: [f64; 2],
        radius: f64,
        start_angle: f64,
        end_angle: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicSegment {
    pub model: Model,
    pub start: [f64; 2],
    pub end: [f64; 2],
    pub shape: GeodesicShape,
}

impl GeodesicSegment {
    /// Point at parameter `t ∈ [0, 1]` (linear in angle for arcs).
    pub fn point_at(&self, t: f64) -> [f64; 2] {
        match self.shape {
            GeodesicShape::Straight => [
                self.start[0] + t * (self.end[0] - self.start[0]),
                self.start[1] + t * (self.end[1] - self.start[1]),
            ],
            GeodesicShape::Arc {
                center,
                radius,
                start_angle,
                end_angle,
            } => {
                let a = start_angle + t * (end_angle - start_angle);
                [center[0] + radius * a.cos(), center[1] + radius * a.sin()]
            }
        }
    }

    /// `n + 1` evenly spaced points from start to end.
    pub fn sample(&self, n: usize) -> Vec<[f64; 2]> {
        let n = n.max(1);
        (0..=n).map(|i| self.point_at(i as f64 / n as f64)).collect()
    }

    /// Samples whose chords deviate from the curve by at most `max_error`
    /// (in the same units as the coordinates).
    pub fn sample_with_error(&self, max_error: f64) -> Vec<[f64; 2]> {
        match self.shape {
            GeodesicShape::Straight => vec![self.start, self.end],
            GeodesicShape::Arc {
                radius,
                start_angle,
                end_angle,
                ..
            } => {
                let sweep = (end_angle - start_angle).abs();
                let step = if max_error >= radius {
                    sweep
                } else {
                    2.0 * (1.0 - max_error / radius).acos()
                };
                let n = (sweep / step.max(1e-9)).ceil().clamp(1.0, 1e5) as usize;
                self.sample(n)
            }
        }
    }
}

fn in_model(model: Model, p: [f64; 2]) -> Result<()> {
    match model {
        Model::Uhp => UhpPoint::new(p[0], p[1]).map(|_| ()),
        Model::PoincareDisk | Model::Klein => check_disk(p[0], p[1]),
    }
}

fn wrap_angle(mut a: f64) -> f64 {
    while a > PI {
        a -= 2.0 * PI;
    }
    while a <= -PI {
        a += 2.0 * PI;
    }
    a
}

fn arc_through(center: [f64; 2], a: [f64; 2], b: [f64; 2]) -> GeodesicShape {
    let radius = (a[0] - center[0]).hypot(a[1] - center[1]);
    let start_angle = (a[1] - center[1]).atan2(a[0] - center[0]);
    let to = (b[1] - center[1]).atan2(b[0] - center[0]);
    GeodesicShape::Arc {
        center,
        radius,
        start_angle,
        end_angle: start_angle + wrap_angle(to - start_angle),
    }
}

/// Geodesic segment between two points of a model.
///
/// Klein geodesics are chords. Upper half-plane geodesics are vertical
/// segments or arcs of semicircles centred on the real axis. Poincaré disk
/// geodesics are diameters or arcs of circles orthogonal to the unit circle.
pub fn geodesic(model: Model, a: [f64; 2], b: [f64; 2]) -> Result<GeodesicSegment> {
    in_model(model, a)?;
    in_model(model, b)?;
    if a == b {
        return Err(Error::CoincidentPoints);
    }
    let scale = 1.0 + a[0].abs().max(a[1].abs()).max(b[0].abs()).max(b[1].abs());
    let shape = match model {
        Model::Klein => GeodesicShape::Straight,
        Model::Uhp => {
            if (a[0] - b[0]).abs() <= 1e-14 * scale {
                GeodesicShape::Straight
            } else {
                let c = ((b[0] * b[0] + b[1] * b[1]) - (a[0] * a[0] + a[1] * a[1]))
                    / (2.0 * (b[0] - a[0]));
                arc_through([c, 0.0], a, b)
            }
        }
        Model::PoincareDisk => {
            let cross = a[0] * b[1] - a[1] * b[0];
            if cross.abs() <= 1e-14 * scale * scale {
                GeodesicShape::Straight
            } else {
                // 2 c·a = 1 + |a|², 2 c·b = 1 + |b|²
                let ra = 0.5 * (1.0 + a[0] * a[0] + a[1] * a[1]);
                let rb = 0.5 * (1.0 + b[0] * b[0] + b[1] * b[1]);
                let c = [(ra * b[1] - rb * a[1]) / cross, (a[0] * rb - b[0] * ra) / cross];
                arc_through(c, a, b)
            }
        }
    };
    Ok(GeodesicSegment {
        model,
        start: a,
        end: b,
        shape,
    })
}

/// Points of the hyperbolic circle of radius `r` around `center`, in the
/// Poincaré disk (a Euclidean circle with displaced centre).
pub fn hyperbolic_circle_disk(center: DiskPoint, r: f64, n: usize) -> Vec<DiskPoint> {
    let rho = (0.5 * r).tanh();
    let (cu, cv) = (center.u, center.v);
    (0..n)
        .map(|i| {
            let ang = 2.0 * PI * i as f64 / n as f64;
            let (zu, zv) = (rho * ang.cos(), rho * ang.sin());
            // (z + c) / (1 + conj(c) z)
            let (nu, nv) = (zu + cu, zv + cv);
            let (du, dv) = (1.0 + cu * zu + cv * zv, cu * zv - cv * zu);
            let den = du * du + dv * dv;
            DiskPoint {
                u: (nu * du + nv * dv) / den,
                v: (nv * du - nu * dv) / den,
            }
        })
        .collect()
}
