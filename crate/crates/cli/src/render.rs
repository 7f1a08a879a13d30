//! SVG rendering of diagrams in the Klein, Poincaré disk and upper
//! half-plane models.

use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cauchy_voronoi::divergences::CauchyParam;
use cauchy_voronoi::hyperbolic::{
    disk_to_klein, disk_to_uhp, dist_klein, geodesic, hyperbolic_circle_disk, klein_to_disk, klein_to_uhp, uhp_to_disk,
    DiskPoint, KleinPoint, Model, UhpPoint,
};
use cauchy_voronoi::power_diagram::{ClipRegion, EdgeKind};
use cauchy_voronoi::voronoi::{CauchyVoronoiDiagram, Coordinates};

use crate::CliError;

/// Maximum chord error of sampled curves, in pixels.
pub const CHORD_ERROR_PX: f64 = 0.5;
/// Vertices of each empty-circle polyline.
pub const CIRCLE_SIDES: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layers {
    pub cells: bool,
    pub edges: bool,
    pub sites: bool,
    pub delaunay: bool,
    pub empty_circles: bool,
}

impl Default for Layers {
    fn default() -> Self {
        Layers { cells: true, edges: true, sites: true, delaunay: false, empty_circles: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderSpec {
    pub model: Model,
    pub size: u32,
    pub layers: Layers,
    pub color_seed: u64,
}

impl RenderSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.size == 0 {
            return Err(CliError::Input("canvas size must be positive".into()));
        }
        let l = self.layers;
        if !(l.cells || l.edges || l.sites || l.delaunay || l.empty_circles) {
            return Err(CliError::Input("at least one layer must be enabled".into()));
        }
        Ok(())
    }
}

/// Model coordinates to pixels, plus the map from subdivision coordinates
/// into the model.
struct View {
    model: Model,
    coords: Coordinates,
    size: f64,
    /// pixels per model unit
    scale: f64,
    /// model point drawn at the pixel origin's x, and at the bottom edge's y
    origin: [f64; 2],
}

const BOUNDARY_SHRINK: f64 = 1.0 - 1e-9;

impl View {
    fn new(d: &CauchyVoronoiDiagram, model: Model, size: u32) -> View {
        let size = size as f64;
        match (model, d.coordinates) {
            (Model::Klein | Model::PoincareDisk, _) => View {
                model,
                coords: d.coordinates,
                size,
                scale: 0.45 * size,
                origin: [-1.0 / 0.9, -1.0 / 0.9],
            },
            (Model::Uhp, Coordinates::LocationScale) => {
                let ClipRegion::Rect { min, max } = d.subdivision.clip else {
                    unreachable!("location-scale diagrams are clipped to a rectangle")
                };
                let w = (max[0] - min[0]).max(max[1] - min[1]);
                View {
                    model,
                    coords: d.coordinates,
                    size,
                    scale: size / w,
                    origin: [0.5 * (min[0] + max[0]) - 0.5 * w, min[1]],
                }
            }
            (Model::Uhp, Coordinates::Klein) => {
                let (mut lo, mut hi, mut top) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
                for g in &d.generators {
                    lo = lo.min(g.location());
                    hi = hi.max(g.location());
                    top = top.max(g.scale());
                }
                let half = 0.6 * (hi - lo).max(top).max(1.0);
                View {
                    model,
                    coords: d.coordinates,
                    size,
                    scale: size / (2.0 * half),
                    origin: [0.5 * (lo + hi) - half, 0.0],
                }
            }
        }
    }

    fn px(&self, p: [f64; 2]) -> [f64; 2] {
        [(p[0] - self.origin[0]) * self.scale, self.size - (p[1] - self.origin[1]) * self.scale]
    }

    /// Subdivision coordinates to model coordinates.
    fn model_point(&self, x: [f64; 2]) -> [f64; 2] {
        if self.coords == Coordinates::LocationScale {
            return x;
        }
        match self.model {
            Model::Klein => x,
            Model::PoincareDisk => {
                let k = KleinPoint { u: x[0], v: x[1] };
                klein_to_disk(k).to_array()
            }
            Model::Uhp => {
                let n = x[0].hypot(x[1]);
                let f = if n > BOUNDARY_SHRINK { BOUNDARY_SHRINK / n } else { 1.0 };
                let k = KleinPoint { u: x[0] * f, v: x[1] * f };
                klein_to_uhp(k).map(|p| p.to_array()).unwrap_or([f64::NAN, f64::NAN])
            }
        }
    }

    fn site(&self, g: CauchyParam) -> [f64; 2] {
        match (self.coords, self.model) {
            (Coordinates::LocationScale, _) | (_, Model::Uhp) => [g.location(), g.scale()],
            (_, Model::Klein) => KleinPoint::from_cauchy(g).to_array(),
            (_, Model::PoincareDisk) => uhp_to_disk(UhpPoint::from(g)).to_array(),
        }
    }

    fn disk_point(&self, p: DiskPoint) -> [f64; 2] {
        match self.model {
            Model::PoincareDisk => p.to_array(),
            Model::Klein => disk_to_klein(p).to_array(),
            Model::Uhp => disk_to_uhp(p).map(|q| q.to_array()).unwrap_or([f64::NAN, f64::NAN]),
        }
    }

    fn is_linear(&self) -> bool {
        self.coords == Coordinates::LocationScale || self.model == Model::Klein
    }
}

/// Beyond this many pixels from the canvas nothing is refined further.
const FAR_PX: f64 = 1e5;

/// Adaptive samples (in pixels) of `curve` on `[0, 1]`, splitting until the
/// mapped midpoint is within `CHORD_ERROR_PX` of the chord.
fn sample_curve<F: Fn(f64) -> [f64; 2]>(curve: F, initial: usize) -> Vec<[f64; 2]> {
    fn far(p: [f64; 2]) -> bool {
        !(p[0].abs() < FAR_PX && p[1].abs() < FAR_PX)
    }
    fn go<F: Fn(f64) -> [f64; 2]>(f: &F, t0: f64, p0: [f64; 2], t1: f64, p1: [f64; 2], depth: u32, out: &mut Vec<[f64; 2]>) {
        let tm = 0.5 * (t0 + t1);
        let pm = f(tm);
        let err = (pm[0] - 0.5 * (p0[0] + p1[0])).hypot(pm[1] - 0.5 * (p0[1] + p1[1]));
        let hopeless = far(p0) && far(p1) && far(pm);
        if depth < 24 && err.is_finite() && err > CHORD_ERROR_PX && !hopeless {
            go(f, t0, p0, tm, pm, depth + 1, out);
            go(f, tm, pm, t1, p1, depth + 1, out);
        } else {
            out.push(p1);
        }
    }
    let mut out = vec![curve(0.0)];
    for k in 0..initial {
        let (t0, t1) = (k as f64 / initial as f64, (k + 1) as f64 / initial as f64);
        let (p0, p1) = (*out.last().unwrap(), curve(t1));
        go(&curve, t0, p0, t1, p1, 0, &mut out);
    }
    out
}

fn ccw_sweep(a: [f64; 2], b: [f64; 2]) -> (f64, f64) {
    let t0 = a[1].atan2(a[0]);
    let mut t1 = b[1].atan2(b[0]);
    while t1 <= t0 {
        t1 += 2.0 * std::f64::consts::PI;
    }
    (t0, t1)
}

/// Pixel polyline of subdivision edge `e`, from `vertices[0]` to `vertices[1]`.
fn edge_polyline(d: &CauchyVoronoiDiagram, view: &View, e: usize) -> Vec<[f64; 2]> {
    let sub = &d.subdivision;
    let edge = sub.edges[e];
    let (p, q) = (sub.vertices[edge.vertices[0]], sub.vertices[edge.vertices[1]]);
    let arc = edge.kind == EdgeKind::Clip && sub.clip == ClipRegion::UnitDisk;
    if arc {
        let (t0, t1) = ccw_sweep(p, q);
        let pieces = (((t1 - t0) * 16.0).ceil() as usize).max(2);
        sample_curve(
            |t| {
                let a = t0 + t * (t1 - t0);
                view.px(view.model_point([a.cos(), a.sin()]))
            },
            pieces,
        )
    } else if view.is_linear() {
        vec![view.px(view.model_point(p)), view.px(view.model_point(q))]
    } else {
        sample_curve(
            |t| view.px(view.model_point([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])])),
            8,
        )
    }
}

fn clip_polygon(poly: &[[f64; 2]], lo: f64, hi: f64) -> Vec<[f64; 2]> {
    let mut out: Vec<[f64; 2]> = poly.iter().copied().filter(|p| p[0].is_finite() && p[1].is_finite()).collect();
    for (axis, bound, keep_below) in [(0, lo, false), (0, hi, true), (1, lo, false), (1, hi, true)] {
        if out.is_empty() {
            break;
        }
        let inside = |p: &[f64; 2]| if keep_below { p[axis] <= bound } else { p[axis] >= bound };
        let input = std::mem::take(&mut out);
        for k in 0..input.len() {
            let (a, b) = (input[k], input[(k + 1) % input.len()]);
            match (inside(&a), inside(&b)) {
                (true, true) => out.push(b),
                (true, false) | (false, true) => {
                    let t = (bound - a[axis]) / (b[axis] - a[axis]);
                    out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
                    if inside(&b) {
                        out.push(b);
                    }
                }
                (false, false) => {}
            }
        }
    }
    out
}

/// Pieces of a polyline inside the square `[lo, hi]²` (Liang-Barsky per segment).
fn clip_polyline(line: &[[f64; 2]], lo: f64, hi: f64) -> Vec<Vec<[f64; 2]>> {
    let mut pieces: Vec<Vec<[f64; 2]>> = Vec::new();
    let mut current: Vec<[f64; 2]> = Vec::new();
    for w in line.windows(2) {
        let (a, b) = (w[0], w[1]);
        if ![a[0], a[1], b[0], b[1]].iter().all(|v| v.is_finite()) {
            if current.len() > 1 {
                pieces.push(std::mem::take(&mut current));
            }
            current.clear();
            continue;
        }
        let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
        let (mut t0, mut t1) = (0.0f64, 1.0f64);
        let mut visible = true;
        for (p, q) in [(-dx, a[0] - lo), (dx, hi - a[0]), (-dy, a[1] - lo), (dy, hi - a[1])] {
            if p == 0.0 {
                if q < 0.0 {
                    visible = false;
                }
            } else {
                let r = q / p;
                if p < 0.0 {
                    t0 = t0.max(r);
                } else {
                    t1 = t1.min(r);
                }
            }
        }
        if !visible || t0 > t1 {
            if current.len() > 1 {
                pieces.push(std::mem::take(&mut current));
            }
            current.clear();
            continue;
        }
        let s = [a[0] + t0 * dx, a[1] + t0 * dy];
        let e = [a[0] + t1 * dx, a[1] + t1 * dy];
        if current.last() != Some(&s) {
            if current.len() > 1 {
                pieces.push(std::mem::take(&mut current));
            }
            current = vec![s];
        }
        current.push(e);
        if t1 < 1.0 {
            pieces.push(std::mem::take(&mut current));
        }
    }
    if current.len() > 1 {
        pieces.push(current);
    }
    pieces
}

fn points_attr(pts: &[[f64; 2]]) -> String {
    let mut s = String::new();
    for (i, p) in pts.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{:.2},{:.2}", p[0], p[1]);
    }
    s
}

fn palette(n: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let h: u32 = rng.random_range(0..360);
            let s: u32 = rng.random_range(45..75);
            let l: u32 = rng.random_range(60..85);
            hsl_hex(h as f64, s as f64 / 100.0, l as f64 / 100.0)
        })
        .collect()
}

/// `#rrggbb` for a hue in degrees and saturation/lightness in `[0, 1]`.
fn hsl_hex(h: f64, s: f64, l: f64) -> String {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let x = c * (1.0 - ((h / 60.0) % 2.0 - 1.0).abs());
    let (r, g, b) = match (h / 60.0) as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let byte = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    format!("#{:02x}{:02x}{:02x}", byte(r), byte(g), byte(b))
}

/// Render `d` as a standalone SVG document.
pub fn render_svg(d: &CauchyVoronoiDiagram, spec: &RenderSpec) -> Result<String, CliError> {
    spec.validate()?;
    if d.coordinates == Coordinates::LocationScale && spec.model != Model::Uhp {
        return Err(CliError::Input(format!(
            "the {} diagram lives in (l, s) coordinates; render it with --model uhp",
            d.kind
        )));
    }
    let view = View::new(d, spec.model, spec.size);
    let sub = &d.subdivision;
    let size = spec.size as f64;
    let (lo, hi) = (-0.05 * size, 1.05 * size);
    let clipped = spec.model == Model::Uhp;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        spec.size
    );
    let _ = writeln!(svg, "<!-- cauchy-voronoi {} -->", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(
        svg,
        r#"<desc>kind={} model={} generators={}</desc>"#,
        d.kind,
        spec.model.name(),
        d.generators.len()
    );
    let _ = writeln!(svg, r#"<rect width="{0}" height="{0}" fill="white"/>"#, spec.size);

    let polylines: Vec<Vec<[f64; 2]>> = (0..sub.edges.len()).map(|e| edge_polyline(d, &view, e)).collect();

    if spec.layers.cells {
        let colors = palette(sub.cells.len(), spec.color_seed);
        let _ = writeln!(svg, r#"<g id="cells" stroke="none">"#);
        for (i, cell) in sub.cells.iter().enumerate() {
            let mut poly: Vec<[f64; 2]> = Vec::new();
            if cell.whole {
                poly = match (view.coords, spec.model) {
                    (Coordinates::Klein, Model::Uhp) => vec![[lo, lo], [hi, lo], [hi, hi], [lo, hi]],
                    (Coordinates::Klein, _) => (0..CIRCLE_SIDES)
                        .map(|k| {
                            let a = 2.0 * std::f64::consts::PI * k as f64 / CIRCLE_SIDES as f64;
                            view.px([a.cos(), a.sin()])
                        })
                        .collect(),
                    (Coordinates::LocationScale, _) => match sub.clip {
                        ClipRegion::Rect { min, max } => [[min[0], min[1]], [max[0], min[1]], [max[0], max[1]], [min[0], max[1]]]
                            .iter()
                            .map(|&p| view.px(p))
                            .collect(),
                        ClipRegion::UnitDisk => unreachable!(),
                    },
                };
            } else {
                for r in &cell.boundary {
                    let line = &polylines[r.edge];
                    if r.reversed {
                        poly.extend(line.iter().rev().skip(1));
                    } else {
                        poly.extend(line.iter().skip(1));
                    }
                }
            }
            if clipped {
                poly = clip_polygon(&poly, lo, hi);
            }
            if poly.len() >= 3 {
                let _ = writeln!(svg, r#"<polygon data-cell="{i}" fill="{}" points="{}"/>"#, colors[i], points_attr(&poly));
            }
        }
        let _ = writeln!(svg, "</g>");
    }

    if spec.layers.edges {
        let _ = writeln!(svg, r##"<g id="edges" fill="none" stroke="#333333" stroke-width="1">"##);
        for (e, edge) in sub.edges.iter().enumerate() {
            let class = match edge.kind {
                EdgeKind::Bisector => "bisector",
                EdgeKind::Clip => "clip",
            };
            let pieces = if clipped { clip_polyline(&polylines[e], lo, hi) } else { vec![polylines[e].clone()] };
            for piece in pieces {
                let _ = writeln!(svg, r#"<polyline class="{class}" points="{}"/>"#, points_attr(&piece));
            }
        }
        let _ = writeln!(svg, "</g>");
    }

    if spec.layers.delaunay {
        let _ = writeln!(svg, r##"<g id="delaunay" fill="none" stroke="#c0392b" stroke-width="1.2">"##);
        for (i, j) in sub.adjacent_pairs() {
            let (a, b) = (view.site(d.generators[i]), view.site(d.generators[j]));
            let model = if d.coordinates == Coordinates::LocationScale { Model::Klein } else { spec.model };
            // Klein geodesics are straight, which is also what the Euclidean case needs
            let g = geodesic(model, a, b).map_err(|e| CliError::Input(format!("delaunay edge ({i}, {j}): {e}")))?;
            let pts: Vec<[f64; 2]> = if model == Model::Klein {
                vec![view.px(a), view.px(b)]
            } else {
                g.sample_with_error(CHORD_ERROR_PX / view.scale).into_iter().map(|p| view.px(p)).collect()
            };
            let pieces = if clipped { clip_polyline(&pts, lo, hi) } else { vec![pts] };
            for piece in pieces {
                let _ = writeln!(svg, r#"<polyline data-edge="{i}-{j}" points="{}"/>"#, points_attr(&piece));
            }
        }
        let _ = writeln!(svg, "</g>");
    }

    if spec.layers.empty_circles {
        let _ = writeln!(svg, r##"<g id="empty-circles" fill="none" stroke="#2471a3" stroke-width="0.8">"##);
        for (v, cells) in sub.voronoi_vertices() {
            let x = sub.vertices[v];
            let mut pts: Vec<[f64; 2]> = if d.coordinates == Coordinates::LocationScale {
                let g = d.generators[cells[0]];
                let r = (g.location() - x[0]).hypot(g.scale() - x[1]);
                (0..CIRCLE_SIDES)
                    .map(|k| {
                        let a = 2.0 * std::f64::consts::PI * k as f64 / CIRCLE_SIDES as f64;
                        view.px([x[0] + r * a.cos(), x[1] + r * a.sin()])
                    })
                    .collect()
            } else {
                let k = KleinPoint { u: x[0], v: x[1] };
                let r = dist_klein(k, KleinPoint::from_cauchy(d.generators[cells[0]]));
                hyperbolic_circle_disk(klein_to_disk(k), r, CIRCLE_SIDES)
                    .into_iter()
                    .map(|p| view.px(view.disk_point(p)))
                    .collect()
            };
            pts.push(pts[0]);
            let pieces = if clipped { clip_polyline(&pts, lo, hi) } else { vec![pts] };
            for piece in pieces {
                let _ = writeln!(svg, r#"<polyline data-vertex="{v}" points="{}"/>"#, points_attr(&piece));
            }
        }
        let _ = writeln!(svg, "</g>");
    }

    if spec.model != Model::Uhp {
        let c = view.px([0.0, 0.0]);
        let _ = writeln!(
            svg,
            r##"<circle id="boundary" cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="#000000"/>"##,
            c[0], c[1], view.scale
        );
    } else {
        let y = view.px([0.0, 0.0])[1];
        let _ = writeln!(
            svg,
            r##"<line id="boundary" x1="0" y1="{y:.2}" x2="{0}" y2="{y:.2}" stroke="#000000"/>"##,
            spec.size
        );
    }

    if spec.layers.sites {
        let _ = writeln!(svg, r##"<g id="sites" fill="#000000">"##);
        for (i, &g) in d.generators.iter().enumerate() {
            let p = view.px(view.site(g));
            if !clipped || (p[0] >= lo && p[0] <= hi && p[1] >= lo && p[1] <= hi) {
                let _ = writeln!(svg, r#"<circle data-site="{i}" cx="{:.2}" cy="{:.2}" r="3"/>"#, p[0], p[1]);
            }
        }
        let _ = writeln!(svg, "</g>");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Plots of `t(u) = arccosh(1 + u)/√2` on `[0, 10]` and of `√t_KL(u)/u`
/// on `(0, 10]`, as two polylines. Returns the SVG and the sampled second
/// curve.
pub fn render_transforms(samples: usize) -> Result<(String, Vec<[f64; 2]>), CliError> {
    use cauchy_voronoi::divergences::{convert_chi_to_fr, convert_fr_to_kl};
    let (w, h, pad) = (640.0, 320.0, 40.0);
    let n = samples.max(2);
    let chi: Vec<[f64; 2]> = (0..=n)
        .map(|k| {
            let u = 10.0 * k as f64 / n as f64;
            [u, convert_chi_to_fr(u).expect("u ≥ 0")]
        })
        .collect();
    let witness: Vec<[f64; 2]> = (1..=n)
        .map(|k| {
            let u = 10.0 * k as f64 / n as f64;
            [u, convert_fr_to_kl(u).expect("u ≥ 0").sqrt() / u]
        })
        .collect();
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}">"#, 2.0 * w, h);
    let _ = writeln!(svg, "<!-- cauchy-voronoi {} -->", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(svg, r#"<rect width="{}" height="{h}" fill="white"/>"#, 2.0 * w);
    for (panel, (curve, title)) in [(&chi, "chi-square to Fisher-Rao"), (&witness, "sqrt(t_FR->KL(u))/u")].into_iter().enumerate() {
        let x0 = panel as f64 * w;
        let ymax = curve.iter().map(|p| p[1]).fold(0.0f64, f64::max) * 1.05;
        let map = |p: &[f64; 2]| [x0 + pad + p[0] / 10.0 * (w - 2.0 * pad), h - pad - p[1] / ymax * (h - 2.0 * pad)];
        let _ = writeln!(
            svg,
            r##"<g id="panel-{panel}"><text x="{:.1}" y="20" font-size="14">{title}</text>"##,
            x0 + pad
        );
        let _ = writeln!(
            svg,
            r##"<polyline class="axes" fill="none" stroke="#888888" points="{:.1},{:.1} {:.1},{:.1} {:.1},{:.1}"/>"##,
            x0 + pad,
            pad,
            x0 + pad,
            h - pad,
            x0 + w - pad,
            h - pad
        );
        let pts: Vec<[f64; 2]> = curve.iter().map(map).collect();
        let _ = writeln!(
            svg,
            r##"<polyline class="curve" fill="none" stroke="#1f4e79" stroke-width="1.5" points="{}"/></g>"##,
            points_attr(&pts)
        );
    }
    svg.push_str("</svg>\n");
    Ok((svg, witness))
}
