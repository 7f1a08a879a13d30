//! JSON file formats and atomic writes.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use cauchy_voronoi::divergences::{CauchyParam, DivergenceKind};
use cauchy_voronoi::power_diagram::{Cell, ClipRegion, Edge, EdgeKind, EdgeRef, PlanarSubdivision, MERGE_TOLERANCE};
use cauchy_voronoi::voronoi::{
    CauchyVoronoiDiagram, Coordinates, DelaunayComplex, EMPTY_SPHERE_TOLERANCE, ORTHOGONALITY_TOLERANCE,
};

use crate::CliError;

pub const FORMAT: &str = "cauchy-voronoi/1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Site {
    pub l: f64,
    pub s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SiteFile {
    pub format: String,
    pub sites: Vec<Site>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl SiteFile {
    pub fn new(params: &[CauchyParam], seed: Option<u64>) -> SiteFile {
        SiteFile {
            format: FORMAT.into(),
            sites: params.iter().map(|p| Site { l: p.location(), s: p.scale() }).collect(),
            labels: None,
            seed,
        }
    }

    /// Checked parameters; errors name the offending field.
    pub fn params(&self) -> Result<Vec<CauchyParam>, CliError> {
        check_format(&self.format)?;
        if self.sites.is_empty() {
            return Err(CliError::Input("sites: at least one site is required".into()));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.sites.len() {
                return Err(CliError::Input(format!(
                    "labels: {} labels for {} sites",
                    labels.len(),
                    self.sites.len()
                )));
            }
        }
        self.sites
            .iter()
            .enumerate()
            .map(|(i, s)| CauchyParam::new(s.l, s.s).map_err(|e| CliError::Input(format!("sites[{i}]: {e}"))))
            .collect()
    }
}

fn check_format(format: &str) -> Result<(), CliError> {
    if format != FORMAT {
        return Err(CliError::Input(format!("format: expected \"{FORMAT}\", found \"{format}\"")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ClipJson {
    UnitDisk,
    Rect { min: [f64; 2], max: [f64; 2] },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub vertices: [usize; 2],
    pub left: usize,
    pub right: Option<usize>,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellJson {
    /// `(edge, reversed)` pairs in counterclockwise order.
    pub boundary: Vec<(usize, bool)>,
    pub whole: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelaunayJson {
    pub edges: Vec<(usize, usize)>,
    pub triangles: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub merge: f64,
    pub empty_sphere: f64,
    pub orthogonality: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub seed: Option<u64>,
    pub tolerances: Tolerances,
}

impl Provenance {
    pub fn new(seed: Option<u64>) -> Provenance {
        Provenance {
            tool: "cauchy-voronoi".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed,
            tolerances: Tolerances {
                merge: MERGE_TOLERANCE,
                empty_sphere: EMPTY_SPHERE_TOLERANCE,
                orthogonality: ORTHOGONALITY_TOLERANCE,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramFile {
    pub format: String,
    pub generators: Vec<Site>,
    pub kind: String,
    /// `klein` or `location-scale`.
    pub coordinates: String,
    pub clip: ClipJson,
    pub vertices: Vec<[f64; 2]>,
    pub edges: Vec<EdgeJson>,
    pub cells: Vec<CellJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delaunay: Option<DelaunayJson>,
    pub provenance: Provenance,
}

impl DiagramFile {
    pub fn new(d: &CauchyVoronoiDiagram, delaunay: Option<&DelaunayComplex>, seed: Option<u64>) -> DiagramFile {
        let sub = &d.subdivision;
        DiagramFile {
            format: FORMAT.into(),
            generators: d.generators.iter().map(|p| Site { l: p.location(), s: p.scale() }).collect(),
            kind: d.kind.name().into(),
            coordinates: match d.coordinates {
                Coordinates::Klein => "klein",
                Coordinates::LocationScale => "location-scale",
            }
            .into(),
            clip: match sub.clip {
                ClipRegion::UnitDisk => ClipJson::UnitDisk,
                ClipRegion::Rect { min, max } => ClipJson::Rect { min, max },
            },
            vertices: sub.vertices.clone(),
            edges: sub
                .edges
                .iter()
                .map(|e| EdgeJson {
                    vertices: e.vertices,
                    left: e.left,
                    right: e.right,
                    kind: match e.kind {
                        EdgeKind::Bisector => "bisector",
                        EdgeKind::Clip => "clip",
                    }
                    .into(),
                })
                .collect(),
            cells: sub
                .cells
                .iter()
                .map(|c| CellJson {
                    boundary: c.boundary.iter().map(|r| (r.edge, r.reversed)).collect(),
                    whole: c.whole,
                })
                .collect(),
            delaunay: delaunay.map(|c| DelaunayJson {
                edges: c.edges.clone(),
                triangles: c.triangles.clone(),
            }),
            provenance: Provenance::new(seed),
        }
    }

    /// Rebuild the diagram, checking every index.
    pub fn to_diagram(&self) -> Result<CauchyVoronoiDiagram, CliError> {
        check_format(&self.format)?;
        let bad = |msg: String| CliError::Input(msg);
        let generators = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, s)| CauchyParam::new(s.l, s.s).map_err(|e| bad(format!("generators[{i}]: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let kind: DivergenceKind = self.kind.parse().map_err(|e| bad(format!("kind: {e}")))?;
        let coordinates = match self.coordinates.as_str() {
            "klein" => Coordinates::Klein,
            "location-scale" => Coordinates::LocationScale,
            other => return Err(bad(format!("coordinates: unknown value \"{other}\""))),
        };
        let (nv, ne, nc) = (self.vertices.len(), self.edges.len(), generators.len());
        if self.cells.len() != nc {
            return Err(bad(format!("cells: {} cells for {nc} generators", self.cells.len())));
        }
        let mut edges = Vec::with_capacity(ne);
        for (i, e) in self.edges.iter().enumerate() {
            if e.vertices.iter().any(|&v| v >= nv) || e.left >= nc || e.right.is_some_and(|r| r >= nc) {
                return Err(bad(format!("edges[{i}]: index out of range")));
            }
            let kind = match e.kind.as_str() {
                "bisector" => EdgeKind::Bisector,
                "clip" => EdgeKind::Clip,
                other => return Err(bad(format!("edges[{i}].kind: unknown value \"{other}\""))),
            };
            edges.push(Edge { vertices: e.vertices, left: e.left, right: e.right, kind });
        }
        let mut cells = Vec::with_capacity(nc);
        for (i, c) in self.cells.iter().enumerate() {
            if let Some(&(e, _)) = c.boundary.iter().find(|(e, _)| *e >= ne) {
                return Err(bad(format!("cells[{i}].boundary: edge {e} out of range")));
            }
            cells.push(Cell {
                boundary: c.boundary.iter().map(|&(edge, reversed)| EdgeRef { edge, reversed }).collect(),
                whole: c.whole,
            });
        }
        if let Some(d) = &self.delaunay {
            let out = |i: usize| i >= nc;
            if d.edges.iter().any(|&(a, b)| out(a) || out(b)) || d.triangles.iter().any(|t| t.iter().any(|&i| out(i))) {
                return Err(bad("delaunay: generator index out of range".into()));
            }
        }
        let clip = match self.clip {
            ClipJson::UnitDisk => ClipRegion::UnitDisk,
            ClipJson::Rect { min, max } => ClipRegion::Rect { min, max },
        };
        Ok(CauchyVoronoiDiagram {
            generators,
            kind,
            subdivision: PlanarSubdivision { vertices: self.vertices.clone(), edges, cells, clip },
            coordinates,
        })
    }
}

/// Parse JSON, reporting the line and column of syntax or schema errors.
pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_site_file(path: &Path) -> Result<SiteFile, CliError> {
    parse_json(&read_text(path)?, &path.display().to_string())
}

pub fn read_diagram_file(path: &Path) -> Result<DiagramFile, CliError> {
    parse_json(&read_text(path)?, &path.display().to_string())
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file types serialize");
    s.push('\n');
    s
}

/// Write through a temporary file in the target directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Samples for `classify`: a JSON array of numbers, or whitespace-separated
/// numbers (with `#` comments).
pub fn parse_samples(text: &str) -> Result<Vec<f64>, CliError> {
    if text.trim_start().starts_with('[') {
        return parse_json(text, "samples");
    }
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            let x: f64 = tok
                .parse()
                .map_err(|_| CliError::Input(format!("samples line {}: cannot parse \"{tok}\"", n + 1)))?;
            if !x.is_finite() {
                return Err(CliError::Input(format!("samples line {}: non-finite value", n + 1)));
            }
            out.push(x);
        }
    }
    Ok(out)
}
