//! JSON and CSV file formats.
//!
//! Points are `[x, y]` pairs of 64-bit floats. Serialization uses the shortest
//! decimal that round-trips, and parsing is exact, so a polygon read and
//! written again is bit-identical.

use std::io::{Read, Write};

use capforge_core::shapes::SweepSeries;
use capforge_core::solve::{ClassificationVerdict, Projection, ShapeClass};
use capforge_core::{AngleStatus, CapCurve, CapReport, GeomError, Polygon, PolygonOptions, Vertex};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid polygon: {0}")]
    Polygon(#[from] GeomError),
    #[error("expected exactly one null vertex, found {0}")]
    MissingVertices(usize),
    #[error("vertex {index} is null but the free vertex is {free}")]
    UnexpectedNull { index: usize, free: usize },
    #[error("free vertex index {index} outside 1..={n}")]
    FreeIndex { index: usize, n: usize },
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Point = [f64; 2];

pub fn point(v: Vertex) -> Point {
    [v.re, v.im]
}

pub fn vertex(p: Point) -> Vertex {
    Vertex::new(p[0], p[1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub vertices: Vec<Point>,
}

impl PolygonJson {
    pub fn from_polygon(p: &Polygon) -> Self {
        PolygonJson { vertices: p.vertices().iter().copied().map(point).collect() }
    }

    pub fn to_polygon(&self, opts: PolygonOptions) -> Result<Polygon, GeomError> {
        Polygon::with_options(self.vertices.iter().copied().map(vertex).collect(), opts)
    }
}

pub fn read_polygon(reader: impl Read, opts: PolygonOptions) -> Result<Polygon, FormatError> {
    let json: PolygonJson = serde_json::from_reader(reader)?;
    Ok(json.to_polygon(opts)?)
}

/// Polygon file with some vertices left as `null`.
#[derive(Debug, Clone, Deserialize)]
pub struct PartialPolygonJson {
    pub vertices: Vec<Option<Point>>,
}

impl PartialPolygonJson {
    /// Fixed vertices (1-based) and the free index. With `free` given, the
    /// entry at that index is ignored whether or not it is null; otherwise the
    /// single null entry is the free vertex.
    pub fn split(&self, free: Option<usize>) -> Result<(Vec<(usize, Vertex)>, usize), FormatError> {
        let n = self.vertices.len();
        let nulls: Vec<usize> =
            self.vertices.iter().enumerate().filter(|(_, v)| v.is_none()).map(|(k, _)| k + 1).collect();
        let free = match free {
            Some(index) if index == 0 || index > n => return Err(FormatError::FreeIndex { index, n }),
            Some(index) => {
                if let Some(&other) = nulls.iter().find(|&&k| k != index) {
                    return Err(FormatError::UnexpectedNull { index: other, free: index });
                }
                index
            }
            None if nulls.len() == 1 => nulls[0],
            None => return Err(FormatError::MissingVertices(nulls.len())),
        };
        let fixed = self
            .vertices
            .iter()
            .enumerate()
            .filter(|&(k, _)| k + 1 != free)
            .map(|(k, v)| (k + 1, vertex(v.expect("non-free vertices are present"))))
            .collect();
        Ok((fixed, free))
    }
}

fn flag_name(flag: AngleStatus) -> &'static str {
    match flag {
        AngleStatus::Positive => "positive",
        AngleStatus::Degenerate => "degenerate",
        AngleStatus::NonPositive => "non_positive",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapReportJson {
    pub gap: Point,
    pub gap_abs: f64,
    pub gap_rel: f64,
    pub closed: bool,
    pub cap_simple: bool,
    pub positivity_ok: bool,
    pub omega: Point,
    pub tolerance: f64,
}

impl From<&CapReport> for CapReportJson {
    fn from(r: &CapReport) -> Self {
        CapReportJson {
            gap: point(r.gap),
            gap_abs: r.gap_abs,
            gap_rel: r.gap_rel,
            closed: r.closed,
            cap_simple: r.cap_simple,
            positivity_ok: r.positivity_ok,
            omega: point(r.omega),
            tolerance: r.tolerance,
        }
    }
}

/// Cap curve file: the `n + 1` cap vertices, the cap angles at vertices
/// `2..=n` with their flags, and optionally the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapCurveJson {
    pub vertices: Vec<Point>,
    pub cap_angles: Vec<f64>,
    pub flags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<CapReportJson>,
}

impl CapCurveJson {
    pub fn new(curve: &CapCurve, report: Option<&CapReport>) -> Self {
        CapCurveJson {
            vertices: curve.vertices.iter().copied().map(point).collect(),
            cap_angles: curve.cap_angles.clone(),
            flags: curve.flags.iter().map(|&f| flag_name(f).to_string()).collect(),
            report: report.map(CapReportJson::from),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub residual: Point,
    pub gap_rel: f64,
    pub shape_defect: f64,
    pub edge_spread: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub n: usize,
    pub shape_class: String,
    pub closes: bool,
    pub witness: WitnessJson,
}

impl VerdictJson {
    pub fn new(n: usize, v: &ClassificationVerdict) -> Self {
        let shape_class = match v.shape_class {
            ShapeClass::Equilateral => "equilateral",
            ShapeClass::Parallelogram => "parallelogram",
            ShapeClass::Generic => "generic",
        };
        VerdictJson {
            n,
            shape_class: shape_class.to_string(),
            closes: v.closes,
            witness: WitnessJson {
                residual: point(v.witness.residual),
                gap_rel: v.witness.gap_rel,
                shape_defect: v.witness.shape_defect,
                edge_spread: v.witness.edge_spread,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolvedJson {
    pub index: usize,
    pub vertex: Point,
    pub polygon: PolygonJson,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub invalid_reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionJson {
    pub polygon: PolygonJson,
    pub residual_before: Point,
    pub displacement: f64,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub invalid_reason: Option<String>,
}

impl From<&Projection> for ProjectionJson {
    fn from(p: &Projection) -> Self {
        ProjectionJson {
            polygon: PolygonJson { vertices: p.vertices.iter().copied().map(point).collect() },
            residual_before: point(p.residual_before),
            displacement: p.displacement,
            valid: p.polygon.is_ok(),
            invalid_reason: p.polygon.as_ref().err().map(|e| e.to_string()),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Seventeen significant digits, which round-trips every `f64`.
pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

pub const SWEEP_HEADER: [&str; 4] = ["n", "gap_abs", "gap_rel", "positivity_ok"];

/// Sweep CSV: header `n,gap_abs,gap_rel,positivity_ok`, one row per `n`.
pub fn write_sweep_csv(series: &SweepSeries, out: impl Write) -> Result<(), FormatError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for row in &series.rows {
        w.write_record([
            row.n.to_string(),
            format_f64(row.gap_abs),
            format_f64(row.gap_rel),
            row.positivity_ok.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRowJson {
    pub n: usize,
    pub gap_abs: f64,
    pub gap_rel: f64,
    pub positivity_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

pub fn sweep_json(series: &SweepSeries) -> Vec<SweepRowJson> {
    series
        .rows
        .iter()
        .map(|r| SweepRowJson {
            n: r.n,
            gap_abs: r.gap_abs,
            gap_rel: r.gap_rel,
            positivity_ok: r.positivity_ok,
            error: r.error.as_ref().map(|e| e.to_string()),
        })
        .collect()
}
