//! Polygon primitives in the complex plane.
//!
//! Vertices are complex numbers. A [`Polygon`] is a validated, counterclockwise,
//! simple vertex cycle; straight-angle vertices are allowed so that a square can
//! be treated as an octagon with a vertex at the midpoint of each side.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::{cross, dot, Vertex};

/// Relative geometric tolerance; multiplied by the polygon diameter.
pub const DEFAULT_GEOM_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum GeomError {
    TooFewVertices { found: usize, required: usize },
    NonFinite { index: usize },
    /// `v_index` coincides with its successor (1-based).
    RepeatedVertex { index: usize },
    Collinear,
    Clockwise { signed_area: f64 },
    NotSimple { violations: Vec<(usize, usize)> },
    ZeroScale,
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::TooFewVertices { found, required } => {
                write!(f, "need at least {required} vertices, found {found}")
            }
            GeomError::NonFinite { index } => write!(f, "vertex {index} has a non-finite coordinate"),
            GeomError::RepeatedVertex { index } => {
                write!(f, "vertex {index} coincides with the next vertex (zero-length edge)")
            }
            GeomError::Collinear => f.write_str("all vertices are collinear"),
            GeomError::Clockwise { signed_area } => {
                write!(f, "vertices are in clockwise order (signed area {signed_area})")
            }
            GeomError::NotSimple { violations } => {
                write!(f, "boundary is not simple; intersecting edge pairs: {violations:?}")
            }
            GeomError::ZeroScale => f.write_str("similarity factor must be nonzero"),
        }
    }
}

impl core::error::Error for GeomError {}

/// Options for [`Polygon::with_options`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolygonOptions {
    /// Reverse clockwise input instead of rejecting it.
    pub normalize_orientation: bool,
    /// Coincidence/intersection tolerance relative to the polygon diameter.
    pub rel_tol: f64,
}

impl Default for PolygonOptions {
    fn default() -> Self {
        PolygonOptions { normalize_orientation: false, rel_tol: DEFAULT_GEOM_REL_TOL }
    }
}

/// Shoelace signed area. Positive for counterclockwise vertex order.
pub fn signed_area(points: &[Vertex]) -> Result<f64, GeomError> {
    if points.len() < 3 {
        return Err(GeomError::TooFewVertices { found: points.len(), required: 3 });
    }
    let origin = points[0];
    let mut twice = 0.0;
    for w in points[1..].windows(2) {
        twice += cross(w[0] - origin, w[1] - origin);
    }
    Ok(0.5 * twice)
}

/// Largest pairwise distance between points.
pub fn diameter(points: &[Vertex]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            d = d.max((p - q).norm());
        }
    }
    d
}

/// Result of [`is_simple`]. Violations are pairs of 1-based segment indices,
/// where segment `k` joins point `k` and point `k + 1` (wrapping when closed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityReport {
    pub simple: bool,
    pub violations: Vec<(usize, usize)>,
}

fn point_segment_distance(p: Vertex, a: Vertex, b: Vertex) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (dot(p - a, ab) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

fn segments_cross(a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> bool {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

fn segment_distance(a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> f64 {
    if segments_cross(a, b, c, d) {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

/// Pairwise segment intersection test on a polyline (or closed polygon when
/// `closed`). Adjacent segments may share their common endpoint; every other
/// contact within `eps` is a violation, including an adjacent segment folding
/// back onto its neighbour.
pub fn is_simple(points: &[Vertex], closed: bool, eps: f64) -> SimplicityReport {
    let n = points.len();
    let m = if closed { n } else { n.saturating_sub(1) };
    let seg = |k: usize| (points[k], points[(k + 1) % n]);
    // padded bounding boxes for a cheap rejection
    let boxes: Vec<[f64; 4]> = (0..m)
        .map(|k| {
            let (a, b) = seg(k);
            [a.re.min(b.re) - eps, a.re.max(b.re) + eps, a.im.min(b.im) - eps, a.im.max(b.im) + eps]
        })
        .collect();
    let mut violations = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let (bi, bj) = (&boxes[i], &boxes[j]);
            if bi[0] > bj[1] || bj[0] > bi[1] || bi[2] > bj[3] || bj[2] > bi[3] {
                continue;
            }
            let (a, b) = seg(i);
            let (c, d) = seg(j);
            let touching = if j == i + 1 {
                // shared endpoint b == c
                point_segment_distance(d, a, b) <= eps || point_segment_distance(a, c, d) <= eps
            } else if closed && i == 0 && j == m - 1 {
                // shared endpoint a == d
                point_segment_distance(c, a, b) <= eps || point_segment_distance(b, c, d) <= eps
            } else {
                segment_distance(a, b, c, d) <= eps
            };
            if touching {
                violations.push((i + 1, j + 1));
            }
        }
    }
    SimplicityReport { simple: violations.is_empty(), violations }
}

/// Signed counterclockwise turning from `a` to `b`, in (-pi, pi].
pub fn turn(a: Vertex, b: Vertex) -> f64 {
    libm::atan2(cross(a, b), dot(a, b))
}

/// A simple polygon with counterclockwise vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vertex>,
}

impl Polygon {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self, GeomError> {
        Self::with_options(vertices, PolygonOptions::default())
    }

    pub fn with_options(mut vertices: Vec<Vertex>, opts: PolygonOptions) -> Result<Self, GeomError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::TooFewVertices { found: n, required: 3 });
        }
        if let Some(index) = vertices.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(GeomError::NonFinite { index: index + 1 });
        }
        let diam = diameter(&vertices);
        let eps = opts.rel_tol * diam;
        for k in 0..n {
            if (vertices[(k + 1) % n] - vertices[k]).norm() <= eps {
                return Err(GeomError::RepeatedVertex { index: k + 1 });
            }
        }
        let area = signed_area(&vertices)?;
        if area.abs() <= eps * diam {
            return Err(GeomError::Collinear);
        }
        if area < 0.0 {
            if !opts.normalize_orientation {
                return Err(GeomError::Clockwise { signed_area: area });
            }
            vertices.reverse();
        }
        let report = is_simple(&vertices, true, eps);
        if !report.simple {
            return Err(GeomError::NotSimple { violations: report.violations });
        }
        Ok(Polygon { vertices })
    }

    pub fn from_xy(coords: &[(f64, f64)]) -> Result<Self, GeomError> {
        Self::new(coords.iter().map(|&(x, y)| Vertex::new(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Always false; a polygon has at least three vertices.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.vertices
    }

    /// `s_k = v_{k+1} - v_k`, wrapping at the end.
    pub fn edges(&self) -> Vec<Vertex> {
        edges_of(&self.vertices)
    }

    pub fn edge_lengths(&self) -> Vec<f64> {
        self.edges().iter().map(|s| s.norm()).collect()
    }

    pub fn perimeter(&self) -> f64 {
        self.edge_lengths().iter().sum()
    }

    pub fn diameter(&self) -> f64 {
        diameter(&self.vertices)
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.vertices).expect("polygon has at least three vertices")
    }

    /// Counterclockwise turning angle at each vertex: `alpha_k` is the turn
    /// from `s_{k-1}` into `s_k`. Sums to `2 pi`.
    pub fn turning_angles(&self) -> Vec<f64> {
        let s = self.edges();
        let n = s.len();
        (0..n).map(|k| turn(s[(k + n - 1) % n], s[k])).collect()
    }

    /// Interior angle `theta_k = pi - alpha_k`, in (0, 2 pi); reflex vertices
    /// exceed pi and straight vertices are exactly pi.
    pub fn internal_angles(&self) -> Vec<f64> {
        self.turning_angles().into_iter().map(|a| PI - a).collect()
    }

    /// Same cycle, enumerated from the vertex at 0-based position `start`.
    pub fn relabeled(&self, start: usize) -> Polygon {
        let mut vertices = self.vertices.clone();
        vertices.rotate_left(start % self.len());
        Polygon { vertices }
    }

    /// Maps every vertex through `z -> a z + b`.
    pub fn similarity_apply(&self, a: Vertex, b: Vertex) -> Result<Polygon, GeomError> {
        if a.norm_sqr() == 0.0 || !(a.re.is_finite() && a.im.is_finite()) {
            return Err(GeomError::ZeroScale);
        }
        Polygon::new(self.vertices.iter().map(|&v| a * v + b).collect())
    }
}

pub(crate) fn edges_of(vertices: &[Vertex]) -> Vec<Vertex> {
    let n = vertices.len();
    (0..n).map(|k| vertices[(k + 1) % n] - vertices[k]).collect()
}
