//! Boundary samplers with exact exterior maps, and gap-versus-n sweeps.
//!
//! A shape is sampled at `v_k = Phi(exp(2 pi i k / n))`, `k = 1..=n`, where
//! `Phi` maps the exterior of the unit disk onto the exterior of the shape.
//! Uniform defects on these samples are the atomic approximation of the
//! harmonic measure of the boundary.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::cap::{construct_cap, DefectProfile};
use crate::geom::{GeomError, Polygon};
use crate::{cis, Vertex};

#[derive(Debug, Clone, PartialEq)]
pub enum ShapeError {
    TooFewSamples { n: usize },
    InvalidEllipse { a: f64, b: f64 },
    InvalidRadius { radius: f64 },
    /// Resampling a polygon by midpoint refinement needs `n = base * 2^k`.
    ResampleSize { n: usize, base: usize },
    NotIncreasing { previous: usize, next: usize },
    Geom(GeomError),
}

impl fmt::Display for ShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeError::TooFewSamples { n } => write!(f, "need at least 3 samples, got {n}"),
            ShapeError::InvalidEllipse { a, b } => {
                write!(f, "ellipse semi-axes must satisfy a >= b > 0 (got a = {a}, b = {b})")
            }
            ShapeError::InvalidRadius { radius } => write!(f, "circle radius must be positive (got {radius})"),
            ShapeError::ResampleSize { n, base } => {
                write!(f, "{n} samples is not {base} times a power of two")
            }
            ShapeError::NotIncreasing { previous, next } => {
                write!(f, "sample counts must strictly increase ({previous} then {next})")
            }
            ShapeError::Geom(e) => write!(f, "sampled polygon is invalid: {e}"),
        }
    }
}

impl core::error::Error for ShapeError {}

impl From<GeomError> for ShapeError {
    fn from(e: GeomError) -> Self {
        ShapeError::Geom(e)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryShape {
    /// `Phi(z) = r z`.
    Circle { radius: f64 },
    /// `Phi(z) = ((a + b) z + (a - b) / z) / 2`, semi-axes `a >= b > 0`.
    Ellipse { a: f64, b: f64 },
    /// Midpoint refinements of a fixed polygon; no conformal map involved.
    PolygonResample { base: Polygon },
}

impl BoundaryShape {
    fn validate(&self) -> Result<(), ShapeError> {
        match *self {
            BoundaryShape::Circle { radius } if !(radius > 0.0 && radius.is_finite()) => {
                Err(ShapeError::InvalidRadius { radius })
            }
            BoundaryShape::Ellipse { a, b } if !(b > 0.0 && a >= b && a.is_finite()) => {
                Err(ShapeError::InvalidEllipse { a, b })
            }
            _ => Ok(()),
        }
    }

    /// The exterior map at `z`, for the shapes that have one.
    pub fn exterior_map(&self, z: Vertex) -> Option<Vertex> {
        match *self {
            BoundaryShape::Circle { radius } => Some(z.scale(radius)),
            BoundaryShape::Ellipse { a, b } => Some((z.scale(a + b) + z.inv().scale(a - b)).scale(0.5)),
            BoundaryShape::PolygonResample { .. } => None,
        }
    }
}

/// Samples `n` boundary points counterclockwise.
pub fn sample_boundary(s: &BoundaryShape, n: usize) -> Result<Polygon, ShapeError> {
    if n < 3 {
        return Err(ShapeError::TooFewSamples { n });
    }
    s.validate()?;
    if let BoundaryShape::PolygonResample { base } = s {
        let m = base.len();
        if !n.is_multiple_of(m) || !(n / m).is_power_of_two() {
            return Err(ShapeError::ResampleSize { n, base: m });
        }
        let mut p = base.clone();
        while p.len() < n {
            p = midpoint_refine(&p);
        }
        return Ok(p);
    }
    let vertices = (1..=n)
        .map(|k| {
            let z = cis(2.0 * PI * k as f64 / n as f64);
            s.exterior_map(z).expect("conformal shapes have a map")
        })
        .collect();
    Ok(Polygon::new(vertices)?)
}

/// Inserts the midpoint of every edge, giving `2n` vertices on the same boundary.
pub fn midpoint_refine(p: &Polygon) -> Polygon {
    let v = p.vertices();
    let n = v.len();
    let mut out = Vec::with_capacity(2 * n);
    for k in 0..n {
        let next = v[(k + 1) % n];
        out.push(v[k]);
        out.push((v[k] + next).scale(0.5));
    }
    Polygon::new(out).expect("midpoint refinement keeps a valid polygon valid")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub gap_abs: f64,
    pub gap_rel: f64,
    pub positivity_ok: bool,
    /// Set when sampling failed; the numeric fields are then NaN.
    pub error: Option<ShapeError>,
}

impl SweepRow {
    pub fn is_valid(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepSeries {
    pub rows: Vec<SweepRow>,
}

impl SweepSeries {
    pub fn row(&self, n: usize) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

/// One sweep row: sample, build the uniform-defect cap past any negative
/// angles, and record the gap.
pub fn sweep_row(s: &BoundaryShape, n: usize) -> SweepRow {
    let sampled = sample_boundary(s, n).map(|p| {
        let curve = construct_cap(&p, &DefectProfile::uniform(n), true)
            .expect("uniform profile matches the sample count");
        (p, curve)
    });
    match sampled {
        Ok((p, curve)) => {
            let gap_abs = curve.gap().norm();
            SweepRow {
                n,
                gap_abs,
                gap_rel: gap_abs / p.perimeter(),
                positivity_ok: curve.positivity_ok(),
                error: None,
            }
        }
        Err(e) => SweepRow { n, gap_abs: f64::NAN, gap_rel: f64::NAN, positivity_ok: false, error: Some(e) },
    }
}

pub fn check_n_values(n_values: &[usize]) -> Result<(), ShapeError> {
    for w in n_values.windows(2) {
        if w[1] <= w[0] {
            return Err(ShapeError::NotIncreasing { previous: w[0], next: w[1] });
        }
    }
    match n_values.first() {
        Some(&n) if n < 3 => Err(ShapeError::TooFewSamples { n }),
        _ => Ok(()),
    }
}

/// Gap of the uniform-defect cap for each sample count in `n_values`.
pub fn gap_sweep(s: &BoundaryShape, n_values: &[usize]) -> Result<SweepSeries, ShapeError> {
    check_n_values(n_values)?;
    s.validate()?;
    Ok(SweepSeries { rows: n_values.iter().map(|&n| sweep_row(s, n)).collect() })
}
