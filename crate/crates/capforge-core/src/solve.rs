//! Working with the closed cap condition as a linear constraint.
//!
//! The gap is complex-affine in every single vertex, so fixing all but one
//! vertex leaves exactly one closing position. The constraint
//! `sum_k omega^k v_k = 0` also admits a minimal-norm projection, and for
//! `n = 3` and `n = 4` it reduces to the equilateral and parallelogram tests.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::cap::{gap_of_vertices, residual_of_vertices, satisfies_closed_cap, CapCurve};
use crate::geom::{GeomError, Polygon};
use crate::{cis, omega, omega_pow, Vertex};

#[derive(Debug, Clone, PartialEq)]
pub enum SolveError {
    /// n must be at least 3.
    TooFewVertices { n: usize },
    WrongCount { expected: usize, found: usize },
    IndexOutOfRange { index: usize, n: usize },
    DuplicateIndex { index: usize },
    WrongSize { expected: usize, found: usize },
    NotUpperHalfPlane { re: f64, im: f64 },
    Determinant { det: i64 },
    Geom(GeomError),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::TooFewVertices { n } => write!(f, "polygon size {n} is below 3"),
            SolveError::WrongCount { expected, found } => {
                write!(f, "expected {expected} fixed vertices, found {found}")
            }
            SolveError::IndexOutOfRange { index, n } => {
                write!(f, "vertex index {index} outside 1..={n}")
            }
            SolveError::DuplicateIndex { index } => write!(f, "vertex index {index} given twice"),
            SolveError::WrongSize { expected, found } => {
                write!(f, "expected a {expected}-gon, found {found} vertices")
            }
            SolveError::NotUpperHalfPlane { re, im } => {
                write!(f, "tau = {re} + {im}i is not in the upper half-plane")
            }
            SolveError::Determinant { det } => write!(f, "matrix determinant is {det}, expected 1"),
            SolveError::Geom(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SolveError {}

impl From<GeomError> for SolveError {
    fn from(e: GeomError) -> Self {
        SolveError::Geom(e)
    }
}

/// `gap(v_j) = a v_j + b` with every other vertex held fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineCoeffs {
    pub a: Vertex,
    pub b: Vertex,
}

impl AffineCoeffs {
    pub fn eval(&self, v: Vertex) -> Vertex {
        self.a * v + self.b
    }
}

fn check_fixed(fixed: &[(usize, Vertex)], free_index: usize, n: usize) -> Result<(), SolveError> {
    if n < 3 {
        return Err(SolveError::TooFewVertices { n });
    }
    if free_index == 0 || free_index > n {
        return Err(SolveError::IndexOutOfRange { index: free_index, n });
    }
    if fixed.len() != n - 1 {
        return Err(SolveError::WrongCount { expected: n - 1, found: fixed.len() });
    }
    let mut seen = alloc::vec![false; n + 1];
    seen[free_index] = true;
    for &(index, _) in fixed {
        if index == 0 || index > n {
            return Err(SolveError::IndexOutOfRange { index, n });
        }
        if seen[index] {
            return Err(SolveError::DuplicateIndex { index });
        }
        seen[index] = true;
    }
    Ok(())
}

/// Coefficients of the gap as a function of the free vertex (1-based indices).
/// `a = (1 - omega) omega^(j-2)` never vanishes for `n >= 3`.
pub fn affine_coeffs(
    fixed: &[(usize, Vertex)],
    free_index: usize,
    n: usize,
) -> Result<AffineCoeffs, SolveError> {
    check_fixed(fixed, free_index, n)?;
    let one_minus = Vertex::new(1.0, 0.0) - omega(n);
    let a = one_minus * omega_pow(n, free_index as i64 - 2);
    let b = fixed
        .iter()
        .map(|&(k, v)| one_minus * omega_pow(n, k as i64 - 2) * v)
        .sum();
    Ok(AffineCoeffs { a, b })
}

/// The unique vertex position that closes the cap, `-b / a`. The completed
/// polygon still has to be validated by the caller.
pub fn solve_free_vertex(
    fixed: &[(usize, Vertex)],
    free_index: usize,
    n: usize,
) -> Result<Vertex, SolveError> {
    let c = affine_coeffs(fixed, free_index, n)?;
    Ok(-c.b / c.a)
}

/// Inserts `free` at `free_index` among `fixed`, returning the ordered vertex list.
pub fn assemble(fixed: &[(usize, Vertex)], free_index: usize, free: Vertex, n: usize) -> Result<Vec<Vertex>, SolveError> {
    check_fixed(fixed, free_index, n)?;
    let mut out = alloc::vec![Vertex::new(0.0, 0.0); n];
    out[free_index - 1] = free;
    for &(k, v) in fixed {
        out[k - 1] = v;
    }
    Ok(out)
}

/// Outcome of [`project_to_closed`].
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub vertices: Vec<Vertex>,
    pub residual_before: Vertex,
    /// Euclidean norm of the vertex displacement.
    pub displacement: f64,
    /// The projected vertices as a validated polygon, or why they are not one.
    pub polygon: Result<Polygon, GeomError>,
}

/// Minimal-norm correction onto `sum_k omega^k v_k = 0` for a raw vertex list:
/// `v_k - omega^-k s / n`.
pub fn project_vertices(v: &[Vertex]) -> Vec<Vertex> {
    let n = v.len();
    let s = residual_of_vertices(v);
    let shift = s.unscale(n as f64);
    v.iter()
        .enumerate()
        .map(|(i, &vk)| vk - omega_pow(n, -(i as i64 + 1)) * shift)
        .collect()
}

pub fn project_to_closed(p: &Polygon) -> Projection {
    let residual_before = residual_of_vertices(p.vertices());
    let vertices = project_vertices(p.vertices());
    let displacement =
        libm::sqrt(p.vertices().iter().zip(&vertices).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>());
    let polygon = Polygon::new(vertices.clone());
    Projection { vertices, residual_before, displacement, polygon }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeClass {
    Equilateral,
    Parallelogram,
    Generic,
}

/// Diagnostic values behind a [`ClassificationVerdict`]. Both defects are
/// relative to the perimeter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub residual: Vertex,
    pub gap_rel: f64,
    pub shape_defect: f64,
    pub edge_spread: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassificationVerdict {
    pub shape_class: ShapeClass,
    pub closes: bool,
    pub witness: Witness,
}

fn verdict(p: &Polygon, shape_defect: f64, class: ShapeClass, tol: f64) -> ClassificationVerdict {
    let perimeter = p.perimeter();
    let check = satisfies_closed_cap(p, tol);
    let lengths = p.edge_lengths();
    let max = lengths.iter().cloned().fold(f64::MIN, f64::max);
    let min = lengths.iter().cloned().fold(f64::MAX, f64::min);
    let shape_defect = shape_defect / perimeter;
    ClassificationVerdict {
        shape_class: if shape_defect <= tol { class } else { ShapeClass::Generic },
        closes: check.closed,
        witness: Witness {
            residual: check.residual,
            gap_rel: gap_of_vertices(p.vertices()).norm() / perimeter,
            shape_defect,
            edge_spread: (max - min) / perimeter,
        },
    }
}

/// Equal sides on a counterclockwise triangle, tested as
/// `v_3 - v_1 = exp(i pi / 3) (v_2 - v_1)` relative to the perimeter.
pub fn classify_triangle(p: &Polygon, tol: f64) -> Result<ClassificationVerdict, SolveError> {
    if p.len() != 3 {
        return Err(SolveError::WrongSize { expected: 3, found: p.len() });
    }
    let v = p.vertices();
    let defect = ((v[2] - v[0]) - cis(PI / 3.0) * (v[1] - v[0])).norm();
    Ok(verdict(p, defect, ShapeClass::Equilateral, tol))
}

/// Parallelogram test `v_2 - v_1 = v_3 - v_4` relative to the perimeter.
pub fn classify_quadrilateral(p: &Polygon, tol: f64) -> Result<ClassificationVerdict, SolveError> {
    if p.len() != 4 {
        return Err(SolveError::WrongSize { expected: 4, found: p.len() });
    }
    let v = p.vertices();
    let defect = ((v[1] - v[0]) - (v[2] - v[3])).norm();
    Ok(verdict(p, defect, ShapeClass::Parallelogram, tol))
}

/// A point of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauParameter(Vertex);

impl TauParameter {
    pub fn new(tau: Vertex) -> Result<Self, SolveError> {
        if !tau.re.is_finite() || !tau.im.is_finite() || tau.im <= 0.0 {
            return Err(SolveError::NotUpperHalfPlane { re: tau.re, im: tau.im });
        }
        Ok(TauParameter(tau))
    }

    pub fn value(self) -> Vertex {
        self.0
    }

    /// `|tau| > 1` and `|Re tau| < 1/2`.
    pub fn in_fundamental_domain(self) -> bool {
        self.0.norm() > 1.0 && self.0.re.abs() < 0.5
    }
}

/// The parallelogram `Q(tau)` with vertices `0, 1, tau, tau - 1`.
pub fn q_tau(t: TauParameter) -> Result<Polygon, SolveError> {
    let tau = t.value();
    Ok(Polygon::new(alloc::vec![
        Vertex::new(0.0, 0.0),
        Vertex::new(1.0, 0.0),
        tau,
        tau - 1.0
    ])?)
}

/// Mobius action `tau -> (a tau + b) / (c tau + d)` of an integer matrix with
/// determinant 1, given as `[[a, b], [c, d]]`.
pub fn modular_transform(t: TauParameter, m: [[i64; 2]; 2]) -> Result<TauParameter, SolveError> {
    let [[a, b], [c, d]] = m;
    let det = a * d - b * c;
    if det != 1 {
        return Err(SolveError::Determinant { det });
    }
    let tau = t.value();
    let num = tau * a as f64 + b as f64;
    let den = tau * c as f64 + d as f64;
    TauParameter::new(num / den)
}

/// Whether `c2 = a c1 + b` vertex by vertex for some `a != 0`. The map is
/// fitted on the first edge and checked on every vertex, with `tol` relative to
/// the length of `c2`. Curves with different vertex counts are never similar.
pub fn caps_similar(c1: &CapCurve, c2: &CapCurve, tol: f64) -> bool {
    let (v, w) = (&c1.vertices, &c2.vertices);
    if v.len() != w.len() || v.len() < 2 {
        return false;
    }
    let base = v[1] - v[0];
    if base.norm_sqr() == 0.0 {
        return false;
    }
    let a = (w[1] - w[0]) / base;
    if a.norm_sqr() == 0.0 {
        return false;
    }
    let b = w[0] - a * v[0];
    let scale: f64 = w.windows(2).map(|p| (p[1] - p[0]).norm()).sum();
    v.iter().zip(w).all(|(&x, &y)| (y - (a * x + b)).norm() <= tol * scale)
}
