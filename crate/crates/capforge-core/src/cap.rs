//! The cap construction and the closed cap condition.
//!
//! Starting from `v^_1 = v_1`, `v^_2 = v_2`, the construction lays down cap
//! edges of length `l_k` one at a time. At vertex `k` the cap angle is
//! `theta^_k = 2 pi - theta_k - kappa_k` and the next edge turns clockwise by
//! `beta_k = pi - theta^_k` from the previous cap edge. With uniform defects
//! the `k`-th cap edge is `omega^(k-1) s_k`, which gives the closed form
//! `gap = sum_k (1 - omega) omega^(k-2) v_k`.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::geom::{self, is_simple, Polygon};
use crate::{cis, omega, omega_pow, Vertex};

/// Cap angles at or below this are reported as degenerate (but still positive).
pub const ANGLE_EPS: f64 = 1e-12;
/// Tolerance on the sum of a defect profile.
pub const DEFECT_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum CapError {
    /// The cap angle at 1-based vertex `index` is not positive; the curve up to
    /// `v^_index` is carried in `partial`.
    NonPositiveAngle { index: usize, angle: f64, partial: Box<CapCurve> },
    LengthMismatch { polygon: usize, defects: usize },
    InvalidDefects { len: usize, sum: f64 },
}

impl fmt::Display for CapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CapError::NonPositiveAngle { index, angle, .. } => write!(
                f,
                "cap angle at vertex {index} is {angle} rad (not positive); the cap cannot be constructed"
            ),
            CapError::LengthMismatch { polygon, defects } => {
                write!(f, "defect profile has {defects} entries but the polygon has {polygon} vertices")
            }
            CapError::InvalidDefects { len, sum } => write!(
                f,
                "defect profile of length {len} must have at least 3 finite entries summing to 4 pi (sum is {sum})"
            ),
        }
    }
}

impl core::error::Error for CapError {}

/// Angular defect `kappa_k` at every vertex, summing to `4 pi`.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectProfile {
    defects: Vec<f64>,
}

impl DefectProfile {
    /// `kappa_k = 4 pi / n` at every vertex.
    pub fn uniform(n: usize) -> Self {
        let kappa = 4.0 * PI / n as f64;
        DefectProfile { defects: alloc::vec![kappa; n] }
    }

    pub fn new(defects: Vec<f64>) -> Result<Self, CapError> {
        let sum: f64 = defects.iter().sum();
        if defects.len() < 3 || !sum.is_finite() || (sum - 4.0 * PI).abs() > DEFECT_SUM_TOL {
            return Err(CapError::InvalidDefects { len: defects.len(), sum });
        }
        Ok(DefectProfile { defects })
    }

    pub fn len(&self) -> usize {
        self.defects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn defects(&self) -> &[f64] {
        &self.defects
    }

    pub fn is_uniform(&self) -> bool {
        let kappa = 4.0 * PI / self.len() as f64;
        self.defects.iter().all(|&d| d == kappa)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleStatus {
    Positive,
    /// In `(0, ANGLE_EPS]`.
    Degenerate,
    NonPositive,
}

impl AngleStatus {
    fn of(angle: f64) -> Self {
        if angle > ANGLE_EPS {
            AngleStatus::Positive
        } else if angle > 0.0 {
            AngleStatus::Degenerate
        } else {
            AngleStatus::NonPositive
        }
    }

    pub fn is_ok(self) -> bool {
        self != AngleStatus::NonPositive
    }
}

/// The polygonal cap curve `v^_1, ..., v^_{n+1}`.
///
/// `cap_angles[j]` and `flags[j]` belong to vertex `j + 2` (the construction
/// never assigns an angle to `v^_1`).
#[derive(Debug, Clone, PartialEq)]
pub struct CapCurve {
    pub vertices: Vec<Vertex>,
    pub cap_angles: Vec<f64>,
    pub flags: Vec<AngleStatus>,
    pub construction_complete: bool,
}

impl CapCurve {
    /// `v^_{n+1} - v^_1`. Only meaningful for a complete construction.
    pub fn gap(&self) -> Vertex {
        self.vertices[self.vertices.len() - 1] - self.vertices[0]
    }

    /// Cap edges `v^_{k+1} - v^_k`.
    pub fn edges(&self) -> Vec<Vertex> {
        self.vertices.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn positivity_ok(&self) -> bool {
        self.flags.iter().all(|f| f.is_ok())
    }

    /// Cap angle at the seam vertex `v^_1`, read off the geometry of the last
    /// and first cap edges: `pi - beta_1` with `beta_1` the clockwise turn from
    /// `s^_n` to `s^_1`. Result lies in `[0, 2 pi)`.
    pub fn seam_angle(&self) -> f64 {
        let e = self.edges();
        PI + geom::turn(e[e.len() - 1], e[0])
    }
}

/// Runs the cap construction. Without `continue_on_failure` a non-positive cap
/// angle stops the construction with [`CapError::NonPositiveAngle`]; with it
/// the full curve is drawn and the offending vertices are flagged.
pub fn construct_cap(
    p: &Polygon,
    d: &DefectProfile,
    continue_on_failure: bool,
) -> Result<CapCurve, CapError> {
    let n = p.len();
    if d.len() != n {
        return Err(CapError::LengthMismatch { polygon: n, defects: d.len() });
    }
    let v = p.vertices();
    let lengths = p.edge_lengths();
    let theta = p.internal_angles();
    let kappa = d.defects();

    let mut cap = CapCurve {
        vertices: Vec::with_capacity(n + 1),
        cap_angles: Vec::with_capacity(n - 1),
        flags: Vec::with_capacity(n - 1),
        construction_complete: false,
    };
    cap.vertices.push(v[0]);
    cap.vertices.push(v[1]);
    let mut dir = (v[1] - v[0]).unscale(lengths[0]);

    // k is 0-based here: vertex v_{k+1}, outgoing edge s_{k+1}.
    for k in 1..n {
        let cap_angle = 2.0 * PI - theta[k] - kappa[k];
        let status = AngleStatus::of(cap_angle);
        cap.cap_angles.push(cap_angle);
        cap.flags.push(status);
        if status == AngleStatus::NonPositive && !continue_on_failure {
            return Err(CapError::NonPositiveAngle {
                index: k + 1,
                angle: cap_angle,
                partial: Box::new(cap),
            });
        }
        let beta = PI - cap_angle;
        dir *= cis(-beta);
        dir = dir.unscale(dir.norm());
        let last = cap.vertices[cap.vertices.len() - 1];
        cap.vertices.push(last + dir.scale(lengths[k]));
    }
    cap.construction_complete = true;
    Ok(cap)
}

/// `sum_k (1 - omega) omega^(k-2) v_k` on a raw vertex list.
pub fn gap_of_vertices(v: &[Vertex]) -> Vertex {
    let n = v.len();
    let one_minus = Vertex::new(1.0, 0.0) - omega(n);
    let acc: Vertex = v
        .iter()
        .enumerate()
        .map(|(i, &vk)| omega_pow(n, i as i64 - 1) * vk)
        .sum();
    one_minus * acc
}

/// `sum_k omega^k v_k` on a raw vertex list.
pub fn residual_of_vertices(v: &[Vertex]) -> Vertex {
    let n = v.len();
    v.iter()
        .enumerate()
        .map(|(i, &vk)| omega_pow(n, i as i64 + 1) * vk)
        .sum()
}

/// Closed-form gap for uniform defects.
pub fn gap_closed_form(p: &Polygon) -> Vertex {
    gap_of_vertices(p.vertices())
}

/// Gap for an arbitrary defect profile: `sum_k exp(-i sum_{j=2..k} kappa_j) s_k`.
pub fn gap_general(p: &Polygon, d: &DefectProfile) -> Result<Vertex, CapError> {
    if d.len() != p.len() {
        return Err(CapError::LengthMismatch { polygon: p.len(), defects: d.len() });
    }
    let kappa = d.defects();
    let mut cumulative = 0.0;
    let mut gap = Vertex::new(0.0, 0.0);
    for (k, s) in p.edges().into_iter().enumerate() {
        if k > 0 {
            cumulative += kappa[k];
        }
        gap += cis(-cumulative) * s;
    }
    Ok(gap)
}

/// Cap edges `s^_k = omega^(k-1) s_k` under uniform defects.
pub fn edge_rotation(p: &Polygon) -> Vec<Vertex> {
    let n = p.len();
    p.edges()
        .into_iter()
        .enumerate()
        .map(|(i, s)| omega_pow(n, i as i64) * s)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosureCheck {
    pub closed: bool,
    /// `sum_k omega^k v_k`; the gap equals `(1 - omega) omega^-2` times this.
    pub residual: Vertex,
}

/// Linear closed cap test: `|sum_k omega^k v_k| <= tol * perimeter`.
pub fn satisfies_closed_cap(p: &Polygon, tol: f64) -> ClosureCheck {
    let residual = residual_of_vertices(p.vertices());
    ClosureCheck { closed: residual.norm() <= tol * p.perimeter(), residual }
}

/// Summary of one cap construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CapReport {
    pub gap: Vertex,
    pub gap_abs: f64,
    pub gap_rel: f64,
    pub closed: bool,
    pub cap_simple: bool,
    pub positivity_ok: bool,
    pub omega: Vertex,
    pub tolerance: f64,
}

/// Builds the cap (continuing past negative angles) and reports closure,
/// positivity and whether the cap curve is simple. Simplicity is judged on the
/// closed cycle `v^_1..v^_n` when the cap closes, otherwise on the open chain.
pub fn cap_report(p: &Polygon, d: &DefectProfile, tol: f64) -> Result<CapReport, CapError> {
    let curve = construct_cap(p, d, true)?;
    Ok(report_for_curve(p, &curve, tol))
}

pub fn report_for_curve(p: &Polygon, curve: &CapCurve, tol: f64) -> CapReport {
    let n = p.len();
    let gap = curve.gap();
    let gap_abs = gap.norm();
    let gap_rel = gap_abs / p.perimeter();
    let closed = gap_rel <= tol;
    let eps = geom::DEFAULT_GEOM_REL_TOL * geom::diameter(&curve.vertices);
    let cap_simple = if closed {
        is_simple(&curve.vertices[..n], true, eps).simple
    } else {
        is_simple(&curve.vertices, false, eps).simple
    };
    CapReport {
        gap,
        gap_abs,
        gap_rel,
        closed,
        cap_simple,
        positivity_ok: curve.positivity_ok(),
        omega: omega(n),
        tolerance: tol,
    }
}
