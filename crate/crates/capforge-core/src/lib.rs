//! Cap construction for polygons with prescribed angular defects.
//!
//! Given a counterclockwise polygon `P`, the cap construction walks a second
//! chain of edges with the same lengths as `P`, turning at each vertex so that
//! the glued surface carries a prescribed angular defect there. The chain
//! closes exactly when `sum_k omega^k v_k = 0` with `omega = exp(-4 pi i / n)`
//! (uniform defects `4 pi / n`).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, figures and the
//! command line live in the `capforge` crate.
//!
//! - [`geom`]: polygon validation, angles, simplicity, similarity maps
//! - [`cap`]: the iterative construction, closed-form gap and closure test
//! - [`solve`]: closing-vertex solver, projection, low-n classification, `Q(tau)`
//! - [`shapes`]: exact boundary samplers and gap sweeps
#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod cap;
pub mod geom;
pub mod shapes;
pub mod solve;

pub use num_complex::Complex64;

pub use cap::{
    cap_report, construct_cap, edge_rotation, gap_closed_form, gap_general, satisfies_closed_cap,
    AngleStatus, CapCurve, CapError, CapReport, ClosureCheck, DefectProfile,
};
pub use geom::{is_simple, signed_area, GeomError, Polygon, PolygonOptions, SimplicityReport};
pub use shapes::{gap_sweep, midpoint_refine, sample_boundary, sweep_row, BoundaryShape, ShapeError, SweepRow, SweepSeries};
pub use solve::{
    affine_coeffs, caps_similar, classify_quadrilateral, classify_triangle, modular_transform,
    project_to_closed, q_tau, solve_free_vertex, AffineCoeffs, ClassificationVerdict, Projection,
    ShapeClass, SolveError, TauParameter,
};

/// A point of the plane, read as a complex number.
pub type Vertex = Complex64;

/// Default closure tolerance, relative to perimeter.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[inline]
pub(crate) fn cross(a: Vertex, b: Vertex) -> f64 {
    a.re * b.im - a.im * b.re
}

#[inline]
pub(crate) fn dot(a: Vertex, b: Vertex) -> f64 {
    a.re * b.re + a.im * b.im
}

/// Unit complex number `exp(i angle)`.
#[inline]
pub(crate) fn cis(angle: f64) -> Vertex {
    Vertex::new(libm::cos(angle), libm::sin(angle))
}

/// `omega = exp(-4 pi i / n)`.
pub fn omega(n: usize) -> Vertex {
    omega_pow(n, 1)
}

/// `omega^m` for any integer `m`, reduced modulo `n` before evaluating so that
/// large or negative exponents stay accurate.
pub fn omega_pow(n: usize, m: i64) -> Vertex {
    let n = n as i64;
    let r = m.rem_euclid(n);
    cis(-4.0 * core::f64::consts::PI * r as f64 / n as f64)
}
