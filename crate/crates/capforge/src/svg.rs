//! SVG overlays of a polygon and its cap curve.

use std::fmt::Write;

use capforge_core::{CapCurve, Polygon, Vertex};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
#[error("render size must be positive (got {width} x {height})")]
pub struct RenderSizeError {
    pub width: u32,
    pub height: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    width: u32,
    height: u32,
    pub polygon_stroke: String,
    pub polygon_fill: String,
    pub cap_stroke: String,
    pub stroke_width: f64,
    pub labels: bool,
    pub gap_marker: bool,
}

impl RenderSpec {
    pub fn new(width: u32, height: u32) -> Result<Self, RenderSizeError> {
        if width == 0 || height == 0 {
            return Err(RenderSizeError { width, height });
        }
        Ok(RenderSpec {
            width,
            height,
            polygon_stroke: "#1f4e9c".into(),
            polygon_fill: "#1f77b4".into(),
            cap_stroke: "#d62728".into(),
            stroke_width: 2.0,
            labels: false,
            gap_marker: true,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec::new(600, 600).expect("default size is positive")
    }
}

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    off_x: f64,
    off_y: f64,
}

impl Frame {
    fn fit(points: &[Vertex], spec: &RenderSpec) -> Frame {
        let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for p in points {
            min_x = min_x.min(p.re);
            max_x = max_x.max(p.re);
            min_y = min_y.min(p.im);
            max_y = max_y.max(p.im);
        }
        let margin = 0.08 * f64::from(spec.width.min(spec.height));
        let avail_w = f64::from(spec.width) - 2.0 * margin;
        let avail_h = f64::from(spec.height) - 2.0 * margin;
        let span_x = (max_x - min_x).max(f64::MIN_POSITIVE);
        let span_y = (max_y - min_y).max(f64::MIN_POSITIVE);
        let scale = (avail_w / span_x).min(avail_h / span_y);
        Frame {
            min_x,
            max_y,
            scale,
            off_x: margin + 0.5 * (avail_w - span_x * scale),
            off_y: margin + 0.5 * (avail_h - span_y * scale),
        }
    }

    // y grows downward in SVG
    fn map(&self, v: Vertex) -> (f64, f64) {
        (self.off_x + (v.re - self.min_x) * self.scale, self.off_y + (self.max_y - v.im) * self.scale)
    }

    fn points(&self, vs: &[Vertex]) -> String {
        let mut s = String::new();
        for (i, &v) in vs.iter().enumerate() {
            let (x, y) = self.map(v);
            if i > 0 {
                s.push(' ');
            }
            write!(s, "{x:.3},{y:.3}").unwrap();
        }
        s
    }
}

/// Draws `polygon` filled at low opacity, the cap curve as a polyline, and a
/// dashed segment from `v^_{n+1}` back to `v^_1` when the cap does not close
/// within `tol` (relative to the perimeter).
pub fn render(polygon: &Polygon, cap: &CapCurve, tol: f64, spec: &RenderSpec) -> String {
    let mut all: Vec<Vertex> = polygon.vertices().to_vec();
    all.extend_from_slice(&cap.vertices);
    let frame = Frame::fit(&all, spec);
    let (w, h) = (spec.width, spec.height);
    let sw = spec.stroke_width;

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(out, "<!-- capforge {} -->", env!("CARGO_PKG_VERSION")).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(out, r#"  <rect width="{w}" height="{h}" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"  <polygon points="{}" fill="{}" fill-opacity="0.15" stroke="{}" stroke-width="{sw}"/>"#,
        frame.points(polygon.vertices()),
        spec.polygon_fill,
        spec.polygon_stroke
    )
    .unwrap();
    writeln!(
        out,
        r#"  <polyline points="{}" fill="none" stroke="{}" stroke-width="{sw}" stroke-linejoin="round"/>"#,
        frame.points(&cap.vertices),
        spec.cap_stroke
    )
    .unwrap();

    let gap = cap.gap().norm();
    if spec.gap_marker && gap > tol * polygon.perimeter() {
        let (x1, y1) = frame.map(cap.vertices[cap.vertices.len() - 1]);
        let (x2, y2) = frame.map(cap.vertices[0]);
        writeln!(
            out,
            r#"  <line class="gap" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="black" stroke-width="{sw}" stroke-dasharray="6 4"/>"#
        )
        .unwrap();
    }

    for &v in polygon.vertices() {
        let (x, y) = frame.map(v);
        writeln!(out, r#"  <circle cx="{x:.3}" cy="{y:.3}" r="{:.1}" fill="{}"/>"#, 1.5 * sw, spec.polygon_stroke)
            .unwrap();
    }
    if spec.labels {
        for (k, &v) in polygon.vertices().iter().enumerate() {
            let (x, y) = frame.map(v);
            writeln!(out, r#"  <text x="{:.3}" y="{:.3}" font-size="12" fill="{}">v{}</text>"#, x + 4.0, y - 4.0, spec.polygon_stroke, k + 1)
                .unwrap();
        }
        for (k, &v) in cap.vertices.iter().enumerate().skip(2) {
            let (x, y) = frame.map(v);
            writeln!(out, r#"  <text x="{:.3}" y="{:.3}" font-size="12" fill="{}">w{}</text>"#, x + 4.0, y + 14.0, spec.cap_stroke, k + 1)
                .unwrap();
        }
    }
    writeln!(out, "</svg>").unwrap();
    out
}
