//! Polygon I/O: CSV points and SVG drawings.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::subdivision::Polygon;

/// Parses one point per line, coordinates separated by commas. Blank lines
/// and lines starting with `#` are skipped. The polygon is taken as closed.
pub fn read_csv(text: &str) -> Result<Polygon> {
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let point = line
            .split(',')
            .map(|field| {
                field.trim().parse::<f64>().map_err(|e| {
                    Error::InvalidInput(format!("line {}: '{}': {e}", lineno + 1, field.trim()))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        points.push(point);
    }
    Polygon::closed(points)
}

pub fn write_csv(p: &Polygon) -> String {
    let mut out = String::new();
    for point in &p.points {
        let fields: Vec<String> = point.iter().map(|x| format!("{x:?}")).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// 2D drawing coordinates; 3D points use an oblique projection.
fn project(point: &[f64]) -> (f64, f64) {
    match point {
        [x, y] => (*x, *y),
        [x, y, z] => (x - 0.5 * y, z - 0.35 * y),
        _ => (f64::NAN, f64::NAN),
    }
}

fn polyline_points(p: &Polygon, flip: impl Fn(f64) -> f64) -> String {
    let mut pts: Vec<(f64, f64)> = p.points.iter().map(|q| project(q)).collect();
    if p.closed {
        if let Some(&first) = pts.first() {
            pts.push(first);
        }
    }
    let mut s = String::new();
    for (i, (x, y)) in pts.into_iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{:.6},{:.6}", x, flip(y));
    }
    s
}

/// An SVG 1.1 document with the refined curve as a solid polyline and the
/// control polygon dashed. The view box is the bounding box of both plus a
/// 5% margin.
pub fn svg(refined: &Polygon, control: &Polygon) -> String {
    let all: Vec<(f64, f64)> = refined
        .points
        .iter()
        .chain(&control.points)
        .map(|q| project(q))
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if all.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let margin = 0.05 * span;
    let (vx, vw) = (x0 - margin, x1 - x0 + 2.0 * margin);
    let (vy, vh) = (-y1 - margin, y1 - y0 + 2.0 * margin);
    let stroke = span / 400.0;
    let flip = |y: f64| -y;
    let mut doc = String::new();
    let _ = writeln!(doc, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        doc,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{vx:.6} {vy:.6} {vw:.6} {vh:.6}" width="600" height="{:.0}">"#,
        600.0 * vh / vw
    );
    let _ = writeln!(
        doc,
        r#"  <polyline id="control" fill="none" stroke="black" stroke-width="{:.6}" stroke-dasharray="{:.6},{:.6}" points="{}"/>"#,
        stroke,
        4.0 * stroke,
        3.0 * stroke,
        polyline_points(control, flip)
    );
    let _ = writeln!(
        doc,
        r#"  <polyline id="refined" fill="none" stroke="blue" stroke-width="{:.6}" points="{}"/>"#,
        1.5 * stroke,
        polyline_points(refined, flip)
    );
    doc.push_str("</svg>\n");
    doc
}
