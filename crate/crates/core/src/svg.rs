// Copyright 2026 the Sessile Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Static SVG overlay of a discrete curve against an exact arc.

use std::fmt::Write as _;

use crate::curve::GraphCurve;

const WIDTH: f64 = 800.0;
const PADDING: f64 = 0.05;

/// Exact arc to draw beneath the curve.
#[derive(Debug, Clone, Copy)]
pub struct ArcOverlay {
    pub radius: f64,
    pub half_width: f64,
    /// Depth of the circle center below the axis.
    pub center_depth: f64,
}

/// Renders the polyline, optional arc, the axis and both endpoint normals.
pub fn render(curve: &GraphCurve, arc: Option<ArcOverlay>) -> String {
    let p = curve.half_width();
    let mut x_max = p;
    let mut y_max = curve.heights().iter().copied().fold(0.0, f64::max);
    if let Some(a) = arc {
        x_max = x_max.max(a.half_width);
        y_max = y_max.max(a.radius - a.center_depth);
    }
    let normal_len = 0.15 * x_max;
    y_max = y_max.max(normal_len);
    let y_min = -0.1 * x_max;

    let span_x = 2.0 * (x_max + normal_len);
    let span_y = y_max + normal_len - y_min;
    let scale = WIDTH * (1.0 - 2.0 * PADDING) / span_x;
    let height = span_y * scale / (1.0 - 2.0 * PADDING);
    let pad_x = WIDTH * PADDING;
    let pad_y = height * PADDING;
    let tx = |x: f64| pad_x + (x + x_max + normal_len) * scale;
    let ty = |y: f64| pad_y + (y_max + normal_len - y) * scale;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="gray" stroke-width="1"/>"#,
        tx(-x_max - normal_len),
        ty(0.0),
        tx(x_max + normal_len),
        ty(0.0)
    );
    if let Some(a) = arc {
        // SVG arc from (-p, 0) to (p, 0), minor arc bulging upward.
        let r = a.radius * scale;
        let _ = writeln!(
            s,
            r#"<path d="M {:.3} {:.3} A {r:.3} {r:.3} 0 0 1 {:.3} {:.3}" fill="none" stroke="steelblue" stroke-width="3" stroke-opacity="0.6"/>"#,
            tx(-a.half_width),
            ty(0.0),
            tx(a.half_width),
            ty(0.0)
        );
    }
    let points: Vec<String> = curve
        .nodes()
        .map(|(x, u)| format!("{:.3},{:.3}", tx(x), ty(u)))
        .collect();
    let _ = writeln!(
        s,
        r#"<polyline points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        points.join(" ")
    );
    let [left, right] = curve.endpoint_normals();
    for (x0, nu) in [(-p, left), (p, right)] {
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="crimson" stroke-width="2"/>"#,
            tx(x0),
            ty(0.0),
            tx(x0 + normal_len * nu[0]),
            ty(normal_len * nu[1])
        );
    }
    s.push_str("</svg>\n");
    s
}
