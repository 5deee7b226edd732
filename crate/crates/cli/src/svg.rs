//! Staircase picture of a two-variable Newton region.

use std::fmt::Write;

use segre_core::NewtonPolyhedron;

const UNIT: f64 = 40.0;
const MARGIN: f64 = 20.0;

/// The region shaded, the diagram drawn as a polyline through the extreme points.
/// Unbounded strips are cut at one unit past the largest exponent.
pub fn staircase(p: &NewtonPolyhedron) -> String {
    let mut pts: Vec<(f64, f64)> = p
        .extreme_points()
        .iter()
        .map(|v| (v.0[0] as f64, v.0[1] as f64))
        .collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let w = pts.iter().map(|q| q.0).fold(0.0, f64::max) + 1.0;
    let h = pts.iter().map(|q| q.1).fold(0.0, f64::max) + 1.0;
    let (first, last) = (pts[0], pts[pts.len() - 1]);

    let mut region = vec![(0.0, 0.0)];
    if last.1 == 0.0 {
        region.push(last);
    } else {
        region.extend([(w, 0.0), (w, last.1), last]);
    }
    region.extend(pts.iter().rev().skip(1).copied());
    if first.0 > 0.0 {
        region.extend([(first.0, h), (0.0, h)]);
    }

    let sx = |x: f64| MARGIN + x * UNIT;
    let sy = |y: f64| MARGIN + (h - y) * UNIT;
    let path = |q: &[(f64, f64)]| {
        q.iter()
            .map(|&(x, y)| format!("{},{}", sx(x), sy(y)))
            .collect::<Vec<_>>()
            .join(" ")
    };

    let (width, height) = (2.0 * MARGIN + w * UNIT, 2.0 * MARGIN + h * UNIT);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r##"<polygon points="{}" fill="#cfe0f3" stroke="none"/>"##, path(&region));
    let _ = writeln!(
        out,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        sx(0.0),
        sy(0.0),
        sx(w),
        sy(0.0)
    );
    let _ = writeln!(
        out,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        sx(0.0),
        sy(0.0),
        sx(0.0),
        sy(h)
    );
    let _ = writeln!(out, r##"<polyline points="{}" fill="none" stroke="#1f4e8c" stroke-width="2"/>"##, path(&pts));
    for &(x, y) in &pts {
        let _ = writeln!(out, r##"<circle cx="{}" cy="{}" r="3" fill="#1f4e8c"/>"##, sx(x), sy(y));
    }
    out.push_str("</svg>\n");
    out
}
