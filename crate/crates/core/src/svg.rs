//! Two-panel SVG: the radial Newton staircase and the regular fan.

use std::fmt::Write as _;

use crate::error::Result;
use crate::fan::canonical_subdivision;
use crate::newton::{self, dual_diagram, newton_boundary, require_convenient_plane};
use crate::poly::MixedPolynomial;

const PANEL: f64 = 300.0;
const MARGIN: f64 = 30.0;

/// SVG 1.1 document. Support points on the boundary are filled, interior
/// ones hollow; dual-diagram rays are drawn thicker than refinement rays.
pub fn emit_svg(f: &MixedPolynomial) -> Result<Vec<u8>> {
    require_convenient_plane(f)?;
    let support = newton::support(f)?;
    let boundary = newton_boundary(f)?;
    let dual = dual_diagram(f)?;
    let fan = canonical_subdivision(f)?;

    let width = 2.0 * PANEL + 3.0 * MARGIN;
    let height = PANEL + 2.0 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    // Staircase panel.
    let max = support
        .iter()
        .flat_map(|p| p.point.iter().copied())
        .max()
        .unwrap_or(1)
        .max(1) as f64;
    let unit = (PANEL - 20.0) / max;
    let ox = MARGIN;
    let oy = MARGIN + PANEL;
    let at = |p: &[i64]| (ox + p[0] as f64 * unit, oy - p[1] as f64 * unit);
    let _ = writeln!(s, r#"<g id="staircase">"#);
    let _ = writeln!(
        s,
        r#"<line class="axis" x1="{ox:.2}" y1="{oy:.2}" x2="{:.2}" y2="{oy:.2}" stroke="gray"/>"#,
        ox + PANEL
    );
    let _ = writeln!(
        s,
        r#"<line class="axis" x1="{ox:.2}" y1="{oy:.2}" x2="{ox:.2}" y2="{:.2}" stroke="gray"/>"#,
        oy - PANEL
    );
    let chain: Vec<String> = boundary
        .vertices
        .iter()
        .map(|v| {
            let (x, y) = at(v);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(
        s,
        r#"<polyline class="boundary" points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        chain.join(" ")
    );
    for p in &support {
        let (x, y) = at(&p.point);
        let fill = if boundary.on_boundary(&p.point) {
            "black"
        } else {
            "white"
        };
        let _ = writeln!(
            s,
            r#"<circle class="support" cx="{x:.2}" cy="{y:.2}" r="4" fill="{fill}" stroke="black"><title>({},{})</title></circle>"#,
            p.point[0], p.point[1]
        );
    }
    let _ = writeln!(s, "</g>");

    // Fan panel.
    let fx = 2.0 * MARGIN + PANEL;
    let fy = MARGIN + PANEL;
    let _ = writeln!(s, r#"<g id="fan">"#);
    for ray in fan.vertices() {
        let v = ray.as_slice();
        let len = ((v[0] * v[0] + v[1] * v[1]) as f64).sqrt();
        let reach = PANEL - 40.0;
        let (x, y) = (fx + v[0] as f64 / len * reach, fy - v[1] as f64 / len * reach);
        let width = if dual.rays.contains(&ray) { 2 } else { 1 };
        let label = match v {
            [1, 0] => "E1".to_string(),
            [0, 1] => "E2".to_string(),
            _ => ray.to_string(),
        };
        let _ = writeln!(
            s,
            r#"<line class="ray" x1="{fx:.2}" y1="{fy:.2}" x2="{x:.2}" y2="{y:.2}" stroke="black" stroke-width="{width}"/>"#
        );
        let (lx, ly) = (
            fx + v[0] as f64 / len * (reach + 14.0),
            fy - v[1] as f64 / len * (reach + 14.0),
        );
        let _ = writeln!(
            s,
            r#"<text class="ray-label" x="{lx:.2}" y="{ly:.2}" font-size="11" text-anchor="middle">{label}</text>"#
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    Ok(s.into_bytes())
}
