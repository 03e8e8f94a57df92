//! SVG 1.1 rendering of a family, optionally shading faces by how many
//! curves contain them.

use std::fmt::Write;

use crate::arrangement::{Arrangement, PolygonFamily};
use crate::geometry::Point;

#[derive(Debug, Clone, Copy)]
pub struct RenderOptions {
    pub width: f64,
    pub shade_faces: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 800.0,
            shade_faces: false,
        }
    }
}

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    pad: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn fit(family: &PolygonFamily, width: f64) -> Frame {
        let points: Vec<(f64, f64)> = family
            .polygons()
            .iter()
            .flat_map(|p| p.corners().iter().map(Point::to_f64))
            .collect();
        let min_x = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let max_x = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let min_y = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let max_y = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        let span = (max_x - min_x).max(max_y - min_y).max(f64::MIN_POSITIVE);
        let pad = width * 0.05;
        let scale = (width - 2.0 * pad) / span;
        Frame {
            min_x,
            max_y,
            scale,
            pad,
            width,
            height: (max_y - min_y) * scale + 2.0 * pad,
        }
    }

    fn map(&self, p: &Point) -> (f64, f64) {
        let (x, y) = p.to_f64();
        (
            (x - self.min_x) * self.scale + self.pad,
            (self.max_y - y) * self.scale + self.pad,
        )
    }

    fn ring(&self, points: &[Point]) -> String {
        let mut d = String::new();
        for (i, p) in points.iter().enumerate() {
            let (x, y) = self.map(p);
            let _ = write!(d, "{}{:.3} {:.3} ", if i == 0 { "M" } else { "L" }, x, y);
        }
        d.push('Z');
        d
    }
}

fn hsl_to_hex(hue: f64, saturation: f64, lightness: f64) -> String {
    let c = (1.0 - (2.0 * lightness - 1.0).abs()) * saturation;
    let h = hue / 60.0;
    let x = c * (1.0 - (h % 2.0 - 1.0).abs());
    let (r, g, b) = match h as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = lightness - c / 2.0;
    let channel = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    format!("#{:02x}{:02x}{:02x}", channel(r), channel(g), channel(b))
}

/// Stroke colour of curve `i` out of `n`.
pub fn curve_color(i: usize, n: usize) -> String {
    hsl_to_hex(360.0 * i as f64 / n.max(1) as f64, 0.75, 0.42)
}

fn shade(weight: u32, n: usize) -> String {
    let level = 245.0 - 170.0 * weight as f64 / n.max(1) as f64;
    let v = level.round() as u8;
    format!("#{v:02x}{v:02x}{v:02x}")
}

/// Render `family` as a standalone SVG document. Face shading needs the
/// arrangement; pass `None` to draw outlines only.
pub fn render_svg(
    family: &PolygonFamily,
    arrangement: Option<&Arrangement>,
    options: RenderOptions,
) -> String {
    let frame = Frame::fit(family, options.width);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#,
        w = frame.width,
        h = frame.height
    );

    if let (true, Some(arr)) = (options.shade_faces, arrangement) {
        let n = arr.n();
        svg.push_str("  <g id=\"faces\" stroke=\"none\" fill-rule=\"evenodd\">\n");
        for face in arr.faces() {
            let mut d = match face.outer {
                Some(start) => frame.ring(&arr.cycle_points(start)),
                None => format!(
                    "M0 0 L{w:.3} 0 L{w:.3} {h:.3} L0 {h:.3} Z",
                    w = frame.width,
                    h = frame.height
                ),
            };
            for &hole in &face.holes {
                d.push(' ');
                d.push_str(&frame.ring(&arr.cycle_points(hole)));
            }
            let _ = writeln!(
                svg,
                r#"    <path class="face" data-sign="{}" fill="{}" d="{}"/>"#,
                face.sign,
                shade(face.sign.weight(), n),
                d
            );
        }
        svg.push_str("  </g>\n");
    }

    svg.push_str(
        "  <g id=\"curves\" fill=\"none\" stroke-width=\"2\" stroke-linejoin=\"round\">\n",
    );
    let n = family.n();
    for (i, polygon) in family.polygons().iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"    <path class="curve" data-label="{}" stroke="{}" d="{}"/>"#,
            escape(polygon.label()),
            curve_color(i, n),
            frame.ring(polygon.corners())
        );
    }
    svg.push_str("  </g>\n</svg>\n");
    svg
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
