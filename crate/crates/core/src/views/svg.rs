//! Scene graph to SVG text.
//!
//! Panels are laid out left to right, each in a `size` by `size` square.
//! Every non-text primitive becomes exactly one `<path>`; numbers use three
//! fixed decimals so identical scenes give byte-identical documents.

use std::fmt::Write;

use super::scene::{Bounds, Panel, Primitive, SceneGraph};
use crate::geometry::Point;

const ARROW_HEAD: f64 = 0.35;
const ARROW_HEAD_MAX: f64 = 8.0;

pub(crate) fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

struct Mapper {
    bounds: Bounds,
    scale: f64,
    size: f64,
}

impl Mapper {
    fn new(bounds: Bounds, size: f64) -> Mapper {
        let span = (bounds.x_max - bounds.x_min).max(bounds.y_max - bounds.y_min);
        Mapper { bounds, scale: size / span, size }
    }

    fn pt(&self, p: Point) -> (f64, f64) {
        ((p.x - self.bounds.x_min) * self.scale, self.size - (p.y - self.bounds.y_min) * self.scale)
    }

    fn len(&self, v: f64) -> f64 {
        v * self.scale
    }
}

fn polyline_d(m: &Mapper, points: &[Point], closed: bool) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let (x, y) = m.pt(*p);
        let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, num(x), num(y));
    }
    if closed {
        d.push_str(" Z");
    }
    d
}

fn arrow_d(m: &Mapper, from: Point, to: Point) -> String {
    let (x0, y0) = m.pt(from);
    let (x1, y1) = m.pt(to);
    let (dx, dy) = (x1 - x0, y1 - y0);
    let len = dx.hypot(dy);
    let (ux, uy) = if len > 0.0 { (dx / len, dy / len) } else { (1.0, 0.0) };
    let h = (ARROW_HEAD * len).min(ARROW_HEAD_MAX);
    let (lx, ly) = (x1 - h * ux + 0.5 * h * uy, y1 - h * uy - 0.5 * h * ux);
    let (rx, ry) = (x1 - h * ux - 0.5 * h * uy, y1 - h * uy + 0.5 * h * ux);
    format!(
        "M{} {} L{} {} M{} {} L{} {} L{} {}",
        num(x0),
        num(y0),
        num(x1),
        num(y1),
        num(lx),
        num(ly),
        num(x1),
        num(y1),
        num(rx),
        num(ry)
    )
}

fn dot_d(m: &Mapper, at: Point, radius: f64) -> String {
    let (x, y) = m.pt(at);
    let r = m.len(radius);
    format!(
        "M{} {} A{} {} 0 1 0 {} {} A{} {} 0 1 0 {} {} Z",
        num(x - r),
        num(y),
        num(r),
        num(r),
        num(x + r),
        num(y),
        num(r),
        num(r),
        num(x - r),
        num(y)
    )
}

fn write_primitive(out: &mut String, m: &Mapper, p: &Primitive) {
    match p {
        Primitive::Polyline { label, points, closed, stroke } => {
            let dash = if stroke.dashed { " stroke-dasharray=\"6 4\"" } else { "" };
            let _ = writeln!(
                out,
                "<path class=\"{}\" d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{dash}/>",
                escape(label),
                polyline_d(m, points, *closed),
                escape(&stroke.color),
                num(stroke.width)
            );
        }
        Primitive::FilledRegion { label, points, fill } => {
            let _ = writeln!(
                out,
                "<path class=\"{}\" d=\"{}\" fill=\"{}\" stroke=\"none\"/>",
                escape(label),
                polyline_d(m, points, true),
                escape(fill)
            );
        }
        Primitive::Arrow { from, to, color } => {
            let _ = writeln!(
                out,
                "<path class=\"arrow\" d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.500\"/>",
                arrow_d(m, *from, *to),
                escape(color)
            );
        }
        Primitive::Dot { at, radius, fill } => {
            let _ = writeln!(
                out,
                "<path class=\"dot\" d=\"{}\" fill=\"{}\" stroke=\"none\"/>",
                dot_d(m, *at, *radius),
                escape(fill)
            );
        }
        Primitive::Text { at, text, size } => {
            let (x, y) = m.pt(*at);
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{}\">{}</text>",
                num(x),
                num(y),
                num(m.len(*size)),
                escape(text)
            );
        }
    }
}

fn write_panel(out: &mut String, panel: &Panel, offset: f64, size: f64) {
    let m = Mapper::new(panel.bounds, size);
    let _ = writeln!(out, "<g id=\"panel-{}\" transform=\"translate({} 0)\">", escape(&panel.name), num(offset));
    let _ = writeln!(
        out,
        "<rect x=\"0.000\" y=\"0.000\" width=\"{}\" height=\"{}\" fill=\"#ffffff\" stroke=\"#d0d0d0\"/>",
        num(size),
        num(size)
    );
    for layer in &panel.layers {
        let _ = writeln!(out, "<g id=\"{}-{}\">", escape(&panel.name), escape(&layer.name));
        for p in &layer.primitives {
            write_primitive(out, &m, p);
        }
        out.push_str("</g>\n");
    }
    out.push_str("</g>\n");
}

fn panels_svg(scene: &SceneGraph, size: u32) -> String {
    let size = size as f64;
    let mut out = String::new();
    for (i, panel) in scene.panels.iter().enumerate() {
        write_panel(&mut out, panel, i as f64 * size, size);
    }
    out
}

fn header(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = num(width),
        h = num(height)
    )
}

/// Renders a scene; each panel occupies a `size` pixel square.
pub fn scene_to_svg(scene: &SceneGraph, size: u32) -> String {
    let size = size.max(1);
    let width = size as f64 * scene.panels.len().max(1) as f64;
    let mut out = header(width, size as f64);
    if scene.panels.is_empty() {
        out.push_str("<g id=\"scene\"/>\n");
    } else {
        out.push_str("<g id=\"scene\">\n");
        out.push_str(&panels_svg(scene, size));
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

/// Frame-by-frame animation: each scene is shown for `1 / fps` seconds in a
/// loop using SMIL visibility switching.
pub fn scenes_to_animated_svg(scenes: &[SceneGraph], size: u32, fps: f64) -> String {
    let size = size.max(1);
    let panels = scenes.iter().map(|s| s.panels.len()).max().unwrap_or(1).max(1);
    let mut out = header(size as f64 * panels as f64, size as f64);
    let n = scenes.len();
    let dur = n as f64 / fps;
    out.push_str("<g id=\"scene\">\n");
    for (i, scene) in scenes.iter().enumerate() {
        let values: Vec<&str> = (0..n).map(|k| if k == i { "inline" } else { "none" }).collect();
        let _ = writeln!(out, "<g id=\"frame-{i}\" display=\"{}\">", if i == 0 { "inline" } else { "none" });
        let _ = writeln!(
            out,
            "<animate attributeName=\"display\" values=\"{}\" dur=\"{}s\" calcMode=\"discrete\" repeatCount=\"indefinite\"/>",
            values.join(";"),
            num(dur)
        );
        out.push_str(&panels_svg(scene, size));
        out.push_str("</g>\n");
    }
    out.push_str("</g>\n</svg>\n");
    out
}
