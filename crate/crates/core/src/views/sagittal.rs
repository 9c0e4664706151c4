//! Midsagittal view with optional overlay and airflow.

use crate::geometry::{
    library::contact_pair, polyline_distance, Articulator, Contour, FixedStructure, Point, PrototypeLibrary,
};
use crate::params::Manner;
use crate::solver::{active_constrictions, ArticulatorFrame};

use super::scene::{Bounds, Layer, Panel, Primitive, SceneGraph, Stroke};

pub const SAGITTAL_BOUNDS: Bounds = Bounds { x_min: -0.05, y_min: 0.0, x_max: 1.0, y_max: 1.05 };

pub const LAYER_FIXED: &str = "fixed";
pub const LAYER_ARTICULATORS: &str = "articulators";
pub const LAYER_OVERLAY: &str = "overlay";
pub const LAYER_ORAL: &str = "airflowOral";
pub const LAYER_NASAL: &str = "airflowNasal";
pub const LAYER_SUBGLOTTAL: &str = "subglottal";

const CONTACT_EPS: f64 = 1e-9;
const ARROW_INSET: f64 = 0.15;

#[derive(Clone, Copy, Debug, Default)]
pub struct SagittalOptions<'a> {
    pub overlay: Option<&'a ArticulatorFrame>,
    pub show_airflow: bool,
}

fn color(a: Articulator) -> &'static str {
    match a {
        Articulator::TongueBody | Articulator::TongueTip => "#c0392b",
        Articulator::TongueDorsumMark => "#e67e22",
        Articulator::LowerJawTeeth => "#7f8c8d",
        Articulator::UpperLip | Articulator::LowerLip => "#d35400",
        Articulator::Velum => "#8e44ad",
        Articulator::LarynxGlottis => "#2c3e50",
    }
}

fn outline(c: &Contour, stroke: Stroke) -> Primitive {
    Primitive::Polyline { label: c.name.clone(), points: c.points.clone(), closed: c.closed, stroke }
}

fn articulator_layer(name: &str, frame: &ArticulatorFrame, dashed: bool) -> Layer {
    let mut layer = Layer::new(name);
    for (a, c) in &frame.contours {
        let stroke = if dashed { Stroke::dashed("#2980b9", 1.5) } else { Stroke::solid(color(*a), 2.0) };
        layer.push(outline(c, stroke));
    }
    layer
}

/// Sagittal scene for one frame.
pub fn render_sagittal(lib: &PrototypeLibrary, frame: &ArticulatorFrame, opts: SagittalOptions<'_>) -> SceneGraph {
    let mut panel = Panel::new("sagittal", SAGITTAL_BOUNDS);
    let mut fixed = Layer::new(LAYER_FIXED);
    for c in frame.fixed.values() {
        fixed.push(outline(c, Stroke::solid("#555555", 2.0)));
    }
    panel.layers.push(fixed);
    panel.layers.push(articulator_layer(LAYER_ARTICULATORS, frame, false));
    if let Some(other) = opts.overlay {
        panel.layers.push(articulator_layer(LAYER_OVERLAY, other, true));
    }
    if opts.show_airflow && frame.state.phonatory.lung_pressure > 0.0 {
        let flow = airflow(lib, frame);
        panel.layers.extend([flow.oral, flow.nasal, flow.subglottal]);
    }
    SceneGraph::single(panel)
}

struct Airflow {
    oral: Layer,
    nasal: Layer,
    subglottal: Layer,
}

/// x where a full closure seals the oral tract, the most posterior one if
/// several are sealed.
pub fn oral_blocking_x(lib: &PrototypeLibrary, frame: &ArticulatorFrame) -> Option<f64> {
    active_constrictions(&frame.state.consonantal, &frame.state.discrete)
        .into_iter()
        .filter(|(_, _, _, manner)| *manner == Manner::Full)
        .filter(|(_, _, place, _)| {
            let (mover, opposite) = contact_pair(*place, &frame.contours, &frame.fixed);
            polyline_distance(mover, opposite) <= CONTACT_EPS
        })
        .map(|(_, _, place, _)| lib.closure_targets[&place].station.x)
        .reduce(f64::max)
}

/// x positions where a horizontal line at `y` meets the contour.
fn crossings_at_y(c: &Contour, y: f64) -> Vec<f64> {
    c.segments()
        .filter_map(|(a, b)| {
            let (lo, hi) = if a.y <= b.y { (a.y, b.y) } else { (b.y, a.y) };
            if y < lo || y > hi || a.y == b.y {
                return None;
            }
            let t = (y - a.y) / (b.y - a.y);
            Some(a.x + t * (b.x - a.x))
        })
        .collect()
}

fn max_height(contours: &[&Contour], x: f64) -> Option<f64> {
    contours.iter().flat_map(|c| c.heights_at(x)).reduce(f64::max)
}

fn min_height(contours: &[&Contour], x: f64) -> Option<f64> {
    contours.iter().flat_map(|c| c.heights_at(x)).reduce(f64::min)
}

/// Midline of the open oral tract: up the pharynx between tongue root and
/// rear wall, then forward between the tongue or lower lip and the roof.
pub fn oral_midline(frame: &ArticulatorFrame) -> Vec<Point> {
    let body = frame.contour(Articulator::TongueBody);
    let wall = frame.fixed(FixedStructure::RearPharynxWall);
    let larynx_top = frame.contour(Articulator::LarynxGlottis).max_y();
    let mut path = Vec::new();
    let (y0, y1) = (larynx_top + 0.03, 0.70);
    let steps = 6;
    for i in 0..=steps {
        let y = y0 + (y1 - y0) * i as f64 / steps as f64;
        let back = crossings_at_y(body, y).into_iter().reduce(f64::max);
        let wall_x = crossings_at_y(wall, y).into_iter().reduce(f64::min);
        if let (Some(b), Some(w)) = (back, wall_x) {
            path.push(Point::new(0.5 * (b + w), y));
        }
    }
    let floor: Vec<&Contour> = [
        Articulator::TongueBody,
        Articulator::TongueTip,
        Articulator::TongueDorsumMark,
        Articulator::LowerLip,
        Articulator::LowerJawTeeth,
    ]
    .iter()
    .map(|a| frame.contour(*a))
    .collect();
    let roof: Vec<&Contour> = vec![
        frame.fixed(FixedStructure::HardPalate),
        frame.fixed(FixedStructure::UpperTeeth),
        frame.contour(Articulator::UpperLip),
        frame.contour(Articulator::Velum),
    ];
    let n = 10;
    let (x0, x1) = (0.56, 0.02);
    for i in 0..=n {
        let x = x0 + (x1 - x0) * i as f64 / n as f64;
        if let (Some(lo), Some(hi)) = (max_height(&floor, x), min_height(&roof, x)) {
            path.push(Point::new(x, 0.5 * (lo + hi.max(lo))));
        }
    }
    path
}

fn inset_arrow(a: Point, b: Point, color: &str) -> Primitive {
    Primitive::Arrow { from: a.lerp(b, ARROW_INSET), to: a.lerp(b, 1.0 - ARROW_INSET), color: color.into() }
}

fn airflow(lib: &PrototypeLibrary, frame: &ArticulatorFrame) -> Airflow {
    let mut oral = Layer::new(LAYER_ORAL);
    let mut nasal = Layer::new(LAYER_NASAL);
    let mut subglottal = Layer::new(LAYER_SUBGLOTTAL);

    let larynx = frame.contour(Articulator::LarynxGlottis);
    let low = larynx.points.iter().copied().fold(larynx.points[0], |m, p| if p.y < m.y { p } else { m });
    let radius = 0.012 + 0.018 * frame.state.phonatory.lung_pressure;
    subglottal.push(Primitive::Dot { at: Point::new(low.x, low.y - 0.04), radius, fill: "#9e9e9e".into() });

    if frame.glottis_tight {
        return Airflow { oral, nasal, subglottal };
    }
    let path = oral_midline(frame);
    let block = oral_blocking_x(lib, frame);
    let open: Vec<Point> = match block {
        Some(xb) => path.iter().copied().filter(|p| p.x >= xb).collect(),
        None => path.clone(),
    };
    for w in open.windows(2) {
        oral.push(inset_arrow(w[0], w[1], "#1e88e5"));
    }
    if frame.derived.velopharyngeal_opening > 0.0 && !frame.velum_tight {
        let top = path.iter().copied().filter(|p| p.x > 0.6).fold(None, |m: Option<Point>, p| match m {
            Some(q) if q.y >= p.y => Some(q),
            _ => Some(p),
        });
        let mut route: Vec<Point> = top.into_iter().collect();
        route.extend(lib.airways.nasal.iter().copied());
        for w in route.windows(2) {
            nasal.push(inset_arrow(w[0], w[1], "#43a047"));
        }
    }
    Airflow { oral, nasal, subglottal }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Model;
    use crate::params::neutral;
    use crate::solver::solve;

    fn frame_for(sym: &str) -> ArticulatorFrame {
        let m = Model::bundled();
        solve(&m.library, &m.inventory.lookup(sym).unwrap().state).unwrap()
    }

    fn arrows(scene: &SceneGraph, layer: &str) -> Vec<(Point, Point)> {
        scene.panels[0]
            .layer(layer)
            .map(|l| {
                l.primitives
                    .iter()
                    .filter_map(|p| match p {
                        Primitive::Arrow { from, to, .. } => Some((*from, *to)),
                        _ => None,
                    })
                    .collect()
            })
            .unwrap_or_default()
    }

    #[test]
    fn neutral_layout() {
        let lib = PrototypeLibrary::bundled();
        let f = solve(lib, &neutral()).unwrap();
        let scene = render_sagittal(lib, &f, SagittalOptions { overlay: None, show_airflow: true });
        let names: Vec<_> = scene.panels[0].layers.iter().map(|l| l.name.as_str()).collect();
        assert_eq!(names, [LAYER_FIXED, LAYER_ARTICULATORS]);
        assert_eq!(scene.panels[0].layers[0].primitives.len(), 3);
        assert_eq!(scene.panels[0].layers[1].primitives.len(), 8);
        scene.check().unwrap();
    }

    #[test]
    fn vowel_flow_reaches_the_lips() {
        let lib = PrototypeLibrary::bundled();
        let f = frame_for("a");
        let scene = render_sagittal(lib, &f, SagittalOptions { overlay: None, show_airflow: true });
        let oral = arrows(&scene, LAYER_ORAL);
        assert!(oral.len() > 10);
        assert!(oral.iter().any(|(_, to)| to.x < 0.1));
        assert!(arrows(&scene, LAYER_NASAL).is_empty());
        assert_eq!(scene.panels[0].layer(LAYER_SUBGLOTTAL).unwrap().primitives.len(), 1);
    }

    #[test]
    fn nasal_stop_routes_through_the_nose() {
        let lib = PrototypeLibrary::bundled();
        let f = frame_for("m");
        let scene = render_sagittal(lib, &f, SagittalOptions { overlay: None, show_airflow: true });
        let xb = oral_blocking_x(lib, &f).unwrap();
        assert!(arrows(&scene, LAYER_ORAL).iter().all(|(a, b)| a.x >= xb && b.x >= xb));
        assert!(!arrows(&scene, LAYER_NASAL).is_empty());
    }

    #[test]
    fn overlay_adds_a_dashed_layer() {
        let lib = PrototypeLibrary::bundled();
        let mut s = neutral();
        let open = solve(lib, &s).unwrap();
        s.consonantal.labial_aperture = 1.0;
        let closed = solve(lib, &s).unwrap();
        let scene = render_sagittal(lib, &open, SagittalOptions { overlay: Some(&closed), show_airflow: false });
        let overlay = scene.panels[0].layer(LAYER_OVERLAY).unwrap();
        assert_eq!(overlay.primitives.len(), 8);
        assert!(overlay.primitives.iter().all(|p| matches!(p, Primitive::Polyline { stroke, .. } if stroke.dashed)));
    }
}
