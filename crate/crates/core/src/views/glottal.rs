//! Superior view of the vocal folds.

use crate::geometry::{Point, PrototypeLibrary};
use crate::params::ControlState;

use super::scene::{Bounds, Layer, Panel, Primitive, SceneGraph, Stroke};

pub const LAYER_RING: &str = "ring";
pub const LAYER_FOLDS: &str = "folds";
pub const LAYER_BADGES: &str = "badges";

/// Folds open linearly with max(glottalAperture, 0); voiceless sounds show
/// the open triangle, phonation shows approximated folds.
pub fn render_glottal(lib: &PrototypeLibrary, state: &ControlState) -> SceneGraph {
    let ph = &state.phonatory;
    let shape = lib.glottis_closed.lerp(&lib.glottis_open, ph.glottal_aperture.max(0.0));
    let mut panel = Panel::new("glottal", Bounds::UNIT);
    let mut ring = Layer::new(LAYER_RING);
    let outline = (0..24)
        .map(|k| {
            let a = std::f64::consts::TAU * k as f64 / 24.0;
            Point::new(0.5 + 0.3 * a.cos(), 0.53 + 0.38 * a.sin())
        })
        .collect();
    ring.push(Primitive::Polyline {
        label: "larynx".into(),
        points: outline,
        closed: true,
        stroke: Stroke::solid("#b0bec5", 2.0),
    });
    panel.layers.push(ring);
    let mut folds = Layer::new(LAYER_FOLDS);
    if shape.posterior_separation() > 0.0 {
        let mut opening = shape.left_fold.points.clone();
        opening.extend(shape.right_fold.points[1..].iter().rev());
        folds.push(Primitive::FilledRegion { label: "glottis".into(), points: opening, fill: "#263238".into() });
    }
    for fold in [&shape.left_fold, &shape.right_fold] {
        folds.push(Primitive::Polyline {
            label: fold.name.clone(),
            points: fold.points.clone(),
            closed: false,
            stroke: Stroke::solid("#ad1457", 4.0),
        });
    }
    panel.layers.push(folds);

    let mut badges = Layer::new(LAYER_BADGES);
    badges.push(Primitive::Text {
        at: Point::new(0.05, 0.95),
        text: format!("tension {:.2}", ph.vocal_fold_tension),
        size: 0.05,
    });
    badges.push(Primitive::Text {
        at: Point::new(0.05, 0.05),
        text: format!("pressure {:.2}", ph.lung_pressure),
        size: 0.05,
    });
    if ph.glottal_aperture < 0.0 {
        badges.push(Primitive::Text { at: Point::new(0.65, 0.95), text: "tight".into(), size: 0.05 });
    }
    panel.layers.push(badges);
    SceneGraph::single(panel)
}
