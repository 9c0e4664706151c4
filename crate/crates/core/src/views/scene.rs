//! Resolution-independent scene graph shared by all views.

use serde::Serialize;

use crate::geometry::Point;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Stroke {
    pub color: String,
    pub width: f64,
    pub dashed: bool,
}

impl Stroke {
    pub fn solid(color: &str, width: f64) -> Stroke {
        Stroke { color: color.into(), width, dashed: false }
    }

    pub fn dashed(color: &str, width: f64) -> Stroke {
        Stroke { color: color.into(), width, dashed: true }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Primitive {
    Polyline { label: String, points: Vec<Point>, closed: bool, stroke: Stroke },
    FilledRegion { label: String, points: Vec<Point>, fill: String },
    Arrow { from: Point, to: Point, color: String },
    Dot { at: Point, radius: f64, fill: String },
    Text { at: Point, text: String, size: f64 },
}

impl Primitive {
    pub fn points(&self) -> Vec<Point> {
        match self {
            Primitive::Polyline { points, .. } | Primitive::FilledRegion { points, .. } => points.clone(),
            Primitive::Arrow { from, to, .. } => vec![*from, *to],
            Primitive::Dot { at, .. } | Primitive::Text { at, .. } => vec![*at],
        }
    }

    pub fn is_text(&self) -> bool {
        matches!(self, Primitive::Text { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Layer {
    pub name: String,
    pub primitives: Vec<Primitive>,
}

impl Layer {
    pub fn new(name: &str) -> Layer {
        Layer { name: name.into(), primitives: Vec::new() }
    }

    pub fn push(&mut self, p: Primitive) {
        self.primitives.push(p);
    }
}

/// Axis-aligned region of normalized coordinates mapped onto a panel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Bounds {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl Bounds {
    pub const UNIT: Bounds = Bounds { x_min: 0.0, y_min: 0.0, x_max: 1.0, y_max: 1.0 };
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Panel {
    pub name: String,
    pub bounds: Bounds,
    pub layers: Vec<Layer>,
}

impl Panel {
    pub fn new(name: &str, bounds: Bounds) -> Panel {
        Panel { name: name.into(), bounds, layers: Vec::new() }
    }

    pub fn layer(&self, name: &str) -> Option<&Layer> {
        self.layers.iter().find(|l| l.name == name)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SceneGraph {
    pub panels: Vec<Panel>,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SceneError {
    #[error("panel {panel}: layer name {layer} is not unique")]
    DuplicateLayer { panel: String, layer: String },
    #[error("panel {panel}, layer {layer}: non-finite coordinate")]
    NonFinite { panel: String, layer: String },
}

impl SceneGraph {
    pub fn single(panel: Panel) -> SceneGraph {
        SceneGraph { panels: vec![panel] }
    }

    pub fn primitive_count(&self) -> usize {
        self.primitives().count()
    }

    pub fn primitives(&self) -> impl Iterator<Item = &Primitive> {
        self.panels.iter().flat_map(|p| p.layers.iter()).flat_map(|l| l.primitives.iter())
    }

    pub fn panel(&self, name: &str) -> Option<&Panel> {
        self.panels.iter().find(|p| p.name == name)
    }

    pub fn check(&self) -> Result<(), SceneError> {
        for panel in &self.panels {
            for (i, layer) in panel.layers.iter().enumerate() {
                if panel.layers[..i].iter().any(|l| l.name == layer.name) {
                    return Err(SceneError::DuplicateLayer { panel: panel.name.clone(), layer: layer.name.clone() });
                }
                let finite = layer.primitives.iter().all(|p| {
                    p.points().iter().all(|q| q.is_finite())
                        && match p {
                            Primitive::Polyline { stroke, .. } => stroke.width.is_finite(),
                            Primitive::Dot { radius, .. } => radius.is_finite(),
                            Primitive::Text { size, .. } => size.is_finite(),
                            _ => true,
                        }
                });
                if !finite {
                    return Err(SceneError::NonFinite { panel: panel.name.clone(), layer: layer.name.clone() });
                }
            }
        }
        Ok(())
    }
}
