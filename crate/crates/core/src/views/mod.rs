//! Scene generation for the sagittal, glottal and palatal views, and SVG output.

pub mod composite;
pub mod glottal;
pub mod palatal;
pub mod sagittal;
pub mod scene;
pub mod svg;

pub use composite::render_composite;
pub use glottal::render_glottal;
pub use palatal::{compute_palatal_contact, render_palatal, Cell, ContactMap, ContactOptions, InvalidResolution};
pub use sagittal::{oral_blocking_x, render_sagittal, SagittalOptions};
pub use scene::{Bounds, Layer, Panel, Primitive, SceneError, SceneGraph, Stroke};
pub use svg::{scene_to_svg, scenes_to_animated_svg};

use crate::geometry::PrototypeLibrary;
use crate::solver::ArticulatorFrame;

/// Pixel size of one panel when none is requested.
pub const DEFAULT_SIZE: u32 = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ViewKind {
    Sagittal,
    Glottal,
    Palatal,
    Composite,
}

impl ViewKind {
    pub const ALL: [ViewKind; 4] = [ViewKind::Sagittal, ViewKind::Glottal, ViewKind::Palatal, ViewKind::Composite];

    pub fn as_str(self) -> &'static str {
        match self {
            ViewKind::Sagittal => "sagittal",
            ViewKind::Glottal => "glottal",
            ViewKind::Palatal => "palatal",
            ViewKind::Composite => "composite",
        }
    }

    pub fn parse(s: &str) -> Option<ViewKind> {
        ViewKind::ALL.into_iter().find(|v| v.as_str() == s)
    }
}

impl std::fmt::Display for ViewKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The scene behind one named view. `overlay` is drawn dashed in the
/// sagittal panel of the sagittal and composite views.
pub fn render_view(
    lib: &PrototypeLibrary,
    frame: &ArticulatorFrame,
    view: ViewKind,
    overlay: Option<&ArticulatorFrame>,
) -> SceneGraph {
    match view {
        ViewKind::Sagittal => render_sagittal(lib, frame, SagittalOptions { overlay, show_airflow: true }),
        ViewKind::Glottal => render_glottal(lib, &frame.state),
        ViewKind::Palatal => {
            let map =
                compute_palatal_contact(lib, frame, ContactOptions::default()).expect("default resolution is valid");
            render_palatal(&map)
        }
        ViewKind::Composite => {
            let mut scene = render_composite(lib, frame);
            if overlay.is_some() {
                scene.panels[0] =
                    render_sagittal(lib, frame, SagittalOptions { overlay, show_airflow: true }).panels.remove(0);
            }
            scene
        }
    }
}
