//! Sagittal, glottal and palatal panels side by side.

use crate::geometry::PrototypeLibrary;
use crate::solver::ArticulatorFrame;

use super::glottal::render_glottal;
use super::palatal::{compute_palatal_contact, render_palatal, ContactOptions};
use super::sagittal::{render_sagittal, SagittalOptions};
use super::scene::SceneGraph;

pub fn render_composite(lib: &PrototypeLibrary, frame: &ArticulatorFrame) -> SceneGraph {
    let sagittal = render_sagittal(lib, frame, SagittalOptions { overlay: None, show_airflow: true });
    let glottal = render_glottal(lib, &frame.state);
    let map = compute_palatal_contact(lib, frame, ContactOptions::default()).expect("default resolution is valid");
    let palatal = render_palatal(&map);
    SceneGraph { panels: [sagittal, glottal, palatal].into_iter().flat_map(|s| s.panels).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Model;
    use crate::views::scene_to_svg;

    #[test]
    fn three_panels_for_every_preset() {
        let m = Model::bundled();
        for e in m.inventory.list() {
            let f = crate::solve(&m.library, &e.state).unwrap();
            let scene = render_composite(&m.library, &f);
            let names: Vec<_> = scene.panels.iter().map(|p| p.name.as_str()).collect();
            assert_eq!(names, ["sagittal", "glottal", "palatal"], "{}", e.sampa);
            scene.check().unwrap();
        }
    }

    #[test]
    fn svg_places_panels_side_by_side() {
        let m = Model::bundled();
        let f = crate::solve(&m.library, &m.inventory.lookup("a").unwrap().state).unwrap();
        let svg = scene_to_svg(&render_composite(&m.library, &f), 300);
        assert!(svg.contains("width=\"900.000\""));
        assert!(svg.contains("<g id=\"panel-palatal\" transform=\"translate(600.000 0)\">"));
    }
}
