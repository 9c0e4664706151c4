//! EPG-style tongue-palate contact map.
//!
//! Each column is an anterior-posterior station between `xFront` and `xBack`,
//! each row a lateral position u in (-1, 1) across the palate. The 2D tongue
//! height is widened to the virtual half-width profile from the data file.

use serde::Serialize;

use crate::geometry::library::contact_pair;
use crate::geometry::{polyline_distance, Articulator, FixedStructure, Point, PrototypeLibrary};
use crate::params::{Constrictor, Manner, Place};
use crate::solver::{active_constrictions, ArticulatorFrame};

use super::scene::{Bounds, Layer, Panel, Primitive, SceneGraph, Stroke};

pub const CONTACT_THRESHOLD: f64 = 0.01;
pub const DEFAULT_ROWS: usize = 16;
pub const DEFAULT_COLS: usize = 32;
pub const MIN_ROWS: usize = 8;
pub const MIN_COLS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Cell {
    NoContact,
    Contact,
    GrooveChannel,
    LateralChannel,
}

impl Cell {
    pub const LEGEND: [Cell; 4] = [Cell::Contact, Cell::NoContact, Cell::GrooveChannel, Cell::LateralChannel];

    pub fn as_str(self) -> &'static str {
        match self {
            Cell::NoContact => "noContact",
            Cell::Contact => "contact",
            Cell::GrooveChannel => "grooveChannel",
            Cell::LateralChannel => "lateralChannel",
        }
    }

    fn fill(self) -> &'static str {
        match self {
            Cell::NoContact => "#ffffff",
            Cell::Contact => "#212121",
            Cell::GrooveChannel => "#64b5f6",
            Cell::LateralChannel => "#81c784",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContactOptions {
    pub rows: usize,
    pub cols: usize,
    pub synthesize_lateral_seal: bool,
}

impl Default for ContactOptions {
    fn default() -> Self {
        ContactOptions { rows: DEFAULT_ROWS, cols: DEFAULT_COLS, synthesize_lateral_seal: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("contact grid {rows}x{cols} is below the minimum {MIN_ROWS}x{MIN_COLS}")]
pub struct InvalidResolution {
    pub rows: usize,
    pub cols: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ContactMap {
    pub rows: usize,
    pub cols: usize,
    /// `grid[row][col]`.
    pub grid: Vec<Vec<Cell>>,
    /// x of each column station.
    pub stations: Vec<f64>,
    /// Lip contact, outside the palate grid.
    pub labial: Cell,
    pub legend: [Cell; 4],
}

impl ContactMap {
    pub fn cell(&self, row: usize, col: usize) -> Cell {
        self.grid[row][col]
    }

    pub fn count(&self, kind: Cell) -> usize {
        self.grid.iter().flatten().filter(|c| **c == kind).count()
    }

    pub fn cells(&self, kind: Cell) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.grid.iter().enumerate().flat_map(move |(r, row)| {
            row.iter().enumerate().filter(move |(_, c)| **c == kind).map(move |(c, _)| (r, c))
        })
    }

    pub fn is_empty(&self) -> bool {
        self.labial == Cell::NoContact && self.count(Cell::NoContact) == self.rows * self.cols
    }

    /// Column whose station is nearest to `x`.
    pub fn column_at(&self, x: f64) -> usize {
        let (x0, dx) = (self.stations[0], self.stations[1] - self.stations[0]);
        (((x - x0) / dx).round().max(0.0) as usize).min(self.cols - 1)
    }

    pub fn row_u(&self, row: usize) -> f64 {
        -1.0 + (2 * row + 1) as f64 / self.rows as f64
    }
}

fn palate_height(frame: &ArticulatorFrame, x: f64) -> Option<f64> {
    frame.fixed(FixedStructure::HardPalate).heights_at(x).reduce(f64::min)
}

fn tongue_height(frame: &ArticulatorFrame, x: f64) -> Option<f64> {
    Articulator::TONGUE.iter().flat_map(|a| frame.contour(*a).heights_at(x)).reduce(f64::max)
}

pub fn compute_palatal_contact(
    lib: &PrototypeLibrary,
    frame: &ArticulatorFrame,
    opts: ContactOptions,
) -> Result<ContactMap, InvalidResolution> {
    let ContactOptions { rows, cols, synthesize_lateral_seal } = opts;
    if rows < MIN_ROWS || cols < MIN_COLS {
        return Err(InvalidResolution { rows, cols });
    }
    let g = &lib.palatal_grid;
    let near_gap = lib.parameters.near_gap;
    let span = g.x_back - g.x_front;
    let stations: Vec<f64> = (0..cols).map(|c| g.x_front + (c as f64 + 0.5) * span / cols as f64).collect();
    let u = |r: usize| -1.0 + (2 * r + 1) as f64 / rows as f64;
    let active = active_constrictions(&frame.state.consonantal, &frame.state.discrete);
    let lingual = |k: Constrictor, m: Manner| {
        active
            .iter()
            .find(|(a, _, _, manner)| *a == k && *manner == m)
            .map(|(_, _, p, _)| lib.closure_targets[p].station.x)
    };
    let near_stations: Vec<f64> = [Constrictor::TongueTip, Constrictor::TongueDorsum]
        .into_iter()
        .filter_map(|k| lingual(k, Manner::Near))
        .collect();
    let lateral_station = lingual(Constrictor::TongueTip, Manner::Lateral);

    let mut grid = vec![vec![Cell::NoContact; cols]; rows];
    for (c, &x) in stations.iter().enumerate() {
        let (Some(roof), Some(floor)) = (palate_height(frame, x), tongue_height(frame, x)) else { continue };
        let gap = roof - floor;
        let w = g.half_width_at(x);
        let near = near_stations.iter().any(|s| (x - s).abs() <= g.groove_reach);
        let lateral = lateral_station.is_some_and(|s| (x - s).abs() <= g.groove_reach);
        let mut side_contact = false;
        for (r, row) in grid.iter_mut().enumerate() {
            let au = u(r).abs();
            if au > w {
                continue;
            }
            let side = au > g.groove_half_width;
            let effective = if near && side { gap - near_gap } else { gap };
            if effective <= CONTACT_THRESHOLD {
                row[c] = if lateral && au > w - g.lateral_band { Cell::LateralChannel } else { Cell::Contact };
                side_contact |= side;
            }
        }
        if near && side_contact {
            for (r, row) in grid.iter_mut().enumerate() {
                if u(r).abs() <= g.groove_half_width && row[c] == Cell::NoContact {
                    row[c] = Cell::GrooveChannel;
                }
            }
        }
    }

    if synthesize_lateral_seal {
        let velar = lib.closure_targets[&Place::Velar].station.x;
        let sealing = active.iter().filter(|(k, _, _, m)| {
            matches!(k, Constrictor::TongueTip | Constrictor::TongueDorsum) && matches!(m, Manner::Full | Manner::Near)
        });
        if let Some(front) = sealing.map(|(_, _, p, _)| lib.closure_targets[p].station.x).reduce(f64::min) {
            let col =
                |x: f64| ((x - g.x_front) / span * cols as f64 - 0.5).round().clamp(0.0, (cols - 1) as f64) as usize;
            for r in [0, rows - 1] {
                grid[r][col(front)..=col(velar)].fill(Cell::Contact);
            }
        }
    }

    let labial = match active.iter().find(|(k, _, _, _)| *k == Constrictor::Lips) {
        Some(&(_, _, place, manner)) => {
            let (a, b) = contact_pair(place, &frame.contours, &frame.fixed);
            let d = polyline_distance(a, b);
            match manner {
                Manner::Near if d <= near_gap + CONTACT_THRESHOLD => Cell::GrooveChannel,
                _ if d <= CONTACT_THRESHOLD => Cell::Contact,
                _ => Cell::NoContact,
            }
        }
        None => Cell::NoContact,
    };

    Ok(ContactMap { rows, cols, grid, stations, labial, legend: Cell::LEGEND })
}

/// Palatal panel: anterior at the top, lateral axis horizontal, one filled
/// square per non-empty cell plus the labial cell above the grid.
pub fn render_palatal(map: &ContactMap) -> SceneGraph {
    let mut panel = Panel::new("palatal", Bounds::UNIT);
    let (left, top, width, height) = (0.1, 0.85, 0.8, 0.8);
    let (cw, ch) = (width / map.rows as f64, height / map.cols as f64);
    let mut frame = Layer::new("outline");
    frame.push(Primitive::Polyline {
        label: "palate".into(),
        points: vec![
            Point::new(left, top),
            Point::new(left + width, top),
            Point::new(left + width, top - height),
            Point::new(left, top - height),
        ],
        closed: true,
        stroke: Stroke::solid("#9e9e9e", 1.0),
    });
    panel.layers.push(frame);

    let mut cells = Layer::new("cells");
    for (r, row) in map.grid.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            if *cell == Cell::NoContact {
                continue;
            }
            let (x0, y0) = (left + r as f64 * cw, top - c as f64 * ch);
            cells.push(Primitive::FilledRegion {
                label: cell.as_str().into(),
                points: vec![
                    Point::new(x0, y0),
                    Point::new(x0 + cw, y0),
                    Point::new(x0 + cw, y0 - ch),
                    Point::new(x0, y0 - ch),
                ],
                fill: cell.fill().into(),
            });
        }
    }
    if map.labial != Cell::NoContact {
        let (x0, y0) = (0.4, 0.95);
        cells.push(Primitive::FilledRegion {
            label: format!("labial {}", map.labial.as_str()),
            points: vec![
                Point::new(x0, y0),
                Point::new(x0 + 0.2, y0),
                Point::new(x0 + 0.2, y0 - 0.06),
                Point::new(x0, y0 - 0.06),
            ],
            fill: map.labial.fill().into(),
        });
    }
    panel.layers.push(cells);
    SceneGraph::single(panel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Model;
    use crate::params::neutral;
    use crate::solver::solve;

    fn map_for(sym: &str, seal: bool) -> ContactMap {
        let m = Model::bundled();
        let f = solve(&m.library, &m.inventory.lookup(sym).unwrap().state).unwrap();
        compute_palatal_contact(&m.library, &f, ContactOptions { synthesize_lateral_seal: seal, ..Default::default() })
            .unwrap()
    }

    #[test]
    fn neutral_is_empty() {
        let lib = PrototypeLibrary::bundled();
        let f = solve(lib, &neutral()).unwrap();
        let map = compute_palatal_contact(lib, &f, ContactOptions::default()).unwrap();
        assert!(map.is_empty());
        assert_eq!((map.grid.len(), map.grid[0].len()), (16, 32));
    }

    #[test]
    fn resolution_floor() {
        let lib = PrototypeLibrary::bundled();
        let f = solve(lib, &neutral()).unwrap();
        let small = ContactOptions { rows: 7, cols: 16, synthesize_lateral_seal: false };
        assert_eq!(compute_palatal_contact(lib, &f, small), Err(InvalidResolution { rows: 7, cols: 16 }));
        let ok = ContactOptions { rows: 8, cols: 16, synthesize_lateral_seal: false };
        assert!(compute_palatal_contact(lib, &f, ok).is_ok());
    }

    #[test]
    fn apical_band_without_margins() {
        let map = map_for("t", false);
        assert!(map.count(Cell::Contact) > 0);
        assert!(map.cells(Cell::Contact).all(|(r, _)| r != 0 && r != map.rows - 1));
    }

    #[test]
    fn seal_fills_margins_from_place_to_velar() {
        let lib = PrototypeLibrary::bundled();
        let map = map_for("t", true);
        let from = map.column_at(lib.closure_targets[&Place::Alveolar].station.x);
        let to = map.column_at(lib.closure_targets[&Place::Velar].station.x);
        for c in from..=to {
            assert_eq!(map.cell(0, c), Cell::Contact);
            assert_eq!(map.cell(map.rows - 1, c), Cell::Contact);
        }
    }

    #[test]
    fn sibilant_has_a_groove() {
        let map = map_for("s", false);
        assert!(map.count(Cell::GrooveChannel) > 0, "{map:?}");
        assert!(map.count(Cell::Contact) > 0);
    }

    #[test]
    fn lateral_has_side_channels() {
        let map = map_for("l", false);
        assert!(map.count(Cell::LateralChannel) > 0);
    }

    #[test]
    fn labial_cell() {
        assert_eq!(map_for("p", false).labial, Cell::Contact);
        assert_eq!(map_for("f", false).labial, Cell::GrooveChannel);
        assert_eq!(map_for("t", false).labial, Cell::NoContact);
    }

    #[test]
    fn legend_serializes_as_labels() {
        let v = serde_json::to_value(map_for("k", false)).unwrap();
        assert_eq!(v["legend"], serde_json::json!(["contact", "noContact", "grooveChannel", "lateralChannel"]));
    }
}
