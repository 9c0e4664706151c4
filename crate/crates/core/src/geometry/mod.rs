//! Contour data model and polyline utilities.
//!
//! All coordinates live in a normalized frame: x = 0 at the lips (anterior),
//! x = 1 at the posterior pharynx, y = 0 inferior, y = 1 superior.

pub mod library;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use library::{
    Airways, ClosureTarget, GlottisShape, LibraryError, LibraryErrors, ModelParameters, PalatalGrid, PrototypeLibrary,
    VelumExtremes, VowelPrototypes,
};

/// Allowed coordinate slack outside the unit square.
pub const COORD_MIN: f64 = -0.25;
pub const COORD_MAX: f64 = 1.25;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        Point::new((1.0 - t) * self.x + t * other.x, (1.0 - t) * self.y + t * other.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

/// Fixed (non-movable) structures of the vocal tract.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FixedStructure {
    HardPalate,
    UpperTeeth,
    RearPharynxWall,
}

impl FixedStructure {
    pub const ALL: [FixedStructure; 3] =
        [FixedStructure::HardPalate, FixedStructure::UpperTeeth, FixedStructure::RearPharynxWall];

    pub fn as_str(self) -> &'static str {
        match self {
            FixedStructure::HardPalate => "hardPalate",
            FixedStructure::UpperTeeth => "upperTeeth",
            FixedStructure::RearPharynxWall => "rearPharynxWall",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.as_str() == s)
    }
}

/// Movable articulator contours.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Articulator {
    TongueBody,
    TongueTip,
    TongueDorsumMark,
    LowerJawTeeth,
    UpperLip,
    LowerLip,
    Velum,
    LarynxGlottis,
}

impl Articulator {
    pub const ALL: [Articulator; 8] = [
        Articulator::TongueBody,
        Articulator::TongueTip,
        Articulator::TongueDorsumMark,
        Articulator::LowerJawTeeth,
        Articulator::UpperLip,
        Articulator::LowerLip,
        Articulator::Velum,
        Articulator::LarynxGlottis,
    ];

    pub const TONGUE: [Articulator; 3] =
        [Articulator::TongueBody, Articulator::TongueTip, Articulator::TongueDorsumMark];

    pub fn as_str(self) -> &'static str {
        match self {
            Articulator::TongueBody => "tongueBody",
            Articulator::TongueTip => "tongueTip",
            Articulator::TongueDorsumMark => "tongueDorsumMark",
            Articulator::LowerJawTeeth => "lowerJawTeeth",
            Articulator::UpperLip => "upperLip",
            Articulator::LowerLip => "lowerLip",
            Articulator::Velum => "velum",
            Articulator::LarynxGlottis => "larynxGlottis",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.as_str() == s)
    }

    /// Vertical coupling coefficient to the lower jaw.
    pub fn jaw_coupling(self) -> f64 {
        match self {
            Articulator::TongueBody
            | Articulator::TongueTip
            | Articulator::TongueDorsumMark
            | Articulator::LowerLip
            | Articulator::LowerJawTeeth => 1.0,
            Articulator::UpperLip | Articulator::Velum | Articulator::LarynxGlottis => 0.0,
        }
    }
}

impl fmt::Display for Articulator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("contour {name}: needs at least 2 points, got {got}")]
    TooFewPoints { name: String, got: usize },
    #[error("contour {name}: point {index} ({x}, {y}) is non-finite or outside [{COORD_MIN}, {COORD_MAX}]")]
    CoordinateOutOfRange { name: String, index: usize, x: f64, y: f64 },
    #[error("contour {name}: points {index} and {next} coincide", next = index + 1)]
    DuplicatePoint { name: String, index: usize },
    #[error("resample needs at least 2 points, got {0}")]
    InvalidCount(usize),
}

/// Named, ordered polyline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    pub name: String,
    pub closed: bool,
    pub points: Vec<Point>,
}

impl Contour {
    /// Builds a contour and checks its invariants.
    pub fn new(name: impl Into<String>, closed: bool, points: Vec<Point>) -> Result<Self, GeometryError> {
        let c = Contour { name: name.into(), closed, points };
        c.check()?;
        Ok(c)
    }

    pub fn check(&self) -> Result<(), GeometryError> {
        if self.points.len() < 2 {
            return Err(GeometryError::TooFewPoints { name: self.name.clone(), got: self.points.len() });
        }
        for (index, p) in self.points.iter().enumerate() {
            let ok = p.is_finite() && (COORD_MIN..=COORD_MAX).contains(&p.x) && (COORD_MIN..=COORD_MAX).contains(&p.y);
            if !ok {
                return Err(GeometryError::CoordinateOutOfRange { name: self.name.clone(), index, x: p.x, y: p.y });
            }
        }
        if let Some(index) = self.points.windows(2).position(|w| w[0] == w[1]) {
            return Err(GeometryError::DuplicatePoint { name: self.name.clone(), index });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn arc_length(&self) -> f64 {
        self.segments().map(|(a, b)| a.dist(b)).sum()
    }

    /// Consecutive point pairs, including the closing edge for closed contours.
    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.points.len();
        let extra = if self.closed && n > 2 { 1 } else { 0 };
        (0..n.saturating_sub(1) + extra).map(move |i| (self.points[i], self.points[(i + 1) % n]))
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Contour {
        Contour {
            name: self.name.clone(),
            closed: self.closed,
            points: self.points.iter().map(|p| Point::new(p.x + dx, p.y + dy)).collect(),
        }
    }

    /// Vertexwise `(1 - t) * self + t * other`. Point counts must agree.
    pub fn lerp(&self, other: &Contour, t: f64) -> Contour {
        debug_assert_eq!(self.len(), other.len(), "vertexwise blend of {}", self.name);
        Contour {
            name: self.name.clone(),
            closed: self.closed,
            points: self.points.iter().zip(&other.points).map(|(a, b)| a.lerp(*b, t)).collect(),
        }
    }

    pub fn centroid(&self) -> Point {
        let n = self.points.len() as f64;
        let (sx, sy) = self.points.iter().fold((0.0, 0.0), |(sx, sy), p| (sx + p.x, sy + p.y));
        Point::new(sx / n, sy / n)
    }

    pub fn max_y(&self) -> f64 {
        self.points.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max)
    }

    /// All y values where the vertical line at `x` meets the polyline.
    pub fn heights_at(&self, x: f64) -> impl Iterator<Item = f64> + '_ {
        self.segments().filter_map(move |(a, b)| {
            let (lo, hi) = if a.x <= b.x { (a.x, b.x) } else { (b.x, a.x) };
            if x < lo || x > hi {
                return None;
            }
            if a.x == b.x {
                return Some(a.y.max(b.y));
            }
            let t = (x - a.x) / (b.x - a.x);
            Some(a.y + t * (b.y - a.y))
        })
    }

    /// Largest deviation between corresponding vertices.
    pub fn max_vertex_deviation(&self, other: &Contour) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.points.iter().zip(&other.points).map(|(a, b)| a.dist(*b)).fold(0.0, f64::max)
    }
}

/// Resamples `c` to `n` points spaced uniformly by arc length. Endpoints are
/// copied exactly.
pub fn resample(c: &Contour, n: usize) -> Result<Contour, GeometryError> {
    if n < 2 {
        return Err(GeometryError::InvalidCount(n));
    }
    let pts = &c.points;
    let seg: Vec<f64> = pts.windows(2).map(|w| w[0].dist(w[1])).collect();
    let total: f64 = seg.iter().sum();
    let mut out = Vec::with_capacity(n);
    out.push(pts[0]);
    let mut k = 0;
    let mut acc = 0.0;
    for i in 1..n - 1 {
        let target = total * i as f64 / (n - 1) as f64;
        while k + 1 < seg.len() && acc + seg[k] < target {
            acc += seg[k];
            k += 1;
        }
        let t = if seg[k] > 0.0 { ((target - acc) / seg[k]).clamp(0.0, 1.0) } else { 0.0 };
        let (a, b) = (pts[k], pts[k + 1]);
        // endpoints of the segment are reproduced exactly
        out.push(if t == 0.0 {
            a
        } else if t == 1.0 {
            b
        } else {
            Point::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
        });
    }
    out.push(*pts.last().expect("contour has points"));
    Ok(Contour { name: c.name.clone(), closed: c.closed, points: out })
}

/// Distance from `p` to segment `ab`. Exactly zero when `p` is an endpoint.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
    let q = if t <= 0.0 {
        a
    } else if t >= 1.0 {
        b
    } else {
        Point::new(a.x + t * dx, a.y + t * dy)
    };
    p.dist(q)
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

pub fn segment_distance(a: Point, b: Point, c: Point, d: Point) -> f64 {
    if segments_cross(a, b, c, d) {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

/// Minimum distance between two polylines (zero if they touch or cross).
pub fn polyline_distance(p: &Contour, q: &Contour) -> f64 {
    let mut best = f64::INFINITY;
    for (a, b) in p.segments() {
        for (c, d) in q.segments() {
            best = best.min(segment_distance(a, b, c, d));
            if best == 0.0 {
                return 0.0;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(pts: &[(f64, f64)]) -> Contour {
        Contour::new("c", false, pts.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn resample_straight_segment() {
        let r = resample(&line(&[(0.0, 0.0), (1.0, 0.0)]), 3).unwrap();
        assert_eq!(r.points, vec![Point::new(0.0, 0.0), Point::new(0.5, 0.0), Point::new(1.0, 0.0)]);
    }

    #[test]
    fn resample_l_shape_matches_arc_length_table() {
        // arc lengths {0, 0.5, 1.0, 1.5, 2.0} along (0,0)-(1,0)-(1,1)
        let r = resample(&line(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]), 5).unwrap();
        let expected = [(0.0, 0.0), (0.5, 0.0), (1.0, 0.0), (1.0, 0.5), (1.0, 1.0)];
        for (p, (x, y)) in r.points.iter().zip(expected) {
            assert!(p.dist(Point::new(x, y)) <= 1e-12, "{p:?} vs ({x}, {y})");
        }
    }

    #[test]
    fn resample_is_idempotent_on_uniform_input() {
        let c = line(&[(0.0, 0.0), (0.25, 0.0), (0.5, 0.0), (0.75, 0.0), (1.0, 0.0)]);
        let r = resample(&c, c.len()).unwrap();
        assert!(r.max_vertex_deviation(&c) <= 1e-9);
    }

    #[test]
    fn resample_rejects_small_counts() {
        let c = line(&[(0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(resample(&c, 1), Err(GeometryError::InvalidCount(1)));
        assert_eq!(resample(&c, 0), Err(GeometryError::InvalidCount(0)));
    }

    #[test]
    fn contour_invariants() {
        assert!(matches!(
            Contour::new("x", false, vec![Point::new(0.0, 0.0)]),
            Err(GeometryError::TooFewPoints { .. })
        ));
        assert!(matches!(
            Contour::new("x", false, vec![Point::new(0.0, 0.0), Point::new(0.0, 0.0)]),
            Err(GeometryError::DuplicatePoint { .. })
        ));
        assert!(matches!(
            Contour::new("x", false, vec![Point::new(0.0, 0.0), Point::new(1.3, 0.0)]),
            Err(GeometryError::CoordinateOutOfRange { .. })
        ));
        assert!(matches!(
            Contour::new("x", false, vec![Point::new(0.0, f64::NAN), Point::new(1.0, 0.0)]),
            Err(GeometryError::CoordinateOutOfRange { .. })
        ));
    }

    #[test]
    fn distances() {
        let a = line(&[(0.0, 0.0), (1.0, 0.0)]);
        let b = line(&[(0.5, 0.2), (0.5, 1.0)]);
        assert!((polyline_distance(&a, &b) - 0.2).abs() < 1e-15);
        let crossing = line(&[(0.5, -0.2), (0.5, 1.0)]);
        assert_eq!(polyline_distance(&a, &crossing), 0.0);
        let touching = line(&[(1.0, 0.0), (1.2, 0.5)]);
        assert_eq!(polyline_distance(&a, &touching), 0.0);
    }

    #[test]
    fn shared_vertex_distance_is_exactly_zero() {
        let p = Point::new(0.165011, 0.742087);
        let a = line(&[(0.15, 0.72), (p.x, p.y), (0.19, 0.76)]);
        let b = line(&[(0.14, 0.69), (0.158, 0.71), (p.x, p.y), (0.17, 0.70)]);
        assert_eq!(polyline_distance(&a, &b), 0.0);
    }

    #[test]
    fn heights_at_vertical_line() {
        let c = line(&[(0.0, 0.0), (0.5, 0.5), (1.0, 0.0)]);
        let hs: Vec<f64> = c.heights_at(0.25).collect();
        assert_eq!(hs, vec![0.25]);
        assert_eq!(c.heights_at(1.1).count(), 0);
    }
}
