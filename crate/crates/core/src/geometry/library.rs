//! Prototype library: reference contour sets and the JSON schema they load from.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{polyline_distance, Articulator, Contour, FixedStructure, Point};
use crate::params::{Constrictor, Manner, Place};

pub const SCHEMA_VERSION: u32 = 1;

/// Vowel prototype names in reference order.
pub const VOWEL_NAMES: [&str; 3] = ["i", "a", "u"];

const CONTACT_EPS: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, thiserror::Error)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum LibraryError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("schema violation at {path}: {message}")]
    SchemaViolation { path: String, message: String },
    #[error("point count mismatch for {articulator} in {context}: expected {expected}, got {got}")]
    PointCountMismatch { articulator: String, context: String, expected: usize, got: usize },
    #[error("missing prototype {0}")]
    MissingPrototype(String),
}

impl LibraryError {
    fn schema(path: impl Into<String>, message: impl fmt::Display) -> Self {
        LibraryError::SchemaViolation { path: path.into(), message: message.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct LibraryErrors(pub Vec<LibraryError>);

impl fmt::Display for LibraryErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for LibraryErrors {}

impl From<LibraryError> for LibraryErrors {
    fn from(e: LibraryError) -> Self {
        LibraryErrors(vec![e])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ModelParameters {
    /// Midsagittal gap left open by `near` constrictions.
    pub near_gap: f64,
    /// Larynx height difference between /a/ and each of /i/ (up) and /u/ (down).
    pub larynx_lowering: f64,
}

/// Virtual cross-section data for the palatal contact map.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PalatalGrid {
    /// Anterior end of the stations along x.
    pub x_front: f64,
    /// Posterior end of the stations along x.
    pub x_back: f64,
    /// Tongue half width as a fraction of the palate half width, sampled
    /// uniformly from `x_front` to `x_back`.
    pub tongue_half_width: Vec<f64>,
    pub groove_half_width: f64,
    pub lateral_band: f64,
    /// Distance from the place station over which a near constriction raises
    /// the tongue sides.
    pub groove_reach: f64,
}

impl PalatalGrid {
    pub fn half_width_at(&self, x: f64) -> f64 {
        let w = &self.tongue_half_width;
        if w.len() == 1 {
            return w[0];
        }
        let u = ((x - self.x_front) / (self.x_back - self.x_front)).clamp(0.0, 1.0) * (w.len() - 1) as f64;
        let i = (u.floor() as usize).min(w.len() - 2);
        let t = u - i as f64;
        (1.0 - t) * w[i] + t * w[i + 1]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Airways {
    /// Path from the velopharyngeal port to the nostrils.
    pub nasal: Vec<Point>,
}

/// Vocal-fold edges in the superior (glottal) view.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GlottisShape {
    pub left_fold: Contour,
    pub right_fold: Contour,
}

impl GlottisShape {
    pub fn lerp(&self, other: &GlottisShape, t: f64) -> GlottisShape {
        GlottisShape {
            left_fold: self.left_fold.lerp(&other.left_fold, t),
            right_fold: self.right_fold.lerp(&other.right_fold, t),
        }
    }

    /// Separation of the posterior (last) fold points.
    pub fn posterior_separation(&self) -> f64 {
        let l = *self.left_fold.points.last().expect("fold has points");
        let r = *self.right_fold.points.last().expect("fold has points");
        l.dist(r)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VelumExtremes {
    pub open: Contour,
    pub closed: Contour,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VowelPrototypes {
    pub i: BTreeMap<Articulator, Contour>,
    pub a: BTreeMap<Articulator, Contour>,
    pub u: BTreeMap<Articulator, Contour>,
}

impl VowelPrototypes {
    pub fn get(&self, name: &str) -> Option<&BTreeMap<Articulator, Contour>> {
        match name {
            "i" => Some(&self.i),
            "a" => Some(&self.a),
            "u" => Some(&self.u),
            _ => None,
        }
    }
}

/// Closure target for one place (and manner variant).
#[derive(Clone, Debug, PartialEq)]
pub struct ClosureTarget {
    pub place: Place,
    pub manner: Manner,
    pub primary: Constrictor,
    pub contours: BTreeMap<Articulator, Contour>,
    /// Point of contact with the opposing structure (full-manner geometry).
    pub station: Point,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrototypeLibrary {
    pub fixed: BTreeMap<FixedStructure, Contour>,
    pub vowels: VowelPrototypes,
    /// Lips and jaw of the rounded front vowel /y/.
    pub rounding: BTreeMap<Articulator, Contour>,
    /// Full-manner targets as stored in the document.
    pub closure_targets: BTreeMap<Place, ClosureTarget>,
    near_targets: BTreeMap<Place, ClosureTarget>,
    pub velum_extremes: VelumExtremes,
    pub glottis_open: GlottisShape,
    pub glottis_closed: GlottisShape,
    pub jaw_targets: BTreeMap<Place, f64>,
    pub parameters: ModelParameters,
    pub palatal_grid: PalatalGrid,
    pub airways: Airways,
}

// ---------------------------------------------------------------- document

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct LibraryDocument {
    schema_version: u32,
    fixed: Vec<Contour>,
    vowel_prototypes: BTreeMap<String, Vec<Contour>>,
    rounding_prototype: Vec<Contour>,
    closure_targets: BTreeMap<String, TargetDocument>,
    velum_extremes: VelumDocument,
    glottis_extremes: GlottisDocument,
    jaw_targets: BTreeMap<String, f64>,
    parameters: ModelParameters,
    palatal_grid: PalatalGrid,
    airways: Airways,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TargetDocument {
    primary: Constrictor,
    contours: Vec<Contour>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VelumDocument {
    closed: Contour,
    open: Contour,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GlottisDocument {
    closed: Vec<Contour>,
    open: Vec<Contour>,
}

// ---------------------------------------------------------------- loading

struct Loader {
    errors: Vec<LibraryError>,
    counts: BTreeMap<Articulator, usize>,
}

impl Loader {
    fn contour_ok(&mut self, path: &str, c: &Contour) -> bool {
        match c.check() {
            Ok(()) => true,
            Err(e) => {
                self.errors.push(LibraryError::schema(path, e));
                false
            }
        }
    }

    fn count(&mut self, context: &str, art: Articulator, c: &Contour) {
        match self.counts.get(&art) {
            None => {
                self.counts.insert(art, c.len());
            }
            Some(&expected) if expected != c.len() => self.errors.push(LibraryError::PointCountMismatch {
                articulator: art.as_str().into(),
                context: context.into(),
                expected,
                got: c.len(),
            }),
            Some(_) => {}
        }
    }

    /// Parses a list of movable contours, rejecting duplicates and unknown names.
    fn movable_set(&mut self, path: &str, list: &[Contour]) -> BTreeMap<Articulator, Contour> {
        let mut out = BTreeMap::new();
        for c in list {
            let Some(art) = Articulator::parse(&c.name) else {
                self.errors.push(LibraryError::schema(format!("{path}.{}", c.name), "unknown articulator name"));
                continue;
            };
            if out.contains_key(&art) {
                self.errors.push(LibraryError::schema(format!("{path}.{}", c.name), "articulator listed twice"));
                continue;
            }
            if self.contour_ok(&format!("{path}.{}", c.name), c) {
                self.count(path, art, c);
                out.insert(art, c.clone());
            }
        }
        out
    }

    fn require(&mut self, path: &str, set: &BTreeMap<Articulator, Contour>, names: &[Articulator]) -> bool {
        let mut ok = true;
        for a in names {
            if !set.contains_key(a) {
                self.errors.push(LibraryError::schema(format!("{path}.{a}"), "required contour missing"));
                ok = false;
            }
        }
        ok
    }
}

fn place_key(p: Place) -> &'static str {
    p.as_str()
}

impl PrototypeLibrary {
    /// The library compiled into the binary.
    pub fn bundled() -> &'static PrototypeLibrary {
        static LIB: OnceLock<PrototypeLibrary> = OnceLock::new();
        LIB.get_or_init(|| {
            PrototypeLibrary::from_json_str(crate::data::BUNDLED_CONTOURS).expect("bundled contour library is valid")
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<PrototypeLibrary, LibraryErrors> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| LibraryError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> Result<PrototypeLibrary, LibraryErrors> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| LibraryError::schema("<document>", e))?;
        Self::from_value(value)
    }

    /// Loads and eagerly validates a library document.
    pub fn from_value(value: serde_json::Value) -> Result<PrototypeLibrary, LibraryErrors> {
        if let Some(v) = value.get("schemaVersion") {
            if v.as_u64() != Some(SCHEMA_VERSION as u64) {
                return Err(LibraryError::schema("schemaVersion", format!("expected {SCHEMA_VERSION}, got {v}")).into());
            }
        }
        let doc: LibraryDocument = serde_json::from_value(value).map_err(|e| LibraryError::schema("<document>", e))?;
        let mut ld = Loader { errors: Vec::new(), counts: BTreeMap::new() };

        // fixed structures
        let mut fixed = BTreeMap::new();
        for c in &doc.fixed {
            match FixedStructure::parse(&c.name) {
                None => ld.errors.push(LibraryError::schema(format!("fixed.{}", c.name), "unknown fixed structure")),
                Some(f) if fixed.contains_key(&f) => {
                    ld.errors.push(LibraryError::schema(format!("fixed.{}", c.name), "listed twice"))
                }
                Some(f) => {
                    if ld.contour_ok(&format!("fixed.{}", c.name), c) {
                        fixed.insert(f, c.clone());
                    }
                }
            }
        }
        for f in FixedStructure::ALL {
            if !fixed.contains_key(&f) {
                ld.errors.push(LibraryError::schema(format!("fixed.{}", f.as_str()), "required structure missing"));
            }
        }

        // vowel prototypes: /i/ fixes the reference point counts
        for key in doc.vowel_prototypes.keys() {
            if !VOWEL_NAMES.contains(&key.as_str()) {
                ld.errors.push(LibraryError::schema(format!("vowelPrototypes.{key}"), "unknown vowel prototype"));
            }
        }
        let mut vowel_sets = BTreeMap::new();
        for name in VOWEL_NAMES {
            match doc.vowel_prototypes.get(name) {
                None => ld.errors.push(LibraryError::MissingPrototype(name.into())),
                Some(list) => {
                    let path = format!("vowelPrototypes.{name}");
                    let set = ld.movable_set(&path, list);
                    ld.require(&path, &set, &Articulator::ALL);
                    vowel_sets.insert(name, set);
                }
            }
        }

        let rounding = ld.movable_set("roundingPrototype", &doc.rounding_prototype);
        if doc.rounding_prototype.is_empty() {
            ld.errors.push(LibraryError::MissingPrototype("y".into()));
        } else {
            ld.require(
                "roundingPrototype",
                &rounding,
                &[Articulator::UpperLip, Articulator::LowerLip, Articulator::LowerJawTeeth],
            );
        }

        // closure targets
        for key in doc.closure_targets.keys() {
            if Place::parse(key).is_none() {
                ld.errors.push(LibraryError::schema(format!("closureTargets.{key}"), "unknown place"));
            }
        }
        let mut closure_targets = BTreeMap::new();
        for place in Place::ALL {
            let path = format!("closureTargets.{}", place_key(place));
            let Some(t) = doc.closure_targets.get(place_key(place)) else {
                ld.errors.push(LibraryError::MissingPrototype(path));
                continue;
            };
            if t.primary != place.constrictor() {
                ld.errors.push(LibraryError::schema(
                    format!("{path}.primary"),
                    format!("{:?} cannot constrict at {place}", t.primary),
                ));
                continue;
            }
            let contours = ld.movable_set(&path, &t.contours);
            if !ld.require(&path, &contours, primary_contours(t.primary)) {
                continue;
            }
            closure_targets.insert(
                place,
                ClosureTarget { place, manner: Manner::Full, primary: t.primary, contours, station: Point::default() },
            );
        }

        // velum and glottis extremes
        for (label, c) in [("closed", &doc.velum_extremes.closed), ("open", &doc.velum_extremes.open)] {
            let path = format!("velumExtremes.{label}");
            if ld.contour_ok(&path, c) {
                ld.count(&path, Articulator::Velum, c);
            }
        }
        let glottis_closed = glottis_shape(&mut ld, "glottisExtremes.closed", &doc.glottis_extremes.closed);
        let glottis_open = glottis_shape(&mut ld, "glottisExtremes.open", &doc.glottis_extremes.open);
        if let (Some(c), Some(o)) = (&glottis_closed, &glottis_open) {
            if c.left_fold.len() != o.left_fold.len() || c.right_fold.len() != o.right_fold.len() {
                ld.errors.push(LibraryError::PointCountMismatch {
                    articulator: "glottis".into(),
                    context: "glottisExtremes".into(),
                    expected: c.left_fold.len(),
                    got: o.left_fold.len(),
                });
            }
        }

        // jaw targets
        for key in doc.jaw_targets.keys() {
            if Place::parse(key).is_none() {
                ld.errors.push(LibraryError::schema(format!("jawTargets.{key}"), "unknown place"));
            }
        }
        let mut jaw_targets = BTreeMap::new();
        for place in Place::ALL {
            match doc.jaw_targets.get(place_key(place)) {
                None => ld.errors.push(LibraryError::schema(format!("jawTargets.{place}"), "missing")),
                Some(&h) if !(0.0..=1.0).contains(&h) => {
                    ld.errors.push(LibraryError::schema(format!("jawTargets.{place}"), format!("{h} outside [0, 1]")))
                }
                Some(&h) => {
                    jaw_targets.insert(place, h);
                }
            }
        }

        check_parameters(&mut ld, &doc.parameters, &doc.palatal_grid, &doc.airways);

        if !ld.errors.is_empty() {
            return Err(LibraryErrors(ld.errors));
        }

        // relational checks that need the complete library
        let vowels = VowelPrototypes {
            i: vowel_sets.remove("i").expect("checked"),
            a: vowel_sets.remove("a").expect("checked"),
            u: vowel_sets.remove("u").expect("checked"),
        };
        for name in VOWEL_NAMES {
            let velum = &vowels.get(name).expect("known")[&Articulator::Velum];
            if velum.max_vertex_deviation(&doc.velum_extremes.closed) > CONTACT_EPS {
                ld.errors.push(LibraryError::schema(
                    format!("vowelPrototypes.{name}.velum"),
                    "vowel prototypes must use the closed velum extreme",
                ));
            }
        }
        let lowering = doc.parameters.larynx_lowering;
        let larynx_a = &vowels.a[&Articulator::LarynxGlottis];
        for (name, set, dy) in [("i", &vowels.i, lowering), ("u", &vowels.u, -lowering)] {
            let expected = larynx_a.translated(0.0, dy);
            if set[&Articulator::LarynxGlottis].max_vertex_deviation(&expected) > CONTACT_EPS {
                ld.errors.push(LibraryError::schema(
                    format!("vowelPrototypes.{name}.larynxGlottis"),
                    format!("larynx must sit {dy:+} above the /a/ larynx"),
                ));
            }
        }
        for (place, target) in closure_targets.iter_mut() {
            match contact_point(&fixed, target) {
                Some((d, p)) if d <= CONTACT_EPS => target.station = p,
                Some((d, _)) => ld.errors.push(LibraryError::schema(
                    format!("closureTargets.{place}"),
                    format!("target does not reach its contact structure (distance {d:.3e})"),
                )),
                None => {}
            }
        }
        if !ld.errors.is_empty() {
            return Err(LibraryErrors(ld.errors));
        }

        let near_gap = doc.parameters.near_gap;
        let near_targets = closure_targets.iter().map(|(&p, t)| (p, near_variant(t, near_gap))).collect();

        Ok(PrototypeLibrary {
            fixed,
            vowels,
            rounding,
            closure_targets,
            near_targets,
            velum_extremes: VelumExtremes { open: doc.velum_extremes.open, closed: doc.velum_extremes.closed },
            glottis_open: glottis_open.expect("checked"),
            glottis_closed: glottis_closed.expect("checked"),
            jaw_targets,
            parameters: doc.parameters,
            palatal_grid: doc.palatal_grid,
            airways: doc.airways,
        })
    }

    /// Target geometry for a place under a given manner. Lateral shares the
    /// full-contact geometry; near lowers the moving contours by the groove gap.
    pub fn closure_target(&self, place: Place, manner: Manner) -> Option<&ClosureTarget> {
        match manner {
            Manner::Full | Manner::Lateral => self.closure_targets.get(&place),
            Manner::Near => self.near_targets.get(&place),
        }
    }

    pub fn fixed(&self, f: FixedStructure) -> &Contour {
        &self.fixed[&f]
    }

    /// Point count of each movable articulator.
    pub fn point_count(&self, a: Articulator) -> usize {
        self.vowels.a[&a].len()
    }

    /// Serializes back into the document schema.
    pub fn to_document(&self) -> serde_json::Value {
        let list = |m: &BTreeMap<Articulator, Contour>| m.values().cloned().collect::<Vec<_>>();
        let doc = LibraryDocument {
            schema_version: SCHEMA_VERSION,
            fixed: self.fixed.values().cloned().collect(),
            vowel_prototypes: VOWEL_NAMES
                .iter()
                .map(|n| (n.to_string(), list(self.vowels.get(n).expect("known"))))
                .collect(),
            rounding_prototype: list(&self.rounding),
            closure_targets: self
                .closure_targets
                .iter()
                .map(|(p, t)| {
                    (p.as_str().to_string(), TargetDocument { primary: t.primary, contours: list(&t.contours) })
                })
                .collect(),
            velum_extremes: VelumDocument {
                closed: self.velum_extremes.closed.clone(),
                open: self.velum_extremes.open.clone(),
            },
            glottis_extremes: GlottisDocument {
                closed: vec![self.glottis_closed.left_fold.clone(), self.glottis_closed.right_fold.clone()],
                open: vec![self.glottis_open.left_fold.clone(), self.glottis_open.right_fold.clone()],
            },
            jaw_targets: self.jaw_targets.iter().map(|(p, h)| (p.as_str().to_string(), *h)).collect(),
            parameters: self.parameters.clone(),
            palatal_grid: self.palatal_grid.clone(),
            airways: self.airways.clone(),
        };
        serde_json::to_value(doc).expect("library serializes")
    }
}

/// Contours that must touch the opposing structure for each constrictor.
pub fn primary_contours(c: Constrictor) -> &'static [Articulator] {
    match c {
        Constrictor::Lips => &[Articulator::UpperLip, Articulator::LowerLip],
        Constrictor::TongueTip => &[Articulator::TongueTip],
        Constrictor::TongueDorsum => &[Articulator::TongueDorsumMark],
    }
}

/// Contours lowered by the groove gap in the near variant.
fn near_moving(c: Constrictor, a: Articulator) -> bool {
    match c {
        Constrictor::Lips => a == Articulator::LowerLip,
        Constrictor::TongueTip | Constrictor::TongueDorsum => true,
    }
}

fn near_variant(t: &ClosureTarget, gap: f64) -> ClosureTarget {
    let contours = t
        .contours
        .iter()
        .map(|(&a, c)| (a, if near_moving(t.primary, a) { c.translated(0.0, -gap) } else { c.clone() }))
        .collect();
    ClosureTarget { manner: Manner::Near, contours, ..t.clone() }
}

/// The contour pair whose distance measures a place's constriction: the moving
/// contour and its opposing structure.
pub fn contact_pair<'a>(
    place: Place,
    movable: &'a BTreeMap<Articulator, Contour>,
    fixed: &'a BTreeMap<FixedStructure, Contour>,
) -> (&'a Contour, &'a Contour) {
    match place {
        Place::Bilabial => (&movable[&Articulator::LowerLip], &movable[&Articulator::UpperLip]),
        Place::Labiodental => (&movable[&Articulator::LowerLip], &fixed[&FixedStructure::UpperTeeth]),
        Place::Dental => (&movable[&Articulator::TongueTip], &fixed[&FixedStructure::UpperTeeth]),
        Place::Alveolar | Place::Postalveolar => {
            (&movable[&Articulator::TongueTip], &fixed[&FixedStructure::HardPalate])
        }
        Place::Palatal | Place::Velar => {
            (&movable[&Articulator::TongueDorsumMark], &fixed[&FixedStructure::HardPalate])
        }
    }
}

fn contact_point(fixed: &BTreeMap<FixedStructure, Contour>, t: &ClosureTarget) -> Option<(f64, Point)> {
    let movable = &t.contours;
    let (mover, opposite) = contact_pair(t.place, movable, fixed);
    let d = polyline_distance(mover, opposite);
    let p = mover.points.iter().copied().min_by(|a, b| point_to(opposite, *a).total_cmp(&point_to(opposite, *b)))?;
    Some((d, p))
}

fn point_to(c: &Contour, p: Point) -> f64 {
    c.segments().map(|(a, b)| super::point_segment_distance(p, a, b)).fold(f64::INFINITY, f64::min)
}

fn glottis_shape(ld: &mut Loader, path: &str, list: &[Contour]) -> Option<GlottisShape> {
    let find = |name: &str| list.iter().find(|c| c.name == name);
    let (Some(l), Some(r)) = (find("leftFold"), find("rightFold")) else {
        ld.errors.push(LibraryError::schema(path, "needs leftFold and rightFold"));
        return None;
    };
    if list.len() != 2 {
        ld.errors.push(LibraryError::schema(path, "expected exactly two folds"));
    }
    let ok = ld.contour_ok(&format!("{path}.leftFold"), l) & ld.contour_ok(&format!("{path}.rightFold"), r);
    if l.len() != r.len() {
        ld.errors.push(LibraryError::PointCountMismatch {
            articulator: "rightFold".into(),
            context: path.into(),
            expected: l.len(),
            got: r.len(),
        });
        return None;
    }
    ok.then(|| GlottisShape { left_fold: l.clone(), right_fold: r.clone() })
}

fn check_parameters(ld: &mut Loader, p: &ModelParameters, g: &PalatalGrid, airways: &Airways) {
    if !(p.near_gap > 0.0 && p.near_gap < 0.2) {
        ld.errors.push(LibraryError::schema("parameters.nearGap", format!("{} outside (0, 0.2)", p.near_gap)));
    }
    if !(p.larynx_lowering >= 0.0 && p.larynx_lowering < 0.5) {
        ld.errors
            .push(LibraryError::schema("parameters.larynxLowering", format!("{} outside [0, 0.5)", p.larynx_lowering)));
    }
    if !(g.x_front.is_finite() && g.x_back.is_finite() && g.x_front < g.x_back) {
        ld.errors.push(LibraryError::schema("palatalGrid", "xFront must be finite and less than xBack"));
    }
    if g.tongue_half_width.is_empty() || g.tongue_half_width.iter().any(|w| !(*w > 0.0 && *w < 1.0)) {
        ld.errors.push(LibraryError::schema("palatalGrid.tongueHalfWidth", "values must lie in (0, 1)"));
    }
    for (name, v) in
        [("grooveHalfWidth", g.groove_half_width), ("lateralBand", g.lateral_band), ("grooveReach", g.groove_reach)]
    {
        if !(v > 0.0 && v < 1.0) {
            ld.errors.push(LibraryError::schema(format!("palatalGrid.{name}"), format!("{v} outside (0, 1)")));
        }
    }
    if airways.nasal.len() < 2 || airways.nasal.iter().any(|p| !p.is_finite()) {
        ld.errors.push(LibraryError::schema("airways.nasal", "needs at least two finite points"));
    }
}
