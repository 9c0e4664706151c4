//! Control state to articulator geometry.
//!
//! The pipeline: vocalic blend over the /i/, /a/, /u/ triangle, lip rounding
//! toward /y/, jaw elevation for active constrictions, and finally the
//! constriction blend applied to the jaw-coupled vocalic base so that a
//! constriction at degree 1 lands exactly on its target.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::geometry::{
    library::contact_pair, polyline_distance, Articulator, Contour, FixedStructure, GlottisShape, Point,
    PrototypeLibrary,
};
use crate::params::{
    ConsonantalControls, Constrictor, ControlState, DiscreteConstrictionSpec, Manner, Place, ValidationErrors,
};

pub type ArticulatorSet = BTreeMap<Articulator, Contour>;

/// Triangle corners in (highLow, frontBack).
pub const CORNER_I: (f64, f64) = (1.0, 1.0);
pub const CORNER_U: (f64, f64) = (1.0, -1.0);
pub const CORNER_A: (f64, f64) = (-1.0, 0.0);

/// Spreading (negative rounding) extrapolates away from /y/ at half rate.
pub const SPREAD_FACTOR: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BarycentricWeights {
    pub w_i: f64,
    pub w_a: f64,
    pub w_u: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DerivedScalars {
    pub labial_aperture: f64,
    pub apical_distance: f64,
    pub dorsal_distance: f64,
    pub velopharyngeal_opening: f64,
    pub glottal_width: f64,
    pub jaw_height: f64,
}

impl DerivedScalars {
    pub fn measure(
        contours: &ArticulatorSet,
        fixed: &BTreeMap<FixedStructure, Contour>,
        glottis: &GlottisShape,
    ) -> DerivedScalars {
        let palate = &fixed[&FixedStructure::HardPalate];
        let teeth = &fixed[&FixedStructure::UpperTeeth];
        let tip = &contours[&Articulator::TongueTip];
        DerivedScalars {
            labial_aperture: polyline_distance(&contours[&Articulator::UpperLip], &contours[&Articulator::LowerLip]),
            apical_distance: polyline_distance(tip, palate).min(polyline_distance(tip, teeth)),
            dorsal_distance: polyline_distance(&contours[&Articulator::TongueDorsumMark], palate),
            velopharyngeal_opening: polyline_distance(
                &contours[&Articulator::Velum],
                &fixed[&FixedStructure::RearPharynxWall],
            ),
            glottal_width: glottis.posterior_separation(),
            jaw_height: contours[&Articulator::LowerJawTeeth].max_y(),
        }
    }

    /// The aperture controlled by a constrictor.
    pub fn aperture(&self, c: Constrictor) -> f64 {
        match c {
            Constrictor::Lips => self.labial_aperture,
            Constrictor::TongueTip => self.apical_distance,
            Constrictor::TongueDorsum => self.dorsal_distance,
        }
    }
}

/// Solved geometry for one control state.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ArticulatorFrame {
    pub state: ControlState,
    pub fixed: BTreeMap<FixedStructure, Contour>,
    pub contours: ArticulatorSet,
    pub glottis: GlottisShape,
    pub derived: DerivedScalars,
    /// Set when velumHeight < 0.
    pub velum_tight: bool,
    /// Set when glottalAperture < 0.
    pub glottis_tight: bool,
}

impl ArticulatorFrame {
    pub fn contour(&self, a: Articulator) -> &Contour {
        &self.contours[&a]
    }

    pub fn fixed(&self, f: FixedStructure) -> &Contour {
        &self.fixed[&f]
    }

    pub fn remeasure(&self) -> DerivedScalars {
        DerivedScalars::measure(&self.contours, &self.fixed, &self.glottis)
    }
}

fn cross(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

fn sub(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 - b.0, a.1 - b.1)
}

/// Barycentric weights of (highLow, frontBack); exterior points are first
/// projected onto the nearest point of the triangle.
pub fn vocalic_weights(high_low: f64, front_back: f64) -> BarycentricWeights {
    let p = (high_low, front_back);
    let d = sub(p, CORNER_A);
    let e_i = sub(CORNER_I, CORNER_A);
    let e_u = sub(CORNER_U, CORNER_A);
    let det = cross(e_i, e_u);
    let w_i = cross(d, e_u) / det;
    let w_u = cross(e_i, d) / det;
    let w_a = 1.0 - w_i - w_u;
    if w_i >= 0.0 && w_u >= 0.0 && w_a >= 0.0 {
        return BarycentricWeights { w_i, w_a, w_u };
    }
    // closest point on the boundary, expressed directly in weights
    let edge = |a: (f64, f64), b: (f64, f64)| {
        let ab = sub(b, a);
        let t = (((p.0 - a.0) * ab.0 + (p.1 - a.1) * ab.1) / (ab.0 * ab.0 + ab.1 * ab.1)).clamp(0.0, 1.0);
        let q = (a.0 + t * ab.0, a.1 + t * ab.1);
        ((p.0 - q.0).hypot(p.1 - q.1), t)
    };
    let (d_iu, t_iu) = edge(CORNER_I, CORNER_U);
    let (d_ua, t_ua) = edge(CORNER_U, CORNER_A);
    let (d_ai, t_ai) = edge(CORNER_A, CORNER_I);
    if d_iu <= d_ua && d_iu <= d_ai {
        BarycentricWeights { w_i: 1.0 - t_iu, w_u: t_iu, w_a: 0.0 }
    } else if d_ua <= d_ai {
        BarycentricWeights { w_u: 1.0 - t_ua, w_a: t_ua, w_i: 0.0 }
    } else {
        BarycentricWeights { w_a: 1.0 - t_ai, w_i: t_ai, w_u: 0.0 }
    }
}

fn combine(i: &Contour, a: &Contour, u: &Contour, w: BarycentricWeights) -> Contour {
    let points = i
        .points
        .iter()
        .zip(&a.points)
        .zip(&u.points)
        .map(|((pi, pa), pu)| {
            Point::new(w.w_i * pi.x + w.w_a * pa.x + w.w_u * pu.x, w.w_i * pi.y + w.w_a * pa.y + w.w_u * pu.y)
        })
        .collect();
    Contour { name: i.name.clone(), closed: i.closed, points }
}

/// Vertexwise convex combination of the three vowel prototypes.
pub fn vocalic_blend(lib: &PrototypeLibrary, high_low: f64, front_back: f64) -> ArticulatorSet {
    let w = vocalic_weights(high_low, front_back);
    let v = &lib.vowels;
    Articulator::ALL.into_iter().map(|a| (a, combine(&v.i[&a], &v.a[&a], &v.u[&a], w))).collect()
}

/// Lips and jaw toward /y/ for rounding > 0, away from it at half
/// rate for rounding < 0.
pub fn apply_rounding(lib: &PrototypeLibrary, set: &ArticulatorSet, rounding: f64) -> ArticulatorSet {
    let w = if rounding >= 0.0 { rounding } else { SPREAD_FACTOR * rounding };
    let mut out = set.clone();
    if w == 0.0 {
        return out;
    }
    for (a, y) in &lib.rounding {
        out.insert(*a, set[a].lerp(y, w));
    }
    out
}

/// Constrictors with a positive degree, with their place and manner.
pub fn active_constrictions(
    consonantal: &ConsonantalControls,
    discrete: &DiscreteConstrictionSpec,
) -> Vec<(Constrictor, f64, Place, Manner)> {
    Constrictor::ALL
        .into_iter()
        .map(|k| (k, consonantal.degree(k), discrete.place(k), discrete.manner(k)))
        .filter(|(_, c, _, _)| *c > 0.0)
        .collect()
}

/// The jaw height demanded by the most demanding constriction, never
/// below the vocalic height.
pub fn compute_jaw(
    lib: &PrototypeLibrary,
    vocalic_jaw: f64,
    consonantal: &ConsonantalControls,
    discrete: &DiscreteConstrictionSpec,
) -> f64 {
    active_constrictions(consonantal, discrete)
        .into_iter()
        .map(|(_, c, place, _)| (1.0 - c) * vocalic_jaw + c * lib.jaw_targets[&place])
        .fold(vocalic_jaw, f64::max)
}

/// Translates the vocalic base vertically by `κ · jaw_delta`
/// and then blends every targeted contour toward its closure target with the
/// constriction degree. Contours targeted by several constrictions are blended
/// in constrictor order.
pub fn apply_jaw_coupling(
    lib: &PrototypeLibrary,
    vocalic: &ArticulatorSet,
    jaw_delta: f64,
    consonantal: &ConsonantalControls,
    discrete: &DiscreteConstrictionSpec,
) -> ArticulatorSet {
    let mut out: ArticulatorSet = vocalic
        .iter()
        .map(|(&a, c)| {
            let dy = a.jaw_coupling() * jaw_delta;
            (a, if dy == 0.0 { c.clone() } else { c.translated(0.0, dy) })
        })
        .collect();
    for (_, c, place, manner) in active_constrictions(consonantal, discrete) {
        let target = lib.closure_target(place, manner).expect("library holds every place");
        for (a, t) in &target.contours {
            let blended = out[a].lerp(t, c);
            out.insert(*a, blended);
        }
    }
    out
}

/// The constriction blend without jaw elevation.
pub fn apply_constriction(
    lib: &PrototypeLibrary,
    set: &ArticulatorSet,
    consonantal: &ConsonantalControls,
    discrete: &DiscreteConstrictionSpec,
) -> ArticulatorSet {
    apply_jaw_coupling(lib, set, 0.0, consonantal, discrete)
}

/// Full pipeline.
pub fn solve(lib: &PrototypeLibrary, state: &ControlState) -> Result<ArticulatorFrame, ValidationErrors> {
    state.check()?;
    let v = &state.vocalic;
    let base = apply_rounding(lib, &vocalic_blend(lib, v.high_low, v.front_back), v.rounding);
    let vocalic_jaw = base[&Articulator::LowerJawTeeth].max_y();
    let jaw = compute_jaw(lib, vocalic_jaw, &state.consonantal, &state.discrete);
    let mut contours = apply_jaw_coupling(lib, &base, jaw - vocalic_jaw, &state.consonantal, &state.discrete);

    let ph = &state.phonatory;
    let velum = &lib.velum_extremes;
    contours.insert(Articulator::Velum, velum.closed.lerp(&velum.open, ph.velum_height.max(0.0)));
    let glottis = lib.glottis_closed.lerp(&lib.glottis_open, ph.glottal_aperture.max(0.0));

    let fixed = lib.fixed.clone();
    let derived = DerivedScalars::measure(&contours, &fixed, &glottis);
    Ok(ArticulatorFrame {
        state: *state,
        fixed,
        contours,
        glottis,
        derived,
        velum_tight: ph.velum_height < 0.0,
        glottis_tight: ph.glottal_aperture < 0.0,
    })
}

/// Distance between the moving articulator of `place` and its opposing
/// structure, less the groove gap for near manner (floored at zero).
pub fn place_contact_distance(frame: &ArticulatorFrame, lib: &PrototypeLibrary, place: Place, manner: Manner) -> f64 {
    let (mover, opposite) = contact_pair(place, &frame.contours, &frame.fixed);
    let raw = polyline_distance(mover, opposite);
    let gap = if manner == Manner::Near { lib.parameters.near_gap } else { 0.0 };
    (raw - gap).max(0.0)
}
