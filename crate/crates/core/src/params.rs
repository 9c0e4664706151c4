//! Control-parameter state of the model.
//!
//! Ten continuous parameters (vocalic, consonantal, velopharyngeal, laryngeal and
//! sublaryngeal) plus six discrete place/manner labels. The canonical serialized
//! form is a flat JSON object with exactly sixteen keys; [`validate`] parses it and
//! reports every violation at once instead of clamping.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Closed interval used for range checks and error reports.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
}

impl Range {
    pub const SYMMETRIC: Range = Range { min: -1.0, max: 1.0 };
    pub const UNIT: Range = Range { min: 0.0, max: 1.0 };

    pub fn contains(&self, v: f64) -> bool {
        v.is_finite() && v >= self.min && v <= self.max
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.min, self.max)
    }
}

/// Tongue height, tongue front-back position and lip rounding, each in [-1, 1].
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VocalicControls {
    pub high_low: f64,
    pub front_back: f64,
    pub rounding: f64,
}

/// Constriction degrees in [0, 1]: 0 leaves the articulator at its vocalic
/// position, 1 is full closure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConsonantalControls {
    pub labial_aperture: f64,
    pub tongue_tip_height: f64,
    pub tongue_dorsum_height: f64,
}

impl ConsonantalControls {
    pub fn degree(&self, constrictor: Constrictor) -> f64 {
        match constrictor {
            Constrictor::Lips => self.labial_aperture,
            Constrictor::TongueTip => self.tongue_tip_height,
            Constrictor::TongueDorsum => self.tongue_dorsum_height,
        }
    }

    pub fn set_degree(&mut self, constrictor: Constrictor, value: f64) {
        match constrictor {
            Constrictor::Lips => self.labial_aperture = value,
            Constrictor::TongueTip => self.tongue_tip_height = value,
            Constrictor::TongueDorsum => self.tongue_dorsum_height = value,
        }
    }
}

/// Velopharyngeal, glottal and sublaryngeal controls.
///
/// `velum_height` and `glottal_aperture` use 1 = fully open, 0 = closed,
/// -1 = tight closure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PhonatoryControls {
    pub velum_height: f64,
    pub glottal_aperture: f64,
    pub vocal_fold_tension: f64,
    pub lung_pressure: f64,
}

/// The three primary constricting articulators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Constrictor {
    Lips,
    TongueTip,
    TongueDorsum,
}

impl Constrictor {
    pub const ALL: [Constrictor; 3] = [Constrictor::Lips, Constrictor::TongueTip, Constrictor::TongueDorsum];

    pub fn places(self) -> &'static [Place] {
        match self {
            Constrictor::Lips => &[Place::Bilabial, Place::Labiodental],
            Constrictor::TongueTip => &[Place::Dental, Place::Alveolar, Place::Postalveolar],
            Constrictor::TongueDorsum => &[Place::Palatal, Place::Velar],
        }
    }
}

/// Place of articulation across all constrictors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Place {
    Bilabial,
    Labiodental,
    Dental,
    Alveolar,
    Postalveolar,
    Palatal,
    Velar,
}

impl Place {
    pub const ALL: [Place; 7] = [
        Place::Bilabial,
        Place::Labiodental,
        Place::Dental,
        Place::Alveolar,
        Place::Postalveolar,
        Place::Palatal,
        Place::Velar,
    ];

    pub fn constrictor(self) -> Constrictor {
        match self {
            Place::Bilabial | Place::Labiodental => Constrictor::Lips,
            Place::Dental | Place::Alveolar | Place::Postalveolar => Constrictor::TongueTip,
            Place::Palatal | Place::Velar => Constrictor::TongueDorsum,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Place::Bilabial => "bilabial",
            Place::Labiodental => "labiodental",
            Place::Dental => "dental",
            Place::Alveolar => "alveolar",
            Place::Postalveolar => "postalveolar",
            Place::Palatal => "palatal",
            Place::Velar => "velar",
        }
    }

    pub fn parse(s: &str) -> Option<Place> {
        Place::ALL.into_iter().find(|p| p.as_str() == s)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Constriction shape: full contact, near contact with a central groove, or
/// central contact with lateral lowering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Manner {
    Full,
    Near,
    Lateral,
}

impl Manner {
    pub fn as_str(self) -> &'static str {
        match self {
            Manner::Full => "full",
            Manner::Near => "near",
            Manner::Lateral => "lateral",
        }
    }
}

macro_rules! label_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $label:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $label)] $variant),+
        }

        impl $name {
            pub const LABELS: &'static [&'static str] = &[$($label),+];

            pub fn as_str(self) -> &'static str {
                match self { $($name::$variant => $label),+ }
            }

            pub fn parse(s: &str) -> Option<Self> {
                match s { $($label => Some($name::$variant),)+ _ => None }
            }
        }
    };
}

label_enum!(LipsPlace { Bilabial => "bilabial", Labiodental => "labiodental" });
label_enum!(LipsManner { Full => "full", Near => "near" });
label_enum!(TipPlace { Dental => "dental", Alveolar => "alveolar", Postalveolar => "postalveolar" });
label_enum!(TipManner { Full => "full", Near => "near", Lateral => "lateral" });
label_enum!(DorsumPlace { Palatal => "palatal", Velar => "velar" });
label_enum!(DorsumManner { Full => "full", Near => "near" });

/// Place and manner labels for each constrictor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DiscreteConstrictionSpec {
    pub lips_place: LipsPlace,
    pub lips_manner: LipsManner,
    pub tip_place: TipPlace,
    pub tip_manner: TipManner,
    pub dorsum_place: DorsumPlace,
    pub dorsum_manner: DorsumManner,
}

impl Default for DiscreteConstrictionSpec {
    fn default() -> Self {
        DiscreteConstrictionSpec {
            lips_place: LipsPlace::Bilabial,
            lips_manner: LipsManner::Full,
            tip_place: TipPlace::Alveolar,
            tip_manner: TipManner::Full,
            dorsum_place: DorsumPlace::Velar,
            dorsum_manner: DorsumManner::Full,
        }
    }
}

impl DiscreteConstrictionSpec {
    pub fn place(&self, constrictor: Constrictor) -> Place {
        match constrictor {
            Constrictor::Lips => match self.lips_place {
                LipsPlace::Bilabial => Place::Bilabial,
                LipsPlace::Labiodental => Place::Labiodental,
            },
            Constrictor::TongueTip => match self.tip_place {
                TipPlace::Dental => Place::Dental,
                TipPlace::Alveolar => Place::Alveolar,
                TipPlace::Postalveolar => Place::Postalveolar,
            },
            Constrictor::TongueDorsum => match self.dorsum_place {
                DorsumPlace::Palatal => Place::Palatal,
                DorsumPlace::Velar => Place::Velar,
            },
        }
    }

    pub fn manner(&self, constrictor: Constrictor) -> Manner {
        match constrictor {
            Constrictor::Lips => match self.lips_manner {
                LipsManner::Full => Manner::Full,
                LipsManner::Near => Manner::Near,
            },
            Constrictor::TongueTip => match self.tip_manner {
                TipManner::Full => Manner::Full,
                TipManner::Near => Manner::Near,
                TipManner::Lateral => Manner::Lateral,
            },
            Constrictor::TongueDorsum => match self.dorsum_manner {
                DorsumManner::Full => Manner::Full,
                DorsumManner::Near => Manner::Near,
            },
        }
    }
}

/// Complete articulatory command.
///
/// Serializes to the flat sixteen-key document; deserialization goes through
/// [`validate`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Value")]
pub struct ControlState {
    #[serde(flatten)]
    pub vocalic: VocalicControls,
    #[serde(flatten)]
    pub consonantal: ConsonantalControls,
    #[serde(flatten)]
    pub discrete: DiscreteConstrictionSpec,
    #[serde(flatten)]
    pub phonatory: PhonatoryControls,
}

impl Default for ControlState {
    fn default() -> Self {
        neutral()
    }
}

impl TryFrom<Value> for ControlState {
    type Error = ValidationErrors;

    fn try_from(value: Value) -> Result<Self, Self::Error> {
        validate(&value)
    }
}

/// One validation failure.
#[derive(Clone, Debug, PartialEq, Serialize, thiserror::Error)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum ValidationError {
    #[error("{field} = {value} is outside {range}")]
    OutOfRange { field: String, value: f64, range: Range },
    #[error("{field} = {value:?} is not one of {allowed:?}")]
    UnknownLabel { field: String, value: String, allowed: Vec<String> },
    #[error("missing field {field}")]
    MissingField { field: String },
    #[error("unknown field {field}")]
    UnknownField { field: String },
    #[error("{field} has the wrong type (expected {expected})")]
    WrongType { field: String, expected: &'static str },
}

impl ValidationError {
    pub fn field(&self) -> &str {
        match self {
            ValidationError::OutOfRange { field, .. }
            | ValidationError::UnknownLabel { field, .. }
            | ValidationError::MissingField { field }
            | ValidationError::UnknownField { field }
            | ValidationError::WrongType { field, .. } => field,
        }
    }
}

/// All violations found in one document.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ValidationErrors(pub Vec<ValidationError>);

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationErrors {}

/// Field table: name and allowed interval of every continuous parameter, in
/// canonical order.
pub const CONTINUOUS_FIELDS: [(&str, Range); 10] = [
    ("highLow", Range::SYMMETRIC),
    ("frontBack", Range::SYMMETRIC),
    ("rounding", Range::SYMMETRIC),
    ("labialAperture", Range::UNIT),
    ("tongueTipHeight", Range::UNIT),
    ("tongueDorsumHeight", Range::UNIT),
    ("velumHeight", Range::SYMMETRIC),
    ("glottalAperture", Range::SYMMETRIC),
    ("vocalFoldTension", Range::UNIT),
    ("lungPressure", Range::UNIT),
];

pub const DISCRETE_FIELDS: [(&str, &[&str]); 6] = [
    ("lipsPlace", LipsPlace::LABELS),
    ("lipsManner", LipsManner::LABELS),
    ("tipPlace", TipPlace::LABELS),
    ("tipManner", TipManner::LABELS),
    ("dorsumPlace", DorsumPlace::LABELS),
    ("dorsumManner", DorsumManner::LABELS),
];

/// Neutral state: every continuous parameter 0, default labels.
pub fn neutral() -> ControlState {
    ControlState {
        vocalic: VocalicControls::default(),
        consonantal: ConsonantalControls::default(),
        discrete: DiscreteConstrictionSpec::default(),
        phonatory: PhonatoryControls::default(),
    }
}

impl ControlState {
    /// Continuous values in [`CONTINUOUS_FIELDS`] order.
    pub fn continuous(&self) -> [f64; 10] {
        [
            self.vocalic.high_low,
            self.vocalic.front_back,
            self.vocalic.rounding,
            self.consonantal.labial_aperture,
            self.consonantal.tongue_tip_height,
            self.consonantal.tongue_dorsum_height,
            self.phonatory.velum_height,
            self.phonatory.glottal_aperture,
            self.phonatory.vocal_fold_tension,
            self.phonatory.lung_pressure,
        ]
    }

    fn continuous_mut(&mut self) -> [&mut f64; 10] {
        [
            &mut self.vocalic.high_low,
            &mut self.vocalic.front_back,
            &mut self.vocalic.rounding,
            &mut self.consonantal.labial_aperture,
            &mut self.consonantal.tongue_tip_height,
            &mut self.consonantal.tongue_dorsum_height,
            &mut self.phonatory.velum_height,
            &mut self.phonatory.glottal_aperture,
            &mut self.phonatory.vocal_fold_tension,
            &mut self.phonatory.lung_pressure,
        ]
    }

    /// Looks up a continuous parameter by its canonical name.
    pub fn get(&self, field: &str) -> Option<f64> {
        let i = CONTINUOUS_FIELDS.iter().position(|(n, _)| *n == field)?;
        Some(self.continuous()[i])
    }

    /// Sets a continuous parameter by name without range checking; pair with
    /// [`ControlState::check`].
    pub fn set(&mut self, field: &str, value: f64) -> bool {
        match CONTINUOUS_FIELDS.iter().position(|(n, _)| *n == field) {
            Some(i) => {
                *self.continuous_mut()[i] = value;
                true
            }
            None => false,
        }
    }

    /// Range check of an already-typed state.
    pub fn check(&self) -> Result<(), ValidationErrors> {
        let errors: Vec<_> = CONTINUOUS_FIELDS
            .iter()
            .zip(self.continuous())
            .filter(|((_, range), v)| !range.contains(*v))
            .map(|((name, range), v)| ValidationError::OutOfRange { field: (*name).into(), value: v, range: *range })
            .collect();
        if errors.is_empty() {
            Ok(())
        } else {
            Err(ValidationErrors(errors))
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("control state serializes")
    }
}

/// Parses and checks a flat ControlState document.
pub fn validate(raw: &Value) -> Result<ControlState, ValidationErrors> {
    let Some(map) = raw.as_object() else {
        return Err(ValidationErrors(vec![ValidationError::WrongType { field: "<root>".into(), expected: "object" }]));
    };
    let mut errors = Vec::new();

    for key in map.keys() {
        let known = CONTINUOUS_FIELDS.iter().any(|(n, _)| n == key) || DISCRETE_FIELDS.iter().any(|(n, _)| n == key);
        if !known {
            errors.push(ValidationError::UnknownField { field: key.clone() });
        }
    }

    let mut state = neutral();
    for (i, (name, range)) in CONTINUOUS_FIELDS.iter().enumerate() {
        match map.get(*name) {
            None => errors.push(ValidationError::MissingField { field: (*name).into() }),
            Some(v) => match v.as_f64() {
                None => errors.push(ValidationError::WrongType { field: (*name).into(), expected: "number" }),
                Some(x) if !range.contains(x) => {
                    errors.push(ValidationError::OutOfRange { field: (*name).into(), value: x, range: *range })
                }
                Some(x) => *state.continuous_mut()[i] = x,
            },
        }
    }

    let d = &mut state.discrete;
    parse_label(map, "lipsPlace", LipsPlace::parse, LipsPlace::LABELS, &mut d.lips_place, &mut errors);
    parse_label(map, "lipsManner", LipsManner::parse, LipsManner::LABELS, &mut d.lips_manner, &mut errors);
    parse_label(map, "tipPlace", TipPlace::parse, TipPlace::LABELS, &mut d.tip_place, &mut errors);
    parse_label(map, "tipManner", TipManner::parse, TipManner::LABELS, &mut d.tip_manner, &mut errors);
    parse_label(map, "dorsumPlace", DorsumPlace::parse, DorsumPlace::LABELS, &mut d.dorsum_place, &mut errors);
    parse_label(map, "dorsumManner", DorsumManner::parse, DorsumManner::LABELS, &mut d.dorsum_manner, &mut errors);

    if errors.is_empty() {
        Ok(state)
    } else {
        Err(ValidationErrors(errors))
    }
}

fn parse_label<T>(
    map: &Map<String, Value>,
    field: &str,
    parse: fn(&str) -> Option<T>,
    allowed: &[&str],
    slot: &mut T,
    errors: &mut Vec<ValidationError>,
) {
    match map.get(field) {
        None => errors.push(ValidationError::MissingField { field: field.into() }),
        Some(Value::String(s)) => match parse(s) {
            Some(v) => *slot = v,
            None => errors.push(ValidationError::UnknownLabel {
                field: field.into(),
                value: s.clone(),
                allowed: allowed.iter().map(|s| s.to_string()).collect(),
            }),
        },
        Some(_) => errors.push(ValidationError::WrongType { field: field.into(), expected: "string" }),
    }
}

/// Componentwise linear interpolation; discrete labels switch from `a` to `b`
/// at `t = 0.5`.
pub fn blend(a: &ControlState, b: &ControlState, t: f64) -> Result<ControlState, ValidationError> {
    if !Range::UNIT.contains(t) {
        return Err(ValidationError::OutOfRange { field: "t".into(), value: t, range: Range::UNIT });
    }
    let mut out = if t < 0.5 { *a } else { *b };
    let (ca, cb) = (a.continuous(), b.continuous());
    for (i, slot) in out.continuous_mut().into_iter().enumerate() {
        *slot = (1.0 - t) * ca[i] + t * cb[i];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn neutral_doc() -> Value {
        json!({
            "highLow": 0.0, "frontBack": 0.0, "rounding": 0.0,
            "labialAperture": 0.0, "tongueTipHeight": 0.0, "tongueDorsumHeight": 0.0,
            "lipsPlace": "bilabial", "lipsManner": "full",
            "tipPlace": "alveolar", "tipManner": "full",
            "dorsumPlace": "velar", "dorsumManner": "full",
            "velumHeight": 0.0, "glottalAperture": 0.0,
            "vocalFoldTension": 0.0, "lungPressure": 0.0
        })
    }

    #[test]
    fn neutral_document_is_valid() {
        assert_eq!(validate(&neutral_doc()).unwrap(), neutral());
    }

    #[test]
    fn neutral_round_trips_exactly() {
        let v = neutral().to_value();
        assert_eq!(v, neutral_doc());
        assert_eq!(validate(&v).unwrap(), neutral());
        assert_eq!(v.as_object().unwrap().len(), 16);
    }

    #[test]
    fn out_of_range_is_reported_not_clamped() {
        let mut doc = neutral_doc();
        doc["highLow"] = json!(1.5);
        let err = validate(&doc).unwrap_err();
        assert_eq!(
            err.0,
            vec![ValidationError::OutOfRange { field: "highLow".into(), value: 1.5, range: Range::SYMMETRIC }]
        );
    }

    #[test]
    fn unknown_label() {
        let mut doc = neutral_doc();
        doc["tipManner"] = json!("retroflex");
        let err = validate(&doc).unwrap_err();
        assert_eq!(err.0.len(), 1);
        assert!(matches!(&err.0[0], ValidationError::UnknownLabel { field, .. } if field == "tipManner"));
    }

    #[test]
    fn collects_every_violation() {
        let mut doc = neutral_doc();
        doc["highLow"] = json!(2.0);
        doc["labialAperture"] = json!(-0.1);
        doc["dorsumPlace"] = json!("uvular");
        doc.as_object_mut().unwrap().remove("lungPressure");
        doc["extra"] = json!(1);
        let err = validate(&doc).unwrap_err();
        let fields: Vec<_> = err.0.iter().map(|e| e.field().to_string()).collect();
        for f in ["highLow", "labialAperture", "dorsumPlace", "lungPressure", "extra"] {
            assert!(fields.contains(&f.to_string()), "{f} missing from {fields:?}");
        }
        assert!(err.0.contains(&ValidationError::MissingField { field: "lungPressure".into() }));
        assert!(err.0.contains(&ValidationError::UnknownField { field: "extra".into() }));
    }

    #[test]
    fn wrong_types() {
        let mut doc = neutral_doc();
        doc["rounding"] = json!("round");
        doc["lipsPlace"] = json!(3);
        let err = validate(&doc).unwrap_err();
        assert_eq!(err.0.len(), 2);
        assert!(validate(&json!([1, 2])).is_err());
    }

    #[test]
    fn velum_and_glottis_accept_tight_closure() {
        let mut doc = neutral_doc();
        doc["velumHeight"] = json!(-1.0);
        doc["glottalAperture"] = json!(-0.5);
        assert!(validate(&doc).is_ok());
        doc["vocalFoldTension"] = json!(-0.5);
        assert!(validate(&doc).is_err());
    }

    #[test]
    fn blend_endpoints_and_midpoint() {
        let a = neutral();
        let mut b = neutral();
        b.vocalic.high_low = 1.0;
        b.discrete.tip_manner = TipManner::Lateral;
        assert_eq!(blend(&a, &b, 0.0).unwrap(), a);
        assert_eq!(blend(&a, &b, 1.0).unwrap(), b);
        let mid = blend(&a, &b, 0.5).unwrap();
        assert_eq!(mid.vocalic.high_low, 0.5);
        assert_eq!(mid.discrete.tip_manner, TipManner::Lateral);
        let before = blend(&a, &b, 0.49).unwrap();
        assert_eq!(before.discrete.tip_manner, TipManner::Full);
        let mut expected = neutral();
        expected.vocalic.high_low = 0.5;
        expected.discrete = b.discrete;
        assert_eq!(mid, expected);
    }

    #[test]
    fn blend_rejects_bad_t() {
        let a = neutral();
        assert!(blend(&a, &a, 1.1).is_err());
        assert!(blend(&a, &a, -0.1).is_err());
        assert!(blend(&a, &a, f64::NAN).is_err());
    }

    #[test]
    fn place_and_manner_mapping() {
        let mut d = DiscreteConstrictionSpec::default();
        assert_eq!(d.place(Constrictor::Lips), Place::Bilabial);
        assert_eq!(d.place(Constrictor::TongueTip), Place::Alveolar);
        assert_eq!(d.place(Constrictor::TongueDorsum), Place::Velar);
        d.tip_manner = TipManner::Near;
        assert_eq!(d.manner(Constrictor::TongueTip), Manner::Near);
        for p in Place::ALL {
            assert!(p.constrictor().places().contains(&p));
            assert_eq!(Place::parse(p.as_str()), Some(p));
        }
    }

    #[test]
    fn serde_deserialize_goes_through_validate() {
        let bad: Result<ControlState, _> = serde_json::from_str(r#"{"highLow": 0}"#);
        assert!(bad.is_err());
        let good: ControlState = serde_json::from_value(neutral_doc()).unwrap();
        assert_eq!(good, neutral());
    }
}
