//! SAMPA phoneme inventory.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::params::{self, ControlState, ValidationErrors};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhonemeClass {
    Vowel,
    Plosive,
    Nasal,
    Fricative,
    Lateral,
}

impl PhonemeClass {
    pub fn is_consonant(self) -> bool {
        self != PhonemeClass::Vowel
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhonemeEntry {
    pub sampa: String,
    pub class: PhonemeClass,
    pub note: String,
    pub state: ControlState,
}

#[derive(Clone, Debug, PartialEq, Serialize, thiserror::Error)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum InventoryError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("schema violation at {path}: {message}")]
    SchemaViolation { path: String, message: String },
    #[error("phoneme {sampa}: {errors}")]
    InvalidState { sampa: String, errors: ValidationErrors },
    #[error("phoneme {0} listed twice")]
    Duplicate(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct InventoryErrors(pub Vec<InventoryError>);

impl fmt::Display for InventoryErrors {
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

impl std::error::Error for InventoryErrors {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("unknown phoneme {0:?}")]
pub struct UnknownPhoneme(pub String);

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct InventoryDocument {
    schema_version: u32,
    phonemes: Vec<EntryDocument>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDocument {
    sampa: String,
    class: PhonemeClass,
    #[serde(default)]
    note: String,
    state: Value,
}

/// Phoneme entries in (class, symbol) order.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Inventory {
    entries: Vec<PhonemeEntry>,
}

impl Inventory {
    pub fn load(path: impl AsRef<Path>) -> Result<Inventory, InventoryErrors> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| {
            InventoryErrors(vec![InventoryError::Io { path: path.display().to_string(), message: e.to_string() }])
        })?;
        Self::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> Result<Inventory, InventoryErrors> {
        let schema = |m: String| {
            InventoryErrors(vec![InventoryError::SchemaViolation { path: "<document>".into(), message: m }])
        };
        let doc: InventoryDocument = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(InventoryErrors(vec![InventoryError::SchemaViolation {
                path: "schemaVersion".into(),
                message: format!("expected {SCHEMA_VERSION}, got {}", doc.schema_version),
            }]));
        }
        let mut errors = Vec::new();
        let mut seen = BTreeSet::new();
        let mut entries = Vec::new();
        for (i, e) in doc.phonemes.into_iter().enumerate() {
            if e.sampa.is_empty() || e.sampa.chars().any(char::is_whitespace) {
                errors.push(InventoryError::SchemaViolation {
                    path: format!("phonemes[{i}].sampa"),
                    message: "symbol must be non-empty without whitespace".into(),
                });
                continue;
            }
            if !seen.insert(e.sampa.clone()) {
                errors.push(InventoryError::Duplicate(e.sampa));
                continue;
            }
            match params::validate(&e.state) {
                Ok(state) => entries.push(PhonemeEntry { sampa: e.sampa, class: e.class, note: e.note, state }),
                Err(errs) => errors.push(InventoryError::InvalidState { sampa: e.sampa, errors: errs }),
            }
        }
        if !errors.is_empty() {
            return Err(InventoryErrors(errors));
        }
        entries.sort_by(|a, b| (a.class, &a.sampa).cmp(&(b.class, &b.sampa)));
        Ok(Inventory { entries })
    }

    pub fn lookup(&self, sampa: &str) -> Result<&PhonemeEntry, UnknownPhoneme> {
        self.entries.iter().find(|e| e.sampa == sampa).ok_or_else(|| UnknownPhoneme(sampa.into()))
    }

    pub fn list(&self) -> &[PhonemeEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Splits a phoneme string into inventory symbols, longest match first.
    pub fn tokenize(&self, text: &str) -> Result<Vec<&PhonemeEntry>, UnknownPhoneme> {
        let mut out = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let trimmed = rest.trim_start();
            if trimmed.len() != rest.len() {
                rest = trimmed;
                continue;
            }
            let best = self.entries.iter().filter(|e| rest.starts_with(e.sampa.as_str())).max_by_key(|e| e.sampa.len());
            match best {
                Some(e) => {
                    out.push(e);
                    rest = &rest[e.sampa.len()..];
                }
                None => {
                    let c = rest.chars().next().expect("non-empty");
                    return Err(UnknownPhoneme(c.to_string()));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Model;
    use crate::params::{LipsManner, LipsPlace, TipManner, TipPlace};

    fn inv() -> &'static Inventory {
        &Model::bundled().inventory
    }

    #[test]
    fn m_and_t_entries() {
        let m = inv().lookup("m").unwrap().state;
        assert_eq!(m.consonantal.labial_aperture, 1.0);
        assert_eq!((m.discrete.lips_place, m.discrete.lips_manner), (LipsPlace::Bilabial, LipsManner::Full));
        assert_eq!((m.phonatory.velum_height, m.phonatory.glottal_aperture), (1.0, 0.0));
        let t = inv().lookup("t").unwrap().state;
        assert_eq!(t.consonantal.tongue_tip_height, 1.0);
        assert_eq!((t.discrete.tip_place, t.discrete.tip_manner), (TipPlace::Alveolar, TipManner::Full));
        assert_eq!((t.phonatory.velum_height, t.phonatory.glottal_aperture), (0.0, 1.0));
    }

    #[test]
    fn unknown_symbol() {
        assert_eq!(inv().lookup("q"), Err(UnknownPhoneme("q".into())));
    }

    #[test]
    fn required_inventory_present() {
        for s in ["i", "a", "u", "y", "@", "p", "b", "m", "f", "v", "t", "d", "n", "s", "z", "S", "l", "k", "g", "N"] {
            assert!(inv().lookup(s).is_ok(), "{s}");
        }
        assert!(inv().len() >= 20);
    }

    #[test]
    fn order_is_class_then_symbol() {
        let keys: Vec<_> = inv().list().iter().map(|e| (e.class, e.sampa.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(inv().list(), inv().list());
    }

    #[test]
    fn voicing_pairs_differ_only_in_glottis() {
        for (vl, vd) in [("p", "b"), ("t", "d"), ("k", "g"), ("f", "v"), ("s", "z"), ("S", "Z")] {
            let mut a = inv().lookup(vl).unwrap().state;
            let b = inv().lookup(vd).unwrap().state;
            assert!(a.phonatory.glottal_aperture > b.phonatory.glottal_aperture);
            a.phonatory.glottal_aperture = b.phonatory.glottal_aperture;
            assert_eq!(a, b, "{vl}/{vd}");
        }
    }

    #[test]
    fn nasality_and_labels() {
        for e in inv().list() {
            let nasal = e.class == PhonemeClass::Nasal;
            assert_eq!(e.state.phonatory.velum_height > 0.0, nasal, "{}", e.sampa);
        }
        assert!(inv().lookup("S").unwrap().state.vocalic.rounding > 0.0);
        assert_eq!(inv().lookup("l").unwrap().state.discrete.tip_manner, TipManner::Lateral);
    }

    #[test]
    fn tokenize_symbols() {
        let syms: Vec<_> = inv().tokenize("aSa N").unwrap().iter().map(|e| e.sampa.as_str()).collect();
        assert_eq!(syms, ["a", "S", "a", "N"]);
        assert_eq!(inv().tokenize("tq").unwrap_err(), UnknownPhoneme("q".into()));
        assert!(inv().tokenize("").unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_documents() {
        let dup = r#"{"schemaVersion":1,"phonemes":[
            {"sampa":"a","class":"vowel","state":{}},{"sampa":"a","class":"vowel","state":{}}]}"#;
        let err = Inventory::from_json_str(dup).unwrap_err();
        assert!(err.0.iter().any(|e| matches!(e, InventoryError::Duplicate(s) if s == "a")));
        assert!(err.0.iter().any(|e| matches!(e, InventoryError::InvalidState { .. })));
        assert!(Inventory::from_json_str(r#"{"schemaVersion":2,"phonemes":[]}"#).is_err());
    }
}
