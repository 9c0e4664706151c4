//! Bundled data files and the loaded model (contour library plus inventory).

use std::path::Path;
use std::sync::OnceLock;

use crate::geometry::{LibraryErrors, PrototypeLibrary};
use crate::presets::{Inventory, InventoryErrors};

pub const CONTOURS_FILE: &str = "contours.json";
pub const PHONEMES_FILE: &str = "phonemes.json";

pub const BUNDLED_CONTOURS: &str = include_str!("../data/contours.json");
pub const BUNDLED_PHONEMES: &str = include_str!("../data/phonemes.json");

#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("{CONTOURS_FILE}:\n{0}")]
    Library(#[from] LibraryErrors),
    #[error("{PHONEMES_FILE}:\n{0}")]
    Inventory(#[from] InventoryErrors),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Model {
    pub library: PrototypeLibrary,
    pub inventory: Inventory,
}

impl Model {
    pub fn bundled() -> &'static Model {
        static MODEL: OnceLock<Model> = OnceLock::new();
        MODEL.get_or_init(|| Model {
            library: PrototypeLibrary::bundled().clone(),
            inventory: Inventory::from_json_str(BUNDLED_PHONEMES).expect("bundled inventory is valid"),
        })
    }

    /// Loads `contours.json` and `phonemes.json` from a directory.
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Model, DataError> {
        let dir = dir.as_ref();
        let library = PrototypeLibrary::load(dir.join(CONTOURS_FILE))?;
        let inventory = Inventory::load(dir.join(PHONEMES_FILE))?;
        Ok(Model { library, inventory })
    }
}
